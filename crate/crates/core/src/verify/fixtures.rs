//! Reference tables for `NT`, `NTI` and `NM`, lengths 1 through 10.

use crate::error::{invalid, Result};
use crate::poly::{QPolynomial, Statistic};

const NT_TABLE: &str = include_str!("../../fixtures/nt.txt");
const NTI_TABLE: &str = include_str!("../../fixtures/nti.txt");
const NM_TABLE: &str = include_str!("../../fixtures/nm.txt");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixtures {
    nt: Vec<QPolynomial>,
    nti: Vec<QPolynomial>,
    nm: Vec<QPolynomial>,
}

impl Fixtures {
    pub fn embedded() -> Self {
        Fixtures {
            nt: parse_table(NT_TABLE).expect("embedded NT table parses"),
            nti: parse_table(NTI_TABLE).expect("embedded NTI table parses"),
            nm: parse_table(NM_TABLE).expect("embedded NM table parses"),
        }
    }

    fn rows(&self, statistic: Statistic) -> &Vec<QPolynomial> {
        match statistic {
            Statistic::Nt => &self.nt,
            Statistic::Nti => &self.nti,
            Statistic::Nm => &self.nm,
        }
    }

    pub fn get(&self, statistic: Statistic, n: usize) -> Option<&QPolynomial> {
        n.checked_sub(1).and_then(|i| self.rows(statistic).get(i))
    }

    /// Replaces one row; used for negative controls.
    pub fn set(&mut self, statistic: Statistic, n: usize, poly: QPolynomial) -> Result<()> {
        let rows = match statistic {
            Statistic::Nt => &mut self.nt,
            Statistic::Nti => &mut self.nti,
            Statistic::Nm => &mut self.nm,
        };
        match n.checked_sub(1).and_then(|i| rows.get_mut(i)) {
            Some(slot) => {
                *slot = poly;
                Ok(())
            }
            None => invalid(format!("no {statistic} row for n = {n}")),
        }
    }

    /// Largest length present for every statistic.
    pub fn max_n(&self) -> usize {
        self.nt.len().min(self.nti.len()).min(self.nm.len())
    }
}

/// Parses `n: c0 c1 ...` rows; `#` lines are comments. Rows must start at
/// `n = 1` and be consecutive.
pub fn parse_table(text: &str) -> Result<Vec<QPolynomial>> {
    let mut rows = Vec::new();
    for line in text.lines().map(str::trim) {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((label, body)) = line.split_once(':') else {
            return invalid(format!("malformed row {line:?}"));
        };
        let n: usize = label
            .trim()
            .parse()
            .map_err(|_| crate::Error::InvalidInput(format!("bad row label {label:?}")))?;
        if n != rows.len() + 1 {
            return invalid(format!("expected row {}, found {n}", rows.len() + 1));
        }
        let coeffs = body
            .split_whitespace()
            .map(|c| {
                c.parse::<u64>().map_err(|_| {
                    crate::Error::InvalidInput(format!("bad coefficient {c:?} in row {n}"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(QPolynomial::from_coeffs(coeffs));
    }
    Ok(rows)
}
