//! Exact q-polynomial distributions of `NT`, `NTI` and `NM` over n-cycles,
//! together with the closed-form routes used to cross-check them.

pub mod enumerate;
pub mod numbers;
pub mod series;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::choose2;
use crate::cycle::scan;
use crate::error::{invalid, Error, Result};
use numbers::binomial;

pub use enumerate::enumerate_cycles;
pub use numbers::{catalan, derangements, partition_count};
pub use series::{cnt_distribution, exponential_formula_check, CntSlice, Discrepancy};

/// Dense polynomial in `q` with nonnegative integer coefficients.
///
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients
/// and equality is structural.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct QPolynomial {
    coeffs: Vec<u64>,
}

impl QPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(power: usize, coeff: u64) -> Self {
        let mut coeffs = vec![0; power + 1];
        coeffs[power] = coeff;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        QPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Coefficient of `q^power`, zero past the degree.
    pub fn coeff(&self, power: usize) -> u64 {
        self.coeffs.get(power).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Smallest power with a nonzero coefficient.
    pub fn lowest_power(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    pub fn add_term(&mut self, power: usize, coeff: u64) -> Result<()> {
        if coeff == 0 {
            return Ok(());
        }
        if self.coeffs.len() <= power {
            self.coeffs.resize(power + 1, 0);
        }
        self.coeffs[power] = self.coeffs[power]
            .checked_add(coeff)
            .ok_or_else(|| overflow("polynomial sum"))?;
        Ok(())
    }

    pub fn checked_add(&self, other: &QPolynomial) -> Result<QPolynomial> {
        let mut out = self.clone();
        for (power, &c) in other.coeffs.iter().enumerate() {
            out.add_term(power, c)?;
        }
        Ok(out)
    }

    pub fn checked_scale(&self, factor: u64) -> Result<QPolynomial> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| {
                c.checked_mul(factor)
                    .ok_or_else(|| overflow("scalar multiple"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(QPolynomial::from_coeffs(coeffs))
    }

    pub fn checked_mul(&self, other: &QPolynomial) -> Result<QPolynomial> {
        let mut out = QPolynomial::zero();
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                let term = a.checked_mul(b).ok_or_else(|| overflow("product"))?;
                out.add_term(i + j, term)?;
            }
        }
        Ok(out)
    }

    /// Value at `q = 1`.
    pub fn eval_at_one(&self) -> Result<u64> {
        self.coeffs
            .iter()
            .try_fold(0u64, |acc, &c| acc.checked_add(c))
            .ok_or_else(|| overflow("evaluation at q = 1"))
    }

    /// `q^top * p(1/q)`: coefficient `k` moves to `top - k`. Terms above
    /// `top` are dropped.
    pub fn reflected(&self, top: usize) -> QPolynomial {
        QPolynomial::from_coeffs((0..=top).map(|k| self.coeff(top - k)).collect())
    }
}

fn overflow(what: &str) -> Error {
    Error::Overflow(what.to_string())
}

impl fmt::Display for QPolynomial {
    /// `1 + 6q + 6q^2 + ...`; the zero polynomial prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (power, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (power, c) {
                (0, _) => write!(f, "{c}")?,
                (_, 1) => f.write_str("q")?,
                _ => write!(f, "{c}q")?,
            }
            if power > 1 {
                write!(f, "^{power}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Which per-cycle statistic a distribution counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Statistic {
    /// Nontrivial occurrences over all n-cycles.
    Nt,
    /// Nontrivial occurrences over incontractible n-cycles.
    Nti,
    /// Non-matches over all n-cycles.
    Nm,
}

impl Statistic {
    pub const ALL: [Statistic; 3] = [Statistic::Nt, Statistic::Nti, Statistic::Nm];

    pub fn as_str(self) -> &'static str {
        match self {
            Statistic::Nt => "nt",
            Statistic::Nti => "nti",
            Statistic::Nm => "nm",
        }
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Statistic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nt" => Ok(Statistic::Nt),
            "nti" => Ok(Statistic::Nti),
            "nm" => Ok(Statistic::Nm),
            other => invalid(format!("unknown statistic {other:?}")),
        }
    }
}

/// Serialized form of one distribution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialRecord {
    pub statistic: Statistic,
    pub n: usize,
    pub coeffs: Vec<u64>,
}

impl PolynomialRecord {
    pub fn new(statistic: Statistic, n: usize, poly: &QPolynomial) -> Self {
        PolynomialRecord {
            statistic,
            n,
            coeffs: poly.coeffs().to_vec(),
        }
    }

    pub fn polynomial(&self) -> QPolynomial {
        QPolynomial::from_coeffs(self.coeffs.clone())
    }
}

/// The three distributions for one length, computed in a single scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distributions {
    pub n: usize,
    pub nt: QPolynomial,
    pub nti: QPolynomial,
    pub nm: QPolynomial,
}

impl Distributions {
    pub fn get(&self, statistic: Statistic) -> &QPolynomial {
        match statistic {
            Statistic::Nt => &self.nt,
            Statistic::Nti => &self.nti,
            Statistic::Nm => &self.nm,
        }
    }

    /// Adds another partial result; used to merge shards.
    pub fn merge(&mut self, other: &Distributions) -> Result<()> {
        debug_assert_eq!(self.n, other.n);
        self.nt = self.nt.checked_add(&other.nt)?;
        self.nti = self.nti.checked_add(&other.nti)?;
        self.nm = self.nm.checked_add(&other.nm)?;
        Ok(())
    }
}

/// Per-shard counters for [`distributions`].
struct Tally {
    nt: Vec<u64>,
    nti: Vec<u64>,
    nm: Vec<u64>,
}

impl Tally {
    fn new(n: usize) -> Self {
        let width = choose2(n.saturating_sub(1)) + 1;
        Tally {
            nt: vec![0; width],
            nti: vec![0; width],
            nm: vec![0; width],
        }
    }

    fn record(&mut self, cycle: &[u8]) {
        let n = cycle.len();
        let total = scan::occurrence_total(cycle);
        let nt = total - (n - 1);
        self.nt[nt] += 1;
        self.nm[choose2(n) - total] += 1;
        if scan::is_incontractible(cycle) {
            self.nti[nt] += 1;
        }
    }

    fn into_distributions(self, n: usize) -> Distributions {
        Distributions {
            n,
            nt: QPolynomial::from_coeffs(self.nt),
            nti: QPolynomial::from_coeffs(self.nti),
            nm: QPolynomial::from_coeffs(self.nm),
        }
    }
}

/// Per-shard partial distributions, in shard order.
pub fn shard_distributions(n: usize, jobs: usize) -> Result<Vec<Distributions>> {
    let tallies = enumerate::scan_shards(n, jobs, || Tally::new(n), Tally::record)?;
    Ok(tallies
        .into_iter()
        .map(|t| t.into_distributions(n))
        .collect())
}

/// Exact `NT`, `NTI` and `NM` distributions over all n-cycles, scanning the
/// `n - 1` shards on up to `jobs` threads.
pub fn distributions(n: usize, jobs: usize) -> Result<Distributions> {
    let mut acc = Distributions {
        n,
        nt: QPolynomial::zero(),
        nti: QPolynomial::zero(),
        nm: QPolynomial::zero(),
    };
    for part in shard_distributions(n, jobs)? {
        acc.merge(&part)?;
    }
    Ok(acc)
}

pub fn nt_polynomial(n: usize) -> Result<QPolynomial> {
    Ok(distributions(n, 1)?.nt)
}

pub fn nti_polynomial(n: usize) -> Result<QPolynomial> {
    Ok(distributions(n, 1)?.nti)
}

pub fn nm_polynomial(n: usize) -> Result<QPolynomial> {
    Ok(distributions(n, 1)?.nm)
}

/// `floor((3 + sqrt(1 + 8k)) / 2)` in integer arithmetic: no cycle shorter
/// than this carries `k >= 1` nontrivial occurrences.
pub fn min_length(k: usize) -> usize {
    let root = (1 + 8 * k as u64).isqrt() as usize;
    (3 + root) / 2
}

/// `NT_n|_{q^k}` rebuilt from incontractible distributions:
/// `sum_s NTI_s|_{q^k} * C(n-1, s-1)` over `min_length(k) <= s <= min(n, 2k+1)`.
/// For `k = 0` only the 1-cycle contributes.
///
/// `nti_table[s - 1]` must hold `NTI_s` for every `s` in range.
pub fn nt_coeff_via_contraction(n: usize, k: usize, nti_table: &[QPolynomial]) -> Result<u64> {
    if n == 0 {
        return invalid("n must be at least 1");
    }
    let lo = if k == 0 { 1 } else { min_length(k) };
    let hi = n.min(2 * k + 1);
    if nti_table.len() < hi {
        return invalid(format!(
            "need incontractible distributions up to length {hi}, have {}",
            nti_table.len()
        ));
    }
    (lo..=hi).try_fold(0u64, |acc, s| {
        let term = nti_table[s - 1]
            .coeff(k)
            .checked_mul(binomial(n as u64 - 1, s as u64 - 1))
            .ok_or_else(|| overflow("contraction sum"))?;
        acc.checked_add(term)
            .ok_or_else(|| overflow("contraction sum"))
    })
}
