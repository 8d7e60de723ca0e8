//! Joint distribution of `(cyc, CNT)` over `S_n` and the exponential
//! formula that predicts it from the cycle distributions.

use std::fmt;

use crate::error::{invalid, Result};
use crate::perm::{all_permutations, cnt_statistic};
use crate::poly::numbers::binomial;
use crate::poly::{nt_polynomial, QPolynomial};

/// Largest `n` for which `S_n` is enumerated directly.
pub const CNT_MAX_N: usize = 8;

/// `n! [t^n]` of the bivariate series: `by_cycles[c]` is the q-polynomial of
/// permutations with `c` cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CntSlice {
    pub n: usize,
    by_cycles: Vec<QPolynomial>,
}

impl CntSlice {
    fn empty(n: usize) -> Self {
        CntSlice {
            n,
            by_cycles: vec![QPolynomial::zero(); n + 1],
        }
    }

    pub fn by_cycles(&self) -> &[QPolynomial] {
        &self.by_cycles
    }

    pub fn count(&self, cycles: usize, power: usize) -> u64 {
        self.by_cycles.get(cycles).map_or(0, |p| p.coeff(power))
    }

    /// Sum over every entry; equals `n!`.
    pub fn total(&self) -> Result<u64> {
        self.by_cycles
            .iter()
            .try_fold(0u64, |acc, p| Ok(acc.saturating_add(p.eval_at_one()?)))
    }
}

/// Brute force over all `n!` permutations.
pub fn cnt_distribution(n: usize) -> Result<CntSlice> {
    if n > CNT_MAX_N {
        return invalid(format!("cnt enumeration is limited to n <= {CNT_MAX_N}"));
    }
    let mut slice = CntSlice::empty(n);
    if n == 0 {
        slice.by_cycles[0] = QPolynomial::one();
        return Ok(slice);
    }
    for p in all_permutations(n) {
        slice.by_cycles[p.cycle_count()].add_term(cnt_statistic(&p), 1)?;
    }
    Ok(slice)
}

/// Slices `F_0..=F_max_n` of `exp(x * NT(q, t))` through the recursion
/// `F_n = sum_{k=1}^{n} C(n-1, k-1) * x * NT_k * F_{n-k}`, `F_0 = 1`.
/// `nt_table[k - 1]` holds `NT_k`.
pub fn exponential_slices(max_n: usize, nt_table: &[QPolynomial]) -> Result<Vec<CntSlice>> {
    if nt_table.len() < max_n {
        return invalid(format!("need NT up to {max_n}, have {}", nt_table.len()));
    }
    let mut slices = vec![CntSlice::empty(0)];
    slices[0].by_cycles[0] = QPolynomial::one();
    for n in 1..=max_n {
        let mut f = CntSlice::empty(n);
        for k in 1..=n {
            let weight = nt_table[k - 1].checked_scale(binomial(n as u64 - 1, k as u64 - 1))?;
            for (c, rest) in slices[n - k].by_cycles.iter().enumerate() {
                if rest.is_zero() {
                    continue;
                }
                let term = weight.checked_mul(rest)?;
                f.by_cycles[c + 1] = f.by_cycles[c + 1].checked_add(&term)?;
            }
        }
        slices.push(f);
    }
    Ok(slices)
}

/// First entry where the two routes disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discrepancy {
    pub n: usize,
    pub cycles: usize,
    pub power: usize,
    pub brute_force: u64,
    pub formula: u64,
}

impl fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} cyc={} q^{}: brute force {} vs formula {}",
            self.n, self.cycles, self.power, self.brute_force, self.formula
        )
    }
}

/// Compares the exponential-formula slices built from enumerated `NT_k`
/// with direct enumeration of `S_n`, for every `n <= max_n`.
pub fn exponential_formula_check(max_n: usize) -> Result<Option<Discrepancy>> {
    let nt_table = (1..=max_n).map(nt_polynomial).collect::<Result<Vec<_>>>()?;
    exponential_formula_check_with(max_n, &nt_table)
}

/// As [`exponential_formula_check`] with a caller-supplied `NT` table.
pub fn exponential_formula_check_with(
    max_n: usize,
    nt_table: &[QPolynomial],
) -> Result<Option<Discrepancy>> {
    if max_n > CNT_MAX_N {
        return invalid(format!("exponential check is limited to n <= {CNT_MAX_N}"));
    }
    let predicted = exponential_slices(max_n, nt_table)?;
    for (n, formula) in predicted.iter().enumerate().skip(1) {
        let brute = cnt_distribution(n)?;
        if let Some(d) = first_difference(&brute, formula) {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

fn first_difference(brute: &CntSlice, formula: &CntSlice) -> Option<Discrepancy> {
    let n = brute.n;
    for cycles in 0..=n {
        let a = &brute.by_cycles[cycles];
        let b = &formula.by_cycles[cycles];
        let width = a.coeffs().len().max(b.coeffs().len());
        for power in 0..width {
            if a.coeff(power) != b.coeff(power) {
                return Some(Discrepancy {
                    n,
                    cycles,
                    power,
                    brute_force: a.coeff(power),
                    formula: b.coeff(power),
                });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::numbers::factorial;

    #[test]
    fn small_slices() {
        let one = cnt_distribution(1).unwrap();
        assert_eq!(one.count(1, 0), 1);
        assert_eq!(one.total().unwrap(), 1);

        let three = cnt_distribution(3).unwrap();
        assert_eq!(three.by_cycles()[3].coeffs(), &[1]);
        assert_eq!(three.by_cycles()[2].coeffs(), &[3]);
        assert_eq!(three.by_cycles()[1], nt_polynomial(3).unwrap());
        for n in 0..=7 {
            assert_eq!(
                cnt_distribution(n).unwrap().total().unwrap(),
                factorial(n as u64)
            );
        }
        assert!(cnt_distribution(9).is_err());
    }

    #[test]
    fn single_cycle_slice_is_nt() {
        for n in 1..=7 {
            assert_eq!(
                cnt_distribution(n).unwrap().by_cycles()[1],
                nt_polynomial(n).unwrap()
            );
        }
    }

    #[test]
    fn formula_matches_enumeration() {
        assert_eq!(exponential_formula_check(1).unwrap(), None);
        assert_eq!(exponential_formula_check(5).unwrap(), None);
        assert_eq!(exponential_formula_check(7).unwrap(), None);
    }

    #[test]
    fn corrupted_table_is_located() {
        let mut table: Vec<QPolynomial> = (1..=5).map(|n| nt_polynomial(n).unwrap()).collect();
        table[3] = QPolynomial::from_coeffs(vec![1, 3, 2, 0]);
        let d = exponential_formula_check_with(5, &table).unwrap().unwrap();
        assert_eq!((d.n, d.cycles, d.power), (4, 1, 2));
        assert_eq!((d.brute_force, d.formula), (1, 2));
    }
}
