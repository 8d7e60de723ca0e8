//! Consecutive runs, contraction and the growth operators that build every
//! incontractible cycle from smaller ones.

use std::fmt;
use std::ops::RangeInclusive;

use itertools::Itertools;

use crate::cycle::{scan, Cycle};
use crate::error::{invalid, Result};

/// Maximal blocks `a, a+1, ..., b` that appear consecutively in cycle order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunDecomposition {
    runs: Vec<RangeInclusive<usize>>,
}

impl RunDecomposition {
    pub fn runs(&self) -> &[RangeInclusive<usize>] {
        &self.runs
    }

    pub fn len(&self) -> usize {
        self.runs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    pub fn maxima(&self) -> Vec<usize> {
        self.runs.iter().map(|r| *r.end()).collect()
    }

    /// Pairs `(a, a+1)` with `a + 1` immediately after `a`.
    pub fn bonds(&self) -> Vec<(usize, usize)> {
        self.runs
            .iter()
            .flat_map(|r| (*r.start()..*r.end()).map(|a| (a, a + 1)))
            .collect()
    }
}

impl fmt::Display for RunDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, r) in self.runs.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            let body = r.clone().map(|v| v.to_string()).join(",");
            write!(f, "{{{body}}}")?;
        }
        Ok(())
    }
}

pub fn consecutive_runs(c: &Cycle) -> RunDecomposition {
    let mut runs: Vec<RangeInclusive<usize>> = Vec::new();
    for &v in c.elems() {
        match runs.last_mut() {
            Some(r) if *r.end() + 1 == v => *r = *r.start()..=v,
            _ => runs.push(v..=v),
        }
    }
    RunDecomposition { runs }
}

/// Reduces the sequence of run maxima; a single pass.
pub fn contract(c: &Cycle) -> Cycle {
    Cycle::reduced(&consecutive_runs(c).maxima())
}

/// Applies [`contract`] until it stops changing the cycle.
pub fn contract_fully(c: &Cycle) -> Cycle {
    let mut current = c.clone();
    loop {
        let next = contract(&current);
        if next == current {
            return current;
        }
        current = next;
    }
}

pub fn is_incontractible(c: &Cycle) -> bool {
    scan::is_incontractible(c.elems())
}

/// Every n-cycle whose contraction is `a`, one per choice of run maxima.
pub fn preimages(a: &Cycle, n: usize) -> Result<Vec<Cycle>> {
    let len = a.len();
    if !is_incontractible(a) {
        return invalid(format!("{a} is not incontractible"));
    }
    if n < len {
        return invalid(format!("no {n}-cycle contracts to a {len}-cycle"));
    }
    Ok((1..n)
        .combinations(len - 1)
        .map(|chosen| preimage_for_maxima(a, &chosen, n))
        .collect())
}

/// The preimage of `a` whose runs end at `chosen` together with `n`.
/// `chosen` must be increasing, of size `a.len() - 1`, inside `1..n`.
pub fn preimage_for_maxima(a: &Cycle, chosen: &[usize], n: usize) -> Cycle {
    debug_assert_eq!(chosen.len() + 1, a.len());
    let mut maxima = chosen.to_vec();
    maxima.push(n);
    // rank r (1-based) owns the values (maxima[r-2], maxima[r-1]]
    let run = |rank: usize| {
        let lo = if rank == 1 { 1 } else { maxima[rank - 2] + 1 };
        lo..=maxima[rank - 1]
    };
    let elems: Vec<usize> = a.elems().iter().flat_map(|&rank| run(rank)).collect();
    Cycle::from_canonical(elems)
}

/// Inserts `m + 1` immediately after `i` in an m-cycle. Any `1 <= i <= m`
/// is accepted; `i = m` creates the bond `(m, m+1)`.
pub fn insert_after(d: &Cycle, i: usize) -> Result<Cycle> {
    let Some(pos) = d.position(i) else {
        return invalid(format!("{i} is not in {d}"));
    };
    let mut elems = d.elems().to_vec();
    elems.insert(pos + 1, d.len() + 1);
    Ok(Cycle::from_canonical(elems))
}

/// Expands an m-cycle at `i`: values above `i` shift up by one, `i` becomes
/// the block `i, i+1`, and `m + 2` goes between them.
pub fn expand_at(d: &Cycle, i: usize) -> Result<Cycle> {
    if d.position(i).is_none() {
        return invalid(format!("{i} is not in {d}"));
    }
    let top = d.len() + 2;
    let mut elems = Vec::with_capacity(top);
    for &v in d.elems() {
        if v == i {
            elems.extend([i, top, i + 1]);
        } else {
            elems.push(if v > i { v + 1 } else { v });
        }
    }
    Ok(Cycle::from_canonical(elems))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycle::make_cycle;
    use crate::poly::enumerate::enumerate_cycles;
    use crate::poly::numbers::binomial;
    use std::collections::BTreeSet;

    fn cyc(v: &[usize]) -> Cycle {
        make_cycle(v).unwrap()
    }

    fn incontractible(n: usize) -> Vec<Cycle> {
        enumerate_cycles(n)
            .unwrap()
            .filter(is_incontractible)
            .collect()
    }

    #[test]
    fn runs_and_bonds() {
        let runs = consecutive_runs(&cyc(&[1, 2, 4, 6, 7, 8, 3, 5]));
        assert_eq!(runs.runs(), &[1..=2, 4..=4, 6..=8, 3..=3, 5..=5]);
        assert_eq!(runs.to_string(), "{1,2},{4},{6,7,8},{3},{5}");
        assert_eq!(runs.bonds().len(), 8 - runs.len());

        let runs = consecutive_runs(&cyc(&[1, 4, 5, 6, 2, 7, 8, 3]));
        assert_eq!(runs.bonds(), vec![(4, 5), (5, 6), (7, 8)]);

        assert_eq!(
            consecutive_runs(&cyc(&[1, 3, 2])).runs(),
            &[1..=1, 3..=3, 2..=2]
        );
    }

    #[test]
    fn contraction_examples() {
        assert_eq!(
            contract(&cyc(&[1, 2, 4, 6, 7, 8, 3, 5])),
            cyc(&[1, 3, 5, 2, 4])
        );
        assert_eq!(contract(&cyc(&[1, 3, 2])), cyc(&[1, 3, 2]));
        assert_eq!(contract(&cyc(&[1, 2, 3])), cyc(&[1]));
    }

    #[test]
    fn incontractible_small_cases() {
        assert!(is_incontractible(&cyc(&[1, 3, 2])));
        assert!(!is_incontractible(&cyc(&[1, 2])));
        assert!(is_incontractible(&cyc(&[1])));
        let four: Vec<Cycle> = incontractible(4);
        assert_eq!(four, vec![cyc(&[1, 3, 2, 4]), cyc(&[1, 4, 3, 2])]);
    }

    #[test]
    fn one_pass_contraction_is_final() {
        for n in 1..=9 {
            for c in enumerate_cycles(n).unwrap() {
                let once = contract(&c);
                assert!(is_incontractible(&once), "{c}");
                assert_eq!(contract_fully(&c), once);
                assert_eq!(once == c, is_incontractible(&c));
                assert_eq!(c.nontrivial_mu_count(), once.nontrivial_mu_count(), "{c}");
            }
        }
    }

    #[test]
    fn preimage_worked_example() {
        let a = cyc(&[1, 3, 5, 2, 4]);
        let c = preimage_for_maxima(&a, &[1, 3, 4, 7], 8);
        assert_eq!(c, cyc(&[1, 4, 8, 2, 3, 5, 6, 7]));
        let all = preimages(&a, 8).unwrap();
        assert_eq!(all.len(), 35);
        assert!(all.contains(&c));
        assert_eq!(
            preimages(&cyc(&[1, 3, 2]), 3).unwrap(),
            vec![cyc(&[1, 3, 2])]
        );
        assert!(preimages(&cyc(&[1, 2, 3]), 5).is_err());
        assert!(preimages(&a, 4).is_err());
    }

    #[test]
    fn preimage_counts() {
        for len in 1..=6 {
            for a in incontractible(len) {
                for n in len..=9 {
                    let pre = preimages(&a, n).unwrap();
                    assert_eq!(pre.len() as u64, binomial(n as u64 - 1, len as u64 - 1));
                    let distinct: BTreeSet<&Cycle> = pre.iter().collect();
                    assert_eq!(distinct.len(), pre.len());
                    assert!(pre.iter().all(|c| contract(c) == a));
                }
            }
        }
    }

    #[test]
    fn insertion_examples() {
        let d = cyc(&[1, 3, 5, 4, 2]);
        assert_eq!(d.nontrivial_mu_count(), 2);
        let d1 = insert_after(&d, 1).unwrap();
        assert_eq!(d1, cyc(&[1, 6, 3, 5, 4, 2]));
        let nts: Vec<usize> = (1..=4)
            .map(|i| insert_after(&d, i).unwrap().nontrivial_mu_count())
            .collect();
        assert_eq!(nts, vec![5, 4, 4, 3]);
        assert_eq!(
            insert_after(&cyc(&[1, 3, 2]), 1).unwrap(),
            cyc(&[1, 4, 3, 2])
        );
        assert!(insert_after(&d, 6).is_err());
        assert!(!is_incontractible(&insert_after(&d, 5).unwrap()));

        let d = cyc(&[1, 5, 4, 3, 2]);
        let nts: Vec<usize> = (1..=4)
            .map(|i| insert_after(&d, i).unwrap().nontrivial_mu_count())
            .collect();
        assert_eq!(d.nontrivial_mu_count(), 6);
        assert_eq!(nts, vec![10, 9, 8, 7]);
    }

    #[test]
    fn expansion_examples() {
        let d = cyc(&[1, 3, 2, 4]);
        assert_eq!(d.nontrivial_mu_count(), 2);
        let nts: Vec<usize> = (1..=4)
            .map(|i| expand_at(&d, i).unwrap().nontrivial_mu_count())
            .collect();
        assert_eq!(nts, vec![3, 4, 3, 3]);

        let d = cyc(&[1, 4, 3, 2]);
        assert_eq!(d.nontrivial_mu_count(), 3);
        let nts: Vec<usize> = (1..=4)
            .map(|i| expand_at(&d, i).unwrap().nontrivial_mu_count())
            .collect();
        assert_eq!(nts, vec![6, 5, 4, 4]);

        assert_eq!(
            expand_at(&cyc(&[1, 3, 2, 4]), 1).unwrap(),
            cyc(&[1, 6, 2, 4, 3, 5])
        );
        assert_eq!(expand_at(&cyc(&[1]), 1).unwrap(), cyc(&[1, 3, 2]));
        assert!(expand_at(&d, 5).is_err());
        for i in 1..=4 {
            let e = expand_at(&d, i).unwrap();
            assert_eq!(contract(&e).nontrivial_mu_count(), e.nontrivial_mu_count());
        }
    }

    #[test]
    fn growth_bounds_and_top_slot() {
        for m in 1..=7 {
            for d in incontractible(m) {
                let nt = d.nontrivial_mu_count();
                for i in 1..m {
                    let grown = insert_after(&d, i).unwrap();
                    assert!(is_incontractible(&grown));
                    assert!(grown.nontrivial_mu_count() > nt, "{d} ({i})");
                }
                if m >= 2 {
                    let top = insert_after(&d, m - 1).unwrap();
                    assert_eq!(top.nontrivial_mu_count(), nt + 1, "{d}");
                }
                for i in 1..=m {
                    let grown = expand_at(&d, i).unwrap();
                    assert!(is_incontractible(&grown));
                    assert!(grown.nontrivial_mu_count() > nt, "{d} [{i}]");
                }
                assert_eq!(
                    expand_at(&d, m).unwrap().nontrivial_mu_count(),
                    nt + 1,
                    "{d}"
                );
            }
        }
    }

    #[test]
    fn growth_operators_partition_incontractible_cycles() {
        let mut levels: Vec<Vec<Cycle>> = vec![Vec::new(), vec![cyc(&[1])], Vec::new()];
        for n in 3..=9 {
            let mut grown: Vec<Cycle> = Vec::new();
            for d in &levels[n - 1] {
                grown.extend((1..n - 1).map(|i| insert_after(d, i).unwrap()));
            }
            for d in &levels[n - 2] {
                grown.extend((1..=n - 2).map(|i| expand_at(d, i).unwrap()));
            }
            let expected = incontractible(n);
            let distinct: BTreeSet<Cycle> = grown.iter().cloned().collect();
            assert_eq!(distinct.len(), grown.len(), "duplicate at n = {n}");
            assert_eq!(
                distinct.into_iter().collect::<Vec<_>>(),
                expected,
                "n = {n}"
            );
            levels.push(expected);
        }
        for n in 5..=9 {
            let rec = (n - 2) * (levels[n - 1].len() + levels[n - 2].len());
            assert_eq!(levels[n].len(), rec);
        }
    }
}
