//! Linear permutations, reduction, and the linear `mu`/`mu'` occurrences.

use std::fmt;

use crate::cycle::{Cycle, PairSet};
use crate::error::{invalid, Result};

/// A permutation of `1..=n` in one-line notation, `n >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    elems: Vec<usize>,
}

impl Permutation {
    pub fn new(elems: Vec<usize>) -> Result<Self> {
        check_bijection(&elems)?;
        Ok(Permutation { elems })
    }

    pub(crate) fn from_vec_unchecked(elems: Vec<usize>) -> Self {
        debug_assert!(check_bijection(&elems).is_ok());
        Permutation { elems }
    }

    pub fn identity(n: usize) -> Self {
        Permutation::from_vec_unchecked((1..=n).collect())
    }

    /// Builds the permutation whose disjoint cycles are `cycles`. Every value
    /// of `1..=n` must appear exactly once across all cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut image = vec![0usize; n + 1];
        for cycle in cycles {
            if cycle.is_empty() {
                return invalid("empty cycle");
            }
            for (k, &v) in cycle.iter().enumerate() {
                if v == 0 || v > n {
                    return invalid(format!("value {v} outside 1..={n}"));
                }
                if image[v] != 0 {
                    return invalid(format!("value {v} appears twice"));
                }
                image[v] = cycle[(k + 1) % cycle.len()];
            }
        }
        if let Some(missing) = (1..=n).find(|&v| image[v] == 0) {
            return invalid(format!("value {missing} missing from cycles"));
        }
        Permutation::new(image.split_off(1))
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.elems
    }

    /// `sigma(i)` for `1 <= i <= n`.
    pub fn apply(&self, i: usize) -> usize {
        self.elems[i - 1]
    }

    pub fn reverse(&self) -> Permutation {
        let mut elems = self.elems.clone();
        elems.reverse();
        Permutation { elems }
    }

    pub fn complement(&self) -> Permutation {
        let n1 = self.len() + 1;
        Permutation {
            elems: self.elems.iter().map(|&v| n1 - v).collect(),
        }
    }

    /// Disjoint cycles, each written from its minimum, ordered by minimum.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n + 1];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                cycle.push(v);
                v = self.apply(v);
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    /// Replaces every value `i` by `n + 1 - i` inside the cycle structure.
    pub fn cycle_complement(&self) -> Permutation {
        let n1 = self.len() + 1;
        let cycles: Vec<Vec<usize>> = self
            .cycles()
            .into_iter()
            .map(|c| c.into_iter().map(|v| n1 - v).collect())
            .collect();
        Permutation::from_cycles(self.len(), &cycles).expect("complemented cycles stay a partition")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.elems)
    }
}

pub(crate) fn write_joined(f: &mut fmt::Formatter<'_>, values: &[usize]) -> fmt::Result {
    for (k, v) in values.iter().enumerate() {
        if k > 0 {
            f.write_str(",")?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

fn check_bijection(elems: &[usize]) -> Result<()> {
    let n = elems.len();
    if n == 0 {
        return invalid("permutation must have at least one element");
    }
    let mut seen = vec![false; n + 1];
    for &v in elems {
        if v == 0 || v > n {
            return invalid(format!("value {v} outside 1..={n}"));
        }
        if seen[v] {
            return invalid(format!("value {v} repeated"));
        }
        seen[v] = true;
    }
    Ok(())
}

/// Order-isomorphic relabelling of distinct integers onto `1..=n`.
pub fn reduce(seq: &[usize]) -> Result<Permutation> {
    if seq.is_empty() {
        return invalid("cannot reduce an empty sequence");
    }
    let mut order: Vec<usize> = (0..seq.len()).collect();
    order.sort_by_key(|&k| seq[k]);
    if order.windows(2).any(|w| seq[w[0]] == seq[w[1]]) {
        return invalid("reduce requires distinct entries");
    }
    let mut elems = vec![0; seq.len()];
    for (rank, &k) in order.iter().enumerate() {
        elems[k] = rank + 1;
    }
    Ok(Permutation::from_vec_unchecked(elems))
}

/// Pairs `<s_i, s_j>`, `i < j`, `s_i < s_j`, with no value strictly between
/// them at an intermediate position.
pub fn mu_occurrences(p: &Permutation) -> PairSet {
    linear_occurrences(p.as_slice(), |a, b| a < b)
}

/// The decreasing mirror of [`mu_occurrences`].
pub fn mu_prime_occurrences(p: &Permutation) -> PairSet {
    linear_occurrences(p.as_slice(), |a, b| a > b)
}

fn linear_occurrences(s: &[usize], ordered: impl Fn(usize, usize) -> bool) -> PairSet {
    let mut out = PairSet::new();
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            if !ordered(s[i], s[j]) {
                continue;
            }
            let blocked = (i + 1..j).any(|k| ordered(s[i], s[k]) && ordered(s[k], s[j]));
            if !blocked {
                out.insert(s[i], s[j]);
            }
        }
    }
    out
}

/// Sum of nontrivial `mu` counts over the reduced cycles of `p`.
pub fn cnt_statistic(p: &Permutation) -> usize {
    p.cycles()
        .iter()
        .map(|c| Cycle::reduced(c).nontrivial_mu_count())
        .sum()
}

/// Sum of nontrivial `mu'` counts over the reduced cycles of `p`.
pub fn cnt_prime_statistic(p: &Permutation) -> usize {
    p.cycles()
        .iter()
        .map(|c| Cycle::reduced(c).nontrivial_mu_prime_count())
        .sum()
}

pub fn cycle_count(p: &Permutation) -> usize {
    p.cycle_count()
}

/// Lexicographic successor of `s` in place; false once `s` is the last
/// arrangement.
pub(crate) fn next_permutation<T: Ord>(s: &mut [T]) -> bool {
    if s.len() < 2 {
        return false;
    }
    let mut i = s.len() - 1;
    while i > 0 && s[i - 1] >= s[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = s.len() - 1;
    while s[j] <= s[i - 1] {
        j -= 1;
    }
    s.swap(i - 1, j);
    s[i..].reverse();
    true
}

/// All of `S_n` in lexicographic order.
pub fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    let mut next: Option<Vec<usize>> = (n >= 1).then(|| (1..=n).collect());
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut succ = current.clone();
        if next_permutation(&mut succ) {
            next = Some(succ);
        }
        Some(Permutation::from_vec_unchecked(current))
    })
}
