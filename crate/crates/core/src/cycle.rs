//! Canonical n-cycles and cycle-occurrences of `mu`.
//!
//! A cycle is stored in the rotation that starts at its minimum, which is
//! always 1 after reduction. Pairs are recorded by value, not by position.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{invalid, Result};
use crate::perm::{reduce, write_joined, Permutation};

/// A set of ordered value pairs `<a, b>`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct PairSet {
    pairs: BTreeSet<(usize, usize)>,
}

impl PairSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, a: usize, b: usize) -> bool {
        self.pairs.insert((a, b))
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.pairs.contains(&(a, b))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Pairs in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }
}

impl FromIterator<(usize, usize)> for PairSet {
    fn from_iter<I: IntoIterator<Item = (usize, usize)>>(iter: I) -> Self {
        PairSet {
            pairs: iter.into_iter().collect(),
        }
    }
}

impl fmt::Display for PairSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (a, b)) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "<{a},{b}>")?;
        }
        f.write_str("}")
    }
}

/// An n-cycle on `1..=n` written from its minimum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    elems: Vec<usize>,
}

/// Canonicalizes any rotation of a cyclic word on `1..=n`.
pub fn make_cycle(seq: &[usize]) -> Result<Cycle> {
    Cycle::new(seq.to_vec())
}

impl Cycle {
    pub fn new(seq: Vec<usize>) -> Result<Self> {
        let elems = Permutation::new(seq)?.as_slice().to_vec();
        Ok(Cycle::rotated(elems))
    }

    /// The reduction of a cycle on arbitrary distinct values.
    pub fn from_distinct(values: &[usize]) -> Result<Self> {
        Ok(Cycle::rotated(reduce(values)?.as_slice().to_vec()))
    }

    pub(crate) fn reduced(values: &[usize]) -> Self {
        Cycle::from_distinct(values).expect("cycle values are distinct")
    }

    fn rotated(mut elems: Vec<usize>) -> Self {
        let start = elems.iter().position(|&v| v == 1).expect("1 is present");
        elems.rotate_left(start);
        Cycle { elems }
    }

    /// Wraps a sequence that is already canonical (a permutation of `1..=n`
    /// starting with 1).
    pub(crate) fn from_canonical(elems: Vec<usize>) -> Self {
        debug_assert_eq!(elems.first(), Some(&1));
        debug_assert!(Permutation::new(elems.clone()).is_ok());
        Cycle { elems }
    }

    pub(crate) fn from_bytes(elems: &[u8]) -> Self {
        Cycle::from_canonical(elems.iter().map(|&v| v as usize).collect())
    }

    /// `(1, 2, ..., n)`, the only n-cycle without nontrivial occurrences.
    pub fn increasing(n: usize) -> Self {
        Cycle::from_canonical((1..=n.max(1)).collect())
    }

    /// `(1, n, n-1, ..., 2)`, the only n-cycle without non-matches.
    pub fn decreasing(n: usize) -> Self {
        let n = n.max(1);
        let mut elems = vec![1];
        elems.extend((2..=n).rev());
        Cycle::from_canonical(elems)
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elems(&self) -> &[usize] {
        &self.elems
    }

    pub fn position(&self, value: usize) -> Option<usize> {
        self.elems.iter().position(|&v| v == value)
    }

    /// The word `c_0 c_1 ... c_{n-1}` read as a permutation in one-line form.
    pub fn as_word(&self) -> Permutation {
        Permutation::from_vec_unchecked(self.elems.clone())
    }

    /// The permutation in `S_n` whose only cycle is `self`.
    pub fn to_permutation(&self) -> Permutation {
        Permutation::from_cycles(self.len(), std::slice::from_ref(&self.elems))
            .expect("a cycle covers 1..=n")
    }

    /// True iff `s` is met before `j` when walking clockwise from `i`.
    pub fn cyclically_between(&self, i: usize, j: usize, s: usize) -> Result<bool> {
        let pos = |v: usize| {
            self.position(v)
                .ok_or_else(|| crate::Error::InvalidInput(format!("{v} is not in {self}")))
        };
        let (pi, pj, ps) = (pos(i)?, pos(j)?, pos(s)?);
        if pi == pj || pi == ps || pj == ps {
            return invalid("cyclically_between needs three distinct elements");
        }
        let n = self.len();
        let dist = |p: usize| (p + n - pi) % n;
        Ok(dist(ps) < dist(pj))
    }

    /// Positions strictly inside the clockwise arc from position `a` to `b`.
    fn arc(&self, a: usize, b: usize) -> impl Iterator<Item = usize> + '_ {
        let n = self.len();
        let steps = (b + n - a) % n;
        (1..steps).map(move |d| self.elems[(a + d) % n])
    }

    /// Cycle-occurrences of `mu` by the literal definition: every pair is
    /// tested against every element of its clockwise arc.
    pub fn mu_occurrences(&self) -> PairSet {
        self.occurrences(|a, b| a < b)
    }

    /// Cycle-occurrences of `mu'` (the decreasing mirror).
    pub fn mu_prime_occurrences(&self) -> PairSet {
        self.occurrences(|a, b| a > b)
    }

    fn occurrences(&self, ordered: impl Fn(usize, usize) -> bool) -> PairSet {
        let n = self.len();
        let mut out = PairSet::new();
        for a in 0..n {
            for b in 0..n {
                let (x, y) = (self.elems[a], self.elems[b]);
                if a == b || !ordered(x, y) {
                    continue;
                }
                if !self.arc(a, b).any(|s| ordered(x, s) && ordered(s, y)) {
                    out.insert(x, y);
                }
            }
        }
        out
    }

    /// `N_mu(C)`.
    pub fn mu_count(&self) -> usize {
        scan::occurrence_total(&self.elems)
    }

    /// `NT_mu(C)`: occurrences `<i, j>` with `j > i + 1`.
    pub fn nontrivial_mu_count(&self) -> usize {
        scan::nontrivial_count(&self.elems)
    }

    pub(crate) fn nontrivial_mu_prime_count(&self) -> usize {
        self.mu_prime_occurrences().len() - (self.len() - 1)
    }

    /// Pairs `i < j` having some `x`, `i < x < j`, on the clockwise arc from
    /// `i` to `j`.
    pub fn non_mu_matches(&self) -> PairSet {
        let n = self.len();
        let mut out = PairSet::new();
        for a in 0..n {
            for b in 0..n {
                let (i, j) = (self.elems[a], self.elems[b]);
                if i < j && self.arc(a, b).any(|x| i < x && x < j) {
                    out.insert(i, j);
                }
            }
        }
        out
    }

    /// `NM_mu(C)`.
    pub fn nm_count(&self) -> usize {
        scan::nm_count(&self.elems)
    }

    /// Four bits per entry after the leading 1; the order of codes matches
    /// lexicographic order of cycles of equal length.
    pub(crate) fn pack(&self) -> u64 {
        pack_tail(&self.elems)
    }
}

pub(crate) fn pack_tail<T: Copy + Into<usize>>(elems: &[T]) -> u64 {
    debug_assert!(elems.len() <= 16);
    elems[1..]
        .iter()
        .fold(0u64, |acc, &v| (acc << 4) | (v.into() as u64 - 1))
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        write_joined(f, &self.elems)?;
        f.write_str(")")
    }
}

/// Quadratic counters used by the enumeration engine.
///
/// Walking clockwise from `i`, the values `v > i` that set a new running
/// minimum are exactly the `j` with `<i, j>` an occurrence; every other
/// value above `i` is a non-match partner.
pub mod scan {
    /// `N_mu` of a canonical cycle.
    pub fn occurrence_total<T: Copy + Into<usize>>(elems: &[T]) -> usize {
        let n = elems.len();
        let mut total = 0;
        for a in 0..n {
            let i: usize = elems[a].into();
            if i == n {
                continue;
            }
            let mut best = usize::MAX;
            let mut b = a;
            for _ in 1..n {
                b += 1;
                if b == n {
                    b = 0;
                }
                let v: usize = elems[b].into();
                if v > i && v < best {
                    best = v;
                    total += 1;
                    if v == i + 1 {
                        break;
                    }
                }
            }
        }
        total
    }

    /// `NT_mu`; zero for cycles of length one.
    pub fn nontrivial_count<T: Copy + Into<usize>>(elems: &[T]) -> usize {
        occurrence_total(elems) - elems.len().saturating_sub(1)
    }

    /// `NM_mu`: all pairs minus occurrences.
    pub fn nm_count<T: Copy + Into<usize>>(elems: &[T]) -> usize {
        let n = elems.len();
        crate::choose2(n) - occurrence_total(elems)
    }

    /// No `i` immediately followed by `i + 1`.
    pub fn is_incontractible<T: Copy + Into<usize>>(elems: &[T]) -> bool {
        elems.windows(2).all(|w| w[1].into() != w[0].into() + 1)
    }
}
