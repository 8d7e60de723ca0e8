//! Index, charge and charge paths of permutations.
//!
//! `ind(1) = 0`, and `ind(i+1)` equals `ind(i)` when `i+1` sits to the right
//! of `i`, otherwise `ind(i) + 1`. The charge path joins the points
//! `(t, ind(s_t))` in position order.

use std::fmt::Write as _;

use crate::contraction::is_incontractible;
use crate::cycle::Cycle;
use crate::error::{invalid, Result};
use crate::perm::Permutation;

/// Index levels in position order: `levels[t] = ind(s_{t+1})`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChargePath {
    levels: Vec<usize>,
}

impl ChargePath {
    pub fn levels(&self) -> &[usize] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// Starts and ends at level 0 and moves by exactly one level per step.
    /// A horizontal step disqualifies the path.
    pub fn is_dyck_path(&self) -> bool {
        let (Some(&first), Some(&last)) = (self.levels.first(), self.levels.last()) else {
            return false;
        };
        first == 0 && last == 0 && self.levels.windows(2).all(|w| w[0].abs_diff(w[1]) == 1)
    }

    /// One text row per level, highest first; `*` marks a vertex.
    pub fn render_ascii(&self) -> String {
        let top = self.levels.iter().copied().max().unwrap_or(0);
        let mut out = String::new();
        for level in (0..=top).rev() {
            for &l in &self.levels {
                out.push(if l == level { '*' } else { '.' });
            }
            out.push('\n');
        }
        out
    }

    pub fn render_svg(&self) -> String {
        const STEP: usize = 40;
        const PAD: usize = 20;
        let top = self.levels.iter().copied().max().unwrap_or(0);
        let width = PAD * 2 + STEP * self.levels.len().saturating_sub(1);
        let height = PAD * 2 + STEP * top;
        let point = |t: usize, l: usize| (PAD + STEP * t, PAD + STEP * (top - l));
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
        );
        let _ = writeln!(
            out,
            r##"<line x1="{PAD}" y1="{y}" x2="{x2}" y2="{y}" stroke="#bbbbbb" stroke-width="1"/>"##,
            y = PAD + STEP * top,
            x2 = width - PAD
        );
        let pts: Vec<String> = self
            .levels
            .iter()
            .enumerate()
            .map(|(t, &l)| {
                let (x, y) = point(t, l);
                format!("{x},{y}")
            })
            .collect();
        let _ = writeln!(
            out,
            r##"<polyline points="{}" fill="none" stroke="#000000" stroke-width="2"/>"##,
            pts.join(" ")
        );
        for (t, &l) in self.levels.iter().enumerate() {
            let (x, y) = point(t, l);
            let _ = writeln!(out, r##"<circle cx="{x}" cy="{y}" r="4" fill="#000000"/>"##);
        }
        out.push_str("</svg>\n");
        out
    }
}

/// `ind(v)` for every value, indexed by value (entry 0 unused).
fn index_by_value(p: &Permutation) -> Vec<usize> {
    let n = p.len();
    let mut pos = vec![0; n + 1];
    for (t, &v) in p.as_slice().iter().enumerate() {
        pos[v] = t;
    }
    let mut ind = vec![0; n + 1];
    for v in 1..n {
        ind[v + 1] = ind[v] + usize::from(pos[v + 1] < pos[v]);
    }
    ind
}

pub fn indices(p: &Permutation) -> ChargePath {
    let ind = index_by_value(p);
    ChargePath {
        levels: p.as_slice().iter().map(|&v| ind[v]).collect(),
    }
}

pub fn charge(p: &Permutation) -> usize {
    index_by_value(p).iter().sum()
}

pub fn is_dyck_path(path: &ChargePath) -> bool {
    path.is_dyck_path()
}

/// For an incontractible cycle of length `2n + 1`, returns whether
/// `NT = n` and whether the charge path of its word is a Dyck path. The two
/// flags agree for every such cycle.
pub fn dyck_minimality_check(c: &Cycle) -> Result<(bool, bool)> {
    if c.len() % 2 == 0 {
        return invalid(format!("{c} has even length"));
    }
    if !is_incontractible(c) {
        return invalid(format!("{c} is not incontractible"));
    }
    let half = c.len() / 2;
    let minimal = c.nontrivial_mu_count() == half;
    let dyck = indices(&c.as_word()).is_dyck_path();
    Ok((minimal, dyck))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycle::make_cycle;
    use crate::perm::all_permutations;
    use crate::poly::enumerate::enumerate_cycles;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    /// Recomputes each index from scratch by walking the chain 1, 2, ..., v.
    fn index_oracle(p: &Permutation, v: usize) -> usize {
        let pos = |x: usize| p.as_slice().iter().position(|&y| y == x).unwrap();
        (1..v).filter(|&i| pos(i + 1) < pos(i)).count()
    }

    #[test]
    fn worked_example() {
        let p = perm(&[1, 4, 8, 5, 9, 6, 2, 7, 3]);
        let path = indices(&p);
        assert_eq!(path.levels(), &[0, 1, 2, 1, 2, 1, 0, 1, 0]);
        assert_eq!(charge(&p), 8);
        assert!(path.is_dyck_path());
        let c = make_cycle(p.as_slice()).unwrap();
        assert_eq!(c.nontrivial_mu_count(), 4);
    }

    #[test]
    fn monotone_words() {
        for n in 1..=8 {
            let id = Permutation::identity(n);
            assert!(indices(&id).levels().iter().all(|&l| l == 0));
            assert_eq!(charge(&id), 0);
            if n >= 2 {
                assert!(!indices(&id).is_dyck_path());
            }
            let rev = id.reverse();
            let expected: Vec<usize> = (0..n).map(|t| n - 1 - t).collect();
            assert_eq!(indices(&rev).levels(), expected.as_slice());
            assert_eq!(charge(&rev), n * (n - 1) / 2);
        }
        assert!(indices(&perm(&[1, 3, 2])).is_dyck_path());
    }

    #[test]
    fn dyck_rejects_bad_shapes() {
        let path = |v: &[usize]| ChargePath { levels: v.to_vec() };
        assert!(!path(&[0, 1, 1, 0]).is_dyck_path());
        assert!(!path(&[0, 1]).is_dyck_path());
        assert!(!path(&[1, 0]).is_dyck_path());
        assert!(!path(&[0, 2, 0]).is_dyck_path());
        assert!(!path(&[]).is_dyck_path());
        assert!(path(&[0]).is_dyck_path());
        assert!(path(&[0, 1, 2, 1, 0]).is_dyck_path());
    }

    #[test]
    fn minimality_examples() {
        assert_eq!(
            dyck_minimality_check(&make_cycle(&[1, 3, 2]).unwrap()).unwrap(),
            (true, true)
        );
        assert_eq!(
            dyck_minimality_check(&make_cycle(&[1, 5, 4, 3, 2]).unwrap()).unwrap(),
            (false, false)
        );
        assert!(dyck_minimality_check(&make_cycle(&[1, 2, 3]).unwrap()).is_err());
        assert!(dyck_minimality_check(&make_cycle(&[1, 3, 2, 4]).unwrap()).is_err());
    }

    #[test]
    fn indices_match_from_scratch_oracle() {
        for n in 1..=6 {
            for p in all_permutations(n) {
                let path = indices(&p);
                for (t, &v) in p.as_slice().iter().enumerate() {
                    assert_eq!(path.levels()[t], index_oracle(&p, v));
                }
            }
        }
    }

    #[test]
    fn minimal_odd_cycles_are_dyck_exactly() {
        for len in [1, 3, 5, 7, 9] {
            for c in enumerate_cycles(len).unwrap().filter(is_incontractible) {
                let (minimal, dyck) = dyck_minimality_check(&c).unwrap();
                assert_eq!(minimal, dyck, "{c}");
            }
        }
    }

    #[test]
    fn renders_are_stable() {
        let path = indices(&perm(&[1, 3, 2]));
        assert_eq!(path.render_ascii(), ".*.\n*.*\n");
        assert_eq!(path.render_svg(), path.render_svg());
        assert!(path.render_svg().contains("points=\"20,60 60,20 100,60\""));
    }
}
