//! Grid plots of non-matches, Ferrers shapes and the partition-to-cycle
//! construction.
//!
//! Rows are numbered 1..=n from the bottom and columns 1..=n from the left.
//! A pair `<i, j>` shades the cell in row `j`, column `i`.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use crate::contraction::insert_after;
use crate::cycle::{Cycle, PairSet};
use crate::error::{invalid, Result};
use crate::poly::enumerate::enumerate_cycles;

/// An `n x n` grid with a set of shaded `(row, col)` cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridPlot {
    n: usize,
    shaded: BTreeSet<(usize, usize)>,
}

impl GridPlot {
    pub fn empty(n: usize) -> Self {
        GridPlot {
            n,
            shaded: BTreeSet::new(),
        }
    }

    /// Shades `(j, i)` for every pair `<i, j>`.
    pub fn from_pairs(n: usize, pairs: &PairSet) -> Result<Self> {
        let mut plot = GridPlot::empty(n);
        for (i, j) in pairs.iter() {
            plot.shade(j, i)?;
        }
        Ok(plot)
    }

    pub fn shade(&mut self, row: usize, col: usize) -> Result<()> {
        if !(1..=self.n).contains(&row) || !(1..=self.n).contains(&col) {
            return invalid(format!(
                "cell ({row},{col}) outside the {0}x{0} grid",
                self.n
            ));
        }
        self.shaded.insert((row, col));
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_shaded(&self, row: usize, col: usize) -> bool {
        self.shaded.contains(&(row, col))
    }

    pub fn shaded_count(&self) -> usize {
        self.shaded.len()
    }

    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.shaded.iter().copied()
    }

    /// Top row first, `#` for shaded and `.` for blank.
    pub fn render_ascii(&self) -> String {
        let mut out = String::with_capacity(self.n * (self.n + 1));
        for row in (1..=self.n).rev() {
            for col in 1..=self.n {
                out.push(if self.is_shaded(row, col) { '#' } else { '.' });
            }
            out.push('\n');
        }
        out
    }

    pub fn render_svg(&self) -> String {
        const CELL: usize = 20;
        let side = CELL * self.n;
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{side}" height="{side}" viewBox="0 0 {side} {side}">"#
        );
        for row in (1..=self.n).rev() {
            for col in 1..=self.n {
                let fill = if self.is_shaded(row, col) {
                    "#555555"
                } else {
                    "#ffffff"
                };
                let _ = writeln!(
                    out,
                    r##"<rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="{fill}" stroke="#000000" stroke-width="1"/>"##,
                    x = CELL * (col - 1),
                    y = CELL * (self.n - row)
                );
            }
        }
        out.push_str("</svg>\n");
        out
    }
}

impl fmt::Display for GridPlot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_ascii())
    }
}

/// A weakly decreasing sequence of positive parts.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return invalid("partition parts must be positive");
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return invalid("partition parts must be weakly decreasing");
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `|lambda|`.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `l(lambda)`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        crate::perm::write_joined(f, &self.parts)?;
        f.write_str(")")
    }
}

pub fn nm_plot(c: &Cycle) -> GridPlot {
    GridPlot::from_pairs(c.len(), &c.non_mu_matches()).expect("pairs lie in 1..=n")
}

/// `FD_m(lambda)`: row `m - r + 1` holds columns `1..=lambda_r`.
pub fn ferrers_diagram(m: usize, lambda: &Partition) -> Result<GridPlot> {
    let mut plot = GridPlot::empty(m);
    if lambda.len() > m {
        return invalid(format!("{lambda} has more than {m} rows"));
    }
    for (r, &part) in lambda.parts().iter().enumerate() {
        for col in 1..=part {
            plot.shade(m - r, col)?;
        }
    }
    Ok(plot)
}

/// Row lengths read from the top, if the shading is a top-left justified
/// Ferrers diagram.
pub fn ferrers_shape(g: &GridPlot) -> Option<Partition> {
    let mut parts = Vec::new();
    let mut previous = usize::MAX;
    for row in (1..=g.n).rev() {
        let length = (1..=g.n).take_while(|&col| g.is_shaded(row, col)).count();
        let total = (1..=g.n).filter(|&col| g.is_shaded(row, col)).count();
        if total != length || length > previous {
            return None;
        }
        previous = length;
        if length > 0 {
            parts.push(length);
        }
    }
    Some(Partition { parts })
}

/// `T_n = (n-2, n-3, ..., 1)`.
pub fn staircase(n: usize) -> Result<Partition> {
    if n < 3 {
        return invalid("the staircase needs n >= 3");
    }
    Ok(Partition {
        parts: (1..=n - 2).rev().collect(),
    })
}

/// `lambda_i <= n - 1 - i` for every row (1-based `i`).
pub fn fits_in_staircase(lambda: &Partition, n: usize) -> bool {
    lambda.len() <= n.saturating_sub(2)
        && lambda
            .parts()
            .iter()
            .enumerate()
            .all(|(r, &part)| part + r + 2 <= n)
}

/// Every partition whose diagram lies inside `T_n`.
pub fn partitions_in_staircase(n: usize) -> Result<Vec<Partition>> {
    let stairs = staircase(n)?;
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill_below(stairs.parts(), usize::MAX, &mut current, &mut out);
    Ok(out)
}

fn fill_below(bounds: &[usize], cap: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
    out.push(Partition {
        parts: current.clone(),
    });
    let Some((&bound, rest)) = bounds.split_first() else {
        return;
    };
    for part in (1..=bound.min(cap)).rev() {
        current.push(part);
        fill_below(rest, part, current, out);
        current.pop();
    }
}

/// The intermediate cycles `C_m, ..., C_n` of the construction, where
/// `m = n - l(lambda)`. `C_m = (1, m, m-1, ..., 2)`, and the row of length
/// `r` at height `v` inserts `v` right after `r + 1`, bottom row first.
pub fn construction_trace(lambda: &Partition, n: usize) -> Result<Vec<Cycle>> {
    if n < 3 {
        return invalid("the construction needs n >= 3");
    }
    if !fits_in_staircase(lambda, n) {
        return invalid(format!("{lambda} does not fit in T_{n}"));
    }
    let base = n - lambda.len();
    let mut trace = vec![Cycle::decreasing(base)];
    for &row_length in lambda.parts().iter().rev() {
        let last = trace.last().expect("trace starts non-empty");
        trace.push(insert_after(last, row_length + 1)?);
    }
    Ok(trace)
}

/// An n-cycle whose non-match plot is `FD_n(lambda)`.
pub fn construct_cycle_from_partition(lambda: &Partition, n: usize) -> Result<Cycle> {
    Ok(construction_trace(lambda, n)?
        .pop()
        .expect("trace is non-empty"))
}

/// True iff distinct n-cycles always have distinct non-match sets.
pub fn nm_uniqueness_check(n: usize) -> Result<bool> {
    let mut seen = BTreeSet::new();
    for c in enumerate_cycles(n)? {
        let key: Vec<(usize, usize)> = c.non_mu_matches().iter().collect();
        if !seen.insert(key) {
            return Ok(false);
        }
    }
    Ok(true)
}
