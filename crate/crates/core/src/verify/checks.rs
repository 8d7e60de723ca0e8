use std::collections::{BTreeMap, BTreeSet};

use super::{timed, CheckReport, Outcome, Verifier, Witness};
use crate::charge::dyck_minimality_check;
use crate::choose2;
use crate::contraction::{contract, expand_at, insert_after, is_incontractible, preimages};
use crate::cycle::{pack_tail, scan, Cycle};
use crate::error::{invalid, Result};
use crate::nmplot::{
    construct_cycle_from_partition, ferrers_diagram, ferrers_shape, nm_plot,
    partitions_in_staircase,
};
use crate::poly::enumerate::{enumerate_cycles, scan_shards};
use crate::poly::numbers::{binomial, catalan, derangements, factorial, partition_count};
use crate::poly::series::{exponential_formula_check, CNT_MAX_N};
use crate::poly::{min_length, nt_coeff_via_contraction, QPolynomial, Statistic};

/// The displayed low-power closed forms: `(k, first length, coefficients)`,
/// read as `NT_n|q^k = sum_j c_j * C(n-1, first + j - 1)`.
pub const CLOSED_FORMS: [(usize, usize, &[u64]); 5] = [
    (1, 3, &[1]),
    (2, 4, &[1, 2]),
    (3, 4, &[1, 3, 6, 5]),
    (4, 5, &[2, 13, 27, 29, 14]),
    (5, 5, &[1, 10, 51, 134, 181, 130, 42]),
];

fn range(lo: usize, hi: usize) -> String {
    format!("n={lo}..{hi}")
}

fn incontractible(n: usize) -> Result<Vec<Cycle>> {
    Ok(enumerate_cycles(n)?.filter(is_incontractible).collect())
}

/// Sorted packed codes of every incontractible n-cycle.
fn incontractible_codes(n: usize, jobs: usize) -> Result<Vec<u64>> {
    let parts = scan_shards(n, jobs, Vec::new, |acc: &mut Vec<u64>, c| {
        if scan::is_incontractible(c) {
            acc.push(pack_tail(c));
        }
    })?;
    Ok(parts.concat())
}

fn unpack(code: u64, n: usize) -> Cycle {
    let mut elems = vec![1; n];
    for (k, slot) in elems[1..].iter_mut().rev().enumerate() {
        *slot = ((code >> (4 * k)) & 0xf) as usize + 1;
    }
    Cycle::from_canonical(elems)
}

fn first_set_difference(expected: &[u64], actual: &[u64], n: usize) -> Option<Witness> {
    let (mut i, mut j) = (0, 0);
    loop {
        match (expected.get(i), actual.get(j)) {
            (None, None) => return None,
            (Some(a), Some(b)) if a == b => {
                i += 1;
                j += 1;
            }
            (Some(&a), b) if b.is_none_or(|&b| a < b) => {
                return Some(Witness::new(
                    format!("n={n} {}", unpack(a, n)),
                    "generated",
                    "missing",
                ));
            }
            (_, Some(&b)) => {
                return Some(Witness::new(
                    format!("n={n} {}", unpack(b, n)),
                    "absent",
                    "generated",
                ));
            }
            _ => unreachable!(),
        }
    }
}

impl Verifier {
    fn poly(&mut self, statistic: Statistic, n: usize) -> Result<QPolynomial> {
        Ok(self.distributions(n)?.get(statistic).clone())
    }

    fn ic_count(&mut self, n: usize) -> Result<u64> {
        self.poly(Statistic::Nti, n)?.eval_at_one()
    }

    /// Enumerated `NT`, `NTI`, `NM` against the reference tables.
    pub fn check_tables(&mut self, max_n: usize) -> Result<CheckReport> {
        if max_n > self.fixtures.max_n() {
            return invalid(format!(
                "reference tables stop at n = {}",
                self.fixtures.max_n()
            ));
        }
        timed("tables", range(1, max_n), false, || {
            for n in 1..=max_n {
                for statistic in Statistic::ALL {
                    let expected = self.fixtures.get(statistic, n).expect("row exists").clone();
                    let actual = self.poly(statistic, n)?;
                    if expected != actual {
                        return Ok(Outcome::fail(Witness::new(
                            format!("{statistic} n={n}"),
                            expected,
                            actual,
                        )));
                    }
                }
            }
            Ok(Outcome::pass())
        })
    }

    pub fn check_contraction(&mut self, max_n: usize) -> Result<CheckReport> {
        check_contraction_with(max_n, contract)
    }

    pub fn check_preimages(&mut self, max_len: usize, max_n: usize) -> Result<CheckReport> {
        let label = format!("len=1..{max_len} {}", range(1, max_n));
        timed("preimages", label, false, || {
            let levels = (1..=max_len.min(max_n))
                .map(incontractible)
                .collect::<Result<Vec<_>>>()?;
            for n in 1..=max_n {
                for (len, level) in (1..=n).zip(&levels) {
                    let expected = binomial(n as u64 - 1, len as u64 - 1);
                    for a in level {
                        let pre = preimages(a, n)?;
                        let distinct: BTreeSet<&Cycle> = pre.iter().collect();
                        if pre.len() as u64 != expected || distinct.len() != pre.len() {
                            return Ok(Outcome::fail(Witness::new(
                                format!("A={a} n={n}"),
                                format!("{expected} distinct preimages"),
                                format!("{} preimages, {} distinct", pre.len(), distinct.len()),
                            )));
                        }
                        if let Some(p) = pre.iter().find(|p| p.len() != n || contract(p) != *a) {
                            return Ok(Outcome::fail(Witness::new(
                                format!("A={a} n={n} preimage {p}"),
                                a,
                                contract(p),
                            )));
                        }
                    }
                }
                // every n-cycle contracts to exactly one incontractible cycle
                let mut total = 0u64;
                for len in 1..=n {
                    total += self.ic_count(len)? * binomial(n as u64 - 1, len as u64 - 1);
                }
                let all = factorial(n as u64 - 1);
                if total != all {
                    return Ok(Outcome::fail(Witness::new(
                        format!("sum over lengths n={n}"),
                        all,
                        total,
                    )));
                }
            }
            Ok(Outcome::pass())
        })
    }

    /// Incontractible cycles by filtering and by growth from the two
    /// shorter lengths; the sets must coincide and obey the recursion.
    pub fn check_ic_recursion(&mut self, max_n: usize) -> Result<CheckReport> {
        if max_n > 12 {
            return invalid("ic-recursion is limited to n <= 12");
        }
        let jobs = self.jobs;
        timed("ic-recursion", range(1, max_n), false, || {
            // levels[n] holds IC_n as cycles while it is still needed
            let mut levels: Vec<Vec<Cycle>> =
                vec![Vec::new(), vec![Cycle::increasing(1)], Vec::new()];
            let mut counts: Vec<u64> = vec![0, 1, 0];
            for n in 1..=max_n {
                let generated: Vec<Cycle> = if n <= 2 {
                    levels[n].clone()
                } else {
                    let mut out = Vec::new();
                    for d in &levels[n - 1] {
                        for i in 1..n - 1 {
                            out.push(insert_after(d, i)?);
                        }
                    }
                    for d in &levels[n - 2] {
                        for i in 1..=n - 2 {
                            out.push(expand_at(d, i)?);
                        }
                    }
                    out
                };
                if let Some(bad) = generated
                    .iter()
                    .find(|c| c.len() != n || !is_incontractible(c))
                {
                    return Ok(Outcome::fail(Witness::new(
                        format!("n={n} {bad}"),
                        "incontractible",
                        "bond",
                    )));
                }
                let mut codes: Vec<u64> = generated.iter().map(Cycle::pack).collect();
                codes.sort_unstable();
                if let Some(w) = codes.windows(2).find(|w| w[0] == w[1]) {
                    return Ok(Outcome::fail(Witness::new(
                        format!("n={n} {}", unpack(w[0], n)),
                        "generated once",
                        "generated twice",
                    )));
                }
                let filtered = incontractible_codes(n, jobs)?;
                if let Some(w) = first_set_difference(&filtered, &codes, n) {
                    return Ok(Outcome::fail(w));
                }
                let ic = filtered.len() as u64;
                if ic != self.ic_count(n)? {
                    return Ok(Outcome::fail(Witness::new(
                        format!("n={n}"),
                        ic,
                        self.ic_count(n)?,
                    )));
                }
                if n >= 3 {
                    let rec = (n as u64 - 2) * (counts[n - 1] + counts[n - 2]);
                    if rec != ic {
                        return Ok(Outcome::fail(Witness::new(
                            format!("recursion n={n}"),
                            rec,
                            ic,
                        )));
                    }
                }
                if n >= 3 {
                    counts.push(ic);
                    if n < max_n {
                        levels.push(generated);
                    }
                    if n >= 4 {
                        levels[n - 2] = Vec::new();
                    }
                }
            }
            Ok(Outcome::pass())
        })
    }

    pub fn check_derangement(&mut self, max_n: usize) -> Result<CheckReport> {
        timed("derangement", range(2, max_n), false, || {
            for n in 2..=max_n {
                let expected = derangements(n as u64 - 1);
                let actual = self.ic_count(n)?;
                if expected != actual {
                    return Ok(Outcome::fail(Witness::new(
                        format!("n={n}"),
                        expected,
                        actual,
                    )));
                }
            }
            Ok(Outcome::pass())
        })
    }

    /// Lowest nonzero power of `NTI_len` is `floor(len / 2)`.
    pub fn check_lowest_power(&mut self, max_len: usize) -> Result<CheckReport> {
        timed("lowest-power", range(4, max_len), false, || {
            for len in 4..=max_len {
                let actual = self.poly(Statistic::Nti, len)?.lowest_power();
                if actual != Some(len / 2) {
                    let shown = actual.map_or("none".to_string(), |p| p.to_string());
                    return Ok(Outcome::fail(Witness::new(
                        format!("n={len}"),
                        len / 2,
                        shown,
                    )));
                }
            }
            Ok(Outcome::pass())
        })
    }

    /// `NTI_{2m+1}|q^m = Catalan(m)` for odd lengths up to `max_odd`, and
    /// per-cycle agreement of minimality with the Dyck property up to
    /// `dyck_odd`.
    pub fn check_catalan(&mut self, max_odd: usize, dyck_odd: usize) -> Result<CheckReport> {
        let label = format!("odd=3..{max_odd} dyck=3..{}", dyck_odd.min(max_odd));
        timed("catalan", label, false, || {
            for len in (3..=max_odd).step_by(2) {
                let m = len / 2;
                let coeff = self.poly(Statistic::Nti, len)?.coeff(m);
                if coeff != catalan(m as u64) {
                    return Ok(Outcome::fail(Witness::new(
                        format!("n={len} q^{m}"),
                        catalan(m as u64),
                        coeff,
                    )));
                }
                if len <= dyck_odd {
                    for c in enumerate_cycles(len)?.filter(is_incontractible) {
                        let (minimal, dyck) = dyck_minimality_check(&c)?;
                        if minimal != dyck {
                            return Ok(Outcome::fail(Witness::new(
                                format!("C={c}"),
                                format!("NT={m} iff Dyck"),
                                format!("NT={} dyck={dyck}", c.nontrivial_mu_count()),
                            )));
                        }
                    }
                }
            }
            Ok(Outcome::pass())
        })
    }

    pub fn check_exponential(&mut self, max_n: usize) -> Result<CheckReport> {
        if max_n > CNT_MAX_N {
            return invalid(format!("exponential check is limited to n <= {CNT_MAX_N}"));
        }
        timed("exponential", range(1, max_n), false, || {
            Ok(Outcome::from_witness(
                exponential_formula_check(max_n)?.map(|d| {
                    Witness::new(
                        format!("n={} cyc={} q^{}", d.n, d.cycles, d.power),
                        d.brute_force,
                        d.formula,
                    )
                }),
            ))
        })
    }

    pub fn check_nm_uniqueness(&mut self, max_n: usize) -> Result<CheckReport> {
        timed("nm-uniqueness", range(1, max_n), false, || {
            for n in 1..=max_n {
                let mut seen: BTreeMap<Vec<(usize, usize)>, Cycle> = BTreeMap::new();
                for c in enumerate_cycles(n)? {
                    let key: Vec<(usize, usize)> = c.non_mu_matches().iter().collect();
                    if let Some(first) = seen.get(&key) {
                        return Ok(Outcome::fail(Witness::new(
                            format!("C={c}"),
                            "unique set",
                            format!("same as {first}"),
                        )));
                    }
                    seen.insert(key, c);
                }
            }
            Ok(Outcome::pass())
        })
    }

    /// Cycles with fewer than `n - 2` non-matches have a Ferrers plot and
    /// no bonds; every partition inside the staircase is realised.
    pub fn check_ferrers(&mut self, max_n: usize) -> Result<CheckReport> {
        timed("ferrers", range(1, max_n), false, || {
            for n in 1..=max_n {
                for c in enumerate_cycles(n)? {
                    if c.nm_count() + 2 >= n {
                        continue;
                    }
                    if ferrers_shape(&nm_plot(&c)).is_none() {
                        return Ok(Outcome::fail(Witness::new(
                            format!("C={c}"),
                            "Ferrers plot",
                            "not Ferrers",
                        )));
                    }
                    if !is_incontractible(&c) {
                        return Ok(Outcome::fail(Witness::new(
                            format!("C={c}"),
                            "no bonds",
                            "bond",
                        )));
                    }
                }
                if n < 3 {
                    continue;
                }
                for lambda in partitions_in_staircase(n)? {
                    let c = construct_cycle_from_partition(&lambda, n)?;
                    let plot = nm_plot(&c);
                    if plot != ferrers_diagram(n, &lambda)? {
                        let shape = ferrers_shape(&plot)
                            .map_or("not Ferrers".to_string(), |p| p.to_string());
                        return Ok(Outcome::fail(Witness::new(
                            format!("lambda={lambda} n={n} C={c}"),
                            &lambda,
                            shape,
                        )));
                    }
                }
            }
            Ok(Outcome::pass())
        })
    }

    /// For `k < n - 2`: `NM|q^k`, `NT|q^(top-k)` and `NTI|q^(top-k)` all
    /// equal the partition number `a(k)`.
    pub fn check_partition_tail(&mut self, max_n: usize) -> Result<CheckReport> {
        timed("partition-tail", range(3, max_n), false, || {
            for n in 3..=max_n {
                let d = self.distributions(n)?.clone();
                let top = choose2(n - 1);
                for k in 0..n - 2 {
                    let expected = partition_count(k);
                    let got = [
                        ("nm", d.nm.coeff(k)),
                        ("nt", d.nt.coeff(top - k)),
                        ("nti", d.nti.coeff(top - k)),
                    ];
                    if let Some((which, value)) = got.iter().find(|(_, v)| *v != expected) {
                        return Ok(Outcome::fail(Witness::new(
                            format!("{which} n={n} k={k}"),
                            expected,
                            value,
                        )));
                    }
                }
            }
            Ok(Outcome::pass())
        })
    }

    /// `NT_n|q^k` rebuilt from incontractible distributions, plus the
    /// displayed low-power closed forms.
    pub fn check_decomposition(&mut self, max_n: usize, max_k: usize) -> Result<CheckReport> {
        let label = format!("{} k=0..{max_k}", range(1, max_n));
        timed("decomposition", label, false, || {
            let nti_table = (1..=max_n)
                .map(|s| self.poly(Statistic::Nti, s))
                .collect::<Result<Vec<_>>>()?;
            for n in 1..=max_n {
                let nt = self.poly(Statistic::Nt, n)?;
                for k in 0..=max_k {
                    let via = nt_coeff_via_contraction(n, k, &nti_table)?;
                    if via != nt.coeff(k) {
                        return Ok(Outcome::fail(Witness::new(
                            format!("n={n} k={k}"),
                            nt.coeff(k),
                            via,
                        )));
                    }
                }
            }
            for (k, first, coeffs) in CLOSED_FORMS {
                if k > max_k {
                    continue;
                }
                for s in min_length(k)..=max_n.min(2 * k + 1) {
                    let listed = s
                        .checked_sub(first)
                        .and_then(|j| coeffs.get(j))
                        .copied()
                        .unwrap_or(0);
                    let actual = nti_table[s - 1].coeff(k);
                    if listed != actual {
                        return Ok(Outcome::fail(Witness::new(
                            format!("closed form k={k} length {s}"),
                            listed,
                            actual,
                        )));
                    }
                }
                for n in 1..=max_n {
                    let value: u64 = coeffs
                        .iter()
                        .enumerate()
                        .map(|(j, c)| c * binomial(n as u64 - 1, (first + j - 1) as u64))
                        .sum();
                    let actual = self.poly(Statistic::Nt, n)?.coeff(k);
                    if value != actual {
                        return Ok(Outcome::fail(Witness::new(
                            format!("closed form k={k} n={n}"),
                            value,
                            actual,
                        )));
                    }
                }
            }
            Ok(Outcome::pass()
                .with_note("the k=0 sum starts at length 1, where the 1-cycle contributes"))
        })
    }

    /// Counts partitions inside the staircase and reports which Catalan
    /// index they follow.
    pub fn check_staircase(&mut self, max_n: usize) -> Result<CheckReport> {
        timed("staircase-catalan", range(3, max_n), false, || {
            let mut index_n = Vec::new();
            for n in 3..=max_n {
                let count = partitions_in_staircase(n)?.len() as u64;
                if count == catalan(n as u64) {
                    index_n.push(n);
                }
                let expected = catalan(n as u64 - 1);
                if count != expected {
                    return Ok(Outcome::fail(Witness::new(
                        format!("n={n}"),
                        format!("Catalan(n-1)={expected}"),
                        count,
                    )));
                }
            }
            let also = if index_n.is_empty() {
                "never".to_string()
            } else {
                format!("{index_n:?}")
            };
            Ok(Outcome::pass().with_note(format!(
                "count equals Catalan(n-1); Catalan(n) matches {also}"
            )))
        })
    }

    /// `NTI_{2m}|q^m` against `sum_{i=0}^{m-2} C(2m-1, i)`.
    pub fn check_conjecture(&mut self, max_even: usize) -> Result<CheckReport> {
        if max_even > 14 {
            return invalid("conjecture check is limited to lengths <= 14");
        }
        timed("conjecture", format!("even=4..{max_even}"), true, || {
            let mut seen = Vec::new();
            let mut witness = None;
            for len in (4..=max_even).step_by(2) {
                let m = len / 2;
                let actual = self.poly(Statistic::Nti, len)?.coeff(m);
                let closed: u64 = (0..=m as u64 - 2)
                    .map(|i| binomial(len as u64 - 1, i))
                    .sum();
                seen.push(actual.to_string());
                if actual != closed && witness.is_none() {
                    witness = Some(Witness::new(format!("n={len} q^{m}"), closed, actual));
                }
            }
            Ok(Outcome::from_witness(witness).with_note(format!("sequence {}", seen.join(", "))))
        })
    }
}

/// Contraction invariance of `NT` with a caller-supplied contraction, for
/// negative controls. The image must also be incontractible.
pub fn check_contraction_with(
    max_n: usize,
    contract: impl Fn(&Cycle) -> Cycle,
) -> Result<CheckReport> {
    timed("contraction", range(1, max_n), false, || {
        for n in 1..=max_n {
            for c in enumerate_cycles(n)? {
                let a = contract(&c);
                if a.nontrivial_mu_count() != c.nontrivial_mu_count() {
                    return Ok(Outcome::fail(Witness::new(
                        format!("C={c} cont={a}"),
                        format!("NT={}", c.nontrivial_mu_count()),
                        format!("NT={}", a.nontrivial_mu_count()),
                    )));
                }
                if !is_incontractible(&a) {
                    return Ok(Outcome::fail(Witness::new(
                        format!("C={c} cont={a}"),
                        "incontractible",
                        "bond",
                    )));
                }
            }
        }
        Ok(Outcome::pass())
    })
}
