//! Named, deterministic checks of the enumerated identities.
//!
//! Each check sweeps a bounded range and returns a [`CheckReport`]. A
//! failing report carries the first witness found, scanning lengths in
//! increasing order and cycles lexicographically. Conjecture checks report
//! their own statuses and never count as failures.

mod checks;
pub mod fixtures;

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use serde::{Serialize, Serializer};

use crate::error::{invalid, Result};
use crate::poly::{distributions, Distributions};

pub use fixtures::Fixtures;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum CheckStatus {
    Pass,
    Fail,
    ConjectureConsistent,
    ConjectureViolated,
}

impl CheckStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::ConjectureConsistent => "CONJECTURE-CONSISTENT",
            CheckStatus::ConjectureViolated => "CONJECTURE-VIOLATED",
        }
    }

    pub fn is_conjecture(self) -> bool {
        matches!(
            self,
            CheckStatus::ConjectureConsistent | CheckStatus::ConjectureViolated
        )
    }
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub params: String,
    pub expected: String,
    pub actual: String,
}

impl Witness {
    pub fn new(
        params: impl fmt::Display,
        expected: impl fmt::Display,
        actual: impl fmt::Display,
    ) -> Self {
        Witness {
            params: params.to_string(),
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "at {}: expected {}, got {}",
            self.params, self.expected, self.actual
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub range: String,
    pub status: CheckStatus,
    pub first_failure: Option<Witness>,
    #[serde(rename = "elapsed_secs", serialize_with = "as_secs")]
    pub elapsed: Duration,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn as_secs<S: Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl CheckReport {
    /// `CHECK <name> <range> <STATUS> [witness]`; timing is left out so the
    /// line is reproducible.
    pub fn to_line(&self) -> String {
        let mut line = format!("CHECK {} {} {}", self.name, self.range, self.status);
        if let Some(w) = &self.first_failure {
            line.push(' ');
            line.push_str(&w.to_string());
        }
        line
    }

    pub fn passed(&self) -> bool {
        self.status != CheckStatus::Fail
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_line())
    }
}

/// Result of a check body before timing and labelling.
pub(crate) struct Outcome {
    witness: Option<Witness>,
    note: Option<String>,
}

impl Outcome {
    fn pass() -> Self {
        Outcome {
            witness: None,
            note: None,
        }
    }

    fn fail(w: Witness) -> Self {
        Outcome {
            witness: Some(w),
            note: None,
        }
    }

    fn from_witness(w: Option<Witness>) -> Self {
        Outcome {
            witness: w,
            note: None,
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

fn timed(
    name: &str,
    range: String,
    conjecture: bool,
    body: impl FnOnce() -> Result<Outcome>,
) -> Result<CheckReport> {
    let start = Instant::now();
    let outcome = body()?;
    let status = match (conjecture, outcome.witness.is_some()) {
        (false, false) => CheckStatus::Pass,
        (false, true) => CheckStatus::Fail,
        (true, false) => CheckStatus::ConjectureConsistent,
        (true, true) => CheckStatus::ConjectureViolated,
    };
    Ok(CheckReport {
        name: name.to_string(),
        range,
        status,
        first_failure: outcome.witness,
        elapsed: start.elapsed(),
        note: outcome.note,
    })
}

/// Every check, in the order [`Verifier::check_all`] runs them.
pub const CHECK_NAMES: [&str; 14] = [
    "tables",
    "contraction",
    "preimages",
    "ic-recursion",
    "derangement",
    "lowest-power",
    "catalan",
    "exponential",
    "nm-uniqueness",
    "ferrers",
    "partition-tail",
    "decomposition",
    "staircase-catalan",
    "conjecture",
];

/// Largest size swept by each check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub tables: usize,
    pub contraction: usize,
    pub preimage_len: usize,
    pub preimage_n: usize,
    pub ic: usize,
    pub lowest_power: usize,
    pub catalan_odd: usize,
    pub dyck_odd: usize,
    pub exponential: usize,
    pub nm_uniqueness: usize,
    pub ferrers: usize,
    pub partition_tail: usize,
    pub decomposition_n: usize,
    pub decomposition_k: usize,
    pub staircase: usize,
    pub conjecture_even: usize,
    pub jobs: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            tables: 10,
            contraction: 9,
            preimage_len: 6,
            preimage_n: 9,
            ic: 11,
            lowest_power: 11,
            catalan_odd: 11,
            dyck_odd: 9,
            exponential: 8,
            nm_uniqueness: 8,
            ferrers: 9,
            partition_tail: 10,
            decomposition_n: 10,
            decomposition_k: 10,
            staircase: 9,
            conjecture_even: 12,
            jobs: default_jobs(),
        }
    }
}

pub fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn largest_odd(limit: usize) -> usize {
    if limit % 2 == 1 {
        limit
    } else {
        limit.saturating_sub(1)
    }
}

fn largest_even(limit: usize) -> usize {
    limit - limit % 2
}

impl Budget {
    /// Every size capped at 4.
    pub fn smoke() -> Self {
        Budget::default().capped(4)
    }

    /// The default budget with every length limited to `max_n`.
    pub fn capped(self, max_n: usize) -> Self {
        let cap = |v: usize| v.min(max_n);
        Budget {
            tables: cap(self.tables),
            contraction: cap(self.contraction),
            preimage_len: cap(self.preimage_len),
            preimage_n: cap(self.preimage_n),
            ic: cap(self.ic),
            lowest_power: cap(self.lowest_power),
            catalan_odd: largest_odd(cap(self.catalan_odd)),
            dyck_odd: largest_odd(cap(self.dyck_odd)),
            exponential: cap(self.exponential),
            nm_uniqueness: cap(self.nm_uniqueness),
            ferrers: cap(self.ferrers),
            partition_tail: cap(self.partition_tail),
            decomposition_n: cap(self.decomposition_n),
            decomposition_k: self.decomposition_k,
            staircase: cap(self.staircase),
            conjecture_even: largest_even(cap(self.conjecture_even)),
            jobs: self.jobs,
        }
    }

    pub fn with_max_odd(mut self, max_odd: usize) -> Self {
        self.catalan_odd = largest_odd(max_odd);
        self.dyck_odd = self.dyck_odd.min(self.catalan_odd);
        self
    }

    pub fn with_max_even(mut self, max_even: usize) -> Self {
        self.conjecture_even = largest_even(max_even);
        self
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs.max(1);
        self
    }
}

/// Runs checks while sharing enumerated distributions between them.
#[derive(Debug, Clone)]
pub struct Verifier {
    jobs: usize,
    fixtures: Fixtures,
    cache: BTreeMap<usize, Distributions>,
}

impl Default for Verifier {
    fn default() -> Self {
        Verifier::new(1)
    }
}

impl Verifier {
    pub fn new(jobs: usize) -> Self {
        Verifier {
            jobs: jobs.max(1),
            fixtures: Fixtures::embedded(),
            cache: BTreeMap::new(),
        }
    }

    /// Compares against `fixtures` instead of the embedded tables.
    pub fn with_fixtures(mut self, fixtures: Fixtures) -> Self {
        self.fixtures = fixtures;
        self
    }

    /// Seeds the distribution cache, e.g. from a previous run.
    pub fn insert_distributions(&mut self, d: Distributions) {
        self.cache.insert(d.n, d);
    }

    pub fn distributions(&mut self, n: usize) -> Result<&Distributions> {
        if !self.cache.contains_key(&n) {
            let d = distributions(n, self.jobs)?;
            self.cache.insert(n, d);
        }
        Ok(&self.cache[&n])
    }

    /// Runs one named check with the sizes from `budget`.
    pub fn run(&mut self, name: &str, budget: &Budget) -> Result<CheckReport> {
        match name {
            "tables" => self.check_tables(budget.tables),
            "contraction" => self.check_contraction(budget.contraction),
            "preimages" => self.check_preimages(budget.preimage_len, budget.preimage_n),
            "ic-recursion" => self.check_ic_recursion(budget.ic),
            "derangement" => self.check_derangement(budget.ic),
            "lowest-power" => self.check_lowest_power(budget.lowest_power),
            "catalan" => self.check_catalan(budget.catalan_odd, budget.dyck_odd),
            "exponential" => self.check_exponential(budget.exponential),
            "nm-uniqueness" => self.check_nm_uniqueness(budget.nm_uniqueness),
            "ferrers" => self.check_ferrers(budget.ferrers),
            "partition-tail" => self.check_partition_tail(budget.partition_tail),
            "decomposition" => {
                self.check_decomposition(budget.decomposition_n, budget.decomposition_k)
            }
            "staircase-catalan" => self.check_staircase(budget.staircase),
            "conjecture" => self.check_conjecture(budget.conjecture_even),
            other => invalid(format!(
                "unknown check {other:?}; expected one of {}",
                CHECK_NAMES.join(", ")
            )),
        }
    }

    pub fn check_all(&mut self, budget: &Budget) -> Result<Vec<CheckReport>> {
        CHECK_NAMES
            .iter()
            .map(|name| self.run(name, budget))
            .collect()
    }
}

/// Runs every check with a fresh [`Verifier`].
pub fn check_all(budget: &Budget) -> Result<Vec<CheckReport>> {
    Verifier::new(budget.jobs).check_all(budget)
}

/// True iff no check failed; conjecture outcomes are ignored.
pub fn all_checks_pass(reports: &[CheckReport]) -> bool {
    reports.iter().all(CheckReport::passed)
}
