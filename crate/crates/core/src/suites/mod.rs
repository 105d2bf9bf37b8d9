//! Named, runnable checks for every result in scope, and the report they produce.
//!
//! Checks run in registry order. Randomized checks draw from a stream derived from
//! the master seed and the check id, so a report depends only on the group and the
//! [`Config`].

use std::sync::OnceLock;

use rand::Rng;
use serde::Serialize;

use crate::engine::{Engine, Mutation};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::subset::{self, SectionAtlas, Subset};
use crate::verdict::{decode, derive_seed, sample_rng, scan, Mode, Verdict, Witness};

pub mod lattice;
mod registry;

pub use registry::{Entry, RESULTS, REGISTRY};

/// Groups the acceptance run covers.
pub const CORPUS: [&str; 15] = [
    "z1", "z2", "z3", "z4", "k4", "z5", "z6", "s3", "z7", "z8", "z2xz4", "z2xz2xz2", "d4", "q8", "z3xz3",
];

/// Largest carrier on which torsor axioms are checked on every 5-tuple.
pub const CARRIER_EXHAUSTIVE: usize = 16;

/// Scan sizes and randomness for one run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    pub seed: u64,
    /// Scans over subset triples are exhaustive iff `2^n` is at most this;
    /// scans over 5-tuples iff `2^n` is at most a quarter of it.
    pub threshold_subsets: u64,
    /// Scans over subgroup tuples are exhaustive iff `|Gras(Ω)|` is at most this.
    pub threshold_subgroups: usize,
    /// Samples per randomized check.
    pub samples: u64,
    pub mutation: Option<Mutation>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            seed: 0,
            threshold_subsets: 64,
            threshold_subgroups: 20,
            samples: 10_000,
            mutation: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

/// One line of a report. A failure always carries a witness; a skip always carries a note.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check_id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance: Option<String>,
    pub statement: String,
    pub status: Status,
    pub witness: Option<Witness>,
    pub group: String,
    pub mode: String,
    pub checked: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub group: String,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mutation: Option<Mutation>,
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
}

impl Report {
    pub fn new(group: &FiniteGroup, config: &Config, checks: Vec<CheckResult>) -> Self {
        let mut summary = Summary::default();
        for c in &checks {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Skipped => summary.skipped += 1,
            }
        }
        Report {
            group: group.name().to_string(),
            seed: config.seed,
            mutation: config.mutation,
            checks,
            summary,
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }
}

/// What one check produced for one instance.
#[derive(Debug, Clone)]
pub struct Outcome {
    instance: Option<String>,
    mode: Option<Mode>,
    body: Body,
    note: Option<String>,
}

#[derive(Debug, Clone)]
enum Body {
    Verdict(Verdict),
    Skip(String),
    Error(Error),
}

impl Outcome {
    pub fn verdict(mode: Mode, v: Verdict) -> Self {
        Outcome {
            instance: None,
            mode: Some(mode),
            body: Body::Verdict(v),
            note: None,
        }
    }

    pub fn skip(reason: impl Into<String>) -> Self {
        Outcome {
            instance: None,
            mode: None,
            body: Body::Skip(reason.into()),
            note: None,
        }
    }

    /// Corpus limits become skips; any other error is a failure.
    pub fn error(e: Error) -> Self {
        let body = match e {
            Error::CorpusLimit { .. } => Body::Skip(e.to_string()),
            e => Body::Error(e),
        };
        Outcome {
            instance: None,
            mode: None,
            body,
            note: None,
        }
    }

    pub fn from_result(mode: Mode, r: Result<Verdict>) -> Self {
        match r {
            Ok(v) => Self::verdict(mode, v),
            Err(e) => Self::error(e),
        }
    }

    pub fn instance(mut self, label: impl Into<String>) -> Self {
        self.instance = Some(label.into());
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    fn into_result(self, entry: &Entry, group: &str) -> CheckResult {
        let (status, witness, checked, note) = match self.body {
            Body::Verdict(v) => {
                let status = if v.passed() { Status::Pass } else { Status::Fail };
                (status, v.witness, v.checked, self.note)
            }
            Body::Skip(reason) => {
                let note = match self.note {
                    Some(n) => format!("{reason}; {n}"),
                    None => reason,
                };
                (Status::Skipped, None, 0, Some(note))
            }
            Body::Error(e) => (Status::Fail, Some(Witness::new().with("error", e)), 0, self.note),
        };
        CheckResult {
            check_id: entry.id.to_string(),
            instance: self.instance,
            statement: entry.statement.to_string(),
            status,
            witness,
            group: group.to_string(),
            mode: self.mode.map(|m| m.to_string()).unwrap_or_else(|| "n/a".to_string()),
            checked,
            note,
        }
    }
}

/// Shared, lazily computed data for the checks of one run.
pub struct Ctx<'g> {
    pub group: &'g FiniteGroup,
    pub engine: Engine<'g>,
    pub config: &'g Config,
    gras: OnceLock<Result<Vec<Subset>>>,
    atlas: OnceLock<Result<SectionAtlas>>,
}

impl<'g> Ctx<'g> {
    pub fn new(group: &'g FiniteGroup, config: &'g Config) -> Self {
        Ctx {
            group,
            engine: Engine::with_mutation(group, config.mutation),
            config,
            gras: OnceLock::new(),
            atlas: OnceLock::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn gras(&self) -> Result<&[Subset]> {
        self.gras
            .get_or_init(|| subset::grassmannian(self.group))
            .as_deref()
            .map_err(Clone::clone)
    }

    pub fn atlas(&self) -> Result<&SectionAtlas> {
        self.atlas
            .get_or_init(|| SectionAtlas::new(self.group))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn random(&self, key: &str) -> Mode {
        Mode::Random {
            seed: derive_seed(self.config.seed, key),
            samples: self.config.samples,
        }
    }

    /// Mode for a scan over `arity`-tuples of subsets.
    pub fn subset_mode(&self, key: &str, arity: u32) -> Mode {
        let limit = if arity <= 3 {
            self.config.threshold_subsets
        } else {
            self.config.threshold_subsets / 4
        };
        let n = self.order() as u32;
        if n < 64 && 1u64 << n <= limit && n as usize <= crate::torsor::Domain::LISTABLE_ORDER {
            Mode::Exhaustive
        } else {
            self.random(key)
        }
    }

    /// Mode for a scan over tuples of subgroups.
    pub fn subgroup_mode(&self, key: &str) -> Result<Mode> {
        Ok(if self.gras()?.len() <= self.config.threshold_subgroups {
            Mode::Exhaustive
        } else {
            self.random(key)
        })
    }

    /// Pairs `(i, j)` of subgroup indices to visit, all of them or a seeded selection.
    pub fn subgroup_pairs(&self, key: &str) -> Result<Vec<(usize, usize)>> {
        let m = self.gras()?.len();
        Ok(match self.subgroup_mode(key)? {
            Mode::Exhaustive => (0..m * m).map(|k| (k / m, k % m)).collect(),
            Mode::Random { seed, .. } => {
                let t = self.config.threshold_subgroups;
                let mut picked: Vec<(usize, usize)> = (0..(t * t) as u64)
                    .map(|i| {
                        let mut rng = sample_rng(seed, i);
                        (rng.gen_range(0..m), rng.gen_range(0..m))
                    })
                    .collect();
                picked.sort_unstable();
                picked.dedup();
                picked
            }
        })
    }
}

/// Where the arguments of a subset scan come from.
#[derive(Debug, Clone, Copy)]
pub enum Pool<'a> {
    /// Every subset of a group of this order.
    PowerSet(usize),
    /// Every subset containing the given element.
    Pointed(usize, usize),
    Listed(&'a [Subset]),
}

impl Pool<'_> {
    fn size(&self) -> u64 {
        match *self {
            Pool::PowerSet(n) => 1u64 << n,
            Pool::Pointed(n, _) => 1u64 << (n - 1),
            Pool::Listed(v) => v.len() as u64,
        }
    }

    fn at(&self, i: u64) -> Subset {
        match *self {
            Pool::PowerSet(n) => Subset::from_bits(n, i as u128),
            Pool::Pointed(n, o) => {
                let i = i as u128;
                let low = i & ((1u128 << o) - 1);
                Subset::from_bits(n, ((i >> o) << (o + 1)) | (1u128 << o) | low)
            }
            Pool::Listed(v) => v[i as usize],
        }
    }

    fn sample(&self, rng: &mut impl Rng) -> Subset {
        match *self {
            Pool::PowerSet(n) => Subset::from_bits(n, rng.gen::<u128>() & Subset::full(n).bits()),
            Pool::Pointed(n, o) => {
                let mut s = Subset::from_bits(n, rng.gen::<u128>() & Subset::full(n).bits());
                s.insert(o);
                s
            }
            Pool::Listed(v) => v[rng.gen_range(0..v.len())],
        }
    }
}

/// Scans `K`-tuples drawn from `pool`.
pub fn scan_tuples<const K: usize>(
    pool: Pool<'_>,
    mode: Mode,
    probe: impl Fn([Subset; K]) -> Option<Witness> + Sync + Send,
) -> Verdict {
    if pool.size() == 0 {
        return Verdict::pass(0);
    }
    match mode {
        Mode::Exhaustive => {
            let m = pool.size();
            scan(m.pow(K as u32), |i| {
                let d = decode(i, m as usize, K);
                probe(std::array::from_fn(|k| pool.at(d[k] as u64)))
            })
        }
        Mode::Random { seed, samples } => scan(samples, |i| {
            let mut rng = sample_rng(seed, i);
            probe(std::array::from_fn(|_| pool.sample(&mut rng)))
        }),
    }
}

/// Adds `(a, b)` context to a verdict's witness.
pub(crate) fn with_pair(mut v: Verdict, a: &Subset, b: Option<&Subset>) -> Verdict {
    if let Some(w) = v.witness.take() {
        let mut ctx = Witness::new().with("a", a);
        if let Some(b) = b {
            ctx = ctx.with("b", b);
        }
        ctx.0.extend(w.0);
        v.witness = Some(ctx);
    }
    v
}

/// Runs the registry entries accepted by `filter`, in registry order.
pub fn run_checks(g: &FiniteGroup, config: &Config, filter: impl Fn(&Entry) -> bool) -> Report {
    let cx = Ctx::new(g, config);
    let mut checks = Vec::new();
    for entry in REGISTRY.iter().filter(|e| filter(e)) {
        for outcome in (entry.run)(&cx) {
            checks.push(outcome.into_result(entry, g.name()));
        }
    }
    Report::new(g, config, checks)
}

/// Every check in the registry.
pub fn run_all(g: &FiniteGroup, config: &Config) -> Report {
    run_checks(g, config, |_| true)
}

/// The lattice identities alone.
pub fn run_lattice_suite(g: &FiniteGroup, config: &Config) -> Report {
    run_checks(g, config, |e| e.area == "lattice")
}
