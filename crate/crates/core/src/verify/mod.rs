//! Executable congruence statements, per-prime checks and prime sweeps.
//!
//! A check evaluates every sum of a statement modulo `p^e` through the
//! valuation-tracked tables in [`kernel`]. Any failure is recomputed by the
//! exact-integer path in [`oracle`] before it is reported.

pub mod kernel;
pub mod oracle;
pub mod registry;
pub mod statement;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modarith::{primes_between, PrimeCtx, QuadFormWitness, PRIME_LIMIT};

pub use kernel::PrimeData;
pub use registry::{registry, resolve, statement, statement_ids};
pub use statement::{Kind, StatementSpec, Target};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

/// Result of one `(statement, p, parameter)` instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub status: Status,
    pub reason: Option<String>,
    /// First sum of the deciding clause.
    pub lhs: Option<u64>,
    /// The value it was compared against.
    pub rhs: Option<u64>,
    /// Modulus the residues live in.
    pub modulus: Option<u64>,
    pub witness: Option<QuadFormWitness>,
}

impl CheckOutcome {
    pub fn skipped(reason: impl Into<String>) -> Self {
        Self {
            status: Status::Skipped,
            reason: Some(reason.into()),
            lhs: None,
            rhs: None,
            modulus: None,
            witness: None,
        }
    }

    pub fn is_pass(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Fast residues of every sum, one inner vector per clause (empty when the
/// clause does not apply to `p`).
pub fn fast_term_values(
    spec: &StatementSpec,
    data: &PrimeData,
    param: Option<u64>,
) -> std::result::Result<Vec<Vec<u64>>, String> {
    let p = data.ctx().p();
    spec.clauses
        .iter()
        .map(|clause| {
            if !clause.applies(p) {
                return Ok(Vec::new());
            }
            clause.chain.iter().map(|t| t.eval(data, param)).collect()
        })
        .collect()
}

/// Compare clause values against their targets. `values` are modulo
/// `ctx.modulus()`, which must cover every clause power.
fn judge(spec: &StatementSpec, ctx: &PrimeCtx, values: &[Vec<u64>]) -> CheckOutcome {
    let mut first: Option<CheckOutcome> = None;
    for (clause, vals) in spec.clauses.iter().zip(values) {
        if vals.is_empty() {
            continue;
        }
        let cctx = ctx.with_exponent(clause.power).expect("clause power within 1..=3");
        let m = cctx.modulus();
        let vals: Vec<u64> = vals.iter().map(|v| v % m).collect();
        let (expected, witness) = match &clause.target {
            Target::Chain => (None, None),
            Target::Zero => (Some(0), None),
            Target::Table(table) => match table.expected(&cctx) {
                Ok(Some((v, w))) => (Some(v), w),
                Ok(None) => continue,
                Err(e) => {
                    return CheckOutcome {
                        status: Status::Fail,
                        reason: Some(format!("internal inconsistency: {e}")),
                        lhs: Some(vals[0]),
                        rhs: None,
                        modulus: Some(m),
                        witness: None,
                    }
                }
            },
        };
        let lhs = vals[0];
        let mismatch = vals
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, &v)| v != lhs)
            .map(|(j, &v)| (format!("sum 1 and sum {} differ mod p^{}", j + 1, clause.power), v))
            .or_else(|| {
                expected
                    .filter(|&x| x != lhs)
                    .map(|x| (format!("sums differ from the expected value mod p^{}", clause.power), x))
            });
        let outcome = match mismatch {
            Some((reason, rhs)) => {
                return CheckOutcome {
                    status: Status::Fail,
                    reason: Some(reason),
                    lhs: Some(lhs),
                    rhs: Some(rhs),
                    modulus: Some(m),
                    witness,
                }
            }
            None => CheckOutcome {
                status: Status::Pass,
                reason: None,
                lhs: Some(lhs),
                rhs: Some(expected.unwrap_or(*vals.last().unwrap())),
                modulus: Some(m),
                witness,
            },
        };
        first.get_or_insert(outcome);
    }
    first.unwrap_or_else(|| CheckOutcome::skipped("no clause applies"))
}

/// Check one instance. `data` must be built for an exponent at least the
/// statement's largest modulus power.
pub fn check_statement(spec: &StatementSpec, data: &PrimeData, param: Option<u64>) -> CheckOutcome {
    let ctx = *data.ctx();
    let p = ctx.p();
    assert!(
        ctx.e() >= spec.modulus_power(),
        "{} needs p^{} but the tables are mod p^{}",
        spec.id,
        spec.modulus_power(),
        ctx.e()
    );
    if let Some(reason) = spec.prime_gate(p) {
        return CheckOutcome::skipped(reason);
    }
    let param = match (spec.param, param) {
        (Some(decl), Some(v)) => {
            let v = v % p;
            if !(decl.admissible)(&ctx, v) {
                return CheckOutcome::skipped(format!("{} = {v} excluded: needs {}", decl.name, decl.condition));
            }
            Some(v)
        }
        (Some(decl), None) => return CheckOutcome::skipped(format!("no value given for {}", decl.name)),
        (None, _) => None,
    };
    let values = match fast_term_values(spec, data, param) {
        Ok(v) => v,
        Err(reason) => return CheckOutcome::skipped(reason),
    };
    let outcome = judge(spec, &ctx, &values);
    if outcome.status != Status::Fail {
        return outcome;
    }
    confirm_failure(spec, &ctx, param, outcome)
}

/// Recompute a fast-path failure with exact integers and label it.
fn confirm_failure(spec: &StatementSpec, ctx: &PrimeCtx, param: Option<u64>, fast: CheckOutcome) -> CheckOutcome {
    let detail = fast.reason.clone().unwrap_or_default();
    let reason = match oracle::exact_term_values(spec, ctx.p(), param) {
        Ok(values) => {
            let exact = judge(spec, ctx, &values);
            match (exact.status, spec.kind) {
                (Status::Fail, Kind::Conjecture) => {
                    format!("counterexample-candidate confirmed by exact recomputation: {detail}")
                }
                (Status::Fail, Kind::Theorem) => format!("confirmed by exact recomputation: {detail}"),
                _ => format!("fast/exact mismatch: fast path failed ({detail}) but exact recomputation passes"),
            }
        }
        Err(e) => format!("{detail}; exact recomputation unavailable: {e}"),
    };
    CheckOutcome {
        reason: Some(reason),
        ..fast
    }
}

/// Check one instance, building the tables for `p`.
pub fn check_at(spec: &StatementSpec, p: u64, param: Option<u64>) -> Result<CheckOutcome> {
    let ctx = PrimeCtx::new(p, spec.modulus_power())?;
    Ok(check_statement(spec, &PrimeData::new(&ctx), param))
}

/// The case-table value for `p` modulo `p^e`, with the representation used.
/// `None` when the statement has no case table row for `p`.
pub fn quadform_expected(spec: &StatementSpec, p: u64, e: u32) -> Result<Option<(u64, Option<QuadFormWitness>)>> {
    let ctx = PrimeCtx::new(p, e)?;
    for clause in &spec.clauses {
        if !clause.applies(p) {
            continue;
        }
        if let Target::Table(table) = &clause.target {
            if let Some(found) = table.expected(&ctx)? {
                return Ok(Some(found));
            }
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// sweeps

/// How parameter values are chosen at each prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParamStrategy {
    /// Every residue `0..p`.
    All,
    /// `count` distinct residues drawn from a generator seeded by `(seed, p)`.
    Random { count: u64, seed: u64 },
    /// The given values reduced modulo `p`, duplicates removed.
    Fixed(Vec<u64>),
    /// `All` for `p <= 500`, 32 random values above.
    Auto { seed: u64 },
}

pub const AUTO_ALL_LIMIT: u64 = 500;
pub const AUTO_RANDOM_COUNT: u64 = 32;

impl ParamStrategy {
    pub fn seed(&self) -> u64 {
        match self {
            ParamStrategy::Random { seed, .. } | ParamStrategy::Auto { seed } => *seed,
            _ => 0,
        }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        match self {
            ParamStrategy::Random { count, .. } => ParamStrategy::Random { count, seed },
            ParamStrategy::Auto { .. } => ParamStrategy::Auto { seed },
            other => other,
        }
    }

    fn resolved(&self, p: u64) -> ParamStrategy {
        match self {
            ParamStrategy::Auto { seed } if p > AUTO_ALL_LIMIT => ParamStrategy::Random {
                count: AUTO_RANDOM_COUNT,
                seed: *seed,
            },
            ParamStrategy::Auto { .. } => ParamStrategy::All,
            other => other.clone(),
        }
    }

    /// Sorted parameter values at `p`.
    pub fn values(&self, p: u64) -> Vec<u64> {
        match self.resolved(p) {
            ParamStrategy::All => (0..p).collect(),
            ParamStrategy::Random { count, seed } => {
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ p.wrapping_mul(0x9e37_79b9_7f4a_7c15));
                let amount = count.min(p) as usize;
                let mut v: Vec<u64> = rand::seq::index::sample(&mut rng, p as usize, amount)
                    .into_iter()
                    .map(|i| i as u64)
                    .collect();
                v.sort_unstable();
                v
            }
            ParamStrategy::Fixed(values) => {
                let mut v: Vec<u64> = values.iter().map(|x| x % p).collect();
                v.sort_unstable();
                v.dedup();
                v
            }
            ParamStrategy::Auto { .. } => unreachable!(),
        }
    }

    fn count(&self, p: u64) -> u64 {
        match self.resolved(p) {
            ParamStrategy::All => p,
            ParamStrategy::Random { count, .. } => count.min(p),
            ParamStrategy::Fixed(values) => values.len() as u64,
            ParamStrategy::Auto { .. } => unreachable!(),
        }
    }
}

impl fmt::Display for ParamStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamStrategy::All => f.write_str("all"),
            ParamStrategy::Random { count, .. } => write!(f, "random:{count}"),
            ParamStrategy::Fixed(values) => {
                let vs: Vec<String> = values.iter().map(u64::to_string).collect();
                write!(f, "fixed:{}", vs.join(","))
            }
            ParamStrategy::Auto { .. } => f.write_str("auto"),
        }
    }
}

impl FromStr for ParamStrategy {
    type Err = String;

    /// `all`, `auto`, `random:N` or `fixed:v1,v2,...`; seeds are set separately.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        match s {
            "all" => return Ok(ParamStrategy::All),
            "auto" => return Ok(ParamStrategy::Auto { seed: 0 }),
            _ => {}
        }
        if let Some(n) = s.strip_prefix("random:") {
            let count = n.parse().map_err(|_| format!("bad count in {s:?}"))?;
            return Ok(ParamStrategy::Random { count, seed: 0 });
        }
        if let Some(list) = s.strip_prefix("fixed:") {
            let values = list
                .split(',')
                .map(|v| v.trim().parse::<u64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| format!("bad value list in {s:?}"))?;
            if values.is_empty() {
                return Err("fixed strategy needs at least one value".into());
            }
            return Ok(ParamStrategy::Fixed(values));
        }
        Err(format!("unknown parameter strategy {s:?} (expected all, auto, random:N or fixed:v1,v2,...)"))
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SweepConfig {
    /// Worker threads; `None` uses the available parallelism.
    pub jobs: Option<usize>,
    /// Largest number of instances a sweep may evaluate.
    pub budget: u64,
}

pub const DEFAULT_BUDGET: u64 = 50_000_000;

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            jobs: None,
            budget: DEFAULT_BUDGET,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub x: u64,
    pub y: u64,
    pub form: [u64; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceResult {
    pub p: u64,
    pub params: Vec<u64>,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
}

impl InstanceResult {
    fn new(p: u64, param: Option<u64>, outcome: CheckOutcome) -> Self {
        Self {
            p,
            params: param.into_iter().collect(),
            status: outcome.status,
            reason: outcome.reason,
            lhs: outcome.lhs.map(|v| v.to_string()),
            rhs: outcome.rhs.map(|v| v.to_string()),
            witness: outcome.witness.map(|w| WitnessJson {
                x: w.x,
                y: w.y,
                form: [w.a, w.b],
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub instances: u64,
    pub pass: u64,
    pub fail: u64,
    pub skipped: u64,
    pub primes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub statement: String,
    pub kind: Kind,
    pub modulus_power: u32,
    pub range: [u64; 2],
    pub strategy: String,
    pub seed: u64,
    pub results: Vec<InstanceResult>,
    pub totals: Totals,
    pub duration_ms: u64,
    pub version: String,
}

impl Report {
    pub fn failures(&self) -> impl Iterator<Item = &InstanceResult> {
        self.results.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn has_failures(&self) -> bool {
        self.totals.fail > 0
    }

    /// A copy with timing and version cleared, for reproducibility checks.
    pub fn without_timing(&self) -> Report {
        Report {
            duration_ms: 0,
            version: String::new(),
            ..self.clone()
        }
    }
}

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Instance count a sweep would evaluate.
pub fn estimate_instances(spec: &StatementSpec, primes: &[u64], strategy: &ParamStrategy) -> u64 {
    match spec.param {
        None => primes.len() as u64,
        Some(_) => primes.iter().map(|&p| strategy.count(p)).sum(),
    }
}

fn sweep_prime(spec: &StatementSpec, p: u64, strategy: &ParamStrategy) -> Vec<InstanceResult> {
    let params: Vec<Option<u64>> = match spec.param {
        None => vec![None],
        Some(_) => strategy.values(p).into_iter().map(Some).collect(),
    };
    if let Some(reason) = spec.prime_gate(p) {
        return params
            .into_iter()
            .map(|param| InstanceResult::new(p, param, CheckOutcome::skipped(reason.clone())))
            .collect();
    }
    let ctx = PrimeCtx::new(p, spec.modulus_power()).expect("sieved prime in range");
    let data = PrimeData::new(&ctx);
    params
        .into_iter()
        .map(|param| InstanceResult::new(p, param, check_statement(spec, &data, param)))
        .collect()
}

/// Check `spec` at every prime in `[lo, hi]` (primes below 5 are ignored).
pub fn sweep(spec: &StatementSpec, lo: u64, hi: u64, strategy: &ParamStrategy, config: &SweepConfig) -> Result<Report> {
    if lo > hi || hi >= PRIME_LIMIT {
        return Err(Error::InvalidRange { lo, hi });
    }
    let start = Instant::now();
    let primes = primes_between(lo.max(5), hi);
    let estimated = estimate_instances(spec, &primes, strategy);
    if estimated > config.budget {
        return Err(Error::RangeTooLarge {
            estimated,
            budget: config.budget,
        });
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = config.jobs {
        builder = builder.num_threads(jobs.max(1));
    }
    let pool = builder.build().expect("thread pool");
    let mut results: Vec<InstanceResult> = pool.install(|| {
        primes
            .par_iter()
            .flat_map_iter(|&p| sweep_prime(spec, p, strategy))
            .collect()
    });
    results.sort_by(|a, b| (a.p, &a.params).cmp(&(b.p, &b.params)));

    let mut totals = Totals {
        primes: primes.len() as u64,
        ..Totals::default()
    };
    for r in &results {
        totals.instances += 1;
        match r.status {
            Status::Pass => totals.pass += 1,
            Status::Fail => totals.fail += 1,
            Status::Skipped => totals.skipped += 1,
        }
    }
    Ok(Report {
        statement: spec.id.to_string(),
        kind: spec.kind,
        modulus_power: spec.modulus_power(),
        range: [lo, hi],
        strategy: strategy.to_string(),
        seed: strategy.seed(),
        results,
        totals,
        duration_ms: start.elapsed().as_millis() as u64,
        version: VERSION.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t32_at_19() {
        let spec = statement("T3.2").unwrap();
        let out = check_at(spec, 19, None).unwrap();
        assert_eq!(out.status, Status::Pass);
        assert_eq!(out.lhs, Some(16));
        let w = out.witness.unwrap();
        assert_eq!((w.x, w.y, w.a, w.b), (2, 1, 1, 15));
    }

    #[test]
    fn t32_at_7_skipped() {
        let out = check_at(statement("T3.2").unwrap(), 7, None).unwrap();
        assert_eq!(out.status, Status::Skipped);
        assert!(out.reason.unwrap().contains("mod 5"));
    }

    #[test]
    fn t21_at_7_m3() {
        let out = check_at(statement("T2.1").unwrap(), 7, Some(3)).unwrap();
        assert_eq!(out.status, Status::Pass);
    }

    #[test]
    fn t34_at_5_is_zero() {
        let out = check_at(statement("T3.4").unwrap(), 5, None).unwrap();
        assert_eq!(out.status, Status::Pass);
        assert_eq!(out.rhs, Some(0));
        assert_eq!(out.lhs, Some(0));
    }

    #[test]
    fn quadform_values() {
        let (v, w) = quadform_expected(statement("T3.2").unwrap(), 19, 1).unwrap().unwrap();
        assert_eq!(v, 16);
        assert_eq!(w.unwrap().x, 2);
        let (v, w) = quadform_expected(statement("T3.4").unwrap(), 5, 1).unwrap().unwrap();
        assert_eq!((v, w), (0, None));
        let (v, w) = quadform_expected(statement("CJ4.3").unwrap(), 17, 2).unwrap().unwrap();
        assert_eq!(v, 273);
        let w = w.unwrap();
        assert_eq!((w.x, w.y, w.target), (5, 1, 34));
    }

    #[test]
    fn t21_sweep_at_5() {
        let report = sweep(
            statement("T2.1").unwrap(),
            5,
            5,
            &ParamStrategy::All,
            &SweepConfig::default(),
        )
        .unwrap();
        assert_eq!(report.totals.pass, 3);
        assert_eq!(report.totals.skipped, 2);
        let skipped: Vec<u64> = report
            .results
            .iter()
            .filter(|r| r.status == Status::Skipped)
            .map(|r| r.params[0])
            .collect();
        assert_eq!(skipped, vec![0, 1]);
    }

    #[test]
    fn synthetic_failure_is_confirmed() {
        // A deliberately wrong chain: sum A_n against sum A_n / 8^n.
        let mut spec = statement("CJ3.3").unwrap().clone();
        spec.classes = None;
        spec.clauses[0].chain[1] = kernel::SumTerm::new(
            kernel::Kernel::Seq(crate::sequences::SeqId::BigA),
            kernel::Bound::Full,
            kernel::Arg::Recip(1),
        );
        let out = check_at(&spec, 13, None).unwrap();
        assert_eq!(out.status, Status::Fail);
        assert!(out.lhs.is_some() && out.rhs.is_some());
        assert!(out.reason.unwrap().starts_with("counterexample-candidate confirmed"));
    }

    #[test]
    fn strategies() {
        let r = ParamStrategy::Random { count: 5, seed: 9 };
        let v = r.values(101);
        assert_eq!(v.len(), 5);
        assert_eq!(v, r.values(101));
        assert!(v.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(r.values(3).len(), 3);
        assert_eq!(ParamStrategy::Fixed(vec![3, 10, 17]).values(7), vec![3]);
        assert_eq!(ParamStrategy::Auto { seed: 1 }.values(11).len(), 11);
        assert_eq!(ParamStrategy::Auto { seed: 1 }.values(503).len(), 32);
        assert_eq!("random:4".parse::<ParamStrategy>().unwrap(), ParamStrategy::Random { count: 4, seed: 0 });
        assert_eq!("fixed:1,2".parse::<ParamStrategy>().unwrap(), ParamStrategy::Fixed(vec![1, 2]));
        assert!("sometimes".parse::<ParamStrategy>().is_err());
    }

    #[test]
    fn budget_and_range_errors() {
        let spec = statement("T2.1").unwrap();
        let cfg = SweepConfig { jobs: Some(1), budget: 10 };
        assert!(matches!(
            sweep(spec, 5, 100, &ParamStrategy::All, &cfg),
            Err(Error::RangeTooLarge { .. })
        ));
        assert!(matches!(
            sweep(spec, 100, 5, &ParamStrategy::All, &cfg),
            Err(Error::InvalidRange { .. })
        ));
    }
}
