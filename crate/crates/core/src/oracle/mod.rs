//! Exhaustive finite-field verification of the structured computations.
//!
//! Ideals, subschemes and planes are produced by [`raw`] enumeration and
//! compared against the socle/span/reduction code. Rational inputs are only
//! accepted by [`check_reduce`], which samples planes.

pub mod literal;
pub mod raw;

use std::collections::{BTreeMap, BTreeSet};
use std::ops::RangeInclusive;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::artin::{ArtinError, LocalAlgebra, ProductIdeal, SemilocalAlgebra};
use crate::exactlin::{enum_lines, enum_subspaces, Field, LinError, Mat, Subspace};
use crate::json::{algebra_to_json, scheme_from_json, scheme_to_json, subspace_from_json, subspace_to_json, FormatError};
use crate::reduce::{prune_minimal, reduce_to_socdim, Reduction};
use crate::scheme::{validate_scheme, EmbeddedFiniteScheme, SchemeError};

use raw::{RawAlgebra, RawSpace};

pub const DEFAULT_BUDGET: u64 = 1_000_000;
pub const DEFAULT_SEED: u64 = 0x5eed_50c1e;
pub const DEFAULT_DIM_BOUND: usize = 6;
pub const EXHAUSTIVE_PRIMES: [u32; 3] = [2, 3, 5];
/// Rational plane samples use integer coefficients in `[-SAMPLE_RANGE, SAMPLE_RANGE]`.
pub const SAMPLE_RANGE: i64 = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("exhaustive checks need a prime field")]
    RationalField,
    #[error("exhaustive checks support p in {{2, 3, 5}}, got {0}")]
    UnsupportedPrime(u32),
    #[error("algebra of dimension {dim} exceeds the enumeration bound {bound}")]
    DimensionBound { dim: usize, bound: usize },
    #[error("enumeration budget of {budget} objects exceeded")]
    Budget { budget: u64 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Lin(#[from] LinError),
    #[error(transparent)]
    Artin(#[from] ArtinError),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error("malformed counterexample: {0}")]
    Format(String),
}

impl From<FormatError> for OracleError {
    fn from(e: FormatError) -> Self {
        OracleError::Format(e.to_string())
    }
}

/// Counts enumerated objects against a hard cap.
#[derive(Clone, Debug)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn charge(&mut self, n: u64) -> Result<(), OracleError> {
        self.used = self.used.saturating_add(n);
        if self.used > self.limit {
            return Err(OracleError::Budget { budget: self.limit });
        }
        Ok(())
    }

    pub fn used(&self) -> u64 {
        self.used
    }
}

#[derive(Clone, Debug)]
pub struct OracleOptions {
    pub budget: u64,
    pub seed: u64,
    pub jobs: usize,
    /// Planes sampled per scheme over the rationals.
    pub samples: usize,
    pub dim_bound: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            budget: DEFAULT_BUDGET,
            seed: DEFAULT_SEED,
            jobs: 1,
            samples: 100,
            dim_bound: DEFAULT_DIM_BOUND,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    /// Corank-one ideals of a local algebra are the socle lines.
    Subschemes,
    /// Codegree-one subschemes of a product split over components.
    Decomposition,
    /// Planes in the span are covered by codegree-one subschemes.
    Union,
    /// Planes in spans of subschemes are the planes in the span.
    Cactus,
    /// Reduction to socle dimension at most `k`.
    Theorem,
    /// Greedy pruning reaches a minimal witness.
    Minimal,
}

impl Claim {
    pub fn tag(&self) -> &'static str {
        match self {
            Claim::Subschemes => "subschemes",
            Claim::Decomposition => "decomposition",
            Claim::Union => "union",
            Claim::Cactus => "cactus",
            Claim::Theorem => "theorem",
            Claim::Minimal => "minimal",
        }
    }

    pub fn parse(s: &str) -> Option<Claim> {
        [
            Claim::Subschemes,
            Claim::Decomposition,
            Claim::Union,
            Claim::Cactus,
            Claim::Theorem,
            Claim::Minimal,
        ]
        .into_iter()
        .find(|c| c.tag() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub claim: Claim,
    pub instance: String,
    pub status: Status,
    pub counts: BTreeMap<String, u64>,
    pub counterexample: Option<Value>,
    pub seed: Option<u64>,
    /// Wall time; not serialized so reports stay byte-stable.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    fn new(claim: Claim, instance: &str, start: Instant) -> Self {
        VerificationReport {
            claim,
            instance: instance.to_string(),
            status: Status::Pass,
            counts: BTreeMap::new(),
            counterexample: None,
            seed: None,
            elapsed: start.elapsed(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    fn count(mut self, key: &str, n: usize) -> Self {
        self.counts.insert(key.to_string(), n as u64);
        self
    }

    fn fail(mut self, cx: Value) -> Self {
        self.status = Status::Fail;
        self.counterexample = Some(cx);
        self
    }

    fn finish(mut self, start: Instant) -> Self {
        self.elapsed = start.elapsed();
        self
    }
}

fn exhaustive_prime(field: Field) -> Result<u32, OracleError> {
    let p = field.order().ok_or(OracleError::RationalField)?;
    if !EXHAUSTIVE_PRIMES.contains(&p) {
        return Err(OracleError::UnsupportedPrime(p));
    }
    Ok(p)
}

fn pool(jobs: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool")
}

/// Applies `f` to every item; output order matches input order.
fn ordered_map<T: Sync, R: Send>(jobs: usize, items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    if jobs <= 1 {
        return items.iter().map(f).collect();
    }
    pool(jobs).install(|| items.par_iter().map(f).collect())
}

/// All `k`-planes inside `u`, by raw enumeration in `u`'s coordinates.
pub fn raw_planes(u: &Subspace, k: usize, budget: &mut Budget) -> Result<Vec<Subspace>, OracleError> {
    let p = exhaustive_prime(u.field())?;
    if k > u.dim() {
        return Ok(Vec::new());
    }
    let field = u.field();
    Ok(raw::subspaces(p, u.dim(), k, budget)?
        .iter()
        .map(|c| {
            let rows = c.rows().iter().map(|r| {
                let coeffs: Vec<_> = r.iter().map(|&x| field.int(x as i64)).collect();
                u.combine(&coeffs)
            });
            Subspace::span(field, u.ambient_dim(), rows).expect("row length")
        })
        .collect())
}

fn structured_planes(u: &Subspace, k: usize, budget: &mut Budget) -> Result<Vec<Subspace>, OracleError> {
    if k > u.dim() {
        return Ok(Vec::new());
    }
    let it = enum_subspaces(u, k)?;
    budget.charge(u64::try_from(it.total()).unwrap_or(u64::MAX))?;
    Ok(it.collect())
}

/// Corank-one ideals of `a` (1-dimensional ideals) by filtering every line of `a`.
pub fn corank1_ideals_bruteforce(a: &LocalAlgebra, opts: &OracleOptions) -> Result<BTreeSet<Subspace>, OracleError> {
    exhaustive_prime(a.field())?;
    if a.dim() > opts.dim_bound {
        return Err(OracleError::DimensionBound {
            dim: a.dim(),
            bound: opts.dim_bound,
        });
    }
    let s = SemilocalAlgebra::new(vec![a.clone()])?;
    let raw = RawAlgebra::new(&s)?;
    let mut budget = Budget::new(opts.budget);
    Ok(raw
        .line_ideals(&mut budget)?
        .iter()
        .map(|u| u.to_subspace(a.field()))
        .collect())
}

/// Corank-one ideals of `a` are exactly the lines of its socle, and there
/// are `(p^l - 1)/(p - 1)` of them.
pub fn check_socle_lines(a: &LocalAlgebra, opts: &OracleOptions) -> Result<VerificationReport, OracleError> {
    let start = Instant::now();
    let brute = corank1_ideals_bruteforce(a, opts)?;
    let p = a.field().order().expect("prime") as u64;
    let socle = a.socle();
    let lines: BTreeSet<Subspace> = enum_lines(&socle)?.collect();
    let l = socle.dim() as u32;
    let expected = (p.pow(l) - 1) / (p - 1);
    let report = VerificationReport::new(Claim::Subschemes, &format!("local algebra of dim {}", a.dim()), start)
        .count("ideals", brute.len())
        .count("socle_lines", lines.len())
        .count("expected", expected as usize)
        .count("socle_dim", socle.dim());
    let report = if brute != lines || brute.len() as u64 != expected {
        let extra: Vec<Value> = brute.symmetric_difference(&lines).map(subspace_to_json).collect();
        report.fail(json!({
            "algebra": algebra_to_json(a),
            "field": crate::json::field_to_json(a.field()),
            "mismatch": extra,
        }))
    } else {
        report
    };
    Ok(report.finish(start))
}

fn require_bounded(r: &EmbeddedFiniteScheme, opts: &OracleOptions) -> Result<u32, OracleError> {
    let p = exhaustive_prime(r.field())?;
    if r.degree() > opts.dim_bound {
        return Err(OracleError::DimensionBound {
            dim: r.degree(),
            bound: opts.dim_bound,
        });
    }
    Ok(p)
}

fn scheme_payload(r: &EmbeddedFiniteScheme, k: usize) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("scheme".into(), scheme_to_json(r));
    m.insert("k".into(), json!(k));
    m
}

/// Codegree-one subschemes of a product: raw 1-dimensional ideals of the
/// total algebra against the union of per-component socle lines.
pub fn check_decomposition(r: &EmbeddedFiniteScheme, opts: &OracleOptions) -> Result<VerificationReport, OracleError> {
    let start = Instant::now();
    require_bounded(r, opts)?;
    let field = r.field();
    let alg = r.algebra();
    let mut budget = Budget::new(opts.budget);
    let raw = RawAlgebra::new(alg)?;
    let brute: BTreeSet<Subspace> = raw
        .line_ideals(&mut budget)?
        .iter()
        .map(|u| u.to_subspace(field))
        .collect();
    let mut expected = BTreeSet::new();
    for (i, a) in alg.components().iter().enumerate() {
        for line in enum_lines(&a.socle())? {
            let total = ProductIdeal::in_component(alg, i, line)?.to_total();
            if !expected.insert(total) {
                return Err(OracleError::Precondition("socle families overlap".into()));
            }
        }
    }
    let mut bad_degree = None;
    for total in &brute {
        let ideal = ProductIdeal::from_total(alg, total);
        let deg = match ideal {
            Some(i) => r.subscheme(&i)?.degree(),
            None => 0,
        };
        if deg + 1 != r.degree() {
            bad_degree = Some(total.clone());
            break;
        }
    }
    let report = VerificationReport::new(Claim::Decomposition, &format!("degree {} scheme", r.degree()), start)
        .count("ideals", brute.len())
        .count("expected", expected.len())
        .count("components", r.num_components());
    let report = if brute != expected || bad_degree.is_some() {
        let mut cx = scheme_payload(r, 0);
        let diff: Vec<Value> = brute.symmetric_difference(&expected).map(subspace_to_json).collect();
        cx.insert("mismatch".into(), Value::Array(diff));
        if let Some(b) = bad_degree {
            cx.insert("wrong_degree".into(), subspace_to_json(&b));
        }
        report.fail(Value::Object(cx))
    } else {
        report
    };
    Ok(report.finish(start))
}

fn first_difference(a: &BTreeSet<Subspace>, b: &BTreeSet<Subspace>) -> Option<Subspace> {
    a.symmetric_difference(b).next().cloned()
}

/// `Gr(k, ⟨R⟩)` equals the union of `Gr(k, ⟨R'⟩)` over all codegree-one
/// subschemes `R'` (a), and over those containing `Q`, the subscheme cut by
/// the socle of the first component with socle dimension above `k` (b).
pub fn check_union(r: &EmbeddedFiniteScheme, k: usize, opts: &OracleOptions) -> Result<VerificationReport, OracleError> {
    let start = Instant::now();
    exhaustive_prime(r.field())?;
    let comp = r
        .algebra()
        .components()
        .iter()
        .position(|a| a.socle_dim() > k)
        .ok_or_else(|| OracleError::Precondition(format!("socle dimension {} is not above k = {k}", r.socdim())))?;
    let mut budget = Budget::new(opts.budget);
    let lhs: BTreeSet<Subspace> = raw_planes(&r.span(), k, &mut budget)?.into_iter().collect();

    let mut families = Vec::new();
    for (i, a) in r.algebra().components().iter().enumerate() {
        for s in enum_lines(&a.socle())? {
            families.push((i, s.basis()[0].clone()));
        }
    }
    budget.charge(families.len() as u64)?;
    let spans: Vec<Result<Subspace, SchemeError>> =
        ordered_map(opts.jobs, &families, |(i, s)| Ok(r.codim1_subscheme(*i, s)?.span()));
    let mut rhs_a = BTreeSet::new();
    let mut rhs_b = BTreeSet::new();
    let mut distinct = BTreeSet::new();
    for ((i, _), span) in families.iter().zip(spans) {
        let span = span?;
        if !distinct.insert((*i == comp, span.clone())) {
            continue;
        }
        for plane in structured_planes(&span, k, &mut budget)? {
            if *i == comp {
                rhs_b.insert(plane.clone());
            }
            rhs_a.insert(plane);
        }
    }
    let report = VerificationReport::new(Claim::Union, &format!("degree {} scheme, k = {k}", r.degree()), start)
        .count("lhs", lhs.len())
        .count("rhs_a", rhs_a.len())
        .count("rhs_b", rhs_b.len())
        .count("subschemes", families.len());
    let bad = first_difference(&lhs, &rhs_a).or_else(|| first_difference(&lhs, &rhs_b));
    let report = match bad {
        Some(plane) => {
            let mut cx = scheme_payload(r, k);
            cx.insert("plane".into(), subspace_to_json(&plane));
            cx.insert("in_lhs".into(), json!(lhs.contains(&plane)));
            cx.insert("in_rhs_a".into(), json!(rhs_a.contains(&plane)));
            cx.insert("in_rhs_b".into(), json!(rhs_b.contains(&plane)));
            report.fail(Value::Object(cx))
        }
        None => report,
    };
    Ok(report.finish(start))
}

/// `k`-planes inside spans of subschemes of `R` are exactly the `k`-planes
/// of `⟨R⟩`. Subschemes come from raw ideal enumeration; membership is tested
/// for every raw `k`-plane of the ambient space.
pub fn check_cactus_finite(
    r: &EmbeddedFiniteScheme,
    k: usize,
    opts: &OracleOptions,
) -> Result<VerificationReport, OracleError> {
    Ok(check_cactus_range(r, k..=k, opts)?.remove(0))
}

/// [`check_cactus_finite`] for every `k` in `ks`, sharing the ideal and
/// plane enumerations.
pub fn check_cactus_range(
    r: &EmbeddedFiniteScheme,
    ks: RangeInclusive<usize>,
    opts: &OracleOptions,
) -> Result<Vec<VerificationReport>, OracleError> {
    let start = Instant::now();
    require_bounded(r, opts)?;
    let field = r.field();
    let p = exhaustive_prime(field)?;
    let mut budget = Budget::new(opts.budget);
    let raw = RawAlgebra::new(r.algebra())?;
    let ideals = raw.ideals(&mut budget)?;
    let totals: Vec<Subspace> = ideals.iter().map(|u| u.to_subspace(field)).collect();
    let spans: Vec<Result<Option<Subspace>, OracleError>> = ordered_map(opts.jobs, &totals, |t| {
        let ideal = ProductIdeal::from_total(r.algebra(), t)
            .ok_or_else(|| OracleError::Precondition("ideal is not a product".into()))?;
        if ideal.dim() == r.degree() {
            return Ok(None);
        }
        Ok(Some(r.subscheme(&ideal)?.span()))
    });
    let mut distinct = BTreeSet::new();
    for s in spans {
        if let Some(s) = s? {
            distinct.insert(s);
        }
    }
    let raw_spans: Vec<RawSpace> = distinct.iter().filter_map(RawSpace::from_subspace).collect();
    let span = r.span();
    let all_lines = raw::lines(p, r.ambient_dim());
    let mut level = vec![RawSpace::zero(p, r.ambient_dim())];
    let mut out = Vec::new();
    for k in 0..=*ks.end() {
        if k > 0 {
            level = raw::grow(&level, &all_lines);
            budget.charge(level.len() as u64)?;
        }
        if !ks.contains(&k) {
            continue;
        }
        let members: Vec<bool> = ordered_map(opts.jobs, &level, |e| raw_spans.iter().any(|s| s.contains_space(e)));
        let lhs: BTreeSet<&RawSpace> = level.iter().zip(&members).filter(|(_, &m)| m).map(|(e, _)| e).collect();
        let rhs: BTreeSet<RawSpace> = structured_planes(&span, k, &mut budget)?
            .iter()
            .filter_map(RawSpace::from_subspace)
            .collect();
        let rhs: BTreeSet<&RawSpace> = rhs.iter().collect();
        let report = VerificationReport::new(Claim::Cactus, &format!("degree {} scheme, k = {k}", r.degree()), start)
            .count("ideals", ideals.len())
            .count("distinct_spans", distinct.len())
            .count("ambient_planes", level.len())
            .count("lhs", lhs.len())
            .count("rhs", rhs.len());
        let report = match lhs.symmetric_difference(&rhs).next() {
            Some(plane) => {
                let mut cx = scheme_payload(r, k);
                cx.insert("plane".into(), subspace_to_json(&plane.to_subspace(field)));
                report.fail(Value::Object(cx))
            }
            None => report,
        };
        out.push(report.finish(start));
    }
    Ok(out)
}

/// Postconditions of a reduction, shared by the theorem and minimality checks.
fn reduction_violation(r: &EmbeddedFiniteScheme, e: &Subspace, red: &Reduction) -> Option<String> {
    let steps = &red.trace.steps;
    if steps.len() >= r.degree() {
        return Some(format!("{} steps from degree {}", steps.len(), r.degree()));
    }
    let mut degree = r.degree();
    for s in steps {
        if s.degree_before != degree || s.degree_after + 1 != degree {
            return Some("a step did not drop the degree by exactly one".into());
        }
        degree = s.degree_after;
    }
    if red.scheme.degree() != degree {
        return Some("final degree disagrees with the trace".into());
    }
    if let Err(v) = validate_scheme(&red.scheme) {
        return Some(format!("final scheme is invalid: {v}"));
    }
    if !red.scheme.span().contains(e) {
        return Some("plane is not in the span of the final scheme".into());
    }
    match r.subscheme(&red.ideal) {
        Ok(s) if s == red.scheme => None,
        Ok(_) => Some("composed ideal cuts a different scheme".into()),
        Err(err) => Some(format!("composed ideal is unusable: {err}")),
    }
}

/// Checks every postcondition of `reduce_to_socdim(r, e)`.
pub fn reduce_instance_violation(r: &EmbeddedFiniteScheme, e: &Subspace) -> Option<String> {
    let red = match reduce_to_socdim(r, e) {
        Ok(red) => red,
        Err(err) => return Some(format!("reduction failed: {err}")),
    };
    if red.scheme.socdim() > e.dim() {
        return Some(format!("final socle dimension {} above {}", red.scheme.socdim(), e.dim()));
    }
    reduction_violation(r, e, &red)
}

/// Checks `prune_minimal(r, e)`: postconditions, socle dimension, and that no
/// raw corank-one ideal of the output keeps `e` in the span.
pub fn prune_instance_violation(r: &EmbeddedFiniteScheme, e: &Subspace) -> Option<String> {
    let red = match prune_minimal(r, e) {
        Ok(red) => red,
        Err(err) => return Some(format!("pruning failed: {err}")),
    };
    if let Some(v) = reduction_violation(r, e, &red) {
        return Some(v);
    }
    if red.scheme.socdim() > e.dim() {
        return Some(format!("minimal witness has socle dimension {} above {}", red.scheme.socdim(), e.dim()));
    }
    let out = &red.scheme;
    let raw = match RawAlgebra::new(out.algebra()) {
        Ok(raw) => raw,
        Err(err) => return Some(err.to_string()),
    };
    let mut budget = Budget::new(u64::MAX);
    let lines = raw.line_ideals(&mut budget).expect("unbounded budget");
    for l in lines {
        let total = l.to_subspace(out.field());
        let Some(ideal) = ProductIdeal::from_total(out.algebra(), &total) else {
            return Some("raw ideal is not a product ideal".into());
        };
        if ideal.dim() == out.degree() {
            if e.is_zero() {
                return Some("the empty scheme already contains the plane".into());
            }
            continue;
        }
        match out.subscheme(&ideal) {
            Ok(sub) if sub.span().contains(e) => {
                return Some("output admits a plane-preserving corank-one ideal".into())
            }
            Ok(_) => {}
            Err(err) => return Some(err.to_string()),
        }
    }
    None
}

fn instance_payload(r: &EmbeddedFiniteScheme, e: &Subspace, violation: &str) -> Value {
    let mut cx = scheme_payload(r, e.dim());
    cx.insert("plane".into(), subspace_to_json(e));
    cx.insert("violation".into(), json!(violation));
    Value::Object(cx)
}

fn planes_for(
    r: &EmbeddedFiniteScheme,
    k: usize,
    opts: &OracleOptions,
    budget: &mut Budget,
) -> Result<(Vec<Subspace>, Option<u64>), OracleError> {
    let span = r.span();
    if k == 0 || k > span.dim() {
        return Err(OracleError::Precondition(format!(
            "k = {k} must lie between 1 and the span dimension {}",
            span.dim()
        )));
    }
    if r.field().is_prime() {
        return Ok((raw_planes(&span, k, budget)?, None));
    }
    Ok((sample_planes(&span, k, opts.samples, opts.seed), Some(opts.seed)))
}

/// `count` random `k`-planes of `u` from integer coefficient matrices in
/// `[-SAMPLE_RANGE, SAMPLE_RANGE]`, rejecting rank-deficient draws.
pub fn sample_planes(u: &Subspace, k: usize, count: usize, seed: u64) -> Vec<Subspace> {
    let field = u.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let coeffs: Vec<Vec<_>> = (0..k)
            .map(|_| {
                (0..u.dim())
                    .map(|_| field.int(rng.gen_range(-SAMPLE_RANGE..=SAMPLE_RANGE)))
                    .collect()
            })
            .collect();
        let m = Mat::from_rows(field, u.dim(), coeffs.clone()).expect("rectangular");
        if m.rank() < k {
            continue;
        }
        let plane = Subspace::span(field, u.ambient_dim(), coeffs.iter().map(|c| u.combine(c))).expect("length");
        out.push(plane);
    }
    out
}

fn instance_check(
    claim: Claim,
    r: &EmbeddedFiniteScheme,
    k: usize,
    opts: &OracleOptions,
    f: fn(&EmbeddedFiniteScheme, &Subspace) -> Option<String>,
) -> Result<VerificationReport, OracleError> {
    let start = Instant::now();
    let mut budget = Budget::new(opts.budget);
    let (planes, seed) = planes_for(r, k, opts, &mut budget)?;
    budget.charge(planes.len() as u64)?;
    let results = ordered_map(opts.jobs, &planes, |e| f(r, e));
    let failures = results.iter().filter(|v| v.is_some()).count();
    let mut report = VerificationReport::new(claim, &format!("degree {} scheme, k = {k}", r.degree()), start)
        .count("planes", planes.len())
        .count("failures", failures);
    report.seed = seed;
    if let Some((e, v)) = planes.iter().zip(&results).find_map(|(e, v)| v.as_ref().map(|v| (e, v))) {
        report = report.fail(instance_payload(r, e, v));
    }
    Ok(report.finish(start))
}

/// Runs `reduce_to_socdim` on every `k`-plane of the span (prime fields) or
/// on `opts.samples` random planes (rationals) and checks its postconditions.
pub fn check_reduce(r: &EmbeddedFiniteScheme, k: usize, opts: &OracleOptions) -> Result<VerificationReport, OracleError> {
    instance_check(Claim::Theorem, r, k, opts, reduce_instance_violation)
}

/// Runs `prune_minimal` on every `k`-plane of the span and checks minimality
/// against raw ideal enumeration.
pub fn check_prune(r: &EmbeddedFiniteScheme, k: usize, opts: &OracleOptions) -> Result<VerificationReport, OracleError> {
    exhaustive_prime(r.field())?;
    instance_check(Claim::Minimal, r, k, opts, prune_instance_violation)
}

/// Dispatches a claim for a scheme. `Subschemes` runs on every component.
pub fn run_claim(
    claim: Claim,
    r: &EmbeddedFiniteScheme,
    k: usize,
    opts: &OracleOptions,
) -> Result<VerificationReport, OracleError> {
    match claim {
        Claim::Subschemes => {
            let start = Instant::now();
            let mut merged = VerificationReport::new(claim, &format!("{} components", r.num_components()), start);
            let mut total = 0;
            for a in r.algebra().components() {
                let rep = check_socle_lines(a, opts)?;
                total += rep.counts["ideals"];
                if !rep.passed() && merged.passed() {
                    merged = merged.fail(rep.counterexample.clone().unwrap_or(Value::Null));
                }
            }
            merged.counts.insert("ideals".into(), total);
            Ok(merged.finish(start))
        }
        Claim::Decomposition => check_decomposition(r, opts),
        Claim::Union => check_union(r, k, opts),
        Claim::Cactus => check_cactus_finite(r, k, opts),
        Claim::Theorem => check_reduce(r, k, opts),
        Claim::Minimal => check_prune(r, k, opts),
    }
}

/// Re-executes a counterexample from a failing report in isolation. Returns
/// `true` if it still exhibits a violation.
pub fn recheck_counterexample(claim: Claim, cx: &Value) -> Result<bool, OracleError> {
    let opts = OracleOptions::default();
    if claim == Claim::Subschemes {
        let field = crate::json::field_from_json(&cx["field"])?;
        let a = crate::json::algebra_from_json(field, &cx["algebra"])?;
        return Ok(!check_socle_lines(&a, &opts)?.passed());
    }
    let r = scheme_from_json(&cx["scheme"], None)?.scheme;
    let k = cx["k"]
        .as_u64()
        .ok_or_else(|| FormatError::Schema("counterexample lacks k".into()))? as usize;
    let plane = || subspace_from_json(r.field(), r.ambient_dim(), &cx["plane"]);
    Ok(match claim {
        Claim::Theorem => reduce_instance_violation(&r, &plane()?).is_some(),
        Claim::Minimal => prune_instance_violation(&r, &plane()?).is_some(),
        other => !run_claim(other, &r, k, &opts)?.passed(),
    })
}
