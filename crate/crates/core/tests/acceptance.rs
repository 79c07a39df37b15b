//! Acceptance suite: one PASS/FAIL line per criterion, run sequentially so
//! wall-clock limits are meaningful. Run with `--nocapture` to see the lines.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use socle::bundled;
use socle::exactlin::{enum_subspaces, gaussian_binomial, Field, Mat, Subspace};
use socle::oracle::{self, raw, Budget, OracleOptions, VerificationReport};
use socle::sample::sample_scheme;
use socle::scheme::EmbeddedFiniteScheme;

const SEED: u64 = 20_240_601;
const RANDOM_INSTANCES: usize = 1000;
const RATIONAL_INSTANCES: usize = 100;

fn f(p: u64) -> Field {
    Field::prime(p).unwrap()
}

type Outcome = Result<String, String>;

fn all_pass(reports: &[VerificationReport]) -> Result<(), String> {
    match reports.iter().find(|r| !r.passed()) {
        Some(r) => Err(format!(
            "{} failed on {}: {}",
            r.claim.tag(),
            r.instance,
            r.counterexample.as_ref().map(|c| c.to_string()).unwrap_or_default()
        )),
        None => Ok(()),
    }
}

fn suite_subschemes() -> Result<Vec<VerificationReport>, String> {
    let opts = OracleOptions::default();
    let mut out = Vec::new();
    for p in [2, 3] {
        for (name, a) in bundled::local_algebras(f(p)) {
            let rep = oracle::check_socle_lines(&a, &opts).map_err(|e| format!("{name}: {e}"))?;
            let l = a.socle_dim() as u32;
            let expected = (p.pow(l) - 1) / (p - 1);
            if rep.counts["ideals"] != expected {
                return Err(format!("{name} over GF({p}): {} ideals, expected {expected}", rep.counts["ideals"]));
            }
            out.push(rep);
        }
    }
    Ok(out)
}

fn criterion_1() -> Outcome {
    let reports = suite_subschemes()?;
    all_pass(&reports)?;
    Ok(format!("{} algebras over GF(2), GF(3)", reports.len()))
}

fn suite_decomposition() -> Result<Vec<VerificationReport>, String> {
    let opts = OracleOptions::default();
    bundled::schemes(f(2))
        .into_iter()
        .filter(|(_, r)| r.num_components() <= 3 && r.degree() <= 6)
        .map(|(name, r)| oracle::check_decomposition(&r, &opts).map_err(|e| format!("{name}: {e}")))
        .collect()
}

fn criterion_2() -> Outcome {
    let reports = suite_decomposition()?;
    all_pass(&reports)?;
    Ok(format!("{} schemes over GF(2)", reports.len()))
}

fn criterion_3() -> Outcome {
    let opts = OracleOptions { jobs: 4, ..OracleOptions::default() };
    let mut runs = 0;
    for p in [2, 3] {
        for (name, r) in bundled::schemes(f(p)) {
            let reports = oracle::check_cactus_range(&r, 1..=r.span().dim(), &opts).map_err(|e| format!("{name}: {e}"))?;
            all_pass(&reports)?;
            if let Some(rep) = reports.iter().find(|rep| rep.counts["lhs"] != rep.counts["rhs"]) {
                return Err(format!("{name}: count mismatch {:?}", rep.counts));
            }
            runs += reports.len();
        }
    }
    Ok(format!("{runs} (scheme, k) pairs"))
}

fn suite_union() -> Result<Vec<VerificationReport>, String> {
    let opts = OracleOptions::default();
    let mut out = Vec::new();
    for p in [2, 3] {
        for (name, r) in bundled::schemes(f(p)) {
            for k in 1..r.socdim().min(r.span().dim() + 1) {
                out.push(oracle::check_union(&r, k, &opts).map_err(|e| format!("{name}, k = {k}: {e}"))?);
            }
        }
    }
    Ok(out)
}

fn criterion_4() -> Outcome {
    let reports = suite_union()?;
    all_pass(&reports)?;
    // the fat point in the plane over GF(2): 7 points, covered by 3 lines through the support
    let fat = bundled::fat_point_p2(f(2));
    let rep = oracle::check_union(&fat, 1, &OracleOptions::default()).map_err(|e| e.to_string())?;
    let c = &rep.counts;
    if (c["lhs"], c["rhs_a"], c["rhs_b"], c["subschemes"]) != (7, 7, 7, 3) {
        return Err(format!("fat point counts {c:?}"));
    }
    let triple = bundled::triple_socle_p3(f(2));
    for (k, planes) in [(1, 15), (2, 35)] {
        let rep = oracle::check_union(&triple, k, &OracleOptions::default()).map_err(|e| e.to_string())?;
        if !rep.passed() || rep.counts["lhs"] != planes {
            return Err(format!("triple socle k = {k}: {:?}", rep.counts));
        }
    }
    Ok(format!("{} (scheme, k, field) triples", reports.len()))
}

fn exhaustive_instances(p: u64) -> Vec<(&'static str, EmbeddedFiniteScheme, usize)> {
    let mut out = Vec::new();
    for (name, r) in bundled::schemes(f(p)) {
        for k in 1..=r.span().dim().min(3) {
            out.push((name, r.clone(), k));
        }
    }
    out
}

fn suite_theorem_exhaustive(jobs: usize) -> Result<Vec<VerificationReport>, String> {
    let opts = OracleOptions { jobs, ..OracleOptions::default() };
    let mut out = Vec::new();
    for p in [2, 3] {
        for (name, r, k) in exhaustive_instances(p) {
            out.push(oracle::check_reduce(&r, k, &opts).map_err(|e| format!("{name}, k = {k}: {e}"))?);
        }
    }
    Ok(out)
}

/// Random rational (scheme, plane) instances with socle dimension above `k`.
fn rational_instances(seed: u64) -> Vec<(EmbeddedFiniteScheme, Subspace)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < RATIONAL_INSTANCES {
        let degree = rng.gen_range(2..=6);
        let ambient = rng.gen_range(3..=5);
        let Ok(r) = sample_scheme(Field::Rational, degree, ambient, rng.gen()) else {
            continue;
        };
        let span = r.span();
        let top = span.dim().min(3).min(r.socdim().saturating_sub(1));
        if top == 0 {
            continue;
        }
        let k = rng.gen_range(1..=top);
        let e = oracle::sample_planes(&span, k, 1, rng.gen()).remove(0);
        out.push((r, e));
    }
    out
}

fn suite_theorem_rational(seed: u64) -> Vec<(usize, Option<String>)> {
    rational_instances(seed)
        .iter()
        .map(|(r, e)| {
            let steps = socle::reduce::reduce_to_socdim(r, e).map(|red| red.trace.steps.len()).unwrap_or(0);
            (steps, oracle::reduce_instance_violation(r, e))
        })
        .collect()
}

fn criterion_5() -> Outcome {
    let reports = suite_theorem_exhaustive(4)?;
    all_pass(&reports)?;
    let planes: u64 = reports.iter().map(|r| r.counts["planes"]).sum();
    let rational = suite_theorem_rational(SEED);
    if let Some((i, (_, Some(v)))) = rational.iter().enumerate().find(|(_, (_, v))| v.is_some()) {
        return Err(format!("rational instance {i}: {v}"));
    }
    let nontrivial = rational.iter().filter(|(s, _)| *s > 0).count();
    if nontrivial != rational.len() {
        return Err("a rational instance needed no shrink".into());
    }
    Ok(format!(
        "(a) {planes} planes in {} exhaustive runs; (b) {} rational instances, {nontrivial} with shrinks",
        reports.len(),
        rational.len()
    ))
}

fn suite_prune(jobs: usize) -> Result<Vec<VerificationReport>, String> {
    let opts = OracleOptions { jobs, ..OracleOptions::default() };
    exhaustive_instances(2)
        .into_iter()
        .map(|(name, r, k)| oracle::check_prune(&r, k, &opts).map_err(|e| format!("{name}, k = {k}: {e}")))
        .collect()
}

fn criterion_6() -> Outcome {
    let reports = suite_prune(4)?;
    all_pass(&reports)?;
    let planes: u64 = reports.iter().map(|r| r.counts["planes"]).sum();
    Ok(format!("{planes} planes in {} runs over GF(2)", reports.len()))
}

fn random_field(rng: &mut ChaCha8Rng) -> Field {
    match rng.gen_range(0..4) {
        0 => Field::Rational,
        1 => f(2),
        2 => f(3),
        _ => f(5),
    }
}

fn random_mat(field: Field, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Mat {
    // sparse-ish entries so that rank deficiency actually occurs
    let data = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| if rng.gen_bool(0.4) { field.zero() } else { field.int(rng.gen_range(-4..=4)) })
                .collect()
        })
        .collect();
    Mat::from_rows(field, cols, data).unwrap()
}

fn random_subspace(field: Field, n: usize, rng: &mut ChaCha8Rng) -> Subspace {
    let k = rng.gen_range(0..=n);
    random_mat(field, k, n, rng).row_space()
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for i in 0..RANDOM_INSTANCES {
        let field = random_field(&mut rng);
        let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let m = random_mat(field, r, c, &mut rng);
        if m.rank() + m.kernel().dim() != c || m.image().dim() != m.rank() {
            return Err(format!("rank-nullity, instance {i}"));
        }
    }
    for i in 0..RANDOM_INSTANCES {
        let field = random_field(&mut rng);
        let n = rng.gen_range(1..=6);
        let u = random_subspace(field, n, &mut rng);
        let ann = u.annihilator();
        if ann.annihilator() != u || ann.dim() + u.dim() != n {
            return Err(format!("double annihilator, instance {i}"));
        }
    }
    for i in 0..RANDOM_INSTANCES {
        let field = random_field(&mut rng);
        let n = rng.gen_range(1..=6);
        let (a, b, c) = (
            random_subspace(field, n, &mut rng),
            random_subspace(field, n, &mut rng),
            random_subspace(field, n, &mut rng),
        );
        // A ⊆ C ⇒ A + (B ∩ C) = (A + B) ∩ C
        let a = a.intersect(&c).unwrap();
        let lhs = a.sum(&b.intersect(&c).unwrap()).unwrap();
        let rhs = a.sum(&b).unwrap().intersect(&c).unwrap();
        if lhs != rhs {
            return Err(format!("modular law, instance {i}"));
        }
    }
    for i in 0..RANDOM_INSTANCES {
        let p = [2u64, 3, 5][rng.gen_range(0..3)];
        let n = rng.gen_range(0..=if p == 2 { 5 } else { 3 });
        let k = rng.gen_range(0..=n);
        let full = Subspace::full(f(p), n);
        let structured = enum_subspaces(&full, k).unwrap().count() as u128;
        let brute = raw::subspaces(p as u32, n, k, &mut Budget::new(u64::MAX)).unwrap().len() as u128;
        let formula = gaussian_binomial(n, k, p);
        if structured != formula || brute != formula {
            return Err(format!("Gaussian binomial ({n} choose {k})_{p}, instance {i}"));
        }
    }
    Ok(format!("{RANDOM_INSTANCES} instances per invariant"))
}

fn dump(reports: &[VerificationReport]) -> String {
    serde_json::to_string(&Value::Array(reports.iter().map(|r| r.to_json()).collect())).unwrap()
}

fn criterion_8() -> Outcome {
    let first = [
        dump(&suite_subschemes()?),
        dump(&suite_decomposition()?),
        dump(&suite_union()?),
        dump(&suite_theorem_exhaustive(1)?),
        dump(&suite_prune(1)?),
        format!("{:?}", suite_theorem_rational(SEED)),
    ];
    let second = [
        dump(&suite_subschemes()?),
        dump(&suite_decomposition()?),
        dump(&suite_union()?),
        dump(&suite_theorem_exhaustive(4)?),
        dump(&suite_prune(4)?),
        format!("{:?}", suite_theorem_rational(SEED)),
    ];
    for (i, (a, b)) in first.iter().zip(&second).enumerate() {
        if a != b {
            return Err(format!("suite {i} differs between runs"));
        }
    }
    let bytes: usize = first.iter().map(String::len).sum();
    Ok(format!("{bytes} bytes of reports identical across runs and thread counts"))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome, Duration); 8] = [
        ("1 corank-one ideals are socle lines", criterion_1, Duration::from_secs(5)),
        ("2 codegree-one subschemes split by component", criterion_2, Duration::from_secs(5)),
        ("3 planes in spans of subschemes", criterion_3, Duration::from_secs(10)),
        ("4 codegree-one union covers the span", criterion_4, Duration::from_secs(30)),
        ("5 reduction to socle dimension <= k", criterion_5, Duration::from_secs(60)),
        ("6 pruning reaches a minimal witness", criterion_6, Duration::from_secs(30)),
        ("7 linear-algebra invariants", criterion_7, Duration::from_secs(10)),
        ("8 deterministic reports", criterion_8, Duration::from_secs(120)),
    ];
    let mut failures = Vec::new();
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > limit => Err(format!("{detail}; took {elapsed:.2?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail} [{elapsed:.2?} <= {limit:?}]"),
            Err(why) => {
                println!("FAIL criterion {name}: {why} [{elapsed:.2?}]");
                failures.push(name);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
