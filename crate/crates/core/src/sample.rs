//! Seeded random embedded schemes for fuzzing: monomial-quotient components
//! with random staircases at distinct random support points.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::artin::{staircase, LocalAlgebra, SemilocalAlgebra};
use crate::exactlin::{Field, Mat, Scalar};
use crate::scheme::EmbeddedFiniteScheme;

/// Rational entries are drawn from `[-RATIONAL_RANGE, RATIONAL_RANGE]`.
pub const RATIONAL_RANGE: i64 = 3;
const ATTEMPTS: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SampleError {
    #[error("degree must be positive")]
    ZeroDegree,
    #[error("ambient dimension must be positive")]
    ZeroAmbient,
    #[error("no valid scheme of degree {degree} in ambient dimension {ambient} found after {ATTEMPTS} attempts")]
    Exhausted { degree: usize, ambient: usize },
}

fn scalar(field: Field, rng: &mut ChaCha8Rng) -> Scalar {
    match field.order() {
        Some(p) => field.int(rng.gen_range(0..p) as i64),
        None => field.int(rng.gen_range(-RATIONAL_RANGE..=RATIONAL_RANGE)),
    }
}

fn partition(degree: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut parts = Vec::new();
    let mut left = degree;
    while left > 0 {
        let part = rng.gen_range(1..=left);
        parts.push(part);
        left -= part;
    }
    parts
}

fn unit(vars: usize, i: usize) -> Vec<u32> {
    let mut m = vec![0; vars];
    m[i] = 1;
    m
}

/// Monomials outside `stairs` all of whose divisors by one variable are inside.
fn corners(vars: usize, stairs: &BTreeSet<Vec<u32>>) -> Vec<Vec<u32>> {
    let mut out = BTreeSet::new();
    for m in stairs {
        for i in 0..vars {
            let mut c = m.clone();
            c[i] += 1;
            if stairs.contains(&c) {
                continue;
            }
            let ok = (0..vars).filter(|&j| c[j] > 0).all(|j| {
                let mut d = c.clone();
                d[j] -= 1;
                stairs.contains(&d)
            });
            if ok {
                out.insert(c);
            }
        }
    }
    out.into_iter().collect()
}

/// A random staircase of `size` monomials in `vars` variables containing every variable.
fn random_leads(vars: usize, size: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<u32>> {
    let mut stairs = BTreeSet::from([vec![0; vars]]);
    let mut order: Vec<usize> = (0..vars).collect();
    order.shuffle(rng);
    for i in order {
        stairs.insert(unit(vars, i));
    }
    while stairs.len() < size {
        let cs = corners(vars, &stairs);
        stairs.insert(cs[rng.gen_range(0..cs.len())].clone());
    }
    corners(vars, &stairs)
}

fn component(
    field: Field,
    ambient: usize,
    size: usize,
    rng: &mut ChaCha8Rng,
) -> Option<(LocalAlgebra, Mat)> {
    let max_vars = (size - 1).min(ambient - 1).min(3);
    if size > 1 && max_vars == 0 {
        return None;
    }
    let vars = if size == 1 { 0 } else { rng.gen_range(1..=max_vars) };
    let leads = random_leads(vars, size, rng);
    let basis = staircase(vars, &leads).ok()?;
    let a = LocalAlgebra::from_monomial_quotient(field, vars, &leads).ok()?;
    // Y0 ↦ 1, Yi ↦ x_i, remaining coordinates ↦ random elements of m
    let mut base = Mat::zeros(field, ambient, size);
    base.set(0, 0, field.one());
    for i in 0..vars {
        let idx = basis.iter().position(|m| *m == unit(vars, i))?;
        base.set(i + 1, idx, field.one());
    }
    for row in vars + 1..ambient {
        for col in 1..size {
            base.set(row, col, scalar(field, rng));
        }
    }
    let change = loop {
        let rows = (0..ambient).map(|_| (0..ambient).map(|_| scalar(field, rng)).collect()).collect();
        let m = Mat::from_rows(field, ambient, rows).expect("square");
        if m.inverse().is_some() {
            break m;
        }
    };
    Some((a, change.mul(&base).expect("shapes")))
}

/// A random valid scheme of the given degree in `ambient` coordinates.
/// Identical arguments give identical schemes.
pub fn sample_scheme(field: Field, degree: usize, ambient: usize, seed: u64) -> Result<EmbeddedFiniteScheme, SampleError> {
    if degree == 0 {
        return Err(SampleError::ZeroDegree);
    }
    if ambient == 0 {
        return Err(SampleError::ZeroAmbient);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ATTEMPTS {
        let parts = partition(degree, &mut rng);
        let Some(comps) = parts
            .iter()
            .map(|&size| component(field, ambient, size, &mut rng))
            .collect::<Option<Vec<_>>>()
        else {
            continue;
        };
        let (algs, ev): (Vec<_>, Vec<_>) = comps.into_iter().unzip();
        let Ok(alg) = SemilocalAlgebra::new(algs) else { continue };
        if let Ok(r) = EmbeddedFiniteScheme::new(ambient, alg, ev) {
            return Ok(r);
        }
    }
    Err(SampleError::Exhausted { degree, ambient })
}
