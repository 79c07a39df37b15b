//! Enumeration of Grassmannians over prime fields.
//!
//! A `k`-dimensional subspace of a `m`-dimensional space `U` is enumerated
//! through its unique `k x m` RREF coefficient matrix relative to the
//! canonical basis of `U`: choose pivot columns, then fill the free
//! positions (right of each pivot, outside other pivot columns) with every
//! field element. Each pattern yields a distinct subspace.

use super::{LinError, Scalar, Subspace};

/// Number of `k`-dimensional subspaces of `F_q^n`. Saturates at `u128::MAX`.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        let a = q.checked_pow((n - i) as u32).map(|x| x - 1);
        let b = q.checked_pow((i + 1) as u32).map(|x| x - 1);
        match (a.and_then(|a| num.checked_mul(a)), b.and_then(|b| den.checked_mul(b))) {
            (Some(n2), Some(d2)) => {
                num = n2;
                den = d2;
                let g = gcd(num, den);
                num /= g;
                den /= g;
            }
            _ => return u128::MAX,
        }
    }
    num / den
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Iterator over every `k`-dimensional subspace of `u` (prime fields only).
///
/// Iteration order is deterministic: pivot sets in lexicographic order, free
/// entries as a little-endian odometer over `0..p`. The iterator is `Clone`,
/// so a stream can be restarted or split with `skip`/`step_by`.
#[derive(Clone, Debug)]
pub struct SubspaceIter {
    space: Subspace,
    k: usize,
    p: u32,
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
    odometer: Vec<u32>,
    done: bool,
}

/// All `k`-dimensional subspaces of `u`.
pub fn enum_subspaces(u: &Subspace, k: usize) -> Result<SubspaceIter, LinError> {
    let p = u.field().order().ok_or(LinError::RationalEnumeration)?;
    if k > u.dim() {
        return Err(LinError::OutOfRange {
            what: "subspace dimension",
            value: k,
            min: 0,
            max: u.dim(),
        });
    }
    let pivots: Vec<usize> = (0..k).collect();
    let free = free_positions(&pivots, u.dim());
    Ok(SubspaceIter {
        space: u.clone(),
        k,
        p,
        odometer: vec![0; free.len()],
        free,
        pivots,
        done: false,
    })
}

fn free_positions(pivots: &[usize], m: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (row, &c) in pivots.iter().enumerate() {
        for col in c + 1..m {
            if !pivots.contains(&col) {
                out.push((row, col));
            }
        }
    }
    out
}

impl SubspaceIter {
    /// Total number of subspaces this iterator yields from the start.
    pub fn total(&self) -> u128 {
        gaussian_binomial(self.space.dim(), self.k, self.p as u64)
    }

    fn current(&self) -> Subspace {
        let field = self.space.field();
        let m = self.space.dim();
        let mut coeffs = vec![field.zeros(m); self.k];
        for (row, &c) in self.pivots.iter().enumerate() {
            coeffs[row][c] = field.one();
        }
        for (&(row, col), &v) in self.free.iter().zip(&self.odometer) {
            coeffs[row][col] = Scalar::Mod { v, p: self.p };
        }
        let vectors = coeffs.iter().map(|c| self.space.combine(c));
        Subspace::span(field, self.space.ambient_dim(), vectors).expect("ambient length")
    }

    fn advance(&mut self) {
        for digit in self.odometer.iter_mut() {
            *digit += 1;
            if *digit < self.p {
                return;
            }
            *digit = 0;
        }
        // odometer wrapped: next pivot combination
        let m = self.space.dim();
        let k = self.k;
        let Some(i) = (0..k).rev().find(|&i| self.pivots[i] < m - k + i) else {
            self.done = true;
            return;
        };
        self.pivots[i] += 1;
        for j in i + 1..k {
            self.pivots[j] = self.pivots[j - 1] + 1;
        }
        self.free = free_positions(&self.pivots, m);
        self.odometer = vec![0; self.free.len()];
    }
}

impl Iterator for SubspaceIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.done {
            return None;
        }
        let out = self.current();
        self.advance();
        Some(out)
    }
}

/// Lines through the origin of `u`: `enum_subspaces(u, 1)`.
pub fn enum_lines(u: &Subspace) -> Result<SubspaceIter, LinError> {
    enum_subspaces(u, 1)
}
