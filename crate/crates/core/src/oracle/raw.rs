//! Brute-force enumeration over `F_p` on plain `u32` vectors.
//!
//! Nothing here calls into `exactlin` or `artin` beyond reading structure
//! constants, so results can be compared against the structured code.

use std::collections::BTreeSet;

use crate::artin::SemilocalAlgebra;
use crate::exactlin::{Field, Scalar, Subspace};

use super::{Budget, OracleError};

fn inv(a: u32, p: u32) -> u32 {
    // Fermat
    let (mut base, mut exp, mut acc) = (a as u64 % p as u64, p as u64 - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}

/// All vectors of `F_p^n` whose first nonzero entry is 1.
pub fn lines(p: u32, n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for lead in 0..n {
        let tail = n - lead - 1;
        let count = (p as u64).pow(tail as u32);
        for mut code in 0..count {
            let mut v = vec![0u32; n];
            v[lead] = 1;
            for slot in v[lead + 1..].iter_mut().rev() {
                *slot = (code % p as u64) as u32;
                code /= p as u64;
            }
            out.push(v);
        }
    }
    out
}

/// A subspace of `F_p^n` held as a fully reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RawSpace {
    p: u32,
    n: usize,
    rows: Vec<Vec<u32>>,
}

impl RawSpace {
    pub fn zero(p: u32, n: usize) -> Self {
        RawSpace { p, n, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    fn lead(v: &[u32]) -> Option<usize> {
        v.iter().position(|&x| x != 0)
    }

    fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        let mut w = v.to_vec();
        for row in &self.rows {
            let piv = Self::lead(row).expect("nonzero row");
            let c = w[piv] as u64;
            if c != 0 {
                for (x, &r) in w.iter_mut().zip(row) {
                    *x = ((*x as u64 + (p - c) * r as u64) % p) as u32;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// `self + span{v}`, or `None` if `v` is already inside.
    pub fn extend(&self, v: &[u32]) -> Option<RawSpace> {
        let p = self.p as u64;
        let mut w = self.reduce(v);
        let piv = Self::lead(&w)?;
        let s = inv(w[piv], self.p) as u64;
        w.iter_mut().for_each(|x| *x = (*x as u64 * s % p) as u32);
        let mut rows: Vec<Vec<u32>> = self
            .rows
            .iter()
            .map(|row| {
                let c = row[piv] as u64;
                row.iter()
                    .zip(&w)
                    .map(|(&r, &x)| ((r as u64 + (p - c) * x as u64) % p) as u32)
                    .collect()
            })
            .collect();
        rows.push(w);
        rows.sort_by_key(|r| Self::lead(r));
        Some(RawSpace { p: self.p, n: self.n, rows })
    }

    /// Reads a subspace over `F_p`; `None` over the rationals.
    pub fn from_subspace(u: &Subspace) -> Option<RawSpace> {
        let p = u.field().order()?;
        let mut out = RawSpace::zero(p, u.ambient_dim());
        for row in u.basis() {
            let v: Vec<u32> = row
                .iter()
                .map(|x| match x {
                    Scalar::Mod { v, .. } => *v,
                    Scalar::Rat(_) => unreachable!("prime field"),
                })
                .collect();
            out = out.extend(&v).unwrap_or(out);
        }
        Some(out)
    }

    pub fn contains_space(&self, other: &RawSpace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    pub fn to_subspace(&self, field: Field) -> Subspace {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&x| field.int(x as i64)).collect::<Vec<_>>());
        Subspace::span(field, self.n, rows).expect("row length")
    }
}

/// All `k`-dimensional subspaces of `F_p^n`, grown one line at a time with
/// deduplication. Every produced subspace is charged to `budget`.
pub fn subspaces(p: u32, n: usize, k: usize, budget: &mut Budget) -> Result<Vec<RawSpace>, OracleError> {
    let all_lines = lines(p, n);
    let mut level = vec![RawSpace::zero(p, n)];
    for _ in 0..k {
        level = grow(&level, &all_lines);
        budget.charge(level.len() as u64)?;
    }
    Ok(level)
}

/// The `(j+1)`-dimensional subspaces containing some member of `level`,
/// where `level` holds every `j`-dimensional subspace.
pub fn grow(level: &[RawSpace], all_lines: &[Vec<u32>]) -> Vec<RawSpace> {
    let mut next = BTreeSet::new();
    for space in level {
        let pivots: Vec<usize> = space.rows.iter().filter_map(|r| RawSpace::lead(r)).collect();
        // lines vanishing on the pivots reach every larger space
        for l in all_lines.iter().filter(|l| pivots.iter().all(|&i| l[i] == 0)) {
            if let Some(bigger) = space.extend(l) {
                next.insert(bigger);
            }
        }
    }
    next.into_iter().collect()
}

/// Every subspace of `F_p^n`, of every dimension.
pub fn all_subspaces(p: u32, n: usize, budget: &mut Budget) -> Result<Vec<RawSpace>, OracleError> {
    let all_lines = lines(p, n);
    let mut level = vec![RawSpace::zero(p, n)];
    let mut out = level.clone();
    budget.charge(1)?;
    while !level.is_empty() {
        level = grow(&level, &all_lines);
        budget.charge(level.len() as u64)?;
        out.extend(level.iter().cloned());
    }
    Ok(out)
}

/// Structure constants of a product of local algebras, flattened to `u32`.
pub struct RawAlgebra {
    p: u32,
    dim: usize,
    consts: Vec<u32>,
}

impl RawAlgebra {
    pub fn new(s: &SemilocalAlgebra) -> Result<Self, OracleError> {
        let p = s.field().order().ok_or(OracleError::RationalField)?;
        let dim = s.total_dim();
        let mut consts = vec![0u32; dim * dim * dim];
        let mut offset = 0;
        for a in s.components() {
            let r = a.dim();
            for i in 0..r {
                for j in 0..r {
                    for (c, x) in a.product(i, j).iter().enumerate() {
                        let Scalar::Mod { v, .. } = x else {
                            return Err(OracleError::RationalField);
                        };
                        consts[((offset + i) * dim + offset + j) * dim + offset + c] = *v;
                    }
                }
            }
            offset += r;
        }
        Ok(RawAlgebra { p, dim, consts })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    fn times_basis(&self, v: &[u32], j: usize) -> Vec<u32> {
        let p = self.p as u64;
        let mut out = vec![0u64; self.dim];
        for (i, &vi) in v.iter().enumerate() {
            if vi == 0 {
                continue;
            }
            let base = (i * self.dim + j) * self.dim;
            for (c, o) in out.iter_mut().enumerate() {
                *o = (*o + vi as u64 * self.consts[base + c] as u64) % p;
            }
        }
        out.into_iter().map(|x| x as u32).collect()
    }

    /// Closed under multiplication by every basis element.
    pub fn is_ideal(&self, u: &RawSpace) -> bool {
        u.rows()
            .iter()
            .all(|row| (0..self.dim).all(|j| u.contains(&self.times_basis(row, j))))
    }

    /// All 1-dimensional ideals, found by filtering every line.
    pub fn line_ideals(&self, budget: &mut Budget) -> Result<Vec<RawSpace>, OracleError> {
        let all = lines(self.p, self.dim);
        budget.charge(all.len() as u64)?;
        Ok(all
            .iter()
            .filter_map(|l| RawSpace::zero(self.p, self.dim).extend(l))
            .filter(|u| self.is_ideal(u))
            .collect())
    }

    /// The smallest ideal containing `u`.
    pub fn closure(&self, u: RawSpace) -> RawSpace {
        let mut u = u;
        loop {
            let mut grown = false;
            for row in u.rows.clone() {
                for j in 0..self.dim {
                    if let Some(bigger) = u.extend(&self.times_basis(&row, j)) {
                        u = bigger;
                        grown = true;
                    }
                }
            }
            if !grown {
                return u;
            }
        }
    }

    /// All ideals, by closing `I + span{l}` over every ideal `I` and line `l`
    /// starting from zero. Every ideal is reached along a chain of such steps.
    pub fn ideals(&self, budget: &mut Budget) -> Result<Vec<RawSpace>, OracleError> {
        let all = lines(self.p, self.dim);
        let zero = RawSpace::zero(self.p, self.dim);
        let mut seen = BTreeSet::from([zero.clone()]);
        let mut frontier = vec![zero];
        budget.charge(1)?;
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for ideal in &frontier {
                for l in &all {
                    if let Some(bigger) = ideal.extend(l) {
                        let closed = self.closure(bigger);
                        if seen.insert(closed.clone()) {
                            next.push(closed);
                        }
                    }
                }
            }
            budget.charge(next.len() as u64)?;
            frontier = next;
        }
        Ok(seen.into_iter().collect())
    }

    /// All ideals, found by filtering every subspace.
    pub fn ideals_by_filter(&self, budget: &mut Budget) -> Result<Vec<RawSpace>, OracleError> {
        Ok(all_subspaces(self.p, self.dim, budget)?
            .into_iter()
            .filter(|u| self.is_ideal(u))
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_counts() {
        assert_eq!(lines(2, 3).len(), 7);
        assert_eq!(lines(3, 3).len(), 13);
        assert_eq!(lines(5, 2).len(), 6);
        assert!(lines(3, 3).iter().all(|v| v.iter().find(|&&x| x != 0) == Some(&1)));
    }

    #[test]
    fn subspace_counts() {
        let mut b = Budget::new(1_000_000);
        assert_eq!(subspaces(2, 4, 2, &mut b).unwrap().len(), 35);
        assert_eq!(subspaces(3, 3, 2, &mut b).unwrap().len(), 13);
        assert_eq!(subspaces(2, 3, 0, &mut b).unwrap().len(), 1);
        // 1 + 7 + 7 + 1
        assert_eq!(all_subspaces(2, 3, &mut b).unwrap().len(), 16);
    }

    #[test]
    fn ideal_closure_agrees_with_filtering() {
        use crate::artin::LocalAlgebra;
        for p in [2u64, 3] {
            let f = Field::prime(p).unwrap();
            for leads in [vec![vec![2, 0], vec![1, 1], vec![0, 2]], vec![vec![3, 0], vec![1, 1], vec![0, 2]], vec![vec![2, 0], vec![0, 2]]] {
                let a = LocalAlgebra::from_monomial_quotient(f, 2, &leads).unwrap();
                let s = SemilocalAlgebra::new(vec![a, LocalAlgebra::jet(f, 2).unwrap()]).unwrap();
                let raw = RawAlgebra::new(&s).unwrap();
                let mut b = Budget::new(u64::MAX);
                let mut by_filter = raw.ideals_by_filter(&mut b).unwrap();
                by_filter.sort();
                assert_eq!(raw.ideals(&mut b).unwrap(), by_filter);
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let mut b = Budget::new(10);
        assert!(matches!(subspaces(2, 4, 2, &mut b), Err(OracleError::Budget { .. })));
    }

    #[test]
    fn extend_is_canonical() {
        let z = RawSpace::zero(3, 3);
        let a = z.extend(&[1, 1, 0]).unwrap().extend(&[0, 1, 2]).unwrap();
        let b = z.extend(&[1, 2, 2]).unwrap().extend(&[1, 0, 1]).unwrap();
        assert_eq!(a, b);
        assert!(a.extend(&[2, 0, 2]).is_none());
    }
}
