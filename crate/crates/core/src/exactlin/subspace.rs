use std::fmt;

use super::{Field, LinError, Mat, Scalar};

/// A linear subspace of `k^n`, stored by its canonical reduced row echelon
/// basis. Equal subspaces have identical representations, so `==`, `Ord` and
/// `Hash` are set-theoretic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    field: Field,
    ambient_dim: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .basis
            .iter()
            .map(|r| {
                let v: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                format!("({})", v.join(","))
            })
            .collect();
        write!(
            f,
            "Subspace[{} of {} over {}]{{{}}}",
            self.dim(),
            self.ambient_dim,
            self.field,
            rows.join(", ")
        )
    }
}

impl Subspace {
    pub fn zero(field: Field, n: usize) -> Subspace {
        Subspace {
            field,
            ambient_dim: n,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, n: usize) -> Subspace {
        Subspace {
            field,
            ambient_dim: n,
            basis: (0..n).map(|i| field.unit_vector(n, i)).collect(),
            pivots: (0..n).collect(),
        }
    }

    /// Span of arbitrary (possibly dependent, possibly zero) vectors of length `n`.
    pub fn span<I>(field: Field, n: usize, vectors: I) -> Result<Subspace, LinError>
    where
        I: IntoIterator<Item = Vec<Scalar>>,
    {
        let rows: Vec<Vec<Scalar>> = vectors.into_iter().collect();
        let m = Mat::from_rows(field, n, rows)?;
        Ok(Subspace::from_mat(&m))
    }

    pub(crate) fn from_independent(field: Field, n: usize, vectors: Vec<Vec<Scalar>>) -> Subspace {
        Subspace::span(field, n, vectors).expect("vectors of ambient length")
    }

    /// Row space of `m`.
    pub fn from_mat(m: &Mat) -> Subspace {
        let (r, pivots) = m.rref();
        Subspace {
            field: m.field(),
            ambient_dim: m.cols(),
            basis: (0..pivots.len()).map(|i| r.row(i).to_vec()).collect(),
            pivots,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// Canonical RREF basis rows.
    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The basis as a `dim x ambient_dim` matrix.
    pub fn basis_mat(&self) -> Mat {
        Mat::from_rows(self.field, self.ambient_dim, self.basis.clone()).expect("canonical basis")
    }

    fn check_ambient(&self, n: usize) -> Result<(), LinError> {
        if self.ambient_dim != n {
            return Err(LinError::DimensionMismatch {
                expected: self.ambient_dim,
                found: n,
            });
        }
        Ok(())
    }

    /// Remainder of `v` after clearing the pivot coordinates; zero iff `v` lies in the span.
    pub fn reduce_vector(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let c = out[p].clone();
            for (o, r) in out.iter_mut().zip(row) {
                if !r.is_zero() {
                    *o = &*o - &c * r;
                }
            }
        }
        out
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        v.len() == self.ambient_dim && self.reduce_vector(v).iter().all(Scalar::is_zero)
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim
            && other.dim() <= self.dim()
            && other.basis.iter().all(|v| self.contains_vector(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinError> {
        self.check_ambient(other.ambient_dim)?;
        Subspace::span(
            self.field,
            self.ambient_dim,
            self.basis.iter().chain(&other.basis).cloned(),
        )
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinError> {
        self.check_ambient(other.ambient_dim)?;
        if self.contains(other) {
            return Ok(other.clone());
        }
        if other.contains(self) {
            return Ok(self.clone());
        }
        Ok(self
            .annihilator()
            .sum(&other.annihilator())?
            .annihilator())
    }

    /// Annihilator in the dual coordinate space under `<x, y> = Σ x_i y_i`.
    pub fn annihilator(&self) -> Subspace {
        if self.is_zero() {
            return Subspace::full(self.field, self.ambient_dim);
        }
        self.basis_mat().kernel()
    }

    /// Extends to dimension `d` by adjoining standard basis vectors in increasing
    /// index order whenever they are independent of what is already there.
    pub fn complete(&self, d: usize) -> Result<Subspace, LinError> {
        if d < self.dim() || d > self.ambient_dim {
            return Err(LinError::OutOfRange {
                what: "completion dimension",
                value: d,
                min: self.dim(),
                max: self.ambient_dim,
            });
        }
        Ok(self.complete_with(d).0)
    }

    /// Like [`Subspace::complete`], also returning the adjoined standard indices.
    pub fn complete_with(&self, d: usize) -> (Subspace, Vec<usize>) {
        let mut current = self.clone();
        let mut added = Vec::new();
        for i in 0..self.ambient_dim {
            if current.dim() >= d {
                break;
            }
            let e = self.field.unit_vector(self.ambient_dim, i);
            if !current.contains_vector(&e) {
                current = current.sum_vector(e);
                added.push(i);
            }
        }
        (current, added)
    }

    fn sum_vector(&self, v: Vec<Scalar>) -> Subspace {
        let mut rows = self.basis.clone();
        rows.push(v);
        Subspace::from_independent(self.field, self.ambient_dim, rows)
    }

    /// Coordinates of a vector of this subspace in the canonical basis.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains_vector(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// The vector with coordinates `c` in the canonical basis.
    pub fn combine(&self, c: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.field.zeros(self.ambient_dim);
        for (ci, row) in c.iter().zip(&self.basis) {
            if ci.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(row) {
                *o = &*o + ci * r;
            }
        }
        out
    }
}
