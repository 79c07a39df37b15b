use std::fmt;

use super::{dot, Field, LinError, Scalar, Subspace};

/// Dense row-major matrix over a single exact field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Mat {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Mat {
        Mat {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a `rows.len() x cols` matrix; every row must have `cols` entries in `field`.
    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Mat, LinError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for row in rows {
            if row.len() != cols {
                return Err(LinError::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            if let Some(x) = row.iter().find(|x| x.field() != field) {
                return Err(LinError::MixedFields(field, x.field()));
            }
            data.extend(row);
        }
        Ok(Mat {
            field,
            rows: nrows,
            cols,
            data,
        })
    }

    /// Convenience constructor from small integers.
    pub fn from_ints(field: Field, rows: &[&[i64]]) -> Mat {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.int(v)).collect())
            .collect();
        Mat::from_rows(field, cols, rows).expect("ragged integer rows")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat, LinError> {
        if self.cols != other.rows {
            return Err(LinError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Mat::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self · v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, LinError> {
        if v.len() != self.cols {
            return Err(LinError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let zero = self.field.zero();
        Ok((0..self.rows).map(|i| dot(&zero, self.row(i), v)).collect())
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Mat) -> Result<Mat, LinError> {
        if self.cols != other.cols {
            return Err(LinError::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Mat {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &Mat) -> Result<Mat, LinError> {
        if self.rows != other.rows {
            return Err(LinError::DimensionMismatch {
                expected: self.rows,
                found: other.rows,
            });
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend(self.row(i).iter().cloned());
            data.extend(other.row(i).iter().cloned());
        }
        Ok(Mat {
            field: self.field,
            rows: self.rows,
            cols,
            data,
        })
    }

    /// Reduced row echelon form and pivot columns. Zero rows are kept at the bottom.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(src) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, src);
            let inv = self.get(r, c).inv().expect("nonzero pivot");
            for j in c..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let factor = self.get(i, c).clone();
                for j in c..self.cols {
                    let pj = self.get(r, j);
                    if pj.is_zero() {
                        continue;
                    }
                    let v = self.get(i, j) - &factor * pj;
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// `{x : self · x = 0}` as a subspace of the column space `k^cols`.
    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let mut vectors = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for free in (0..self.cols).filter(|&j| !is_pivot[j]) {
            let mut v = self.field.unit_vector(self.cols, free);
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(i, free);
            }
            vectors.push(v);
        }
        Subspace::from_independent(self.field, self.cols, vectors)
    }

    /// Column space, a subspace of `k^rows`.
    pub fn image(&self) -> Subspace {
        Subspace::span(self.field, self.rows, self.transpose().to_rows())
            .expect("transpose rows have the right length")
    }

    /// Row space, a subspace of `k^cols`.
    pub fn row_space(&self) -> Subspace {
        Subspace::span(self.field, self.cols, self.to_rows()).expect("rows have the right length")
    }

    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Mat::identity(self.field, n)).ok()?;
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Mat::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Some `x` with `self · x = b`, free variables set to zero; `None` if inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>, LinError> {
        if b.len() != self.rows {
            return Err(LinError::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let rhs = Mat::from_rows(self.field, 1, b.iter().map(|x| vec![x.clone()]).collect())?;
        let (r, pivots) = self.hstack(&rhs)?.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = self.field.zeros(self.cols);
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.get(i, self.cols).clone();
        }
        Ok(Some(x))
    }
}

/// `{x : m·x ∈ u}`.
pub fn preimage(m: &Mat, u: &Subspace) -> Result<Subspace, LinError> {
    if u.ambient_dim() != m.rows() {
        return Err(LinError::DimensionMismatch {
            expected: m.rows(),
            found: u.ambient_dim(),
        });
    }
    let ann = u.annihilator();
    Ok(ann.basis_mat().mul(m)?.kernel())
}
