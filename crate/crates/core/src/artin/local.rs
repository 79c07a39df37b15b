use std::fmt;

use crate::exactlin::{Field, Mat, Scalar, Subspace};

use super::ArtinError;

/// A finite local commutative algebra with residue field equal to the ground
/// field, given by structure constants on a basis `e_0 = 1, e_1, …, e_{r-1}`
/// where `e_1, …, e_{r-1}` span the maximal ideal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LocalAlgebra {
    field: Field,
    dim: usize,
    /// `consts[(a * dim + b) * dim + c]` is the `e_c` coefficient of `e_a · e_b`.
    consts: Vec<Scalar>,
    labels: Vec<String>,
}

impl fmt::Debug for LocalAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "LocalAlgebra(dim {} over {}, basis [{}])",
            self.dim,
            self.field,
            self.labels.join(", ")
        )
    }
}

/// The first axiom a candidate multiplication table violates.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraViolation {
    #[error("algebra has dimension 0")]
    ZeroDimensional,
    #[error("e_0 is not a unit: e_0 * e_{index} != e_{index}")]
    NotUnital { index: usize },
    #[error("not commutative: e_{a} * e_{b} != e_{b} * e_{a}")]
    NotCommutative { a: usize, b: usize },
    #[error("not associative: (e_{a} * e_{b}) * e_{c} != e_{a} * (e_{b} * e_{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("maximal ideal not closed under multiplication: e_{a} * e_{b} has a unit component (not local)")]
    NotLocal { a: usize, b: usize },
    #[error("maximal ideal is not nilpotent: m^{power} is a nonzero idempotent ideal")]
    NotNilpotent { power: usize },
}

impl LocalAlgebra {
    /// Validated algebra from structure constants `table[a][b][c]`.
    pub fn from_table(field: Field, table: Vec<Vec<Vec<Scalar>>>) -> Result<Self, ArtinError> {
        let a = Self::from_table_unchecked(field, table)?;
        validate_local(&a)?;
        Ok(a)
    }

    /// Shape-checked but otherwise unvalidated algebra; see [`validate_local`].
    pub fn from_table_unchecked(
        field: Field,
        table: Vec<Vec<Vec<Scalar>>>,
    ) -> Result<Self, ArtinError> {
        let dim = table.len();
        let mut consts = Vec::with_capacity(dim * dim * dim);
        for (a, row) in table.into_iter().enumerate() {
            if row.len() != dim {
                return Err(ArtinError::Shape(format!("table[{a}] has {} entries, expected {dim}", row.len())));
            }
            for (b, prod) in row.into_iter().enumerate() {
                if prod.len() != dim {
                    return Err(ArtinError::Shape(format!(
                        "table[{a}][{b}] has {} entries, expected {dim}",
                        prod.len()
                    )));
                }
                if let Some(x) = prod.iter().find(|x| x.field() != field) {
                    return Err(ArtinError::MixedFields(field, x.field()));
                }
                consts.extend(prod);
            }
        }
        Ok(LocalAlgebra {
            field,
            dim,
            consts,
            labels: default_labels(dim),
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, ArtinError> {
        if labels.len() != self.dim {
            return Err(ArtinError::Shape(format!(
                "{} labels for a {}-dimensional algebra",
                labels.len(),
                self.dim
            )));
        }
        self.labels = labels;
        Ok(self)
    }

    /// The reduced point `Spec k`.
    pub fn point(field: Field) -> Self {
        Self::jet(field, 1).expect("k[t]/(t) is valid")
    }

    /// `k[t]/(t^length)`.
    pub fn jet(field: Field, length: usize) -> Result<Self, ArtinError> {
        if length == 0 {
            return Err(ArtinError::EmptyAlgebra);
        }
        let a = super::monomial::monomial_quotient(field, 1, &[vec![length as u32]])?;
        let labels = (0..length)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            })
            .collect();
        a.with_labels(labels)
    }

    /// `k[x_1..x_vars] / (monomials with the given exponent vectors)`.
    pub fn from_monomial_quotient(
        field: Field,
        vars: usize,
        leads: &[Vec<u32>],
    ) -> Result<Self, ArtinError> {
        super::monomial::monomial_quotient(field, vars, leads)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Coordinates of `e_a · e_b`.
    pub fn product(&self, a: usize, b: usize) -> &[Scalar] {
        let start = (a * self.dim + b) * self.dim;
        &self.consts[start..start + self.dim]
    }

    /// Structure constants as nested vectors `[a][b][c]`.
    pub fn table(&self) -> Vec<Vec<Vec<Scalar>>> {
        (0..self.dim)
            .map(|a| (0..self.dim).map(|b| self.product(a, b).to_vec()).collect())
            .collect()
    }

    pub fn one(&self) -> Vec<Scalar> {
        self.field.unit_vector(self.dim, 0)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        self.field.unit_vector(self.dim, i)
    }

    pub fn mul(&self, v: &[Scalar], w: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.field.zeros(self.dim);
        for (a, va) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (b, wb) in w.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                let coef = va * wb;
                for (o, c) in out.iter_mut().zip(self.product(a, b)) {
                    if !c.is_zero() {
                        *o = &*o + &coef * c;
                    }
                }
            }
        }
        out
    }

    /// Matrix of `w ↦ v · w`.
    pub fn mult_matrix(&self, v: &[Scalar]) -> Mat {
        let cols: Vec<Vec<Scalar>> = (0..self.dim)
            .map(|b| self.mul(v, &self.basis_vector(b)))
            .collect();
        Mat::from_rows(self.field, self.dim, cols)
            .expect("square")
            .transpose()
    }

    pub fn maximal_ideal(&self) -> Subspace {
        Subspace::span(self.field, self.dim, (1..self.dim).map(|i| self.basis_vector(i)))
            .expect("basis vectors")
    }

    /// `Ann(m) = {v : v · e_j = 0 for j ≥ 1}`, the kernel of the stacked
    /// multiplication maps by the maximal-ideal basis.
    pub fn socle(&self) -> Subspace {
        let mut stacked = Mat::zeros(self.field, 0, self.dim);
        for j in 1..self.dim {
            stacked = stacked
                .vstack(&self.mult_matrix(&self.basis_vector(j)))
                .expect("same width");
        }
        stacked.kernel()
    }

    pub fn socle_dim(&self) -> usize {
        self.socle().dim()
    }

    pub fn is_ideal(&self, sub: &Subspace) -> bool {
        sub.ambient_dim() == self.dim
            && (1..self.dim).all(|a| {
                let e = self.basis_vector(a);
                sub.basis()
                    .iter()
                    .all(|v| sub.contains_vector(&self.mul(&e, v)))
            })
    }

    /// Smallest ideal containing `gens`: the span closed under multiplication
    /// by every basis element until it stabilizes.
    pub fn ideal_generated(&self, gens: &[Vec<Scalar>]) -> Result<Subspace, ArtinError> {
        let mut current = Subspace::span(self.field, self.dim, gens.iter().cloned())?;
        loop {
            let products: Vec<Vec<Scalar>> = (1..self.dim)
                .flat_map(|a| {
                    let e = self.basis_vector(a);
                    current.basis().iter().map(move |v| (e.clone(), v.clone()))
                })
                .map(|(e, v)| self.mul(&e, &v))
                .collect();
            let next = current.sum(&Subspace::span(self.field, self.dim, products)?)?;
            if next.dim() == current.dim() {
                return Ok(current);
            }
            current = next;
        }
    }

    /// Inverse of a unit, `None` if `v` lies in the maximal ideal.
    pub fn inverse(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if v[0].is_zero() {
            return None;
        }
        self.mult_matrix(v).solve(&self.one()).ok().flatten()
    }

    /// Quotient by a proper ideal together with the projection matrix
    /// (`q x r`, columns are coordinates of `ē_c`). Returns `None` when the
    /// ideal is the whole algebra.
    ///
    /// The quotient basis is the set of standard vectors adjoined by
    /// [`Subspace::complete`] to the ideal; since a proper ideal lies in `m`,
    /// `e_0` is always first.
    pub fn quotient(&self, ideal: &Subspace) -> Result<Option<(LocalAlgebra, Mat)>, ArtinError> {
        if ideal.ambient_dim() != self.dim || !self.is_ideal(ideal) {
            return Err(ArtinError::NotAnIdeal { component: 0 });
        }
        if ideal.is_full() {
            return Ok(None);
        }
        let (_, kept) = ideal.complete_with(self.dim);
        let q = kept.len();
        let columns: Vec<Vec<Scalar>> = kept
            .iter()
            .map(|&i| self.basis_vector(i))
            .chain(ideal.basis().iter().cloned())
            .collect();
        let change = Mat::from_rows(self.field, self.dim, columns)?.transpose();
        let inv = change.inverse().expect("complement plus ideal basis is a basis");
        let proj = Mat::from_rows(self.field, self.dim, inv.to_rows().into_iter().take(q).collect())?;
        let mut table = Vec::with_capacity(q);
        for &a in &kept {
            let mut row = Vec::with_capacity(q);
            for &b in &kept {
                row.push(proj.mul_vec(self.product(a, b))?);
            }
            table.push(row);
        }
        let labels = kept.iter().map(|&i| self.labels[i].clone()).collect();
        let quotient = LocalAlgebra::from_table(self.field, table)?.with_labels(labels)?;
        Ok(Some((quotient, proj)))
    }
}

fn default_labels(dim: usize) -> Vec<String> {
    (0..dim)
        .map(|i| if i == 0 { "1".to_string() } else { format!("e{i}") })
        .collect()
}

/// Checks unit, commutativity, associativity, `m·m ⊆ m` and nilpotency of `m`,
/// in that order, reporting the first failure.
pub fn validate_local(a: &LocalAlgebra) -> Result<(), AlgebraViolation> {
    let r = a.dim;
    if r == 0 {
        return Err(AlgebraViolation::ZeroDimensional);
    }
    for b in 0..r {
        let e = a.basis_vector(b);
        if a.product(0, b) != e.as_slice() || a.product(b, 0) != e.as_slice() {
            return Err(AlgebraViolation::NotUnital { index: b });
        }
    }
    for x in 0..r {
        for y in x + 1..r {
            if a.product(x, y) != a.product(y, x) {
                return Err(AlgebraViolation::NotCommutative { a: x, b: y });
            }
        }
    }
    for x in 1..r {
        for y in 1..r {
            let xy = a.product(x, y);
            for z in 1..r {
                let left = a.mul(xy, &a.basis_vector(z));
                let right = a.mul(&a.basis_vector(x), a.product(y, z));
                if left != right {
                    return Err(AlgebraViolation::NotAssociative { a: x, b: y, c: z });
                }
            }
        }
    }
    for x in 1..r {
        for y in 1..r {
            if !a.product(x, y)[0].is_zero() {
                return Err(AlgebraViolation::NotLocal { a: x, b: y });
            }
        }
    }
    let mut power = a.maximal_ideal();
    let mut exponent = 1;
    while !power.is_zero() {
        let next = Subspace::span(
            a.field,
            r,
            (1..r).flat_map(|x| power.basis().iter().map(move |v| (x, v))).map(|(x, v)| a.mul(&a.basis_vector(x), v)),
        )
        .expect("vectors of length r");
        if next.dim() == power.dim() {
            return Err(AlgebraViolation::NotNilpotent { power: exponent });
        }
        power = next;
        exponent += 1;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::Prime(2)
    }

    fn ints(field: Field, table: &[&[&[i64]]]) -> Vec<Vec<Vec<Scalar>>> {
        table
            .iter()
            .map(|row| row.iter().map(|p| p.iter().map(|&v| field.int(v)).collect()).collect())
            .collect()
    }

    #[test]
    fn jet_and_point() {
        let q = Field::Rational;
        assert_eq!(LocalAlgebra::jet(q, 1).unwrap(), LocalAlgebra::point(q));
        let j3 = LocalAlgebra::jet(q, 3).unwrap();
        assert_eq!(j3.labels(), &["1", "t", "t^2"]);
        assert_eq!(j3.product(1, 1), &[q.int(0), q.int(0), q.int(1)]);
        assert_eq!(j3.product(1, 2), &q.zeros(3)[..]);
        assert!(LocalAlgebra::jet(q, 0).is_err());
    }

    #[test]
    fn unit_square_is_not_local() {
        let q = Field::Rational;
        let t = ints(q, &[&[&[1, 0], &[0, 1]], &[&[0, 1], &[1, 0]]]);
        let raw = LocalAlgebra::from_table_unchecked(q, t.clone()).unwrap();
        assert_eq!(validate_local(&raw), Err(AlgebraViolation::NotLocal { a: 1, b: 1 }));
        assert!(matches!(
            LocalAlgebra::from_table(q, t),
            Err(ArtinError::Invalid(AlgebraViolation::NotLocal { .. }))
        ));
    }

    #[test]
    fn other_violations() {
        let q = Field::Rational;
        // e_1 e_2 = e_2 but e_2 e_1 = 0
        let t = ints(
            q,
            &[
                &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]],
                &[&[0, 1, 0], &[0, 0, 0], &[0, 0, 1]],
                &[&[0, 0, 1], &[0, 0, 0], &[0, 0, 0]],
            ],
        );
        let raw = LocalAlgebra::from_table_unchecked(q, t).unwrap();
        assert_eq!(validate_local(&raw), Err(AlgebraViolation::NotCommutative { a: 1, b: 2 }));

        // e_1 e_1 = e_1: idempotent inside m, never nilpotent
        let t = ints(q, &[&[&[1, 0], &[0, 1]], &[&[0, 1], &[0, 1]]]);
        let raw = LocalAlgebra::from_table_unchecked(q, t).unwrap();
        assert_eq!(validate_local(&raw), Err(AlgebraViolation::NotNilpotent { power: 1 }));

        // broken unit
        let t = ints(q, &[&[&[1, 0], &[0, 0]], &[&[0, 1], &[0, 0]]]);
        let raw = LocalAlgebra::from_table_unchecked(q, t).unwrap();
        assert_eq!(validate_local(&raw), Err(AlgebraViolation::NotUnital { index: 1 }));

        assert!(LocalAlgebra::from_table_unchecked(q, ints(q, &[&[&[1, 0]]])).is_err());
    }

    #[test]
    fn socle_of_dual_numbers_is_t() {
        let a = LocalAlgebra::jet(f2(), 2).unwrap();
        let s = a.socle();
        assert_eq!(s.basis(), &[vec![f2().int(0), f2().int(1)]]);
    }

    #[test]
    fn socle_of_point_is_everything() {
        let a = LocalAlgebra::point(Field::Rational);
        assert!(a.socle().is_full());
        assert_eq!(a.socle_dim(), 1);
    }

    #[test]
    fn socle_of_square_of_maximal_ideal() {
        let q = Field::Rational;
        let a = LocalAlgebra::from_monomial_quotient(q, 2, &[vec![2, 0], vec![1, 1], vec![0, 2]]).unwrap();
        // oracle: the kernel of v ↦ (x v, y v) on basis {1, x, y} is {v : v_0 = 0}.
        let s = a.socle();
        assert_eq!(s, Subspace::span(q, 3, vec![a.basis_vector(1), a.basis_vector(2)]).unwrap());
        assert!(a.is_ideal(&s));
    }

    #[test]
    fn ideal_generated_by_x_in_xx_yy() {
        let q = Field::Rational;
        let a = LocalAlgebra::from_monomial_quotient(q, 2, &[vec![2, 0], vec![0, 2]]).unwrap();
        assert_eq!(a.labels(), &["1", "x", "y", "x*y"]);
        let i = a.ideal_generated(&[a.basis_vector(1)]).unwrap();
        assert_eq!(i, Subspace::span(q, 4, vec![a.basis_vector(1), a.basis_vector(3)]).unwrap());
        assert!(a.ideal_generated(&[q.zeros(4)]).unwrap().is_zero());
        let soc = a.socle();
        assert_eq!(a.ideal_generated(&[soc.basis()[0].clone()]).unwrap().dim(), 1);
    }

    #[test]
    fn quotient_by_antidiagonal_is_dual_numbers() {
        let q = Field::Rational;
        let a = LocalAlgebra::from_monomial_quotient(q, 2, &[vec![2, 0], vec![1, 1], vec![0, 2]]).unwrap();
        let ideal = Subspace::span(q, 3, vec![vec![q.int(0), q.int(1), q.int(-1)]]).unwrap();
        let (quot, proj) = a.quotient(&ideal).unwrap().unwrap();
        // basis {1, x̄}, x̄² = 0: the table of k[u]/(u²)
        assert_eq!(quot.table(), LocalAlgebra::jet(q, 2).unwrap().table());
        assert_eq!(quot.labels(), &["1", "x"]);
        // ȳ = x̄
        assert_eq!(proj.column(2), vec![q.int(0), q.int(1)]);
        let (same, _) = a.quotient(&Subspace::zero(q, 3)).unwrap().unwrap();
        assert_eq!(same, a);
        assert!(a.quotient(&Subspace::full(q, 3)).unwrap().is_none());
        let not_ideal = Subspace::span(q, 3, vec![a.one()]).unwrap();
        assert!(a.quotient(&not_ideal).is_err());
    }

    #[test]
    fn dual_numbers_mod_socle_is_a_point() {
        let q = Field::Rational;
        let a = LocalAlgebra::jet(q, 2).unwrap();
        let (p, _) = a.quotient(&a.socle()).unwrap().unwrap();
        assert_eq!(p, LocalAlgebra::point(q));
    }

    #[test]
    fn unit_inverse() {
        let q = Field::Rational;
        let a = LocalAlgebra::jet(q, 3).unwrap();
        let u = vec![q.int(2), q.int(1), q.int(0)];
        let inv = a.inverse(&u).unwrap();
        assert_eq!(a.mul(&u, &inv), a.one());
        assert!(a.inverse(&a.basis_vector(1)).is_none());
    }
}
