//! Finite schemes embedded in projective space.
//!
//! A scheme `R = ⊔ Spec A_i ⊂ P(V)` is stored as its coordinate ring together
//! with one evaluation matrix per component: row `j` of `ev[i]` holds the
//! coordinates in `A_i` of the dual basis vector `X_j` restricted to
//! `Spec A_i` (in a local trivialisation of `O(1)`). Everything below is
//! linear algebra on these matrices.

use thiserror::Error;

use crate::artin::{
    self, intersect_ideals, validate_local, AlgebraViolation, ArtinError, LocalAlgebra, ProductIdeal,
    Quotient, SemilocalAlgebra,
};
use crate::exactlin::{Field, LinError, Mat, Scalar, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeViolation {
    #[error("component {component}: {violation}")]
    Algebra {
        component: usize,
        violation: AlgebraViolation,
    },
    #[error("component {component}: evaluation matrix is {found_rows}x{found_cols}, expected {expected_rows}x{expected_cols}")]
    EvShape {
        component: usize,
        expected_rows: usize,
        expected_cols: usize,
        found_rows: usize,
        found_cols: usize,
    },
    #[error("component {component}: evaluation matrix is over {found}, algebra over {expected}")]
    FieldMismatch {
        component: usize,
        expected: Field,
        found: Field,
    },
    #[error("component {component}: no linear form evaluates to a unit (support point undefined)")]
    NoSupport { component: usize },
    #[error("components {first} and {second} have the same support point")]
    SupportsCollide { first: usize, second: usize },
    #[error("component {component}: linear forms generate a subalgebra of dimension {generated} < {dim} (not a closed embedding)")]
    NotEmbedded {
        component: usize,
        generated: usize,
        dim: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeError {
    #[error(transparent)]
    Lin(#[from] LinError),
    #[error(transparent)]
    Artin(#[from] ArtinError),
    #[error("invalid embedded scheme: {0}")]
    Invalid(#[from] SchemeViolation),
    #[error("component index {index} out of range ({len} components)")]
    ComponentOutOfRange { index: usize, len: usize },
    #[error("socle element is zero")]
    ZeroSocleElement,
    #[error("element is not in the socle of component {component}")]
    NotInSocle { component: usize },
    #[error("subspace lives in dimension {found}, ambient space has dimension {expected}")]
    AmbientMismatch { expected: usize, found: usize },
}

/// `R ⊂ P(V)`: a finite scheme with its evaluation data.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EmbeddedFiniteScheme {
    ambient_dim: usize,
    algebra: SemilocalAlgebra,
    ev: Vec<Mat>,
}

impl EmbeddedFiniteScheme {
    /// Validated scheme; `ambient_dim = dim V`, `ev[i]` is `ambient_dim x dim A_i`.
    pub fn new(ambient_dim: usize, algebra: SemilocalAlgebra, ev: Vec<Mat>) -> Result<Self, SchemeError> {
        let r = Self::new_unchecked(ambient_dim, algebra, ev)?;
        validate_scheme(&r)?;
        Ok(r)
    }

    /// Only checks that there is one evaluation matrix per component.
    pub fn new_unchecked(
        ambient_dim: usize,
        algebra: SemilocalAlgebra,
        ev: Vec<Mat>,
    ) -> Result<Self, SchemeError> {
        if ev.len() != algebra.len() {
            return Err(ArtinError::ShapeMismatch {
                expected: algebra.len(),
                found: ev.len(),
            }
            .into());
        }
        Ok(EmbeddedFiniteScheme {
            ambient_dim,
            algebra,
            ev,
        })
    }

    /// Reduced points `[p_0], [p_1], …` of `P(k^n)`.
    pub fn reduced_points(field: Field, n: usize, points: Vec<Vec<Scalar>>) -> Result<Self, SchemeError> {
        let ev = points
            .into_iter()
            .map(|p| Mat::from_rows(field, n, vec![p]).map(|m| m.transpose()))
            .collect::<Result<Vec<_>, _>>()?;
        let algebra = SemilocalAlgebra::new(vec![LocalAlgebra::point(field); ev.len()])?;
        Self::new(n, algebra, ev)
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn algebra(&self) -> &SemilocalAlgebra {
        &self.algebra
    }

    pub fn ev(&self) -> &[Mat] {
        &self.ev
    }

    pub fn num_components(&self) -> usize {
        self.algebra.len()
    }

    /// `deg R`, the total dimension of the coordinate ring.
    pub fn degree(&self) -> usize {
        self.algebra.total_dim()
    }

    pub fn socdim(&self) -> usize {
        self.algebra.socdim()
    }

    fn check_component(&self, comp: usize) -> Result<(), SchemeError> {
        if comp >= self.num_components() {
            return Err(SchemeError::ComponentOutOfRange {
                index: comp,
                len: self.num_components(),
            });
        }
        Ok(())
    }

    /// The stacked evaluation `V* → ∏ A_i` as a `dim V x deg R` matrix.
    pub fn ev_stacked(&self) -> Mat {
        self.ev
            .iter()
            .skip(1)
            .fold(self.ev[0].clone(), |acc, m| acc.hstack(m).expect("same row count"))
    }

    /// `W = ev(V*)`, a subspace of the concatenated coordinates of `∏ A_i`.
    pub fn ev_image(&self) -> Subspace {
        self.ev_stacked().row_space()
    }

    /// Linear forms vanishing on `R`: `ker(ev) ⊆ V*`.
    pub fn vanishing_forms(&self) -> Subspace {
        self.ev_stacked().transpose().kernel()
    }

    /// `⟨R⟩ = Ann(ker ev) ⊆ V`.
    pub fn span(&self) -> Subspace {
        self.vanishing_forms().annihilator()
    }

    /// Support points as canonical lines in `V`.
    pub fn support_points(&self) -> Vec<Subspace> {
        self.ev
            .iter()
            .map(|m| Subspace::span(self.field(), self.ambient_dim, vec![m.column(0)]).expect("column length"))
            .collect()
    }

    /// The closed subscheme cut out by `ideal`.
    pub fn subscheme(&self, ideal: &ProductIdeal) -> Result<Self, SchemeError> {
        Ok(self.subscheme_with_quotient(ideal)?.0)
    }

    /// [`EmbeddedFiniteScheme::subscheme`] together with the quotient maps.
    pub fn subscheme_with_quotient(&self, ideal: &ProductIdeal) -> Result<(Self, Quotient), SchemeError> {
        let q = artin::quotient(&self.algebra, ideal)?;
        let ev = q
            .survivors
            .iter()
            .zip(&q.projections)
            .map(|(&i, proj)| self.ev[i].mul(&proj.transpose()))
            .collect::<Result<Vec<_>, _>>()?;
        let sub = Self::new(self.ambient_dim, q.algebra.clone(), ev)?;
        Ok((sub, q))
    }

    /// The degree `deg R - 1` subscheme cut out by the line `span{s}` in the
    /// socle of component `comp`. Rescaling `s` gives the same scheme.
    pub fn codim1_subscheme(&self, comp: usize, s: &[Scalar]) -> Result<Self, SchemeError> {
        self.subscheme(&self.codim1_ideal(comp, s)?)
    }

    /// The ideal `span{s}` in component `comp`, zero elsewhere.
    pub fn codim1_ideal(&self, comp: usize, s: &[Scalar]) -> Result<ProductIdeal, SchemeError> {
        self.check_component(comp)?;
        let a = self.algebra.component(comp);
        if s.len() != a.dim() {
            return Err(LinError::DimensionMismatch {
                expected: a.dim(),
                found: s.len(),
            }
            .into());
        }
        if s.iter().all(Scalar::is_zero) {
            return Err(SchemeError::ZeroSocleElement);
        }
        if !a.socle().contains_vector(s) {
            return Err(SchemeError::NotInSocle { component: comp });
        }
        let line = Subspace::span(self.field(), a.dim(), vec![s.to_vec()])?;
        Ok(ProductIdeal::in_component(&self.algebra, comp, line)?)
    }

    /// Scheme-theoretic union of the subschemes cut by `a` and `b`.
    pub fn union(&self, a: &ProductIdeal, b: &ProductIdeal) -> Result<Self, SchemeError> {
        self.subscheme(&intersect_ideals(a, b)?)
    }

    /// `ν_d(R)` in the space of degree-`d` forms, coordinates ordered by
    /// [`degree_monomials`].
    pub fn veronese(&self, d: usize) -> Result<Self, SchemeError> {
        let monomials = degree_monomials(self.ambient_dim, d);
        let mut ev = Vec::with_capacity(self.num_components());
        for (a, m) in self.algebra.components().iter().zip(&self.ev) {
            let rows: Vec<Vec<Scalar>> = monomials
                .iter()
                .map(|alpha| {
                    alpha.iter().enumerate().fold(a.one(), |acc, (j, &e)| {
                        (0..e).fold(acc, |acc, _| a.mul(&acc, m.row(j)))
                    })
                })
                .collect();
            ev.push(Mat::from_rows(self.field(), a.dim(), rows)?);
        }
        Self::new(monomials.len(), self.algebra.clone(), ev)
    }

    /// Checks that `e` is a subspace of `V`.
    pub fn check_plane(&self, e: &Subspace) -> Result<(), SchemeError> {
        if e.ambient_dim() != self.ambient_dim {
            return Err(SchemeError::AmbientMismatch {
                expected: self.ambient_dim,
                found: e.ambient_dim(),
            });
        }
        Ok(())
    }
}

/// Exponent vectors of degree `d` in `n` variables, lexicographically
/// descending with `X_0 > X_1 > …`.
pub fn degree_monomials(n: usize, d: usize) -> Vec<Vec<u32>> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, d as u32, &mut Vec::new(), &mut out);
    }
    out
}

/// Checks evaluation shapes, support points (existence and distinctness) and
/// the closed-embedding condition, reporting the first failure.
///
/// The embedding certificate: with `u = ev_i(X_{j0})` for the first `j0`
/// whose value is a unit, the dehomogenized values `ev_i(X_j) · u^{-1}` must
/// generate `A_i` as an algebra.
pub fn validate_scheme(r: &EmbeddedFiniteScheme) -> Result<(), SchemeViolation> {
    let field = r.field();
    for (i, (a, m)) in r.algebra.components().iter().zip(&r.ev).enumerate() {
        validate_local(a).map_err(|violation| SchemeViolation::Algebra { component: i, violation })?;
        if m.rows() != r.ambient_dim || m.cols() != a.dim() {
            return Err(SchemeViolation::EvShape {
                component: i,
                expected_rows: r.ambient_dim,
                expected_cols: a.dim(),
                found_rows: m.rows(),
                found_cols: m.cols(),
            });
        }
        if m.field() != field {
            return Err(SchemeViolation::FieldMismatch {
                component: i,
                expected: field,
                found: m.field(),
            });
        }
    }
    let supports = r
        .ev
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let p = m.column(0);
            if p.iter().all(Scalar::is_zero) {
                Err(SchemeViolation::NoSupport { component: i })
            } else {
                Ok(Subspace::span(field, r.ambient_dim, vec![p]).expect("column length"))
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    for i in 0..supports.len() {
        for j in i + 1..supports.len() {
            if supports[i] == supports[j] {
                return Err(SchemeViolation::SupportsCollide { first: i, second: j });
            }
        }
    }
    for (i, (a, m)) in r.algebra.components().iter().zip(&r.ev).enumerate() {
        let generated = generated_subalgebra_dim(a, m);
        if generated < a.dim() {
            return Err(SchemeViolation::NotEmbedded {
                component: i,
                generated,
                dim: a.dim(),
            });
        }
    }
    Ok(())
}

fn generated_subalgebra_dim(a: &LocalAlgebra, m: &Mat) -> usize {
    let j0 = (0..m.rows())
        .find(|&j| !m.get(j, 0).is_zero())
        .expect("support checked first");
    let u_inv = a.inverse(m.row(j0)).expect("unit");
    let gens = std::iter::once(a.one()).chain((0..m.rows()).map(|j| a.mul(m.row(j), &u_inv)));
    let mut current = Subspace::span(a.field(), a.dim(), gens).expect("length r");
    loop {
        let basis = current.basis();
        let products: Vec<Vec<Scalar>> = (0..basis.len())
            .flat_map(|x| (x..basis.len()).map(move |y| (x, y)))
            .map(|(x, y)| a.mul(&basis[x], &basis[y]))
            .collect();
        let next = current
            .sum(&Subspace::span(a.field(), a.dim(), products).expect("length r"))
            .expect("same ambient");
        if next.dim() == current.dim() {
            return current.dim();
        }
        current = next;
    }
}
