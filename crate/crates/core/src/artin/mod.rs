//! Finite local algebras, their socles and ideals, and finite products of
//! them (coordinate rings of finite schemes).

mod local;
mod monomial;

pub use local::{validate_local, AlgebraViolation, LocalAlgebra};
pub use monomial::staircase;

use thiserror::Error;

use crate::exactlin::{Field, LinError, Mat, Scalar, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArtinError {
    #[error(transparent)]
    Lin(#[from] LinError),
    #[error("invalid local algebra: {0}")]
    Invalid(#[from] AlgebraViolation),
    #[error("malformed algebra data: {0}")]
    Shape(String),
    #[error("mixed fields: {0} and {1}")]
    MixedFields(Field, Field),
    #[error("monomial quotient is infinite: no pure power of variable {var} among the leading monomials")]
    InfiniteStaircase { var: usize },
    #[error("monomial ideal contains 1, the quotient is zero")]
    UnitIdeal,
    #[error("algebra has no components")]
    EmptyAlgebra,
    #[error("subspace of component {component} is not an ideal")]
    NotAnIdeal { component: usize },
    #[error("ideal has {found} parts, algebra has {expected} components")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("quotient is the zero ring (empty scheme)")]
    EmptyQuotient,
}

/// A finite product `A_0 × … × A_{n-1}` of local algebras over one field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SemilocalAlgebra {
    components: Vec<LocalAlgebra>,
}

impl SemilocalAlgebra {
    pub fn new(components: Vec<LocalAlgebra>) -> Result<Self, ArtinError> {
        let first = components.first().ok_or(ArtinError::EmptyAlgebra)?;
        let field = first.field();
        if let Some(c) = components.iter().find(|c| c.field() != field) {
            return Err(ArtinError::MixedFields(field, c.field()));
        }
        Ok(SemilocalAlgebra { components })
    }

    pub fn field(&self) -> Field {
        self.components[0].field()
    }

    pub fn components(&self) -> &[LocalAlgebra] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &LocalAlgebra {
        &self.components[i]
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.components.iter().map(LocalAlgebra::dim).sum()
    }

    /// Start of each component's block in concatenated coordinates.
    pub fn offsets(&self) -> Vec<usize> {
        self.components
            .iter()
            .scan(0, |acc, c| {
                let start = *acc;
                *acc += c.dim();
                Some(start)
            })
            .collect()
    }

    /// Splits a vector of length `total_dim` into per-component blocks.
    pub fn split(&self, v: &[Scalar]) -> Vec<Vec<Scalar>> {
        self.offsets()
            .into_iter()
            .zip(&self.components)
            .map(|(o, c)| v[o..o + c.dim()].to_vec())
            .collect()
    }

    /// Componentwise product of two concatenated elements.
    pub fn mul(&self, v: &[Scalar], w: &[Scalar]) -> Vec<Scalar> {
        self.split(v)
            .iter()
            .zip(self.split(w))
            .zip(&self.components)
            .flat_map(|((a, b), c)| c.mul(a, &b))
            .collect()
    }

    /// Maximum socle dimension over the components.
    pub fn socdim(&self) -> usize {
        self.components.iter().map(LocalAlgebra::socle_dim).max().unwrap_or(0)
    }

    pub fn is_gorenstein(&self) -> bool {
        self.socdim() <= 1
    }
}

/// One ideal per component; cuts out a closed subscheme.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProductIdeal {
    parts: Vec<Subspace>,
}

impl ProductIdeal {
    /// Validates that each part is an ideal of the matching component.
    pub fn new(s: &SemilocalAlgebra, parts: Vec<Subspace>) -> Result<Self, ArtinError> {
        if parts.len() != s.len() {
            return Err(ArtinError::ShapeMismatch {
                expected: s.len(),
                found: parts.len(),
            });
        }
        for (i, (part, comp)) in parts.iter().zip(s.components()).enumerate() {
            if part.field() != comp.field() {
                return Err(ArtinError::MixedFields(comp.field(), part.field()));
            }
            if !comp.is_ideal(part) {
                return Err(ArtinError::NotAnIdeal { component: i });
            }
        }
        Ok(ProductIdeal { parts })
    }

    pub fn zero(s: &SemilocalAlgebra) -> Self {
        ProductIdeal {
            parts: s
                .components()
                .iter()
                .map(|c| Subspace::zero(c.field(), c.dim()))
                .collect(),
        }
    }

    /// The ideal `(0, …, A_i, …, 0)` deleting component `i`.
    pub fn whole_component(s: &SemilocalAlgebra, i: usize) -> Self {
        let mut out = Self::zero(s);
        let c = s.component(i);
        out.parts[i] = Subspace::full(c.field(), c.dim());
        out
    }

    /// `part` in component `comp`, zero elsewhere.
    pub fn in_component(s: &SemilocalAlgebra, comp: usize, part: Subspace) -> Result<Self, ArtinError> {
        if comp >= s.len() {
            return Err(ArtinError::ShapeMismatch {
                expected: s.len(),
                found: comp + 1,
            });
        }
        let mut parts = Self::zero(s).parts;
        parts[comp] = part;
        Self::new(s, parts)
    }

    /// Reassembles an ideal given as a subspace of the concatenated coordinates.
    /// Returns `None` if the subspace is not a product of its projections or
    /// not an ideal.
    pub fn from_total(s: &SemilocalAlgebra, total: &Subspace) -> Option<Self> {
        let parts: Vec<Subspace> = s
            .components()
            .iter()
            .zip(s.offsets())
            .map(|(c, o)| {
                let blocks = total.basis().iter().map(|v| v[o..o + c.dim()].to_vec());
                Subspace::span(c.field(), c.dim(), blocks).expect("block length")
            })
            .collect();
        if parts.iter().map(Subspace::dim).sum::<usize>() != total.dim() {
            return None;
        }
        Self::new(s, parts).ok()
    }

    /// The ideal as a subspace of the concatenated coordinates.
    pub fn to_total(&self) -> Subspace {
        let n: usize = self.parts.iter().map(Subspace::ambient_dim).sum();
        let field = self.parts[0].field();
        let mut vectors = Vec::new();
        let mut offset = 0;
        for part in &self.parts {
            for v in part.basis() {
                let mut w = field.zeros(n);
                w[offset..offset + v.len()].clone_from_slice(v);
                vectors.push(w);
            }
            offset += part.ambient_dim();
        }
        Subspace::span(field, n, vectors).expect("padded length")
    }

    pub fn parts(&self) -> &[Subspace] {
        &self.parts
    }

    pub fn part(&self, i: usize) -> &Subspace {
        &self.parts[i]
    }

    /// Total dimension `Σ dim I_i`, the drop in degree.
    pub fn dim(&self) -> usize {
        self.parts.iter().map(Subspace::dim).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(Subspace::is_zero)
    }

    /// `other ⊆ self`, componentwise.
    pub fn contains(&self, other: &ProductIdeal) -> bool {
        self.parts.len() == other.parts.len()
            && self.parts.iter().zip(&other.parts).all(|(a, b)| a.contains(b))
    }
}

/// Smallest ideal containing the given concatenated elements.
pub fn ideal_generated(s: &SemilocalAlgebra, gens: &[Vec<Scalar>]) -> Result<ProductIdeal, ArtinError> {
    let n = s.total_dim();
    if let Some(g) = gens.iter().find(|g| g.len() != n) {
        return Err(LinError::DimensionMismatch {
            expected: n,
            found: g.len(),
        }
        .into());
    }
    let split: Vec<Vec<Vec<Scalar>>> = gens.iter().map(|g| s.split(g)).collect();
    let parts = s
        .components()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let local: Vec<Vec<Scalar>> = split.iter().map(|g| g[i].clone()).collect();
            c.ideal_generated(&local)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ProductIdeal { parts })
}

/// Componentwise intersection; the ideal of the scheme-theoretic union.
pub fn intersect_ideals(a: &ProductIdeal, b: &ProductIdeal) -> Result<ProductIdeal, ArtinError> {
    if a.parts.len() != b.parts.len() {
        return Err(ArtinError::ShapeMismatch {
            expected: a.parts.len(),
            found: b.parts.len(),
        });
    }
    let parts = a
        .parts
        .iter()
        .zip(&b.parts)
        .map(|(x, y)| x.intersect(y))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ProductIdeal { parts })
}

/// A quotient `A/I` with its bookkeeping.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: SemilocalAlgebra,
    /// Original index of each surviving component.
    pub survivors: Vec<usize>,
    /// Projection `A_i → A_i/I_i` for each surviving component.
    pub projections: Vec<Mat>,
}

/// Componentwise quotient; components with `I_i = A_i` are dropped.
pub fn quotient(s: &SemilocalAlgebra, ideal: &ProductIdeal) -> Result<Quotient, ArtinError> {
    if ideal.parts.len() != s.len() {
        return Err(ArtinError::ShapeMismatch {
            expected: s.len(),
            found: ideal.parts.len(),
        });
    }
    let mut components = Vec::new();
    let mut survivors = Vec::new();
    let mut projections = Vec::new();
    for (i, (c, part)) in s.components().iter().zip(&ideal.parts).enumerate() {
        let q = c.quotient(part).map_err(|e| match e {
            ArtinError::NotAnIdeal { .. } => ArtinError::NotAnIdeal { component: i },
            other => other,
        })?;
        if let Some((alg, proj)) = q {
            components.push(alg);
            survivors.push(i);
            projections.push(proj);
        }
    }
    if components.is_empty() {
        return Err(ArtinError::EmptyQuotient);
    }
    Ok(Quotient {
        algebra: SemilocalAlgebra::new(components)?,
        survivors,
        projections,
    })
}
