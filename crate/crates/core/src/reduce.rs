//! Shrinking a finite scheme while keeping a fixed plane in its span.
//!
//! Given `E ⊆ ⟨R⟩` with `dim E = k`, every component of `R` whose socle has
//! dimension `l > k` admits a socle line `span{s}` whose codegree-one
//! subscheme `R'_s` still satisfies `E ⊆ ⟨R'_s⟩`. Iterating yields a
//! subscheme of socle dimension at most `k` whose span contains `E`.
//!
//! The choice of `s` is a linear problem. Write `ev: V* → A` and
//! `W = ev(V*)`. Linear forms vanishing on `R'_s` are `ev^{-1}(span{s})`.
//!
//! * If some socle vector `s ∉ W`, then `ev^{-1}(span{s}) = ker ev`, so
//!   `⟨R'_s⟩ = ⟨R⟩` and any plane survives (span-preserving case).
//! * Otherwise pick `ℓ_s` with `ev(ℓ_s) = s`; then
//!   `ev^{-1}(span{s}) = ker ev + span{ℓ_s}` and `E ⊆ ⟨R'_s⟩` iff
//!   `ℓ_s ∈ E^⊥`. This is `k` linear conditions on the `l`-dimensional
//!   socle, so a nonzero solution exists when `l > k` (solved-hyperplane case).

use thiserror::Error;

use crate::artin::{Quotient, ProductIdeal};
use crate::exactlin::{dot, Mat, Scalar, Subspace};
use crate::json::scheme_digest;
use crate::scheme::{EmbeddedFiniteScheme, SchemeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error("plane is not contained in the span of the scheme")]
    PlaneNotInSpan,
    #[error("no component has socle dimension above {k} (socle dimension is {socdim})")]
    NotOverSocled { socdim: usize, k: usize },
    #[error("shrinking would leave the empty scheme")]
    WouldEmpty,
    #[error("reduction to socle dimension 0 is impossible for a nonempty scheme; the plane must be nonzero")]
    ZeroPlane,
    #[error("no socle element satisfies the plane conditions although the dimension count guarantees one")]
    Unsolvable,
}

impl From<crate::exactlin::LinError> for ReduceError {
    fn from(e: crate::exactlin::LinError) -> Self {
        ReduceError::Scheme(e.into())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ShrinkCase {
    /// A socle vector outside `ev(V*)`: the span does not change.
    SpanPreserving,
    /// All socle vectors are reached by linear forms; `s` solves `ℓ_s ∈ E^⊥`.
    SolvedHyperplane,
}

impl ShrinkCase {
    pub fn tag(&self) -> &'static str {
        match self {
            ShrinkCase::SpanPreserving => "span-preserving",
            ShrinkCase::SolvedHyperplane => "solved-hyperplane",
        }
    }
}

/// A socle line chosen for one codegree-one shrink.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShrinkChoice {
    pub socle_element: Vec<Scalar>,
    pub case: ShrinkCase,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShrinkStep {
    /// Component index in the scheme the step was applied to.
    pub component: usize,
    pub socle_element: Vec<Scalar>,
    pub case: ShrinkCase,
    pub degree_before: usize,
    pub degree_after: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShrinkTrace {
    pub steps: Vec<ShrinkStep>,
    pub initial_digest: String,
    pub final_digest: String,
}

/// Result of [`reduce_to_socdim`] or [`prune_minimal`].
#[derive(Clone, Debug)]
pub struct Reduction {
    pub scheme: EmbeddedFiniteScheme,
    pub trace: ShrinkTrace,
    /// Ideal of the input scheme cutting out `scheme`.
    pub ideal: ProductIdeal,
}

fn check_plane(r: &EmbeddedFiniteScheme, e: &Subspace) -> Result<(), ReduceError> {
    r.check_plane(e)?;
    if !r.span().contains(e) {
        return Err(ReduceError::PlaneNotInSpan);
    }
    Ok(())
}

/// Finds a nonzero socle element `s` of component `comp` with `e ⊆ ⟨R'_s⟩`,
/// or `None` if there is none (or if `R` is a single reduced point).
pub fn can_shrink(
    r: &EmbeddedFiniteScheme,
    e: &Subspace,
    comp: usize,
) -> Result<Option<ShrinkChoice>, ReduceError> {
    check_plane(r, e)?;
    if comp >= r.num_components() {
        return Err(SchemeError::ComponentOutOfRange {
            index: comp,
            len: r.num_components(),
        }
        .into());
    }
    Ok(choose(r, e, comp))
}

fn choose(r: &EmbeddedFiniteScheme, e: &Subspace, comp: usize) -> Option<ShrinkChoice> {
    if r.degree() == 1 {
        return None;
    }
    let field = r.field();
    let deg = r.degree();
    let a = r.algebra().component(comp);
    let offset = r.algebra().offsets()[comp];
    let socle = a.socle();
    let embed = |s: &[Scalar]| {
        let mut v = field.zeros(deg);
        v[offset..offset + s.len()].clone_from_slice(s);
        v
    };
    let w = r.ev_image();
    if let Some(s) = socle.basis().iter().find(|s| !w.contains_vector(&embed(s))) {
        return Some(ShrinkChoice {
            socle_element: s.clone(),
            case: ShrinkCase::SpanPreserving,
        });
    }
    // every socle vector is some ev(ℓ); fix one preimage per basis vector
    let ev_t = r.ev_stacked().transpose();
    let preimages: Vec<Vec<Scalar>> = socle
        .basis()
        .iter()
        .map(|s| ev_t.solve(&embed(s)).expect("lengths match").expect("s ∈ W"))
        .collect();
    let zero = field.zero();
    let conditions: Vec<Vec<Scalar>> = e
        .basis()
        .iter()
        .map(|v| preimages.iter().map(|l| dot(&zero, l, v)).collect())
        .collect();
    let solutions = Mat::from_rows(field, socle.dim(), conditions)
        .expect("rectangular")
        .kernel();
    let candidates = Subspace::span(field, a.dim(), solutions.basis().iter().map(|c| socle.combine(c)))
        .expect("component length");
    candidates.basis().first().map(|s| ShrinkChoice {
        socle_element: s.clone(),
        case: ShrinkCase::SolvedHyperplane,
    })
}

fn apply(
    r: &EmbeddedFiniteScheme,
    comp: usize,
    choice: ShrinkChoice,
) -> Result<(EmbeddedFiniteScheme, ShrinkStep, Quotient), ReduceError> {
    let ideal = r.codim1_ideal(comp, &choice.socle_element)?;
    let (next, q) = r.subscheme_with_quotient(&ideal)?;
    let step = ShrinkStep {
        component: comp,
        socle_element: choice.socle_element,
        case: choice.case,
        degree_before: r.degree(),
        degree_after: next.degree(),
    };
    Ok((next, step, q))
}

/// One codegree-one shrink on the lowest-index component whose socle
/// dimension exceeds `dim e`, keeping `e` in the span.
pub fn shrink_once(
    r: &EmbeddedFiniteScheme,
    e: &Subspace,
) -> Result<(EmbeddedFiniteScheme, ShrinkStep), ReduceError> {
    let (next, step, _) = shrink_once_tracked(r, e)?;
    Ok((next, step))
}

fn shrink_once_tracked(
    r: &EmbeddedFiniteScheme,
    e: &Subspace,
) -> Result<(EmbeddedFiniteScheme, ShrinkStep, Quotient), ReduceError> {
    check_plane(r, e)?;
    let k = e.dim();
    let comp = r
        .algebra()
        .components()
        .iter()
        .position(|a| a.socle_dim() > k)
        .ok_or(ReduceError::NotOverSocled { socdim: r.socdim(), k })?;
    if r.degree() == 1 {
        return Err(ReduceError::WouldEmpty);
    }
    let choice = choose(r, e, comp).ok_or(ReduceError::Unsolvable)?;
    apply(r, comp, choice)
}

/// Composes quotient maps so the final scheme can be described by an ideal
/// of the original one.
struct IdealTracker {
    original: EmbeddedFiniteScheme,
    /// For each original component: current index and projection, or `None` once deleted.
    maps: Vec<Option<(usize, Mat)>>,
}

impl IdealTracker {
    fn new(r: &EmbeddedFiniteScheme) -> Self {
        let maps = r
            .algebra()
            .components()
            .iter()
            .enumerate()
            .map(|(i, a)| Some((i, Mat::identity(a.field(), a.dim()))))
            .collect();
        IdealTracker {
            original: r.clone(),
            maps,
        }
    }

    fn push(&mut self, q: &Quotient) {
        for slot in self.maps.iter_mut() {
            *slot = slot.take().and_then(|(cur, proj)| {
                let pos = q.survivors.iter().position(|&s| s == cur)?;
                Some((pos, q.projections[pos].mul(&proj).expect("composable")))
            });
        }
    }

    fn ideal(&self) -> ProductIdeal {
        let parts = self
            .original
            .algebra()
            .components()
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| match m {
                Some((_, proj)) => proj.kernel(),
                None => Subspace::full(a.field(), a.dim()),
            })
            .collect();
        ProductIdeal::new(self.original.algebra(), parts).expect("kernels of algebra maps are ideals")
    }
}

fn finish(
    original: &EmbeddedFiniteScheme,
    current: EmbeddedFiniteScheme,
    steps: Vec<ShrinkStep>,
    tracker: IdealTracker,
) -> Reduction {
    let trace = ShrinkTrace {
        steps,
        initial_digest: scheme_digest(original),
        final_digest: scheme_digest(&current),
    };
    Reduction {
        scheme: current,
        trace,
        ideal: tracker.ideal(),
    }
}

/// Applies [`shrink_once`] until every component has socle dimension at most
/// `dim e`. Terminates after at most `deg R - 1` steps.
pub fn reduce_to_socdim(r: &EmbeddedFiniteScheme, e: &Subspace) -> Result<Reduction, ReduceError> {
    check_plane(r, e)?;
    if e.is_zero() {
        return Err(ReduceError::ZeroPlane);
    }
    let k = e.dim();
    let mut current = r.clone();
    let mut steps = Vec::new();
    let mut tracker = IdealTracker::new(r);
    while current.socdim() > k {
        let (next, step, q) = shrink_once_tracked(&current, e)?;
        tracker.push(&q);
        steps.push(step);
        current = next;
    }
    Ok(finish(r, current, steps, tracker))
}

/// Greedily removes socle lines (any component, lowest index first) while
/// `e` stays in the span, until no codegree-one subscheme keeps `e`.
///
/// The output is minimal among all subschemes whose span contains `e`, since
/// every proper subscheme lies in a codegree-one one and spans shrink with
/// subschemes.
pub fn prune_minimal(r: &EmbeddedFiniteScheme, e: &Subspace) -> Result<Reduction, ReduceError> {
    check_plane(r, e)?;
    let mut current = r.clone();
    let mut steps = Vec::new();
    let mut tracker = IdealTracker::new(r);
    'outer: loop {
        for comp in 0..current.num_components() {
            if let Some(choice) = choose(&current, e, comp) {
                let (next, step, q) = apply(&current, comp, choice)?;
                tracker.push(&q);
                steps.push(step);
                current = next;
                continue 'outer;
            }
        }
        break;
    }
    Ok(finish(r, current, steps, tracker))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::artin::{LocalAlgebra, SemilocalAlgebra};
    use crate::exactlin::Field;

    fn fat_point_p2(f: Field) -> EmbeddedFiniteScheme {
        let a = LocalAlgebra::from_monomial_quotient(f, 2, &[vec![2, 0], vec![1, 1], vec![0, 2]]).unwrap();
        EmbeddedFiniteScheme::new(3, SemilocalAlgebra::new(vec![a]).unwrap(), vec![Mat::identity(f, 3)]).unwrap()
    }

    fn triple_socle_p3(f: Field) -> EmbeddedFiniteScheme {
        let leads = vec![
            vec![2, 0, 0],
            vec![1, 1, 0],
            vec![1, 0, 1],
            vec![0, 2, 0],
            vec![0, 1, 1],
            vec![0, 0, 2],
        ];
        let a = LocalAlgebra::from_monomial_quotient(f, 3, &leads).unwrap();
        EmbeddedFiniteScheme::new(4, SemilocalAlgebra::new(vec![a]).unwrap(), vec![Mat::identity(f, 4)]).unwrap()
    }

    fn plane(f: Field, n: usize, rows: &[&[i64]]) -> Subspace {
        Subspace::span(f, n, rows.iter().map(|r| r.iter().map(|&v| f.int(v)).collect())).unwrap()
    }

    #[test]
    fn fat_point_diagonal_line() {
        let q = Field::Rational;
        let r = fat_point_p2(q);
        let e = plane(q, 3, &[&[0, 1, 1]]);
        let choice = can_shrink(&r, &e, 0).unwrap().unwrap();
        // E^⊥ forces α + β = 0 for s = αx + βy
        assert_eq!(choice.socle_element, vec![q.int(0), q.int(1), q.int(-1)]);
        assert_eq!(choice.case, ShrinkCase::SolvedHyperplane);
        let (sub, step) = shrink_once(&r, &e).unwrap();
        assert_eq!(step.degree_before, 3);
        assert_eq!(step.degree_after, 2);
        assert_eq!(sub.span(), plane(q, 3, &[&[1, 0, 0], &[0, 1, 1]]));
        assert!(sub.span().contains(&e));
    }

    #[test]
    fn zero_plane_always_shrinks() {
        let q = Field::Rational;
        let r = fat_point_p2(q);
        let choice = can_shrink(&r, &Subspace::zero(q, 3), 0).unwrap().unwrap();
        assert_eq!(choice.socle_element, vec![q.int(0), q.int(1), q.int(0)]);
    }

    #[test]
    fn reduced_point_component_deletes_the_point() {
        let q = Field::Rational;
        let r = EmbeddedFiniteScheme::reduced_points(
            q,
            3,
            vec![vec![q.int(1), q.int(0), q.int(0)], vec![q.int(0), q.int(1), q.int(0)]],
        )
        .unwrap();
        let e0 = plane(q, 3, &[&[1, 0, 0]]);
        let e1 = plane(q, 3, &[&[0, 1, 0]]);
        // deleting point 0 keeps [0:1:0] only
        assert!(can_shrink(&r, &e0, 0).unwrap().is_none());
        assert_eq!(can_shrink(&r, &e1, 0).unwrap().unwrap().socle_element, vec![q.int(1)]);
        assert!(can_shrink(&r, &e0, 1).unwrap().is_some());
    }

    #[test]
    fn plane_outside_span_is_rejected() {
        let q = Field::Rational;
        let r = EmbeddedFiniteScheme::reduced_points(q, 3, vec![vec![q.int(1), q.int(0), q.int(0)]]).unwrap();
        let e = plane(q, 3, &[&[0, 1, 0]]);
        assert_eq!(can_shrink(&r, &e, 0), Err(ReduceError::PlaneNotInSpan));
        assert!(matches!(reduce_to_socdim(&r, &e), Err(ReduceError::PlaneNotInSpan)));
        assert!(matches!(prune_minimal(&r, &e), Err(ReduceError::PlaneNotInSpan)));
        assert!(can_shrink(&r, &plane(q, 2, &[&[1, 0]]), 0).is_err());
    }

    #[test]
    fn triple_socle_two_plane() {
        let q = Field::Rational;
        let r = triple_socle_p3(q);
        let e = plane(q, 4, &[&[1, 1, 0, 0], &[0, 0, 1, 1]]);
        let (sub, step) = shrink_once(&r, &e).unwrap();
        assert_eq!(sub.degree(), 3);
        assert_eq!(step.case, ShrinkCase::SolvedHyperplane);
        assert!(sub.span().contains(&e));
    }

    #[test]
    fn already_low_socle_dimension() {
        let q = Field::Rational;
        let r = fat_point_p2(q);
        let e = plane(q, 3, &[&[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(
            shrink_once(&r, &e).unwrap_err(),
            ReduceError::NotOverSocled { socdim: 2, k: 2 }
        );
        let red = reduce_to_socdim(&r, &e).unwrap();
        assert!(red.trace.steps.is_empty());
        assert_eq!(red.scheme, r);
        assert!(red.ideal.is_zero());
        assert_eq!(red.trace.initial_digest, red.trace.final_digest);
    }

    #[test]
    fn gorenstein_input_is_untouched() {
        let q = Field::Rational;
        let j = LocalAlgebra::jet(q, 3).unwrap();
        let r = EmbeddedFiniteScheme::new(3, SemilocalAlgebra::new(vec![j]).unwrap(), vec![Mat::identity(q, 3)]).unwrap();
        let red = reduce_to_socdim(&r, &plane(q, 3, &[&[0, 1, 0]])).unwrap();
        assert!(red.trace.steps.is_empty());
    }

    #[test]
    fn fat_point_reduction() {
        let q = Field::Rational;
        let r = fat_point_p2(q);
        let e = plane(q, 3, &[&[0, 1, 1]]);
        let red = reduce_to_socdim(&r, &e).unwrap();
        assert_eq!(red.trace.steps.len(), 1);
        assert_eq!(red.scheme.degree(), 2);
        assert_eq!(red.scheme.socdim(), 1);
        assert_eq!(r.subscheme(&red.ideal).unwrap(), red.scheme);
    }

    #[test]
    fn triple_socle_to_gorenstein() {
        let q = Field::Rational;
        let r = triple_socle_p3(q);
        let e = plane(q, 4, &[&[0, 1, 2, 3]]);
        let red = reduce_to_socdim(&r, &e).unwrap();
        assert_eq!(red.trace.steps.len(), 2);
        assert_eq!(red.scheme.degree(), 2);
        assert_eq!(red.scheme.socdim(), 1);
        for s in &red.trace.steps {
            assert_eq!(s.degree_before, s.degree_after + 1);
        }
        assert!(red.scheme.span().contains(&e));
        assert_eq!(r.subscheme(&red.ideal).unwrap(), red.scheme);
        assert_eq!(reduce_to_socdim(&r, &Subspace::zero(q, 4)).unwrap_err(), ReduceError::ZeroPlane);
    }

    #[test]
    fn prune_examples() {
        let q = Field::Rational;
        let pts = EmbeddedFiniteScheme::reduced_points(
            q,
            3,
            vec![
                vec![q.int(1), q.int(0), q.int(0)],
                vec![q.int(0), q.int(1), q.int(0)],
                vec![q.int(0), q.int(0), q.int(1)],
            ],
        )
        .unwrap();
        let e = plane(q, 3, &[&[0, 1, 0]]);
        let red = prune_minimal(&pts, &e).unwrap();
        assert_eq!(red.scheme.degree(), 1);
        assert_eq!(red.scheme.support_points(), vec![e.clone()]);

        let fat = fat_point_p2(q);
        let red = prune_minimal(&fat, &Subspace::full(q, 3)).unwrap();
        assert!(red.trace.steps.is_empty());
        assert_eq!(red.scheme, fat);
    }

    #[test]
    fn determinism() {
        let q = Field::Rational;
        let r = triple_socle_p3(q);
        let e = plane(q, 4, &[&[1, 2, 3, 4]]);
        let a = reduce_to_socdim(&r, &e).unwrap();
        let b = reduce_to_socdim(&r, &e).unwrap();
        assert_eq!(a.trace, b.trace);
    }
}
