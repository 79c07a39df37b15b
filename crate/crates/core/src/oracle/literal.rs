//! The hyperplane argument carried out literally over a finite field:
//! extend `E + ⟨Q⟩` to a hyperplane `F` of `⟨R⟩` and search the socle lines
//! for a codegree-one subscheme spanning `F`.

use crate::artin::ProductIdeal;
use crate::exactlin::{enum_lines, Scalar, Subspace};
use crate::scheme::EmbeddedFiniteScheme;

use super::OracleError;

/// A socle element of component `comp` whose codegree-one subscheme keeps
/// `e` in its span, found by enumeration. `None` when the argument does not
/// apply (socle dimension at most `dim e`, or `R` a single point).
pub fn literal_shrink(
    r: &EmbeddedFiniteScheme,
    e: &Subspace,
    comp: usize,
) -> Result<Option<Vec<Scalar>>, OracleError> {
    if !r.field().is_prime() {
        return Err(OracleError::RationalField);
    }
    if !r.span().contains(e) {
        return Err(OracleError::Precondition("plane is not in the span".into()));
    }
    if r.degree() == 1 {
        return Ok(None);
    }
    let a = r.algebra().component(comp);
    let socle = a.socle();
    let candidates: Vec<Vec<Scalar>> = enum_lines(&socle)?.map(|l| l.basis()[0].clone()).collect();
    let span = r.span();
    let spans = candidates
        .iter()
        .map(|s| Ok(r.codim1_subscheme(comp, s)?.span()))
        .collect::<Result<Vec<_>, OracleError>>()?;
    if let Some(i) = spans.iter().position(|s| *s == span) {
        return Ok(Some(candidates[i].clone()));
    }
    if socle.dim() <= e.dim() {
        return Ok(None);
    }
    let q_ideal = ProductIdeal::in_component(r.algebra(), comp, socle)?;
    let q_span = if q_ideal.dim() == r.degree() {
        Subspace::zero(r.field(), r.ambient_dim())
    } else {
        r.subscheme(&q_ideal)?.span()
    };
    let f_prime = e.sum(&q_span)?;
    let m = span.dim();
    if f_prime.dim() >= m {
        return Ok(None);
    }
    let coords = f_prime
        .basis()
        .iter()
        .map(|v| span.coordinates(v).expect("inside the span"));
    let hyper = Subspace::span(r.field(), m, coords)?.complete(m - 1)?;
    let f = Subspace::span(r.field(), r.ambient_dim(), hyper.basis().iter().map(|c| span.combine(c)))?;
    Ok(spans.iter().position(|s| *s == f).map(|i| candidates[i].clone()))
}
