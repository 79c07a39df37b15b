//! Finite monomial quotients `k[x_1..x_n]/(x^α : α ∈ leads)`.
//!
//! The basis is the staircase of standard monomials, sorted by total degree
//! and then lexicographically with `x_1 > x_2 > …`, so `1` comes first.

use std::cmp::Reverse;

use crate::exactlin::Field;

use super::{ArtinError, LocalAlgebra};

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Standard monomials of the monomial ideal generated by `leads`.
pub fn staircase(vars: usize, leads: &[Vec<u32>]) -> Result<Vec<Vec<u32>>, ArtinError> {
    if let Some(bad) = leads.iter().find(|l| l.len() != vars) {
        return Err(ArtinError::Shape(format!(
            "exponent vector of length {} in {vars} variables",
            bad.len()
        )));
    }
    if leads.iter().any(|l| l.iter().all(|&e| e == 0)) {
        return Err(ArtinError::UnitIdeal);
    }
    // each variable needs a pure power among the leads
    let mut bounds = Vec::with_capacity(vars);
    for v in 0..vars {
        let bound = leads
            .iter()
            .filter(|l| l.iter().enumerate().all(|(i, &e)| i == v || e == 0))
            .map(|l| l[v])
            .min()
            .ok_or(ArtinError::InfiniteStaircase { var: v })?;
        bounds.push(bound);
    }
    let mut out = Vec::new();
    let mut current = vec![0u32; vars];
    loop {
        if !leads.iter().any(|l| divides(l, &current)) {
            out.push(current.clone());
        }
        let Some(pos) = (0..vars).find(|&i| current[i] + 1 < bounds[i]) else {
            break;
        };
        current[pos] += 1;
        current[..pos].iter_mut().for_each(|e| *e = 0);
    }
    out.sort_by_key(|m| (m.iter().sum::<u32>(), Reverse(m.clone())));
    Ok(out)
}

fn var_names(vars: usize) -> Vec<String> {
    const SHORT: [&str; 4] = ["x", "y", "z", "w"];
    if vars <= SHORT.len() {
        SHORT[..vars].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=vars).map(|i| format!("x{i}")).collect()
    }
}

fn monomial_label(m: &[u32], names: &[String]) -> String {
    let parts: Vec<String> = m
        .iter()
        .zip(names)
        .filter(|(&e, _)| e > 0)
        .map(|(&e, n)| if e == 1 { n.clone() } else { format!("{n}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

pub(super) fn monomial_quotient(
    field: Field,
    vars: usize,
    leads: &[Vec<u32>],
) -> Result<LocalAlgebra, ArtinError> {
    let basis = staircase(vars, leads)?;
    let r = basis.len();
    let index = |m: &[u32]| basis.iter().position(|b| b.as_slice() == m);
    let mut table = vec![vec![field.zeros(r); r]; r];
    for (a, ma) in basis.iter().enumerate() {
        for (b, mb) in basis.iter().enumerate() {
            let prod: Vec<u32> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            if let Some(c) = index(&prod) {
                table[a][b][c] = field.one();
            }
        }
    }
    let names = var_names(vars);
    let labels = basis.iter().map(|m| monomial_label(m, &names)).collect();
    LocalAlgebra::from_table(field, table)?.with_labels(labels)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn staircase_order() {
        let s = staircase(2, &[vec![3, 0], vec![0, 2]]).unwrap();
        assert_eq!(
            s,
            vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1], vec![2, 1]]
        );
    }

    #[test]
    fn square_of_maximal_ideal_in_two_variables() {
        let q = Field::Rational;
        let a = LocalAlgebra::from_monomial_quotient(q, 2, &[vec![2, 0], vec![1, 1], vec![0, 2]]).unwrap();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.labels(), &["1", "x", "y"]);
        for x in 1..3 {
            for y in 1..3 {
                assert!(a.product(x, y).iter().all(|c| c.is_zero()));
            }
        }
        assert_eq!(a.socle_dim(), 2);
    }

    #[test]
    fn x3_y2_is_gorenstein() {
        let q = Field::Rational;
        let a = LocalAlgebra::from_monomial_quotient(q, 2, &[vec![3, 0], vec![0, 2]]).unwrap();
        assert_eq!(a.dim(), 6);
        assert_eq!(a.labels(), &["1", "x", "y", "x^2", "x*y", "x^2*y"]);
        let s = a.socle();
        assert_eq!(s.basis(), &[a.basis_vector(5)]);
    }

    #[test]
    fn errors() {
        let q = Field::Rational;
        assert!(matches!(
            LocalAlgebra::from_monomial_quotient(q, 2, &[vec![2, 0], vec![1, 1]]),
            Err(ArtinError::InfiniteStaircase { var: 1 })
        ));
        assert!(matches!(
            LocalAlgebra::from_monomial_quotient(q, 2, &[vec![0, 0]]),
            Err(ArtinError::UnitIdeal)
        ));
        assert!(LocalAlgebra::from_monomial_quotient(q, 2, &[vec![2]]).is_err());
        assert_eq!(LocalAlgebra::from_monomial_quotient(q, 0, &[]).unwrap().dim(), 1);
    }
}
