//! A fixed catalog of small local algebras and embedded schemes, available
//! over any field, used by the test suites and the CLI fixtures.

use crate::artin::{LocalAlgebra, SemilocalAlgebra};
use crate::exactlin::{Field, Mat};
use crate::scheme::EmbeddedFiniteScheme;

fn mq(field: Field, vars: usize, leads: &[&[u32]]) -> LocalAlgebra {
    let leads: Vec<Vec<u32>> = leads.iter().map(|l| l.to_vec()).collect();
    LocalAlgebra::from_monomial_quotient(field, vars, &leads).expect("catalog algebra")
}

/// `k[x,y]/(x^2 - y^2, xy)` with basis `1, x, y, x^2`; Gorenstein but not monomial.
pub fn conic_pencil(field: Field) -> LocalAlgebra {
    let z = || field.zeros(4);
    let e = |i: usize| field.unit_vector(4, i);
    let table = vec![
        vec![e(0), e(1), e(2), e(3)],
        vec![e(1), e(3), z(), z()],
        vec![e(2), z(), e(3), z()],
        vec![e(3), z(), z(), z()],
    ];
    LocalAlgebra::from_table(field, table)
        .and_then(|a| a.with_labels(["1", "x", "y", "x^2"].map(String::from).to_vec()))
        .expect("catalog algebra")
}

/// Named local algebras of dimension at most 6.
pub fn local_algebras(field: Field) -> Vec<(&'static str, LocalAlgebra)> {
    let mut out = vec![("point", LocalAlgebra::point(field))];
    for (name, len) in [("jet2", 2), ("jet3", 3), ("jet4", 4), ("jet5", 5), ("jet6", 6)] {
        out.push((name, LocalAlgebra::jet(field, len).expect("jet")));
    }
    out.extend([
        ("fat-point-2", mq(field, 2, &[&[2, 0], &[1, 1], &[0, 2]])),
        ("x2-y2", mq(field, 2, &[&[2, 0], &[0, 2]])),
        (
            "fat-point-3",
            mq(field, 3, &[&[2, 0, 0], &[1, 1, 0], &[1, 0, 1], &[0, 2, 0], &[0, 1, 1], &[0, 0, 2]]),
        ),
        ("x3-xy-y2", mq(field, 2, &[&[3, 0], &[1, 1], &[0, 2]])),
        ("x3-y2", mq(field, 2, &[&[3, 0], &[0, 2]])),
        ("x3-xy-y3", mq(field, 2, &[&[3, 0], &[1, 1], &[0, 3]])),
        ("x2-xy-y3", mq(field, 2, &[&[2, 0], &[1, 1], &[0, 3]])),
        ("fat-point-4", {
            let mut leads = Vec::new();
            for i in 0..4 {
                for j in i..4 {
                    let mut m = vec![0u32; 4];
                    m[i] += 1;
                    m[j] += 1;
                    leads.push(m);
                }
            }
            LocalAlgebra::from_monomial_quotient(field, 4, &leads).expect("catalog algebra")
        }),
        ("m3-2", mq(field, 2, &[&[3, 0], &[2, 1], &[1, 2], &[0, 3]])),
        ("conic-pencil", conic_pencil(field)),
    ]);
    out
}

/// One scheme component: local algebra plus its `ambient x dim` evaluation matrix.
fn comp(a: LocalAlgebra, ev: &[&[i64]]) -> (LocalAlgebra, Mat) {
    let m = Mat::from_ints(a.field(), ev);
    (a, m)
}

fn scheme(n: usize, parts: Vec<(LocalAlgebra, Mat)>) -> EmbeddedFiniteScheme {
    let (algs, ev): (Vec<_>, Vec<_>) = parts.into_iter().unzip();
    EmbeddedFiniteScheme::new(n, SemilocalAlgebra::new(algs).expect("catalog"), ev).expect("catalog scheme")
}

fn points(field: Field, n: usize, pts: &[&[i64]]) -> EmbeddedFiniteScheme {
    let pts = pts.iter().map(|p| p.iter().map(|&v| field.int(v)).collect()).collect();
    EmbeddedFiniteScheme::reduced_points(field, n, pts).expect("catalog points")
}

/// The fat point `Spec k[x,y]/(x,y)^2` in `P^2`, with `X0, X1, X2 ↦ 1, x, y`.
pub fn fat_point_p2(field: Field) -> EmbeddedFiniteScheme {
    scheme(3, vec![comp(mq(field, 2, &[&[2, 0], &[1, 1], &[0, 2]]), &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])])
}

/// `Spec k[x,y,z]/(x,y,z)^2` in `P^3`, socle dimension 3.
pub fn triple_socle_p3(field: Field) -> EmbeddedFiniteScheme {
    let a = local_algebras(field).into_iter().find(|(n, _)| *n == "fat-point-3").expect("catalog").1;
    scheme(4, vec![comp(a, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]])])
}

/// Named embedded schemes, all of degree at most 6.
pub fn schemes(field: Field) -> Vec<(&'static str, EmbeddedFiniteScheme)> {
    let fat2 = || mq(field, 2, &[&[2, 0], &[1, 1], &[0, 2]]);
    let jet = |n| LocalAlgebra::jet(field, n).expect("jet");
    let pt = || LocalAlgebra::point(field);
    vec![
        ("fat-point-p2", fat_point_p2(field)),
        ("triple-socle-p3", triple_socle_p3(field)),
        ("jet3-conic", scheme(3, vec![comp(jet(3), &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])])),
        ("jet3-line", scheme(2, vec![comp(jet(3), &[&[1, 0, 0], &[0, 1, 0]])])),
        ("two-points-p2", points(field, 3, &[&[1, 0, 0], &[0, 1, 0]])),
        ("three-points-p2", points(field, 3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])),
        ("four-points-p2", points(field, 3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]])),
        (
            "fat-point-and-point-p3",
            scheme(
                4,
                vec![
                    comp(fat2(), &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]),
                    comp(pt(), &[&[0], &[0], &[0], &[1]]),
                ],
            ),
        ),
        (
            "degenerate-fat-point-p3",
            scheme(4, vec![comp(fat2(), &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[0, 1, 0]])]),
        ),
        (
            "x3-xy-y2-p2",
            scheme(3, vec![comp(mq(field, 2, &[&[3, 0], &[1, 1], &[0, 2]]), &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]])]),
        ),
        (
            "x2-xy-y3-p3",
            scheme(
                4,
                vec![comp(
                    mq(field, 2, &[&[2, 0], &[1, 1], &[0, 3]]),
                    &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]],
                )],
            ),
        ),
        (
            "x2-y2-p3",
            scheme(
                4,
                vec![comp(
                    mq(field, 2, &[&[2, 0], &[0, 2]]),
                    &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]],
                )],
            ),
        ),
        (
            "three-components-p4",
            scheme(
                5,
                vec![
                    comp(fat2(), &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[0, 0, 0], &[0, 0, 0]]),
                    comp(jet(2), &[&[0, 0], &[0, 0], &[0, 0], &[1, 0], &[0, 1]]),
                    comp(pt(), &[&[1], &[1], &[1], &[1], &[1]]),
                ],
            ),
        ),
        (
            "two-fat-points-p5",
            scheme(
                6,
                vec![
                    comp(fat2(), &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[0, 0, 0], &[0, 0, 0], &[0, 0, 0]]),
                    comp(fat2(), &[&[0, 0, 0], &[0, 0, 0], &[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]),
                ],
            ),
        ),
    ]
}

/// Looks up a bundled scheme by name.
pub fn scheme_named(field: Field, name: &str) -> Option<EmbeddedFiniteScheme> {
    schemes(field).into_iter().find(|(n, _)| *n == name).map(|(_, r)| r)
}
