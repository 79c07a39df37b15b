use proptest::prelude::*;

use socle::artin::ProductIdeal;
use socle::exactlin::{enum_subspaces, gaussian_binomial, preimage, Field, Mat, Subspace};
use socle::json::{parse_scheme, scheme_digest, scheme_to_json};
use socle::oracle::{self, literal::literal_shrink, raw, Budget};
use socle::reduce::{can_shrink, prune_minimal, reduce_to_socdim};
use socle::sample::sample_scheme;
use socle::scheme::{validate_scheme, EmbeddedFiniteScheme};

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::Rational),
        Just(Field::prime(2).unwrap()),
        Just(Field::prime(3).unwrap()),
        Just(Field::prime(7).unwrap()),
        Just(Field::prime(2_147_483_647).unwrap()),
    ]
}

fn mat(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Mat> {
    (field(), 0..=max_rows, 1..=max_cols).prop_flat_map(|(f, r, c)| {
        prop::collection::vec(prop::collection::vec(prop_oneof![Just(0i64), -5i64..=5], c), r)
            .prop_map(move |rows| Mat::from_rows(f, c, rows.into_iter().map(|r| r.into_iter().map(|v| f.int(v)).collect()).collect()).unwrap())
    })
}

/// `count` subspaces of a common space.
fn subspaces(count: usize) -> impl Strategy<Value = Vec<Subspace>> {
    (field(), 1usize..=5).prop_flat_map(move |(f, n)| {
        prop::collection::vec(prop::collection::vec(prop::collection::vec(-3i64..=3, n), 0..=n), count).prop_map(
            move |sets| {
                sets.into_iter()
                    .map(|rows| Subspace::span(f, n, rows.into_iter().map(|r| r.into_iter().map(|v| f.int(v)).collect())).unwrap())
                    .collect()
            },
        )
    })
}

fn scheme(f: Field) -> impl Strategy<Value = EmbeddedFiniteScheme> {
    (1usize..=5, 2usize..=5, any::<u64>()).prop_filter_map("sampler gave up", move |(d, n, seed)| sample_scheme(f, d, n, seed).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rank_nullity(m in mat(6, 6)) {
        prop_assert_eq!(m.rank() + m.kernel().dim(), m.cols());
        prop_assert_eq!(m.image().dim(), m.rank());
        prop_assert_eq!(m.transpose().rank(), m.rank());
        for v in m.kernel().basis() {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn kernel_is_annihilator_of_row_space(m in mat(5, 5)) {
        prop_assert_eq!(m.kernel(), m.row_space().annihilator());
    }

    #[test]
    fn double_annihilator(us in subspaces(1)) {
        let u = &us[0];
        prop_assert_eq!(&u.annihilator().annihilator(), u);
        prop_assert_eq!(u.annihilator().dim() + u.dim(), u.ambient_dim());
    }

    #[test]
    fn sum_and_intersection(us in subspaces(2)) {
        let (a, b) = (&us[0], &us[1]);
        let s = a.sum(b).unwrap();
        let i = a.intersect(b).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), a.dim() + b.dim());
        prop_assert!(s.contains(a) && s.contains(b));
        prop_assert!(a.contains(&i) && b.contains(&i));
    }

    #[test]
    fn modular_law(us in subspaces(3)) {
        let c = &us[2];
        let a = us[0].intersect(c).unwrap();
        let b = &us[1];
        prop_assert_eq!(a.sum(&b.intersect(c).unwrap()).unwrap(), a.sum(b).unwrap().intersect(c).unwrap());
    }

    #[test]
    fn preimage_maps_into_target(m in mat(4, 4), seed in any::<u64>()) {
        let f = m.field();
        let rows: Vec<Vec<_>> = (0..2).map(|i| (0..m.rows()).map(|j| f.int(((seed >> (4 * (i * 4 + j))) & 3) as i64)).collect()).collect();
        let u = Subspace::span(f, m.rows(), rows).unwrap();
        let pre = preimage(&m, &u).unwrap();
        for v in pre.basis() {
            prop_assert!(u.contains_vector(&m.mul_vec(v).unwrap()));
        }
        prop_assert!(pre.contains(&m.kernel()));
    }

    #[test]
    fn complete_extends(us in subspaces(1), extra in 0usize..=5) {
        let u = &us[0];
        let d = (u.dim() + extra).min(u.ambient_dim());
        let c = u.complete(d).unwrap();
        prop_assert_eq!(c.dim(), d);
        prop_assert!(c.contains(u));
    }

    #[test]
    fn gaussian_counts(p in prop_oneof![Just(2u64), Just(3), Just(5)], n in 0usize..=4, k in 0usize..=4) {
        prop_assume!(k <= n);
        let f = Field::prime(p).unwrap();
        let structured = enum_subspaces(&Subspace::full(f, n), k).unwrap().count() as u128;
        let brute = raw::subspaces(p as u32, n, k, &mut Budget::new(u64::MAX)).unwrap().len() as u128;
        prop_assert_eq!(structured, gaussian_binomial(n, k, p));
        prop_assert_eq!(brute, structured);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn socle_properties(r in scheme(Field::Rational)) {
        for a in r.algebra().components() {
            let s = a.socle();
            prop_assert!(s.dim() >= 1);
            prop_assert!(a.is_ideal(&s));
            let m = a.maximal_ideal();
            for v in s.basis() {
                for w in m.basis() {
                    prop_assert!(a.mul(v, w).iter().all(|x| x.is_zero()));
                }
            }
        }
    }

    #[test]
    fn subschemes_shrink_spans(r in scheme(Field::prime(3).unwrap())) {
        let span = r.span();
        for p in r.support_points() {
            prop_assert!(span.contains(&p));
        }
        for (i, a) in r.algebra().components().iter().enumerate() {
            let s = a.socle().basis()[0].clone();
            if r.degree() == 1 {
                break;
            }
            let sub = r.codim1_subscheme(i, &s).unwrap();
            prop_assert_eq!(sub.degree() + 1, r.degree());
            prop_assert!(span.contains(&sub.span()));
            let ideal = ProductIdeal::in_component(r.algebra(), i, a.socle()).unwrap();
            if ideal.dim() < r.degree() {
                prop_assert!(sub.span().contains(&r.subscheme(&ideal).unwrap().span()));
            }
        }
    }

    #[test]
    fn json_round_trip(r in scheme(Field::Rational)) {
        let text = serde_json::to_string(&scheme_to_json(&r)).unwrap();
        let back = parse_scheme(&text, None).unwrap().scheme;
        prop_assert_eq!(&back, &r);
        prop_assert_eq!(scheme_digest(&back), scheme_digest(&r));
        prop_assert!(validate_scheme(&back).is_ok());
    }

    #[test]
    fn veronese_keeps_degree(r in scheme(Field::prime(5).unwrap()), d in 1usize..=2) {
        let v = r.veronese(d).unwrap();
        prop_assert_eq!(v.degree(), r.degree());
        prop_assert_eq!(v.socdim(), r.socdim());
    }

    #[test]
    fn reduction_postconditions(r in scheme(Field::Rational), k in 1usize..=3, seed in any::<u64>()) {
        let span = r.span();
        prop_assume!(k <= span.dim());
        let e = oracle::sample_planes(&span, k, 1, seed).remove(0);
        prop_assert_eq!(oracle::reduce_instance_violation(&r, &e), None);
        let red = reduce_to_socdim(&r, &e).unwrap();
        prop_assert!(red.trace.steps.len() < r.degree());
        let again = reduce_to_socdim(&r, &e).unwrap();
        prop_assert_eq!(red.trace, again.trace);
        let pruned = prune_minimal(&r, &e).unwrap();
        prop_assert!(pruned.scheme.socdim() <= k);
        prop_assert!(pruned.scheme.span().contains(&e));
    }

    #[test]
    fn literal_argument_agrees(r in scheme(Field::prime(3).unwrap()), k in 1usize..=2, seed in any::<u64>()) {
        let span = r.span();
        prop_assume!(k <= span.dim());
        let planes = oracle::raw_planes(&span, k, &mut Budget::new(u64::MAX)).unwrap();
        let e = &planes[(seed % planes.len() as u64) as usize];
        for (i, a) in r.algebra().components().iter().enumerate() {
            if a.socle_dim() <= k {
                continue;
            }
            let literal = literal_shrink(&r, e, i).unwrap();
            let solved = can_shrink(&r, e, i).unwrap();
            prop_assert!(literal.is_some() && solved.is_some());
            for s in [literal.unwrap(), solved.unwrap().socle_element] {
                prop_assert!(r.codim1_subscheme(i, &s).unwrap().span().contains(e));
            }
        }
    }
}
