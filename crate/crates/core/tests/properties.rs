use chevalley::dunkl::DunklContext;
use chevalley::exactalg::{rat, Monomial, Polynomial, Rational, Variables};
use chevalley::linalg::Matrix;
use chevalley::liealg::make_sl;
use chevalley::rootsys::{
    act, build_root_system, generate_weyl, reynolds, CartanType, MultiplicityAssignment,
};
use chevalley::GradedSubspace;
use proptest::prelude::*;

const N: usize = 3;

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(a, b)| rat(a, b))
}

fn monomial(n: usize, max_exp: u32) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0..=max_exp, n).prop_map(|e| Monomial::from_exponents(&e))
}

fn poly(n: usize, max_exp: u32) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((monomial(n, max_exp), rational()), 0..6)
        .prop_map(move |terms| Polynomial::from_terms(n, terms).unwrap())
}

fn matrix(n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, n), n)
        .prop_map(|rows| Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(|x| rat(x, 1)).collect()).collect()))
}

fn point(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rational(), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(p in poly(N, 3), q in poly(N, 3), r in poly(N, 3)) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p * &Polynomial::one(N), p.clone());
    }

    #[test]
    fn evaluation_is_a_homomorphism(p in poly(N, 3), q in poly(N, 3), x in point(N)) {
        let pq = (&p * &q).evaluate(&x).unwrap();
        prop_assert_eq!(pq, p.evaluate(&x).unwrap() * q.evaluate(&x).unwrap());
    }

    #[test]
    fn division_round_trip(p in poly(N, 3), d in poly(N, 2)) {
        prop_assume!(!d.is_zero());
        let (quot, rem) = p.div_rem(&d).unwrap();
        prop_assert_eq!(&(&quot * &d) + &rem, p.clone());
        let lm = d.leading_term().unwrap().0.clone();
        for (m, _) in rem.terms() {
            prop_assert!(m.divide(&lm).is_none());
        }
        prop_assert_eq!((&p * &d).exact_divide(&d).unwrap(), p);
    }

    #[test]
    fn derivative_linear_and_leibniz(p in poly(N, 3), q in poly(N, 3), c in rational(), xi in point(N)) {
        let dp = p.directional_derivative(&xi).unwrap();
        let dq = q.directional_derivative(&xi).unwrap();
        let sum = (&p.scale(&c) + &q).directional_derivative(&xi).unwrap();
        prop_assert_eq!(sum, &dp.scale(&c) + &dq);
        let prod = (&p * &q).directional_derivative(&xi).unwrap();
        prop_assert_eq!(prod, &(&dp * &q) + &(&p * &dq));
    }

    #[test]
    fn derivation_leibniz(p in poly(N, 3), q in poly(N, 3), images in prop::collection::vec(poly(N, 1), N)) {
        let d = |f: &Polynomial| f.apply_derivation(&images).unwrap();
        prop_assert_eq!(d(&(&p * &q)), &(&d(&p) * &q) + &(&p * &d(&q)));
    }

    #[test]
    fn substitution_composes(p in poly(N, 3), m in matrix(N), n in matrix(N)) {
        let twice = p.linear_substitute(&m).unwrap().linear_substitute(&n).unwrap();
        prop_assert_eq!(twice, p.linear_substitute(&m.mul(&n)).unwrap());
    }

    #[test]
    fn substitution_is_a_ring_map(p in poly(N, 3), q in poly(N, 3), m in matrix(N)) {
        let s = |f: &Polynomial| f.linear_substitute(&m).unwrap();
        prop_assert_eq!(s(&(&p * &q)), &s(&p) * &s(&q));
        prop_assert_eq!(s(&(&p + &q)), &s(&p) + &s(&q));
    }

    #[test]
    fn parse_render_round_trip(p in poly(N, 4)) {
        let vars = Variables::indexed(N);
        let text = p.render(&vars);
        prop_assert_eq!(Polynomial::parse(&text, &vars).unwrap(), p);
    }

    #[test]
    fn subspace_independent_of_insertion_order(polys in prop::collection::vec(poly(N, 2), 1..6)) {
        let homog: Vec<Polynomial> = polys.iter().map(|p| p.homogeneous_component(2)).collect();
        let a = GradedSubspace::from_polys(N, 2, homog.iter().cloned()).unwrap();
        let b = GradedSubspace::from_polys(N, 2, homog.iter().rev().cloned()).unwrap();
        prop_assert_eq!(&a, &b);
        for p in &homog {
            prop_assert!(a.contains(p));
        }
    }

    #[test]
    fn reynolds_projects_onto_invariants(p in poly(2, 3)) {
        let rs = build_root_system(CartanType::B, 2).unwrap();
        let w = generate_weyl(&rs).unwrap();
        let r = reynolds(&w, &p).unwrap();
        prop_assert_eq!(reynolds(&w, &r).unwrap(), r.clone());
        for g in w.elements() {
            prop_assert_eq!(act(g, &r).unwrap(), r.clone());
        }
    }

    #[test]
    fn group_action_law(p in poly(2, 3)) {
        let rs = build_root_system(CartanType::G, 2).unwrap();
        let w = generate_weyl(&rs).unwrap();
        let (g, h) = (&w.elements()[3], &w.elements()[7]);
        prop_assert_eq!(act(g, &act(h, &p).unwrap()).unwrap(), act(&g.mul(h), &p).unwrap());
    }

    #[test]
    fn pairing_symmetric(p in poly(2, 3), q in poly(2, 3), long in 0i64..6, short in 0i64..6) {
        let rs = build_root_system(CartanType::B, 2).unwrap();
        let k = MultiplicityAssignment::long_short(rat(long, 2), rat(short, 3));
        let ctx = DunklContext::new(rs, &k).unwrap();
        prop_assert_eq!(ctx.pairing(&p, &q).unwrap(), ctx.pairing(&q, &p).unwrap());
    }

    #[test]
    fn dunkl_commute_on_random_input(p in poly(2, 4), k in 0i64..8) {
        let rs = build_root_system(CartanType::A, 2).unwrap();
        let ctx = DunklContext::new(rs, &MultiplicityAssignment::uniform(rat(k, 3))).unwrap();
        let c = ctx.commutator(&[rat(1, 1), rat(0, 1)], &[rat(1, 2), rat(-1, 1)], &p).unwrap();
        prop_assert!(c.is_zero());
    }

    #[test]
    fn adjoint_action_is_a_derivation(p in poly(3, 2), q in poly(3, 2), x in 0usize..3) {
        let g = make_sl(2).unwrap();
        let d = |f: &Polynomial| g.adjoint_derivation(x, f).unwrap();
        prop_assert_eq!(d(&(&p * &q)), &(&d(&p) * &q) + &(&p * &d(&q)));
    }
}
