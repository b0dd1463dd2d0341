use flagflow::polyalg::{rat, Poly, Rational, Var};
use flagflow::QPoly;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| rat(n, d))
}

fn poly3() -> impl Strategy<Value = QPoly> {
    prop::collection::vec((rational(), [0u32..4, 0u32..4, 0u32..4]), 0..7)
        .prop_map(|terms| Poly::from_terms(3, terms).unwrap())
}

fn point3() -> impl Strategy<Value = [Rational; 3]> {
    [rational(), rational(), rational()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn mul_is_eval_homomorphism(p in poly3(), q in poly3(), pt in point3()) {
        let pq = &p * &q;
        prop_assert_eq!(pq.eval(&pt).unwrap(), p.eval(&pt).unwrap() * q.eval(&pt).unwrap());
        if !p.is_zero() && !q.is_zero() {
            prop_assert_eq!(pq.degree(), Some(p.degree().unwrap() + q.degree().unwrap()));
        }
    }

    #[test]
    fn add_sub_are_eval_homomorphisms(p in poly3(), q in poly3(), pt in point3()) {
        let (a, b) = (p.eval(&pt).unwrap(), q.eval(&pt).unwrap());
        prop_assert_eq!((&p + &q).eval(&pt).unwrap(), &a + &b);
        prop_assert_eq!((&p - &q).eval(&pt).unwrap(), a - b);
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn substitute_z_commutes_with_eval(p in poly3(), x in rational(), y in rational()) {
        let z = rat(1, 1) - &x - &y;
        let lhs = p.substitute_z().unwrap().eval(&[x.clone(), y.clone()]).unwrap();
        prop_assert_eq!(lhs, p.eval(&[x, y, z]).unwrap());
    }

    #[test]
    fn text_round_trip(p in poly3()) {
        let s = p.to_string();
        prop_assert_eq!(Poly::parse(&s, 3).unwrap(), p);
    }

    #[test]
    fn diff_matches_finite_differences(
        p in poly3(),
        pt in [0.05f64..0.95, 0.05f64..0.95, 0.05f64..0.95],
        k in 0usize..3,
    ) {
        let var = Var::ALL[k];
        let d = p.diff(var).unwrap().to_real::<f64>().eval(&pt).unwrap();
        let f = p.to_real::<f64>();
        let h = 1e-5;
        let (mut a, mut b) = (pt, pt);
        a[k] += h;
        b[k] -= h;
        let fd = (f.eval(&a).unwrap() - f.eval(&b).unwrap()) / (2.0 * h);
        prop_assert!((fd - d).abs() <= 1e-6 * d.abs().max(1.0), "{} vs {}", fd, d);
    }
}
