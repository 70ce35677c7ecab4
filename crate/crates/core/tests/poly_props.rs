use proptest::prelude::*;

use trigon_core::poly::{monomials, parse_poly, resultant, MPoly, UPoly};
use trigon_core::Scalar;

fn small() -> impl Strategy<Value = Scalar> + Clone {
    (-9i64..10, 1i64..4).prop_map(|(n, d)| Scalar::from_ratio(n, d))
}

/// Dense polynomial in `nvars` variables of total degree at most `deg`.
fn mpoly(nvars: usize, deg: u32) -> impl Strategy<Value = MPoly> {
    let monos: Vec<Vec<u32>> = (0..=deg).flat_map(|d| monomials(nvars, d)).collect();
    proptest::collection::vec(small(), monos.len()).prop_map(move |cs| MPoly::from_terms(nvars, monos.clone().into_iter().zip(cs)))
}

fn upoly(max_deg: usize) -> impl Strategy<Value = UPoly> {
    proptest::collection::vec(small(), 1..=max_deg + 1).prop_map(UPoly::new)
}

fn point(n: usize) -> impl Strategy<Value = Vec<Scalar>> {
    proptest::collection::vec(small(), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(f in mpoly(3, 3), g in mpoly(3, 2), h in mpoly(3, 2)) {
        prop_assert_eq!(f.add(&g), g.add(&f));
        prop_assert_eq!(f.mul(&g), g.mul(&f));
        prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
        prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
        prop_assert!(f.sub(&f).is_zero());
    }

    #[test]
    fn evaluation_is_a_homomorphism(f in mpoly(3, 3), g in mpoly(3, 3), p in point(3)) {
        prop_assert_eq!(f.mul(&g).eval(&p), &f.eval(&p) * &g.eval(&p));
        prop_assert_eq!(f.add(&g).eval(&p), &f.eval(&p) + &g.eval(&p));
    }

    #[test]
    fn display_parses_back(f in mpoly(3, 4)) {
        let text = f.to_string();
        prop_assert_eq!(parse_poly(&text, &["x", "y", "z"]).unwrap(), f);
    }

    #[test]
    fn exact_division(f in mpoly(3, 3), g in mpoly(3, 2)) {
        prop_assume!(!g.is_zero());
        let prod = f.mul(&g);
        prop_assert!(prod.is_divisible_by(&g));
        let (q, r) = prod.div_rem(&g);
        prop_assert!(r.is_zero());
        prop_assert_eq!(q, f);
    }

    #[test]
    fn derivative_obeys_leibniz(f in mpoly(3, 3), g in mpoly(3, 3), v in 0usize..3) {
        let lhs = f.mul(&g).derivative(v);
        let rhs = f.derivative(v).mul(&g).add(&f.mul(&g.derivative(v)));
        prop_assert_eq!(lhs, rhs);
    }

    /// For `f = Π (y − a_i)` the resultant in `y` is `Π g(x, a_i)`.
    #[test]
    fn resultant_of_split_polynomial(roots in proptest::collection::vec(small(), 1..4), g in mpoly(2, 3)) {
        prop_assume!(g.degree_in(1) > 0);
        let y = MPoly::var(2, 1);
        let mut f = MPoly::one(2);
        for a in &roots {
            f = f.mul(&y.sub(&MPoly::constant(2, a.clone())));
        }
        let mut expected = MPoly::one(2);
        for a in &roots {
            expected = expected.mul(&g.partial_eval(&[None, Some(a.clone())]));
        }
        prop_assert_eq!(resultant(&f, &g, 1).unwrap(), expected);
    }

    #[test]
    fn resultant_vanishes_on_common_factor(a in mpoly(2, 1), f in mpoly(2, 2), g in mpoly(2, 2)) {
        prop_assume!(a.degree_in(1) > 0);
        let r = resultant(&a.mul(&f), &a.mul(&g), 1);
        if let Ok(r) = r {
            prop_assert!(r.is_zero());
        }
    }

    #[test]
    fn gcd_contains_common_factor(a in upoly(4), b in upoly(4), c in upoly(3)) {
        prop_assume!(!c.is_zero() && !a.is_zero() && !b.is_zero());
        let (ac, bc) = (a.mul(&c), b.mul(&c));
        let g = ac.gcd(&bc);
        prop_assert!(g.lc().is_one());
        prop_assert!(ac.divrem(&g).1.is_zero());
        prop_assert!(bc.divrem(&g).1.is_zero());
        prop_assert!(g.divrem(&c.monic()).1.is_zero());
        prop_assert_eq!(g, a.gcd(&b).mul(&c).monic());
    }

    #[test]
    fn squarefree_part_has_simple_roots(a in upoly(3), b in upoly(2)) {
        prop_assume!(a.degree().unwrap_or(0) > 0);
        let p = a.mul(&a).mul(&b);
        prop_assume!(!p.is_zero());
        let s = p.squarefree_part().unwrap();
        prop_assert!(s.gcd(&s.derivative()).degree() == Some(0));
        prop_assert!(p.divrem(&s).1.is_zero());
    }

    #[test]
    fn rational_roots_are_found(roots in proptest::collection::vec(small(), 1..5), tail in upoly(2)) {
        prop_assume!(!tail.is_zero());
        let mut p = tail.clone();
        for r in &roots {
            p = p.mul(&UPoly::linear_root(r));
        }
        let found = p.rational_roots().unwrap();
        for r in &roots {
            prop_assert!(found.contains(r));
            prop_assert!(p.eval(r).is_zero());
        }
    }

    #[test]
    fn interpolation_round_trip(p in upoly(5)) {
        let xs: Vec<Scalar> = (0..6).map(Scalar::from_int).collect();
        let ys: Vec<Scalar> = xs.iter().map(|x| p.eval(x)).collect();
        prop_assert_eq!(UPoly::interpolate(&xs, &ys), p);
    }
}
