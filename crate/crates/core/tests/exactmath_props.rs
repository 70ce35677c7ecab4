use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use trigon_core::exactmath::{echelon, kernel_basis, rank, FieldKind, Mat, Scalar, Subspace};

fn rational() -> impl Strategy<Value = Scalar> + Clone {
    (-50i64..50, 1i64..12).prop_map(|(n, d)| Scalar::from_ratio(n, d))
}

fn big_rational() -> impl Strategy<Value = Scalar> + Clone {
    (any::<i64>(), 1i64..i64::MAX).prop_map(|(n, d)| Scalar::from_ratio(n, d))
}

fn quadratic() -> impl Strategy<Value = Scalar> + Clone {
    (-20i64..20, 1i64..6, -20i64..20, 1i64..6).prop_map(|(a, da, b, db)| {
        Scalar::quadratic(
            BigRational::new(BigInt::from(a), BigInt::from(da)),
            BigRational::new(BigInt::from(b), BigInt::from(db)),
            -7,
        )
    })
}

const P: u64 = 1_000_003;

fn prime() -> impl Strategy<Value = Scalar> + Clone {
    (0i64..P as i64).prop_map(|v| Scalar::prime(v, P))
}

fn field_laws(a: &Scalar, b: &Scalar, c: &Scalar) -> Result<(), TestCaseError> {
    prop_assert_eq!(a + b, b + a);
    prop_assert_eq!(a * b, b * a);
    prop_assert_eq!(&(a + b) + c, a + &(b + c));
    prop_assert_eq!(&(a * b) * c, a * &(b * c));
    prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
    prop_assert_eq!(&(a - b) + b, a.clone());
    if !b.is_zero() {
        prop_assert_eq!(&(a / b) * b, a.clone());
        prop_assert_eq!(b * &b.inv().unwrap(), Scalar::one());
    }
    Ok(())
}

fn matrix(rows: usize, cols: usize, entries: impl Strategy<Value = Scalar> + Clone) -> impl Strategy<Value = Mat> {
    proptest::collection::vec(proptest::collection::vec(entries, cols), rows).prop_map(move |r| Mat::from_rows(r, cols))
}

/// Matrix of rank at most `r`: a product of `rows × r` and `r × cols`
/// factors, so kernels are large and elimination is non-trivial.
fn low_rank(rows: usize, cols: usize, r: usize) -> impl Strategy<Value = Mat> {
    (matrix(rows, r, big_rational()), matrix(r, cols, rational())).prop_map(|(a, b)| a.mul(&b))
}

/// As [`low_rank`] with small entries throughout.
fn low_rank_small(rows: usize, cols: usize, r: usize) -> impl Strategy<Value = Mat> {
    (matrix(rows, r, rational()), matrix(r, cols, rational())).prop_map(|(a, b)| a.mul(&b))
}

fn check_kernel(m: &Mat) -> Result<(), TestCaseError> {
    let ker = kernel_basis(m).unwrap();
    prop_assert_eq!(rank(m) + ker.len(), m.cols());
    for v in &ker {
        prop_assert!(m.mul_vec(v).iter().all(Scalar::is_zero));
    }
    prop_assert_eq!(echelon(ker.clone(), m.cols()), ker);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_field_laws(a in rational(), b in rational(), c in big_rational()) {
        field_laws(&a, &b, &c)?;
    }

    #[test]
    fn quadratic_field_laws(a in quadratic(), b in quadratic(), c in quadratic()) {
        field_laws(&a, &b, &c)?;
        prop_assert_eq!(a.kind(), FieldKind::Quadratic(-7));
        let r = Scalar::sqrt_of(-7);
        prop_assert_eq!(&r * &r, Scalar::from_int(-7).embed(FieldKind::Quadratic(-7)));
    }

    #[test]
    fn prime_field_laws(a in prime(), b in prime(), c in prime()) {
        field_laws(&a, &b, &c)?;
    }

    #[test]
    fn rational_square_roots(n in -1000i64..1000, d in 1i64..100) {
        let q = Scalar::from_ratio(n, d);
        let sq = &q * &q;
        let r = sq.sqrt().unwrap();
        prop_assert_eq!(&r * &r, sq);
    }

    #[test]
    fn small_kernels(m in matrix(4, 6, rational())) {
        check_kernel(&m)?;
    }

    #[test]
    fn tall_low_rank_kernels(m in low_rank(60, 8, 5)) {
        check_kernel(&m)?;
        prop_assert!(kernel_basis(&m).unwrap().len() >= 3);
    }

}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn wide_low_rank_kernels(m in low_rank(30, 100, 12)) {
        check_kernel(&m)?;
        prop_assert!(kernel_basis(&m).unwrap().len() >= 88);
    }

    #[test]
    fn echelon_depends_only_on_the_span(
        m in low_rank_small(30, 90, 6),
        mix in matrix(30, 30, rational()),
    ) {
        // rows of mix·m span a subspace of the rows of m
        let rows = m.to_rows();
        let mixed = mix.mul(&m).to_rows();
        let a = Subspace::span(rows.clone(), 90);
        let b = Subspace::span(mixed.clone(), 90);
        prop_assert!(a.contains_subspace(&b));
        if rank(&mix) == 30 {
            prop_assert_eq!(echelon(rows, 90), echelon(mixed, 90));
        }
    }

}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inverse_and_solve(m in matrix(5, 5, rational()), b in proptest::collection::vec(rational(), 5)) {
        if let Some(inv) = m.inverse() {
            prop_assert_eq!(m.mul(&inv), Mat::identity(5));
            let x = m.solve(&b).unwrap();
            prop_assert_eq!(m.mul_vec(&x), b);
            prop_assert!(!m.det().is_zero());
        } else {
            prop_assert!(m.det().is_zero());
        }
    }
}
