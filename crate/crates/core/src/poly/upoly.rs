use std::fmt;

use crate::error::{Error, Result};
use crate::exactmath::{FieldKind, Scalar};

/// Dense univariate polynomial, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly {
    coeffs: Vec<Scalar>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> UPoly {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_i64(cs: &[i64]) -> UPoly {
        UPoly::new(cs.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    pub fn zero() -> UPoly {
        UPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Scalar) -> UPoly {
        UPoly::new(vec![c])
    }

    /// `x − a`.
    pub fn linear_root(a: &Scalar) -> UPoly {
        UPoly::new(vec![-a, Scalar::one()])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn field_kind(&self) -> Option<FieldKind> {
        FieldKind::of_all(&self.coeffs)
    }

    pub fn add(&self, other: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UPoly::new(
            (0..n)
                .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                    (Some(a), Some(b)) => a + b,
                    (Some(a), None) | (None, Some(a)) => a.clone(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &UPoly) -> UPoly {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &UPoly) -> UPoly {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        UPoly::new(out)
    }

    pub fn pow(&self, k: u32) -> UPoly {
        let mut acc = UPoly::constant(Scalar::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn divrem(&self, divisor: &UPoly) -> (UPoly, UPoly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let inv = divisor.lc().inv().expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut quot = vec![Scalar::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    rem[k + j] = &rem[k + j] - &(&c * b);
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (UPoly::new(quot), UPoly::new(rem))
    }

    pub fn monic(&self) -> UPoly {
        match self.lc().inv() {
            Some(inv) => self.scale(&inv),
            None => UPoly::zero(),
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.field_kind() == Some(FieldKind::Rational) && other.field_kind() == Some(FieldKind::Rational) {
            if let Some(g) = super::modgcd::rational_gcd(self, other) {
                return g;
            }
        }
        let (mut a, mut b) = (self.monic(), other.monic());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r.monic();
        }
        a
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &Scalar::from_int(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// `u / gcd(u, u′)`, made monic.
    pub fn squarefree_part(&self) -> Result<UPoly> {
        if self.is_zero() {
            return Err(Error::InvalidInput("square-free part of the zero polynomial".into()));
        }
        let g = self.gcd(&self.derivative());
        Ok(self.divrem(&g).0.monic())
    }

    /// Multiplicity of `a` as a root.
    pub fn root_multiplicity(&self, a: &Scalar) -> usize {
        let lin = UPoly::linear_root(a);
        let mut u = self.clone();
        let mut k = 0;
        while !u.is_zero() {
            let (q, r) = u.divrem(&lin);
            if !r.is_zero() {
                break;
            }
            u = q;
            k += 1;
        }
        k
    }

    /// Rational roots, each repeated according to its multiplicity, sorted
    /// ascending.
    pub fn rational_roots(&self) -> Result<Vec<Scalar>> {
        Ok(self
            .rational_roots_with_multiplicity()?
            .into_iter()
            .flat_map(|(r, m)| std::iter::repeat_n(r, m))
            .collect())
    }

    /// Distinct rational roots with multiplicities, sorted ascending.
    pub fn rational_roots_with_multiplicity(&self) -> Result<Vec<(Scalar, usize)>> {
        if self.is_zero() {
            return Err(Error::InvalidInput("roots of the zero polynomial".into()));
        }
        let rats: Option<Vec<_>> = self.coeffs.iter().map(Scalar::to_rational).collect();
        let rats = rats.ok_or_else(|| Error::InvalidInput("rational roots need rational coefficients".into()))?;
        let mut roots = super::roots::rational_roots_of(&rats);
        roots.sort();
        Ok(roots
            .into_iter()
            .map(|r| {
                let s = Scalar::rational(r);
                let m = self.root_multiplicity(&s);
                (s, m)
            })
            .collect())
    }

    /// Distinct roots in the coefficient field, sorted for determinism.
    /// Supported for rational and prime-field coefficients.
    pub fn roots(&self) -> Result<Vec<Scalar>> {
        match self.field_kind() {
            Some(FieldKind::Prime(p)) => {
                let f: Vec<u64> = self
                    .coeffs
                    .iter()
                    .map(|c| match c.embed(FieldKind::Prime(p)) {
                        Scalar::Prime { value, .. } => value,
                        _ => unreachable!(),
                    })
                    .collect();
                if f.is_empty() {
                    return Err(Error::InvalidInput("roots of the zero polynomial".into()));
                }
                let mut r = super::roots::roots_mod_p(&f, p);
                r.sort_unstable();
                Ok(r.into_iter().map(|v| Scalar::Prime { value: v, p }).collect())
            }
            Some(_) => Ok(self
                .rational_roots_with_multiplicity()?
                .into_iter()
                .map(|(r, _)| r)
                .collect()),
            None => Err(Error::InvalidInput("mixed coefficient fields".into())),
        }
    }

    /// Newton interpolation through `(xs[i], ys[i])` with distinct `xs`.
    pub fn interpolate(xs: &[Scalar], ys: &[Scalar]) -> UPoly {
        let n = xs.len();
        let mut dd: Vec<Scalar> = ys.to_vec();
        for j in 1..n {
            for i in (j..n).rev() {
                let num = &dd[i] - &dd[i - 1];
                let den = &xs[i] - &xs[i - j];
                dd[i] = &num / &den;
            }
        }
        let mut acc = UPoly::zero();
        for i in (0..n).rev() {
            acc = acc.mul(&UPoly::linear_root(&xs[i])).add(&UPoly::constant(dd[i].clone()));
        }
        acc
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = super::MPoly::from_upoly(self, 1, 0);
        write!(f, "{}", m.to_string_with(&["x"]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squarefree_examples() {
        let u = UPoly::from_i64(&[1, -2, 1]);
        assert_eq!(u.squarefree_part().unwrap(), UPoly::from_i64(&[-1, 1]));
        let v = UPoly::from_i64(&[1, 0, 1]);
        assert_eq!(v.squarefree_part().unwrap(), v);
        let w = UPoly::from_i64(&[0, 0, -1, 1]);
        assert_eq!(w.squarefree_part().unwrap(), UPoly::from_i64(&[0, -1, 1]));
        assert!(UPoly::zero().squarefree_part().is_err());
    }

    #[test]
    fn rational_root_examples() {
        let r = UPoly::from_i64(&[-1, 0, 1]).rational_roots().unwrap();
        assert_eq!(r, vec![Scalar::from_int(-1), Scalar::from_int(1)]);
        assert!(UPoly::from_i64(&[1, 0, 1]).rational_roots().unwrap().is_empty());
        let r = UPoly::from_i64(&[0, 1, -3, 2]).rational_roots().unwrap();
        assert_eq!(r, vec![Scalar::zero(), Scalar::from_ratio(1, 2), Scalar::one()]);
        let r = UPoly::from_i64(&[0, 0, -1, 1]).rational_roots().unwrap();
        assert_eq!(r, vec![Scalar::zero(), Scalar::zero(), Scalar::one()]);
        assert!(UPoly::zero().rational_roots().is_err());
    }

    #[test]
    fn roots_with_large_coefficients() {
        // (x − 123456789/1000) (7x + 10^20)(x² + 3)
        let a = Scalar::from_ratio(123_456_789, 1000);
        let big = Scalar::from_bigint(num_bigint::BigInt::from(10u32).pow(20));
        let u = UPoly::linear_root(&a)
            .mul(&UPoly::new(vec![big.clone(), Scalar::from_int(7)]))
            .mul(&UPoly::from_i64(&[3, 0, 1]));
        let r = u.rational_roots().unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.contains(&a));
        assert!(r.contains(&(-&big / &Scalar::from_int(7))));
    }

    #[test]
    fn prime_field_roots() {
        let p = 101;
        let u = UPoly::new(vec![Scalar::prime(-6, p), Scalar::prime(11, p), Scalar::prime(-6, p), Scalar::prime(1, p)]);
        let r = u.roots().unwrap();
        assert_eq!(r, vec![Scalar::prime(1, p), Scalar::prime(2, p), Scalar::prime(3, p)]);
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let u = UPoly::from_i64(&[3, -1, 0, 2]);
        let xs: Vec<Scalar> = (0..4).map(Scalar::from_int).collect();
        let ys: Vec<Scalar> = xs.iter().map(|x| u.eval(x)).collect();
        assert_eq!(UPoly::interpolate(&xs, &ys), u);
    }
}
