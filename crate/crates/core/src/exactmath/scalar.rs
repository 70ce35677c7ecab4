//! Exact field elements.
//!
//! A [`Scalar`] is a rational number, an element `a + b·√δ` of a quadratic
//! extension of the rationals, or a residue modulo an odd prime. Rational
//! values act as constants of every field: combining a rational with a
//! quadratic or prime-field element promotes it first. Combining elements of
//! two different non-rational fields is a programming error and panics;
//! matrix-level entry points check compatibility up front and return
//! [`Error::InvalidInput`](crate::Error::InvalidInput) instead.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

/// The field a scalar lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FieldKind {
    Rational,
    /// `Q(√δ)` with `δ` a non-square integer.
    Quadratic(i64),
    /// `Z/pZ`.
    Prime(u64),
}

impl FieldKind {
    /// The smallest field containing both, if there is one.
    pub fn join(self, other: FieldKind) -> Option<FieldKind> {
        match (self, other) {
            (FieldKind::Rational, k) | (k, FieldKind::Rational) => Some(k),
            (a, b) if a == b => Some(a),
            _ => None,
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            FieldKind::Prime(p) => p,
            _ => 0,
        }
    }

    /// Joins the kinds of all given scalars.
    pub fn of_all<'a>(items: impl IntoIterator<Item = &'a Scalar>) -> Option<FieldKind> {
        let mut kind = FieldKind::Rational;
        for s in items {
            kind = kind.join(s.kind())?;
        }
        Some(kind)
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rational => write!(f, "Q"),
            FieldKind::Quadratic(d) => write!(f, "Q(sqrt({d}))"),
            FieldKind::Prime(p) => write!(f, "Fp {p}"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Quadratic {
        a: BigRational,
        b: BigRational,
        delta: i64,
    },
    Prime {
        value: u64,
        p: u64,
    },
}

pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn invmod(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        return None;
    }
    Some(powmod(a, p - 2, p))
}

fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// Splits a nonzero integer `n` as `s² · r` with `r` free of square factors
/// below `bound`. Returns `(s, r)`.
pub fn square_part(n: &BigInt, bound: u64) -> (BigInt, BigInt) {
    let mut rest = n.clone();
    let mut s = BigInt::one();
    let mut q: u64 = 2;
    while q <= bound {
        let qq = BigInt::from(q * q);
        while (&rest % &qq).is_zero() {
            rest /= &qq;
            s *= q;
        }
        if BigInt::from(q * q) > rest.abs() {
            break;
        }
        q += if q == 2 { 1 } else { 2 };
    }
    let r = rest.abs().sqrt();
    if &r * &r == rest.abs() && !rest.is_zero() {
        s *= &r;
        rest = if rest.is_negative() { -BigInt::one() } else { BigInt::one() };
    }
    (s, rest)
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Scalar {
        Scalar::Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Scalar {
        Scalar::Rational(BigRational::from_integer(n))
    }

    /// `num / den`; panics on a zero denominator.
    pub fn from_ratio(num: i64, den: i64) -> Scalar {
        Scalar::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn rational(q: BigRational) -> Scalar {
        Scalar::Rational(q)
    }

    pub fn prime(value: i64, p: u64) -> Scalar {
        let v = value.rem_euclid(p as i64) as u64;
        Scalar::Prime { value: v, p }
    }

    pub fn quadratic(a: BigRational, b: BigRational, delta: i64) -> Scalar {
        Scalar::Quadratic { a, b, delta }
    }

    /// `√δ` as an element of `Q(√δ)`.
    pub fn sqrt_of(delta: i64) -> Scalar {
        Scalar::Quadratic {
            a: BigRational::zero(),
            b: BigRational::one(),
            delta,
        }
    }

    pub fn kind(&self) -> FieldKind {
        match self {
            Scalar::Rational(_) => FieldKind::Rational,
            Scalar::Quadratic { delta, .. } => FieldKind::Quadratic(*delta),
            Scalar::Prime { p, .. } => FieldKind::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Quadratic { a, b, .. } => a.is_zero() && b.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Quadratic { a, b, .. } => a.is_one() && b.is_zero(),
            Scalar::Prime { value, .. } => *value == 1,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            _ => None,
        }
    }

    /// Rational value of a quadratic element with zero irrational part.
    pub fn to_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Rational(q) => Some(q.clone()),
            Scalar::Quadratic { a, b, .. } if b.is_zero() => Some(a.clone()),
            _ => None,
        }
    }

    /// Promotes into the field `kind`. Panics when impossible.
    pub fn embed(&self, kind: FieldKind) -> Scalar {
        match (self, kind) {
            (s, k) if s.kind() == k => s.clone(),
            (Scalar::Rational(q), FieldKind::Quadratic(delta)) => Scalar::Quadratic {
                a: q.clone(),
                b: BigRational::zero(),
                delta,
            },
            (Scalar::Rational(q), FieldKind::Prime(p)) => {
                let n = bigint_mod(q.numer(), p);
                let d = bigint_mod(q.denom(), p);
                let dinv = invmod(d, p).expect("denominator divisible by the field characteristic");
                Scalar::Prime {
                    value: mulmod(n, dinv, p),
                    p,
                }
            }
            (s, k) => panic!("cannot embed {} into {}", s.kind(), k),
        }
    }

    fn pair<'a>(a: &'a Scalar, b: &'a Scalar) -> (std::borrow::Cow<'a, Scalar>, std::borrow::Cow<'a, Scalar>) {
        use std::borrow::Cow;
        if a.kind() == b.kind() {
            return (Cow::Borrowed(a), Cow::Borrowed(b));
        }
        let k = a
            .kind()
            .join(b.kind())
            .unwrap_or_else(|| panic!("incompatible fields {} and {}", a.kind(), b.kind()));
        let a2 = if a.kind() == k { Cow::Borrowed(a) } else { Cow::Owned(a.embed(k)) };
        let b2 = if b.kind() == k { Cow::Borrowed(b) } else { Cow::Owned(b.embed(k)) };
        (a2, b2)
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Quadratic { a, b, delta } => {
                let norm = a * a - b * b * BigRational::from_integer(BigInt::from(*delta));
                Scalar::Quadratic {
                    a: a / &norm,
                    b: -(b / &norm),
                    delta: *delta,
                }
            }
            Scalar::Prime { value, p } => Scalar::Prime {
                value: invmod(*value, *p)?,
                p: *p,
            },
        })
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// A square root inside the element's own field, if one exists.
    pub fn sqrt(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(q) => rational_sqrt(q).map(Scalar::Rational),
            Scalar::Quadratic { a, b, delta } => {
                let d = BigRational::from_integer(BigInt::from(*delta));
                if b.is_zero() {
                    if let Some(r) = rational_sqrt(a) {
                        return Some(Scalar::Quadratic { a: r, b: BigRational::zero(), delta: *delta });
                    }
                    // (q·√δ)² = q²·δ
                    return rational_sqrt(&(a / &d)).map(|q| Scalar::Quadratic {
                        a: BigRational::zero(),
                        b: q,
                        delta: *delta,
                    });
                }
                // (r + s√δ)² = a + b√δ  ⇒  r² = (a ± √(a² − δb²)) / 2
                let n = rational_sqrt(&(a * a - b * b * &d))?;
                let two = BigRational::from_integer(BigInt::from(2));
                for cand in [(a + &n) / &two, (a - &n) / &two] {
                    if let Some(r) = rational_sqrt(&cand) {
                        if r.is_zero() {
                            continue;
                        }
                        let s = b / (&two * &r);
                        let root = Scalar::Quadratic { a: r, b: s, delta: *delta };
                        if &(&root * &root) == self {
                            return Some(root);
                        }
                    }
                }
                None
            }
            Scalar::Prime { value, p } => {
                let (v, p) = (*value, *p);
                if v == 0 {
                    return Some(self.clone());
                }
                if powmod(v, (p - 1) / 2, p) != 1 {
                    return None;
                }
                // Tonelli–Shanks
                let mut q = p - 1;
                let mut s = 0;
                while q % 2 == 0 {
                    q /= 2;
                    s += 1;
                }
                let mut z = 2;
                while powmod(z, (p - 1) / 2, p) != p - 1 {
                    z += 1;
                }
                let mut m = s;
                let mut c = powmod(z, q, p);
                let mut t = powmod(v, q, p);
                let mut r = powmod(v, (q + 1) / 2, p);
                while t != 1 {
                    let mut i = 0;
                    let mut tt = t;
                    while tt != 1 {
                        tt = mulmod(tt, tt, p);
                        i += 1;
                    }
                    let b = powmod(c, 1 << (m - i - 1), p);
                    m = i;
                    c = mulmod(b, b, p);
                    t = mulmod(t, c, p);
                    r = mulmod(r, b, p);
                }
                Some(Scalar::Prime { value: r, p })
            }
        }
    }

    /// Sign of a rational value; `None` for other fields.
    pub fn signum(&self) -> Option<Ordering> {
        self.as_rational().map(|q| q.cmp(&BigRational::zero()))
    }

    /// Number of bits of the largest numerator or denominator.
    pub fn bit_height(&self) -> u64 {
        let h = |q: &BigRational| q.numer().bits().max(q.denom().bits());
        match self {
            Scalar::Rational(q) => h(q),
            Scalar::Quadratic { a, b, .. } => h(a).max(h(b)),
            Scalar::Prime { p, .. } => 64 - p.leading_zeros() as u64,
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a == b,
            (Scalar::Prime { value: a, p }, Scalar::Prime { value: b, p: q }) => p == q && a == b,
            (
                Scalar::Quadratic { a, b, delta },
                Scalar::Quadratic { a: c, b: d, delta: e },
            ) => delta == e && a == c && b == d,
            _ => match self.kind().join(other.kind()) {
                Some(FieldKind::Prime(p)) => {
                    let reduce = |s: &Scalar| match s {
                        Scalar::Rational(q) => invmod(bigint_mod(q.denom(), p), p)
                            .map(|dinv| mulmod(bigint_mod(q.numer(), p), dinv, p)),
                        Scalar::Prime { value, .. } => Some(*value),
                        Scalar::Quadratic { .. } => None,
                    };
                    match (reduce(self), reduce(other)) {
                        (Some(a), Some(b)) => a == b,
                        _ => false,
                    }
                }
                Some(k) => self.embed(k) == other.embed(k),
                None => false,
            },
        }
    }
}

impl Eq for Scalar {}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Prime { value, .. } => write!(f, "{value}"),
            Scalar::Quadratic { a, b, delta } => {
                if b.is_zero() {
                    return write!(f, "{a}");
                }
                write!(f, "(")?;
                if !a.is_zero() {
                    write!(f, "{a}")?;
                    if b.is_negative() {
                        write!(f, " - ")?;
                    } else {
                        write!(f, " + ")?;
                    }
                } else if b.is_negative() {
                    write!(f, "-")?;
                }
                let babs = b.abs();
                if !babs.is_one() {
                    write!(f, "{babs}*")?;
                }
                write!(f, "sqrt({delta}))")
            }
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:ident) => {
        impl<'a> $tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                Scalar::$body(self, rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar::$body(&self, &rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                Scalar::$body(&self, rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar::$body(self, &rhs)
            }
        }
    };
}

impl Scalar {
    fn add_impl(a: &Scalar, b: &Scalar) -> Scalar {
        if let (Scalar::Rational(x), Scalar::Rational(y)) = (a, b) {
            return Scalar::Rational(x + y);
        }
        let (a, b) = Scalar::pair(a, b);
        match (a.as_ref(), b.as_ref()) {
            (Scalar::Quadratic { a, b, delta }, Scalar::Quadratic { a: c, b: d, .. }) => {
                Scalar::Quadratic { a: a + c, b: b + d, delta: *delta }
            }
            (Scalar::Prime { value: x, p }, Scalar::Prime { value: y, .. }) => {
                let s = x + y;
                Scalar::Prime { value: if s >= *p { s - p } else { s }, p: *p }
            }
            _ => unreachable!(),
        }
    }

    fn sub_impl(a: &Scalar, b: &Scalar) -> Scalar {
        if let (Scalar::Rational(x), Scalar::Rational(y)) = (a, b) {
            return Scalar::Rational(x - y);
        }
        Scalar::add_impl(a, &-b)
    }

    fn mul_impl(a: &Scalar, b: &Scalar) -> Scalar {
        if let (Scalar::Rational(x), Scalar::Rational(y)) = (a, b) {
            return Scalar::Rational(x * y);
        }
        // rational times quadratic needs no promotion
        match (a, b) {
            (Scalar::Rational(q), Scalar::Quadratic { a, b, delta })
            | (Scalar::Quadratic { a, b, delta }, Scalar::Rational(q)) => {
                return Scalar::Quadratic { a: a * q, b: b * q, delta: *delta };
            }
            _ => {}
        }
        let (a, b) = Scalar::pair(a, b);
        match (a.as_ref(), b.as_ref()) {
            (Scalar::Quadratic { a, b, delta }, Scalar::Quadratic { a: c, b: d, .. }) => {
                let dl = BigRational::from_integer(BigInt::from(*delta));
                Scalar::Quadratic {
                    a: a * c + b * d * dl,
                    b: a * d + b * c,
                    delta: *delta,
                }
            }
            (Scalar::Prime { value: x, p }, Scalar::Prime { value: y, .. }) => Scalar::Prime {
                value: mulmod(*x, *y, *p),
                p: *p,
            },
            _ => unreachable!(),
        }
    }

    fn div_impl(a: &Scalar, b: &Scalar) -> Scalar {
        if let (Scalar::Rational(x), Scalar::Rational(y)) = (a, b) {
            return Scalar::Rational(x / y);
        }
        Scalar::mul_impl(a, &b.inv().expect("division by zero"))
    }
}

forward_binop!(Add, add, add_impl);
forward_binop!(Sub, sub, sub_impl);
forward_binop!(Mul, mul, mul_impl);
forward_binop!(Div, div, div_impl);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Quadratic { a, b, delta } => Scalar::Quadratic { a: -a, b: -b, delta: *delta },
            Scalar::Prime { value, p } => Scalar::Prime {
                value: if *value == 0 { 0 } else { p - value },
                p: *p,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Scalar {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Scalar {
        Scalar::Rational(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_lowest_terms() {
        let q = Scalar::from_ratio(4, -6);
        assert_eq!(q.to_string(), "-2/3");
        assert_eq!(q, Scalar::from_ratio(-2, 3));
    }

    #[test]
    fn promotion_to_prime_field() {
        let a = Scalar::prime(3, 7);
        let b = Scalar::from_ratio(1, 2); // 4 mod 7
        assert_eq!(&a * &b, Scalar::prime(5, 7));
        assert_eq!(b.embed(FieldKind::Prime(7)), Scalar::prime(4, 7));
        assert_eq!(Scalar::prime(0, 7), Scalar::zero());
    }

    #[test]
    fn quadratic_reduces_sqrt_delta_squared() {
        let r = Scalar::sqrt_of(5);
        assert_eq!(&r * &r, Scalar::from_int(5));
        let x = &Scalar::from_int(2) + &r;
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
        assert_eq!(x.to_string(), "(2 + sqrt(5))");
    }

    #[test]
    fn square_roots() {
        assert_eq!(Scalar::from_ratio(9, 4).sqrt(), Some(Scalar::from_ratio(3, 2)));
        assert_eq!(Scalar::from_int(2).sqrt(), None);
        // (1 + √2)² = 3 + 2√2
        let s = Scalar::quadratic(BigRational::from_integer(3.into()), BigRational::from_integer(2.into()), 2);
        let r = s.sqrt().unwrap();
        assert_eq!(&r * &r, s);
        let two = Scalar::from_int(2).embed(FieldKind::Quadratic(2));
        assert_eq!(two.sqrt().unwrap(), Scalar::sqrt_of(2));
        let m = Scalar::prime(2, 7); // 3² = 9 = 2
        let r = m.sqrt().unwrap();
        assert_eq!(&r * &r, m);
        assert_eq!(Scalar::prime(3, 7).sqrt(), None);
    }

    #[test]
    fn square_part_extracts_squares() {
        let (s, r) = square_part(&BigInt::from(72), 1000);
        assert_eq!((s, r), (BigInt::from(6), BigInt::from(2)));
        let (s, r) = square_part(&BigInt::from(-49), 1000);
        assert_eq!((s, r), (BigInt::from(7), BigInt::from(-1)));
    }
}
