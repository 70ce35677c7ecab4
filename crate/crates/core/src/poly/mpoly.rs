use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exactmath::{FieldKind, Scalar};

use super::upoly::UPoly;

/// Sparse multivariate polynomial with dense exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

/// Graded lexicographic order, `x > y > z`.
pub fn grlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

/// All exponent vectors of total degree `deg` in `nvars` variables, in
/// descending lexicographic order (`x^deg` first).
pub fn monomials(nvars: usize, deg: u32) -> Vec<Vec<u32>> {
    fn rec(nvars: usize, deg: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == nvars {
            prefix.push(deg);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=deg).rev() {
            prefix.push(e);
            rec(nvars, deg - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if deg == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(nvars, deg, &mut Vec::with_capacity(nvars), &mut out);
    out
}

pub fn default_var_names(nvars: usize) -> Vec<String> {
    match nvars {
        0..=3 => ["x", "y", "z"][..nvars].iter().map(|s| s.to_string()).collect(),
        4 => ["x", "y", "z", "u"].iter().map(|s| s.to_string()).collect(),
        n => (0..n).map(|i| format!("x{i}")).collect(),
    }
}

impl MPoly {
    pub fn zero(nvars: usize) -> MPoly {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Scalar) -> MPoly {
        let mut p = MPoly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> MPoly {
        MPoly::constant(nvars, Scalar::one())
    }

    pub fn var(nvars: usize, i: usize) -> MPoly {
        let mut e = vec![0; nvars];
        e[i] = 1;
        MPoly::monomial(e, Scalar::one())
    }

    pub fn monomial(exps: Vec<u32>, c: Scalar) -> MPoly {
        let mut p = MPoly::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Scalar)>) -> MPoly {
        let mut p = MPoly::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            p.add_term(e, c);
        }
        p
    }

    /// Linear form `Σ c_i x_i`.
    pub fn linear(coeffs: &[Scalar]) -> MPoly {
        let n = coeffs.len();
        MPoly::from_terms(
            n,
            coeffs.iter().enumerate().map(|(i, c)| {
                let mut e = vec![0; n];
                e[i] = 1;
                (e, c.clone())
            }),
        )
    }

    /// Form with the given coefficients on the listed monomials.
    pub fn from_coeff_vector(monos: &[Vec<u32>], coeffs: &[Scalar]) -> MPoly {
        let n = monos.first().map_or(0, |m| m.len());
        MPoly::from_terms(n, monos.iter().cloned().zip(coeffs.iter().cloned()))
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                let s = &*old + &c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn coeff(&self, e: &[u32]) -> Scalar {
        self.terms.get(e).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Coefficient vector over the listed monomials; `None` if a term falls
    /// outside them.
    pub fn coeff_vector(&self, monos: &[Vec<u32>]) -> Option<Vec<Scalar>> {
        let mut hit = 0;
        let v = monos
            .iter()
            .map(|m| {
                let c = self.coeff(m);
                if !c.is_zero() {
                    hit += 1;
                }
                c
            })
            .collect();
        (hit == self.terms.len()).then_some(v)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn field_kind(&self) -> Option<FieldKind> {
        FieldKind::of_all(self.terms.values())
    }

    /// Rational multiple with coprime integer coefficients and positive
    /// leading coefficient (grlex); other fields are returned unchanged.
    pub fn primitive(&self) -> MPoly {
        let Some(FieldKind::Rational) = self.field_kind() else {
            return self.clone();
        };
        let mut l = BigInt::one();
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            let q = c.as_rational().expect("rational");
            l = l.lcm(q.denom());
        }
        for c in self.terms.values() {
            let q = c.as_rational().expect("rational");
            g = g.gcd(&(q * BigRational::from_integer(l.clone())).to_integer());
        }
        if g.is_zero() {
            return self.clone();
        }
        let mut factor = BigRational::new(l, g);
        if let Some((_, lc)) = self.leading_term() {
            if lc.signum() == Some(Ordering::Less) {
                factor = -factor;
            }
        }
        self.scale(&Scalar::rational(factor))
    }

    /// Largest coefficient bit height.
    pub fn bit_height(&self) -> u64 {
        self.terms.values().map(Scalar::bit_height).max().unwrap_or(0)
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        self.map_coeffs(|c| -c)
    }

    pub fn scale(&self, c: &Scalar) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        self.map_coeffs(|a| a * c)
    }

    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let v = f(c);
            if !v.is_zero() {
                out.terms.insert(e.clone(), v);
            }
        }
        out
    }

    pub fn embed(&self, kind: FieldKind) -> MPoly {
        self.map_coeffs(|c| c.embed(kind))
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = MPoly::zero(self.nvars);
        let mut e = vec![0; self.nvars];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                for i in 0..self.nvars {
                    e[i] = ea[i] + eb[i];
                }
                out.add_term(e.clone(), ca * cb);
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &[u32], c: &Scalar) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        if c.is_zero() {
            return out;
        }
        for (e, a) in &self.terms {
            let ne: Vec<u32> = e.iter().zip(m).map(|(x, y)| x + y).collect();
            out.terms.insert(ne, a * c);
        }
        out
    }

    pub fn pow(&self, mut k: u32) -> MPoly {
        let mut base = self.clone();
        let mut acc = MPoly::one(self.nvars);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[var] -= 1;
            out.add_term(ne, c * &Scalar::from_int(e[var] as i64));
        }
        out
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.nvars);
        let powers = power_tables(point, &self.max_exponents());
        let mut acc = Scalar::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = &t * &powers[i][k as usize];
                }
            }
            acc = acc + t;
        }
        acc
    }

    fn max_exponents(&self) -> Vec<u32> {
        let mut m = vec![0; self.nvars];
        for e in self.terms.keys() {
            for (a, &b) in m.iter_mut().zip(e) {
                *a = (*a).max(b);
            }
        }
        m
    }

    /// Substitutes the given values for the `Some` positions; the number of
    /// variables is unchanged and substituted exponents become zero.
    pub fn partial_eval(&self, values: &[Option<Scalar>]) -> MPoly {
        assert_eq!(values.len(), self.nvars);
        let maxe = self.max_exponents();
        let powers: Vec<Vec<Scalar>> = values
            .iter()
            .zip(&maxe)
            .map(|(v, &m)| match v {
                Some(x) => powers_of(x, m),
                None => Vec::new(),
            })
            .collect();
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut t = c.clone();
            let mut ne = e.clone();
            for i in 0..self.nvars {
                if values[i].is_some() {
                    if e[i] > 0 {
                        t = &t * &powers[i][e[i] as usize];
                    }
                    ne[i] = 0;
                }
            }
            out.add_term(ne, t);
        }
        out
    }

    /// `self(subs[0], …, subs[n−1])`; substitutes share a variable count.
    pub fn compose(&self, subs: &[MPoly]) -> MPoly {
        assert_eq!(subs.len(), self.nvars);
        let target = subs.first().map_or(0, |s| s.nvars);
        let maxe = self.max_exponents();
        let powers: Vec<Vec<MPoly>> = subs
            .iter()
            .zip(&maxe)
            .map(|(s, &m)| {
                let mut v = vec![MPoly::one(target)];
                for k in 1..=m as usize {
                    let next = v[k - 1].mul(s);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = MPoly::zero(target);
        for (e, c) in &self.terms {
            let mut t = MPoly::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = t.mul(&powers[i][k as usize]);
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Applies the linear change of variables `x_i ↦ Σ_j t[i][j]·x_j`.
    pub fn linear_substitute(&self, t: &[Vec<Scalar>]) -> MPoly {
        let subs: Vec<MPoly> = t.iter().map(|row| MPoly::linear(row)).collect();
        self.compose(&subs)
    }

    /// Coefficients with respect to `var`: entry `k` is the coefficient of
    /// `var^k`, as a polynomial in which `var` does not occur.
    pub fn coeffs_in(&self, var: usize) -> Vec<MPoly> {
        let d = self.degree_in(var) as usize;
        let mut out = vec![MPoly::zero(self.nvars); d + 1];
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            let k = ne[var] as usize;
            ne[var] = 0;
            out[k].terms.insert(ne, c.clone());
        }
        out
    }

    /// The polynomial as univariate in `var`, provided no other variable
    /// occurs.
    pub fn to_upoly(&self, var: usize) -> Option<UPoly> {
        let mut coeffs = vec![Scalar::zero(); self.degree_in(var) as usize + 1];
        for (e, c) in &self.terms {
            if e.iter().enumerate().any(|(i, &k)| i != var && k > 0) {
                return None;
            }
            coeffs[e[var] as usize] = c.clone();
        }
        Some(UPoly::new(coeffs))
    }

    pub fn from_upoly(u: &UPoly, nvars: usize, var: usize) -> MPoly {
        let mut p = MPoly::zero(nvars);
        for (k, c) in u.coeffs().iter().enumerate() {
            let mut e = vec![0; nvars];
            e[var] = k as u32;
            p.add_term(e, c.clone());
        }
        p
    }

    /// Homogenizes with respect to a new last variable.
    pub fn homogenize(&self) -> MPoly {
        let d = self.total_degree().unwrap_or(0);
        let mut out = MPoly::zero(self.nvars + 1);
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            ne.push(d - e.iter().sum::<u32>());
            out.terms.insert(ne, c.clone());
        }
        out
    }

    /// Drops variables that do not occur, keeping the listed ones in order.
    pub fn restrict_vars(&self, keep: &[usize]) -> MPoly {
        let mut out = MPoly::zero(keep.len());
        for (e, c) in &self.terms {
            debug_assert!(e.iter().enumerate().all(|(i, &k)| k == 0 || keep.contains(&i)));
            out.terms.insert(keep.iter().map(|&i| e[i]).collect(), c.clone());
        }
        out
    }

    /// Extends to `n` variables; old variable `i` becomes `positions[i]`.
    pub fn extend_vars(&self, n: usize, positions: &[usize]) -> MPoly {
        let mut out = MPoly::zero(n);
        for (e, c) in &self.terms {
            let mut ne = vec![0; n];
            for (i, &k) in e.iter().enumerate() {
                ne[positions[i]] = k;
            }
            out.terms.insert(ne, c.clone());
        }
        out
    }

    /// Leading term in graded lexicographic order.
    pub fn leading_term(&self) -> Option<(&Vec<u32>, &Scalar)> {
        self.terms.iter().max_by(|a, b| grlex(a.0, b.0))
    }

    /// Division with remainder by a single polynomial in grlex order. The
    /// remainder is zero exactly when `divisor` divides `self`.
    pub fn div_rem(&self, divisor: &MPoly) -> (MPoly, MPoly) {
        let (lm, lc) = divisor.leading_term().expect("division by zero polynomial");
        let lm = lm.clone();
        let lc_inv = lc.inv().expect("nonzero leading coefficient");
        let mut rem = self.clone();
        let mut quot = MPoly::zero(self.nvars);
        let mut out_rem = MPoly::zero(self.nvars);
        while let Some((e, c)) = rem.leading_term().map(|(e, c)| (e.clone(), c.clone())) {
            if e.iter().zip(&lm).all(|(a, b)| a >= b) {
                let m: Vec<u32> = e.iter().zip(&lm).map(|(a, b)| a - b).collect();
                let q = &c * &lc_inv;
                rem = rem.sub(&divisor.mul_monomial(&m, &q));
                quot.add_term(m, q);
            } else {
                rem.terms.remove(&e);
                out_rem.add_term(e, c);
            }
        }
        (quot, out_rem)
    }

    pub fn is_divisible_by(&self, divisor: &MPoly) -> bool {
        self.div_rem(divisor).1.is_zero()
    }

    /// Terms sorted in descending grlex order.
    pub fn sorted_terms(&self) -> Vec<(&Vec<u32>, &Scalar)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|a, b| grlex(b.0, a.0));
        t
    }

    /// Canonical text form with the given variable names.
    pub fn to_string_with(&self, names: &[impl AsRef<str>]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let is_const = e.iter().all(|&k| k == 0);
            let neg = matches!(c.signum(), Some(Ordering::Less));
            let mag = if neg { -c } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            if is_const || !mag.is_one() {
                factors.push(mag.to_string());
            }
            for (v, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(names[v].as_ref().to_string()),
                    _ => factors.push(format!("{}^{}", names[v].as_ref(), k)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

fn powers_of(x: &Scalar, m: u32) -> Vec<Scalar> {
    let mut v = Vec::with_capacity(m as usize + 1);
    v.push(Scalar::one());
    for k in 1..=m as usize {
        let next = &v[k - 1] * x;
        v.push(next);
    }
    v
}

fn power_tables(point: &[Scalar], maxe: &[u32]) -> Vec<Vec<Scalar>> {
    point.iter().zip(maxe).map(|(x, &m)| powers_of(x, m)).collect()
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_with(&default_var_names(self.nvars)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> MPoly {
        MPoly::var(3, 0)
    }
    fn y() -> MPoly {
        MPoly::var(3, 1)
    }
    fn z() -> MPoly {
        MPoly::var(3, 2)
    }

    #[test]
    fn monomial_enumeration_order() {
        let m = monomials(3, 1);
        assert_eq!(m, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(monomials(3, 2).len(), 6);
        assert_eq!(monomials(11, 2).len(), 66);
    }

    #[test]
    fn canonical_printing() {
        let p = x().pow(2).mul(&y()).scale(&Scalar::from_ratio(3, 2)).sub(&z().pow(3));
        assert_eq!(p.to_string(), "3/2*x^2*y - z^3");
        let q = MPoly::constant(3, Scalar::from_int(-4)).add(&x().neg());
        assert_eq!(q.to_string(), "-x - 4");
    }

    #[test]
    fn division_detects_multiples() {
        let f = x().mul(&z()).sub(&y().pow(2));
        let g = f.mul(&x().add(&y().scale(&Scalar::from_int(3))));
        assert!(g.is_divisible_by(&f));
        assert!(!g.add(&x()).is_divisible_by(&f));
        let (q, r) = g.div_rem(&f);
        assert!(r.is_zero());
        assert_eq!(q.mul(&f), g);
    }

    #[test]
    fn compose_and_derivative() {
        let f = x().pow(2).mul(&y());
        let g = f.compose(&[x().add(&z()), y(), z()]);
        assert_eq!(g.eval(&[Scalar::from_int(1), Scalar::from_int(2), Scalar::from_int(3)]), Scalar::from_int(32));
        assert_eq!(f.derivative(0), x().mul(&y()).scale(&Scalar::from_int(2)));
    }
}
