//! Modular gcd of rational univariate polynomials: images modulo word-size
//! primes, Chinese remaindering, rational reconstruction, and an exact
//! divisibility check.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::exactmath::{invmod, mulmod, reconstruct, Scalar};

use super::roots::is_prime;
use super::UPoly;

/// Primes tried before giving up on the modular route.
const MAX_PRIMES: usize = 400;

fn primes_below(mut n: u64) -> impl Iterator<Item = u64> {
    std::iter::from_fn(move || {
        while n > 2 {
            n -= 1;
            if is_prime(n) {
                return Some(n);
            }
        }
        None
    })
}

/// Image modulo `p`, or `None` when a denominator or the leading
/// coefficient vanishes there.
fn image(a: &UPoly, p: u64) -> Option<Vec<u64>> {
    let bp = BigInt::from(p);
    let mut out = Vec::with_capacity(a.coeffs().len());
    for c in a.coeffs() {
        let q = c.as_rational()?;
        let d = q.denom().mod_floor(&bp).to_u64()?;
        let n = q.numer().mod_floor(&bp).to_u64()?;
        out.push(mulmod(n, invmod(d, p)?, p));
    }
    (*out.last()? != 0).then_some(out)
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn rem_mod(a: &mut Vec<u64>, b: &[u64], p: u64) {
    let db = b.len() - 1;
    let inv = invmod(b[db], p).expect("nonzero leading coefficient");
    while a.len() > db {
        let k = a.len() - 1 - db;
        let c = mulmod(a[a.len() - 1], inv, p);
        if c != 0 {
            for (j, &y) in b.iter().enumerate() {
                a[k + j] = (a[k + j] + p - mulmod(c, y, p)) % p;
            }
        }
        a.pop();
        trim(a);
    }
}

/// Monic gcd over `F_p`.
fn gcd_mod(a: Vec<u64>, b: Vec<u64>, p: u64) -> Vec<u64> {
    let (mut a, mut b) = (a, b);
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        rem_mod(&mut a, &b, p);
        std::mem::swap(&mut a, &mut b);
    }
    let inv = invmod(*a.last().expect("nonzero gcd"), p).expect("unit");
    a.iter().map(|&x| mulmod(x, inv, p)).collect()
}

/// Monic gcd of two nonzero rational polynomials, or `None` if the
/// modular route did not settle within its prime budget.
pub(crate) fn rational_gcd(a: &UPoly, b: &UPoly) -> Option<UPoly> {
    let mut best: Option<(usize, Vec<BigInt>, BigInt)> = None;
    for p in primes_below(1 << 62).take(MAX_PRIMES) {
        let (Some(ap), Some(bp)) = (image(a, p), image(b, p)) else { continue };
        let g = gcd_mod(ap, bp, p);
        let deg = g.len() - 1;
        if deg == 0 {
            // the degree modulo a good prime bounds the true degree
            return Some(UPoly::constant(Scalar::one()));
        }
        let pb = BigInt::from(p);
        let (residues, modulus) = match best.take() {
            Some((d, _, _)) if deg < d => (g.iter().map(|&x| BigInt::from(x)).collect(), pb),
            Some((d, r, m)) if deg > d => {
                best = Some((d, r, m));
                continue;
            }
            Some((_, r, m)) => {
                // x ≡ r (mod m), x ≡ g (mod p)
                let m_inv = invmod((&m % &pb).to_u64().expect("residue"), p).expect("coprime moduli");
                let combined: Vec<BigInt> = r
                    .iter()
                    .zip(&g)
                    .map(|(ri, &gi)| {
                        let ri_p = (ri % &pb).to_u64().expect("residue");
                        let t = mulmod((gi + p - ri_p) % p, m_inv, p);
                        ri + &m * BigInt::from(t)
                    })
                    .collect();
                (combined, &m * &pb)
            }
            None => (g.iter().map(|&x| BigInt::from(x)).collect(), pb),
        };
        let candidate: Option<Vec<Scalar>> =
            residues.iter().map(|u| reconstruct(u, &modulus).map(Scalar::rational)).collect();
        best = Some((deg, residues, modulus));
        if let Some(cs) = candidate {
            let g = UPoly::new(cs);
            if a.divrem(&g).1.is_zero() && b.divrem(&g).1.is_zero() {
                return Some(g);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_with_rational_factor() {
        let common = UPoly::new(vec![Scalar::from_ratio(-3, 7), Scalar::from_int(2), Scalar::one()]);
        let a = common.mul(&UPoly::from_i64(&[5, 0, 0, 1234567]));
        let b = common.mul(&UPoly::from_i64(&[-1, 1]).pow(3));
        assert_eq!(rational_gcd(&a, &b), Some(common.monic()));
        let c = UPoly::from_i64(&[1, 1]);
        assert_eq!(rational_gcd(&a, &c), Some(UPoly::from_i64(&[1])));
    }
}
