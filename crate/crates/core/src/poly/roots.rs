//! Root finding over the rationals (p-adic lifting) and over prime fields
//! (distinct-degree and equal-degree splitting).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactmath::{invmod, powmod, Scalar};

use super::upoly::UPoly;

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Odd primes below `start`, descending.
pub(crate) fn primes_below(start: u64) -> impl Iterator<Item = u64> {
    (3..start).rev().filter(|&n| n % 2 == 1 && is_prime(n))
}

// Dense polynomials over Z/pZ, lowest degree first, no trailing zeros.
type Pp = Vec<u64>;

fn trim(mut a: Pp) -> Pp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn pmul(a: &[u64], b: &[u64], p: u64) -> Pp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    trim(out)
}

fn pdivrem(a: &[u64], b: &[u64], p: u64) -> (Pp, Pp) {
    let db = b.len() - 1;
    let inv = invmod(b[db], p).expect("nonzero leading coefficient");
    let mut rem = a.to_vec();
    if rem.len() <= db {
        return (Vec::new(), trim(rem));
    }
    let mut quot = vec![0u64; rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = mulmod(rem[k + db], inv, p);
        if c == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            rem[k + j] = (rem[k + j] + p - mulmod(c, y, p)) % p;
        }
        quot[k] = c;
    }
    rem.truncate(db);
    (trim(quot), trim(rem))
}

fn pmonic(a: &[u64], p: u64) -> Pp {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => {
            let inv = invmod(lc, p).expect("nonzero");
            a.iter().map(|&x| mulmod(x, inv, p)).collect()
        }
    }
}

fn pgcd(a: &[u64], b: &[u64], p: u64) -> Pp {
    let (mut a, mut b) = (pmonic(a, p), pmonic(b, p));
    while !b.is_empty() {
        let r = pdivrem(&a, &b, p).1;
        a = b;
        b = pmonic(&r, p);
    }
    a
}

fn pderiv(a: &[u64], p: u64) -> Pp {
    trim(a.iter().enumerate().skip(1).map(|(i, &c)| mulmod(c, i as u64 % p, p)).collect())
}

fn psub(a: &[u64], b: &[u64], p: u64) -> Pp {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect(),
    )
}

/// `base^e mod modulus`.
fn ppowmod(base: &[u64], mut e: u64, modulus: &[u64], p: u64) -> Pp {
    let mut acc: Pp = vec![1];
    let mut b = pdivrem(base, modulus, p).1;
    while e > 0 {
        if e & 1 == 1 {
            acc = pdivrem(&pmul(&acc, &b, p), modulus, p).1;
        }
        e >>= 1;
        if e > 0 {
            b = pdivrem(&pmul(&b, &b, p), modulus, p).1;
        }
    }
    acc
}

fn peval(a: &[u64], x: u64, p: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| (mulmod(acc, x, p) + c) % p)
}

/// Distinct roots in `Z/pZ` of a nonzero polynomial (coefficients reduced).
pub(crate) fn roots_mod_p(f: &[u64], p: u64) -> Vec<u64> {
    let f = trim(f.iter().map(|&c| c % p).collect());
    if f.len() <= 1 {
        return Vec::new();
    }
    if p <= 2000 {
        return (0..p).filter(|&x| peval(&f, x, p) == 0).collect();
    }
    let mut roots = Vec::new();
    let mut f = pmonic(&f, p);
    if f[0] == 0 {
        roots.push(0);
        let k = f.iter().position(|&c| c != 0).unwrap();
        f.drain(..k);
    }
    // Product of the distinct linear factors: gcd(x^p − x, f).
    let xp = ppowmod(&[0, 1], p, &f, p);
    let g = pgcd(&psub(&xp, &[0, 1], p), &f, p);
    split_linear(g, p, &mut roots);
    roots
}

fn split_linear(g: Pp, p: u64, out: &mut Vec<u64>) {
    let mut stack = vec![g];
    let mut a = 1u64;
    while let Some(g) = stack.pop() {
        match g.len() {
            0 | 1 => {}
            2 => out.push((p - mulmod(g[0], invmod(g[1], p).unwrap(), p)) % p),
            _ => loop {
                let h = ppowmod(&[a % p, 1], (p - 1) / 2, &g, p);
                a += 1;
                let d = pgcd(&psub(&h, &[1], p), &g, p);
                if d.len() > 1 && d.len() < g.len() {
                    let q = pdivrem(&g, &d, p).0;
                    stack.push(d);
                    stack.push(q);
                    break;
                }
            },
        }
    }
}

fn to_integer_primitive(coeffs: &[BigRational]) -> Vec<BigInt> {
    let l = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| c / &g).collect()
}

fn eval_int(f: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    f.iter().rev().fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

fn inverse_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// Distinct rational roots of a nonzero polynomial with rational
/// coefficients (lowest degree first), in no particular order.
pub(crate) fn rational_roots_of(coeffs: &[BigRational]) -> Vec<BigRational> {
    let mut roots = Vec::new();
    let lead = coeffs.iter().position(|c| !c.is_zero());
    let Some(k) = lead else { return roots };
    if k > 0 {
        roots.push(BigRational::zero());
    }
    let u = UPoly::new(coeffs[k..].iter().cloned().map(Scalar::rational).collect());
    if u.degree().unwrap_or(0) == 0 {
        return roots;
    }
    let s = u.squarefree_part().expect("nonzero");
    let rats: Vec<BigRational> = s.coeffs().iter().map(|c| c.to_rational().unwrap()).collect();
    let f = to_integer_primitive(&rats);
    if f.len() == 2 {
        roots.push(BigRational::new(-f[0].clone(), f[1].clone()));
        return roots;
    }
    let lc = f.last().unwrap().clone();
    let c0 = f[0].clone();
    let bound = BigInt::from(2) * lc.abs() * c0.abs() + 1;
    let df: Vec<BigInt> = f.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();

    for p in primes_below(1 << 31) {
        let pb = BigInt::from(p);
        if (&lc % &pb).is_zero() {
            continue;
        }
        let fp: Pp = f.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect();
        if pgcd(&fp, &pderiv(&fp, p), p).len() != 1 {
            continue;
        }
        for r0 in roots_mod_p(&fp, p) {
            // Newton lifting; simple roots mod p lift uniquely.
            let mut m = pb.clone();
            let mut r = BigInt::from(r0);
            while m < bound {
                m = &m * &m;
                let fr = eval_int(&f, &r, &m);
                let dr = eval_int(&df, &r, &m);
                let inv = inverse_mod(&dr, &m).expect("simple root");
                r = (&r - fr * inv).mod_floor(&m);
            }
            // A root a/b has b | lc, so lc·a/b is an integer bounded by |lc·c0|.
            let mut s = (&lc * &r).mod_floor(&m);
            if &s * 2 > m {
                s -= &m;
            }
            let cand = BigRational::new(s, lc.clone());
            let val = rats.iter().rev().fold(BigRational::zero(), |acc, c| acc * &cand + c);
            if val.is_zero() {
                roots.push(cand);
            }
        }
        return roots;
    }
    unreachable!("no admissible prime below 2^31")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime(2_147_483_647));
        assert!(!is_prime(2_147_483_649));
        assert_eq!(primes_below(20).collect::<Vec<_>>(), vec![19, 17, 13, 11, 7, 5, 3]);
    }

    #[test]
    fn large_prime_root_finding() {
        let p = 2_147_483_647;
        // (x − 5)(x − 7)(x² + 1)(x − 123456)
        let f = pmul(&pmul(&pmul(&[p - 5, 1], &[p - 7, 1], p), &[1, 0, 1], p), &[p - 123456, 1], p);
        let mut r = roots_mod_p(&f, p);
        r.sort_unstable();
        assert_eq!(r, vec![5, 7, 123456]);
    }
}
