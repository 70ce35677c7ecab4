//! Multi-modular reduced row echelon form over `Q`.
//!
//! The RREF is computed modulo word-size primes, lifted by Chinese
//! remaindering and rational reconstruction, and accepted only after an
//! exact check: every input row must be orthogonal to the kernel of the
//! lifted form. Since the rank modulo a prime never exceeds the rank over
//! `Q`, that check proves the two row spaces are equal.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::scalar::{invmod, mulmod, Scalar};

/// Primes tried before falling back to exact elimination.
const MAX_PRIMES: usize = 2048;

fn primes_below(mut n: u64) -> impl Iterator<Item = u64> {
    std::iter::from_fn(move || {
        while n > 2 {
            n -= 1;
            if crate::poly::roots::is_prime(n) {
                return Some(n);
            }
        }
        None
    })
}

/// Rows scaled to primitive integer vectors; zero rows dropped.
fn integer_rows(rows: &[Vec<Scalar>]) -> Option<Vec<Vec<BigInt>>> {
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        let mut l = BigInt::one();
        for a in row {
            l = l.lcm(a.as_rational()?.denom());
        }
        let ints: Vec<BigInt> = row
            .iter()
            .map(|a| {
                let q = a.as_rational().expect("rational");
                q.numer() * (&l / q.denom())
            })
            .collect();
        if ints.iter().any(|x| !x.is_zero()) {
            out.push(ints);
        }
    }
    Some(out)
}

/// Gauss–Jordan modulo `p`; returns the nonzero rows and pivot columns.
fn rref_mod(mut rows: Vec<Vec<u64>>, cols: usize, p: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r >= rows.len() {
            break;
        }
        let Some(k) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, k);
        let inv = invmod(rows[r][c], p).expect("nonzero pivot");
        for x in rows[r][c..].iter_mut() {
            *x = mulmod(*x, inv, p);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            let f = row[c];
            if i == r || f == 0 {
                continue;
            }
            for (x, &y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if y != 0 {
                    *x = (*x + p - mulmod(f, y, p)) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(pivots.len());
    (rows, pivots)
}

/// `n/d ≡ u (mod m)` with `|n|, d ≤ √(m/2)`, if such a fraction exists.
pub(crate) fn reconstruct(u: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        (r0, r1, s0, s1) = (r1, r2, s1, s2);
    }
    if s1.is_zero() || s1.abs() > bound || !r1.gcd(&s1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, s1))
}

/// Entries of the free columns, one vector per pivot row.
struct Lift {
    pivots: Vec<usize>,
    free: Vec<usize>,
    residues: Vec<Vec<BigInt>>,
    modulus: BigInt,
    primes: usize,
}

impl Lift {
    fn reconstruct(&self) -> Option<Vec<Vec<BigRational>>> {
        self.residues
            .iter()
            .map(|row| row.iter().map(|u| reconstruct(u, &self.modulus)).collect())
            .collect()
    }
}

/// Each input row dotted with each kernel vector of the candidate form is
/// zero. Kernel vector `j` has `1` at free column `free[j]` and `−R[i][j]`
/// at pivot `i`, scaled here to integers.
fn kills_all(m: &[Vec<BigInt>], lift: &Lift, entries: &[Vec<BigRational>]) -> bool {
    for (j, &fc) in lift.free.iter().enumerate() {
        let mut l = BigInt::one();
        for row in entries {
            l = l.lcm(row[j].denom());
        }
        let coeffs: Vec<BigInt> = entries.iter().map(|row| row[j].numer() * (&l / row[j].denom())).collect();
        for mrow in m {
            let mut acc = &mrow[fc] * &l;
            for (&pc, c) in lift.pivots.iter().zip(&coeffs) {
                if !c.is_zero() && !mrow[pc].is_zero() {
                    acc -= &mrow[pc] * c;
                }
            }
            if !acc.is_zero() {
                return false;
            }
        }
    }
    true
}

fn should_try(count: usize) -> bool {
    // roughly geometric: 1, 2, 3, 4, 6, 8, 12, 16, 24, ...
    count <= 4 || (count.is_power_of_two() || (count % 3 == 0 && (count / 3).is_power_of_two()))
}

/// RREF of rational rows (zero rows dropped) with its pivot columns, or
/// `None` if some entry is not rational or the prime budget ran out.
pub(crate) fn rref_rational(rows: &[Vec<Scalar>], cols: usize) -> Option<(Vec<Vec<Scalar>>, Vec<usize>)> {
    let m = integer_rows(rows)?;
    if m.is_empty() {
        return Some((Vec::new(), Vec::new()));
    }
    let mut best: Option<Lift> = None;
    for p in primes_below(1 << 62).take(MAX_PRIMES) {
        let pb = BigInt::from(p);
        let reduced: Vec<Vec<u64>> =
            m.iter().map(|row| row.iter().map(|x| x.mod_floor(&pb).to_u64().expect("residue")).collect()).collect();
        let (r, pivots) = rref_mod(reduced, cols, p);
        let better = match &best {
            None => true,
            Some(b) => pivots.len() > b.pivots.len() || (pivots.len() == b.pivots.len() && pivots < b.pivots),
        };
        let worse = match &best {
            None => false,
            Some(b) => pivots.len() < b.pivots.len() || (pivots.len() == b.pivots.len() && pivots > b.pivots),
        };
        if worse {
            continue;
        }
        let mut is_pivot = vec![false; cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..cols).filter(|&c| !is_pivot[c]).collect();
        if better {
            let residues = r.iter().map(|row| free.iter().map(|&c| BigInt::from(row[c])).collect()).collect();
            best = Some(Lift { pivots, free, residues, modulus: pb, primes: 1 });
        } else {
            let b = best.as_mut().expect("current lift");
            let m_inv = invmod((&b.modulus % &pb).to_u64().expect("residue"), p).expect("coprime moduli");
            for (res_row, row) in b.residues.iter_mut().zip(&r) {
                for (u, &c) in res_row.iter_mut().zip(&b.free) {
                    let up = (&*u % &pb).to_u64().expect("residue");
                    let t = mulmod((row[c] + p - up) % p, m_inv, p);
                    *u += &b.modulus * BigInt::from(t);
                }
            }
            b.modulus *= &pb;
            b.primes += 1;
        }
        let b = best.as_ref().expect("current lift");
        if !should_try(b.primes) {
            continue;
        }
        let Some(entries) = b.reconstruct() else { continue };
        if kills_all(&m, b, &entries) {
            let mut out = Vec::with_capacity(b.pivots.len());
            for (i, &pc) in b.pivots.iter().enumerate() {
                let mut row = vec![Scalar::zero(); cols];
                row[pc] = Scalar::one();
                for (j, &fc) in b.free.iter().enumerate() {
                    if !entries[i][j].is_zero() {
                        row[fc] = Scalar::rational(entries[i][j].clone());
                    }
                }
                out.push(row);
            }
            return Some((out, b.pivots.clone()));
        }
    }
    None
}
