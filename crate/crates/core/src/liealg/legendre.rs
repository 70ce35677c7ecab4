//! Rational isotropic vectors of ternary quadratic forms, used to decide
//! whether a 3-dimensional simple algebra splits before adjoining a root.
//!
//! The form is diagonalised, reduced to `a x² + b y² + c z²` with squarefree
//! pairwise coprime integers, and searched inside Holzer's box
//! `|x| ≤ √|bc|, |y| ≤ √|ac|, |z| ≤ √|ab|`, which contains a solution
//! whenever one exists.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::exactmath::{square_part, Mat, Scalar};

use super::killing;

/// Search steps allowed before giving up.
const SEARCH_LIMIT: u128 = 1 << 20;

/// Trial-division bound for squarefree parts.
const SQUARE_BOUND: u64 = 1 << 16;

fn unit(i: usize, k: usize) -> Vec<Scalar> {
    (0..k).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect()
}

fn axpy(y: &[Scalar], a: &Scalar, x: &[Scalar]) -> Vec<Scalar> {
    y.iter().zip(x).map(|(u, v)| u - &(a * v)).collect()
}

/// A nonzero rational `x` with `κ(x,x) = 0`, or `None` if none was found.
/// `None` is definitive only when the coefficients were fully reduced, so
/// callers treat it as "not known to split".
pub(crate) fn isotropic_vector(kappa: &Mat) -> Option<Vec<Scalar>> {
    let k = kappa.rows();
    let mut basis: Vec<Vec<Scalar>> = Vec::with_capacity(k);
    let mut diag: Vec<BigRational> = Vec::with_capacity(k);
    for i in 0..k {
        let mut w = unit(i, k);
        for (b, d) in basis.iter().zip(&diag) {
            let c = &killing(kappa, &w, b) / &Scalar::rational(d.clone());
            w = axpy(&w, &c, b);
        }
        let q = killing(kappa, &w, &w);
        if q.is_zero() {
            return Some(w);
        }
        basis.push(w);
        diag.push(q.as_rational()?.clone());
    }
    let (coeffs, scale) = reduce(&diag)?;
    let xs = holzer_search(&coeffs)?;
    let mut x = vec![Scalar::zero(); k];
    for ((b, s), xi) in basis.iter().zip(&scale).zip(&xs) {
        let t = Scalar::rational(s * BigRational::from_integer(BigInt::from(*xi)));
        x = axpy(&x, &-t, b);
    }
    Some(x)
}

/// Integers `A_i` and rational `c_i` with `Σ q_i t_i² = 0` at `t_i = c_i X_i`
/// whenever `Σ A_i X_i² = 0`; the `A_i` are squarefree (up to the trial
/// bound) and pairwise coprime.
fn reduce(q: &[BigRational]) -> Option<(Vec<i128>, Vec<BigRational>)> {
    let mut a: Vec<BigInt> = Vec::with_capacity(q.len());
    let mut c: Vec<BigRational> = Vec::with_capacity(q.len());
    for qi in q {
        // (n/d) t² = (n d) (t/d)²
        a.push(qi.numer() * qi.denom());
        c.push(BigRational::from_integer(qi.denom().clone()));
    }
    let squarefree = |a: &mut BigInt, c: &mut BigRational| {
        let (s, rest) = square_part(a, SQUARE_BOUND);
        *a = rest;
        *c /= BigRational::from_integer(s);
    };
    for (ai, ci) in a.iter_mut().zip(c.iter_mut()) {
        squarefree(ai, ci);
    }
    loop {
        let mut changed = false;
        for (i, j, l) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
            let g = a[i].gcd(&a[j]);
            if g.is_one() {
                continue;
            }
            // multiply through by g: (a_i/g)(g X_i)² + (a_j/g)(g X_j)² + g a_l X_l²
            a[i] /= &g;
            a[j] /= &g;
            a[l] *= &g;
            let gq = BigRational::from_integer(g);
            c[i] /= &gq;
            c[j] /= &gq;
            let (al, cl) = (&mut a[l], &mut c[l]);
            squarefree(al, cl);
            changed = true;
        }
        if !changed {
            break;
        }
    }
    let ints = a.iter().map(|x| x.to_i128()).collect::<Option<Vec<_>>>()?;
    Some((ints, c))
}

/// A nonzero integer solution of `Σ a_i X_i² = 0` inside Holzer's box.
fn holzer_search(a: &[i128]) -> Option<Vec<i128>> {
    if a.iter().all(|x| x.is_positive()) || a.iter().all(|x| x.is_negative()) {
        return None;
    }
    // solve for the coordinate with the smallest coefficient, search the others
    let s = (0..3).min_by_key(|&i| a[i].unsigned_abs())?;
    let (i, j) = match s {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let bound = |u: i128, v: i128| u.unsigned_abs().checked_mul(v.unsigned_abs()).map(|p| p.sqrt());
    let bi = bound(a[s], a[j])?;
    let bj = bound(a[s], a[i])?;
    if bi.checked_add(1)?.checked_mul(bj.checked_add(1)?)? > SEARCH_LIMIT {
        return None;
    }
    for yi in 0..=bi {
        for yj in 0..=bj {
            if yi == 0 && yj == 0 {
                continue;
            }
            let (yi, yj) = (yi as i128, yj as i128);
            let rhs = -(a[i] * yi * yi + a[j] * yj * yj);
            if rhs % a[s] != 0 {
                continue;
            }
            let sq = rhs / a[s];
            if sq < 0 {
                continue;
            }
            let r = (sq as u128).sqrt();
            if r * r == sq as u128 {
                let mut x = vec![0; 3];
                x[s] = r as i128;
                x[i] = yi;
                x[j] = yj;
                return Some(x);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(v: &[i64]) -> Mat {
        let mut m = Mat::zeros(3, 3);
        for (i, &x) in v.iter().enumerate() {
            m.set(i, i, Scalar::from_int(x));
        }
        m
    }

    #[test]
    fn finds_zeros_of_split_forms() {
        for v in [[1, 1, -2], [3, 5, -2], [6, 10, -15], [6, -10, -15], [12, -3, -1], [5, -45, 4], [2, 3, -5]] {
            let m = diag(&v);
            let x = isotropic_vector(&m).unwrap_or_else(|| panic!("{v:?}"));
            assert!(x.iter().any(|c| !c.is_zero()));
            assert!(killing(&m, &x, &x).is_zero(), "{v:?}");
        }
    }

    #[test]
    fn anisotropic_forms_have_none() {
        // x² + y² + z² and x² + y² − 3z² (3 is not a sum of two squares)
        assert!(isotropic_vector(&diag(&[1, 1, 1])).is_none());
        assert!(isotropic_vector(&diag(&[1, 1, -3])).is_none());
        for v in [[-7, 2, 1], [6, -10, 15], [-12, 20, -15], [14, -21, 6]] {
            assert!(isotropic_vector(&diag(&v)).is_none(), "{v:?}");
        }
    }
}
