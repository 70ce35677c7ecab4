use crate::error::{Error, Result};
use crate::exactmath::{determinant, Scalar};

use super::mpoly::MPoly;

/// Sylvester resultant of `f` and `g` with respect to `var`.
///
/// The result does not involve `var`. When exactly one argument is constant
/// in `var` the convention `Res(f, c) = c^{deg f}` applies.
pub fn resultant(f: &MPoly, g: &MPoly, var: usize) -> Result<MPoly> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::InvalidInput("resultant of a zero polynomial".into()));
    }
    if f.nvars() != g.nvars() || var >= f.nvars() {
        return Err(Error::InvalidInput("resultant arguments disagree on variables".into()));
    }
    let m = f.degree_in(var) as usize;
    let n = g.degree_in(var) as usize;
    match (m, n) {
        (0, 0) => Err(Error::InvalidInput("both arguments are constant in the eliminated variable".into())),
        (0, _) => Ok(f.pow(n as u32)),
        (_, 0) => Ok(g.pow(m as u32)),
        _ => Ok(formal(&f.coeffs_in(var), &g.coeffs_in(var), f.nvars())),
    }
}

/// Determinant of the Sylvester matrix built from coefficient lists (lowest
/// first) of formal lengths `m+1` and `n+1`. Evaluation commutes with the
/// determinant, so other variables are handled by interpolation.
fn formal(fc: &[MPoly], gc: &[MPoly], nvars: usize) -> MPoly {
    let occurring = (0..nvars).find(|&v| fc.iter().chain(gc).any(|c| c.degree_in(v) > 0));
    let Some(w) = occurring else {
        let fs: Vec<Scalar> = fc.iter().map(|c| c.coeff(&vec![0; nvars])).collect();
        let gs: Vec<Scalar> = gc.iter().map(|c| c.coeff(&vec![0; nvars])).collect();
        return MPoly::constant(nvars, sylvester_det(&fs, &gs));
    };
    let (m, n) = (fc.len() - 1, gc.len() - 1);
    let maxdeg = |cs: &[MPoly], v: usize| cs.iter().map(|c| c.degree_in(v)).max().unwrap_or(0) as usize;
    let tdeg = |cs: &[MPoly]| cs.iter().filter_map(MPoly::total_degree).max().unwrap_or(0) as usize;
    let row_bound = n * maxdeg(fc, w) + m * maxdeg(gc, w);
    // Total degree bound after attaching the eliminated variable's weight.
    let tot_bound = (tdeg(fc) + m) * (tdeg(gc) + n);
    let bound = row_bound.min(tot_bound);

    let mut xs = Vec::with_capacity(bound + 1);
    let mut vals = Vec::with_capacity(bound + 1);
    for i in 0..=bound {
        let t = Scalar::from_int(i as i64);
        let mut at = vec![None; nvars];
        at[w] = Some(t.clone());
        let fe: Vec<MPoly> = fc.iter().map(|c| c.partial_eval(&at)).collect();
        let ge: Vec<MPoly> = gc.iter().map(|c| c.partial_eval(&at)).collect();
        vals.push(formal(&fe, &ge, nvars));
        xs.push(t);
    }
    interpolate_in(w, nvars, &xs, vals)
}

/// Newton interpolation with polynomial values in variable `w`.
fn interpolate_in(w: usize, nvars: usize, xs: &[Scalar], mut dd: Vec<MPoly>) -> MPoly {
    let n = xs.len();
    for j in 1..n {
        for i in (j..n).rev() {
            let den = (&xs[i] - &xs[i - j]).inv().expect("distinct nodes");
            dd[i] = dd[i].sub(&dd[i - 1]).scale(&den);
        }
    }
    let var = MPoly::var(nvars, w);
    let mut acc = MPoly::zero(nvars);
    for i in (0..n).rev() {
        let lin = var.sub(&MPoly::constant(nvars, xs[i].clone()));
        acc = acc.mul(&lin).add(&dd[i]);
    }
    acc
}

/// Sylvester determinant of two scalar coefficient lists (lowest first).
pub fn sylvester_det(f: &[Scalar], g: &[Scalar]) -> Scalar {
    let (m, n) = (f.len() - 1, g.len() - 1);
    let size = m + n;
    if size == 0 {
        return Scalar::one();
    }
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut r = vec![Scalar::zero(); size];
        for (k, c) in f.iter().rev().enumerate() {
            r[i + k] = c.clone();
        }
        rows.push(r);
    }
    for i in 0..m {
        let mut r = vec![Scalar::zero(); size];
        for (k, c) in g.iter().rev().enumerate() {
            r[i + k] = c.clone();
        }
        rows.push(r);
    }
    determinant(rows)
}
