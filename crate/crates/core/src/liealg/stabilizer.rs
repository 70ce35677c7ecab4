use std::collections::HashMap;

use rayon::prelude::*;

use crate::canonical::FormSpace;
use crate::error::{Error, Result};
use crate::exactmath::{echelon, kernel_basis, Mat, Scalar};

use super::LieAlg;

/// The linear system whose kernel is the stabilizer of `span(Q)` inside
/// `gl_g`. Unknowns are `M_ij` at column `i·g + j`; for each basis quadric
/// `q` and each monomial outside the pivots of `Q`, one row asks that the
/// corresponding coordinate of `D_M q mod Q` vanish, where
/// `D_M q = Σ M_ij · x_j · ∂q/∂x_i`.
fn stabilizer_system(q: &FormSpace) -> Mat {
    let g = q.ambient_dim();
    let monos = q.monomials();
    let index: HashMap<&[u32], usize> = monos.iter().enumerate().map(|(k, m)| (m.as_slice(), k)).collect();
    let space = q.subspace();
    let free = space.complement_units();
    let blocks: Vec<Vec<Vec<Scalar>>> = q
        .basis()
        .par_iter()
        .map(|v| {
            // column (i, j) of this block: x_j ∂_i q reduced mod Q
            let mut cols = Vec::with_capacity(g * g);
            for i in 0..g {
                for j in 0..g {
                    let mut d = vec![Scalar::zero(); monos.len()];
                    for (c, m) in v.iter().zip(monos) {
                        if c.is_zero() || m[i] == 0 {
                            continue;
                        }
                        let mut t = m.clone();
                        t[i] -= 1;
                        t[j] += 1;
                        let k = index[t.as_slice()];
                        d[k] = &d[k] + &(c * &Scalar::from_int(m[i] as i64));
                    }
                    let r = space.reduce(&d);
                    cols.push(free.iter().map(|&k| r[k].clone()).collect::<Vec<_>>());
                }
            }
            // transpose to rows
            (0..free.len()).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect()
        })
        .collect();
    let rows: Vec<Vec<Scalar>> = blocks.into_iter().flatten().filter(|r: &Vec<Scalar>| r.iter().any(|x| !x.is_zero())).collect();
    Mat::from_rows(rows, g * g)
}

fn identity_flat(g: usize, like: &FormSpace) -> Vec<Scalar> {
    let kind = like.basis().first().and_then(|v| v.iter().find(|c| !c.is_zero())).map(Scalar::kind);
    (0..g * g)
        .map(|k| {
            let s = if k % (g + 1) == 0 { Scalar::one() } else { Scalar::zero() };
            match kind {
                Some(kind) => s.embed(kind),
                None => s,
            }
        })
        .collect()
}

/// Kernel of the stabilizer system, after asserting that the identity lies
/// in it.
fn stabilizer_kernel(q: &FormSpace) -> Result<Vec<Vec<Scalar>>> {
    let g = q.ambient_dim();
    let sys = stabilizer_system(q);
    let id = identity_flat(g, q);
    if sys.rows() > 0 && sys.mul_vec(&id).iter().any(|x| !x.is_zero()) {
        return Err(Error::Internal("identity does not stabilize the quadric space".into()));
    }
    kernel_basis(&sys)
}

/// `dim L(X)`: the stabilizer dimension minus the identity direction. Works
/// over any field, including prime fields.
pub fn stabilizer_dim(q: &FormSpace) -> Result<usize> {
    let k = stabilizer_kernel(q)?.len();
    k.checked_sub(1).ok_or_else(|| Error::Internal("stabilizer misses the identity".into()))
}

/// The Lie algebra of the variety cut out by `Q`, as trace-zero `g × g`
/// matrices. Requires characteristic zero (or not dividing `g`).
pub fn stabilizer_algebra(q: &FormSpace) -> Result<LieAlg> {
    let g = q.ambient_dim();
    let ker = stabilizer_kernel(q)?;
    let inv_g = Scalar::from_int(g as i64)
        .inv()
        .ok_or_else(|| Error::CurveUnsupported("characteristic divides the genus".into()))?;
    let traceless: Vec<Vec<Scalar>> = ker
        .into_iter()
        .map(|mut v| {
            let t = (0..g).fold(Scalar::zero(), |acc, i| acc + &v[i * (g + 1)]);
            let shift = &t * &inv_g;
            for i in 0..g {
                v[i * (g + 1)] = &v[i * (g + 1)] - &shift;
            }
            v
        })
        .collect();
    let basis = echelon(traceless, g * g);
    LieAlg::new(g, basis.into_iter().map(|v| Mat::from_flat(g, v)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, MPoly};

    fn space(g: usize, forms: &[&str]) -> FormSpace {
        let names: Vec<String> = (0..g).map(|i| format!("x{i}")).collect();
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        let fs: Vec<MPoly> = forms.iter().map(|f| parse_poly(f, &names).unwrap()).collect();
        FormSpace::from_forms(g, 2, &fs).unwrap()
    }

    #[test]
    fn conic_has_sl2() {
        let q = space(3, &["x0*x2 - x1^2"]);
        let l = stabilizer_algebra(&q).unwrap();
        assert_eq!(l.dim(), 3);
        assert_eq!(stabilizer_dim(&q).unwrap(), 3);
        assert!(l.basis().iter().all(|m| m.trace().is_zero()));
    }

    #[test]
    fn twisted_cubic_has_sl2() {
        let q = space(4, &["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"]);
        assert_eq!(stabilizer_algebra(&q).unwrap().dim(), 3);
    }

    #[test]
    fn smooth_quadric_surface() {
        // so4 = sl2 ⊕ sl2
        let q = space(4, &["x0*x3 - x1*x2"]);
        assert_eq!(stabilizer_algebra(&q).unwrap().dim(), 6);
    }
}
