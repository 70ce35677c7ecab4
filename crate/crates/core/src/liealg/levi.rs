use crate::error::{Error, Result};
use crate::exactmath::{Mat, Scalar, Subspace};

use super::{killing_form, LieAlg};

/// `[A, B]` for subspaces of `L` given in coordinates.
fn bracket_space(l: &LieAlg, a: &Subspace, b: &Subspace) -> Subspace {
    let mut vs = Vec::new();
    for x in a.basis() {
        for y in b.basis() {
            vs.push(l.bracket(x, y));
        }
    }
    Subspace::span(vs, l.dim())
}

fn axpy(acc: &mut [Scalar], c: &Scalar, x: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (a, v) in acc.iter_mut().zip(x) {
        if !v.is_zero() {
            *a = &*a + &(c * v);
        }
    }
}

/// A Levi subalgebra of `L` complementing the radical `rad`.
///
/// Starts from the unit vectors outside the pivots of `rad`, reads off the
/// structure constants of `L / rad`, and corrects the lifts along the derived
/// series of `rad`: at each step the bracket defect lies in `rad^(i)` and a
/// linear solve for corrections in `rad^(i)` pushes it into `rad^(i+1)`.
pub fn levi(l: &LieAlg, rad: &Subspace) -> Result<LieAlg> {
    let n = l.dim();
    if rad.dim() == 0 {
        return Ok(l.clone());
    }
    if rad.dim() == n {
        return Ok(LieAlg::zero(l.matrix_size()));
    }
    let comp = rad.complement_units();
    let m = comp.len();
    let unit = |k: usize| -> Vec<Scalar> {
        (0..n).map(|j| if j == k { Scalar::one() } else { Scalar::zero() }).collect()
    };
    // gamma[a][b][c]: [y_a, y_b] ≡ Σ_c gamma y_c mod rad
    let mut gamma = vec![vec![vec![Scalar::zero(); m]; m]; m];
    for a in 0..m {
        for b in a + 1..m {
            let r = rad.reduce(&l.bracket(&unit(comp[a]), &unit(comp[b])));
            for c in 0..m {
                gamma[a][b][c] = r[comp[c]].clone();
                gamma[b][a][c] = -&r[comp[c]];
            }
        }
    }
    let mut s: Vec<Vec<Scalar>> = comp.iter().map(|&k| unit(k)).collect();
    let defect = |s: &[Vec<Scalar>], a: usize, b: usize| -> Vec<Scalar> {
        let mut e = l.bracket(&s[a], &s[b]);
        for c in 0..m {
            axpy(&mut e, &-&gamma[a][b][c], &s[c]);
        }
        e
    };

    let mut cur = rad.clone();
    while cur.dim() > 0 {
        let next = bracket_space(l, &cur, &cur);
        if next.dim() == cur.dim() {
            return Err(Error::Internal("radical is not solvable".into()));
        }
        let r = cur.basis();
        let k = r.len();
        let free = next.complement_units();
        let pairs: Vec<(usize, usize)> = (0..m).flat_map(|a| (a + 1..m).map(move |b| (a, b))).collect();
        // unknown z_a = Σ_t u[a·k + t] r_t
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for &(a, b) in &pairs {
            let e = next.reduce(&defect(&s, a, b));
            // columns: image of each unknown in L / next
            let mut cols: Vec<Vec<Scalar>> = vec![vec![Scalar::zero(); n]; m * k];
            for t in 0..k {
                // + [s_a, z_b]
                let sa_r = l.bracket(&s[a], &r[t]);
                axpy(&mut cols[b * k + t], &Scalar::one(), &sa_r);
                // − [s_b, z_a]
                let sb_r = l.bracket(&s[b], &r[t]);
                axpy(&mut cols[a * k + t], &-Scalar::one(), &sb_r);
                // − Σ gamma_ab^c z_c
                for c in 0..m {
                    axpy(&mut cols[c * k + t], &-&gamma[a][b][c], &r[t]);
                }
            }
            let cols: Vec<Vec<Scalar>> = cols.iter().map(|c| next.reduce(c)).collect();
            for &j in &free {
                rows.push(cols.iter().map(|c| c[j].clone()).collect::<Vec<_>>());
                rhs.push(-&e[j]);
            }
        }
        if !rows.is_empty() {
            let sys = Mat::from_rows(rows, m * k);
            let u = sys.solve(&rhs).ok_or(Error::LiftingFailed)?;
            for a in 0..m {
                for t in 0..k {
                    axpy(&mut s[a], &u[a * k + t], &r[t]);
                }
            }
        }
        cur = next;
    }

    for a in 0..m {
        for b in a + 1..m {
            if defect(&s, a, b).iter().any(|x| !x.is_zero()) {
                return Err(Error::LiftingFailed);
            }
        }
    }
    let sub = l.subalgebra(&s).map_err(|_| Error::LiftingFailed)?;
    if killing_form(&sub).det().is_zero() {
        return Err(Error::LiftingFailed);
    }
    Ok(sub)
}
