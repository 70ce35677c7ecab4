use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{echelon, kernel_basis, FieldKind, Mat, Scalar, Subspace};

use super::sl2::root_field;
use super::LieAlg;

/// Type of the surface cut out by the quadrics through a canonical curve,
/// read off from its Lie algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LieCase {
    CurveCutByQuadrics,
    Scroll,
    P1xP1,
    Veronese,
    Unexpected,
}

/// Basis of the centroid: maps `T: s → s` with `T ∘ ad x = ad x ∘ T` for
/// all `x`, as `k × k` matrices in basis coordinates.
pub fn centroid(s: &LieAlg) -> Result<Vec<Mat>> {
    let k = s.dim();
    let ads: Vec<Mat> = (0..k)
        .map(|i| {
            let mut e = vec![Scalar::zero(); k];
            e[i] = Scalar::one();
            s.ad(&e)
        })
        .collect();
    // unknown T_rc at column r·k + c; equation (T A − A T)_ij = 0
    let mut rows = Vec::with_capacity(k * k * k);
    for a in &ads {
        for i in 0..k {
            for j in 0..k {
                let mut row = vec![Scalar::zero(); k * k];
                for t in 0..k {
                    // (T A)_ij = Σ_t T_it A_tj
                    let x = a.get(t, j);
                    if !x.is_zero() {
                        row[i * k + t] = &row[i * k + t] + x;
                    }
                    // (A T)_ij = Σ_t A_it T_tj
                    let y = a.get(i, t);
                    if !y.is_zero() {
                        row[t * k + j] = &row[t * k + j] - y;
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let ker = kernel_basis(&Mat::from_rows(rows, k * k))?;
    Ok(ker.into_iter().map(|v| Mat::from_flat(k, v)).collect())
}

/// Splits a 6-dimensional semisimple `s` into two 3-dimensional ideals,
/// using a non-scalar centroid element `T` with `T² = aT + b`. The ideals
/// are the eigenspaces of `T`; they are defined over the ground field or
/// over `Q(√(a² + 4b))`. Returns `None` when `s` is not such a sum.
pub fn split_ideals(s: &LieAlg) -> Result<Option<(LieAlg, LieAlg)>> {
    let k = s.dim();
    if k != 6 {
        return Ok(None);
    }
    let cent = centroid(s)?;
    if cent.len() != 2 {
        return Ok(None);
    }
    let id = Mat::identity(k);
    let scalar_part = |m: &Mat| -> bool { m.sub(&id.scale(m.get(0, 0))).is_zero() };
    let Some(t) = cent.iter().find(|m| !scalar_part(m)) else {
        return Ok(None);
    };
    // T² = aT + b·I solved from two independent entries
    let t2 = t.mul(t);
    let rows: Vec<Vec<Scalar>> = (0..k * k).map(|i| vec![t.as_flat()[i].clone(), id.as_flat()[i].clone()]).collect();
    let Some(ab) = Mat::from_rows(rows, 2).solve(t2.as_flat()) else {
        return Ok(None);
    };
    let (a, b) = (&ab[0], &ab[1]);
    let disc = a * a + Scalar::from_int(4) * b;
    if disc.is_zero() {
        return Ok(None);
    }
    let (root, kind) = match disc.sqrt() {
        Some(r) => (r, s.field()),
        None => {
            let delta = root_field(&disc).ok_or(Error::SplitFailedOverExtension)?;
            let kind = FieldKind::Quadratic(delta);
            let r = disc.embed(kind).sqrt().ok_or(Error::SplitFailedOverExtension)?;
            (r, kind)
        }
    };
    let two = Scalar::from_int(2);
    let t = t.embed(kind);
    let mut ideals = Vec::new();
    for lambda in [&(a + &root) / &two, &(a - &root) / &two] {
        let m = t.sub(&id.scale(&lambda));
        let ker = kernel_basis(&m)?;
        if ker.len() != 3 {
            return Ok(None);
        }
        ideals.push(Subspace::span(ker, k));
    }
    ideals.sort_by(|x, y| x.pivots().cmp(y.pivots()));
    let ext = s.embed(kind);
    let mut out = Vec::new();
    for ideal in ideals {
        let sub = ext.subalgebra(&echelon(ideal.basis().to_vec(), k))?;
        out.push(sub);
    }
    let second = out.pop().expect("two ideals");
    let first = out.pop().expect("two ideals");
    Ok(Some((first, second)))
}

/// Classifies the hull of a canonical curve of genus `g` from its Lie
/// algebra `l` and a Levi subalgebra `s`.
pub fn classify(l: &LieAlg, s: &LieAlg, g: usize) -> Result<LieCase> {
    if l.dim() == 0 {
        return Ok(LieCase::CurveCutByQuadrics);
    }
    Ok(match s.dim() {
        3 => LieCase::Scroll,
        6 if split_ideals(s)?.is_some() => LieCase::P1xP1,
        8 if g == 6 => LieCase::Veronese,
        _ => LieCase::Unexpected,
    })
}
