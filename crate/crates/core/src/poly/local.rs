use crate::error::{Error, Result};
use crate::exactmath::Scalar;

use super::mpoly::MPoly;

/// Index of the affine chart used at `p`: its last nonzero coordinate.
pub fn chart_of(p: &[Scalar]) -> Result<usize> {
    p.iter()
        .rposition(|c| !c.is_zero())
        .ok_or_else(|| Error::InvalidInput("the zero vector is not a projective point".into()))
}

/// Scales `p` so its chart coordinate is one.
pub fn normalize_point(p: &[Scalar]) -> Result<Vec<Scalar>> {
    let c = chart_of(p)?;
    let inv = p[c].inv().expect("nonzero");
    Ok(p.iter().map(|a| a * &inv).collect())
}

fn binomial(n: u32, k: u32) -> Scalar {
    let mut acc = 1i128;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    Scalar::from_int(acc as i64)
}

/// Homogeneous Taylor pieces of degree `0..=k` of the ternary form `f` at
/// the projective point `p`.
///
/// The expansion happens in the chart where the last nonzero coordinate of
/// `p` is one, after translating `p` to the origin. Pieces are binary forms
/// in the two remaining coordinates, kept in their original order.
pub fn local_expansion(f: &MPoly, p: &[Scalar], k: u32) -> Result<Vec<MPoly>> {
    if p.len() != 3 || f.nvars() != 3 {
        return Err(Error::InvalidInput("local expansion needs a ternary form and a plane point".into()));
    }
    let q = normalize_point(p)?;
    let c = chart_of(&q)?;
    let free: Vec<usize> = (0..3).filter(|&i| i != c).collect();
    let mut pieces = vec![MPoly::zero(2); k as usize + 1];
    for (e, coeff) in f.terms() {
        // (q_a + s)^{e_a} (q_b + t)^{e_b}, truncated at total degree k.
        let (ea, eb) = (e[free[0]], e[free[1]]);
        let (qa, qb) = (&q[free[0]], &q[free[1]]);
        for i in 0..=ea.min(k) {
            let ca = binomial(ea, i) * qa.pow(ea - i);
            if ca.is_zero() {
                continue;
            }
            for j in 0..=eb.min(k - i) {
                let cb = binomial(eb, j) * qb.pow(eb - j);
                if cb.is_zero() {
                    continue;
                }
                pieces[(i + j) as usize].add_term(vec![i, j], coeff * &(&ca * &cb));
            }
        }
    }
    Ok(pieces)
}

/// Multiplicity of `f` at `p`; zero when `p` is not on the curve.
pub fn multiplicity(f: &MPoly, p: &[Scalar]) -> Result<u32> {
    let d = f.total_degree().unwrap_or(0);
    let pieces = local_expansion(f, p, d)?;
    Ok(pieces.iter().position(|x| !x.is_zero()).unwrap_or(pieces.len()) as u32)
}

/// Whether a nonzero binary form splits into pairwise distinct linear
/// factors over the algebraic closure.
pub fn has_distinct_factors(phi: &MPoly) -> bool {
    assert_eq!(phi.nvars(), 2);
    if phi.is_zero() {
        return false;
    }
    // Factor out powers of the second variable: t^a · ψ with t ∤ ψ.
    let a = phi.terms().map(|(e, _)| e[1]).min().unwrap_or(0);
    if a >= 2 {
        return false;
    }
    let psi = phi.partial_eval(&[None, Some(Scalar::one())]).to_upoly(0).expect("univariate");
    let g = psi.gcd(&psi.derivative());
    g.degree() == Some(0)
}

/// Degree `m` piece and ordinarity verdict of `f` at `p`.
pub fn tangent_cone(f: &MPoly, p: &[Scalar]) -> Result<(u32, MPoly, bool)> {
    let d = f.total_degree().unwrap_or(0);
    let pieces = local_expansion(f, p, d)?;
    let m = pieces.iter().position(|x| !x.is_zero()).unwrap_or(pieces.len());
    let cone = pieces.get(m).cloned().unwrap_or_else(|| MPoly::zero(2));
    let ordinary = m > 0 && has_distinct_factors(&cone);
    Ok((m as u32, cone, ordinary))
}
