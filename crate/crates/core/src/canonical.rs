//! Adjoint forms, the canonical map, and the spaces of quadrics and cubics
//! through the canonical image.

use std::collections::HashMap;

use serde::Serialize;

use crate::curve::{forms_vanishing_to_order, PlaneCurve, ProjPoint};
use crate::error::{Error, Result};
use crate::exactmath::{echelon, kernel_basis, rank, Mat, Scalar, Subspace};
use crate::poly::{monomials, MPoly};

/// The canonical map given by a basis of adjoint forms of degree `d−3`.
#[derive(Clone, Debug)]
pub struct CanonicalMap {
    omega: Vec<MPoly>,
}

impl CanonicalMap {
    pub fn omega(&self) -> &[MPoly] {
        &self.omega
    }

    pub fn genus(&self) -> usize {
        self.omega.len()
    }

    /// Pulls a form in the canonical coordinates back to the plane.
    pub fn pull_back(&self, q: &MPoly) -> MPoly {
        q.compose(&self.omega)
    }
}

/// Forms of degree `k` in `g` variables, as an echelon basis of
/// coefficient vectors over `monomials(g, k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormSpace {
    g: usize,
    degree: u32,
    monos: Vec<Vec<u32>>,
    space: Subspace,
}

impl FormSpace {
    pub fn new(g: usize, degree: u32, vectors: Vec<Vec<Scalar>>) -> FormSpace {
        let monos = monomials(g, degree);
        let space = Subspace::span(vectors, monos.len());
        FormSpace { g, degree, monos, space }
    }

    pub fn from_forms(g: usize, degree: u32, forms: &[MPoly]) -> Result<FormSpace> {
        let monos = monomials(g, degree);
        let vectors = forms
            .iter()
            .map(|q| {
                q.coeff_vector(&monos)
                    .ok_or_else(|| Error::InvalidInput(format!("form is not homogeneous of degree {degree}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FormSpace::new(g, degree, vectors))
    }

    pub fn ambient_dim(&self) -> usize {
        self.g
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn monomials(&self) -> &[Vec<u32>] {
        &self.monos
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        self.space.basis()
    }

    pub fn subspace(&self) -> &Subspace {
        &self.space
    }

    pub fn forms(&self) -> Vec<MPoly> {
        self.basis().iter().map(|v| MPoly::from_coeff_vector(&self.monos, v)).collect()
    }

    pub fn contains(&self, q: &MPoly) -> bool {
        q.coeff_vector(&self.monos).is_some_and(|v| self.space.contains(&v))
    }
}

/// Outcome of comparing cubics generated by quadrics with all cubics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Petri {
    GeneratedByQuadrics,
    QuadricsInsufficient,
    NotApplicable,
}

/// Basis of the adjoint forms: degree `d−3`, vanishing to order `m−1` at
/// every singular point of multiplicity `m`.
pub fn adjoint_basis(c: &PlaneCurve) -> Result<CanonicalMap> {
    let d = c.degree();
    if d < 4 {
        return Err(Error::InvalidInput("adjoints need degree at least 4".into()));
    }
    let conditions: Vec<(ProjPoint, u32)> =
        c.sings().iter().filter(|s| s.multiplicity >= 2).map(|s| (s.point.clone(), s.multiplicity - 1)).collect();
    let omega = forms_vanishing_to_order(d - 3, &conditions)?;
    if omega.len() != c.genus() {
        return Err(Error::AdjointDimensionMismatch { expected: c.genus(), found: omega.len() });
    }
    let omega = omega.into_iter().map(|w| w.embed(c.field())).collect();
    Ok(CanonicalMap { omega })
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Dimension of the quadrics through a non-hyperelliptic canonical curve.
pub fn expected_quadric_dim(g: usize) -> usize {
    (g - 2) * (g - 3) / 2
}

/// Dimension of the quadrics through a rational normal curve of degree
/// `g−1`, the canonical image of a hyperelliptic curve.
pub fn hyperelliptic_quadric_dim(g: usize) -> usize {
    (g - 1) * (g - 2) / 2
}

/// Dimension of the cubics through a non-hyperelliptic canonical curve.
pub fn expected_cubic_dim(g: usize) -> usize {
    binomial(g + 2, 3) - (5 * g - 5)
}

/// All degree-`k` products of the adjoints, keyed by exponent vector.
fn omega_products(omega: &[MPoly], k: u32) -> HashMap<Vec<u32>, MPoly> {
    let g = omega.len();
    let mut layer: HashMap<Vec<u32>, MPoly> = HashMap::new();
    layer.insert(vec![0; g], MPoly::one(3));
    for _ in 0..k {
        let mut next = HashMap::new();
        for (e, p) in &layer {
            // Extend only at or after the last occupied index so each
            // monomial is built once.
            let start = e.iter().rposition(|&x| x > 0).unwrap_or(0);
            for (i, w) in omega.iter().enumerate().skip(start) {
                let mut ne = e.clone();
                ne[i] += 1;
                next.insert(ne, p.mul(w));
            }
        }
        layer = next;
    }
    layer
}

/// Forms of degree `k` in the canonical coordinates that vanish on the
/// canonical image: those `q` with `q(ω) ≡ 0 mod f`.
///
/// The dimension is checked against the two admissible values for `k = 2`
/// (non-hyperelliptic and hyperelliptic) and against the non-hyperelliptic
/// value for `k = 3`.
pub fn forms_through_image(c: &PlaneCurve, cm: &CanonicalMap, k: u32) -> Result<FormSpace> {
    let space = forms_through_image_unchecked(c, cm, k)?;
    let g = cm.genus();
    let ok = match k {
        2 => space.dim() == expected_quadric_dim(g) || space.dim() == hyperelliptic_quadric_dim(g),
        3 => space.dim() == expected_cubic_dim(g),
        _ => unreachable!(),
    };
    if !ok {
        let expected = match k {
            2 => format!("{} or {}", expected_quadric_dim(g), hyperelliptic_quadric_dim(g)),
            _ => expected_cubic_dim(g).to_string(),
        };
        return Err(Error::UnexpectedDimension {
            what: format!("forms of degree {k} through the canonical image"),
            found: space.dim(),
            expected,
        });
    }
    Ok(space)
}

/// As [`forms_through_image`] without the dimension check.
pub fn forms_through_image_unchecked(c: &PlaneCurve, cm: &CanonicalMap, k: u32) -> Result<FormSpace> {
    if !(2..=3).contains(&k) {
        return Err(Error::InvalidInput("only quadrics and cubics are supported".into()));
    }
    let g = cm.genus();
    let d = c.degree();
    let big = k * (d - 3);
    let plane = monomials(3, big);
    let index: HashMap<&Vec<u32>, usize> = plane.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let canon = monomials(g, k);
    let products = omega_products(cm.omega(), k);
    let mut columns: Vec<Vec<Scalar>> = Vec::new();
    let to_column = |p: &MPoly| {
        let mut v = vec![Scalar::zero(); plane.len()];
        for (e, a) in p.terms() {
            v[index[e]] = a.clone();
        }
        v
    };
    for m in &canon {
        columns.push(to_column(&products[m]));
    }
    if big >= d {
        for m in monomials(3, big - d) {
            columns.push(to_column(&c.f().mul_monomial(&m, &Scalar::one())));
        }
    }
    let rows: Vec<Vec<Scalar>> = (0..plane.len()).map(|r| columns.iter().map(|col| col[r].clone()).collect()).collect();
    let kernel = kernel_basis(&Mat::from_rows(rows, columns.len()))?;
    let projected: Vec<Vec<Scalar>> = kernel.into_iter().map(|v| v[..canon.len()].to_vec()).collect();
    Ok(FormSpace::new(g, k, echelon(projected, canon.len())))
}

/// Whether the quadric dimension marks a hyperelliptic canonical image.
pub fn hyperelliptic_test(g: usize, quadric_dim: usize) -> Result<bool> {
    if g < 3 {
        return Err(Error::InvalidInput("genus below 3".into()));
    }
    if quadric_dim == hyperelliptic_quadric_dim(g) {
        Ok(true)
    } else if quadric_dim == expected_quadric_dim(g) {
        Ok(false)
    } else {
        Err(Error::CurveUnsupported(format!(
            "{quadric_dim} quadrics through the canonical image of a genus-{g} curve"
        )))
    }
}

/// Compares the cubics `x_i·q` generated by the quadrics with all cubics
/// through the canonical image.
pub fn petri_test(q: &FormSpace, c3: &FormSpace, g: usize) -> Petri {
    if g < 4 {
        return Petri::NotApplicable;
    }
    let cubic_monos = monomials(g, 3);
    let index: HashMap<&Vec<u32>, usize> = cubic_monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut vectors = Vec::new();
    for v in q.basis() {
        for i in 0..g {
            let mut w = vec![Scalar::zero(); cubic_monos.len()];
            for (m, a) in q.monomials().iter().zip(v) {
                if a.is_zero() {
                    continue;
                }
                let mut e = m.clone();
                e[i] += 1;
                w[index[&e]] = a.clone();
            }
            vectors.push(w);
        }
    }
    let r = if vectors.is_empty() { 0 } else { rank(&Mat::from_rows(vectors, cubic_monos.len())) };
    if r == c3.dim() {
        Petri::GeneratedByQuadrics
    } else {
        Petri::QuadricsInsufficient
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{gen_nodal, gen_trigonal_projection, PlaneCurve};
    use crate::poly::parse_poly;

    fn curve(s: &str) -> PlaneCurve {
        PlaneCurve::from_form(parse_poly(s, &["x", "y", "z"]).unwrap()).unwrap()
    }

    #[test]
    fn smooth_quartic() {
        let c = curve("x^4 + y^4 + z^4");
        let cm = adjoint_basis(&c).unwrap();
        let names: Vec<String> = cm.omega().iter().map(|w| w.to_string()).collect();
        assert_eq!(names, ["x", "y", "z"]);
        assert_eq!(forms_through_image(&c, &cm, 2).unwrap().dim(), 0);
    }

    #[test]
    fn smooth_quintic_has_six_quadrics() {
        let c = curve("x^5 + y^5 + z^5");
        let cm = adjoint_basis(&c).unwrap();
        assert_eq!(cm.genus(), 6);
        let q = forms_through_image(&c, &cm, 2).unwrap();
        assert_eq!(q.dim(), 6);
        let c3 = forms_through_image(&c, &cm, 3).unwrap();
        assert_eq!(petri_test(&q, &c3, 6), Petri::QuadricsInsufficient);
        for form in q.forms() {
            assert!(cm.pull_back(&form).is_divisible_by(c.f()));
        }
    }

    #[test]
    fn two_node_quintic_on_a_quadric() {
        let c = gen_nodal(5, 2, 3, 5).unwrap();
        let cm = adjoint_basis(&c).unwrap();
        assert_eq!(cm.genus(), 4);
        assert_eq!(forms_through_image(&c, &cm, 2).unwrap().dim(), 1);
    }

    #[test]
    fn triple_point_sextic() {
        let c = gen_trigonal_projection(6, 2, 3).unwrap();
        let cm = adjoint_basis(&c).unwrap();
        assert_eq!(cm.genus(), 7);
        let q = forms_through_image(&c, &cm, 2).unwrap();
        assert_eq!(q.dim(), 10);
        let c3 = forms_through_image(&c, &cm, 3).unwrap();
        assert_eq!(petri_test(&q, &c3, 7), Petri::QuadricsInsufficient);
    }

    #[test]
    fn hyperelliptic_dichotomy() {
        assert!(hyperelliptic_test(3, 1).unwrap());
        assert!(!hyperelliptic_test(3, 0).unwrap());
        assert!(!hyperelliptic_test(5, 3).unwrap());
        assert!(hyperelliptic_test(5, 4).is_err());
    }
}
