//! Plane projective curves with ordinary singularities: singular locus,
//! validation, genus, random generators and the curve file format.

mod file;
mod generate;
mod singular;

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactmath::{FieldKind, Scalar};
use crate::poly::{normalize_point, MPoly};

pub use file::{parse_curve_file, parse_point, write_curve_file, CurveFile};
pub use generate::{
    accept_candidate, candidate, forms_vanishing_to_order, gen_hyperelliptic, gen_method1, gen_method2, gen_nodal,
    gen_trigonal_projection, generate, nodal_form, GenMethod, Generated, DEFAULT_BUDGET,
};
pub use singular::{singular_locus, validate_curve, SingularLocus};

/// A point of the projective plane, scaled so its last nonzero coordinate
/// is one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjPoint {
    coords: Vec<Scalar>,
}

impl ProjPoint {
    pub fn new(coords: Vec<Scalar>) -> Result<ProjPoint> {
        if coords.len() != 3 {
            return Err(Error::InvalidInput("plane points have three coordinates".into()));
        }
        Ok(ProjPoint { coords: normalize_point(&coords)? })
    }

    pub fn from_i64(a: i64, b: i64, c: i64) -> Result<ProjPoint> {
        ProjPoint::new(vec![Scalar::from_int(a), Scalar::from_int(b), Scalar::from_int(c)])
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn embed(&self, kind: FieldKind) -> ProjPoint {
        ProjPoint { coords: self.coords.iter().map(|c| c.embed(kind)).collect() }
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{}:{})", self.coords[0], self.coords[1], self.coords[2])
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A singular point together with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularPoint {
    pub point: ProjPoint,
    pub multiplicity: u32,
}

/// A validated plane curve: an irreducible-looking homogeneous ternary form
/// whose singularities are all ordinary with coordinates in the ground
/// field.
#[derive(Clone, Debug)]
pub struct PlaneCurve {
    f: MPoly,
    degree: u32,
    sings: Vec<SingularPoint>,
    genus: usize,
    base_point: Option<ProjPoint>,
}

impl PlaneCurve {
    /// Validates `f`, discovering its singular points.
    pub fn from_form(f: MPoly) -> Result<PlaneCurve> {
        validate_curve(&f, &[], None)
    }

    pub fn f(&self) -> &MPoly {
        &self.f
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn sings(&self) -> &[SingularPoint] {
        &self.sings
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// A smooth point of the curve supplied with the input, if any.
    pub fn base_point(&self) -> Option<&ProjPoint> {
        self.base_point.as_ref()
    }

    pub fn field(&self) -> FieldKind {
        self.f.field_kind().unwrap_or(FieldKind::Rational)
    }

    /// The same curve with a new defining form (a nonzero multiple or a
    /// coordinate change already applied to the points).
    pub(crate) fn with_parts(
        f: MPoly,
        sings: Vec<SingularPoint>,
        genus: usize,
        base_point: Option<ProjPoint>,
    ) -> PlaneCurve {
        let degree = f.total_degree().unwrap_or(0);
        PlaneCurve { f, degree, sings, genus, base_point }
    }
}

/// Geometric genus of a plane curve of degree `d` with ordinary singular
/// points of the given multiplicities.
pub fn genus(d: u32, multiplicities: &[u32]) -> Result<usize> {
    if d < 3 {
        return Err(Error::InvalidInput(format!("degree {d} is below 3")));
    }
    let d = d as i64;
    let g = (d - 1) * (d - 2) / 2 - multiplicities.iter().map(|&m| (m as i64) * (m as i64 - 1) / 2).sum::<i64>();
    usize::try_from(g).map_err(|_| Error::InvalidInput(format!("singularities exceed the arithmetic genus ({g})")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_formula() {
        assert_eq!(genus(4, &[]).unwrap(), 3);
        assert_eq!(genus(6, &[3]).unwrap(), 7);
        assert_eq!(genus(6, &[3, 3]).unwrap(), 4);
        assert_eq!(genus(5, &[2, 2]).unwrap(), 4);
        assert!(genus(4, &[3, 2]).is_err());
    }

    #[test]
    fn points_are_normalized() {
        let p = ProjPoint::from_i64(2, 4, -2).unwrap();
        assert_eq!(p.to_string(), "(-1:-2:1)");
        assert_eq!(p, ProjPoint::from_i64(1, 2, -1).unwrap());
        assert_eq!(ProjPoint::from_i64(3, 0, 0).unwrap().to_string(), "(1:0:0)");
        assert!(ProjPoint::from_i64(0, 0, 0).is_err());
    }
}
