//! Line-oriented curve files:
//!
//! ```text
//! # comment
//! f = x^3*y + y^3*z + z^3*x
//! sing = (0:0:1) mult 2
//! point = (1:0:0)
//! field = Q
//! ```

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::exactmath::{FieldKind, Scalar};
use crate::poly::{parse_poly_at, MPoly};

use super::{validate_curve, PlaneCurve, ProjPoint, SingularPoint};

/// Parsed contents of a curve file.
#[derive(Clone, Debug)]
pub struct CurveFile {
    pub f: MPoly,
    pub sings: Vec<SingularPoint>,
    pub point: Option<ProjPoint>,
    pub field: FieldKind,
}

impl CurveFile {
    pub fn validate(&self) -> Result<PlaneCurve> {
        validate_curve(&self.f, &self.sings, self.point.clone())
    }
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

fn parse_scalar(text: &str, line: usize, col: usize) -> Result<Scalar> {
    let c = parse_poly_at(text, &[], line, col)?;
    Ok(c.coeff(&[]))
}

fn parse_point_at(text: &str, line: usize, col: usize) -> Result<ProjPoint> {
    let t = text.trim();
    let lead = text.len() - text.trim_start().len();
    let inner = t
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| parse_err(line, col + lead, "expected a point (a:b:c)"))?;
    let mut coords = Vec::new();
    let mut offset = col + lead + 1;
    for part in inner.split(':') {
        coords.push(parse_scalar(part, line, offset)?);
        offset += part.len() + 1;
    }
    if coords.len() != 3 {
        return Err(parse_err(line, col + lead, "a point has three coordinates"));
    }
    ProjPoint::new(coords).map_err(|_| parse_err(line, col + lead, "the zero vector is not a point"))
}

/// Parses a point written `(a:b:c)`.
pub fn parse_point(text: &str) -> Result<ProjPoint> {
    parse_point_at(text, 1, 1)
}

pub fn parse_curve_file(text: &str) -> Result<CurveFile> {
    let mut f = None;
    let mut sings = Vec::new();
    let mut point = None;
    let mut field = FieldKind::Rational;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some(eq) = content.find('=') else {
            return Err(parse_err(line, 1, "expected 'key = value'"));
        };
        let key = content[..eq].trim();
        let value = &content[eq + 1..];
        let vcol = eq + 2;
        match key {
            "f" => {
                if f.is_some() {
                    return Err(parse_err(line, 1, "duplicate 'f' line"));
                }
                f = Some(parse_poly_at(value, &["x", "y", "z"], line, vcol)?);
            }
            "sing" => {
                let Some(m) = value.find("mult") else {
                    return Err(parse_err(line, vcol, "expected '(a:b:c) mult m'"));
                };
                let p = parse_point_at(&value[..m], line, vcol)?;
                let mult: u32 = value[m + 4..]
                    .trim()
                    .parse()
                    .map_err(|_| parse_err(line, vcol + m + 4, "expected a multiplicity"))?;
                if mult == 0 {
                    return Err(parse_err(line, vcol + m + 4, "multiplicity must be positive"));
                }
                sings.push(SingularPoint { point: p, multiplicity: mult });
            }
            "point" => {
                if point.is_some() {
                    return Err(parse_err(line, 1, "duplicate 'point' line"));
                }
                point = Some(parse_point_at(value, line, vcol)?);
            }
            "field" => {
                let v = value.trim();
                field = if v == "Q" {
                    FieldKind::Rational
                } else if let Some(p) = v.strip_prefix("Fp") {
                    let p: u64 = p.trim().parse().map_err(|_| parse_err(line, vcol, "expected 'Fp <prime>'"))?;
                    if p < 3 || !crate::poly::roots::is_prime(p) {
                        return Err(parse_err(line, vcol, format!("{p} is not an odd prime")));
                    }
                    FieldKind::Prime(p)
                } else {
                    return Err(parse_err(line, vcol, "field must be 'Q' or 'Fp <prime>'"));
                };
            }
            other => return Err(parse_err(line, 1, format!("unknown key '{other}'"))),
        }
    }
    let f = f.ok_or_else(|| parse_err(1, 1, "missing 'f' line"))?;
    let (f, sings, point) = match field {
        FieldKind::Prime(_) => (
            f.embed(field),
            sings.into_iter().map(|s| SingularPoint { point: s.point.embed(field), ..s }).collect(),
            point.map(|p| p.embed(field)),
        ),
        _ => (f, sings, point),
    };
    Ok(CurveFile { f, sings, point, field })
}

/// Serializes a curve; `comments` become leading `#` lines.
pub fn write_curve_file(curve: &PlaneCurve, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    if let FieldKind::Prime(p) = curve.field() {
        let _ = writeln!(out, "field = Fp {p}");
    }
    let _ = writeln!(out, "f = {}", curve.f());
    for s in curve.sings() {
        let _ = writeln!(out, "sing = {} mult {}", s.point, s.multiplicity);
    }
    if let Some(p) = curve.base_point() {
        let _ = writeln!(out, "point = {p}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_keys() {
        let text = "# Klein\nf = x^3*y + y^3*z + z^3*x\npoint = (0:0:1)\nfield = Q\n";
        let cf = parse_curve_file(text).unwrap();
        assert_eq!(cf.point, Some(ProjPoint::from_i64(0, 0, 1).unwrap()));
        let c = cf.validate().unwrap();
        assert_eq!(c.genus(), 3);
        let back = parse_curve_file(&write_curve_file(&c, &["again".into()])).unwrap();
        assert_eq!(&back.f, c.f());
    }

    #[test]
    fn sing_lines_and_errors() {
        let cf = parse_curve_file("f = y^2*z - x^3\nsing = (0:0:1) mult 2").unwrap();
        assert_eq!(cf.sings[0].multiplicity, 2);
        assert!(matches!(parse_curve_file("f = x^3 +"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_curve_file("f = x^3\nsing = (0:0) mult 2"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_curve_file("g = x"), Err(Error::Parse { .. })));
        assert!(matches!(parse_curve_file("f = x\nfield = Fp 9"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn standalone_points() {
        assert_eq!(parse_point("(1:-2:1/3)").unwrap(), ProjPoint::new(vec![Scalar::from_int(3), Scalar::from_int(-6), Scalar::one()]).unwrap());
        assert!(parse_point("(0:0:0)").is_err());
        assert!(parse_point("1:2:3").is_err());
    }

    #[test]
    fn prime_field_files() {
        let cf = parse_curve_file("field = Fp 101\nf = x^4 + y^4 + z^4").unwrap();
        assert_eq!(cf.field, FieldKind::Prime(101));
        assert_eq!(cf.f.field_kind(), Some(FieldKind::Prime(101)));
    }
}
