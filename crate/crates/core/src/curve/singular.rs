use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactmath::{FieldKind, Scalar};
use crate::poly::{resultant, sylvester_det, tangent_cone, MPoly, UPoly};

use super::{genus, PlaneCurve, ProjPoint, SingularPoint};

/// Singular points with coordinates in the ground field, plus the number of
/// singular points (counted over the algebraic closure, up to coincidences)
/// that are not defined over it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularLocus {
    pub points: Vec<SingularPoint>,
    pub residual_degree: usize,
}

const MAX_FRAMES: usize = 40;

/// Unimodular `L·U` with entries of `L`, `U` in `[-2, 2]`.
fn random_frame(rng: &mut ChaCha8Rng) -> Vec<Vec<Scalar>> {
    let mut l = [[0i64; 3]; 3];
    let mut u = [[0i64; 3]; 3];
    for i in 0..3 {
        l[i][i] = 1;
        u[i][i] = 1;
        for j in 0..3 {
            if j < i {
                l[i][j] = rng.gen_range(-2..=2);
            } else if j > i {
                u[i][j] = rng.gen_range(-2..=2);
            }
        }
    }
    (0..3)
        .map(|i| (0..3).map(|j| Scalar::from_int((0..3).map(|k| l[i][k] * u[k][j]).sum())).collect())
        .collect()
}

fn apply(t: &[Vec<Scalar>], p: &[Scalar]) -> Vec<Scalar> {
    t.iter()
        .map(|row| row.iter().zip(p).fold(Scalar::zero(), |acc, (a, b)| acc + a * b))
        .collect()
}

fn at(nvars: usize, assignments: &[(usize, Scalar)]) -> Vec<Option<Scalar>> {
    let mut v = vec![None; nvars];
    for (i, s) in assignments {
        v[*i] = Some(s.clone());
    }
    v
}

/// Whether the polynomials share a zero on the line `z = 0`.
fn common_zero_at_infinity(polys: &[MPoly]) -> bool {
    let one = Scalar::one();
    let zero = Scalar::zero();
    if polys.iter().all(|p| p.eval(&[one.clone(), zero.clone(), zero.clone()]).is_zero()) {
        return true;
    }
    let mut g = UPoly::zero();
    for p in polys {
        let u = p.partial_eval(&at(3, &[(1, one.clone()), (2, zero.clone())])).to_upoly(0).expect("univariate");
        g = g.gcd(&u);
    }
    g.degree().is_none_or(|d| d > 0)
}

/// Whether the y-leading coefficient of a homogeneous form is a constant.
fn monic_in_y(p: &MPoly) -> bool {
    let d = p.total_degree().unwrap_or(0);
    !p.coeff(&[0, d, 0]).is_zero()
}

/// All singular points of a homogeneous ternary form.
///
/// Works in a random unimodular frame in which the partial derivatives are
/// monic in `y` and share no zero at infinity; common roots of pairwise
/// resultants then give the `x`-coordinates of all singular points.
pub fn singular_locus(f: &MPoly) -> Result<SingularLocus> {
    let d = check_form(f)?;
    let kind = f.field_kind().ok_or_else(|| Error::InvalidInput("mixed coefficient fields".into()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5147_4c4f_4355_5321);
    for _ in 0..MAX_FRAMES {
        let t = random_frame(&mut rng);
        let g = f.linear_substitute(&t);
        let mut polys: Vec<MPoly> = (0..3).map(|i| g.derivative(i)).filter(|p| !p.is_zero()).collect();
        let ch = kind.characteristic();
        if ch != 0 && d as u64 % ch == 0 {
            polys.push(g.clone());
        }
        if polys.len() < 2 {
            return Err(Error::ReducibleSuspected);
        }
        if !polys.iter().all(monic_in_y) || common_zero_at_infinity(&polys) {
            continue;
        }
        let one = Scalar::one();
        let affine: Vec<MPoly> = polys.iter().map(|p| p.partial_eval(&at(3, &[(2, one.clone())]))).collect();
        let mut common = UPoly::zero();
        let mut any_nonzero = false;
        'pairs: for i in 0..affine.len() {
            for j in i + 1..affine.len() {
                let r = resultant(&affine[i], &affine[j], 1)?.to_upoly(0).expect("univariate");
                if r.is_zero() {
                    continue;
                }
                any_nonzero = true;
                common = common.gcd(&r);
                if common.degree() == Some(0) {
                    break 'pairs;
                }
            }
        }
        if !any_nonzero {
            return Err(Error::ReducibleSuspected);
        }
        let sqf = common.squarefree_part()?;
        let xs = sqf.roots()?;
        let mut residual = sqf.degree().unwrap_or(0) - xs.len();
        let mut points = Vec::new();
        for x0 in xs {
            let mut gy = UPoly::zero();
            for p in &affine {
                let u = p.partial_eval(&at(3, &[(0, x0.clone())])).to_upoly(1).expect("univariate");
                gy = gy.gcd(&u);
            }
            if gy.is_zero() {
                return Err(Error::ReducibleSuspected);
            }
            let gy = gy.squarefree_part()?;
            let ys = gy.roots()?;
            residual += gy.degree().unwrap_or(0) - ys.len();
            for y0 in ys {
                let q = apply(&t, &[x0.clone(), y0, Scalar::one()]);
                let point = ProjPoint::new(q)?;
                let (m, _, _) = tangent_cone(f, point.coords())?;
                if m < 2 {
                    return Err(Error::Internal(format!("located point {point} is not singular")));
                }
                points.push(SingularPoint { point, multiplicity: m });
            }
        }
        points.sort_by_key(|s| s.point.to_string());
        return Ok(SingularLocus { points, residual_degree: residual });
    }
    Err(Error::Internal("no admissible coordinate frame for the singular locus".into()))
}

fn check_form(f: &MPoly) -> Result<u32> {
    if f.nvars() != 3 || f.is_zero() || !f.is_homogeneous() {
        return Err(Error::InvalidInput("curve must be a nonzero homogeneous form in x, y, z".into()));
    }
    let d = f.total_degree().unwrap_or(0);
    if d < 3 {
        return Err(Error::InvalidInput(format!("curve degree {d} is below 3")));
    }
    Ok(d)
}

/// Whether `f` and `∂f/∂y` visibly share a factor: their resultant with
/// respect to `y` vanishes identically. Screened modulo a prime first.
fn shares_factor_with_derivative(f: &MPoly) -> Result<bool> {
    let one = Scalar::one();
    let fa = f.partial_eval(&at(3, &[(2, one)]));
    let fy = fa.derivative(1);
    if fy.is_zero() {
        return Ok(true);
    }
    if fa.degree_in(1) == 0 {
        return Ok(false);
    }
    if f.field_kind() == Some(FieldKind::Rational) {
        let fa = fa.primitive();
        let fy = fa.derivative(1);
        let p = 2_147_483_647u64;
        let (m, n) = (fa.degree_in(1) as usize, fy.degree_in(1) as usize);
        for x0 in [17i64, 1_000_003, 77_777_777] {
            let sx = Scalar::prime(x0, p);
            let coeffs = |g: &MPoly, len: usize| -> Vec<Scalar> {
                let cs = g.coeffs_in(1);
                (0..=len)
                    .map(|k| {
                        cs.get(k).map_or(Scalar::prime(0, p), |c| {
                            c.embed(FieldKind::Prime(p)).eval(&[sx.clone(), Scalar::prime(0, p), Scalar::prime(0, p)])
                        })
                    })
                    .collect()
            };
            if !sylvester_det(&coeffs(&fa, m), &coeffs(&fy, n)).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(resultant(&fa, &fy, 1)?.is_zero())
}

/// Checks that `f` is a supported curve and returns it validated.
///
/// `declared` lists singular points supplied with the input; when empty the
/// singular locus is adopted as found. `base_point`, if given, must be a
/// smooth point of the curve.
pub fn validate_curve(f: &MPoly, declared: &[SingularPoint], base_point: Option<ProjPoint>) -> Result<PlaneCurve> {
    let d = check_form(f)?;
    let kind = f.field_kind().ok_or_else(|| Error::InvalidInput("mixed coefficient fields".into()))?;
    if let FieldKind::Quadratic(_) = kind {
        return Err(Error::InvalidInput("curves must be defined over Q or a prime field".into()));
    }
    for s in declared {
        let (m, _, ordinary) = tangent_cone(f, s.point.coords())?;
        if m == 0 {
            return Err(Error::PointNotOnCurve { point: s.point.to_string() });
        }
        if m != s.multiplicity {
            return Err(Error::InvalidInput(format!(
                "point {} has multiplicity {m}, declared {}",
                s.point, s.multiplicity
            )));
        }
        if !ordinary && m >= 2 {
            return Err(Error::NonOrdinarySingularity { point: s.point.to_string(), multiplicity: m });
        }
    }
    let mut base = base_point;
    for s in declared.iter().filter(|s| s.multiplicity == 1) {
        if base.is_none() {
            base = Some(s.point.clone());
        }
    }
    if let Some(b) = &base {
        let (m, _, _) = tangent_cone(f, b.coords())?;
        match m {
            0 => return Err(Error::PointNotOnCurve { point: b.to_string() }),
            1 => {}
            _ => return Err(Error::InvalidInput(format!("base point {b} is singular"))),
        }
    }
    if shares_factor_with_derivative(f)? {
        return Err(Error::ReducibleSuspected);
    }
    let locus = singular_locus(f)?;
    for s in &locus.points {
        let (_, _, ordinary) = tangent_cone(f, s.point.coords())?;
        if !ordinary {
            return Err(Error::NonOrdinarySingularity { point: s.point.to_string(), multiplicity: s.multiplicity });
        }
    }
    if locus.residual_degree > 0 {
        return Err(Error::IrrationalSingularLocus { residual_degree: locus.residual_degree });
    }
    let declared_sings: Vec<&SingularPoint> = declared.iter().filter(|s| s.multiplicity >= 2).collect();
    if !declared_sings.is_empty() {
        for s in &locus.points {
            if !declared_sings.iter().any(|t| t.point == s.point) {
                return Err(Error::UndeclaredSingularity { point: s.point.to_string() });
            }
        }
        for t in &declared_sings {
            if !locus.points.iter().any(|s| s.point == t.point) {
                return Err(Error::Internal(format!("declared singular point {} was not located", t.point)));
            }
        }
    }
    let mults: Vec<u32> = locus.points.iter().map(|s| s.multiplicity).collect();
    let d_i = d as i64;
    let g = (d_i - 1) * (d_i - 2) / 2 - mults.iter().map(|&m| (m as i64) * (m as i64 - 1) / 2).sum::<i64>();
    if g < 3 {
        return Err(Error::GenusTooSmall { genus: g });
    }
    let g = genus(d, &mults)?;
    Ok(PlaneCurve::with_parts(f.clone(), locus.points, g, base))
}
