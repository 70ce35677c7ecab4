use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{kernel_basis, FieldKind, Mat, Scalar};
use crate::poly::{local_expansion, monomials, resultant, tangent_cone, MPoly};

use super::{singular_locus, validate_curve, PlaneCurve, ProjPoint};

/// Candidates drawn before a generator gives up.
pub const DEFAULT_BUDGET: usize = 50;

/// Prime used to screen large candidates before exact validation.
const SCREEN_PRIME: u64 = 1_000_003;

/// Random curve families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum GenMethod {
    /// Degree `d` with an ordinary `(d−3)`-fold point at `(0:0:1)`;
    /// projection from it is 3:1.
    Projection { d: u32 },
    /// `y`-degree 3 and `x`-degree `deg_x`; projection `(x:z)` is 3:1.
    Method1 { deg_x: u32 },
    /// `Res_u(x³ − a₁x − a₂, y − a₃ − a₄x − a₅x²)` with `a_i` of degree `d`.
    Method2 { d: u32 },
    /// Degree `d` with an ordinary `(d−2)`-fold point; hyperelliptic of
    /// genus `d−2`.
    Hyperelliptic { d: u32 },
    /// Degree `d` with `nodes` ordinary nodes at random points.
    Nodal { d: u32, nodes: u32 },
}

impl GenMethod {
    pub fn tag(&self) -> &'static str {
        match self {
            GenMethod::Projection { .. } => "projection",
            GenMethod::Method1 { .. } => "m1",
            GenMethod::Method2 { .. } => "m2",
            GenMethod::Hyperelliptic { .. } => "hyperelliptic",
            GenMethod::Nodal { .. } => "nodal",
        }
    }

    pub fn params(&self) -> String {
        match self {
            GenMethod::Projection { d } | GenMethod::Hyperelliptic { d } => format!("d={d}"),
            GenMethod::Method1 { deg_x } => format!("deg_x={deg_x}"),
            GenMethod::Method2 { d } => format!("d={d}"),
            GenMethod::Nodal { d, nodes } => format!("d={d};nodes={nodes}"),
        }
    }

    fn stream(&self) -> u64 {
        match self {
            GenMethod::Projection { .. } => 1,
            GenMethod::Method1 { .. } => 2,
            GenMethod::Method2 { .. } => 3,
            GenMethod::Hyperelliptic { .. } => 4,
            GenMethod::Nodal { .. } => 5,
        }
    }

    /// Reads a method name and its parameters: `projection d`, `m1 deg_x`,
    /// `m2 d` or `m2 (d,2)`, `hyperelliptic d`, `nodal (d,nodes)`.
    pub fn parse(name: &str, params: &str) -> std::result::Result<GenMethod, String> {
        let p = parse_ints(params).ok_or_else(|| format!("cannot read params '{params}'"))?;
        Ok(match (name, p.as_slice()) {
            ("projection", &[d]) => GenMethod::Projection { d },
            ("m1", &[deg_x]) => GenMethod::Method1 { deg_x },
            ("m2", &[d]) | ("m2", &[d, 2]) => GenMethod::Method2 { d },
            ("m2", &[_, e]) => return Err(format!("m2 supports e = 2 only, got e = {e}")),
            ("hyperelliptic", &[d]) => GenMethod::Hyperelliptic { d },
            ("nodal", &[d, nodes]) => GenMethod::Nodal { d, nodes },
            ("projection" | "m1" | "m2" | "hyperelliptic" | "nodal", _) => {
                return Err(format!("wrong number of params for {name}"))
            }
            _ => return Err(format!("unknown method '{name}'")),
        })
    }

    /// Deterministic random source for `seed`.
    pub fn rng(&self, seed: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(self.stream());
        rng
    }
}

/// An accepted generator output.
#[derive(Clone, Debug)]
pub struct Generated {
    pub curve: PlaneCurve,
    pub method: GenMethod,
    pub height: u32,
    pub seed: u64,
    /// Candidates drawn, including the accepted one.
    pub attempts: usize,
}

fn parse_ints(text: &str) -> Option<Vec<u32>> {
    let t = text.trim().trim_start_matches('(').trim_end_matches(')');
    t.split(',').map(|s| s.trim().parse().ok()).collect()
}

fn coefficient(rng: &mut ChaCha8Rng, height: u32) -> Scalar {
    let bound = (1i64 << height.clamp(1, 62)) - 1;
    Scalar::from_int(rng.gen_range(-bound..=bound))
}

fn nonzero_coefficient(rng: &mut ChaCha8Rng, height: u32) -> Scalar {
    loop {
        let c = coefficient(rng, height);
        if !c.is_zero() {
            return c;
        }
    }
}

/// Random form of degree `d` supported on monomials with `x,y`-degree at
/// least `k`: a point of multiplicity at least `k` at `(0:0:1)`.
fn form_with_point(d: u32, k: u32, height: u32, rng: &mut ChaCha8Rng) -> MPoly {
    let mut f = MPoly::zero(3);
    for e in monomials(3, d) {
        if e[0] + e[1] >= k {
            f.add_term(e, coefficient(rng, height));
        }
    }
    f
}

/// Basis of the ternary forms of degree `d` whose Taylor pieces of degree
/// below `order_i` vanish at `points[i]`.
pub fn forms_vanishing_to_order(d: u32, conditions: &[(ProjPoint, u32)]) -> Result<Vec<MPoly>> {
    let monos = monomials(3, d);
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (p, order) in conditions {
        if *order == 0 {
            continue;
        }
        let k = order - 1;
        let expansions: Vec<Vec<MPoly>> = monos
            .iter()
            .map(|m| local_expansion(&MPoly::monomial(m.clone(), Scalar::one()), p.coords(), k))
            .collect::<Result<_>>()?;
        for deg in 0..=k {
            for i in 0..=deg {
                let e = vec![i, deg - i];
                rows.push(expansions.iter().map(|pieces| pieces[deg as usize].coeff(&e)).collect());
            }
        }
    }
    let n = monos.len();
    if rows.is_empty() {
        return Ok(monos.into_iter().map(|m| MPoly::monomial(m, Scalar::one())).collect());
    }
    let kernel = kernel_basis(&Mat::from_rows(rows, n))?;
    Ok(kernel.iter().map(|v| MPoly::from_coeff_vector(&monos, v)).collect())
}

fn random_points(count: u32, rng: &mut ChaCha8Rng) -> Vec<ProjPoint> {
    let mut pts: Vec<[i64; 3]> = Vec::new();
    while pts.len() < count as usize {
        let c = [rng.gen_range(-3..=3), rng.gen_range(-3..=3), rng.gen_range(1..=3)];
        // No three collinear, which also rules out repeats.
        let collinear = pts.iter().enumerate().any(|(i, a)| {
            if *a == c || (a[0] * c[1] - a[1] * c[0] == 0 && a[0] * c[2] - a[2] * c[0] == 0 && a[1] * c[2] - a[2] * c[1] == 0) {
                return true;
            }
            pts[i + 1..].iter().any(|b| {
                let det = a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
                    + a[2] * (b[0] * c[1] - b[1] * c[0]);
                det == 0
            })
        });
        if !collinear {
            pts.push(c);
        }
    }
    pts.into_iter().map(|c| ProjPoint::from_i64(c[0], c[1], c[2]).expect("nonzero")).collect()
}

/// Random integer combination of a basis of forms with nodes at the given
/// points.
pub fn nodal_form(d: u32, points: &[ProjPoint], height: u32, rng: &mut ChaCha8Rng) -> Result<MPoly> {
    let conditions: Vec<(ProjPoint, u32)> = points.iter().map(|p| (p.clone(), 2)).collect();
    let basis = forms_vanishing_to_order(d, &conditions)?;
    let mut f = MPoly::zero(3);
    for b in &basis {
        f = f.add(&b.scale(&coefficient(rng, height)));
    }
    Ok(f.primitive())
}

/// One raw candidate; validation is left to the caller.
pub fn candidate(method: GenMethod, height: u32, rng: &mut ChaCha8Rng) -> Result<MPoly> {
    match method {
        GenMethod::Projection { d } => {
            if d < 4 {
                return Err(Error::InvalidInput("projection generator needs d ≥ 4".into()));
            }
            Ok(form_with_point(d, d - 3, height, rng))
        }
        GenMethod::Hyperelliptic { d } => {
            if d < 5 {
                return Err(Error::InvalidInput("hyperelliptic generator needs d ≥ 5".into()));
            }
            Ok(form_with_point(d, d - 2, height, rng))
        }
        GenMethod::Method1 { deg_x } => {
            if deg_x < 2 {
                return Err(Error::InvalidInput("method 1 needs deg_x ≥ 2".into()));
            }
            let d = deg_x + 3;
            let mut f = MPoly::zero(3);
            for i in 0..=deg_x {
                for j in 0..=3 {
                    let c = if (i, j) == (deg_x, 3) { nonzero_coefficient(rng, height) } else { coefficient(rng, height) };
                    f.add_term(vec![i, j, d - i - j], c);
                }
            }
            Ok(f)
        }
        GenMethod::Method2 { d } => {
            // Variables x, y, z, u; z stays unused until homogenization.
            let upoly = |rng: &mut ChaCha8Rng| {
                let mut a = MPoly::zero(4);
                for k in 0..=d {
                    let c = if k == d { nonzero_coefficient(rng, height) } else { coefficient(rng, height) };
                    a.add_term(vec![0, 0, 0, k], c);
                }
                a
            };
            let a: Vec<MPoly> = (0..5).map(|_| upoly(rng)).collect();
            let x = MPoly::var(4, 0);
            let y = MPoly::var(4, 1);
            let f = x.pow(3).sub(&a[0].mul(&x)).sub(&a[1]);
            let g = y.sub(&a[2]).sub(&a[3].mul(&x)).sub(&a[4].mul(&x.pow(2)));
            let f = if d == 0 {
                // Both inputs are constant in u; the relation is x³ − a₁x − a₂.
                f
            } else {
                resultant(&f, &g, 3)?
            };
            if f.is_zero() {
                return Err(Error::DegenerateResultant);
            }
            Ok(f.restrict_vars(&[0, 1]).homogenize().primitive())
        }
        GenMethod::Nodal { d, nodes } => {
            let pts = random_points(nodes, rng);
            nodal_form(d, &pts, height, rng)
        }
    }
}

/// Cheap rejection test modulo a prime: every singular point over `F_p`
/// must be `F_p`-rational and ordinary and the genus at least three.
fn screen_mod_p(f: &MPoly) -> bool {
    let fp = f.embed(FieldKind::Prime(SCREEN_PRIME));
    if fp.total_degree() != f.total_degree() {
        return true;
    }
    let Ok(locus) = singular_locus(&fp) else { return false };
    if locus.residual_degree > 0 {
        return false;
    }
    let mut deficit = 0i64;
    for s in &locus.points {
        match tangent_cone(&fp, s.point.coords()) {
            Ok((m, _, true)) => deficit += (m as i64) * (m as i64 - 1) / 2,
            _ => return false,
        }
    }
    let d = f.total_degree().unwrap_or(0) as i64;
    (d - 1) * (d - 2) / 2 - deficit >= 3
}

fn accept(method: GenMethod, f: &MPoly) -> Result<PlaneCurve> {
    if f.total_degree().unwrap_or(0) < 3 || !f.is_homogeneous() {
        return Err(Error::GenusTooSmall { genus: 0 });
    }
    if let GenMethod::Method2 { .. } = method {
        if !screen_mod_p(f) {
            return Err(Error::CurveUnsupported("rejected by the modular singularity screen".into()));
        }
    }
    let base = match method {
        GenMethod::Projection { d: 4 } => Some(ProjPoint::from_i64(0, 0, 1)?),
        _ => None,
    };
    let curve = validate_curve(f, &[], base)?;
    let origin = ProjPoint::from_i64(0, 0, 1)?;
    let expected = match method {
        GenMethod::Projection { d } if d > 4 => Some((origin, d - 3)),
        GenMethod::Hyperelliptic { d } => Some((origin, d - 2)),
        _ => None,
    };
    if let Some((p, m)) = expected {
        if !curve.sings().iter().any(|s| s.point == p && s.multiplicity == m) {
            return Err(Error::CurveUnsupported(format!("the point {p} does not have multiplicity {m}")));
        }
    }
    Ok(curve)
}

/// Validates one candidate the way [`generate`] does.
pub fn accept_candidate(method: GenMethod, f: &MPoly) -> Result<PlaneCurve> {
    accept(method, f)
}

/// Draws candidates until one validates or `budget` runs out.
pub fn generate(method: GenMethod, height: u32, seed: u64, budget: usize) -> Result<Generated> {
    let mut rng = method.rng(seed);
    for attempt in 1..=budget {
        let f = match candidate(method, height, &mut rng) {
            Ok(f) => f,
            Err(Error::DegenerateResultant) => continue,
            Err(e) => return Err(e),
        };
        match accept(method, &f) {
            Ok(curve) => return Ok(Generated { curve, method, height, seed, attempts: attempt }),
            Err(e) if e.is_internal() => return Err(e),
            Err(_) => continue,
        }
    }
    Err(Error::GenerationFailed { attempts: budget })
}

pub fn gen_trigonal_projection(d: u32, height: u32, seed: u64) -> Result<PlaneCurve> {
    generate(GenMethod::Projection { d }, height, seed, DEFAULT_BUDGET).map(|g| g.curve)
}

pub fn gen_method1(deg_x: u32, height: u32, seed: u64) -> Result<PlaneCurve> {
    generate(GenMethod::Method1 { deg_x }, height, seed, DEFAULT_BUDGET).map(|g| g.curve)
}

pub fn gen_method2(d: u32, height: u32, seed: u64) -> Result<PlaneCurve> {
    generate(GenMethod::Method2 { d }, height, seed, DEFAULT_BUDGET).map(|g| g.curve)
}

pub fn gen_hyperelliptic(d: u32, height: u32, seed: u64) -> Result<PlaneCurve> {
    generate(GenMethod::Hyperelliptic { d }, height, seed, DEFAULT_BUDGET).map(|g| g.curve)
}

pub fn gen_nodal(d: u32, nodes: u32, height: u32, seed: u64) -> Result<PlaneCurve> {
    generate(GenMethod::Nodal { d, nodes }, height, seed, DEFAULT_BUDGET).map(|g| g.curve)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projection_generator_genus() {
        let c = gen_trigonal_projection(5, 3, 1).unwrap();
        assert_eq!(c.genus(), 5);
        assert_eq!(c.sings().len(), 1);
        let c = gen_trigonal_projection(4, 3, 1).unwrap();
        assert_eq!(c.genus(), 3);
        assert!(c.base_point().is_some());
    }

    #[test]
    fn method1_genus() {
        let c = gen_method1(3, 3, 7).unwrap();
        assert_eq!(c.genus(), 4);
        assert_eq!(c.degree(), 6);
    }

    #[test]
    fn nodal_quintic() {
        let c = gen_nodal(5, 2, 3, 11).unwrap();
        assert_eq!(c.genus(), 4);
    }

    #[test]
    fn deterministic_given_seed() {
        let a = generate(GenMethod::Method1 { deg_x: 3 }, 4, 99, 10).unwrap();
        let b = generate(GenMethod::Method1 { deg_x: 3 }, 4, 99, 10).unwrap();
        assert_eq!(a.curve.f(), b.curve.f());
        assert_eq!(a.attempts, b.attempts);
    }
}
