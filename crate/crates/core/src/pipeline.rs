//! The decision procedure: canonical data, quadric hull classification,
//! construction of a trigonal pencil, and per-instance verification of its
//! fiber degree.

use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::canonical::{
    adjoint_basis, forms_through_image, hyperelliptic_test, petri_test, CanonicalMap, FormSpace, Petri,
};
use crate::curve::{PlaneCurve, ProjPoint, SingularPoint};
use crate::error::{Error, Result, StageExt};
use crate::exactmath::{kernel_basis, FieldKind, Mat, Scalar, Subspace};
use crate::liealg::{classify, levi, radical, split_ideals, stabilizer_algebra, stabilizer_dim, LieAlg, LieCase};
use crate::poly::{multiplicity, resultant, MPoly};
use crate::scroll::{p1xp1_rulings, scroll_pencil, PencilMap, ScrollPencil};

/// Fiber-degree draws per verification.
const DRAWS: usize = 3;
/// Rounds of fresh draws when no value has a majority.
const ROUNDS: usize = 3;
/// Bound on the random fiber parameters.
const T_BOUND: i64 = 10_000;
/// Bound on the shear parameter.
const SHEAR_BOUND: i64 = 9;

/// Result of counting the points in generic fibers of a pencil.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberCount {
    /// The majority value over the draws.
    pub degree: usize,
    pub draws: Vec<usize>,
    /// Shear `λ` used by each draw: `x ↦ x + λy`.
    pub shears: Vec<i64>,
    /// Fiber parameters `(t₁, t₂)` used by each draw.
    pub params: Vec<(i64, i64)>,
}

impl FiberCount {
    pub fn unanimous(&self) -> bool {
        self.draws.iter().all(|&d| d == self.degree)
    }
}

/// Dehomogenizes at `z = 1` after the shear `x ↦ x + λy`.
fn affine(f: &MPoly, lambda: &Scalar) -> MPoly {
    let x = MPoly::var(3, 0).add(&MPoly::var(3, 1).scale(lambda));
    let sheared = f.compose(&[x, MPoly::var(3, 1), MPoly::var(3, 2)]);
    sheared.partial_eval(&[None, None, Some(Scalar::one())]).restrict_vars(&[0, 1])
}

/// One fiber count: `deg sqf(R₁) − deg gcd(sqf(R₁), R₂)` with
/// `R_i = Res_y(F, P − t_i Q)`. `None` when the draw is degenerate.
fn one_draw(f: &MPoly, map: &PencilMap, lambda: &Scalar, t1: &Scalar, t2: &Scalar) -> Result<Option<usize>> {
    let big_f = affine(f, lambda);
    let p = affine(&map.p, lambda);
    let q = affine(&map.q, lambda);
    let res = |t: &Scalar| -> Result<Option<crate::poly::UPoly>> {
        let g = p.sub(&q.scale(t));
        if g.is_zero() {
            return Ok(None);
        }
        if g.degree_in(1) == 0 && big_f.degree_in(1) == 0 {
            return Ok(None);
        }
        let r = resultant(&big_f, &g, 1)?;
        Ok(r.to_upoly(0).filter(|u| !u.is_zero()))
    };
    let (Some(r1), Some(r2)) = (res(t1)?, res(t2)?) else {
        return Ok(None);
    };
    let s1 = r1.squarefree_part()?;
    let common = s1.gcd(&r2);
    let d1 = s1.degree().unwrap_or(0);
    let dc = common.degree().unwrap_or(0);
    Ok(Some(d1 - dc))
}

/// Counts the generic fiber of `map` on `c` with seeded random shears and
/// parameters; returns the majority over three draws.
pub fn map_degree(c: &PlaneCurve, map: &PencilMap, seed: u64) -> Result<FiberCount> {
    let f = c.f();
    let kind = c.field().join(map.field()).ok_or_else(|| Error::InvalidInput("map and curve fields differ".into()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last = Vec::new();
    for _ in 0..ROUNDS {
        let mut count = FiberCount { degree: 0, draws: Vec::new(), shears: Vec::new(), params: Vec::new() };
        let mut attempts = 0;
        while count.draws.len() < DRAWS {
            attempts += 1;
            if attempts > 20 * DRAWS {
                return Err(Error::CurveUnsupported("no admissible fiber parameters".into()));
            }
            let lam: i64 = rng.gen_range(-SHEAR_BOUND..=SHEAR_BOUND);
            let lambda = Scalar::from_int(lam).embed(kind);
            // F monic in y after the shear: its y^d coefficient is f(λ, 1, 0)
            if f.eval(&[lambda.clone(), Scalar::one().embed(kind), Scalar::zero().embed(kind)]).is_zero() {
                continue;
            }
            let a: i64 = rng.gen_range(-T_BOUND..=T_BOUND);
            let b: i64 = rng.gen_range(-T_BOUND..=T_BOUND);
            let (t1, t2) = (Scalar::from_int(a).embed(kind), Scalar::from_int(b).embed(kind));
            if t1 == t2 {
                continue;
            }
            if let Some(n) = one_draw(f, map, &lambda, &t1, &t2)? {
                count.draws.push(n);
                count.shears.push(lam);
                count.params.push((a, b));
            }
        }
        let mut best = None;
        for &v in &count.draws {
            let k = count.draws.iter().filter(|&&w| w == v).count();
            if k * 2 > count.draws.len() {
                best = Some(v);
            }
        }
        if let Some(v) = best {
            count.degree = v;
            return Ok(count);
        }
        last = count.draws;
    }
    Err(Error::DegenerateFiber { draws: last })
}

/// The pencil of lines through the image of `point` on the canonical
/// curve; for a plane quartic, the lines through `point` itself.
pub fn g3_map(c: &PlaneCurve, cm: &CanonicalMap, point: &ProjPoint) -> Result<PencilMap> {
    if !c.f().eval(point.coords()).is_zero() {
        return Err(Error::PointNotOnCurve { point: point.to_string() });
    }
    if multiplicity(c.f(), point.coords())? != 1 {
        return Err(Error::InvalidInput(format!("base point {point} is singular")));
    }
    let image: Vec<Scalar> = cm.omega().iter().map(|w| w.eval(point.coords())).collect();
    if image.iter().all(Scalar::is_zero) {
        return Err(Error::Internal("canonical map has a base point".into()));
    }
    let ker = kernel_basis(&Mat::from_rows(vec![image.clone()], image.len()))?;
    if ker.len() != 2 {
        return Err(Error::Internal("genus-3 canonical space is not a plane".into()));
    }
    let p = cm.pull_back(&MPoly::linear(&ker[0]));
    let q = cm.pull_back(&MPoly::linear(&ker[1]));
    Ok(PencilMap::new(p, q))
}

/// Case of the decision, following the hull of the canonical curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Case {
    Genus3,
    Scroll,
    P1xP1,
    Veronese,
    CurveCutByQuadrics,
}

impl Case {
    pub fn is_trigonal(self) -> bool {
        matches!(self, Case::Genus3 | Case::Scroll | Case::P1xP1)
    }
}

/// Isomorphism type of the Levi subalgebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LeviType {
    Zero,
    Sl2,
    Sl2xSl2,
    Sl3,
    /// Not computed (prime fields and the genus-3 branch).
    Skipped,
}

/// Field the emitted map is defined over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum MapField {
    Rational,
    QuadraticExtension { delta: i64 },
    PrimeField { p: u64 },
}

impl From<FieldKind> for MapField {
    fn from(k: FieldKind) -> MapField {
        match k {
            FieldKind::Rational => MapField::Rational,
            FieldKind::Quadratic(delta) => MapField::QuadraticExtension { delta },
            FieldKind::Prime(p) => MapField::PrimeField { p },
        }
    }
}

/// A verified pencil.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MapRecord {
    pub pencil: PencilMap,
    pub field: MapField,
    pub fibers: FiberCount,
}

/// Echo of the validated input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InputEcho {
    pub f: String,
    pub degree: u32,
    pub field: String,
    pub singularities: Vec<SingularPoint>,
    pub point: Option<ProjPoint>,
}

/// Full record of one decision.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub input: InputEcho,
    pub seed: u64,
    pub genus: usize,
    pub adjoint_dim: usize,
    pub quadric_dim: usize,
    pub cubic_dim: Option<usize>,
    pub lie_dim: Option<usize>,
    pub radical_dim: Option<usize>,
    pub levi_dim: Option<usize>,
    pub levi_type: LeviType,
    pub case: Case,
    pub trigonal: bool,
    pub map_available: bool,
    /// Why no map was emitted for a trigonal curve.
    pub map_note: Option<String>,
    pub map: Option<MapRecord>,
    pub verified_degree: Option<usize>,
    /// Candidate pencils that verified at degree 3 (P¹ × P¹ has two).
    pub verified_candidates: usize,
    pub petri: Petri,
    pub agreement: bool,
    #[serde(skip)]
    pub timings: Vec<(&'static str, f64)>,
}

impl Report {
    /// JSON with a stable key order; wall-clock timings only on request so
    /// that the default serialization is reproducible byte for byte.
    pub fn to_json(&self, include_timings: bool) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if include_timings {
            let t: serde_json::Map<String, serde_json::Value> =
                self.timings.iter().map(|(k, s)| (k.to_string(), serde_json::json!(s))).collect();
            v.as_object_mut().expect("object").insert("timings".into(), serde_json::Value::Object(t));
        }
        serde_json::to_string_pretty(&v).expect("report serializes")
    }
}

/// Intermediate objects of a decision, for inspection and testing.
#[derive(Clone, Debug, Default)]
pub struct Trace {
    pub canonical: Option<CanonicalMap>,
    pub quadrics: Option<FormSpace>,
    pub cubics: Option<FormSpace>,
    pub lie: Option<LieAlg>,
    pub radical: Option<Subspace>,
    pub levi: Option<LieAlg>,
    pub ideals: Option<(LieAlg, LieAlg)>,
    /// Pencils built from scroll rulings, in summand order.
    pub pencils: Vec<ScrollPencil>,
    /// Fiber counts of the candidate pencils, aligned with `pencils` (or
    /// the genus-3 pencil).
    pub fiber_counts: Vec<FiberCount>,
}

/// Options for [`decide`].
#[derive(Clone, Debug, Default)]
pub struct DecideOptions {
    pub seed: u64,
    /// Point on the curve for the genus-3 pencil; the curve's own base
    /// point is used when absent.
    pub point: Option<ProjPoint>,
}

struct Clock {
    start: Instant,
    laps: Vec<(&'static str, f64)>,
}

impl Clock {
    fn new() -> Clock {
        Clock { start: Instant::now(), laps: Vec::new() }
    }

    fn lap(&mut self, stage: &'static str) {
        let now = Instant::now();
        self.laps.push((stage, (now - self.start).as_secs_f64()));
        self.start = now;
    }
}

pub fn decide(c: &PlaneCurve, opts: &DecideOptions) -> Result<Report> {
    decide_detailed(c, opts).map(|(r, _)| r)
}

fn levi_type(dim: usize) -> LeviType {
    match dim {
        0 => LeviType::Zero,
        3 => LeviType::Sl2,
        6 => LeviType::Sl2xSl2,
        8 => LeviType::Sl3,
        _ => LeviType::Skipped,
    }
}

/// Dimension-only classification for prime fields, where the Levi
/// machinery is not available.
fn prime_case(lie_dim: usize, g: usize) -> Case {
    match lie_dim {
        0 => Case::CurveCutByQuadrics,
        8 if g == 6 => Case::Veronese,
        6 if g == 4 => Case::P1xP1,
        _ => Case::Scroll,
    }
}

fn verify(c: &PlaneCurve, pencil: &PencilMap, seed: u64) -> Result<(bool, FiberCount)> {
    let fc = map_degree(c, pencil, seed)?;
    Ok((fc.degree == 3 && fc.unanimous(), fc))
}

/// Runs the decision and returns the report together with the
/// intermediate objects.
pub fn decide_detailed(c: &PlaneCurve, opts: &DecideOptions) -> Result<(Report, Trace)> {
    let mut clock = Clock::new();
    let mut trace = Trace::default();
    let g = c.genus();
    let field = c.field();
    let point = opts.point.clone().or_else(|| c.base_point().cloned()).map(|p| p.embed(field));

    let cm = adjoint_basis(c).stage("adjoints")?;
    clock.lap("adjoints");
    let q = forms_through_image(c, &cm, 2).stage("quadrics")?;
    clock.lap("quadrics");
    if hyperelliptic_test(g, q.dim()).stage("hyperelliptic test")? {
        return Err(Error::HyperellipticInput { genus: g });
    }

    let mut report = Report {
        input: InputEcho {
            f: c.f().to_string(),
            degree: c.degree(),
            field: field.to_string(),
            singularities: c.sings().to_vec(),
            point: point.clone(),
        },
        seed: opts.seed,
        genus: g,
        adjoint_dim: cm.genus(),
        quadric_dim: q.dim(),
        cubic_dim: None,
        lie_dim: None,
        radical_dim: None,
        levi_dim: None,
        levi_type: LeviType::Skipped,
        case: Case::Genus3,
        trigonal: true,
        map_available: false,
        map_note: None,
        map: None,
        verified_degree: None,
        verified_candidates: 0,
        petri: Petri::NotApplicable,
        agreement: true,
        timings: Vec::new(),
    };

    if g == 3 {
        match point {
            None => report.map_note = Some("no point on the curve was provided".into()),
            Some(p) => {
                let pencil = g3_map(c, &cm, &p).stage("genus-3 pencil")?;
                let (ok, fc) = verify(c, &pencil, opts.seed).stage("verification")?;
                trace.fiber_counts.push(fc.clone());
                if !ok {
                    return Err(Error::MapVerificationFailed { degree: fc.degree });
                }
                report.map = Some(MapRecord { field: pencil.field().into(), pencil, fibers: fc });
                report.map_available = true;
                report.verified_degree = Some(3);
                report.verified_candidates = 1;
            }
        }
        clock.lap("map");
        report.timings = clock.laps;
        trace.canonical = Some(cm);
        trace.quadrics = Some(q);
        return Ok((report, trace));
    }

    let c3 = forms_through_image(c, &cm, 3).stage("cubics")?;
    report.cubic_dim = Some(c3.dim());
    report.petri = petri_test(&q, &c3, g);
    clock.lap("petri");

    if let FieldKind::Prime(_) = field {
        let dim = stabilizer_dim(&q).stage("stabilizer")?;
        clock.lap("lie algebra");
        report.lie_dim = Some(dim);
        report.case = prime_case(dim, g);
        report.trigonal = report.case.is_trigonal();
        if report.trigonal {
            report.map_note = Some("maps are not constructed over prime fields".into());
        }
    } else {
        let l = stabilizer_algebra(&q).stage("stabilizer")?;
        let r = radical(&l).stage("radical")?;
        let s = levi(&l, &r).stage("levi")?;
        clock.lap("lie algebra");
        report.lie_dim = Some(l.dim());
        report.radical_dim = Some(r.dim());
        report.levi_dim = Some(s.dim());
        report.levi_type = levi_type(s.dim());
        let case = classify(&l, &s, g).stage("classify")?;
        report.case = match case {
            LieCase::CurveCutByQuadrics => Case::CurveCutByQuadrics,
            LieCase::Scroll => Case::Scroll,
            LieCase::P1xP1 => Case::P1xP1,
            LieCase::Veronese => Case::Veronese,
            LieCase::Unexpected => {
                return Err(Error::CurveUnsupported(format!(
                    "Lie algebra of dimension {} with Levi subalgebra of dimension {} in genus {g}",
                    l.dim(),
                    s.dim()
                ))
                .at("classify"))
            }
        };
        report.trigonal = report.case.is_trigonal();
        match report.case {
            Case::Scroll => {
                match scroll_pencil(&s, &cm, c) {
                    Ok(sp) => trace.pencils.push(sp),
                    Err(Error::SplitFailedOverExtension) => {
                        report.map_note = Some("sl2 does not split over a quadratic extension".into())
                    }
                    Err(e) => return Err(e.at("scroll")),
                }
            }
            Case::P1xP1 => {
                let ideals = split_ideals(&s).stage("ideals")?.ok_or_else(|| {
                    Error::Internal("Levi subalgebra does not split into two ideals".into()).at("ideals")
                })?;
                // On a balanced scroll S(a,a) with a > 1 one summand moves
                // points along the rulings and has a + 1 chains.
                let (a, b) = p1xp1_rulings(&ideals, &cm, c);
                let mut misrouted = None;
                for r in [a, b] {
                    match r {
                        Ok(sp) => trace.pencils.push(sp),
                        Err(Error::SplitFailedOverExtension) => {}
                        Err(e @ Error::ChainCountUnexpected { .. }) => {
                            misrouted.get_or_insert(e);
                        }
                        Err(e) => return Err(e.at("rulings")),
                    }
                }
                if trace.pencils.is_empty() {
                    if let Some(e) = misrouted {
                        return Err(e.at("rulings"));
                    }
                    report.map_note = Some("neither ruling splits over a quadratic extension".into());
                }
                trace.ideals = Some(ideals);
            }
            _ => {}
        }
        for sp in &trace.pencils {
            let span = sp.matrix.minors_span(g).stage("scroll ideal")?;
            if span != q {
                return Err(Error::Internal("scroll minors do not span the quadrics".into()).at("scroll ideal"));
            }
        }
        clock.lap("scroll");
        let mut chosen = None;
        for sp in &trace.pencils {
            let (ok, fc) = verify(c, &sp.map, opts.seed).stage("verification")?;
            trace.fiber_counts.push(fc.clone());
            if ok {
                report.verified_candidates += 1;
                if chosen.is_none() {
                    let field = sp.adjoined.map_or(sp.map.field(), FieldKind::Quadratic);
                    chosen = Some(MapRecord { field: field.into(), pencil: sp.map.clone(), fibers: fc });
                }
            }
        }
        clock.lap("verification");
        if !trace.pencils.is_empty() {
            let Some(rec) = chosen else {
                let degree = trace.fiber_counts.first().map_or(0, |f| f.degree);
                return Err(Error::MapVerificationFailed { degree });
            };
            report.map = Some(rec);
            report.map_available = true;
            report.verified_degree = Some(3);
        }
        trace.lie = Some(l);
        trace.radical = Some(r);
        trace.levi = Some(s);
    }

    let insufficient = report.petri == Petri::QuadricsInsufficient;
    let hull = matches!(report.case, Case::Scroll | Case::P1xP1 | Case::Veronese);
    report.agreement = insufficient == hull;
    report.timings = clock.laps;
    trace.canonical = Some(cm);
    trace.quadrics = Some(q);
    trace.cubics = Some(c3);
    Ok((report, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{gen_method1, gen_nodal, gen_trigonal_projection};
    use crate::poly::parse_poly;

    fn curve(f: &str) -> PlaneCurve {
        PlaneCurve::from_form(parse_poly(f, &["x", "y", "z"]).unwrap()).unwrap()
    }

    fn lin(f: &str) -> MPoly {
        parse_poly(f, &["x", "y", "z"]).unwrap()
    }

    #[test]
    fn klein_projections() {
        let c = curve("x^3*y + y^3*z + z^3*x");
        // (0:1:0) lies on the curve, so (x : z) has degree 3
        let m = PencilMap::new(lin("x"), lin("z"));
        assert_eq!(map_degree(&c, &m, 1).unwrap().degree, 3);
        // (1:1:0) does not
        let m = PencilMap::new(lin("x - y"), lin("z"));
        let fc = map_degree(&c, &m, 1).unwrap();
        assert_eq!(fc.degree, 4);
        assert!(fc.unanimous());
    }

    #[test]
    fn method1_projection_is_trigonal() {
        let c = gen_method1(3, 3, 5).unwrap();
        let m = PencilMap::new(lin("x"), lin("z"));
        let fc = map_degree(&c, &m, 2).unwrap();
        assert_eq!(fc.degree, 3);
        assert!(fc.unanimous());
    }

    #[test]
    fn genus3_branch() {
        let c = curve("x^3*y + y^3*z + z^3*x");
        let p = ProjPoint::from_i64(0, 0, 1).unwrap();
        let r = decide(&c, &DecideOptions { seed: 0, point: Some(p.clone()) }).unwrap();
        assert_eq!(r.case, Case::Genus3);
        assert_eq!(r.verified_degree, Some(3));
        let cm = adjoint_basis(&c).unwrap();
        let m = g3_map(&c, &cm, &p).unwrap();
        assert_eq!(m.p.total_degree(), Some(1));
        let off = ProjPoint::from_i64(1, 1, 1).unwrap();
        assert!(matches!(g3_map(&c, &cm, &off), Err(Error::PointNotOnCurve { .. })));
        let r = decide(&c, &DecideOptions::default()).unwrap();
        assert!(r.trigonal && !r.map_available && r.map.is_none());
    }

    #[test]
    fn decides_the_three_cases() {
        let r = decide(&gen_trigonal_projection(5, 3, 1).unwrap(), &DecideOptions::default()).unwrap();
        assert_eq!((r.case, r.trigonal, r.verified_degree), (Case::Scroll, true, Some(3)));
        assert_eq!(r.petri, Petri::QuadricsInsufficient);
        assert!(r.agreement);

        let r = decide(&curve("x^5 + y^5 + z^5"), &DecideOptions::default()).unwrap();
        assert_eq!((r.case, r.trigonal, r.lie_dim, r.genus), (Case::Veronese, false, Some(8), 6));
        assert!(r.agreement);

        let r = decide(&gen_nodal(6, 5, 3, 1).unwrap(), &DecideOptions::default()).unwrap();
        assert_eq!((r.case, r.trigonal, r.lie_dim), (Case::CurveCutByQuadrics, false, Some(0)));
        assert_eq!(r.petri, Petri::GeneratedByQuadrics);
        assert!(r.agreement);
    }

    #[test]
    fn report_json_is_reproducible() {
        let c = gen_trigonal_projection(5, 3, 2).unwrap();
        let a = decide(&c, &DecideOptions { seed: 9, point: None }).unwrap();
        let b = decide(&c, &DecideOptions { seed: 9, point: None }).unwrap();
        assert_eq!(a.to_json(false), b.to_json(false));
        assert!(a.to_json(true).contains("\"timings\""));
        assert!(!a.to_json(false).contains("\"timings\""));
    }
}
