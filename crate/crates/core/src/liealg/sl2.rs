use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exactmath::{kernel_basis, square_part, FieldKind, Mat, Scalar};

use super::legendre::isotropic_vector;
use super::{killing, killing_form, LieAlg};

/// A standard basis of a split sl2: `[h,e] = 2e`, `[h,f] = −2f`, `[e,f] = h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sl2Triple {
    pub e: Mat,
    pub h: Mat,
    pub f: Mat,
}

impl Sl2Triple {
    pub fn field(&self) -> FieldKind {
        FieldKind::of_all(self.e.as_flat().iter().chain(self.h.as_flat()).chain(self.f.as_flat()))
            .unwrap_or(FieldKind::Rational)
    }

    /// Checks the three bracket relations exactly.
    pub fn relations_hold(&self) -> bool {
        let two = Scalar::from_int(2);
        self.h.commutator(&self.e) == self.e.scale(&two)
            && self.h.commutator(&self.f) == self.f.scale(&-&two)
            && self.e.commutator(&self.f) == self.h
    }
}

/// The outcome of splitting, including the quadratic field adjoined if any.
#[derive(Clone, Debug)]
pub struct Split {
    pub triple: Sl2Triple,
    /// `δ` when the triple lives over `Q(√δ)` and the input did not.
    pub adjoined: Option<i64>,
}

/// Deterministic small coordinate vectors, ordered by `Σ|c|` and then by
/// descending lexicographic order.
fn candidates(dim: usize, count: usize) -> Vec<Vec<i64>> {
    let mut all: Vec<Vec<i64>> = Vec::new();
    let total = 5usize.pow(dim as u32);
    for mut code in 0..total {
        let mut v = Vec::with_capacity(dim);
        for _ in 0..dim {
            v.push((code % 5) as i64 - 2);
            code /= 5;
        }
        v.reverse();
        if v.iter().any(|&c| c != 0) {
            all.push(v);
        }
    }
    all.sort_by(|a, b| {
        let na: i64 = a.iter().map(|c| c.abs()).sum();
        let nb: i64 = b.iter().map(|c| c.abs()).sum();
        na.cmp(&nb).then_with(|| b.cmp(a))
    });
    all.truncate(count);
    all
}

/// A non-square integer `δ` with `Q(√δ) = Q(√q)`, if `q` is not a square.
pub(crate) fn root_field(q: &Scalar) -> Option<i64> {
    let r = q.as_rational()?;
    let n: BigInt = r.numer() * r.denom();
    let (_, rest) = square_part(&n, 1 << 16);
    if rest == BigInt::from(1) {
        return None;
    }
    rest.to_i64()
}

/// `f` with `[e,f] = h` and `[h,f] = −2f`, in coordinates.
fn solve_f(s: &LieAlg, e: &[Scalar], h: &[Scalar]) -> Option<Vec<Scalar>> {
    let ade = s.ad(e);
    let adh = s.ad(h);
    let k = s.dim();
    let two = Scalar::from_int(2);
    let mut rows = ade.to_rows();
    let mut rhs = h.to_vec();
    for i in 0..k {
        let mut r = adh.row(i).to_vec();
        r[i] = &r[i] + &two;
        rows.push(r);
        rhs.push(Scalar::zero());
    }
    Mat::from_rows(rows, k).solve(&rhs)
}

fn triple_from(s: &LieAlg, e: &[Scalar], h: &[Scalar]) -> Option<Sl2Triple> {
    let f = solve_f(s, e, h)?;
    let t = Sl2Triple { e: s.to_matrix(e), h: s.to_matrix(h), f: s.to_matrix(&f) };
    t.relations_hold().then_some(t)
}

/// Tries one element `x`: nilpotent elements become `e`, semisimple ones
/// with a square `κ(x,x)/2` are rescaled to `h`. Returns the non-square
/// value otherwise.
fn try_element(s: &LieAlg, kappa: &Mat, x: &[Scalar]) -> std::result::Result<Option<Sl2Triple>, Scalar> {
    let k = s.dim();
    let kx = killing(kappa, x, x);
    let two = Scalar::from_int(2);
    if kx.is_zero() {
        // [h, e] = 2e  ⇔  ad_e(h) = −2e
        let h = match s.ad(x).solve(&x.iter().map(|c| -(c * &two)).collect::<Vec<_>>()) {
            Some(h) => h,
            None => return Ok(None),
        };
        return Ok(triple_from(s, x, &h));
    }
    let half = &kx / &two;
    let Some(lambda) = half.sqrt() else {
        return Err(half);
    };
    let h: Vec<Scalar> = x.iter().map(|c| &(c * &two) / &lambda).collect();
    let mut m = s.ad(&h);
    for i in 0..k {
        m.set(i, i, m.get(i, i) - &two);
    }
    let ker = kernel_basis(&m).ok().unwrap_or_default();
    if ker.len() != 1 {
        return Ok(None);
    }
    Ok(triple_from(s, &ker[0], &h))
}

const ATTEMPTS: usize = 25;

/// Finds a split sl2 triple in a 3-dimensional simple `s`, adjoining one
/// square root when `s` does not split over its field.
pub fn split_sl2(s: &LieAlg) -> Result<Split> {
    if s.dim() != 3 {
        return Err(Error::NotSl2(format!("dimension {}", s.dim())));
    }
    let kappa = killing_form(s);
    if kappa.det().is_zero() {
        return Err(Error::NotSl2("degenerate Killing form".into()));
    }
    if s.derived().dim() != 3 {
        return Err(Error::NotSl2("algebra is not perfect".into()));
    }
    let cands: Vec<Vec<Scalar>> =
        candidates(3, ATTEMPTS).into_iter().map(|c| c.into_iter().map(Scalar::from_int).collect()).collect();
    let mut first_nonsquare = None;
    for x in &cands {
        match try_element(s, &kappa, x) {
            Ok(Some(t)) => return Ok(Split { triple: t, adjoined: None }),
            Ok(None) => {}
            Err(v) => {
                first_nonsquare.get_or_insert(v);
            }
        }
    }
    if s.field() != FieldKind::Rational {
        return Err(Error::SplitFailedOverExtension);
    }
    // small coordinates can miss every nilpotent of a split form
    if let Some(x) = isotropic_vector(&kappa) {
        if let Ok(Some(t)) = try_element(s, &kappa, &x) {
            return Ok(Split { triple: t, adjoined: None });
        }
    }
    let delta = first_nonsquare
        .as_ref()
        .and_then(root_field)
        .ok_or(Error::SplitFailedOverExtension)?;
    let ext = s.embed(FieldKind::Quadratic(delta));
    let kappa = killing_form(&ext);
    for x in &cands {
        if let Ok(Some(t)) = try_element(&ext, &kappa, x) {
            return Ok(Split { triple: t, adjoined: Some(delta) });
        }
    }
    Err(Error::SplitFailedOverExtension)
}

#[cfg(test)]
mod tests {
    use super::super::testing::*;
    use super::*;

    #[test]
    fn candidate_order() {
        let c = candidates(3, 25);
        assert_eq!(c.len(), 25);
        assert_eq!(c[0], vec![1, 0, 0]);
        assert!(c.iter().all(|v| v.iter().map(|x| x.abs()).sum::<i64>() <= 3));
    }

    #[test]
    fn standard_sl2() {
        let sp = split_sl2(&sl2()).unwrap();
        assert!(sp.triple.relations_hold());
        assert_eq!(sp.adjoined, None);
    }

    #[test]
    fn conjugated_sl2() {
        let p = m(&[&[2, 1, 0], &[1, 1, 3], &[0, -1, 1]]);
        let pi = p.inverse().unwrap();
        // sl2 acting on Sym²
        let e = m(&[&[0, 2, 0], &[0, 0, 1], &[0, 0, 0]]);
        let h = m(&[&[2, 0, 0], &[0, 0, 0], &[0, 0, -2]]);
        let f = m(&[&[0, 0, 0], &[1, 0, 0], &[0, 2, 0]]);
        let basis = vec![
            p.mul(&e.add(&h)).mul(&pi),
            p.mul(&h.add(&f.scale(&Scalar::from_int(3)))).mul(&pi),
            p.mul(&e.sub(&f)).mul(&pi),
        ];
        let s = LieAlg::new(3, basis).unwrap();
        let sp = split_sl2(&s).unwrap();
        assert!(sp.triple.relations_hold());
    }

    #[test]
    fn compact_form_needs_extension() {
        // so(3): no nonzero nilpotents over Q
        let s = LieAlg::new(
            3,
            vec![
                m(&[&[0, 1, 0], &[-1, 0, 0], &[0, 0, 0]]),
                m(&[&[0, 0, 1], &[0, 0, 0], &[-1, 0, 0]]),
                m(&[&[0, 0, 0], &[0, 0, 1], &[0, -1, 0]]),
            ],
        )
        .unwrap();
        let sp = split_sl2(&s).unwrap();
        assert!(sp.triple.relations_hold());
        assert_eq!(sp.adjoined, Some(-1));
        assert_eq!(sp.triple.field(), FieldKind::Quadratic(-1));
    }

    #[test]
    fn non_sl2_is_rejected() {
        assert!(matches!(split_sl2(&sl2_sum()), Err(Error::NotSl2(_))));
        let ab = LieAlg::new(
            3,
            vec![
                m(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, 0]]),
                m(&[&[0, 0, 0], &[0, 1, 0], &[0, 0, -1]]),
                m(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]),
            ],
        );
        if let Ok(ab) = ab {
            assert!(split_sl2(&ab).is_err());
        }
    }
}
