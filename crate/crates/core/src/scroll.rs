//! Weight-chain decomposition of the ambient space under an sl2 triple, the
//! 2-row scroll matrix whose minors cut out the scroll, and the pencil on
//! the curve obtained from one of its columns.

use serde::{Serialize, Serializer};

use crate::canonical::{CanonicalMap, FormSpace};
use crate::curve::PlaneCurve;
use crate::error::{Error, Result};
use crate::exactmath::{kernel_basis, rank, FieldKind, Mat, Scalar};
use crate::liealg::{split_sl2, LieAlg, Sl2Triple};
use crate::poly::MPoly;

/// Chain bases of the irreducible summands of the ambient representation.
///
/// Chain `i` is `w_0, …, w_{ℓ−1}` with `w_k = f^k w_0 / k!`, so that the
/// orbit `exp(t·f)·w_0` has coordinates `(1, t, t², …)` in the chain.
#[derive(Clone, Debug)]
pub struct WeightChains {
    chains: Vec<Vec<Vec<Scalar>>>,
    /// Rows are the coordinate functionals of the concatenated chain basis.
    inverse: Mat,
}

impl WeightChains {
    pub fn chains(&self) -> &[Vec<Vec<Scalar>>] {
        &self.chains
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.chains.iter().map(Vec::len).collect()
    }

    pub fn ambient_dim(&self) -> usize {
        self.inverse.rows()
    }

    /// The coordinate functional of the `k`-th vector of chain `i`, as a
    /// linear form in the ambient coordinates.
    pub fn functional(&self, i: usize, k: usize) -> MPoly {
        let offset: usize = self.chains[..i].iter().map(Vec::len).sum();
        MPoly::linear(self.inverse.row(offset + k))
    }
}

fn factorial(k: usize) -> Scalar {
    (1..=k as i64).fold(Scalar::one(), |acc, i| acc * Scalar::from_int(i))
}

/// Decomposes the ambient space into `h`-weight chains.
pub fn weight_chains(t: &Sl2Triple) -> Result<WeightChains> {
    let n = t.h.rows();
    let top = n as i64 - 1;
    let shifted = |lambda: i64| -> Mat {
        let mut m = t.h.clone();
        for i in 0..n {
            m.set(i, i, m.get(i, i) - &Scalar::from_int(lambda));
        }
        m
    };
    let mut total = 0;
    for lambda in -top..=top {
        total += kernel_basis(&shifted(lambda))?.len();
    }
    if total != n {
        return Err(Error::DecompositionFailed(format!("integer weight spaces span {total} of {n} dimensions")));
    }
    let mut chains = Vec::new();
    for lambda in (0..=top).rev() {
        // highest weight vectors of weight λ: ker(h − λ) ∩ ker(e)
        let mut rows = shifted(lambda).to_rows();
        rows.extend(t.e.to_rows());
        let tops = kernel_basis(&Mat::from_rows(rows, n))?;
        let len = lambda as usize + 1;
        for v0 in tops {
            let mut vs = vec![v0];
            for _ in 1..len {
                let next = t.f.mul_vec(vs.last().expect("nonempty"));
                vs.push(next);
            }
            if t.f.mul_vec(vs.last().expect("nonempty")).iter().any(|x| !x.is_zero()) {
                return Err(Error::DecompositionFailed("chain does not terminate".into()));
            }
            // e·v_{k+1} = (k+1)(ℓ−1−k)·v_k
            for k in 0..len - 1 {
                let c = Scalar::from_int(((k + 1) * (len - 1 - k)) as i64);
                let lhs = t.e.mul_vec(&vs[k + 1]);
                if lhs.iter().zip(&vs[k]).any(|(a, b)| a != &(&c * b)) {
                    return Err(Error::DecompositionFailed("raising operator coefficients are wrong".into()));
                }
            }
            let ws = vs.into_iter().enumerate().map(|(k, v)| {
                let d = factorial(k).inv().expect("characteristic zero");
                v.iter().map(|x| x * &d).collect()
            });
            chains.push(ws.collect::<Vec<Vec<Scalar>>>());
        }
    }
    chains.sort_by_key(Vec::len);
    let cols: Vec<Vec<Scalar>> = chains.iter().flatten().cloned().collect();
    if cols.len() != n {
        return Err(Error::DecompositionFailed(format!("chains span {} of {n} dimensions", cols.len())));
    }
    // basis matrix has the chain vectors as columns
    let basis = Mat::from_rows(cols, n).transpose();
    let inverse = basis
        .inverse()
        .ok_or_else(|| Error::DecompositionFailed("chain vectors are dependent".into()))?;
    Ok(WeightChains { chains, inverse })
}

/// Two rows of linear forms; the 2 × 2 minors vanish on the scroll.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScrollMat {
    rows: [Vec<MPoly>; 2],
}

impl ScrollMat {
    pub fn columns(&self) -> usize {
        self.rows[0].len()
    }

    pub fn entry(&self, row: usize, col: usize) -> &MPoly {
        &self.rows[row][col]
    }

    pub fn rows(&self) -> &[Vec<MPoly>; 2] {
        &self.rows
    }

    pub fn minors(&self) -> Vec<MPoly> {
        let m = self.columns();
        let mut out = Vec::with_capacity(m * m.saturating_sub(1) / 2);
        for i in 0..m {
            for j in i + 1..m {
                let a = self.rows[0][i].mul(&self.rows[1][j]);
                let b = self.rows[0][j].mul(&self.rows[1][i]);
                out.push(a.sub(&b));
            }
        }
        out
    }

    /// The span of the minors as a space of quadrics.
    pub fn minors_span(&self, g: usize) -> Result<FormSpace> {
        FormSpace::from_forms(g, 2, &self.minors())
    }
}

/// Columns `(w_k*, w_{k+1}*)` for every chain, shortest chain first.
pub fn scroll_matrix(w: &WeightChains) -> Result<ScrollMat> {
    let chains = w.chains().len();
    let effective = w.chains().iter().filter(|c| c.len() > 1).count();
    if chains > 2 || effective == 0 {
        return Err(Error::ChainCountUnexpected { chains });
    }
    let mut rows = [Vec::new(), Vec::new()];
    for (i, c) in w.chains().iter().enumerate() {
        for k in 0..c.len().saturating_sub(1) {
            rows[0].push(w.functional(i, k));
            rows[1].push(w.functional(i, k + 1));
        }
    }
    Ok(ScrollMat { rows })
}

/// A map `C → P¹` given by two forms of degree `d − 3` in the plane
/// coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilMap {
    pub p: MPoly,
    pub q: MPoly,
}

impl PencilMap {
    pub fn new(p: MPoly, q: MPoly) -> PencilMap {
        PencilMap { p, q }
    }

    pub fn field(&self) -> FieldKind {
        FieldKind::of_all(self.p.terms().chain(self.q.terms()).map(|(_, c)| c)).unwrap_or(FieldKind::Rational)
    }

    /// Whether both maps agree on the curve: `P₁Q₂ − P₂Q₁ ≡ 0 mod f`.
    pub fn agrees_on(&self, other: &PencilMap, f: &MPoly) -> bool {
        let cross = self.p.mul(&other.q).sub(&other.p.mul(&self.q));
        cross.is_zero() || cross.is_divisible_by(f)
    }
}

impl Serialize for PencilMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("PencilMap", 2)?;
        st.serialize_field("p", &self.p.to_string())?;
        st.serialize_field("q", &self.q.to_string())?;
        st.end()
    }
}

/// Two nonzero forms are proportional modulo `f` only if they are
/// proportional, since their degree is below `deg f`.
fn independent(p: &MPoly, q: &MPoly) -> bool {
    if p.is_zero() || q.is_zero() {
        return false;
    }
    let Some(d) = p.total_degree() else { return false };
    let monos = crate::poly::monomials(p.nvars(), d);
    match (p.coeff_vector(&monos), q.coeff_vector(&monos)) {
        (Some(a), Some(b)) => rank(&Mat::from_rows(vec![a, b], monos.len())) == 2,
        _ => false,
    }
}

/// The pencil `ρ ∘ φ` from the first column whose entries are independent
/// after pulling back along the canonical map.
pub fn ruling_map(a: &ScrollMat, cm: &CanonicalMap, c: &PlaneCurve) -> Result<PencilMap> {
    let d = c.degree();
    for j in 0..a.columns() {
        let p = cm.pull_back(a.entry(0, j));
        let q = cm.pull_back(a.entry(1, j));
        if p.total_degree().is_some_and(|k| k >= d) || q.total_degree().is_some_and(|k| k >= d) {
            return Err(Error::Internal("pulled-back column has degree at least deg f".into()));
        }
        if independent(&p, &q) {
            return Ok(PencilMap::new(p, q));
        }
    }
    Err(Error::AllColumnsDegenerate)
}

/// Everything produced while turning one sl2 into a pencil.
#[derive(Clone, Debug)]
pub struct ScrollPencil {
    pub triple: Sl2Triple,
    pub adjoined: Option<i64>,
    pub chains: WeightChains,
    pub matrix: ScrollMat,
    pub map: PencilMap,
}

/// `split_sl2`, `weight_chains`, `scroll_matrix` and `ruling_map` in turn.
pub fn scroll_pencil(s: &LieAlg, cm: &CanonicalMap, c: &PlaneCurve) -> Result<ScrollPencil> {
    let split = split_sl2(s)?;
    let chains = weight_chains(&split.triple)?;
    let matrix = scroll_matrix(&chains)?;
    let map = ruling_map(&matrix, cm, c)?;
    Ok(ScrollPencil { triple: split.triple, adjoined: split.adjoined, chains, matrix, map })
}

/// Candidate pencils from the two rulings of `P¹ × P¹`, in summand order.
pub fn p1xp1_rulings(
    ideals: &(LieAlg, LieAlg),
    cm: &CanonicalMap,
    c: &PlaneCurve,
) -> (Result<ScrollPencil>, Result<ScrollPencil>) {
    rayon::join(|| scroll_pencil(&ideals.0, cm, c), || scroll_pencil(&ideals.1, cm, c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Mat {
        Mat::from_i64(rows)
    }

    /// sl2 on `Sym^{n−1}` in the monomial basis `x^{n−1−k} y^k`.
    fn sym(n: usize) -> Sl2Triple {
        let mut e = Mat::zeros(n, n);
        let mut h = Mat::zeros(n, n);
        let mut f = Mat::zeros(n, n);
        for k in 0..n {
            h.set(k, k, Scalar::from_int(n as i64 - 1 - 2 * k as i64));
            if k + 1 < n {
                // f: x^{a} y^{k} ↦ a·x^{a−1} y^{k+1}; e: ↦ k·x^{a+1} y^{k−1}
                f.set(k + 1, k, Scalar::from_int((n - 1 - k) as i64));
                e.set(k, k + 1, Scalar::from_int(k as i64 + 1));
            }
        }
        Sl2Triple { e, h, f }
    }

    fn block(a: &Sl2Triple, b: &Sl2Triple) -> Sl2Triple {
        let sum = |x: &Mat, y: &Mat| {
            let n = x.rows() + y.rows();
            let mut out = Mat::zeros(n, n);
            for i in 0..x.rows() {
                for j in 0..x.rows() {
                    out.set(i, j, x.get(i, j).clone());
                }
            }
            for i in 0..y.rows() {
                for j in 0..y.rows() {
                    out.set(x.rows() + i, x.rows() + j, y.get(i, j).clone());
                }
            }
            out
        };
        Sl2Triple { e: sum(&a.e, &b.e), h: sum(&a.h, &b.h), f: sum(&a.f, &b.f) }
    }

    #[test]
    fn triples_are_valid() {
        for n in 1..6 {
            assert!(sym(n).relations_hold(), "n = {n}");
        }
        let t = Sl2Triple { e: m(&[&[0, 1], &[0, 0]]), h: m(&[&[1, 0], &[0, -1]]), f: m(&[&[0, 0], &[1, 0]]) };
        assert_eq!(t, sym(2));
    }

    #[test]
    fn chain_lengths() {
        assert_eq!(weight_chains(&sym(2)).unwrap().lengths(), vec![2]);
        assert_eq!(weight_chains(&sym(4)).unwrap().lengths(), vec![4]);
        assert_eq!(weight_chains(&block(&sym(4), &sym(2))).unwrap().lengths(), vec![2, 4]);
    }

    #[test]
    fn single_chain_matrix() {
        let w = weight_chains(&sym(2)).unwrap();
        let a = scroll_matrix(&w).unwrap();
        assert_eq!(a.columns(), 1);
        assert_eq!(a.entry(0, 0), &MPoly::var(2, 0));
        assert_eq!(a.entry(1, 0), &MPoly::var(2, 1));
    }

    #[test]
    fn scroll_s12_minors() {
        // chains of lengths 2 and 3 in P⁴; the minors are the ideal of S(1,2)
        let w = weight_chains(&block(&sym(2), &sym(3))).unwrap();
        let a = scroll_matrix(&w).unwrap();
        assert_eq!(a.columns(), 3);
        let span = a.minors_span(5).unwrap();
        assert_eq!(span.dim(), 3);
        // (s, t; s u², t u², …) style parametrization: the point
        // exp(τ f)(α w₀ + β w₀') has chain coordinates α(1, τ), β(1, τ, τ²)
        for (al, be, tau) in [(1, 2, 3), (2, -1, 5), (-3, 4, -2)] {
            let c = |k: i64| Scalar::from_int(k);
            let chain_pt = vec![c(al), c(al * tau), c(be), c(be * tau), c(be * tau * tau)];
            let amb = {
                let mut cols = Vec::new();
                for ch in w.chains() {
                    cols.extend(ch.iter().cloned());
                }
                let b = Mat::from_rows(cols, 5).transpose();
                b.mul_vec(&chain_pt)
            };
            for q in span.forms() {
                assert!(q.eval(&amb).is_zero());
            }
        }
    }

    #[test]
    fn cone_chains() {
        let w = weight_chains(&block(&sym(1), &sym(4))).unwrap();
        assert_eq!(w.lengths(), vec![1, 4]);
        assert_eq!(scroll_matrix(&w).unwrap().columns(), 3);
    }

    #[test]
    fn too_many_chains() {
        let t = block(&block(&sym(2), &sym(2)), &sym(2));
        let w = weight_chains(&t).unwrap();
        assert!(matches!(scroll_matrix(&w), Err(Error::ChainCountUnexpected { chains: 3 })));
        let t = block(&sym(1), &sym(1));
        let w = weight_chains(&t).unwrap();
        assert!(matches!(scroll_matrix(&w), Err(Error::ChainCountUnexpected { chains: 2 })));
    }

    #[test]
    fn non_integer_weights_fail() {
        let h = Mat::from_rows(vec![vec![Scalar::from_ratio(1, 2), Scalar::zero()], vec![Scalar::zero(), Scalar::from_ratio(-1, 2)]], 2);
        let t = Sl2Triple { e: Mat::zeros(2, 2), h, f: Mat::zeros(2, 2) };
        assert!(matches!(weight_chains(&t), Err(Error::DecompositionFailed(_))));
    }
}
