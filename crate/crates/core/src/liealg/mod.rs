//! Lie algebras of matrices: the stabilizer of a quadric system, its
//! Killing form, radical and Levi subalgebra, classification of the quadric
//! hull, and split sl2 triples.

mod classify;
mod legendre;
mod levi;
mod sl2;
mod stabilizer;

use crate::error::{Error, Result};
use crate::exactmath::{dot, echelon, kernel_basis, Coordinates, FieldKind, Mat, Scalar, Subspace};

pub use classify::{centroid, classify, split_ideals, LieCase};
pub use levi::levi;
pub use sl2::{split_sl2, Sl2Triple, Split};
pub use stabilizer::{stabilizer_algebra, stabilizer_dim};

/// A Lie algebra of `n × n` matrices with a fixed basis and its structure
/// constants: `[b_i, b_j] = Σ_k c[i][j][k] b_k`.
#[derive(Clone, Debug)]
pub struct LieAlg {
    n: usize,
    basis: Vec<Mat>,
    coords: Coordinates,
    structure: Vec<Vec<Vec<Scalar>>>,
}

impl LieAlg {
    /// Fails if the matrices are dependent or not closed under the bracket.
    pub fn new(n: usize, basis: Vec<Mat>) -> Result<LieAlg> {
        let kind = FieldKind::of_all(basis.iter().flat_map(|m| m.as_flat()))
            .ok_or_else(|| Error::InvalidInput("mixed fields in Lie algebra basis".into()))?;
        let basis: Vec<Mat> = basis.into_iter().map(|m| m.embed(kind)).collect();
        let flat: Vec<Vec<Scalar>> = basis.iter().map(|m| m.as_flat().to_vec()).collect();
        let coords = Coordinates::new(flat, n * n)
            .ok_or_else(|| Error::InvalidInput("Lie algebra basis is linearly dependent".into()))?;
        let k = basis.len();
        let mut structure = vec![vec![Vec::new(); k]; k];
        for i in 0..k {
            for j in 0..k {
                if j < i {
                    structure[i][j] = structure[j][i].iter().map(|c: &Scalar| -c).collect();
                    continue;
                }
                let br = basis[i].commutator(&basis[j]);
                structure[i][j] = coords
                    .coords(br.as_flat())
                    .ok_or_else(|| Error::Internal("matrix space is not closed under the bracket".into()))?;
            }
        }
        Ok(LieAlg { n, basis, coords, structure })
    }

    pub fn zero(n: usize) -> LieAlg {
        LieAlg::new(n, Vec::new()).expect("empty basis")
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Size of the matrices.
    pub fn matrix_size(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &[Mat] {
        &self.basis
    }

    pub fn field(&self) -> FieldKind {
        FieldKind::of_all(self.basis.iter().flat_map(|m| m.as_flat())).unwrap_or(FieldKind::Rational)
    }

    /// `c[i][j]`, the coordinates of `[b_i, b_j]`.
    pub fn structure_constants(&self) -> &[Vec<Vec<Scalar>>] {
        &self.structure
    }

    pub fn to_matrix(&self, c: &[Scalar]) -> Mat {
        let flat = self.coords.combine(c);
        if flat.is_empty() {
            return Mat::zeros(self.n, self.n);
        }
        Mat::from_flat(self.n, flat)
    }

    pub fn coords_of(&self, m: &Mat) -> Option<Vec<Scalar>> {
        if self.dim() == 0 {
            return m.is_zero().then(Vec::new);
        }
        self.coords.coords(m.as_flat())
    }

    /// Bracket in basis coordinates.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let k = self.dim();
        let mut out = vec![Scalar::zero(); k];
        for i in 0..k {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..k {
                if y[j].is_zero() || i == j {
                    continue;
                }
                let a = &x[i] * &y[j];
                for (o, c) in out.iter_mut().zip(&self.structure[i][j]) {
                    if !c.is_zero() {
                        *o = &*o + &(&a * c);
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad x` in basis coordinates (columns are images of basis
    /// vectors).
    pub fn ad(&self, x: &[Scalar]) -> Mat {
        let k = self.dim();
        let mut m = Mat::zeros(k, k);
        for j in 0..k {
            let mut e = vec![Scalar::zero(); k];
            e[j] = Scalar::one();
            let col = self.bracket(x, &e);
            for (i, v) in col.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    /// Subalgebra spanned by the given coordinate vectors.
    pub fn subalgebra(&self, vectors: &[Vec<Scalar>]) -> Result<LieAlg> {
        LieAlg::new(self.n, vectors.iter().map(|v| self.to_matrix(v)).collect())
    }

    pub fn embed(&self, kind: FieldKind) -> LieAlg {
        LieAlg::new(self.n, self.basis.iter().map(|m| m.embed(kind)).collect()).expect("embedding keeps structure")
    }

    /// `[L, L]` as a subspace of coordinate vectors.
    pub fn derived(&self) -> Subspace {
        let k = self.dim();
        let mut vs = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                vs.push(self.structure[i][j].clone());
            }
        }
        Subspace::span(vs, k)
    }
}

/// `κ(b_i, b_j) = tr(ad b_i · ad b_j)`.
pub fn killing_form(l: &LieAlg) -> Mat {
    let k = l.dim();
    let c = &l.structure;
    let mut m = Mat::zeros(k, k);
    for a in 0..k {
        for b in a..k {
            // (ad b_a)_{rj} = c[a][j][r]
            let mut t = Scalar::zero();
            for j in 0..k {
                for r in 0..k {
                    let x = &c[a][j][r];
                    let y = &c[b][r][j];
                    if !x.is_zero() && !y.is_zero() {
                        t = t + x * y;
                    }
                }
            }
            m.set(a, b, t.clone());
            m.set(b, a, t);
        }
    }
    m
}

/// `κ(x, y)` from the Killing matrix and coordinate vectors.
pub fn killing(kappa: &Mat, x: &[Scalar], y: &[Scalar]) -> Scalar {
    dot(x, &kappa.mul_vec(y))
}

/// The solvable radical, `[L, L]^⊥` under the Killing form, in basis
/// coordinates.
pub fn radical(l: &LieAlg) -> Result<Subspace> {
    let k = l.dim();
    if k == 0 {
        return Ok(Subspace::zero(0));
    }
    let kappa = killing_form(l);
    let derived = l.derived();
    if derived.dim() == 0 {
        return Ok(Subspace::span(
            (0..k).map(|i| (0..k).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect()).collect(),
            k,
        ));
    }
    let rows: Vec<Vec<Scalar>> = derived.basis().iter().map(|y| kappa.mul_vec(y)).collect();
    let ker = kernel_basis(&Mat::from_rows(rows, k))?;
    Ok(Subspace::span(echelon(ker, k), k))
}

#[cfg(test)]
pub(crate) mod testing {
    use super::*;

    pub fn m(rows: &[&[i64]]) -> Mat {
        Mat::from_i64(rows)
    }

    /// Standard `e, h, f`.
    pub fn sl2() -> LieAlg {
        LieAlg::new(2, vec![m(&[&[0, 1], &[0, 0]]), m(&[&[1, 0], &[0, -1]]), m(&[&[0, 0], &[1, 0]])]).unwrap()
    }

    /// `sl2 ⋉ Q²` as 3 × 3 matrices.
    pub fn sl2_semidirect() -> LieAlg {
        LieAlg::new(
            3,
            vec![
                m(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]),
                m(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, 0]]),
                m(&[&[0, 0, 0], &[1, 0, 0], &[0, 0, 0]]),
                m(&[&[0, 0, 1], &[0, 0, 0], &[0, 0, 0]]),
                m(&[&[0, 0, 0], &[0, 0, 1], &[0, 0, 0]]),
            ],
        )
        .unwrap()
    }

    /// Block-diagonal `sl2 ⊕ sl2` in 4 × 4 matrices.
    pub fn sl2_sum() -> LieAlg {
        let z = [0i64; 4];
        let mut out = Vec::new();
        for block in 0..2 {
            for (a, b, c, d) in [(0, 1, 0, 0), (1, 0, 0, -1), (0, 0, 1, 0)] {
                let mut rows = [z; 4];
                let o = 2 * block;
                rows[o][o] = a;
                rows[o][o + 1] = b;
                rows[o + 1][o] = c;
                rows[o + 1][o + 1] = d;
                out.push(m(&[&rows[0], &rows[1], &rows[2], &rows[3]]));
            }
        }
        LieAlg::new(4, out).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::testing::*;
    use super::*;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn killing_of_sl2() {
        let k = killing_form(&sl2());
        // basis e, h, f
        assert_eq!(k, Mat::from_i64(&[&[0, 0, 4], &[0, 8, 0], &[4, 0, 0]]));
    }

    #[test]
    fn killing_of_abelian_is_zero() {
        let l = LieAlg::new(2, vec![m(&[&[1, 0], &[0, 0]]), m(&[&[0, 0], &[0, 1]])]).unwrap();
        assert!(killing_form(&l).is_zero());
        assert_eq!(radical(&l).unwrap().dim(), 2);
    }

    #[test]
    fn killing_of_sum_is_block_diagonal() {
        let k = killing_form(&sl2_sum());
        for i in 0..3 {
            for j in 3..6 {
                assert!(k.get(i, j).is_zero());
            }
        }
    }

    #[test]
    fn radicals() {
        assert_eq!(radical(&sl2()).unwrap().dim(), 0);
        let r = radical(&sl2_semidirect()).unwrap();
        assert_eq!(r, Subspace::span(vec![v(&[0, 0, 0, 1, 0]), v(&[0, 0, 0, 0, 1])], 5));
    }

    #[test]
    fn non_closed_space_is_rejected() {
        let r = LieAlg::new(2, vec![m(&[&[0, 1], &[0, 0]]), m(&[&[0, 0], &[1, 0]])]);
        assert!(r.is_err());
    }
}
