use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::scalar::{invmod, mulmod, FieldKind, Scalar};
use crate::error::{Error, Result};

/// Dense row-major matrix of exact scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    /// Builds a matrix from row vectors; every row must have `cols` entries.
    pub fn from_rows(rows: Vec<Vec<Scalar>>, cols: usize) -> Mat {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r);
        }
        Mat { rows: n, cols, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Mat {
        let cols = rows.first().map_or(0, |r| r.len());
        Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
                .collect(),
            cols,
        )
    }

    /// Reshapes a flat row-major vector into an `n × n` matrix.
    pub fn from_flat(n: usize, data: Vec<Scalar>) -> Mat {
        assert_eq!(data.len(), n * n);
        Mat { rows: n, cols: n, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn as_flat(&self) -> &[Scalar] {
        &self.data
    }

    pub fn field_kind(&self) -> Result<FieldKind> {
        FieldKind::of_all(&self.data)
            .ok_or_else(|| Error::InvalidInput("matrix mixes incompatible fields".into()))
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| dot(self.row(i), v))
            .collect()
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// `self·other − other·self`.
    pub fn commutator(&self, other: &Mat) -> Mat {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).fold(Scalar::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn embed(&self, kind: FieldKind) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.embed(kind)).collect(),
        }
    }

    pub fn rref(&self) -> Result<(Mat, Vec<usize>)> {
        let kind = self.field_kind()?;
        let mut rows: Vec<Vec<Scalar>> = self.to_rows();
        if kind != FieldKind::Rational {
            for r in rows.iter_mut() {
                for a in r.iter_mut() {
                    *a = a.embed(kind);
                }
            }
        }
        let pivots = rref_in_place(&mut rows, self.cols);
        Ok((Mat::from_rows(rows, self.cols), pivots))
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }

    pub fn det(&self) -> Scalar {
        assert_eq!(self.rows, self.cols);
        det_of(self.to_rows())
    }

    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
                r
            })
            .collect();
        let pivots = rref_in_place(&mut aug, 2 * n);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Mat::from_rows(aug.into_iter().map(|r| r[n..].to_vec()).collect(), n))
    }

    /// One solution `x` of `self·x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let n = self.cols;
        let mut aug: Vec<Vec<Scalar>> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(b[i].clone());
                r
            })
            .collect();
        let pivots = rref_in_place(&mut aug, n + 1);
        if pivots.last() == Some(&n) {
            return None;
        }
        let mut x = vec![Scalar::zero(); n];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug[r][n].clone();
        }
        Some(x)
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = acc + x * y;
        }
    }
    acc
}

/// Reduces `rows` to reduced row echelon form in place and returns the pivot
/// columns. Pivot choice is the first nonzero entry at or below the current
/// row, so the result depends only on the input.
pub(crate) fn rref_in_place(rows: &mut Vec<Vec<Scalar>>, cols: usize) -> Vec<usize> {
    if rows.len() * cols >= MODULAR_THRESHOLD && rows.iter().flatten().all(|a| a.as_rational().is_some()) {
        if let Some((r, pivots)) = super::modular::rref_rational(rows, cols) {
            *rows = r;
            return pivots;
        }
    }
    rref_exact(rows, cols)
}

/// Entry count from which rational eliminations go through the
/// multi-modular route.
const MODULAR_THRESHOLD: usize = 2500;

/// Plain Gauss–Jordan elimination in the field of the entries.
pub(crate) fn rref_exact(rows: &mut Vec<Vec<Scalar>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r >= rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for a in rows[r][c..].iter_mut() {
                if !a.is_zero() {
                    *a = &*a * &inv;
                }
            }
        }
        let support: Vec<usize> = (c..cols).filter(|&j| !rows[r][j].is_zero()).collect();
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for &j in &support {
                row[j] = &row[j] - &(&factor * &pivot_row[j]);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(pivots.len());
    pivots
}

fn det_of(mut a: Vec<Vec<Scalar>>) -> Scalar {
    let n = a.len();
    let mut det = Scalar::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Scalar::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det = &det * &a[c][c];
        let inv = a[c][c].inv().expect("nonzero pivot");
        let pivot_row = a[c].clone();
        for row in a.iter_mut().skip(c + 1) {
            if row[c].is_zero() {
                continue;
            }
            let factor = &row[c] * &inv;
            for j in c..n {
                if !pivot_row[j].is_zero() {
                    row[j] = &row[j] - &(&factor * &pivot_row[j]);
                }
            }
        }
    }
    det
}

/// Determinant of a square matrix given as rows.
pub fn determinant(rows: Vec<Vec<Scalar>>) -> Scalar {
    det_of(rows)
}

/// Basis of the right null space, itself in reduced row echelon form.
///
/// `rank(m) + kernel_basis(m).len() == m.cols()`.
pub fn kernel_basis(m: &Mat) -> Result<Vec<Vec<Scalar>>> {
    if m.field_kind()? == FieldKind::Rational && m.rows > m.cols {
        if let Some(k) = kernel_by_row_selection(m) {
            return Ok(k);
        }
    }
    kernel_of(m)
}

/// Prime for row selection; rows independent modulo it are independent
/// over `Q`.
const SELECTION_PRIME: u64 = (1 << 61) - 1;

/// Indices of rows that are linearly independent modulo
/// [`SELECTION_PRIME`] and span the row space there. `None` when some
/// denominator vanishes modulo the prime.
fn independent_rows_mod_p(m: &Mat) -> Option<Vec<usize>> {
    let p = SELECTION_PRIME;
    let kind = FieldKind::Prime(p);
    let n = m.cols;
    // echelon rows normalized to 1 at their pivot
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut chosen = Vec::new();
    for i in 0..m.rows {
        if basis.len() == n {
            break;
        }
        let mut row = Vec::with_capacity(n);
        for a in m.row(i) {
            if let Some(q) = a.as_rational() {
                if (q.denom() % BigInt::from(p)).is_zero() {
                    return None;
                }
            }
            match a.embed(kind) {
                Scalar::Prime { value, .. } => row.push(value),
                _ => unreachable!("embedded into a prime field"),
            }
        }
        for (c, b) in &basis {
            let f = row[*c];
            if f != 0 {
                for (x, y) in row.iter_mut().zip(b).skip(*c) {
                    *x = (*x + p - mulmod(f, *y, p)) % p;
                }
            }
        }
        if let Some(c) = row.iter().position(|&x| x != 0) {
            let inv = invmod(row[c], p).expect("nonzero");
            for x in row.iter_mut().skip(c) {
                *x = mulmod(*x, inv, p);
            }
            basis.push((c, row));
            chosen.push(i);
        }
    }
    Some(chosen)
}

/// Kernel of a tall rational matrix from a maximal set of rows that are
/// independent modulo a prime, checked exactly against every row. The
/// selected rows are independent over `Q`, so if the candidate kernel kills
/// all rows it is the full kernel.
fn kernel_by_row_selection(m: &Mat) -> Option<Vec<Vec<Scalar>>> {
    let chosen = independent_rows_mod_p(m)?;
    let sub = Mat::from_rows(chosen.iter().map(|&i| m.row(i).to_vec()).collect(), m.cols);
    let ker = kernel_of(&sub).ok()?;
    let kills_all = (0..m.rows).all(|i| ker.iter().all(|v| dot(m.row(i), v).is_zero()));
    kills_all.then_some(ker)
}

fn kernel_of(m: &Mat) -> Result<Vec<Vec<Scalar>>> {
    let (r, pivots) = m.rref()?;
    let n = m.cols();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..n).filter(|&j| !is_pivot[j]) {
        let mut v = vec![Scalar::zero(); n];
        v[free] = Scalar::one();
        for (i, &p) in pivots.iter().enumerate() {
            let a = r.get(i, free);
            if !a.is_zero() {
                v[p] = -a;
            }
        }
        basis.push(v);
    }
    Ok(echelon(basis, n))
}

/// Exact rank. Matrices mixing incompatible fields are reported as rank 0 by
/// `Mat::rank`; use [`Mat::rref`] to get the error instead.
pub fn rank(m: &Mat) -> usize {
    m.rref().map(|(_, p)| p.len()).unwrap_or(0)
}

/// Row-reduces a list of vectors of length `n` and drops zero rows.
pub fn echelon(mut vectors: Vec<Vec<Scalar>>, n: usize) -> Vec<Vec<Scalar>> {
    if vectors.is_empty() {
        return vectors;
    }
    if let Some(kind) = FieldKind::of_all(vectors.iter().flatten()) {
        if kind != FieldKind::Rational {
            for v in vectors.iter_mut() {
                for a in v.iter_mut() {
                    *a = a.embed(kind);
                }
            }
        }
    }
    rref_in_place(&mut vectors, n);
    vectors
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn kernel_of_single_relation() {
        let k = kernel_basis(&Mat::from_i64(&[&[1, 1]])).unwrap();
        assert_eq!(k, vec![vec![s(1), s(-1)]]);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(kernel_basis(&Mat::identity(2)).unwrap().is_empty());
    }

    #[test]
    fn kernel_of_coordinate_projection() {
        let k = kernel_basis(&Mat::from_i64(&[&[1, 0, 0], &[0, 1, 0]])).unwrap();
        assert_eq!(k, vec![vec![s(0), s(0), s(1)]]);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Mat::zeros(3, 3).rank(), 0);
        assert_eq!(Mat::identity(3).rank(), 3);
        assert_eq!(Mat::from_i64(&[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn mixed_fields_rejected() {
        let m = Mat::from_rows(
            vec![vec![Scalar::prime(1, 5), Scalar::sqrt_of(2)]],
            2,
        );
        assert!(matches!(kernel_basis(&m), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn rational_entries_promote_into_prime_field() {
        let m = Mat::from_rows(vec![vec![Scalar::prime(2, 5), Scalar::from_int(1)]], 2);
        let k = kernel_basis(&m).unwrap();
        assert_eq!(k.len(), 1);
        assert_eq!(dot(m.row(0), &k[0]), Scalar::prime(0, 5));
    }

    #[test]
    fn inverse_and_solve() {
        let m = Mat::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(2));
        let x = m.solve(&[s(3), s(2)]).unwrap();
        assert_eq!(x, vec![s(1), s(1)]);
        assert!(Mat::from_i64(&[&[1, 1], &[1, 1]]).solve(&[s(0), s(1)]).is_none());
        assert_eq!(m.det(), s(1));
    }
}
