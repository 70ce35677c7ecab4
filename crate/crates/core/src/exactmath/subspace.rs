use super::mat::{echelon, Mat};
use super::scalar::Scalar;

/// A linear subspace of `K^n` held in reduced row echelon form.
///
/// Two subspaces are equal exactly when their echelon bases are equal, which
/// makes `PartialEq` a subspace comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(vectors: Vec<Vec<Scalar>>, ambient: usize) -> Subspace {
        let basis = echelon(vectors, ambient);
        let pivots = basis
            .iter()
            .map(|v| v.iter().position(|a| !a.is_zero()).expect("nonzero row"))
            .collect();
        Subspace { ambient, basis, pivots }
    }

    pub fn zero(ambient: usize) -> Subspace {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its projection along the echelon basis; zero iff `v` lies in
    /// the subspace. The result vanishes at every pivot column.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let c = out[p].clone();
            for (o, x) in out.iter_mut().zip(b) {
                if !x.is_zero() {
                    *o = &*o - &(&c * x);
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Coordinates in the echelon basis, if `v` lies in the subspace.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Unit vectors completing the echelon basis to a basis of `K^n`.
    pub fn complement_units(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&j| !is_pivot[j]).collect()
    }
}

/// Coordinates with respect to a fixed, not necessarily echelon, basis.
#[derive(Clone, Debug)]
pub struct Coordinates {
    basis: Vec<Vec<Scalar>>,
    rows: Vec<usize>,
    inv: Mat,
}

impl Coordinates {
    /// Returns `None` when the vectors are linearly dependent.
    pub fn new(basis: Vec<Vec<Scalar>>, ambient: usize) -> Option<Coordinates> {
        let k = basis.len();
        if k == 0 {
            return Some(Coordinates { basis, rows: Vec::new(), inv: Mat::zeros(0, 0) });
        }
        // Columns of the ambient × k matrix are the basis vectors; pick k
        // independent rows and invert the square block.
        let m = Mat::from_rows(basis.clone(), ambient);
        let (_, rows) = m.rref().ok()?;
        if rows.len() < k {
            return None;
        }
        let block = Mat::from_rows(
            rows.iter().map(|&r| basis.iter().map(|b| b[r].clone()).collect()).collect(),
            k,
        );
        let inv = block.inverse()?;
        Some(Coordinates { basis, rows, inv })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    /// Coordinates of `v`, verified exactly; `None` if `v` is outside the span.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let picked: Vec<Scalar> = self.rows.iter().map(|&r| v[r].clone()).collect();
        let c = self.inv.mul_vec(&picked);
        let mut recon = vec![Scalar::zero(); v.len()];
        for (ci, b) in c.iter().zip(&self.basis) {
            if ci.is_zero() {
                continue;
            }
            for (r, x) in recon.iter_mut().zip(b) {
                if !x.is_zero() {
                    *r = &*r + &(ci * x);
                }
            }
        }
        if recon.iter().zip(v).all(|(a, b)| a == b) {
            Some(c)
        } else {
            None
        }
    }

    pub fn combine(&self, c: &[Scalar]) -> Vec<Scalar> {
        let n = self.basis.first().map_or(0, |b| b.len());
        let mut out = vec![Scalar::zero(); n];
        for (ci, b) in c.iter().zip(&self.basis) {
            if ci.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(b) {
                if !x.is_zero() {
                    *o = &*o + &(ci * x);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn span_equality_is_basis_independent() {
        let a = Subspace::span(vec![v(&[1, 1, 0]), v(&[0, 1, 1])], 3);
        let b = Subspace::span(vec![v(&[1, 2, 1]), v(&[1, 0, -1])], 3);
        assert_eq!(a, b);
        assert!(a.contains(&v(&[2, 3, 1])));
        assert!(!a.contains(&v(&[0, 0, 1])));
    }

    #[test]
    fn coordinates_in_arbitrary_basis() {
        let c = Coordinates::new(vec![v(&[1, 1, 0]), v(&[0, 1, 1])], 3).unwrap();
        assert_eq!(c.coords(&v(&[2, 5, 3])).unwrap(), v(&[2, 3]));
        assert!(c.coords(&v(&[1, 0, 0])).is_none());
        assert!(Coordinates::new(vec![v(&[1, 1]), v(&[2, 2])], 2).is_none());
    }
}
