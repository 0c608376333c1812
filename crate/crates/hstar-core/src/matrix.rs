//! Square integer matrices with arbitrary-precision entries.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// A square integer matrix with arbitrary-precision entries, stored row-major.
///
/// All arithmetic on these matrices is exact; entries have no magnitude limit.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    dim: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    /// Builds a matrix from its rows. Rejects empty input and ragged rows.
    pub fn from_rows<I>(rows: Vec<Vec<I>>) -> Result<Self>
    where
        I: Into<BigInt>,
    {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::InvalidMatrix(
                "matrix must have dimension >= 1".to_string(),
            ));
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != dim {
                return Err(Error::InvalidMatrix(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    dim
                )));
            }
            entries.extend(row.into_iter().map(Into::into));
        }
        Ok(Self { dim, entries })
    }

    pub(crate) fn from_entries(dim: usize, entries: Vec<BigInt>) -> Self {
        debug_assert_eq!(entries.len(), dim * dim);
        Self { dim, entries }
    }

    /// The identity matrix of the given dimension (which must be >= 1).
    pub fn identity(dim: usize) -> Self {
        assert!(dim >= 1, "identity requires dimension >= 1");
        let mut entries = alloc::vec![BigInt::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = BigInt::one();
        }
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &BigInt {
        &self.entries[row * self.dim + col]
    }

    pub fn row(&self, row: usize) -> &[BigInt] {
        &self.entries[row * self.dim..(row + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigInt]> {
        self.entries.chunks_exact(self.dim)
    }

    /// Row-major copy of the entries as nested vectors.
    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        self.rows().map(|r| r.to_vec()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let d = self.dim;
        let mut entries = Vec::with_capacity(d * d);
        for j in 0..d {
            for i in 0..d {
                entries.push(self.get(i, j).clone());
            }
        }
        Self { dim: d, entries }
    }

    /// Exact matrix product `self * rhs`.
    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: rhs.dim,
            });
        }
        let d = self.dim;
        let mut entries = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let mut acc = BigInt::zero();
                for k in 0..d {
                    acc += self.get(i, k) * rhs.get(k, j);
                }
                entries.push(acc);
            }
        }
        Ok(Self { dim: d, entries })
    }

    /// Exact determinant by fraction-free (Bareiss) elimination with row
    /// pivoting. Independent of the Hermite normal form computation, so the
    /// two can cross-check each other.
    pub fn determinant(&self) -> BigInt {
        let d = self.dim;
        let mut m = self.to_rows();
        let mut negate = false;
        let mut prev = BigInt::one();
        for k in 0..d.saturating_sub(1) {
            if m[k][k].is_zero() {
                match (k + 1..d).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        negate = !negate;
                    }
                    None => return BigInt::zero(),
                }
            }
            let pivot_row = m[k].clone();
            for row in m.iter_mut().skip(k + 1) {
                let lead = core::mem::replace(&mut row[k], BigInt::zero());
                for j in k + 1..d {
                    let num = &row[j] * &pivot_row[k] - &lead * &pivot_row[j];
                    debug_assert!((&num % &prev).is_zero());
                    row[j] = num / &prev;
                }
            }
            prev = pivot_row[k].clone();
        }
        let det = m[d - 1][d - 1].clone();
        if negate {
            -det
        } else {
            det
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim)
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().abs().is_one()
    }

    /// True when all entries strictly above the diagonal are zero.
    pub fn is_lower_triangular(&self) -> bool {
        (0..self.dim).all(|i| (i + 1..self.dim).all(|j| self.get(i, j).is_zero()))
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.dim).map(|i| self.get(i, i).clone()).collect()
    }
}

impl fmt::Display for IntMatrix {
    /// Matrix text format: a dimension line followed by one line per row.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.dim)?;
        for (i, row) in self.rows().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{e}")?;
            }
            if i + 1 < self.dim {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix({}x{})", self.dim, self.dim)?;
        f.debug_list()
            .entries(self.rows().map(|r| r.to_vec()))
            .finish()
    }
}

/// A full-dimensional lattice simplex with one vertex at the origin; the rows
/// of `matrix` are the remaining vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplex {
    matrix: IntMatrix,
    det: BigInt,
}

impl Simplex {
    /// Wraps a vertex matrix, rejecting singular (degenerate) ones.
    pub fn new(matrix: IntMatrix) -> Result<Self> {
        let det = matrix.determinant();
        if det.is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(Self { matrix, det })
    }

    /// The unit simplex spanned by the standard basis vectors.
    pub fn unit(dim: usize) -> Self {
        Self {
            matrix: IntMatrix::identity(dim),
            det: BigInt::one(),
        }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn determinant(&self) -> &BigInt {
        &self.det
    }

    /// The normalized volume `d! * vol`, which equals `|det|` and the sum of
    /// the delta-vector entries.
    pub fn normalized_volume(&self) -> BigInt {
        self.det.abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: Vec<Vec<i64>>) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    /// Laplace cofactor expansion, used only as an independent check.
    fn det_cofactor(a: &IntMatrix) -> BigInt {
        fn go(rows: &[Vec<BigInt>]) -> BigInt {
            let n = rows.len();
            if n == 1 {
                return rows[0][0].clone();
            }
            let mut acc = BigInt::zero();
            for (j, e) in rows[0].iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                let minor: Vec<Vec<BigInt>> = rows[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let term = e * go(&minor);
                if j % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
        go(&a.to_rows())
    }

    #[test]
    fn determinant_identity() {
        for d in 1..=5 {
            assert_eq!(IntMatrix::identity(d).determinant(), BigInt::one());
        }
    }

    #[test]
    fn determinant_lower_triangular_example() {
        let a = m(vec![
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 0],
            vec![1, 1, 2, 0],
            vec![1, 0, 1, 3],
        ]);
        assert_eq!(a.determinant(), BigInt::from(6));
    }

    #[test]
    fn determinant_2x2_cofactor_oracle() {
        // 1*4 - 2*3 = -2 by cofactor expansion.
        let a = m(vec![vec![1, 2], vec![3, 4]]);
        assert_eq!(a.determinant(), BigInt::from(-2));
        assert_eq!(det_cofactor(&a), BigInt::from(-2));
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let samples = [
            vec![vec![2, -1, 3], vec![0, 4, 5], vec![-7, 1, 1]],
            vec![vec![0, 2, 1], vec![3, 0, 0], vec![1, 1, 1]],
            vec![vec![0, 0, 5], vec![0, 3, 1], vec![2, 9, -4]],
            vec![
                vec![3, 1, 4, 1],
                vec![5, 9, 2, 6],
                vec![5, 3, 5, 8],
                vec![9, 7, 9, 3],
            ],
        ];
        for rows in samples {
            let a = m(rows);
            assert_eq!(a.determinant(), det_cofactor(&a));
        }
    }

    #[test]
    fn determinant_singular() {
        let a = m(vec![vec![1, 2], vec![2, 4]]);
        assert_eq!(a.determinant(), BigInt::zero());
    }

    #[test]
    fn rejects_ragged_rows() {
        let r = IntMatrix::from_rows(vec![vec![1, 2], vec![3]]);
        assert!(matches!(r, Err(Error::InvalidMatrix(_))));
        let r = IntMatrix::from_rows(Vec::<Vec<i64>>::new());
        assert!(matches!(r, Err(Error::InvalidMatrix(_))));
    }

    #[test]
    fn multiply_and_transpose() {
        let a = m(vec![vec![1, 2], vec![3, 4]]);
        let b = m(vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(a.mul(&b).unwrap(), m(vec![vec![2, 1], vec![4, 3]]));
        assert_eq!(a.transpose(), m(vec![vec![1, 3], vec![2, 4]]));
    }

    #[test]
    fn simplex_rejects_singular() {
        assert!(matches!(
            Simplex::new(m(vec![vec![1, 1], vec![1, 1]])),
            Err(Error::SingularMatrix)
        ));
        let s = Simplex::new(m(vec![vec![1, 2], vec![3, 4]])).unwrap();
        assert_eq!(s.normalized_volume(), BigInt::from(2));
    }

    #[test]
    fn display_text_format() {
        let a = m(vec![vec![1, 0], vec![1, 2]]);
        assert_eq!(a.to_string(), "2\n1 0\n1 2");
    }
}
