//! Hermite normal forms under column operations.
//!
//! The normal form used throughout this crate is the lower-triangular one
//! obtained by right-multiplication with a unimodular matrix: `A = B * U`
//! with `A` lower triangular, every diagonal entry positive, and each
//! off-diagonal entry of row `i` reduced into `[0, a_ii)`.  It is the unique
//! such matrix in the right-unimodular orbit of `B`, hence a canonical
//! representative of the sublattice spanned by the rows of `B`.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::matrix::IntMatrix;
use crate::{Error, Result};

/// A matrix in Hermite normal form together with the unimodular column
/// transform that produced it (`original * transform = matrix`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnfMatrix {
    matrix: IntMatrix,
    transform: IntMatrix,
}

impl HnfMatrix {
    /// Wraps a matrix that is already in normal form; the transform is the
    /// identity. Fails if any invariant is violated.
    pub fn from_normal_form(matrix: IntMatrix) -> Result<Self> {
        let d = matrix.dim();
        for i in 0..d {
            if !matrix.get(i, i).is_positive() {
                return Err(Error::InvalidForm(
                    "normal form requires a positive diagonal".to_string(),
                ));
            }
            for j in 0..d {
                let e = matrix.get(i, j);
                if j > i && !e.is_zero() {
                    return Err(Error::InvalidForm(
                        "normal form must be lower triangular".to_string(),
                    ));
                }
                if j < i && (e.is_negative() || e >= matrix.get(i, i)) {
                    return Err(Error::InvalidForm(
                        "off-diagonal entries must lie in [0, diagonal)".to_string(),
                    ));
                }
            }
        }
        let transform = IntMatrix::identity(d);
        Ok(Self { matrix, transform })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// The unimodular `U` with `original * U = matrix`.
    pub fn transform(&self) -> &IntMatrix {
        &self.transform
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        self.matrix.diagonal()
    }

    /// Product of the diagonal entries, which equals `|det|` of the original.
    pub fn det(&self) -> BigInt {
        let mut acc = BigInt::from(1);
        for i in 0..self.dim() {
            acc *= self.matrix.get(i, i);
        }
        acc
    }

    /// Ordering key used for deterministic streams: diagonal first, then the
    /// off-diagonal entries in row-major order.
    pub(crate) fn sort_key(&self) -> (Vec<BigInt>, Vec<BigInt>) {
        sort_key(&self.matrix)
    }
}

pub(crate) fn sort_key(m: &IntMatrix) -> (Vec<BigInt>, Vec<BigInt>) {
    let d = m.dim();
    let mut off = Vec::with_capacity(d * (d - 1) / 2);
    for i in 1..d {
        for j in 0..i {
            off.push(m.get(i, j).clone());
        }
    }
    (m.diagonal(), off)
}

impl fmt::Display for HnfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.matrix.fmt(f)
    }
}

fn swap_cols(m: &mut [Vec<BigInt>], c1: usize, c2: usize) {
    for row in m.iter_mut() {
        row.swap(c1, c2);
    }
}

fn negate_col(m: &mut [Vec<BigInt>], c: usize) {
    for row in m.iter_mut() {
        let v = core::mem::take(&mut row[c]);
        row[c] = -v;
    }
}

/// col_dst += q * col_src
fn add_multiple_col(m: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let add = q * &row[src];
        row[dst] += add;
    }
}

/// Replaces (col1, col2) by (x*col1 + y*col2, -q*col1 + p*col2); the 2x2
/// transform has determinant x*p + y*q, which the callers keep at 1.
fn combine_cols(
    m: &mut [Vec<BigInt>],
    c1: usize,
    c2: usize,
    x: &BigInt,
    y: &BigInt,
    p: &BigInt,
    q: &BigInt,
) {
    for row in m.iter_mut() {
        let a = row[c1].clone();
        let b = row[c2].clone();
        row[c1] = x * &a + y * &b;
        row[c2] = p * &b - q * &a;
    }
}

/// Computes the Hermite normal form of a nonsingular square integer matrix.
///
/// Returns the pair `(A, U)` with `A = m * U`, `U` unimodular, `A` lower
/// triangular with positive diagonal and each off-diagonal entry of row `i`
/// reduced into `[0, a_ii)`. Already-finished rows are reduced as soon as a
/// diagonal entry is fixed to keep intermediate entries small.
pub fn hermite_normal_form(m: &IntMatrix) -> Result<HnfMatrix> {
    let d = m.dim();
    let mut a = m.to_rows();
    let mut u = IntMatrix::identity(d).to_rows();

    for r in 0..d {
        // Bring a nonzero entry onto the diagonal.
        if a[r][r].is_zero() {
            match (r + 1..d).find(|&c| !a[r][c].is_zero()) {
                Some(c) => {
                    swap_cols(&mut a, r, c);
                    swap_cols(&mut u, r, c);
                }
                None => return Err(Error::SingularMatrix),
            }
        }
        // Clear the rest of the row with unimodular gcd steps.
        for c in r + 1..d {
            if a[r][c].is_zero() {
                continue;
            }
            let lhs = a[r][r].clone();
            let rhs = a[r][c].clone();
            let ext = lhs.extended_gcd(&rhs);
            let mut g = ext.gcd;
            let mut x = ext.x;
            let mut y = ext.y;
            if g.is_negative() {
                g = -g;
                x = -x;
                y = -y;
            }
            debug_assert_eq!(&x * &lhs + &y * &rhs, g);
            let p = &lhs / &g;
            let q = &rhs / &g;
            combine_cols(&mut a, r, c, &x, &y, &p, &q);
            combine_cols(&mut u, r, c, &x, &y, &p, &q);
            debug_assert_eq!(a[r][r], g);
            debug_assert!(a[r][c].is_zero());
        }
        if a[r][r].is_negative() {
            negate_col(&mut a, r);
            negate_col(&mut u, r);
        }
        // Reduce the columns to the left of the diagonal into [0, a_rr).
        for c in 0..r {
            if a[r][c].is_negative() || a[r][c] >= a[r][r] {
                let q = -a[r][c].div_floor(&a[r][r]);
                add_multiple_col(&mut a, c, r, &q);
                add_multiple_col(&mut u, c, r, &q);
            }
        }
    }

    let dim = d;
    let matrix = IntMatrix::from_entries(dim, a.into_iter().flatten().collect());
    let transform = IntMatrix::from_entries(dim, u.into_iter().flatten().collect());
    debug_assert_eq!(m.mul(&transform).unwrap(), matrix);
    Ok(HnfMatrix { matrix, transform })
}

/// Two nonsingular matrices span the same sublattice (their simplices are
/// unimodularly equivalent) exactly when their normal forms coincide.
pub fn unimodularly_equivalent(m1: &IntMatrix, m2: &IntMatrix) -> Result<bool> {
    if m1.dim() != m2.dim() {
        return Ok(false);
    }
    Ok(hermite_normal_form(m1)?.matrix() == hermite_normal_form(m2)?.matrix())
}
