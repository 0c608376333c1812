//! Compressed descriptions of the two special families of normal forms.
//!
//! A *one-row* form is an identity matrix except for a single row `k` whose
//! diagonal entry is the whole determinant `D` and whose entries to the left
//! are values in `[0, D)`.  Its delta-vector depends only on the
//! multiplicities `d_j = #{entries equal to j}`, not on the row position or
//! the arrangement, and has the closed form
//!
//! ```text
//! s_i = floor(i/D - sum_j frac(i*j/D) * d_j) + d        for i = 1..=D
//! ```
//!
//! with one `t^(d+1-s_i)` term per `i`.
//!
//! A *two-row* form (determinant 4) has two rows of diagonal 2; its
//! delta-vector depends only on the number of 1s in each row (`d_1`, `d_1'`),
//! the number of 1s not shared between the rows (`d_1'' = e_1 + e_1'`), and
//! the entry of the later row under the earlier diagonal (`bar`).

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::delta::DeltaVector;
use crate::hnf::HnfMatrix;
use crate::matrix::IntMatrix;
use crate::{Error, Result};

/// One-row normal form: dimension, determinant, row position (1-based), and
/// the multiplicities `(d_1, ..., d_{D-1})` of the off-diagonal values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneRowForm {
    dim: usize,
    det: u64,
    row_position: usize,
    multiplicities: Vec<usize>,
}

/// Evaluation of the three shifted-symmetry conditions for a one-row form.
///
/// The delta-vector of the form is shifted symmetric exactly when all three
/// hold: the weighted entry count `sum_j j*d_j - 1` is coprime with `D`,
/// every value `j` with `gcd(j, D) > 1` is absent, and the values fill all
/// `d - 1` available slots.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymmetryConditions {
    pub weight_coprime: bool,
    pub support_coprime: bool,
    pub full_count: bool,
    /// The gcd tested by the first condition.
    pub weight_gcd: u64,
}

impl SymmetryConditions {
    pub fn holds(&self) -> bool {
        self.weight_coprime && self.support_coprime && self.full_count
    }
}

impl OneRowForm {
    /// Builds a form with the canonical row position `d` (the last row).
    pub fn new(dim: usize, det: u64, multiplicities: Vec<usize>) -> Result<Self> {
        if dim < 1 {
            return Err(Error::InvalidForm("dimension must be >= 1".into()));
        }
        if det < 2 {
            return Err(Error::InvalidForm("determinant must be >= 2".into()));
        }
        if multiplicities.len() != (det - 1) as usize {
            return Err(Error::InvalidForm(format!(
                "expected {} multiplicities, got {}",
                det - 1,
                multiplicities.len()
            )));
        }
        let total: usize = multiplicities.iter().sum();
        if total > dim - 1 {
            return Err(Error::InvalidForm(format!(
                "{total} entries do not fit in {} slots",
                dim - 1
            )));
        }
        Ok(Self {
            dim,
            det,
            row_position: dim,
            multiplicities,
        })
    }

    /// Moves the non-trivial row to position `k` (1-based); the entries must
    /// fit in the `k - 1` columns to its left.
    pub fn with_row_position(mut self, k: usize) -> Result<Self> {
        if k < 1 || k > self.dim {
            return Err(Error::InvalidForm(format!(
                "row position {k} out of 1..={}",
                self.dim
            )));
        }
        let total: usize = self.multiplicities.iter().sum();
        if total > k - 1 {
            return Err(Error::InvalidForm(format!(
                "{total} entries do not fit left of row {k}"
            )));
        }
        self.row_position = k;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn det(&self) -> u64 {
        self.det
    }

    pub fn row_position(&self) -> usize {
        self.row_position
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    /// Closed-form delta-vector; equals `delta_from_hnf(self.expand())` and
    /// is independent of the row position.
    pub fn delta(&self) -> DeltaVector {
        let d = self.dim as i128;
        let det = self.det as i128;
        let mut coeffs = alloc::vec![BigInt::zero(); self.dim + 1];
        for i in 1..=self.det {
            // numerator of i/D - sum_j frac(i*j/D) * d_j over denominator D
            let mut numer = i as i128;
            for (jm1, &cnt) in self.multiplicities.iter().enumerate() {
                if cnt == 0 {
                    continue;
                }
                let j = (jm1 + 1) as u64;
                let residue = ((i as u128 * j as u128) % self.det as u128) as i128;
                numer -= residue * cnt as i128;
            }
            let s = d + numer.div_euclid(det);
            let exp = (d + 1 - s) as usize;
            coeffs[exp] += 1;
        }
        DeltaVector::new(coeffs).expect("one-row closed form yields a valid delta-vector")
    }

    /// Expands to a concrete normal form: the value multiset is laid out
    /// ascending from the leftmost column of the chosen row.
    pub fn expand(&self) -> HnfMatrix {
        let d = self.dim;
        let mut rows = IntMatrix::identity(d).to_rows();
        let r = self.row_position - 1;
        rows[r][r] = BigInt::from(self.det);
        let mut col = 0;
        for (jm1, &cnt) in self.multiplicities.iter().enumerate() {
            for _ in 0..cnt {
                rows[r][col] = BigInt::from(jm1 + 1);
                col += 1;
            }
        }
        debug_assert!(col <= r);
        let m = IntMatrix::from_rows(rows).expect("square by construction");
        HnfMatrix::from_normal_form(m).expect("expansion is a normal form")
    }

    /// The three-part shifted-symmetry test.
    pub fn symmetry_conditions(&self) -> SymmetryConditions {
        let det = self.det as i128;
        let weight: i128 = self
            .multiplicities
            .iter()
            .enumerate()
            .map(|(jm1, &cnt)| (jm1 as i128 + 1) * cnt as i128)
            .sum::<i128>()
            - 1;
        let weight_gcd = weight.gcd(&det) as u64;
        let support_coprime = self
            .multiplicities
            .iter()
            .enumerate()
            .all(|(jm1, &cnt)| cnt == 0 || (jm1 as u64 + 1).gcd(&self.det) == 1);
        let total: usize = self.multiplicities.iter().sum();
        SymmetryConditions {
            weight_coprime: weight_gcd == 1,
            support_coprime,
            full_count: total == self.dim - 1,
            weight_gcd,
        }
    }
}

/// Two-row determinant-4 normal form.
///
/// Rows `k < l` both carry diagonal 2; `first_row_ones` and
/// `second_row_ones` count the 1s in rows `k` and `l`, `disjoint_ones =
/// (e_1, e_1')` counts the 1s of each row whose column holds a 0 in the
/// other row, and `bar` is the entry of row `l` in column `k`.  The shared
/// count `p = d_1 - e_1 = d_1' - e_1'` must be consistent and everything has
/// to fit in the `d - 2` columns left of row `k` (canonical positions: the
/// last two rows).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoRowForm {
    dim: usize,
    first_row_ones: usize,
    second_row_ones: usize,
    disjoint_ones: (usize, usize),
    bar: bool,
}

impl TwoRowForm {
    pub fn new(
        dim: usize,
        first_row_ones: usize,
        second_row_ones: usize,
        disjoint_ones: (usize, usize),
        bar: bool,
    ) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidForm(
                "two-row form needs dimension >= 2".into(),
            ));
        }
        let (e1, e1p) = disjoint_ones;
        if e1 > first_row_ones || e1p > second_row_ones {
            return Err(Error::InvalidForm(
                "disjoint counts exceed row counts".into(),
            ));
        }
        let p = first_row_ones - e1;
        if second_row_ones - e1p != p {
            return Err(Error::InvalidForm(
                "inconsistent shared count between the two rows".into(),
            ));
        }
        if p + e1 + e1p > dim - 2 {
            return Err(Error::InvalidForm(format!(
                "{} occupied columns do not fit in {} slots",
                p + e1 + e1p,
                dim - 2
            )));
        }
        Ok(Self {
            dim,
            first_row_ones,
            second_row_ones,
            disjoint_ones,
            bar,
        })
    }

    /// Builds a form from the parameter triple `(d_1, d_1', d_1'')`,
    /// distributing the disjoint 1s canonically. Fails when no distribution
    /// exists (parity, triangle, or size constraints).
    pub fn from_triple(dim: usize, d1: usize, d1p: usize, d1pp: usize, bar: bool) -> Result<Self> {
        if !(d1 + d1p + d1pp).is_multiple_of(2) {
            return Err(Error::InvalidForm("d_1 + d_1' + d_1'' must be even".into()));
        }
        if d1pp > d1 + d1p || d1p > d1 + d1pp || d1 > d1p + d1pp {
            return Err(Error::InvalidForm(
                "each of d_1, d_1', d_1'' must be at most the sum of the other two".into(),
            ));
        }
        let p = (d1 + d1p - d1pp) / 2;
        Self::new(dim, d1, d1p, (d1 - p, d1p - p), bar)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn first_row_ones(&self) -> usize {
        self.first_row_ones
    }

    pub fn second_row_ones(&self) -> usize {
        self.second_row_ones
    }

    /// `d_1'' = e_1 + e_1'`.
    pub fn third_count(&self) -> usize {
        self.disjoint_ones.0 + self.disjoint_ones.1
    }

    pub fn disjoint_ones(&self) -> (usize, usize) {
        self.disjoint_ones
    }

    pub fn bar(&self) -> bool {
        self.bar
    }

    /// `(d_1, d_1', d_1'')`.
    pub fn triple(&self) -> (usize, usize, usize) {
        (
            self.first_row_ones,
            self.second_row_ones,
            self.third_count(),
        )
    }

    /// Expands to a concrete normal form in the last two rows, shared
    /// columns leftmost, then the first row's own 1s, then the second row's.
    pub fn expand(&self) -> HnfMatrix {
        let d = self.dim;
        let (e1, e1p) = self.disjoint_ones;
        let p = self.first_row_ones - e1;
        let r1 = d - 2;
        let r2 = d - 1;
        let mut rows = IntMatrix::identity(d).to_rows();
        rows[r1][r1] = BigInt::from(2);
        rows[r2][r2] = BigInt::from(2);
        if self.bar {
            rows[r2][r1] = BigInt::one();
        }
        // row r1 carries 1s in the shared block then its own; row r2 in the
        // shared block then the remaining disjoint block
        for e in rows[r1][..p + e1].iter_mut() {
            *e = BigInt::one();
        }
        for e in rows[r2][..p].iter_mut() {
            *e = BigInt::one();
        }
        for e in rows[r2][p + e1..p + e1 + e1p].iter_mut() {
            *e = BigInt::one();
        }
        let m = IntMatrix::from_rows(rows).expect("square by construction");
        HnfMatrix::from_normal_form(m).expect("expansion is a normal form")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::delta_from_hnf;

    fn dv(coeffs: &[i64]) -> DeltaVector {
        DeltaVector::new(coeffs.iter().copied()).unwrap()
    }

    #[test]
    fn one_row_validation() {
        assert!(OneRowForm::new(3, 2, alloc::vec![1]).is_ok());
        assert!(OneRowForm::new(3, 2, alloc::vec![1, 1]).is_err()); // wrong length
        assert!(OneRowForm::new(3, 2, alloc::vec![3]).is_err()); // too many entries
        assert!(OneRowForm::new(3, 1, alloc::vec![]).is_err()); // det < 2
        let f = OneRowForm::new(4, 3, alloc::vec![1, 1]).unwrap();
        assert!(f.clone().with_row_position(3).is_ok());
        assert!(f.clone().with_row_position(2).is_err()); // 2 entries, 1 slot
        assert!(f.with_row_position(5).is_err());
    }

    #[test]
    fn one_row_delta_d2() {
        let f = OneRowForm::new(2, 2, alloc::vec![1]).unwrap();
        assert_eq!(f.delta(), dv(&[1, 1, 0]));
    }

    #[test]
    fn one_row_delta_matches_expansion() {
        let f = OneRowForm::new(7, 4, alloc::vec![0, 0, 6]).unwrap();
        let v = f.delta();
        assert_eq!(v.polynomial_string(), "1 + t^2 + t^4 + t^6");
        assert_eq!(delta_from_hnf(&f.expand()), v);
    }

    #[test]
    fn one_row_delta_no_entries() {
        // All multiplicities zero: the stretched unit simplex, with D - 1
        // extra boundary points on one axis, so delta_1 = D - 1.
        let f = OneRowForm::new(2, 3, alloc::vec![0, 0]).unwrap();
        assert_eq!(f.delta(), dv(&[1, 2, 0]));
        assert_eq!(delta_from_hnf(&f.expand()), dv(&[1, 2, 0]));
        let f = OneRowForm::new(4, 5, alloc::vec![0; 4]).unwrap();
        assert_eq!(f.delta(), dv(&[1, 4, 0, 0, 0]));
    }

    #[test]
    fn one_row_delta_is_position_independent() {
        let base = OneRowForm::new(5, 4, alloc::vec![1, 0, 2]).unwrap();
        let v = base.delta();
        for k in 4..=5 {
            let f = base.clone().with_row_position(k).unwrap();
            assert_eq!(delta_from_hnf(&f.expand()), v);
        }
    }

    #[test]
    fn one_row_expansion_layout() {
        let f = OneRowForm::new(4, 3, alloc::vec![1, 1]).unwrap();
        let m = f.expand();
        let rows = m.matrix().to_rows();
        let as_i64: Vec<Vec<i64>> = rows
            .iter()
            .map(|r| r.iter().map(|e| i64::try_from(e).unwrap()).collect())
            .collect();
        assert_eq!(
            as_i64,
            alloc::vec![
                alloc::vec![1, 0, 0, 0],
                alloc::vec![0, 1, 0, 0],
                alloc::vec![0, 0, 1, 0],
                alloc::vec![1, 2, 0, 3],
            ]
        );
    }

    #[test]
    fn symmetry_conditions_examples() {
        // All-(D-1) form with D = 6, d = 3: weighted count 5*2 - 1 = 9,
        // gcd(9, 6) = 3.
        let f = OneRowForm::new(3, 6, alloc::vec![0, 0, 0, 0, 2]).unwrap();
        let c = f.symmetry_conditions();
        assert!(!c.weight_coprime);
        assert_eq!(c.weight_gcd, 3);
        assert!(c.support_coprime);
        assert!(c.full_count);
        assert!(!c.holds());

        let f = OneRowForm::new(3, 5, alloc::vec![2, 0, 0, 0]).unwrap();
        let c = f.symmetry_conditions();
        assert!(c.weight_coprime && c.support_coprime && c.full_count);
        assert!(c.holds());
        assert!(f.delta().is_shifted_symmetric());

        // fewer entries than slots: condition 3 fails
        let f = OneRowForm::new(4, 5, alloc::vec![2, 0, 0, 0]).unwrap();
        assert!(!f.symmetry_conditions().holds());
    }

    #[test]
    fn two_row_validation_and_expansion() {
        // d_1 = 2, d_1' = 3, e_1 = 1, e_1' = 2, bar = 1 (so p = 1, d_1'' = 3)
        let f = TwoRowForm::new(6, 2, 3, (1, 2), true).unwrap();
        assert_eq!(f.triple(), (2, 3, 3));
        let m = f.expand();
        let rows: Vec<Vec<i64>> = m
            .matrix()
            .to_rows()
            .iter()
            .map(|r| r.iter().map(|e| i64::try_from(e).unwrap()).collect())
            .collect();
        assert_eq!(
            rows,
            alloc::vec![
                alloc::vec![1, 0, 0, 0, 0, 0],
                alloc::vec![0, 1, 0, 0, 0, 0],
                alloc::vec![0, 0, 1, 0, 0, 0],
                alloc::vec![0, 0, 0, 1, 0, 0],
                alloc::vec![1, 1, 0, 0, 2, 0],
                alloc::vec![1, 0, 1, 1, 1, 2],
            ]
        );

        assert!(TwoRowForm::new(6, 2, 3, (2, 2), true).is_err()); // inconsistent overlap
        assert!(TwoRowForm::new(4, 2, 2, (2, 2), false).is_err()); // does not fit
        assert!(TwoRowForm::new(6, 1, 0, (2, 0), false).is_err()); // e_1 > d_1
    }

    #[test]
    fn two_row_delta_matches_scattered_layout() {
        // The same parameters as a hand-built matrix with the rows and
        // columns scattered differently; the delta-vector only depends on
        // (d_1, d_1', d_1'', bar).
        let scattered = HnfMatrix::from_normal_form(
            IntMatrix::from_rows(alloc::vec![
                alloc::vec![1, 0, 0, 0, 0, 0],
                alloc::vec![0, 1, 0, 0, 0, 0],
                alloc::vec![0, 0, 1, 0, 0, 0],
                alloc::vec![0, 1, 1, 2, 0, 0],
                alloc::vec![0, 0, 0, 0, 1, 0],
                alloc::vec![1, 1, 0, 1, 1, 2],
            ])
            .unwrap(),
        )
        .unwrap();
        let f = TwoRowForm::new(6, 2, 3, (1, 2), true).unwrap();
        assert_eq!(delta_from_hnf(&f.expand()), delta_from_hnf(&scattered));
        // bar = 1 closed forms give exponents 3, 2, 4 for this triple
        assert_eq!(delta_from_hnf(&f.expand()), dv(&[1, 0, 1, 1, 1, 0, 0]));
    }

    #[test]
    fn two_row_from_triple() {
        let f = TwoRowForm::from_triple(6, 4, 4, 0, true).unwrap();
        assert_eq!(f.disjoint_ones(), (0, 0));
        assert!(TwoRowForm::from_triple(6, 1, 1, 1, false).is_err()); // odd sum
        assert!(TwoRowForm::from_triple(6, 4, 1, 1, false).is_err()); // triangle fails
    }
}
