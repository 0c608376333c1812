//! The delta-vector engine.
//!
//! For a normal form `A` the lattice points of dilations of the simplex
//! spanned by the rows of `A` and the origin split into congruence classes
//! indexed by tuples `(i_1, ..., i_d)` with `1 <= i_k <= a_kk`.  Within one
//! class, back-substitution from the bottom row upward determines the
//! barycentric coordinates
//!
//! ```text
//! lambda_d = i_d / a_dd
//! lambda_k = (i_k - frac(sum_{h>k} a_hk * lambda_h)) / a_kk
//! ```
//!
//! (`frac` is the fractional part), and the class first contributes an
//! interior point in dilation `s = floor(sum_k lambda_k) + 1`.  By Ehrhart
//! reciprocity the delta-polynomial is the sum of `t^(d+1-s)` over all
//! classes, so tallying the values `d + 1 - s` yields the delta-vector.
//!
//! Everything is computed in exact rational arithmetic; floors and
//! fractional parts are taken toward minus infinity.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::hnf::HnfMatrix;
use crate::{Error, Result};

/// A delta-vector (h*-vector): the coefficient sequence
/// `(delta_0, ..., delta_d)` of the numerator of the Ehrhart series.
///
/// Invariants: `delta_0 = 1`, every entry is nonnegative, and the sum of the
/// entries equals the normalized volume of any realizing simplex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DeltaVector {
    coeffs: Vec<BigInt>,
}

impl DeltaVector {
    pub fn new<I>(coeffs: impl IntoIterator<Item = I>) -> Result<Self>
    where
        I: Into<BigInt>,
    {
        let coeffs: Vec<BigInt> = coeffs.into_iter().map(Into::into).collect();
        if coeffs.is_empty() {
            return Err(Error::InvalidDeltaVector("must be nonempty".to_string()));
        }
        if !coeffs[0].is_one() {
            return Err(Error::InvalidDeltaVector("delta_0 must be 1".to_string()));
        }
        if coeffs.iter().any(Signed::is_negative) {
            return Err(Error::InvalidDeltaVector(
                "entries must be nonnegative".to_string(),
            ));
        }
        Ok(Self { coeffs })
    }

    /// `(1, 0, ..., 0)` of the given dimension: the delta-vector of a
    /// unimodular simplex.
    pub fn unit(dim: usize) -> Self {
        let mut coeffs = alloc::vec![BigInt::zero(); dim + 1];
        coeffs[0] = BigInt::one();
        Self { coeffs }
    }

    /// Builds the 0/1-style vector with `delta_0 = 1` and one unit added per
    /// listed exponent (each in `1..=dim`).
    pub fn from_exponents(dim: usize, exponents: &[usize]) -> Result<Self> {
        let mut coeffs = alloc::vec![BigInt::zero(); dim + 1];
        coeffs[0] = BigInt::one();
        for &e in exponents {
            if e == 0 || e > dim {
                return Err(Error::InvalidDeltaVector(alloc::format!(
                    "exponent {e} out of range 1..={dim}"
                )));
            }
            coeffs[e] += 1;
        }
        Ok(Self { coeffs })
    }

    /// Dimension `d`; the vector has `d + 1` entries.
    pub fn dim(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn get(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    /// Total mass: the sum of all entries (the normalized volume).
    pub fn mass(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Largest index with a nonzero entry (at least 0, since `delta_0 = 1`).
    pub fn top_degree(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|c| !c.is_zero())
            .expect("delta_0 = 1")
    }

    /// Multiset of the positive-degree exponents, each repeated with its
    /// multiplicity. Only sensible for small masses; `None` if an entry does
    /// not fit in `usize`.
    pub fn positive_exponents(&self) -> Option<Vec<usize>> {
        let mut out = Vec::new();
        for (e, c) in self.coeffs.iter().enumerate().skip(1) {
            let c = c.to_usize()?;
            for _ in 0..c {
                out.push(e);
            }
        }
        Some(out)
    }

    /// `delta_i = delta_{d+1-i}` for all `1 <= i <= d`. For `d = 1` the only
    /// condition is `delta_1 = delta_1`, so every vector qualifies.
    pub fn is_shifted_symmetric(&self) -> bool {
        let d = self.dim();
        (1..=d).all(|i| self.coeffs[i] == self.coeffs[d + 1 - i])
    }

    /// The partial-sum inequalities
    /// `delta_0 + ... + delta_i <= delta_s + ... + delta_{s-i}` for
    /// `0 <= i <= floor(s/2)`, where `s` is the top degree.
    pub fn satisfies_stanley(&self) -> bool {
        let s = self.top_degree();
        let mut low = BigInt::zero();
        let mut high = BigInt::zero();
        for i in 0..=s / 2 {
            low += &self.coeffs[i];
            high += &self.coeffs[s - i];
            if low > high {
                return false;
            }
        }
        true
    }

    /// The partial-sum inequalities
    /// `delta_{d-1} + ... + delta_{d-i} <= delta_2 + ... + delta_{i+1}` for
    /// `1 <= i <= floor((d-1)/2)`.
    pub fn satisfies_hibi(&self) -> bool {
        let d = self.dim();
        let mut tail = BigInt::zero();
        let mut head = BigInt::zero();
        for i in 1..=(d.saturating_sub(1)) / 2 {
            tail += &self.coeffs[d - i];
            head += &self.coeffs[i + 1];
            if tail > head {
                return false;
            }
        }
        true
    }

    /// Renders the delta-polynomial with ascending powers, zero terms
    /// omitted, and unit coefficients left implicit (except the constant),
    /// e.g. `1 + 3t^2 + 2t^3`.
    pub fn polynomial_string(&self) -> String {
        let mut out = String::new();
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !out.is_empty() {
                out.push_str(" + ");
            }
            if e == 0 {
                out.push_str(&c.to_string());
                continue;
            }
            if !c.is_one() {
                out.push_str(&c.to_string());
            }
            out.push('t');
            if e > 1 {
                out.push_str(&alloc::format!("^{e}"));
            }
        }
        out
    }
}

impl fmt::Display for DeltaVector {
    /// Comma-separated text form, e.g. `1,0,3,2,0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for DeltaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DeltaVector({self})")
    }
}

impl FromStr for DeltaVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let coeffs: Vec<BigInt> = s
            .split(',')
            .map(|t| {
                BigInt::from_str(t.trim())
                    .map_err(|_| Error::InvalidDeltaVector(alloc::format!("bad entry {t:?}")))
            })
            .collect::<Result<_>>()?;
        Self::new(coeffs)
    }
}

/// A congruence-class index `(i_1, ..., i_d)` with `1 <= i_k <= a_kk`,
/// validated against the normal form it belongs to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceIndex {
    indices: Vec<u64>,
}

impl CongruenceIndex {
    pub fn new(indices: Vec<u64>, bound: &HnfMatrix) -> Result<Self> {
        let idx = Self { indices };
        if idx.in_bounds(bound) {
            Ok(idx)
        } else {
            Err(Error::IndexOutOfBounds)
        }
    }

    pub fn indices(&self) -> &[u64] {
        &self.indices
    }

    fn in_bounds(&self, bound: &HnfMatrix) -> bool {
        self.indices.len() == bound.dim()
            && self
                .indices
                .iter()
                .enumerate()
                .all(|(k, &i)| i >= 1 && BigInt::from(i) <= *bound.matrix().get(k, k))
    }
}

fn diagonal_u64(a: &HnfMatrix) -> Vec<u64> {
    a.diagonal()
        .iter()
        .map(|e| {
            e.to_u64()
                .expect("diagonal entry too large to enumerate congruence classes")
        })
        .collect()
}

/// All congruence-class indices of `a` in lexicographic order.
pub fn congruence_indices(a: &HnfMatrix) -> impl Iterator<Item = CongruenceIndex> {
    let bounds = diagonal_u64(a);
    let d = bounds.len();
    let mut current: Option<Vec<u64>> = Some(alloc::vec![1; d]);
    core::iter::from_fn(move || {
        let cur = current.clone()?;
        // advance the odometer, least-significant position last
        let mut next = cur.clone();
        let mut k = d;
        loop {
            if k == 0 {
                current = None;
                break;
            }
            k -= 1;
            if next[k] < bounds[k] {
                next[k] += 1;
                for v in next.iter_mut().skip(k + 1) {
                    *v = 1;
                }
                current = Some(next);
                break;
            }
        }
        Some(CongruenceIndex { indices: cur })
    })
}

fn fract(r: &BigRational) -> BigRational {
    r - r.floor()
}

fn s_of(a: &HnfMatrix, indices: &[u64]) -> usize {
    let d = a.dim();
    let m = a.matrix();
    let mut lambdas = alloc::vec![BigRational::zero(); d];
    for k in (0..d).rev() {
        let mut below = BigRational::zero();
        for (h, lambda) in lambdas.iter().enumerate().skip(k + 1) {
            let c = m.get(h, k);
            if !c.is_zero() {
                below += BigRational::from(c.clone()) * lambda;
            }
        }
        let numer = BigRational::from(BigInt::from(indices[k])) - fract(&below);
        lambdas[k] = numer / BigRational::from(m.get(k, k).clone());
    }
    let total: BigRational = lambdas.iter().sum();
    let s = total.floor().to_integer() + BigInt::one();
    let s = s.to_usize().expect("s-value in 1..=d+1");
    debug_assert!(s >= 1 && s <= d + 1);
    s
}

/// The first dilation in which the congruence class `idx` of `a` contributes
/// an interior lattice point: `floor(sum_k lambda_k) + 1`.
pub fn s_value(a: &HnfMatrix, idx: &CongruenceIndex) -> Result<usize> {
    if !idx.in_bounds(a) {
        return Err(Error::IndexOutOfBounds);
    }
    Ok(s_of(a, idx.indices()))
}

/// The delta-vector of the simplex spanned by the rows of `a` and the
/// origin: `delta_j` counts the congruence classes with `d + 1 - s = j`.
///
/// Cost is `det * d` exact rational back-substitutions; the diagonal entries
/// must fit in `u64` for the classes to be enumerable at all.
pub fn delta_from_hnf(a: &HnfMatrix) -> DeltaVector {
    let d = a.dim();
    let mut coeffs = alloc::vec![BigInt::zero(); d + 1];
    for idx in congruence_indices(a) {
        let s = s_of(a, idx.indices());
        coeffs[d + 1 - s] += 1;
    }
    let v = DeltaVector::new(coeffs).expect("congruence classes always yield a valid delta-vector");
    debug_assert_eq!(v.mass(), a.det());
    v
}

/// Closed-form delta-vector of the normal form whose last row is
/// `(D-1, ..., D-1, D)` on top of an identity block: the class indexed by
/// `i` first hits in dilation `floor(i*d / D) + 1`.
///
/// The formula is self-contained and accepts every `det >= 2`, `dim >= 1`.
pub fn delta_all_dminus1(det: u64, dim: usize) -> DeltaVector {
    assert!(det >= 2, "determinant must be at least 2");
    assert!(dim >= 1, "dimension must be at least 1");
    let mut coeffs = alloc::vec![BigInt::zero(); dim + 1];
    for i in 1..=det {
        let s = (i as u128 * dim as u128 / det as u128) as usize + 1;
        coeffs[dim + 1 - s] += 1;
    }
    DeltaVector::new(coeffs).expect("valid delta-vector")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hnf::hermite_normal_form;
    use crate::matrix::IntMatrix;

    fn hnf_of(rows: Vec<Vec<i64>>) -> HnfMatrix {
        HnfMatrix::from_normal_form(IntMatrix::from_rows(rows).unwrap()).unwrap()
    }

    fn dv(coeffs: &[i64]) -> DeltaVector {
        DeltaVector::new(coeffs.iter().copied()).unwrap()
    }

    fn worked_4x4() -> HnfMatrix {
        hnf_of(vec![
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 0],
            vec![1, 1, 2, 0],
            vec![1, 0, 1, 3],
        ])
    }

    #[test]
    fn s_values_of_the_4x4_example() {
        let a = worked_4x4();
        // (i_3, i_4) -> s, with i_1 = i_2 = 1 forced.
        let expect = [
            ((1u64, 1u64), 2usize),
            ((2, 1), 3),
            ((1, 2), 2),
            ((2, 2), 3),
            ((1, 3), 3),
            ((2, 3), 5),
        ];
        for ((i3, i4), s) in expect {
            let idx = CongruenceIndex::new(alloc::vec![1, 1, i3, i4], &a).unwrap();
            assert_eq!(s_value(&a, &idx).unwrap(), s, "s at ({i3},{i4})");
        }
    }

    #[test]
    fn delta_of_the_4x4_example() {
        let v = delta_from_hnf(&worked_4x4());
        assert_eq!(v, dv(&[1, 0, 3, 2, 0]));
        assert_eq!(v.polynomial_string(), "1 + 3t^2 + 2t^3");
        assert_eq!(v.to_string(), "1,0,3,2,0");
    }

    #[test]
    fn delta_of_identity_is_unit() {
        for d in 1..=5 {
            let a = hermite_normal_form(&IntMatrix::identity(d)).unwrap();
            assert_eq!(delta_from_hnf(&a), DeltaVector::unit(d));
        }
    }

    #[test]
    fn s_value_on_unit_index_of_identity() {
        let a = hermite_normal_form(&IntMatrix::identity(4)).unwrap();
        let idx = CongruenceIndex::new(alloc::vec![1, 1, 1, 1], &a).unwrap();
        // every lambda_k = 1, so s = d + 1
        assert_eq!(s_value(&a, &idx).unwrap(), 5);
    }

    #[test]
    fn s_value_by_hand_2x2() {
        // [[1,0],[1,2]], index (1,1): lambda_2 = 1/2, lambda_1 = 1/2, s = 2.
        let a = hnf_of(vec![vec![1, 0], vec![1, 2]]);
        let idx = CongruenceIndex::new(alloc::vec![1, 1], &a).unwrap();
        assert_eq!(s_value(&a, &idx).unwrap(), 2);
        assert_eq!(delta_from_hnf(&a), dv(&[1, 1, 0]));
    }

    #[test]
    fn congruence_index_validation() {
        let a = worked_4x4();
        assert!(CongruenceIndex::new(alloc::vec![1, 1, 2, 3], &a).is_ok());
        assert!(matches!(
            CongruenceIndex::new(alloc::vec![1, 1, 3, 3], &a),
            Err(Error::IndexOutOfBounds)
        ));
        assert!(matches!(
            CongruenceIndex::new(alloc::vec![0, 1, 1, 1], &a),
            Err(Error::IndexOutOfBounds)
        ));
        assert!(matches!(
            CongruenceIndex::new(alloc::vec![1, 1, 1], &a),
            Err(Error::IndexOutOfBounds)
        ));
    }

    #[test]
    fn congruence_indices_are_lexicographic_and_complete() {
        let a = worked_4x4();
        let all: Vec<Vec<u64>> = congruence_indices(&a)
            .map(|i| i.indices().to_vec())
            .collect();
        assert_eq!(
            all,
            alloc::vec![
                alloc::vec![1, 1, 1, 1],
                alloc::vec![1, 1, 1, 2],
                alloc::vec![1, 1, 1, 3],
                alloc::vec![1, 1, 2, 1],
                alloc::vec![1, 1, 2, 2],
                alloc::vec![1, 1, 2, 3],
            ]
        );
    }

    #[test]
    fn all_dminus1_examples() {
        assert_eq!(delta_all_dminus1(6, 3), dv(&[1, 2, 2, 1]));
        assert_eq!(delta_all_dminus1(2, 1), dv(&[1, 1]));
        // s_i = floor(3i/5) + 1 for i = 1..5 gives s = 1,2,2,3,4.
        assert_eq!(delta_all_dminus1(5, 3), dv(&[1, 1, 2, 1]));
    }

    #[test]
    fn shifted_symmetry_examples() {
        assert!(dv(&[1, 1, 2, 2, 1, 2, 2, 1]).is_shifted_symmetric());
        assert!(dv(&[1, 0, 0]).is_shifted_symmetric());
        assert!(!dv(&[1, 1, 0]).is_shifted_symmetric());
        assert!(!dv(&[1, 2, 2, 1]).is_shifted_symmetric());
        // d = 1: the only condition compares delta_1 with itself.
        assert!(dv(&[1, 7]).is_shifted_symmetric());
    }

    #[test]
    fn stanley_and_hibi_examples() {
        let v = dv(&[1, 0, 1, 0, 1, 1, 0, 0]);
        assert!(v.satisfies_stanley());
        assert!(v.satisfies_hibi());

        // i = 1: delta_3 = 1 > delta_2 = 0.
        let v = dv(&[1, 0, 0, 1, 1]);
        assert!(v.satisfies_stanley());
        assert!(!v.satisfies_hibi());

        let v = DeltaVector::unit(6);
        assert!(v.satisfies_stanley());
        assert!(v.satisfies_hibi());
    }

    #[test]
    fn parse_and_display_roundtrip() {
        let v: DeltaVector = "1,0,3,2,0".parse().unwrap();
        assert_eq!(v, dv(&[1, 0, 3, 2, 0]));
        assert_eq!(v.to_string(), "1,0,3,2,0");
        assert!("2,0".parse::<DeltaVector>().is_err());
        assert!("1,-1".parse::<DeltaVector>().is_err());
        assert!("".parse::<DeltaVector>().is_err());
    }

    #[test]
    fn polynomial_rendering_rules() {
        assert_eq!(dv(&[1, 1]).polynomial_string(), "1 + t");
        assert_eq!(dv(&[1, 0, 1]).polynomial_string(), "1 + t^2");
        assert_eq!(dv(&[1, 2, 0, 12]).polynomial_string(), "1 + 2t + 12t^3");
        assert_eq!(DeltaVector::unit(3).polynomial_string(), "1");
    }

    #[test]
    fn exponent_helpers() {
        let v = dv(&[1, 0, 1, 2, 0]);
        assert_eq!(v.positive_exponents().unwrap(), alloc::vec![2, 3, 3]);
        assert_eq!(v.top_degree(), 3);
        assert_eq!(v.mass(), BigInt::from(4));
        assert_eq!(DeltaVector::from_exponents(4, &[2, 3, 3]).unwrap(), v);
        assert!(DeltaVector::from_exponents(4, &[0]).is_err());
        assert!(DeltaVector::from_exponents(4, &[5]).is_err());
    }
}
