//! Exhaustive streams of Hermite normal forms with a given determinant.
//!
//! Every lower-triangular matrix with positive diagonal product `D` and row
//! `i` off-diagonal entries in `[0, a_ii)` is its own normal form, and each
//! corresponds to a distinct index-`D` sublattice.  The stream is emitted in
//! a fixed order: diagonal sequences lexicographically, then the
//! off-diagonal entries lexicographically in row-major reading order.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::hnf::HnfMatrix;
use crate::matrix::IntMatrix;

/// Which diagonal shapes to emit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormFilter {
    /// Every normal form.
    All,
    /// Exactly one diagonal entry larger than 1.
    OneRow,
    /// Exactly two diagonal entries larger than 1.
    TwoRow,
}

/// Search space for [`enumerate_hnf`]: dimension, determinant, and an
/// optional restriction on the diagonal shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HnfEnumSpec {
    pub dim: usize,
    pub det: u64,
    pub form_filter: FormFilter,
}

impl HnfEnumSpec {
    pub fn new(dim: usize, det: u64) -> Self {
        assert!(dim >= 1, "dimension must be >= 1");
        assert!(det >= 1, "determinant must be >= 1");
        Self {
            dim,
            det,
            form_filter: FormFilter::All,
        }
    }

    pub fn with_filter(mut self, filter: FormFilter) -> Self {
        self.form_filter = filter;
        self
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut k = 1;
    while k * k <= n {
        if n.is_multiple_of(k) {
            small.push(k);
            if k != n / k {
                large.push(n / k);
            }
        }
        k += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// All ordered factorizations of `det` into `dim` positive factors, in
/// lexicographic order.
fn diagonals(dim: usize, det: u64) -> Vec<Vec<u64>> {
    fn rec(slots: usize, rest: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if slots == 1 {
            prefix.push(rest);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for d in divisors(rest) {
            prefix.push(d);
            rec(slots - 1, rest / d, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(dim, det, &mut Vec::new(), &mut out);
    out
}

fn matches_filter(diag: &[u64], filter: FormFilter) -> bool {
    let nontrivial = diag.iter().filter(|&&a| a > 1).count();
    match filter {
        FormFilter::All => true,
        FormFilter::OneRow => nontrivial == 1,
        FormFilter::TwoRow => nontrivial == 2,
    }
}

/// Lazy stream over all normal forms matching `spec`, without duplicates.
/// Each emitted matrix is a fixed point of `hermite_normal_form`.
pub fn enumerate_hnf(spec: &HnfEnumSpec) -> HnfEnumerator {
    let diagonals = diagonals(spec.dim, spec.det)
        .into_iter()
        .filter(|d| matches_filter(d, spec.form_filter))
        .collect();
    HnfEnumerator {
        dim: spec.dim,
        diagonals,
        diag_index: 0,
        loaded: false,
        slots: Vec::new(),
        values: Vec::new(),
        exhausted: false,
    }
}

/// Iterator state: one odometer over the free off-diagonal slots per
/// diagonal sequence.
pub struct HnfEnumerator {
    dim: usize,
    diagonals: Vec<Vec<u64>>,
    diag_index: usize,
    loaded: bool,
    /// (row, col, bound) of the off-diagonal slots with bound > 1, row-major.
    slots: Vec<(usize, usize, u64)>,
    values: Vec<u64>,
    exhausted: bool,
}

impl HnfEnumerator {
    fn load_diagonal(&mut self) {
        let diag = &self.diagonals[self.diag_index];
        self.slots.clear();
        for (row, &a) in diag.iter().enumerate() {
            if a > 1 {
                for col in 0..row {
                    self.slots.push((row, col, a));
                }
            }
        }
        self.values = alloc::vec![0; self.slots.len()];
        self.exhausted = false;
    }

    fn build(&self) -> HnfMatrix {
        let d = self.dim;
        let diag = &self.diagonals[self.diag_index];
        let mut entries = alloc::vec![BigInt::zero(); d * d];
        for i in 0..d {
            entries[i * d + i] = BigInt::from(diag[i]);
        }
        for ((row, col, _), &v) in self.slots.iter().zip(&self.values) {
            if v > 0 {
                entries[row * d + col] = BigInt::from(v);
            }
        }
        let m = IntMatrix::from_entries(d, entries);
        HnfMatrix::from_normal_form(m).expect("enumerated matrices are normal forms")
    }

    /// Lexicographic increment over the row-major slot values; the last slot
    /// varies fastest.
    fn advance(&mut self) {
        let mut k = self.slots.len();
        loop {
            if k == 0 {
                self.exhausted = true;
                return;
            }
            k -= 1;
            if self.values[k] + 1 < self.slots[k].2 {
                self.values[k] += 1;
                for v in self.values.iter_mut().skip(k + 1) {
                    *v = 0;
                }
                return;
            }
        }
    }
}

impl Iterator for HnfEnumerator {
    type Item = HnfMatrix;

    fn next(&mut self) -> Option<HnfMatrix> {
        loop {
            if self.diag_index >= self.diagonals.len() {
                return None;
            }
            if !self.loaded {
                self.load_diagonal();
                self.loaded = true;
            }
            if self.exhausted {
                self.diag_index += 1;
                self.loaded = false;
                continue;
            }
            let item = self.build();
            self.advance();
            return Some(item);
        }
    }
}

/// Number of matrices [`enumerate_hnf`] will emit for `spec` (the sum over
/// matching diagonals of the product of `a_ii^(i-1)`).
pub fn enumeration_size(spec: &HnfEnumSpec) -> u128 {
    diagonals(spec.dim, spec.det)
        .into_iter()
        .filter(|d| matches_filter(d, spec.form_filter))
        .map(|diag| {
            diag.iter()
                .enumerate()
                .map(|(row, &a)| (a as u128).pow(row as u32))
                .product::<u128>()
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hnf::hermite_normal_form;
    use num_traits::One;

    fn collect(spec: &HnfEnumSpec) -> Vec<HnfMatrix> {
        enumerate_hnf(spec).collect()
    }

    #[test]
    fn single_cell() {
        let out = collect(&HnfEnumSpec::new(1, 3));
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].matrix().get(0, 0), &BigInt::from(3));
    }

    #[test]
    fn dim2_det2_has_exactly_three() {
        let out = collect(&HnfEnumSpec::new(2, 2));
        let rows: Vec<Vec<Vec<i64>>> = out
            .iter()
            .map(|h| {
                h.matrix()
                    .to_rows()
                    .iter()
                    .map(|r| r.iter().map(|e| i64::try_from(e).unwrap()).collect())
                    .collect()
            })
            .collect();
        assert_eq!(
            rows,
            alloc::vec![
                alloc::vec![alloc::vec![1, 0], alloc::vec![0, 2]],
                alloc::vec![alloc::vec![1, 0], alloc::vec![1, 2]],
                alloc::vec![alloc::vec![2, 0], alloc::vec![0, 1]],
            ]
        );
    }

    #[test]
    fn dim2_counts_are_divisor_sums() {
        // sigma(D) index-D sublattices of Z^2
        let sigma = |n: u64| divisors(n).iter().sum::<u64>();
        for det in 1..=8 {
            let out = collect(&HnfEnumSpec::new(2, det));
            assert_eq!(out.len() as u64, sigma(det), "det {det}");
            assert_eq!(
                enumeration_size(&HnfEnumSpec::new(2, det)),
                sigma(det) as u128
            );
        }
    }

    #[test]
    fn emitted_matrices_are_fixed_points_and_unique() {
        let spec = HnfEnumSpec::new(3, 6);
        let out = collect(&spec);
        assert_eq!(out.len() as u128, enumeration_size(&spec));
        let mut seen = alloc::collections::BTreeSet::new();
        for h in &out {
            let again = hermite_normal_form(h.matrix()).unwrap();
            assert_eq!(again.matrix(), h.matrix());
            assert!(seen.insert(h.matrix().to_string()), "duplicate emitted");
            assert_eq!(h.det(), BigInt::from(6));
        }
    }

    #[test]
    fn form_filters_split_det4() {
        let all = collect(&HnfEnumSpec::new(3, 4));
        let one = collect(&HnfEnumSpec::new(3, 4).with_filter(FormFilter::OneRow));
        let two = collect(&HnfEnumSpec::new(3, 4).with_filter(FormFilter::TwoRow));
        assert_eq!(all.len(), one.len() + two.len());
        for h in &one {
            let nontrivial = h.diagonal().iter().filter(|a| **a > BigInt::one()).count();
            assert_eq!(nontrivial, 1);
        }
        for h in &two {
            let nontrivial = h.diagonal().iter().filter(|a| **a > BigInt::one()).count();
            assert_eq!(nontrivial, 2);
        }
    }

    #[test]
    fn det_one_is_identity_only() {
        let out = collect(&HnfEnumSpec::new(4, 1));
        assert_eq!(out.len(), 1);
        assert!(out[0].matrix().is_identity());
    }
}
