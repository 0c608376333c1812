//! Independent brute-force ground truth.
//!
//! Lattice points of the `n`-th dilation of a simplex are counted directly:
//! a candidate point `x` belongs to `n * conv(v_0, ..., v_d)` exactly when
//! the barycentric solve `lambda * V = x - n*v_0` (rows of `V` are the edge
//! vectors `v_i - v_0`) gives `lambda_i >= 0` and `sum lambda_i <= n`, with
//! strict inequalities for interior counts.  One adjugate of `V` is computed
//! per simplex and reused, so each membership test is an exact integer
//! solve; nothing here shares machinery with the congruence-class engine.
//!
//! The delta-vector is recovered from the counts `i(P, 0), ..., i(P, d)` by
//! the binomial transform (multiplication of the Ehrhart series by
//! `(1 - t)^(d+1)`), and the reciprocity check extrapolates the degree-`d`
//! Ehrhart polynomial to negative arguments through exact Newton forward
//! differences.
//!
//! Scanning the integer bounding box of the dilation is refused when its
//! volume exceeds a configurable candidate budget.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::{binomial, Integer};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::delta::DeltaVector;
use crate::matrix::{IntMatrix, Simplex};
use crate::{Error, Result};

/// Cap on the number of candidate points the oracle may scan per count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PointBudget {
    max_candidates: u128,
}

impl PointBudget {
    pub const DEFAULT_CANDIDATES: u128 = 100_000_000;

    pub const fn new(max_candidates: u128) -> Self {
        Self { max_candidates }
    }

    pub fn unlimited() -> Self {
        Self {
            max_candidates: u128::MAX,
        }
    }

    pub fn max_candidates(&self) -> u128 {
        self.max_candidates
    }
}

impl Default for PointBudget {
    fn default() -> Self {
        Self::new(Self::DEFAULT_CANDIDATES)
    }
}

/// Classical adjugate: `v * adjugate(v) = det(v) * I`.
fn adjugate(v: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let d = v.len();
    if d == 1 {
        return alloc::vec![alloc::vec![BigInt::one()]];
    }
    let mut adj = alloc::vec![alloc::vec![BigInt::zero(); d]; d];
    for (i, adj_row) in adj.iter_mut().enumerate() {
        for (j, slot) in adj_row.iter_mut().enumerate() {
            let minor: Vec<Vec<BigInt>> = (0..d)
                .filter(|&r| r != j)
                .map(|r| {
                    (0..d)
                        .filter(|&c| c != i)
                        .map(|c| v[r][c].clone())
                        .collect()
                })
                .collect();
            let det = IntMatrix::from_rows(minor)
                .expect("minor is square")
                .determinant();
            *slot = if (i + j) % 2 == 0 { det } else { -det };
        }
    }
    adj
}

/// Reusable point-counting state for one simplex.
pub struct PointCounter {
    dim: usize,
    /// Edge vectors `v_i - v_0`, one per row.
    edges: Vec<Vec<BigInt>>,
    /// Sign-fixed adjugate `W` with `lambda_j * |det| = sum_i y_i * W[i][j]`.
    adj: Vec<Vec<BigInt>>,
    abs_det: BigInt,
    /// Lower triangular with positive diagonal: back-substitution applies.
    triangular: bool,
    budget: PointBudget,
}

impl PointCounter {
    /// Counter for a simplex anchored at the origin.
    pub fn for_simplex(s: &Simplex, budget: PointBudget) -> Self {
        let edges = s.matrix().to_rows();
        Self::from_edges(edges, budget).expect("simplex matrices are nonsingular")
    }

    /// Counter for the simplex spanned by `d + 1` arbitrary integer
    /// vertices; the first vertex is used as the anchor.
    pub fn from_vertices(vertices: &[Vec<BigInt>], budget: PointBudget) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidMatrix("need at least one vertex".into()));
        }
        let d = vertices.len() - 1;
        if d == 0 || vertices.iter().any(|v| v.len() != d) {
            return Err(Error::InvalidMatrix(alloc::format!(
                "expected {} vertices of length {d}",
                d + 1
            )));
        }
        let anchor = &vertices[0];
        let edges: Vec<Vec<BigInt>> = vertices[1..]
            .iter()
            .map(|v| v.iter().zip(anchor).map(|(a, b)| a - b).collect())
            .collect();
        Self::from_edges(edges, budget)
    }

    fn from_edges(edges: Vec<Vec<BigInt>>, budget: PointBudget) -> Result<Self> {
        let dim = edges.len();
        let det = IntMatrix::from_rows(edges.clone())?.determinant();
        if det.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let mut adj = adjugate(&edges);
        if det.is_negative() {
            for row in &mut adj {
                for e in row {
                    let v = core::mem::take(e);
                    *e = -v;
                }
            }
        }
        let triangular = (0..dim)
            .all(|i| edges[i][i].is_positive() && (i + 1..dim).all(|j| edges[i][j].is_zero()));
        Ok(Self {
            dim,
            edges,
            adj,
            abs_det: det.abs(),
            triangular,
            budget,
        })
    }

    /// Bounding box of the `n`-th dilation in anchored coordinates.
    fn bounding_box(&self, n: u64) -> (Vec<BigInt>, Vec<BigInt>) {
        let n = BigInt::from(n);
        let mut lo = alloc::vec![BigInt::zero(); self.dim];
        let mut hi = alloc::vec![BigInt::zero(); self.dim];
        for j in 0..self.dim {
            for row in &self.edges {
                if row[j] < lo[j] {
                    lo[j] = row[j].clone();
                }
                if row[j] > hi[j] {
                    hi[j] = row[j].clone();
                }
            }
            lo[j] *= &n;
            hi[j] *= &n;
        }
        (lo, hi)
    }

    fn check_budget(&self, lo: &[BigInt], hi: &[BigInt]) -> Result<()> {
        let mut volume = BigInt::one();
        for (l, h) in lo.iter().zip(hi) {
            volume *= h - l + 1;
        }
        let cap = BigInt::from(self.budget.max_candidates());
        if volume > cap {
            return Err(Error::BudgetExceeded {
                candidates: volume.to_u128().unwrap_or(u128::MAX),
                budget: self.budget.max_candidates(),
            });
        }
        Ok(())
    }

    /// Number of lattice points of the `n`-th dilation (interior points when
    /// `interior` is set).
    pub fn count(&self, n: u64, interior: bool) -> Result<BigInt> {
        let (lo, hi) = self.bounding_box(n);
        self.check_budget(&lo, &hi)?;
        // lambda_j >= threshold/|det| and sum lambda <= bound/|det|, scaled
        // to the integers Lambda_j = lambda_j * |det|.
        let threshold = if interior {
            BigInt::one()
        } else {
            BigInt::zero()
        };
        let mut bound = BigInt::from(n) * &self.abs_det;
        if interior {
            bound -= 1;
        }
        if self.triangular {
            let mut scaled = alloc::vec![BigInt::zero(); self.dim];
            let mut count = BigInt::zero();
            self.scan_triangular(
                self.dim - 1,
                &mut scaled,
                &BigInt::zero(),
                &threshold,
                &bound,
                &mut count,
            );
            Ok(count)
        } else {
            let mut order: Vec<usize> = (0..self.dim).collect();
            // resolve the widest coordinate by interval arithmetic
            let pivot = (0..self.dim)
                .max_by_key(|&j| &hi[j] - &lo[j])
                .expect("dim >= 1");
            order.retain(|&j| j != pivot);
            let mut count = BigInt::zero();
            let sums = alloc::vec![BigInt::zero(); self.dim];
            self.scan_general(
                &order,
                0,
                pivot,
                &lo,
                &hi,
                &sums,
                &BigInt::zero(),
                &threshold,
                &bound,
                &mut count,
            );
            Ok(count)
        }
    }

    /// Back-substitution scan for lower-triangular edge matrices: fixing the
    /// coordinates below level `j` determines their barycentric coordinates,
    /// and each level admits a contiguous interval of values.
    #[allow(clippy::too_many_arguments)]
    fn scan_triangular(
        &self,
        level: usize,
        scaled: &mut Vec<BigInt>,
        partial_sum: &BigInt,
        threshold: &BigInt,
        bound: &BigInt,
        count: &mut BigInt,
    ) {
        let pivot = &self.edges[level][level];
        // contribution of the already-fixed coordinates to column `level`
        let mut c = BigInt::zero();
        for (lambda, row) in scaled.iter().zip(&self.edges).skip(level + 1) {
            if !row[level].is_zero() {
                c += lambda * &row[level];
            }
        }
        let room = bound - partial_sum;
        if room < *threshold {
            return;
        }
        // Lambda_level = (y * |det| - c) / pivot, integral for every integer y
        let y_lo = (&c + threshold * pivot).div_ceil(&self.abs_det);
        let y_hi = (&c + &room * pivot).div_floor(&self.abs_det);
        if y_lo > y_hi {
            return;
        }
        if level == 0 {
            *count += &y_hi - &y_lo + 1;
            return;
        }
        let mut y = y_lo.clone();
        while y <= y_hi {
            let num = &y * &self.abs_det - &c;
            debug_assert!((&num % pivot).is_zero());
            let lambda_scaled = num / pivot;
            let next_sum = partial_sum + &lambda_scaled;
            scaled[level] = lambda_scaled;
            self.scan_triangular(level - 1, scaled, &next_sum, threshold, bound, count);
            y += 1;
        }
        scaled[level] = BigInt::zero();
    }

    /// General fiber scan: iterate the non-pivot coordinates over the
    /// bounding box and resolve the pivot coordinate as an exact interval.
    #[allow(clippy::too_many_arguments)]
    fn scan_general(
        &self,
        order: &[usize],
        level: usize,
        pivot: usize,
        lo: &[BigInt],
        hi: &[BigInt],
        sums: &[BigInt],
        total: &BigInt,
        threshold: &BigInt,
        bound: &BigInt,
        count: &mut BigInt,
    ) {
        if level == order.len() {
            *count +=
                self.pivot_interval(pivot, &lo[pivot], &hi[pivot], sums, total, threshold, bound);
            return;
        }
        let coord = order[level];
        if lo[coord] > hi[coord] {
            return;
        }
        let row = &self.adj[coord];
        let row_total: BigInt = row.iter().sum();
        let mut sums2: Vec<BigInt> = sums
            .iter()
            .zip(row)
            .map(|(s, w)| s + &lo[coord] * w)
            .collect();
        let mut total2 = total + &lo[coord] * &row_total;
        let mut y = lo[coord].clone();
        loop {
            self.scan_general(
                order,
                level + 1,
                pivot,
                lo,
                hi,
                &sums2,
                &total2,
                threshold,
                bound,
                count,
            );
            if y == hi[coord] {
                break;
            }
            y += 1;
            for (s, w) in sums2.iter_mut().zip(row) {
                *s += w;
            }
            total2 += &row_total;
        }
    }

    /// Number of integer values of the pivot coordinate satisfying all
    /// `d + 1` linear constraints on a fiber.
    #[allow(clippy::too_many_arguments)]
    fn pivot_interval(
        &self,
        pivot: usize,
        lo: &BigInt,
        hi: &BigInt,
        sums: &[BigInt],
        total: &BigInt,
        threshold: &BigInt,
        bound: &BigInt,
    ) -> BigInt {
        let mut lo = lo.clone();
        let mut hi = hi.clone();
        let row = &self.adj[pivot];
        // Lambda_j = sums[j] + y * row[j] >= threshold
        for (s, w) in sums.iter().zip(row) {
            let rhs = threshold - s;
            match w.sign() {
                num_bigint::Sign::NoSign => {
                    if rhs.is_positive() {
                        return BigInt::zero();
                    }
                }
                num_bigint::Sign::Plus => {
                    let b = rhs.div_ceil(w);
                    if b > lo {
                        lo = b;
                    }
                }
                num_bigint::Sign::Minus => {
                    let b = rhs.div_floor(w);
                    if b < hi {
                        hi = b;
                    }
                }
            }
        }
        // total + y * row_total <= bound
        let row_total: BigInt = row.iter().sum();
        let rhs = bound - total;
        match row_total.sign() {
            num_bigint::Sign::NoSign => {
                if rhs.is_negative() {
                    return BigInt::zero();
                }
            }
            num_bigint::Sign::Plus => {
                let b = rhs.div_floor(&row_total);
                if b < hi {
                    hi = b;
                }
            }
            num_bigint::Sign::Minus => {
                let b = rhs.div_ceil(&row_total);
                if b > lo {
                    lo = b;
                }
            }
        }
        if lo > hi {
            BigInt::zero()
        } else {
            hi - lo + 1
        }
    }
}

/// `|nP ∩ Z^d|` (or the interior count) with the default budget.
pub fn count_points(s: &Simplex, n: u64, interior: bool) -> Result<BigInt> {
    count_points_with(s, n, interior, PointBudget::default())
}

pub fn count_points_with(
    s: &Simplex,
    n: u64,
    interior: bool,
    budget: PointBudget,
) -> Result<BigInt> {
    PointCounter::for_simplex(s, budget).count(n, interior)
}

/// Brute-force delta-vector: count `i(P, n)` for `n = 0..=d` and apply the
/// binomial transform `delta_j = sum_m (-1)^(j-m) C(d+1, j-m) i(P, m)`.
pub fn delta_bruteforce(s: &Simplex) -> Result<DeltaVector> {
    delta_bruteforce_with(s, PointBudget::default())
}

pub fn delta_bruteforce_with(s: &Simplex, budget: PointBudget) -> Result<DeltaVector> {
    let d = s.dim();
    let counter = PointCounter::for_simplex(s, budget);
    let mut counts = Vec::with_capacity(d + 1);
    for n in 0..=d as u64 {
        counts.push(counter.count(n, false)?);
    }
    let dp1 = BigInt::from(d + 1);
    let mut coeffs = Vec::with_capacity(d + 1);
    for j in 0..=d {
        let mut acc = BigInt::zero();
        for (m, c) in counts.iter().enumerate().take(j + 1) {
            let term = binomial(dp1.clone(), BigInt::from(j - m)) * c;
            if (j - m) % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        coeffs.push(acc);
    }
    let v = DeltaVector::new(coeffs)?;
    debug_assert_eq!(v.mass(), s.normalized_volume());
    Ok(v)
}

/// Verifies Ehrhart reciprocity `i*(P, n) = (-1)^d i(P, -n)` for
/// `n = 1..=n_max`: the closed counts at `n = 0..=d` pin down the degree-`d`
/// Ehrhart polynomial, whose exact extrapolation to `-n` is compared against
/// directly counted interior points.
pub fn check_reciprocity(s: &Simplex, n_max: u64) -> Result<bool> {
    check_reciprocity_with(s, n_max, PointBudget::default())
}

pub fn check_reciprocity_with(s: &Simplex, n_max: u64, budget: PointBudget) -> Result<bool> {
    let d = s.dim();
    let counter = PointCounter::for_simplex(s, budget);
    let mut table: Vec<BigInt> = Vec::with_capacity(d + 1);
    for n in 0..=d as u64 {
        table.push(counter.count(n, false)?);
    }
    // Newton forward differences at 0
    let mut diffs = Vec::with_capacity(d + 1);
    diffs.push(table[0].clone());
    let mut row = table;
    for _ in 1..=d {
        row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
        diffs.push(row[0].clone());
    }
    for n in 1..=n_max {
        // i(P, -n) = sum_k diffs[k] * C(-n, k), C(-n, k) = (-1)^k C(n+k-1, k)
        let mut at_neg = BigInt::zero();
        for (k, diff) in diffs.iter().enumerate() {
            let c = binomial(BigInt::from(n as usize + k - 1), BigInt::from(k));
            let term = diff * c;
            if k % 2 == 0 {
                at_neg += term;
            } else {
                at_neg -= term;
            }
        }
        let expected = if d.is_multiple_of(2) { at_neg } else { -at_neg };
        let interior = counter.count(n, true)?;
        if interior != expected {
            return Ok(false);
        }
    }
    Ok(true)
}
