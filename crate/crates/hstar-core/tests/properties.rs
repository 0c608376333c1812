//! Property tests over randomly drawn normal forms and unimodular
//! transforms.

use hstar_core::{
    count_points, delta_bruteforce, delta_from_hnf, enumerate_hnf, hermite_normal_form,
    DeltaVector, HnfEnumSpec, HnfMatrix, IntMatrix, OneRowForm, Simplex,
};
use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;

fn nth_hnf(dim: usize, det: u64, seed: u64) -> HnfMatrix {
    let all: Vec<HnfMatrix> = enumerate_hnf(&HnfEnumSpec::new(dim, det)).collect();
    all[(seed % all.len() as u64) as usize].clone()
}

fn arb_hnf(max_dim: usize, max_det: u64) -> impl Strategy<Value = HnfMatrix> {
    (1..=max_dim, 1..=max_det, any::<u64>()).prop_map(|(d, det, seed)| nth_hnf(d, det, seed))
}

/// Deterministic unimodular matrix built from elementary column operations.
fn unimodular_from_seed(dim: usize, mut seed: u64) -> IntMatrix {
    let mut rows = IntMatrix::identity(dim).to_rows();
    let mut next = || {
        // xorshift64
        seed ^= seed << 13;
        seed ^= seed >> 7;
        seed ^= seed << 17;
        seed
    };
    for _ in 0..8 {
        let op = next() % 3;
        let i = (next() % dim as u64) as usize;
        let j = (next() % dim as u64) as usize;
        match op {
            0 if i != j => {
                // col_i += k * col_j, k in -3..=3
                let k = BigInt::from((next() % 7) as i64 - 3);
                for row in rows.iter_mut() {
                    let add = &k * &row[j];
                    row[i] += add;
                }
            }
            1 if i != j => {
                for row in rows.iter_mut() {
                    row.swap(i, j);
                }
            }
            2 => {
                for row in rows.iter_mut() {
                    let v = std::mem::take(&mut row[i]);
                    row[i] = -v;
                }
            }
            _ => {}
        }
    }
    IntMatrix::from_rows(rows).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hnf_is_idempotent(h in arb_hnf(4, 8)) {
        let again = hermite_normal_form(h.matrix()).unwrap();
        prop_assert_eq!(again.matrix(), h.matrix());
        prop_assert!(again.transform().is_identity());
    }

    #[test]
    fn hnf_invariants_on_arbitrary_matrices(
        dim in 1usize..=4,
        entries in proptest::collection::vec(-9i64..=9, 16),
    ) {
        let rows: Vec<Vec<i64>> = (0..dim).map(|i| entries[i * dim..(i + 1) * dim].to_vec()).collect();
        let m = IntMatrix::from_rows(rows).unwrap();
        let det = m.determinant();
        match hermite_normal_form(&m) {
            Err(hstar_core::Error::SingularMatrix) => prop_assert_eq!(det, BigInt::from(0)),
            Err(e) => return Err(TestCaseError::fail(format!("unexpected error {e}"))),
            Ok(h) => {
                prop_assert!(det != BigInt::from(0));
                let a = h.matrix();
                prop_assert!(a.is_lower_triangular());
                for i in 0..dim {
                    prop_assert!(a.get(i, i) > &BigInt::from(0));
                    for j in 0..i {
                        prop_assert!(a.get(i, j) >= &BigInt::from(0));
                        prop_assert!(a.get(i, j) < a.get(i, i));
                    }
                }
                prop_assert_eq!(&m.mul(h.transform()).unwrap(), a);
                prop_assert!(h.transform().is_unimodular());
                prop_assert_eq!(h.det(), det.abs());
                // stable under renormalization
                let again = hermite_normal_form(a).unwrap();
                prop_assert_eq!(again.matrix(), a);
            }
        }
    }

    #[test]
    fn hnf_is_right_unimodular_invariant(h in arb_hnf(4, 8), seed in any::<u64>()) {
        let v = unimodular_from_seed(h.dim(), seed);
        prop_assert!(v.is_unimodular());
        let m = h.matrix().mul(&v).unwrap();
        let normalized = hermite_normal_form(&m).unwrap();
        // the normal form is the canonical representative of the orbit
        prop_assert_eq!(normalized.matrix(), h.matrix());
        // reconstruction and determinant preservation
        prop_assert_eq!(&m.mul(normalized.transform()).unwrap(), normalized.matrix());
        prop_assert!(normalized.transform().is_unimodular());
        prop_assert_eq!(m.determinant().abs(), h.det());
    }

    #[test]
    fn delta_is_an_equivalence_invariant(h in arb_hnf(3, 6), seed in any::<u64>()) {
        let v = unimodular_from_seed(h.dim(), seed);
        let m = h.matrix().mul(&v).unwrap();
        let back = hermite_normal_form(&m).unwrap();
        prop_assert_eq!(delta_from_hnf(&back), delta_from_hnf(&h));
    }

    #[test]
    fn engine_matches_oracle_on_random_forms(h in arb_hnf(3, 6)) {
        let s = Simplex::new(h.matrix().clone()).unwrap();
        prop_assert_eq!(delta_bruteforce(&s).unwrap(), delta_from_hnf(&h));
    }

    #[test]
    fn counts_are_monotone_and_interior_bounded(h in arb_hnf(3, 5), n in 0u64..4) {
        let s = Simplex::new(h.matrix().clone()).unwrap();
        let closed = count_points(&s, n, false).unwrap();
        let interior = count_points(&s, n, true).unwrap();
        prop_assert!(interior <= closed);
        let closed_next = count_points(&s, n + 1, false).unwrap();
        prop_assert!(closed <= closed_next);
    }

    #[test]
    fn one_row_delta_ignores_row_position(
        dim in 2usize..=6,
        det in 2u64..=6,
        seed in any::<u64>(),
    ) {
        // distribute a random multiset that fits in the smallest position
        let mut left = dim - 1;
        let mut mults = vec![0usize; (det - 1) as usize];
        let mut s = seed;
        for m in mults.iter_mut() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let take = (s >> 33) as usize % (left + 1);
            *m = take;
            left -= take;
        }
        let total: usize = mults.iter().sum();
        let base = OneRowForm::new(dim, det, mults).unwrap();
        let reference = base.delta();
        for position in (total + 1).max(1)..=dim {
            let f = base.clone().with_row_position(position).unwrap();
            prop_assert_eq!(delta_from_hnf(&f.expand()), reference.clone());
        }
    }

    #[test]
    fn delta_vector_text_roundtrip(coeffs in proptest::collection::vec(0u64..50, 0..8)) {
        let mut full = vec![1u64];
        full.extend(coeffs);
        let v = DeltaVector::new(full).unwrap();
        let parsed: DeltaVector = v.to_string().parse().unwrap();
        prop_assert_eq!(parsed, v);
    }

    #[test]
    fn enumeration_matches_its_size_prediction(dim in 1usize..=4, det in 1u64..=6) {
        let spec = HnfEnumSpec::new(dim, det);
        let n = enumerate_hnf(&spec).count();
        prop_assert_eq!(n as u128, hstar_core::enumerate::enumeration_size(&spec));
    }
}
