//! Exhaustive checks that the closed-form delta computations agree with the
//! congruence-class engine over their whole small-parameter ranges.

use hstar_core::{delta_all_dminus1, delta_from_hnf, HnfMatrix, IntMatrix, OneRowForm};
use num_bigint::BigInt;

/// All multiplicity tuples of the given length with sum at most `max_total`.
fn tuples(len: usize, max_total: usize) -> Vec<Vec<usize>> {
    fn rec(len: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur.push(v);
            rec(len, left - v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, max_total, &mut Vec::new(), &mut out);
    out
}

#[test]
fn one_row_closed_form_matches_engine_exhaustively() {
    for det in 2u64..=7 {
        for dim in 1usize..=6 {
            for mults in tuples((det - 1) as usize, dim - 1) {
                let form = OneRowForm::new(dim, det, mults.clone()).unwrap();
                assert_eq!(
                    form.delta(),
                    delta_from_hnf(&form.expand()),
                    "D={det} d={dim} mults={mults:?}"
                );
            }
        }
    }
}

#[test]
fn all_dminus1_is_the_top_value_one_row_form() {
    for det in 2u64..=8 {
        for dim in 1usize..=6 {
            let mut mults = vec![0usize; (det - 1) as usize];
            *mults.last_mut().unwrap() = dim - 1;
            let form = OneRowForm::new(dim, det, mults).unwrap();
            assert_eq!(delta_all_dminus1(det, dim), form.delta(), "D={det} d={dim}");
        }
    }
}

/// The delta-vector of a one-row form does not depend on where the
/// non-trivial row sits or how the values are arranged in it.
#[test]
fn one_row_position_and_arrangement_independence() {
    // D = 3, d = 4, one 1 and one 2 among the entries
    let reference = OneRowForm::new(4, 3, vec![1, 1]).unwrap().delta();
    let dim = 4;
    for position in 3..=dim {
        let r = position - 1;
        let slots = position - 1;
        // all ordered placements of {1, 2} plus zeros over the slots
        for a in 0..slots {
            for b in 0..slots {
                if a == b {
                    continue;
                }
                let mut rows = IntMatrix::identity(dim).to_rows();
                rows[r][r] = BigInt::from(3);
                rows[r][a] = BigInt::from(1);
                rows[r][b] = BigInt::from(2);
                let m = IntMatrix::from_rows(rows).unwrap();
                let h = HnfMatrix::from_normal_form(m).unwrap();
                assert_eq!(delta_from_hnf(&h), reference, "pos={position} a={a} b={b}");
            }
        }
    }
}
