use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// Result of a Smith normal form computation: `left · m · right = diagonal`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub diagonal: IntMatrix,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries `d_1 | d_2 | ...`, length `min(rows, cols)`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.diagonal.rows().min(self.diagonal.cols());
        (0..n).map(|i| self.diagonal[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().iter().filter(|d| !d.is_zero()).count()
    }
}

/// Smith normal form over the integers with unimodular transforms.
///
/// Pivots are chosen as the smallest nonzero entry of the remaining block and
/// reduced by Euclidean steps; a pivot that fails to divide the rest of the
/// block absorbs the offending row and is reduced again, so each pivot ends up
/// dividing every later one. Pivots are made non-negative.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let rows = m.rows();
    let cols = m.cols();
    let mut d = m.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            let Some((pr, pc)) = smallest_nonzero(&d, t) else {
                return SmithDecomposition {
                    diagonal: d,
                    left,
                    right,
                };
            };
            d.swap_rows(t, pr);
            left.swap_rows(t, pr);
            d.swap_cols(t, pc);
            right.swap_cols(t, pc);

            let mut cleared = true;
            for r in t + 1..rows {
                if d[(r, t)].is_zero() {
                    continue;
                }
                let q = -(&d[(r, t)] / &d[(t, t)]);
                d.add_row_multiple(r, t, &q);
                left.add_row_multiple(r, t, &q);
                if !d[(r, t)].is_zero() {
                    cleared = false;
                }
            }
            for c in t + 1..cols {
                if d[(t, c)].is_zero() {
                    continue;
                }
                let q = -(&d[(t, c)] / &d[(t, t)]);
                d.add_col_multiple(c, t, &q);
                right.add_col_multiple(c, t, &q);
                if !d[(t, c)].is_zero() {
                    cleared = false;
                }
            }
            if !cleared {
                continue;
            }

            let pivot = d[(t, t)].clone();
            let offender = (t + 1..rows)
                .find(|&r| (t + 1..cols).any(|c| !(&d[(r, c)] % &pivot).is_zero()));
            match offender {
                Some(r) => {
                    let one = BigInt::from(1);
                    d.add_row_multiple(t, r, &one);
                    left.add_row_multiple(t, r, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            left.negate_row(t);
        }
    }

    SmithDecomposition {
        diagonal: d,
        left,
        right,
    }
}

fn smallest_nonzero(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for r in t..d.rows() {
        for c in t..d.cols() {
            let v = d[(r, c)].abs();
            if v.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, _, b)| v < *b) {
                best = Some((r, c, v));
            }
        }
    }
    best.map(|(r, c, _)| (r, c))
}
