use num_traits::{One, Zero};

use super::group::FgAbGroup;
use super::matrix::IntMatrix;
use super::snf::smith_normal_form;
use crate::error::{Error, Result};

/// The group `Z^rows / (column span of m)`.
pub fn cokernel(m: &IntMatrix) -> FgAbGroup {
    let snf = smith_normal_form(m);
    let factors = snf.invariant_factors();
    let nonzero: Vec<_> = factors.into_iter().filter(|d| !d.is_zero()).collect();
    let free = m.rows() - nonzero.len();
    FgAbGroup::from_cyclic_orders(free, nonzero.into_iter().filter(|d| !d.is_one()))
}

/// A basis of the lattice spanned by the columns of `m`, by integer column
/// reduction to echelon form. The result has `rank(m)` columns.
pub fn column_basis(m: &IntMatrix) -> IntMatrix {
    let mut a = m.clone();
    let rows = a.rows();
    let cols = a.cols();
    let mut pivot = 0;
    for r in 0..rows {
        if pivot == cols {
            break;
        }
        loop {
            // smallest nonzero |entry| in row r among columns pivot..
            let best = (pivot..cols)
                .filter(|&c| !a[(r, c)].is_zero())
                .min_by_key(|&c| num_traits::Signed::abs(&a[(r, c)]));
            let Some(b) = best else { break };
            a.swap_cols(pivot, b);
            let mut done = true;
            for c in pivot + 1..cols {
                if a[(r, c)].is_zero() {
                    continue;
                }
                let q = -(&a[(r, c)] / &a[(r, pivot)]);
                a.add_col_multiple(c, pivot, &q);
                if !a[(r, c)].is_zero() {
                    done = false;
                }
            }
            if done {
                pivot += 1;
                break;
            }
        }
    }
    let mut out = IntMatrix::zeros(rows, pivot);
    for r in 0..rows {
        for c in 0..pivot {
            out[(r, c)] = a[(r, c)].clone();
        }
    }
    out
}

/// A bounded chain complex of free abelian groups `C_0 ← C_1 ← ... ← C_n`.
///
/// `boundaries[k]` is the matrix of `∂_{k+1}: C_{k+1} → C_k` (rows index
/// `C_k`, columns index `C_{k+1}`).
#[derive(Clone, Debug)]
pub struct ChainComplex {
    ranks: Vec<usize>,
    boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    pub fn new(ranks: Vec<usize>, boundaries: Vec<IntMatrix>) -> Result<Self> {
        if boundaries.len() + 1 != ranks.len().max(1) {
            return Err(Error::DimensionMismatch {
                expected: ranks.len().saturating_sub(1),
                found: boundaries.len(),
            });
        }
        for (k, d) in boundaries.iter().enumerate() {
            if d.rows() != ranks[k] || d.cols() != ranks[k + 1] {
                return Err(Error::Precondition(format!(
                    "boundary ∂_{} has shape {}x{}, expected {}x{}",
                    k + 1,
                    d.rows(),
                    d.cols(),
                    ranks[k],
                    ranks[k + 1]
                )));
            }
        }
        for k in 1..boundaries.len() {
            if !(&boundaries[k - 1] * &boundaries[k]).is_zero() {
                return Err(Error::Precondition(format!(
                    "∂_{} ∘ ∂_{} ≠ 0",
                    k,
                    k + 1
                )));
            }
        }
        Ok(ChainComplex { ranks, boundaries })
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// `H_k = ker ∂_k / im ∂_{k+1}` for every degree.
    pub fn homology(&self) -> Vec<FgAbGroup> {
        let out_rank: Vec<usize> = self
            .boundaries
            .iter()
            .map(|d| smith_normal_form(d).rank())
            .collect();
        (0..self.ranks.len())
            .map(|k| {
                let rank_out = if k == 0 { 0 } else { out_rank[k - 1] };
                let (rank_in, torsion) = match self.boundaries.get(k) {
                    Some(d) => {
                        let snf = smith_normal_form(d);
                        let t: Vec<_> = snf
                            .invariant_factors()
                            .into_iter()
                            .filter(|x| !x.is_zero() && !x.is_one())
                            .collect();
                        (snf.rank(), t)
                    }
                    None => (0, Vec::new()),
                };
                FgAbGroup::from_cyclic_orders(self.ranks[k] - rank_out - rank_in, torsion)
            })
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(k, &r)| if k % 2 == 0 { r as i64 } else { -(r as i64) })
            .sum()
    }
}
