use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// Counts of positive, negative and zero entries in a diagonalization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }

    pub fn is_definite(&self) -> bool {
        self.zero == 0 && (self.positive == 0 || self.negative == 0)
    }
}

/// `transformᵀ · g · transform = diag(diagonal)` over the rationals.
#[derive(Clone, Debug)]
pub struct CongruenceDiagonalization {
    pub diagonal: Vec<BigRational>,
    /// Row-major `n × n`.
    pub transform: Vec<Vec<BigRational>>,
}

impl CongruenceDiagonalization {
    pub fn inertia(&self) -> Inertia {
        let mut i = Inertia {
            positive: 0,
            negative: 0,
            zero: 0,
        };
        for d in &self.diagonal {
            if d.is_positive() {
                i.positive += 1;
            } else if d.is_negative() {
                i.negative += 1;
            } else {
                i.zero += 1;
            }
        }
        i
    }
}

fn to_rational(g: &IntMatrix) -> Vec<Vec<BigRational>> {
    (0..g.rows())
        .map(|r| {
            g.row(r)
                .iter()
                .map(|v| BigRational::from_integer(v.clone()))
                .collect()
        })
        .collect()
}

/// Symmetric Gaussian elimination with symmetric pivoting.
///
/// When every remaining diagonal entry is zero but some off-diagonal entry
/// `a_ij` is not, basis vector `i` is replaced by `e_i + e_j`, whose square is
/// `2·a_ij ≠ 0`; together with the following elimination step this splits off
/// a hyperbolic pair of inertia (1, 1).
pub fn congruence_diagonalize(g: &IntMatrix) -> Result<CongruenceDiagonalization> {
    g.check_symmetric()?;
    let n = g.rows();
    let mut a = to_rational(g);
    let mut p: Vec<Vec<BigRational>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| if r == c { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect();

    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(i) = (k + 1..n).find(|&i| !a[i][i].is_zero()) {
                swap_sym(&mut a, &mut p, k, i);
            } else if let Some((i, j)) = (k..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !a[i][j].is_zero())
            {
                add_sym(&mut a, &mut p, i, j, &BigRational::one());
                swap_sym(&mut a, &mut p, k, i);
            } else {
                // remaining block is identically zero
                break;
            }
        }
        let pivot = a[k][k].clone();
        for j in k + 1..n {
            if a[j][k].is_zero() {
                continue;
            }
            let factor = -(&a[j][k] / &pivot);
            add_sym(&mut a, &mut p, j, k, &factor);
        }
    }

    let diagonal = (0..n).map(|i| a[i][i].clone()).collect();
    Ok(CongruenceDiagonalization {
        diagonal,
        transform: p,
    })
}

/// Basis vector `dst` becomes `e_dst + factor·e_src` (row and column operation).
fn add_sym(
    a: &mut [Vec<BigRational>],
    p: &mut [Vec<BigRational>],
    dst: usize,
    src: usize,
    factor: &BigRational,
) {
    let n = a.len();
    for c in 0..n {
        let v = &a[src][c] * factor;
        a[dst][c] += v;
    }
    for r in 0..n {
        let v = &a[r][src] * factor;
        a[r][dst] += v;
    }
    for row in p.iter_mut() {
        let v = &row[src] * factor;
        row[dst] += v;
    }
}

fn swap_sym(a: &mut [Vec<BigRational>], p: &mut [Vec<BigRational>], i: usize, j: usize) {
    if i == j {
        return;
    }
    a.swap(i, j);
    for row in a.iter_mut() {
        row.swap(i, j);
    }
    for row in p.iter_mut() {
        row.swap(i, j);
    }
}

/// Exact inertia of a symmetric integer matrix.
pub fn inertia(g: &IntMatrix) -> Result<Inertia> {
    Ok(congruence_diagonalize(g)?.inertia())
}

/// Coefficients of the completed-square expansion of a positive definite form:
/// `xᵀgx = Σ_i d_i (x_i + Σ_{j>i} u_ij x_j)²`.
#[derive(Clone, Debug)]
pub struct CompletedSquares {
    pub diag: Vec<BigRational>,
    /// `upper[i][j]` for `j > i`; other entries are zero.
    pub upper: Vec<Vec<BigRational>>,
}

/// Completed-square (LDLᵀ) expansion; fails unless `g` is positive definite.
pub fn completed_squares(g: &IntMatrix) -> Result<CompletedSquares> {
    g.check_symmetric()?;
    let n = g.rows();
    let mut q = to_rational(g);
    for i in 0..n {
        if !q[i][i].is_positive() {
            return Err(Error::Precondition("form is not positive definite".into()));
        }
        for j in i + 1..n {
            q[j][i] = q[i][j].clone();
            q[i][j] = &q[i][j] / &q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                let v = &q[k][i] * &q[i][l];
                q[k][l] -= v;
            }
        }
    }
    let diag = (0..n).map(|i| q[i][i].clone()).collect();
    let upper = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if j > i { q[i][j].clone() } else { BigRational::zero() })
                .collect()
        })
        .collect();
    Ok(CompletedSquares { diag, upper })
}

impl CompletedSquares {
    pub fn evaluate(&self, x: &[BigInt]) -> BigRational {
        let n = self.diag.len();
        (0..n)
            .map(|i| {
                let mut t = BigRational::from_integer(x[i].clone());
                for j in i + 1..n {
                    t += &self.upper[i][j] * BigRational::from_integer(x[j].clone());
                }
                &self.diag[i] * &t * &t
            })
            .sum()
    }
}
