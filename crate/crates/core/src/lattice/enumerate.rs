use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{is_characteristic, signature, H2Class, IntegralLattice};
use crate::error::{Error, Result};
use crate::exactalg::{completed_squares, IntMatrix};

/// Largest number of candidate points an indefinite box search may visit.
pub const DEFAULT_POINT_LIMIT: u64 = 1 << 22;

/// Whether an enumeration is known to be the whole solution set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Finiteness {
    /// Definite (or rank 0) form: the list is complete, independent of the box.
    Finite,
    /// Indefinite form: the list is complete only inside the box.
    PossiblyInfinite,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacteristicEnumeration {
    /// Lexicographically sorted.
    pub classes: Vec<H2Class>,
    pub finiteness: Finiteness,
    pub target: BigInt,
    pub bound: u64,
}

/// All characteristic `x` with `x ∩ x = target`.
///
/// Definite forms are searched by completed-square backtracking, which
/// certifies completeness and ignores `bound`; indefinite forms are searched in
/// the box `max|x_i| ≤ bound`.
pub fn enumerate_characteristic(
    l: &IntegralLattice,
    target: &BigInt,
    bound: u64,
) -> Result<CharacteristicEnumeration> {
    enumerate_characteristic_with_limit(l, target, bound, DEFAULT_POINT_LIMIT)
}

pub fn enumerate_characteristic_with_limit(
    l: &IntegralLattice,
    target: &BigInt,
    bound: u64,
    point_limit: u64,
) -> Result<CharacteristicEnumeration> {
    if bound == 0 {
        return Err(Error::Precondition("enumeration bound must be positive".into()));
    }
    let inertia = l.inertia();
    if inertia.zero > 0 {
        return Err(Error::Degenerate);
    }

    let (mut classes, finiteness) = if l.rank() == 0 {
        let classes = if target.is_zero() {
            vec![H2Class::zero(0)]
        } else {
            Vec::new()
        };
        (classes, Finiteness::Finite)
    } else if inertia.negative == 0 {
        (definite_search(l.gram(), target)?, Finiteness::Finite)
    } else if inertia.positive == 0 {
        (definite_search(&l.gram().neg(), &-target)?, Finiteness::Finite)
    } else {
        (
            box_search(l.gram(), target, bound, point_limit)?,
            Finiteness::PossiblyInfinite,
        )
    };
    classes.sort();
    classes.dedup();

    let mut out = Vec::with_capacity(classes.len());
    for x in classes {
        if !is_characteristic(l, &x)? {
            return Err(Error::Invariant(format!("enumerated class {x} is not characteristic")));
        }
        if &l.square(&x)? != target {
            return Err(Error::Invariant(format!("enumerated class {x} has the wrong square")));
        }
        out.push(x);
    }
    if l.is_unimodular() && !out.is_empty() {
        let sigma = BigInt::from(signature(l)?);
        if !(target - &sigma).mod_floor(&BigInt::from(8)).is_zero() {
            return Err(Error::Invariant(format!(
                "characteristic square {target} is not congruent to the signature {sigma} mod 8"
            )));
        }
    }

    Ok(CharacteristicEnumeration {
        classes: out,
        finiteness,
        target: target.clone(),
        bound,
    })
}

fn definite_search(g: &IntMatrix, target: &BigInt) -> Result<Vec<H2Class>> {
    if target.is_negative() {
        return Ok(Vec::new());
    }
    let cs = completed_squares(g)?;
    let n = g.rows();
    let mut x = vec![BigInt::zero(); n];
    let mut found = Vec::new();
    backtrack(
        &cs.diag,
        &cs.upper,
        n,
        &mut x,
        BigRational::from_integer(target.clone()),
        &mut found,
    );
    Ok(found
        .into_iter()
        .filter(|v: &Vec<BigInt>| {
            // characteristic filter
            let gx = g.mul_vec(v);
            gx.iter()
                .enumerate()
                .all(|(i, s)| (s - &g[(i, i)]).is_even())
        })
        .map(H2Class::new)
        .collect())
}

/// Assigns coordinates from the last index down; `remaining` is the target
/// minus the completed squares already fixed.
fn backtrack(
    diag: &[BigRational],
    upper: &[Vec<BigRational>],
    level: usize,
    x: &mut Vec<BigInt>,
    remaining: BigRational,
    found: &mut Vec<Vec<BigInt>>,
) {
    if level == 0 {
        if remaining.is_zero() {
            found.push(x.clone());
        }
        return;
    }
    let i = level - 1;
    let n = x.len();
    let mut center = BigRational::zero();
    for j in i + 1..n {
        center -= &upper[i][j] * BigRational::from_integer(x[j].clone());
    }
    let slack = &remaining / &diag[i];
    let radius = slack.floor().to_integer().sqrt();
    let lo = center.floor().to_integer() - &radius - BigInt::one();
    let hi = center.ceil().to_integer() + &radius + BigInt::one();
    let mut v = lo;
    while v <= hi {
        let t = BigRational::from_integer(v.clone()) - &center;
        let used = &diag[i] * &t * &t;
        if used <= remaining {
            x[i] = v.clone();
            backtrack(diag, upper, i, x, &remaining - used, found);
        }
        v += 1;
    }
    x[i] = BigInt::zero();
}

/// Solutions of `g·x ≡ diag(g) (mod 2)` as a particular solution plus a
/// kernel basis, or `None` if inconsistent.
fn characteristic_residues(g: &IntMatrix) -> Option<(Vec<bool>, Vec<Vec<bool>>)> {
    let n = g.rows();
    let odd = |v: &BigInt| v.is_odd();
    let mut rows: Vec<Vec<bool>> = (0..n)
        .map(|r| {
            let mut row: Vec<bool> = g.row(r).iter().map(odd).collect();
            row.push(odd(&g[(r, r)]));
            row
        })
        .collect();

    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..n {
        let Some(p) = (rank..n).find(|&r| rows[r][c]) else {
            continue;
        };
        rows.swap(rank, p);
        for r in 0..n {
            if r != rank && rows[r][c] {
                let src = rows[rank].clone();
                for (a, b) in rows[r].iter_mut().zip(src) {
                    *a ^= b;
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    if rows[rank..].iter().any(|row| row[n]) {
        return None;
    }

    let mut particular = vec![false; n];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = rows[r][n];
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = vec![false; n];
            v[f] = true;
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = rows[r][f];
            }
            v
        })
        .collect();
    Some((particular, kernel))
}

/// Number of integers in `[-bound, bound]` with the given parity.
fn parity_count(bound: u64, odd: bool) -> u128 {
    let b = bound as u128;
    if odd {
        2 * b.div_ceil(2)
    } else {
        2 * (b / 2) + 1
    }
}

fn box_search(g: &IntMatrix, target: &BigInt, bound: u64, limit: u64) -> Result<Vec<H2Class>> {
    let Some((particular, kernel)) = characteristic_residues(g) else {
        return Ok(Vec::new());
    };
    if kernel.len() > 63 {
        return Err(Error::SearchTooLarge {
            points: format!("2^{} residue classes", kernel.len()),
            limit,
        });
    }
    let residues: Vec<Vec<bool>> = (0u64..1 << kernel.len())
        .map(|mask| {
            let mut r = particular.clone();
            for (k, v) in kernel.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    for (a, b) in r.iter_mut().zip(v) {
                        *a ^= b;
                    }
                }
            }
            r
        })
        .collect();

    let mut total: u128 = 0;
    for r in &residues {
        let mut points: u128 = 1;
        for &bit in r {
            points = points.saturating_mul(parity_count(bound, bit));
        }
        total = total.saturating_add(points);
    }
    if total > limit as u128 {
        let points = if total == u128::MAX {
            "more than 2^128".to_string()
        } else {
            total.to_string()
        };
        return Err(Error::SearchTooLarge { points, limit });
    }

    let bound = BigInt::from(bound);
    let mut found = Vec::new();
    for r in residues {
        let values: Vec<Vec<BigInt>> = r
            .iter()
            .map(|&odd| {
                let mut v = Vec::new();
                let mut x = -bound.clone();
                while x <= bound {
                    if x.is_odd() == odd {
                        v.push(x.clone());
                    }
                    x += 1;
                }
                v
            })
            .collect();
        scan_box(g, target, &values, &mut found);
    }
    Ok(found.into_iter().map(H2Class::new).collect())
}

/// Odometer over the product of `values`, updating `x ∩ x` incrementally.
fn scan_box(g: &IntMatrix, target: &BigInt, values: &[Vec<BigInt>], found: &mut Vec<Vec<BigInt>>) {
    let n = values.len();
    let mut idx = vec![0usize; n];
    let mut x: Vec<BigInt> = values.iter().map(|v| v[0].clone()).collect();
    let mut gx = g.mul_vec(&x);
    let mut q: BigInt = x.iter().zip(&gx).map(|(a, b)| a * b).sum();

    let shift = |i: usize, delta: &BigInt, q: &mut BigInt, gx: &mut [BigInt]| {
        *q += BigInt::from(2) * delta * &gx[i] + delta * delta * &g[(i, i)];
        for (r, e) in gx.iter_mut().enumerate() {
            *e += delta * &g[(r, i)];
        }
    };

    loop {
        if &q == target {
            found.push(x.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < values[i].len() {
                let delta = &values[i][idx[i]] - &x[i];
                shift(i, &delta, &mut q, &mut gx);
                x[i] = values[i][idx[i]].clone();
                break;
            }
            let delta = &values[i][0] - &x[i];
            shift(i, &delta, &mut q, &mut gx);
            x[i] = values[i][0].clone();
            idx[i] = 0;
        }
    }
}

/// Number of candidate points a box search at `bound` would visit, if it fits in `u64`.
pub fn box_search_size(l: &IntegralLattice, bound: u64) -> Option<u64> {
    let (particular, kernel) = characteristic_residues(l.gram())?;
    let mut total: u128 = 0;
    for mask in 0u64..1u64.checked_shl(kernel.len() as u32)? {
        let mut r = particular.clone();
        for (k, v) in kernel.iter().enumerate() {
            if mask >> k & 1 == 1 {
                for (a, b) in r.iter_mut().zip(v) {
                    *a ^= b;
                }
            }
        }
        let points = r
            .iter()
            .fold(1u128, |acc, &bit| acc.saturating_mul(parity_count(bound, bit)));
        total = total.saturating_add(points);
    }
    total.to_u64()
}
