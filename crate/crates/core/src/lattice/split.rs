use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{is_even, is_primitive, signature, H2Class, IntegralLattice};
use crate::error::{Error, Result};
use crate::exactalg::{column_basis, IntMatrix};

/// Default sup-norm bound for the isotropic vector search.
pub const DEFAULT_SPLIT_BOUND: u64 = 10;

/// Points the isotropic search may visit per splitting step.
const SPLIT_POINT_LIMIT: u128 = 1 << 22;

/// A basis change `U` with `Uᵀ·gram·U = H ⊕ ... ⊕ H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperbolicSplit {
    /// Columns `e_1, f_1, e_2, f_2, ...` with `e_k·f_k = 1` and all other
    /// pairings zero.
    pub transform: IntMatrix,
    pub blocks: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplitOutcome {
    Split(HyperbolicSplit),
    /// The form is provably not a sum of hyperbolic planes.
    Impossible(String),
    /// No primitive isotropic vector was found within the search bound.
    Inconclusive(String),
}

impl SplitOutcome {
    pub fn is_split(&self) -> bool {
        matches!(self, SplitOutcome::Split(_))
    }
}

/// Splits an even unimodular form of signature 0 into hyperbolic planes.
///
/// Each step finds a primitive isotropic `e` by increasing sup norm, completes
/// it to a hyperbolic pair `(e, f)` and recurses into the orthogonal
/// complement, which is again even unimodular of signature 0.
pub fn hyperbolic_split(l: &IntegralLattice, search_bound: u64) -> Result<SplitOutcome> {
    let n = l.rank();
    if n % 2 == 1 {
        return Ok(SplitOutcome::Impossible(format!("odd rank {n}")));
    }
    if !l.is_unimodular() {
        return Ok(SplitOutcome::Impossible(format!(
            "not unimodular (determinant {})",
            l.determinant()
        )));
    }
    if !is_even(l) {
        return Ok(SplitOutcome::Impossible("form is odd".into()));
    }
    let sigma = signature(l)?;
    if sigma != 0 {
        return Ok(SplitOutcome::Impossible(format!("signature {sigma} ≠ 0")));
    }

    let gram = l.gram();
    let mut basis = IntMatrix::identity(n);
    let mut columns: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    while basis.cols() > 0 {
        let m = basis.cols();
        let local = basis.congruence(gram);
        let Some(e) = find_isotropic(&local, search_bound) else {
            return Ok(SplitOutcome::Inconclusive(format!(
                "no primitive isotropic vector with sup norm ≤ {search_bound} in a rank-{m} complement"
            )));
        };
        let ge = local.mul_vec(&e);
        let mut f = unit_dual(&ge).ok_or_else(|| {
            Error::Invariant("isotropic vector has non-primitive dual in a unimodular form".into())
        })?;
        let ff = local.bilinear(&f, &f);
        let half = ff / BigInt::from(2);
        for (fi, ei) in f.iter_mut().zip(&e) {
            *fi -= &half * ei;
        }

        // orthogonal projection of the standard basis onto ⟨e, f⟩^⊥
        let gf = local.mul_vec(&f);
        let mut proj = IntMatrix::identity(m);
        for k in 0..m {
            let vf = &gf[k];
            let ve = &ge[k];
            for r in 0..m {
                let v = &proj[(r, k)] - vf * &e[r] - ve * &f[r];
                proj[(r, k)] = v;
            }
        }
        let complement = column_basis(&proj);
        if complement.cols() != m - 2 {
            return Err(Error::Invariant(format!(
                "orthogonal complement has rank {}, expected {}",
                complement.cols(),
                m - 2
            )));
        }
        columns.push(basis.mul_vec(&e));
        columns.push(basis.mul_vec(&f));
        basis = &basis * &complement;
    }

    let mut u = IntMatrix::zeros(n, n);
    for (c, col) in columns.iter().enumerate() {
        for r in 0..n {
            u[(r, c)] = col[r].clone();
        }
    }
    verify_split(gram, &u)?;
    Ok(SplitOutcome::Split(HyperbolicSplit {
        transform: u,
        blocks: n / 2,
    }))
}

fn verify_split(gram: &IntMatrix, u: &IntMatrix) -> Result<()> {
    if !u.determinant()?.abs().is_one() {
        return Err(Error::Invariant("splitting transform is not unimodular".into()));
    }
    let b = u.congruence(gram);
    let n = b.rows();
    for r in 0..n {
        for c in 0..n {
            let expected = if r / 2 == c / 2 && r != c { 1 } else { 0 };
            if b[(r, c)] != BigInt::from(expected) {
                return Err(Error::Invariant(format!(
                    "UᵀgU entry ({r},{c}) = {} is not hyperbolic",
                    b[(r, c)]
                )));
            }
        }
    }
    Ok(())
}

/// Some `f` with `v·f = 1`, by extended gcd over the coordinates.
fn unit_dual(v: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut coeffs = vec![BigInt::zero(); v.len()];
    let mut g = BigInt::zero();
    for (i, a) in v.iter().enumerate() {
        let e = g.extended_gcd(a);
        // g_new = e.x * g + e.y * a
        for c in coeffs.iter_mut().take(i) {
            *c *= &e.x;
        }
        coeffs[i] = e.y;
        g = e.gcd;
    }
    if g.is_negative() {
        for c in &mut coeffs {
            *c = -&*c;
        }
        g = -g;
    }
    g.is_one().then_some(coeffs)
}

/// First primitive nonzero isotropic vector by increasing sup norm (then
/// descending lexicographic order), with the first nonzero coordinate positive.
fn find_isotropic(g: &IntMatrix, search_bound: u64) -> Option<Vec<BigInt>> {
    let m = g.rows();
    let mut visited: u128 = 0;
    for r in 1..=search_bound as i64 {
        let side = (2 * r + 1) as u128;
        visited = visited.saturating_add(side.saturating_pow(m as u32));
        if visited > SPLIT_POINT_LIMIT {
            return None;
        }
        let mut x = vec![r; m];
        loop {
            let on_shell = x.iter().any(|v| v.abs() == r);
            let leading_positive = x.iter().find(|v| **v != 0).is_some_and(|v| *v > 0);
            if on_shell && leading_positive {
                let xv: Vec<BigInt> = x.iter().map(|&v| v.into()).collect();
                if g.bilinear(&xv, &xv).is_zero() && is_primitive(&H2Class::new(xv.clone())) {
                    return Some(xv);
                }
            }
            let mut advanced = false;
            for i in (0..m).rev() {
                if x[i] > -r {
                    x[i] -= 1;
                    advanced = true;
                    break;
                }
                x[i] = r;
            }
            if !advanced {
                break;
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(rows: &[Vec<i64>]) -> IntegralLattice {
        IntegralLattice::from_rows(rows).unwrap()
    }

    fn split(l: &IntegralLattice) -> HyperbolicSplit {
        match hyperbolic_split(l, DEFAULT_SPLIT_BOUND).unwrap() {
            SplitOutcome::Split(s) => s,
            other => panic!("expected a split, got {other:?}"),
        }
    }

    #[test]
    fn hyperbolic_plane_is_already_split() {
        let s = split(&IntegralLattice::hyperbolic());
        assert_eq!(s.blocks, 1);
        assert_eq!(s.transform, IntMatrix::identity(2));
    }

    #[test]
    fn rank_zero_has_no_blocks() {
        let s = split(&IntegralLattice::zero_rank());
        assert_eq!(s.blocks, 0);
        assert_eq!(s.transform.rows(), 0);
    }

    #[test]
    fn scrambled_double_hyperbolic() {
        let hh = IntegralLattice::hyperbolic().orthogonal_sum(&IntegralLattice::hyperbolic());
        let mut u = IntMatrix::identity(4);
        for (dst, src, f) in [(0, 1, 2), (2, 0, -1), (3, 2, 3), (1, 3, 1), (0, 3, -2), (2, 1, 1)] {
            u.add_col_multiple(dst, src, &BigInt::from(f));
        }
        let scrambled = hh.change_basis(&u).unwrap();
        assert_ne!(scrambled.gram(), hh.gram());
        let s = split(&scrambled);
        assert_eq!(s.blocks, 2);
        assert_eq!(s.transform.congruence(scrambled.gram()), *hh.gram());
    }

    #[test]
    fn impossible_cases() {
        let odd = lat(&[vec![1, 0], vec![0, -1]]);
        assert!(matches!(hyperbolic_split(&odd, 10).unwrap(), SplitOutcome::Impossible(_)));
        assert!(matches!(
            hyperbolic_split(&lat(&[vec![1]]), 10).unwrap(),
            SplitOutcome::Impossible(_)
        ));
        assert!(matches!(
            hyperbolic_split(&lat(&[vec![2, 0], vec![0, -2]]), 10).unwrap(),
            SplitOutcome::Impossible(_)
        ));
    }

    #[test]
    fn unit_dual_solves_pairing() {
        let v: Vec<BigInt> = [6, 10, 15].iter().map(|&x| BigInt::from(x)).collect();
        let f = unit_dual(&v).unwrap();
        let s: BigInt = v.iter().zip(&f).map(|(a, b)| a * b).sum();
        assert!(s.is_one());
        assert!(unit_dual(&[BigInt::from(2), BigInt::from(4)]).is_none());
    }
}
