//! Integral symmetric bilinear forms (intersection forms on `H_2`) and their
//! classes: signature, parity, characteristic vectors, divisibility and
//! hyperbolic splittings.

mod enumerate;
mod split;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{congruence_diagonalize, Inertia, IntMatrix, IntRepr};

pub use enumerate::{
    box_search_size, enumerate_characteristic, enumerate_characteristic_with_limit,
    CharacteristicEnumeration, Finiteness, DEFAULT_POINT_LIMIT,
};
pub use split::{hyperbolic_split, HyperbolicSplit, SplitOutcome, DEFAULT_SPLIT_BOUND};

/// A symmetric integer Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralLattice {
    gram: IntMatrix,
}

impl IntegralLattice {
    pub fn new(gram: IntMatrix) -> Result<Self> {
        gram.check_symmetric()?;
        Ok(IntegralLattice { gram })
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        Self::new(IntMatrix::from_rows(rows)?)
    }

    /// The hyperbolic plane `[[0,1],[1,0]]`.
    pub fn hyperbolic() -> Self {
        Self::from_rows(&[vec![0, 1], vec![1, 0]]).expect("symmetric")
    }

    pub fn zero_rank() -> Self {
        IntegralLattice {
            gram: IntMatrix::zeros(0, 0),
        }
    }

    /// Orthogonal direct sum.
    pub fn orthogonal_sum(&self, other: &IntegralLattice) -> IntegralLattice {
        let (a, b) = (self.rank(), other.rank());
        let mut g = IntMatrix::zeros(a + b, a + b);
        for r in 0..a {
            for c in 0..a {
                g[(r, c)] = self.gram[(r, c)].clone();
            }
        }
        for r in 0..b {
            for c in 0..b {
                g[(a + r, a + c)] = other.gram[(r, c)].clone();
            }
        }
        IntegralLattice { gram: g }
    }

    /// The same form with the opposite orientation.
    pub fn negated(&self) -> IntegralLattice {
        IntegralLattice {
            gram: self.gram.neg(),
        }
    }

    /// The form in a new basis given by the columns of `u`.
    pub fn change_basis(&self, u: &IntMatrix) -> Result<IntegralLattice> {
        if u.rows() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: u.rows(),
            });
        }
        IntegralLattice::new(u.congruence(&self.gram))
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn determinant(&self) -> BigInt {
        self.gram.determinant().expect("square")
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().abs().is_one()
    }

    pub fn check_unimodular(&self) -> Result<()> {
        let det = self.determinant();
        if det.abs().is_one() {
            Ok(())
        } else {
            Err(Error::NotUnimodular {
                det: det.to_string(),
            })
        }
    }

    pub fn inertia(&self) -> Inertia {
        congruence_diagonalize(&self.gram)
            .expect("gram is symmetric")
            .inertia()
    }

    pub fn is_definite(&self) -> bool {
        self.inertia().is_definite()
    }

    /// `xᵀ·gram·y`.
    pub fn pairing(&self, x: &H2Class, y: &H2Class) -> Result<BigInt> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(self.gram.bilinear(&x.0, &y.0))
    }

    /// `x ∩ x`.
    pub fn square(&self, x: &H2Class) -> Result<BigInt> {
        self.pairing(x, x)
    }

    fn check_dim(&self, x: &H2Class) -> Result<()> {
        if x.rank() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: x.rank(),
            });
        }
        Ok(())
    }
}

/// Positive minus negative inertia. Degenerate forms are rejected.
pub fn signature(l: &IntegralLattice) -> Result<i64> {
    let inertia = l.inertia();
    if inertia.zero > 0 {
        return Err(Error::Degenerate);
    }
    Ok(inertia.signature())
}

/// Every diagonal entry even, equivalently `x ∩ x` even for all `x`.
pub fn is_even(l: &IntegralLattice) -> bool {
    (0..l.rank()).all(|i| l.gram[(i, i)].is_even())
}

/// `x ∩ y ≡ y ∩ y (mod 2)` for all `y`, tested on basis vectors.
pub fn is_characteristic(l: &IntegralLattice, x: &H2Class) -> Result<bool> {
    l.check_dim(x)?;
    let gx = l.gram.mul_vec(&x.0);
    Ok(gx
        .iter()
        .enumerate()
        .all(|(i, v)| (v - &l.gram[(i, i)]).is_even()))
}

/// Largest `k` with `x = k·y` for some integral `y`: the gcd of the
/// coordinates, and 0 for the zero class.
pub fn divisibility(x: &H2Class) -> BigInt {
    x.0.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v))
}

pub fn is_primitive(x: &H2Class) -> bool {
    divisibility(x).is_one()
}

/// Coordinates of a class in `H_2(N)` with respect to the lattice basis.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<IntRepr>", try_from = "Vec<IntRepr>")]
pub struct H2Class(pub Vec<BigInt>);

impl H2Class {
    pub fn new(coords: Vec<BigInt>) -> Self {
        H2Class(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        H2Class(coords.iter().map(|&v| v.into()).collect())
    }

    pub fn zero(rank: usize) -> Self {
        H2Class(vec![BigInt::zero(); rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Sup norm of the coordinates.
    pub fn max_abs(&self) -> BigInt {
        self.0.iter().map(Signed::abs).max().unwrap_or_default()
    }

    /// The class `m·x`.
    pub fn transform(&self, m: &IntMatrix) -> H2Class {
        H2Class(m.mul_vec(&self.0))
    }
}

impl fmt::Display for H2Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for H2Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl From<H2Class> for Vec<IntRepr> {
    fn from(x: H2Class) -> Self {
        x.0.iter().map(IntRepr::from).collect()
    }
}

impl TryFrom<Vec<IntRepr>> for H2Class {
    type Error = String;

    fn try_from(v: Vec<IntRepr>) -> std::result::Result<Self, String> {
        v.into_iter()
            .map(BigInt::try_from)
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(H2Class)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lat(rows: &[Vec<i64>]) -> IntegralLattice {
        IntegralLattice::from_rows(rows).unwrap()
    }

    fn x(c: &[i64]) -> H2Class {
        H2Class::from_i64(c)
    }

    #[test]
    fn signature_examples() {
        assert_eq!(signature(&lat(&[vec![1]])).unwrap(), 1);
        assert_eq!(signature(&IntegralLattice::hyperbolic()).unwrap(), 0);
        assert_eq!(signature(&lat(&[vec![1, 0], vec![0, 1]])).unwrap(), 2);
        assert_eq!(signature(&IntegralLattice::zero_rank()).unwrap(), 0);
        assert_eq!(
            signature(&lat(&[vec![1, 1], vec![1, 1]])),
            Err(Error::Degenerate)
        );
    }

    #[test]
    fn parity_examples() {
        assert!(is_even(&IntegralLattice::hyperbolic()));
        assert!(!is_even(&lat(&[vec![1]])));
        assert!(is_even(&lat(&[vec![2, 0], vec![0, -2]])));
    }

    #[test]
    fn characteristic_examples() {
        let cp2 = lat(&[vec![1]]);
        assert!(is_characteristic(&cp2, &x(&[1])).unwrap());
        assert!(!is_characteristic(&cp2, &x(&[0])).unwrap());
        assert!(is_characteristic(&IntegralLattice::hyperbolic(), &x(&[2, 0])).unwrap());
        assert!(!is_characteristic(&IntegralLattice::hyperbolic(), &x(&[1, 0])).unwrap());
        assert!(is_characteristic(&lat(&[vec![1, 0], vec![0, 1]]), &x(&[1, 1])).unwrap());
        assert!(is_characteristic(&cp2, &x(&[1, 0])).is_err());
    }

    #[test]
    fn divisibility_examples() {
        assert_eq!(divisibility(&x(&[2, 0])), 2.into());
        assert_eq!(divisibility(&x(&[0, 0])), 0.into());
        assert_eq!(divisibility(&x(&[3, 5])), 1.into());
        assert_eq!(divisibility(&x(&[-6, 9])), 3.into());
        assert!(is_primitive(&x(&[1])));
        assert!(!is_primitive(&x(&[2, 0])));
        assert!(!is_primitive(&x(&[0, 0])));
    }

    #[test]
    fn asymmetric_gram_rejected() {
        let err = IntegralLattice::from_rows(&[vec![0, 1], vec![2, 0]]).unwrap_err();
        assert!(err.to_string().starts_with("Gram matrix not symmetric"));
    }

    fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> IntMatrix {
        let mut u = IntMatrix::identity(n);
        for &(a, b, f) in ops {
            let (a, b) = (a % n, b % n);
            if a != b {
                u.add_col_multiple(a, b, &BigInt::from(f));
            } else {
                u.swap_cols(a, (a + 1) % n);
            }
        }
        u
    }

    fn diag_sum(signs: &[i64], hyperbolics: usize) -> IntegralLattice {
        let mut l = IntegralLattice::zero_rank();
        for &s in signs {
            l = l.orthogonal_sum(&lat(&[vec![s]]));
        }
        for _ in 0..hyperbolics {
            l = l.orthogonal_sum(&IntegralLattice::hyperbolic());
        }
        l
    }

    proptest! {
        #[test]
        fn signature_parity_invariant_under_congruence(
            signs in proptest::collection::vec(prop_oneof![Just(1i64), Just(-1i64)], 0..3),
            hyp in 0usize..3,
            ops in proptest::collection::vec((0usize..6, 0usize..6, -3i64..=3), 0..10),
        ) {
            let l = diag_sum(&signs, hyp);
            prop_assume!(l.rank() > 0);
            let u = unimodular(l.rank(), &ops);
            let m = l.change_basis(&u).unwrap();
            prop_assert_eq!(signature(&l).unwrap(), signature(&m).unwrap());
            prop_assert_eq!(is_even(&l), is_even(&m));
            prop_assert!(m.is_unimodular());
        }

        #[test]
        fn divisibility_invariant_under_basis_change(
            coords in proptest::collection::vec(-12i64..=12, 1..5),
            ops in proptest::collection::vec((0usize..6, 0usize..6, -3i64..=3), 0..10),
        ) {
            let v = x(&coords);
            let u = unimodular(coords.len(), &ops);
            prop_assert_eq!(divisibility(&v), divisibility(&v.transform(&u)));
        }
    }
}
