use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;
use super::snf::smith_normal_form;

/// A finitely generated abelian group `Z^r ⊕ Z_{d_1} ⊕ ... ⊕ Z_{d_k}` in
/// invariant-factor normal form: every `d_i ≥ 2` and `d_i | d_{i+1}`.
///
/// The only constructors normalize, so two values are equal iff the groups are
/// isomorphic.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "GroupRepr", try_from = "GroupRepr")]
pub struct FgAbGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl FgAbGroup {
    pub fn trivial() -> Self {
        FgAbGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn integers() -> Self {
        Self::free(1)
    }

    /// `Z/nZ`; `n = 0` gives `Z` and `n = ±1` the trivial group.
    pub fn cyclic(n: impl Into<BigInt>) -> Self {
        Self::from_cyclic_orders(0, [n.into()])
    }

    /// Normal form of `Z^free ⊕ ⊕_i Z/o_iZ` for arbitrary orders (0 counts as `Z`).
    pub fn from_cyclic_orders(free: usize, orders: impl IntoIterator<Item = BigInt>) -> Self {
        let mut free_rank = free;
        let mut finite = Vec::new();
        for o in orders {
            let o = o.abs();
            if o.is_zero() {
                free_rank += 1;
            } else if !o.is_one() {
                finite.push(o);
            }
        }
        if finite.len() <= 1 {
            return FgAbGroup {
                free_rank,
                torsion: finite,
            };
        }
        let snf = smith_normal_form(&IntMatrix::diagonal(&finite));
        let torsion = snf
            .invariant_factors()
            .into_iter()
            .filter(|d| !d.is_one())
            .collect();
        FgAbGroup { free_rank, torsion }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    /// Direct sum, renormalized.
    pub fn direct_sum(&self, other: &FgAbGroup) -> FgAbGroup {
        FgAbGroup::from_cyclic_orders(
            self.free_rank + other.free_rank,
            self.torsion.iter().chain(&other.torsion).cloned(),
        )
    }

    /// `self^n`.
    pub fn power(&self, n: usize) -> FgAbGroup {
        (0..n).fold(FgAbGroup::trivial(), |acc, _| acc.direct_sum(self))
    }

    /// Tensor product over `Z`: `Z ⊗ G = G`, `Z_a ⊗ Z_b = Z_gcd(a,b)`.
    pub fn tensor(&self, other: &FgAbGroup) -> FgAbGroup {
        let mut orders = Vec::new();
        for _ in 0..self.free_rank {
            orders.extend(other.torsion.iter().cloned());
        }
        for _ in 0..other.free_rank {
            orders.extend(self.torsion.iter().cloned());
        }
        for a in &self.torsion {
            for b in &other.torsion {
                orders.push(a.gcd(b));
            }
        }
        FgAbGroup::from_cyclic_orders(self.free_rank * other.free_rank, orders)
    }
}

/// Direct sum of two groups in normal form.
pub fn group_sum(a: &FgAbGroup, b: &FgAbGroup) -> FgAbGroup {
    a.direct_sum(b)
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        // group repeated torsion factors: Z_2 ⊕ Z_2 → Z_2^2
        let mut i = 0;
        while i < self.torsion.len() {
            let d = &self.torsion[i];
            let run = self.torsion[i..].iter().take_while(|x| *x == d).count();
            if run == 1 {
                parts.push(format!("Z_{d}"));
            } else {
                parts.push(format!("Z_{d}^{run}"));
            }
            i += run;
        }
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FgAbGroup({self})")
    }
}

/// Integer that serializes as a plain number when it fits in `i64` and as a
/// decimal string otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntRepr {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for IntRepr {
    fn from(v: &BigInt) -> Self {
        match v.to_i64() {
            Some(s) => IntRepr::Small(s),
            None => IntRepr::Big(v.to_string()),
        }
    }
}

impl fmt::Display for IntRepr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntRepr::Small(v) => write!(f, "{v}"),
            IntRepr::Big(s) => f.write_str(s),
        }
    }
}

impl TryFrom<IntRepr> for BigInt {
    type Error = String;

    fn try_from(v: IntRepr) -> Result<BigInt, String> {
        match v {
            IntRepr::Small(s) => Ok(s.into()),
            IntRepr::Big(s) => s.parse().map_err(|_| format!("not an integer: {s:?}")),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupRepr {
    pub free_rank: usize,
    pub torsion: Vec<IntRepr>,
}

impl From<FgAbGroup> for GroupRepr {
    fn from(g: FgAbGroup) -> Self {
        GroupRepr {
            free_rank: g.free_rank,
            torsion: g.torsion.iter().map(IntRepr::from).collect(),
        }
    }
}

impl TryFrom<GroupRepr> for FgAbGroup {
    type Error = String;

    fn try_from(r: GroupRepr) -> Result<FgAbGroup, String> {
        let orders = r
            .torsion
            .into_iter()
            .map(BigInt::try_from)
            .collect::<Result<Vec<_>, _>>()?;
        let g = FgAbGroup::from_cyclic_orders(r.free_rank, orders.iter().cloned());
        // the serialized form must already be normal
        if g.free_rank != r.free_rank || g.torsion != orders {
            return Err(format!(
                "torsion list {orders:?} is not in invariant-factor normal form (expected {g})"
            ));
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn sums_from_examples() {
        let z2 = FgAbGroup::cyclic(2);
        let z3 = FgAbGroup::cyclic(3);
        assert_eq!(group_sum(&z2, &z3).torsion(), t(&[6]).as_slice());
        let s = group_sum(&FgAbGroup::integers(), &FgAbGroup::cyclic(12));
        assert_eq!(s.free_rank(), 1);
        assert_eq!(s.torsion(), t(&[12]).as_slice());
        assert_eq!(group_sum(&z2, &z2).torsion(), t(&[2, 2]).as_slice());
    }

    #[test]
    fn cyclic_edge_cases() {
        assert_eq!(FgAbGroup::cyclic(0), FgAbGroup::integers());
        assert!(FgAbGroup::cyclic(1).is_trivial());
        assert_eq!(FgAbGroup::cyclic(-4), FgAbGroup::cyclic(4));
    }

    #[test]
    fn normal_form_of_mixed_orders() {
        let g = FgAbGroup::from_cyclic_orders(0, t(&[4, 6, 1, 9]));
        // 2-parts {4, 2}, 3-parts {3, 9}
        assert_eq!(g.torsion(), t(&[6, 36]).as_slice());
        assert_eq!(g.order(), Some(BigInt::from(216)));
    }

    #[test]
    fn tensor_products() {
        let z = FgAbGroup::integers();
        let z2 = FgAbGroup::cyclic(2);
        let z24 = FgAbGroup::cyclic(24);
        assert_eq!(z.tensor(&z24), z24);
        assert_eq!(z2.tensor(&z24), z2);
        assert_eq!(FgAbGroup::free(3).tensor(&z2), z2.power(3));
        assert!(FgAbGroup::trivial().tensor(&z).is_trivial());
        assert_eq!(FgAbGroup::cyclic(4).tensor(&FgAbGroup::cyclic(6)), z2);
    }

    #[test]
    fn display() {
        assert_eq!(FgAbGroup::trivial().to_string(), "0");
        assert_eq!(FgAbGroup::cyclic(2).power(2).to_string(), "Z_2^2");
        assert_eq!(
            FgAbGroup::free(2).direct_sum(&FgAbGroup::cyclic(12)).to_string(),
            "Z^2 ⊕ Z_12"
        );
    }

    #[test]
    fn repr_rejects_non_normal_lists() {
        let bad = GroupRepr {
            free_rank: 0,
            torsion: vec![IntRepr::Small(2), IntRepr::Small(3)],
        };
        assert!(FgAbGroup::try_from(bad).is_err());
        let good = GroupRepr {
            free_rank: 1,
            torsion: vec![IntRepr::Small(2), IntRepr::Small(4)],
        };
        assert_eq!(FgAbGroup::try_from(good).unwrap().to_string(), "Z ⊕ Z_2 ⊕ Z_4");
    }

    fn arb_group() -> impl Strategy<Value = FgAbGroup> {
        (0usize..3, proptest::collection::vec(0i64..30, 0..4))
            .prop_map(|(r, o)| FgAbGroup::from_cyclic_orders(r, o.into_iter().map(BigInt::from)))
    }

    proptest! {
        #[test]
        fn sum_commutative_associative(a in arb_group(), b in arb_group(), c in arb_group()) {
            prop_assert_eq!(group_sum(&a, &b), group_sum(&b, &a));
            prop_assert_eq!(group_sum(&group_sum(&a, &b), &c), group_sum(&a, &group_sum(&b, &c)));
        }

        #[test]
        fn finite_orders_multiply(a in arb_group(), b in arb_group()) {
            let s = group_sum(&a, &b);
            match (a.order(), b.order()) {
                (Some(x), Some(y)) => prop_assert_eq!(s.order(), Some(x * y)),
                _ => prop_assert!(s.order().is_none()),
            }
        }

        #[test]
        fn normal_form_invariants(g in arb_group()) {
            for w in g.torsion().windows(2) {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
            prop_assert!(g.torsion().iter().all(|d| *d >= BigInt::from(2)));
        }
    }
}
