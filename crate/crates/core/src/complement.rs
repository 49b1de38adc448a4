//! Cell models `S² ∪_x (D⁴_1 ⊔ ... ⊔ D⁴_b)` of embedding complements, where
//! the `i`-th 4-cell is attached by `x_i` times the Hopf map.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exactalg::{cokernel, ChainComplex, FgAbGroup, IntMatrix};
use crate::lattice::H2Class;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplementModel {
    b2: usize,
    attaching: H2Class,
}

impl ComplementModel {
    pub fn new(attaching: H2Class) -> Self {
        ComplementModel {
            b2: attaching.rank(),
            attaching,
        }
    }

    pub fn from_i64(attaching: &[i64]) -> Self {
        Self::new(H2Class::from_i64(attaching))
    }

    pub fn b2(&self) -> usize {
        self.b2
    }

    pub fn attaching(&self) -> &H2Class {
        &self.attaching
    }

    /// One 0-cell, one 2-cell and `b2` 4-cells.
    fn chain_complex(&self) -> ChainComplex {
        let ranks = vec![1, 0, 1, 0, self.b2];
        let boundaries = (0..4)
            .map(|k| IntMatrix::zeros(ranks[k], ranks[k + 1]))
            .collect();
        ChainComplex::new(ranks, boundaries).expect("zero boundaries form a complex")
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.chain_complex().euler_characteristic()
    }
}

impl fmt::Display for ComplementModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S² ∪_{} ({}·D⁴)", self.attaching, self.b2)
    }
}

/// Cellular homology in degrees 0..=4.
pub fn homology_of(model: &ComplementModel) -> Vec<FgAbGroup> {
    model.chain_complex().homology()
}

/// `π_3` of the model: the cokernel of `H_4(model) → H_4(CP^∞) = Z`, which
/// sends the `i`-th 4-cell to `attaching_i` times the generator.
pub fn pi3_of(model: &ComplementModel) -> FgAbGroup {
    let row = IntMatrix::from_vec(1, model.b2, model.attaching.coords().to_vec())
        .expect("attaching vector has length b2");
    cokernel(&row)
}

/// The wedge `S² ∨ b2·S⁴` when every attaching coefficient vanishes.
pub fn wedge_form(model: &ComplementModel) -> Option<String> {
    if !model.attaching.is_zero() {
        return None;
    }
    Some(match model.b2 {
        0 => "S²".to_string(),
        b => format!("S² ∨ {b}·S⁴"),
    })
}

/// Order of `π_3` as a cyclic group: `0` means `Z`.
pub fn pi3_cyclic_order(model: &ComplementModel) -> Result<BigInt> {
    let g = pi3_of(model);
    match (g.free_rank(), g.torsion()) {
        (1, []) => Ok(BigInt::zero()),
        (0, []) => Ok(1.into()),
        (0, [d]) => Ok(d.clone()),
        _ => Err(crate::Error::Invariant(format!("π_3 = {g} is not cyclic"))),
    }
}
