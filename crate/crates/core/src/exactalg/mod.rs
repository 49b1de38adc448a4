//! Exact integer linear algebra: dense big-integer matrices, Smith normal
//! form, finitely generated abelian groups, cellular homology, and exact
//! congruence diagonalization of symmetric forms.

mod congruence;
mod group;
mod homology;
mod matrix;
mod snf;

pub use congruence::{
    completed_squares, congruence_diagonalize, inertia, CompletedSquares,
    CongruenceDiagonalization, Inertia,
};
pub use group::{group_sum, FgAbGroup, GroupRepr, IntRepr};
pub use homology::{cokernel, column_basis, ChainComplex};
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, SmithDecomposition};
