//! Exact computations around the Chevalley restriction theorem: rational
//! Dunkl operators and their pairing on root systems, invariants of Takiff
//! algebras, and the membership criterion for the image of the restriction
//! map to the Cartan subalgebra.

pub mod dunkl;
pub mod exactalg;
pub mod liealg;
pub mod linalg;
pub mod restriction;
pub mod rootsys;
pub mod subspace;

pub use dunkl::DunklContext;
pub use exactalg::{rat, Monomial, PolyError, Polynomial, Rational, Variables};
pub use liealg::{make_sl, takiff_extend, LieAlgebra, TakiffAlgebra};
pub use linalg::Matrix;
pub use restriction::CartanFrame;
pub use rootsys::{build_root_system, CartanType, MultiplicityAssignment, RootSystem, WeylGroup};
pub use subspace::GradedSubspace;
