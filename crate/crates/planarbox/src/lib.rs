pub mod algebra;
pub mod crossed;
pub mod group;
pub mod intermediate;
pub mod linalg;
pub mod par;
pub mod report;
pub mod scalar;
pub mod suites;
pub mod tangle;

pub use algebra::{GroupPlanarAlgebra, PAElement};
pub use crossed::CrossedProduct;
pub use group::{FiniteGroup, GroupAction};
pub use intermediate::{AlgebraInstance, IntermediateAlgebra};
pub use scalar::RadicalScalar;
