pub mod algebra;
pub mod error;
pub mod lattice;
pub mod puzzles;
pub mod sampling;
pub mod symmetric;
pub mod verify;
pub mod weights;

pub use algebra::{ExactScalar, Field, ParamPoly, ParamRatFunc, Ring};
pub use error::{Error, Result};
pub use lattice::{BoundarySpec, GridSpec, Kernel, LatticeConfig};
pub use symmetric::{Composition, EvalPoint};
pub use weights::{EdgeLabel, Spin, SpinParams, TileState};
