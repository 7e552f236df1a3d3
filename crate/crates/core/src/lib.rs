//! Symbolic computation in Cuntz algebras, their permutation representations,
//! recursive fermion systems and the CAR dynamics they induce.

pub mod algebra;
pub mod car;
pub mod dynamics;
pub mod error;
pub mod io;
pub mod morphisms;
pub mod perm_reps;
pub mod report;
pub mod rfs;
pub mod scalar;
pub mod states;

pub use algebra::{Element, Key, Word};
pub use error::{Error, Result};
pub use morphisms::Morphism;
pub use scalar::{Cplx, Gauss, Scalar};
