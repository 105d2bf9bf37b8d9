//! Projective geometry of finite groups: structure maps on power sets, torsor laws,
//! operator calculus and the sign symmetry of the structure maps.

pub mod affine;
pub mod engine;
pub mod error;
pub mod group;
pub mod operator;
pub mod structure;
pub mod subset;
pub mod suites;
pub mod symmetry;
pub mod torsor;
pub mod verdict;

pub use error::{Error, Result};
pub use group::{Elem, FiniteGroup};
pub use subset::{Side, Subset};
