//! Exact computations with graded representations of bound quivers.

pub mod algebra;
pub mod artheory;
pub mod error;
pub mod exactla;
pub mod quiver;

pub use algebra::{AlgElement, GradedAlgebra, Relation};
pub use error::{Error, Result};
pub use exactla::{Field, Matrix, Scalar};
pub use quiver::{Path, Quiver};
pub mod gmodule;
pub mod homs;
pub mod poly;
pub mod presentations;
pub use gmodule::{Edge, GradedModule, Morphism};
pub mod fixtures;
pub mod io;
pub mod criteria;
pub mod cli;
