//! Quantum-deformed Koszul complexes for the Hecke symmetry of type (3|1) and
//! the irreducible comodules they produce.

pub mod charformula;
pub mod comodule;
pub mod doublecx;
pub mod error;
pub mod field;
pub mod linalg;
pub mod par;
pub mod hecke;
pub mod koszul;
pub mod poly;
pub mod scalar;
pub mod tensorspace;

pub use error::{Error, Result};
pub use field::{Backend, BackendKind, Evaluated, Exact, Field};
pub use scalar::{EvalPoint, Scalar};
