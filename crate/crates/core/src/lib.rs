//! Mutation of skew-symmetrizable matrices, their diagrams and quasi-Cartan
//! companions, with decision procedures for finite type and mutation-finiteness
//! of principal-coefficient extensions.

pub mod catalog;
pub mod classify;
pub mod companion;
pub mod diagram;
pub mod exchange;
pub mod forms;
pub mod io;
pub mod linalg;
pub mod matrix;

pub use companion::{Companion, CompanionError, RadicalVector};
pub use diagram::{CanonicalKey, Diagram, DiagramError};
pub use exchange::{BulletMatrix, ExchangeError, ExchangeMatrix, ExtendedMatrix};
pub use matrix::IntMatrix;
pub use linalg::Semidefiniteness;
