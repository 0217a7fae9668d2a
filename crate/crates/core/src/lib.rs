//! Exact computation with double theta polynomials `Θ_λ(c|t)`.

pub mod chevalley;
pub mod cli;
pub mod coeff;
pub mod divdiff;
pub mod error;
pub mod format;
pub mod linalg;
pub mod partition;
pub mod quotient;
pub mod raising;
pub mod ring;
pub mod theta;
pub mod verify;
pub mod weyl;

pub use coeff::Coefficient;
pub use error::{Error, Result};
pub use partition::KStrictPartition;
pub use raising::{IntSeq, PairSet};
pub use ring::{Monomial, Polynomial};
