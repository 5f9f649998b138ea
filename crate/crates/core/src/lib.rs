//! Exact computational homological algebra over finite-dimensional bound
//! quiver algebras: modules, complexes, resolutions, and certified Ding
//! projective dimension.

pub mod algebra;
pub mod complex;
pub mod ding;
pub mod doc;
pub mod dual;
pub mod error;
pub mod ext;
pub mod fixtures;
pub mod fp;
pub mod oracle;
pub mod rep;
pub mod resolution;
pub mod rng;
pub mod suite;
pub mod tacyclic;
