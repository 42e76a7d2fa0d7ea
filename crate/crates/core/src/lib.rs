//! Homological invariants of translation-invariant Pauli stabilizer codes.
//!
//! The stabilizer map `σ` of a code over `R = Z_n[Λ]` determines modules
//! `Z`, `S` and the charge modules `Q^i = Ext^{i+1}(P/L, R)`; for mobile codes
//! the charges are realized as Čech cocycles, which yield the braiding
//! pairing and, in two dimensions, the topological spin.

pub mod cech;
pub mod charges;
pub mod code;
pub mod error;
pub mod fpmod;
pub mod gb;
pub mod linalg;
pub mod oracle;
pub mod parse;
pub mod ring;

pub use error::{Error, Result};
pub use ring::{LatticeGroup, LaurentPoly, Matrix, Ring, RingRef};
