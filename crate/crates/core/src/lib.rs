//! Generalized cluster variables of affine quivers: the Caldero-Chapoton map,
//! frieze knitting on the transjective component, tube multiplication and
//! triangular bases.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod ccmap;
pub mod error;
pub mod frieze;
pub mod laurent;
pub mod quiver;
pub mod basis;
pub mod rep;
pub mod tube;

pub use error::{Error, Result};
pub use laurent::LaurentPoly;
pub use quiver::{DimVector, Preset, Quiver};
