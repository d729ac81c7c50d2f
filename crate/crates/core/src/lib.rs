//! Exact computation of the rank-`r` motivic Donaldson–Thomas partition
//! function of affine 3-space, checked along independent routes: the closed
//! product formula, the framed 3-loop quiver wall-crossing quotient, the
//! plethystic form, and weighted enumeration of `r`-colored plane partitions.
//! The [`asymptotic`] module covers the saddle-point moment formulas and the
//! Gaussian limit constants.
//!
//! All motivic quantities are expressed in `T = L^{1/2}`, so half-integer
//! powers of the Lefschetz motive become integer powers of `T`.

pub mod asymptotic;
pub mod error;
pub mod oracles;
pub mod planepart;
pub mod qseries;
pub mod quiver;
pub mod ring;
pub mod verify;

pub use error::{Error, Result};
pub use planepart::{ColoredPP, PPStats, PlanePartition, TriPoly};
pub use qseries::QSeries;
pub use quiver::{DimVector, FramedRep, Quiver, TorusElement};
pub use ring::{TPoly, TRat};
