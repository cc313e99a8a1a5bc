//! Reverse Schwarz, triangle, Bessel and Grüss-type inequalities in inner
//! product spaces, evaluated on concrete finite-dimensional instances.
//!
//! Every inequality is returned as a report carrying the intermediate
//! quantities of its bound chain together with an admissibility certificate
//! for the hypothesis under which the chain is guaranteed. The [`harness`]
//! module samples admissible (or deliberately inadmissible) instances and
//! checks every chain; [`sharpness`] probes the best constants through the
//! limiting constructions.

pub mod bessel;
pub mod conditions;
pub mod error;
pub mod gruss;
pub mod harness;
pub mod integral;
pub mod legacy;
pub mod schwarz;
pub mod sharpness;
pub mod space;
pub mod triangle;

pub use error::{IneqError, Result};
pub use space::{FieldTag, Scalar, Vector};
