//! Exact and rigorously enclosed computation of covolumes, index bounds,
//! and counting estimates for maximal arithmetic subgroups of absolutely
//! simple groups over number fields.
//!
//! Everything downstream of the `num` layer works with exact integers and
//! rationals where possible, and with midpoint-radius enclosures otherwise.
//! No bare floating point enters any reported quantity.

pub mod covolume;
pub mod error;
pub mod fields;
pub mod lie;
pub mod num;

pub use error::{Error, Result};
