//! Rigorous numerics: dyadic floats with directed rounding, midpoint-radius
//! enclosures, certified elementary functions, zeta and L values, and the
//! precision-escalation loop for deciding comparisons.

pub mod ball;
pub mod bigfloat;
pub mod decide;
pub mod elementary;
pub mod zeta;

pub use ball::{Ball, Ctx};
pub use bigfloat::{Bf, Dir};
pub use decide::{decide, decide_floor, decide_le, decide_lt, MAX_DOUBLINGS};
