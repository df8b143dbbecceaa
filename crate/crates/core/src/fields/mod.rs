//! Quadratic fields and the rational base field: enumeration by fundamental
//! discriminant, class numbers, prime splitting, squarefree-ideal counting,
//! zeta and L values, analytic inequalities, and the field-cache format.

pub mod bounds;
pub mod cache;
pub mod class_number;
pub mod quadratic;
pub mod sieve;
pub mod splitting;
pub mod values;

pub use class_number::{class_number_imaginary, ClassNumberMemo};
pub use quadratic::{
    enumerate_fundamental_discriminants, enumerate_fundamental_range, is_fundamental, BaseField,
    QuadraticField,
};
pub use sieve::{squarefree_ideal_count, squarefree_ideal_count_oracle};
pub use splitting::{kronecker, kronecker_splitting, PlaceDescriptor, PlaceSet, PlaceTag, Splitting};
