//! Covolume of the principal arithmetic subgroup, the normalizer index
//! bound, the lower-bound function B, and index growth in the volume
//! budget.

pub mod bounds;
pub mod euler;
pub mod growth;
pub mod pair;
pub mod prasad;

pub use bounds::{
    b_lower_bound, class_number_bound, comparison_case, index_upper_bound, ComparisonCase,
    IndexBound, LowerBoundReport,
};
pub use euler::{
    euler_product, order_local_factor, recipe_local_factor, truncated_euler_product,
    validate_local_factors, LocalOverride, Recipe,
};
pub use growth::{index_growth_bounds, GrowthBound, GrowthMode};
pub use pair::{ExtField, ExtensionPair, HValue};
pub use prasad::{principal_covolume, VolumeBreakdown};
