pub mod circle;
pub mod grid;

pub use circle::{conjugacy_to_power_map, degree, CircleLift, ConjugacyResult};
pub use grid::{grid_transitivity_oracle, GridOutcome, GridParams};
