//! Random instance generation and property suites for the propositions
//! relating the geometric conditions, plus invariance checks of the
//! combinatorics.

pub mod gen;
pub mod props;
pub mod report;

pub use gen::{gen_ladder, gen_ms, GenParams};
pub use props::{
    matching_oracle_exhaustive, prop_3ms, prop_gedelta, prop_mm_minus, prop_rhoext_geom, prop_splitdisj,
    prop_sumofseg_geom, replay, run_property, suite_invariances, Budget, Instance, Param, Property,
};
pub use report::{PropertyReport, Violation};
