//! Explicit ambient isotopies between equisingular branches.

pub mod bump;
pub mod chart;
pub mod field;
pub mod plan;
pub mod verify;

pub use bump::{bump_value, BumpSpec};
pub use chart::{lift_point, pushdown_point};
pub use field::{
    graph_match_field, integrate_flow, integrate_with_estimate, multiplicative_field, FieldKind,
    FieldSpec, Frame, Orientation,
};
pub use plan::{apply_plan, apply_plan_with_estimate, build_plan, build_plan_with, IsotopyPlan, PlanOptions, Stage};
pub use verify::{sample_parameters, verify_isotopy, BranchDistance, FlowReport, SampleRecord, VerifyOptions};

#[cfg(test)]
mod tests;
