//! Resolution of irreducible plane curve branches by point blowups,
//! equisingularity via weighted dual graphs, and explicit ambient isotopies
//! between equisingular branches.

pub mod branch;
pub mod cli;
pub mod config;
pub mod error;
pub mod implicit;
pub mod invariants;
pub mod isotopy;
mod parse;
pub mod poly;
pub mod puiseux;
pub mod resolution;
pub mod series;

pub use branch::{Branch, ComplexPoint};
pub use error::{Error, Result};
pub use implicit::implicitize;
pub use poly::BivarPoly;
pub use puiseux::newton_puiseux;
pub use series::{Rational, TruncatedSeries};
pub use config::Config;
pub use invariants::{equisingular, invariant_set};
pub use isotopy::{apply_plan, build_plan, verify_isotopy, IsotopyPlan};
pub use resolution::{dual_graph, resolve};
