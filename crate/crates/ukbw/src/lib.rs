//! Exact solver for the strict unbounded knapsack problem with bounded
//! weights: unlimited copies of each item type, a unit weight chosen from a
//! per-type interval, and a total weight that must equal the target exactly.
//!
//! The problem decomposes into two preemptive stages. The configuration
//! stage picks item counts by solving a two-constraint unbounded knapsack
//! exactly ([`stage1`]); the weight stage then selects unit weights for the
//! fixed counts, either by a guaranteed-feasible interpolation or by an
//! exact solver for linear weight objectives ([`stage2`]). Brute-force
//! ground truth lives in [`oracle`], non-uniqueness analysis in
//! [`degeneracy`], and file formats, instance generation, and the CLI in
//! [`io`], [`generator`], and [`cli`].

pub mod cli;
pub mod degeneracy;
mod error;
pub mod generator;
pub mod io;
pub mod model;
pub mod oracle;
pub mod stage1;
pub mod stage2;

pub use error::{Error, Result};
pub use model::{
    check_solution, objective_value, support, total_weight, validate_instance, weight_span,
    CheckReport, Configuration, Instance, ItemType, Solution, SolutionStatus, Tolerance,
    ValidationReport, WeightSpan, WeightVector,
};
pub use stage1::{solve_stage1, SearchLimits, Stage1Result, Stage1Status};
pub use stage2::{solve_two_stage, Stage2Objective};
