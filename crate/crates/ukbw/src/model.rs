//! Problem and solution data model, validation, and weight-span geometry.
//!
//! An instance asks for item counts `x` and per-item unit weights `w` that
//! maximize total value while the total weight `<x, w>` exactly matches the
//! target `W`. Counts are unbounded nonnegative integers; each unit weight
//! must lie in its item's `[w_min, w_max]` interval.

use std::fmt;

use crate::error::{Error, Result};

/// One item type: a value and a closed interval of allowed unit weights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ItemType {
    pub value: f64,
    pub w_min: f64,
    pub w_max: f64,
}

impl ItemType {
    pub fn new(value: f64, w_min: f64, w_max: f64) -> Self {
        Self { value, w_min, w_max }
    }
}

/// A whole problem statement: item types plus the target total weight.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub items: Vec<ItemType>,
    pub target_weight: f64,
}

impl Instance {
    pub fn new(items: Vec<ItemType>, target_weight: f64) -> Self {
        Self { items, target_weight }
    }

    /// Number of item types.
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// The all-minimum extreme weight vector.
    pub fn min_weights(&self) -> WeightVector {
        WeightVector::new(self.items.iter().map(|it| it.w_min).collect())
    }

    /// The all-maximum extreme weight vector.
    pub fn max_weights(&self) -> WeightVector {
        WeightVector::new(self.items.iter().map(|it| it.w_max).collect())
    }
}

/// Item counts per type: the configuration vector `x`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Configuration {
    pub counts: Vec<u64>,
}

impl Configuration {
    pub fn new(counts: Vec<u64>) -> Self {
        Self { counts }
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.counts.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Per-item unit weights: the weight vector `w`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    pub weights: Vec<f64>,
}

impl WeightVector {
    pub fn new(weights: Vec<f64>) -> Self {
        Self { weights }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// The closed interval of total weights a configuration can attain as its
/// unit weights range over their bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightSpan {
    pub low: f64,
    pub high: f64,
}

impl WeightSpan {
    /// True when `target` lies in the span, to within `eps` on both ends.
    pub fn contains(&self, target: f64, eps: f64) -> bool {
        self.low <= target + eps && self.high >= target - eps
    }

    /// True when the span is a single point, to within `eps`.
    pub fn is_point(&self, eps: f64) -> bool {
        self.high - self.low <= eps
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolutionStatus {
    Optimal,
    Feasible,
    Infeasible,
    LimitExceeded,
}

impl SolutionStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolutionStatus::Optimal => "optimal",
            SolutionStatus::Feasible => "feasible",
            SolutionStatus::Infeasible => "infeasible",
            SolutionStatus::LimitExceeded => "limit_exceeded",
        }
    }
}

impl fmt::Display for SolutionStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A configuration/weight pair with its objective value and solve status.
///
/// Configuration, weights, and objective are absent when the status carries
/// no solution (infeasible, or a limit hit before any incumbent was found).
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub status: SolutionStatus,
    pub configuration: Option<Configuration>,
    pub weights: Option<WeightVector>,
    pub objective: Option<f64>,
}

impl Solution {
    pub fn infeasible() -> Self {
        Self {
            status: SolutionStatus::Infeasible,
            configuration: None,
            weights: None,
            objective: None,
        }
    }
}

/// Relative tolerance for floating-point comparisons.
///
/// All equality comparisons against the target weight use the derived
/// absolute tolerance `eps_rel * max(1, |W|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub eps_rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { eps_rel: 1e-9 }
    }
}

impl Tolerance {
    pub fn new(eps_rel: f64) -> Self {
        Self { eps_rel }
    }

    /// Absolute tolerance scaled to a target value.
    pub fn abs_for(&self, target: f64) -> f64 {
        self.eps_rel * target.abs().max(1.0)
    }
}

/// Result of validating an instance; empty means valid.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Result of verifying a solution against an instance; empty means it passes.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub violations: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every instance invariant and reports each violation found.
pub fn validate_instance(instance: &Instance) -> ValidationReport {
    let mut violations = Vec::new();
    if instance.items.is_empty() {
        violations.push("instance has no items".to_string());
    }
    for (i, item) in instance.items.iter().enumerate() {
        if !item.value.is_finite() {
            violations.push(format!("value not finite at index {i}"));
        } else if item.value <= 0.0 {
            violations.push(format!("value not > 0 at index {i}"));
        }
        if !item.w_min.is_finite() || !item.w_max.is_finite() {
            violations.push(format!("weight bound not finite at index {i}"));
        } else {
            if item.w_min <= 0.0 {
                violations.push(format!("w_min not > 0 at index {i}"));
            }
            if item.w_min > item.w_max {
                violations.push(format!("w_min > w_max at index {i}"));
            }
        }
    }
    if !instance.target_weight.is_finite() {
        violations.push("target_weight not finite".to_string());
    } else if instance.target_weight < 0.0 {
        violations.push("target_weight negative".to_string());
    }
    ValidationReport { violations }
}

fn check_len(expected: usize, actual: usize) -> Result<()> {
    if expected != actual {
        return Err(Error::LengthMismatch { expected, actual });
    }
    Ok(())
}

/// Total weight `<x, w>` of a knapsack with the given counts and weights.
///
/// Summation runs in index order; every total-weight computation in the
/// crate goes through here so solver and oracle agree bit for bit.
pub fn total_weight(config: &Configuration, weights: &WeightVector) -> Result<f64> {
    check_len(config.len(), weights.len())?;
    Ok(config
        .counts
        .iter()
        .zip(weights.weights.iter())
        .map(|(&x, &w)| x as f64 * w)
        .sum())
}

/// Objective value `sum v_i * x_i` of a configuration.
pub fn objective_value(instance: &Instance, config: &Configuration) -> Result<f64> {
    check_len(instance.len(), config.len())?;
    Ok(instance
        .items
        .iter()
        .zip(config.counts.iter())
        .map(|(item, &x)| item.value * x as f64)
        .sum())
}

/// Indices of item types with positive count: the support of `x`.
pub fn support(config: &Configuration) -> Vec<usize> {
    config
        .counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(i, _)| i)
        .collect()
}

/// The attainable total-weight interval for a configuration.
///
/// Endpoints are the totals at the all-minimum and all-maximum weight
/// vectors — term order and arithmetic here match [`total_weight`] exactly
/// — and every value in between is attainable because the total is
/// continuous in the weights.
pub fn weight_span(instance: &Instance, config: &Configuration) -> Result<WeightSpan> {
    check_len(instance.len(), config.len())?;
    let low = instance
        .items
        .iter()
        .zip(config.counts.iter())
        .map(|(item, &x)| x as f64 * item.w_min)
        .sum();
    let high = instance
        .items
        .iter()
        .zip(config.counts.iter())
        .map(|(item, &x)| x as f64 * item.w_max)
        .sum();
    Ok(WeightSpan { low, high })
}

/// Verifies a solution against the instance and reports each violation.
///
/// Checks total weight against the target, weight bounds, and the stated
/// objective. Statuses that carry no solution have nothing to verify and
/// pass vacuously.
pub fn check_solution(instance: &Instance, solution: &Solution, tol: Tolerance) -> Result<CheckReport> {
    let mut violations = Vec::new();
    if !matches!(
        solution.status,
        SolutionStatus::Optimal | SolutionStatus::Feasible
    ) {
        return Ok(CheckReport { violations });
    }

    let config = match &solution.configuration {
        Some(c) => c,
        None => {
            violations.push(format!(
                "status {} but configuration missing",
                solution.status
            ));
            return Ok(CheckReport { violations });
        }
    };
    let weights = match &solution.weights {
        Some(w) => w,
        None => {
            violations.push(format!("status {} but weights missing", solution.status));
            return Ok(CheckReport { violations });
        }
    };
    check_len(instance.len(), config.len())?;
    check_len(instance.len(), weights.len())?;

    let target = instance.target_weight;
    let eps = tol.abs_for(target);

    let total = total_weight(config, weights)?;
    if (total - target).abs() > eps {
        violations.push(format!("total weight {total} \u{2260} {target}"));
    }

    for (i, (item, &w)) in instance.items.iter().zip(weights.weights.iter()).enumerate() {
        if w < item.w_min - eps {
            violations.push(format!("w[{i}] below w_min"));
        }
        if w > item.w_max + eps {
            violations.push(format!("w[{i}] above w_max"));
        }
    }

    match solution.objective {
        Some(stated) => {
            let actual = objective_value(instance, config)?;
            if (stated - actual).abs() > eps {
                violations.push(format!("stated objective {stated} \u{2260} {actual}"));
            }
        }
        None => violations.push("objective missing".to_string()),
    }

    Ok(CheckReport { violations })
}
