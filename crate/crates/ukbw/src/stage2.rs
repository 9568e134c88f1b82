//! Weight-selection stage, run after the configuration is fixed.
//!
//! The configuration stage is preemptive: nothing here ever changes the
//! counts. For a constant objective the interpolation closed form gives a
//! guaranteed-feasible weight vector directly; for a linear objective the
//! remaining problem is a continuous knapsack with an equality constraint,
//! solved exactly by a greedy fill.

use crate::error::{Error, Result};
use crate::model::{
    support, validate_instance, weight_span, Configuration, Instance, Solution, SolutionStatus,
    Tolerance, WeightVector,
};
use crate::stage1::{solve_stage1, stage1_feasible, SearchLimits, Stage1Status};

/// Objective for the weight-selection stage.
///
/// Constant reduces weight selection to feasibility; linear maximizes
/// `sum c_i * w_i`. These are the supported objective families.
#[derive(Debug, Clone, PartialEq)]
pub enum Stage2Objective {
    Constant,
    Linear { coefficients: Vec<f64> },
}

/// Relative position of the target weight inside a configuration's span,
/// clamped to `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmaValue {
    pub value: f64,
}

/// Relative position `(W - span.low) / (span.high - span.low)` of the
/// target inside the configuration's weight span.
///
/// A point span yields 0 when the target equals the span point and an error
/// otherwise.
pub fn sigma(instance: &Instance, config: &Configuration, tol: Tolerance) -> Result<SigmaValue> {
    let span = weight_span(instance, config)?;
    let target = instance.target_weight;
    let eps = tol.abs_for(target);
    if span.is_point(eps) {
        if (target - span.low).abs() <= eps {
            return Ok(SigmaValue { value: 0.0 });
        }
        return Err(Error::DegenerateSpan {
            span_point: span.low,
            target,
        });
    }
    if !span.contains(target, eps) {
        return Err(Error::InfeasibleConfiguration);
    }
    let raw = (target - span.low) / (span.high - span.low);
    Ok(SigmaValue {
        value: raw.clamp(0.0, 1.0),
    })
}

/// The guaranteed-feasible weight vector `w_i = w_min_i + sigma * (w_max_i -
/// w_min_i)`, applied to every coordinate including unused item types.
pub fn default_weights(
    instance: &Instance,
    config: &Configuration,
    tol: Tolerance,
) -> Result<WeightVector> {
    let s = sigma(instance, config, tol)?.value;
    Ok(WeightVector::new(
        instance
            .items
            .iter()
            .map(|item| item.w_min + s * (item.w_max - item.w_min))
            .collect(),
    ))
}

/// Exact maximizer of `sum c_i * w_i` over in-bounds weight vectors whose
/// total weight equals the target for the given configuration.
///
/// Unsupported coordinates are free of the equality constraint and go to
/// whichever bound the coefficient favors. Supported coordinates start at
/// their minimum; the remaining weight is poured into them in descending
/// order of `c_i / x_i` (ties to the lower index), each up to its cap, so at
/// most one ends strictly between its bounds. An all-zero coefficient
/// vector falls back to the interpolation closed form.
pub fn solve_stage2_linear(
    instance: &Instance,
    config: &Configuration,
    coefficients: &[f64],
    tol: Tolerance,
) -> Result<WeightVector> {
    if coefficients.len() != instance.len() {
        return Err(Error::LengthMismatch {
            expected: instance.len(),
            actual: coefficients.len(),
        });
    }
    if !stage1_feasible(instance, config, tol)? {
        return Err(Error::InfeasibleConfiguration);
    }
    if coefficients.iter().all(|&c| c == 0.0) {
        return default_weights(instance, config, tol);
    }

    let mut weights: Vec<f64> = instance
        .items
        .iter()
        .enumerate()
        .map(|(i, item)| {
            if config.counts[i] > 0 || coefficients[i] <= 0.0 {
                item.w_min
            } else {
                item.w_max
            }
        })
        .collect();

    let included = support(config);
    let mut slack = instance.target_weight
        - included
            .iter()
            .map(|&i| instance.items[i].w_min * config.counts[i] as f64)
            .sum::<f64>();
    if slack < 0.0 {
        slack = 0.0;
    }

    let mut order = included;
    order.sort_by(|&a, &b| {
        let ra = coefficients[a] / config.counts[a] as f64;
        let rb = coefficients[b] / config.counts[b] as f64;
        rb.total_cmp(&ra).then(a.cmp(&b))
    });

    for &i in &order {
        if slack <= 0.0 {
            break;
        }
        let item = instance.items[i];
        let count = config.counts[i] as f64;
        let capacity = (item.w_max - item.w_min) * count;
        if slack >= capacity {
            weights[i] = item.w_max;
            slack -= capacity;
        } else {
            weights[i] = (item.w_min + slack / count).min(item.w_max);
            slack = 0.0;
        }
    }

    Ok(WeightVector::new(weights))
}

/// Runs both stages: configuration selection first, then weight selection
/// for the chosen configuration.
///
/// The configuration stage's objective is preemptive, so the returned
/// counts and objective always mirror its result; the weight objective only
/// picks among the weight vectors that configuration admits.
pub fn solve_two_stage(
    instance: &Instance,
    objective: &Stage2Objective,
    limits: &SearchLimits,
    tol: Tolerance,
) -> Result<Solution> {
    let report = validate_instance(instance);
    if !report.is_valid() {
        return Err(Error::InvalidInstance(report));
    }
    if let Stage2Objective::Linear { coefficients } = objective {
        if coefficients.len() != instance.len() {
            return Err(Error::LengthMismatch {
                expected: instance.len(),
                actual: coefficients.len(),
            });
        }
    }

    let stage1 = solve_stage1(instance, limits, tol)?;
    let status = match stage1.status {
        Stage1Status::Optimal => SolutionStatus::Optimal,
        Stage1Status::Infeasible => SolutionStatus::Infeasible,
        Stage1Status::LimitExceeded => SolutionStatus::LimitExceeded,
    };
    if stage1.status != Stage1Status::Optimal {
        return Ok(Solution {
            status,
            configuration: stage1.configuration,
            weights: None,
            objective: stage1.objective,
        });
    }

    let config = stage1.configuration.expect("optimal result has a configuration");
    let weights = match objective {
        Stage2Objective::Constant => default_weights(instance, &config, tol)?,
        Stage2Objective::Linear { coefficients } => {
            solve_stage2_linear(instance, &config, coefficients, tol)?
        }
    };
    Ok(Solution {
        status,
        configuration: Some(config),
        weights: Some(weights),
        objective: stage1.objective,
    })
}
