//! Independent brute-force ground truth for the solvers.
//!
//! Everything here trades speed for trustworthiness: exhaustive enumeration
//! of the count box, a bisection witness that an in-span target really is
//! attainable, and a pairwise-exchange test for weight optimality. None of
//! it shares a code path with the closed forms it is used to check.

use crate::error::{Error, Result};
use crate::model::{total_weight, Configuration, Instance, Tolerance, WeightVector};
use crate::stage1::{count_bounds, stage1_feasible, Stage1Result, Stage1Status};

const BISECTION_MAX_ITERS: u32 = 200;
const EXCHANGE_DELTA: f64 = 1e-4;

/// Upper limit on count-box points the enumeration oracle will visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationCap {
    pub max_points: u64,
}

impl Default for EnumerationCap {
    fn default() -> Self {
        Self {
            max_points: 1_000_000,
        }
    }
}

fn box_points(bounds: &[u64]) -> u128 {
    bounds
        .iter()
        .fold(1u128, |acc, &b| acc.saturating_mul(b as u128 + 1))
}

/// Advances `counts` to the next point of the box in lexicographic order.
/// Returns false once the box is exhausted.
fn next_point(counts: &mut [u64], bounds: &[u64]) -> bool {
    for i in (0..counts.len()).rev() {
        if counts[i] < bounds[i] {
            counts[i] += 1;
            return true;
        }
        counts[i] = 0;
    }
    false
}

/// Every feasible configuration in the count box, in lexicographic order of
/// the counts sequence.
pub fn enumerate_configurations(
    instance: &Instance,
    cap: EnumerationCap,
    tol: Tolerance,
) -> Result<Vec<Configuration>> {
    let bounds = count_bounds(instance, u64::MAX, tol)?;
    let points = box_points(&bounds);
    if points > cap.max_points as u128 {
        return Err(Error::BoxExceedsCap {
            points,
            cap: cap.max_points,
        });
    }

    let mut feasible = Vec::new();
    let mut counts = vec![0u64; instance.len()];
    loop {
        let config = Configuration::new(counts.clone());
        if stage1_feasible(instance, &config, tol)? {
            feasible.push(config);
        }
        if !next_point(&mut counts, &bounds) {
            break;
        }
    }
    Ok(feasible)
}

/// Ground-truth optimum by exhaustive enumeration of the count box.
///
/// Ties in objective break to the lexicographically smallest counts
/// sequence, by keeping the first strict improvement in enumeration order.
pub fn oracle_optimum(
    instance: &Instance,
    cap: EnumerationCap,
    tol: Tolerance,
) -> Result<Stage1Result> {
    let bounds = count_bounds(instance, u64::MAX, tol)?;
    let points = box_points(&bounds);
    if points > cap.max_points as u128 {
        return Err(Error::BoxExceedsCap {
            points,
            cap: cap.max_points,
        });
    }

    let mut best: Option<(f64, Vec<u64>)> = None;
    let mut counts = vec![0u64; instance.len()];
    let mut visited = 0u64;
    loop {
        visited += 1;
        let config = Configuration::new(counts.clone());
        if stage1_feasible(instance, &config, tol)? {
            let value = crate::model::objective_value(instance, &config)?;
            if best.as_ref().is_none_or(|(b, _)| value > *b) {
                best = Some((value, config.counts));
            }
        }
        if !next_point(&mut counts, &bounds) {
            break;
        }
    }

    Ok(match best {
        Some((value, counts)) => Stage1Result {
            status: Stage1Status::Optimal,
            configuration: Some(Configuration::new(counts)),
            objective: Some(value),
            nodes_explored: visited,
        },
        None => Stage1Result {
            status: Stage1Status::Infeasible,
            configuration: None,
            objective: None,
            nodes_explored: visited,
        },
    })
}

/// Existence witness for a feasible weight vector, by bisection.
///
/// Walks the segment from the all-minimum to the all-maximum weight vector,
/// along which the total weight is continuous and nondecreasing, until the
/// total matches the target. Succeeds exactly when the target lies in the
/// configuration's weight span; deliberately avoids the interpolation
/// closed form so the two can be checked against each other.
pub fn weight_by_bisection(
    instance: &Instance,
    config: &Configuration,
    tol: Tolerance,
) -> Result<WeightVector> {
    let span = crate::model::weight_span(instance, config)?;
    let target = instance.target_weight;
    let eps = tol.abs_for(target);
    if !span.contains(target, eps) {
        return Err(Error::WeightOutsideSpan {
            low: span.low,
            high: span.high,
            target,
        });
    }

    let low = instance.min_weights();
    let high = instance.max_weights();
    let at = |lambda: f64| -> WeightVector {
        WeightVector::new(
            low.weights
                .iter()
                .zip(high.weights.iter())
                .map(|(&a, &b)| a + lambda * (b - a))
                .collect(),
        )
    };

    // The span check above guarantees the endpoint is within tolerance when
    // the target sits at or beyond an end of the span.
    if target <= span.low {
        return Ok(at(0.0));
    }
    if target >= span.high {
        return Ok(at(1.0));
    }

    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    let mut mid = 0.5f64;
    for _ in 0..BISECTION_MAX_ITERS {
        mid = 0.5 * (lo + hi);
        let total = total_weight(config, &at(mid))?;
        if (total - target).abs() <= eps {
            break;
        }
        if total < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(at(mid))
}

/// True iff no pairwise mass transfer of size `1e-4` between supported
/// coordinates improves the linear objective by more than the tolerance.
///
/// Moving mass `delta` from coordinate `i` to coordinate `j` keeps the total
/// weight fixed and changes the objective by `delta * (c_j/x_j - c_i/x_i)`;
/// for this problem class pairwise-exchange stability implies global
/// optimality.
pub fn exchange_optimality_check(
    instance: &Instance,
    config: &Configuration,
    coefficients: &[f64],
    weights: &WeightVector,
    tol: Tolerance,
) -> Result<bool> {
    if coefficients.len() != instance.len() {
        return Err(Error::LengthMismatch {
            expected: instance.len(),
            actual: coefficients.len(),
        });
    }
    let target = instance.target_weight;
    let eps = tol.abs_for(target);

    let total = total_weight(config, weights)?;
    if (total - target).abs() > eps {
        return Err(Error::InfeasibleWeights(format!(
            "total weight {total} \u{2260} {target}"
        )));
    }
    for (k, (item, &w)) in instance
        .items
        .iter()
        .zip(weights.weights.iter())
        .enumerate()
    {
        if w < item.w_min - eps || w > item.w_max + eps {
            return Err(Error::InfeasibleWeights(format!("w[{k}] out of bounds")));
        }
    }

    let included = crate::model::support(config);
    for &i in &included {
        for &j in &included {
            if i == j {
                continue;
            }
            let xi = config.counts[i] as f64;
            let xj = config.counts[j] as f64;
            let wi = weights.weights[i] - EXCHANGE_DELTA / xi;
            let wj = weights.weights[j] + EXCHANGE_DELTA / xj;
            if wi < instance.items[i].w_min || wj > instance.items[j].w_max {
                continue;
            }
            let gain = EXCHANGE_DELTA * (coefficients[j] / xj - coefficients[i] / xi);
            if gain > eps {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
