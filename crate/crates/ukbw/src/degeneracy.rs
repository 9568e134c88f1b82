//! Detection of non-unique optimal weights.
//!
//! When two included item types have opposite weight slack, unit weight can
//! be traded between them at the rate fixed by their count ratio without
//! changing the total weight or the objective, so the optimal weights form
//! an uncountable one-parameter family. This module finds such a pair and
//! materializes the family.

use crate::error::{Error, Result};
use crate::model::{check_solution, support, Instance, Solution, Tolerance, WeightVector};

/// Witness that a solution's weights are not unique.
///
/// Item `i` has upward slack, item `j` has downward slack, both are
/// included in the knapsack. `gamma` is the count ratio `x_j / x_i`;
/// `delta_max` is the largest unit-weight increase on `i` that keeps both
/// coordinates in bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegeneracyCertificate {
    pub i: usize,
    pub j: usize,
    pub gamma: f64,
    pub delta_max: f64,
}

/// Finds the first ordered pair of included item types with opposite weight
/// slack, scanning pairs `(i, j)` lexicographically.
///
/// Returns `None` when every ordered pair has at least one slack at zero
/// (within tolerance); a returned certificate proves uncountably many
/// optimal weight vectors exist.
pub fn find_degeneracy(
    instance: &Instance,
    solution: &Solution,
    tol: Tolerance,
) -> Result<Option<DegeneracyCertificate>> {
    let report = check_solution(instance, solution, tol)?;
    if !report.passed() {
        return Err(Error::InvalidSolution(report));
    }
    let config = match &solution.configuration {
        Some(c) => c,
        None => return Ok(None),
    };
    let weights = match &solution.weights {
        Some(w) => w,
        None => return Ok(None),
    };

    let eps = tol.abs_for(instance.target_weight);
    let included = support(config);
    for &i in &included {
        let up = instance.items[i].w_max - weights.weights[i];
        if up <= eps {
            continue;
        }
        for &j in &included {
            if i == j {
                continue;
            }
            let down = weights.weights[j] - instance.items[j].w_min;
            if down <= eps {
                continue;
            }
            let gamma = config.counts[j] as f64 / config.counts[i] as f64;
            return Ok(Some(DegeneracyCertificate {
                i,
                j,
                gamma,
                delta_max: up.min(gamma * down),
            }));
        }
    }
    Ok(None)
}

/// The shifted member `w + delta * e_i - (delta / gamma) * e_j` of the
/// certificate's optimal family. Total weight and objective are unchanged
/// for any `delta` in `[0, delta_max]`.
///
/// The range check tolerates a few ulps of overshoot (grids computed as
/// `delta_max * k / 10` can land just past the endpoint) and clamps before
/// shifting, so the bounds guarantee is preserved exactly.
pub fn shifted_weights(
    solution: &Solution,
    cert: &DegeneracyCertificate,
    delta: f64,
) -> Result<WeightVector> {
    let slop = 8.0 * f64::EPSILON * cert.delta_max.max(1.0);
    if !delta.is_finite() || delta < -slop || delta > cert.delta_max + slop {
        return Err(Error::DeltaOutOfRange {
            delta,
            delta_max: cert.delta_max,
        });
    }
    let delta = delta.clamp(0.0, cert.delta_max);
    let weights = solution
        .weights
        .as_ref()
        .ok_or(Error::InfeasibleWeights("solution has no weights".to_string()))?;
    let mut shifted = weights.weights.clone();
    shifted[cert.i] += delta;
    shifted[cert.j] -= delta / cert.gamma;
    Ok(WeightVector::new(shifted))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{total_weight, Configuration, SolutionStatus};
    use crate::testutil::{instance_a, instance_b};
    use proptest::prelude::*;

    fn solution(counts: Vec<u64>, weights: Vec<f64>, objective: f64) -> Solution {
        Solution {
            status: SolutionStatus::Feasible,
            configuration: Some(Configuration::new(counts)),
            weights: Some(WeightVector::new(weights)),
            objective: Some(objective),
        }
    }

    #[test]
    fn finds_certificate_at_interior_weights() {
        let sol = solution(vec![1, 1], vec![2.0, 2.0], 2.0);
        let cert = find_degeneracy(&instance_b(), &sol, Tolerance::default())
            .unwrap()
            .unwrap();
        assert_eq!((cert.i, cert.j), (0, 1));
        assert_eq!(cert.gamma, 1.0);
        assert_eq!(cert.delta_max, 1.0);
    }

    #[test]
    fn singleton_support_has_no_certificate() {
        let sol = solution(vec![7, 0], vec![1.0, 2.0], 21.0);
        assert!(find_degeneracy(&instance_a(), &sol, Tolerance::default())
            .unwrap()
            .is_none());
    }

    #[test]
    fn endpoint_weights_can_still_be_degenerate() {
        // w[0] at max has no upward slack and w[1] at min has no downward
        // slack, but the reverse pair (1, 0) qualifies.
        let sol = solution(vec![1, 1], vec![3.0, 1.0], 2.0);
        let cert = find_degeneracy(&instance_b(), &sol, Tolerance::default())
            .unwrap()
            .unwrap();
        assert_eq!((cert.i, cert.j), (1, 0));
        assert_eq!(cert.gamma, 1.0);
        assert_eq!(cert.delta_max, 2.0);
    }

    #[test]
    fn rejects_unverified_solution() {
        let sol = solution(vec![1, 1], vec![1.0, 1.0], 2.0);
        assert!(matches!(
            find_degeneracy(&instance_b(), &sol, Tolerance::default()),
            Err(Error::InvalidSolution(_))
        ));
    }

    #[test]
    fn shift_examples() {
        let sol = solution(vec![1, 1], vec![2.0, 2.0], 2.0);
        let cert = DegeneracyCertificate { i: 0, j: 1, gamma: 1.0, delta_max: 1.0 };

        let w = shifted_weights(&sol, &cert, 1.0).unwrap();
        assert_eq!(w.weights, vec![3.0, 1.0]);
        let total = total_weight(&Configuration::new(vec![1, 1]), &w).unwrap();
        assert_eq!(total, 4.0);

        let w = shifted_weights(&sol, &cert, 0.0).unwrap();
        assert_eq!(w.weights, vec![2.0, 2.0]);

        let w = shifted_weights(&sol, &cert, 0.25).unwrap();
        assert_eq!(w.weights, vec![2.25, 1.75]);
    }

    #[test]
    fn shift_rejects_delta_out_of_range() {
        let sol = solution(vec![1, 1], vec![2.0, 2.0], 2.0);
        let cert = DegeneracyCertificate { i: 0, j: 1, gamma: 1.0, delta_max: 1.0 };
        assert!(matches!(
            shifted_weights(&sol, &cert, 1.5),
            Err(Error::DeltaOutOfRange { .. })
        ));
        assert!(matches!(
            shifted_weights(&sol, &cert, -0.1),
            Err(Error::DeltaOutOfRange { .. })
        ));
    }

    #[test]
    fn family_conserves_weight_and_bounds() {
        let b = instance_b();
        let config = Configuration::new(vec![1, 1]);
        let sol = solution(vec![1, 1], vec![2.0, 2.0], 2.0);
        let cert = find_degeneracy(&b, &sol, Tolerance::default()).unwrap().unwrap();
        let base = total_weight(&config, sol.weights.as_ref().unwrap()).unwrap();
        for k in 0..=10 {
            let delta = cert.delta_max * (k as f64 / 10.0);
            let w = shifted_weights(&sol, &cert, delta).unwrap();
            let total = total_weight(&config, &w).unwrap();
            assert!((total - base).abs() <= 1e-9 * base.abs().max(1.0));
            for (idx, item) in b.items.iter().enumerate() {
                assert!(w.weights[idx] >= item.w_min - 1e-12);
                assert!(w.weights[idx] <= item.w_max + 1e-12);
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        // Either a certificate's shift family stays feasible across its
        // whole range, or no ordered pair has both slacks open.
        #[test]
        fn certificate_search_is_complete(inst in crate::testutil::arb_instance(3, 60)) {
            let tol = Tolerance::default();
            let sol = crate::stage2::solve_two_stage(
                &inst,
                &crate::stage2::Stage2Objective::Constant,
                &crate::stage1::SearchLimits::default(),
                tol,
            ).unwrap();
            if sol.status != SolutionStatus::Optimal {
                return Ok(());
            }
            let eps = tol.abs_for(inst.target_weight);
            let config = sol.configuration.as_ref().unwrap();
            let weights = sol.weights.as_ref().unwrap();
            match find_degeneracy(&inst, &sol, tol).unwrap() {
                Some(cert) => {
                    let base = total_weight(config, weights).unwrap();
                    for k in 0..=10 {
                        let delta = cert.delta_max * (k as f64 / 10.0);
                        let w = shifted_weights(&sol, &cert, delta).unwrap();
                        let total = total_weight(config, &w).unwrap();
                        prop_assert!((total - base).abs() <= eps);
                        for (idx, item) in inst.items.iter().enumerate() {
                            prop_assert!(w.weights[idx] >= item.w_min - eps);
                            prop_assert!(w.weights[idx] <= item.w_max + eps);
                        }
                    }
                }
                None => {
                    let included = support(config);
                    for &i in &included {
                        for &j in &included {
                            if i == j {
                                continue;
                            }
                            let up = inst.items[i].w_max - weights.weights[i];
                            let down = weights.weights[j] - inst.items[j].w_min;
                            prop_assert!(
                                up.min(down) <= eps,
                                "pair ({i}, {j}) has open slacks but no certificate",
                            );
                        }
                    }
                }
            }
        }
    }
}
