//! Configuration stage: exact search for the value-maximizing item counts.
//!
//! The equality on total weight is replaced by the pair of inequalities
//! `sum w_min_i x_i <= W` and `sum w_max_i x_i >= W`, i.e. the weight span
//! of the chosen configuration must contain the target. That turns count
//! selection into a two-constraint unbounded knapsack over a finite box,
//! solved here by depth-first branch and bound.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::model::{
    objective_value, validate_instance, weight_span, Configuration, Instance, Tolerance,
};

/// Budgets for the exact search.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchLimits {
    pub max_nodes: u64,
    pub max_count_per_item: u64,
    pub time_budget_ms: Option<u64>,
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self {
            max_nodes: 10_000_000,
            max_count_per_item: 1_000_000,
            time_budget_ms: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage1Status {
    Optimal,
    Infeasible,
    LimitExceeded,
}

/// Outcome of the configuration stage.
#[derive(Debug, Clone, PartialEq)]
pub struct Stage1Result {
    pub status: Stage1Status,
    pub configuration: Option<Configuration>,
    pub objective: Option<f64>,
    pub nodes_explored: u64,
}

/// True iff the configuration's weight span contains the target weight,
/// to within the derived absolute tolerance on both ends.
pub fn stage1_feasible(instance: &Instance, config: &Configuration, tol: Tolerance) -> Result<bool> {
    let span = weight_span(instance, config)?;
    let eps = tol.abs_for(instance.target_weight);
    Ok(span.contains(instance.target_weight, eps))
}

/// Per-item count bounds `U_i = floor(W / w_min_i + eps_rel)`.
///
/// Any feasible configuration satisfies `x_i <= U_i`, so these bounds define
/// the finite search box shared by the solver and the enumeration oracle.
pub fn count_bounds(
    instance: &Instance,
    max_count_per_item: u64,
    tol: Tolerance,
) -> Result<Vec<u64>> {
    let target = instance.target_weight;
    let mut bounds = Vec::with_capacity(instance.len());
    for (index, item) in instance.items.iter().enumerate() {
        let bound = (target / item.w_min + tol.eps_rel).floor() as u64;
        if bound > max_count_per_item {
            return Err(Error::SearchBoxTooLarge {
                index,
                bound,
                limit: max_count_per_item,
            });
        }
        bounds.push(bound);
    }
    Ok(bounds)
}

/// Admissible upper bound on the objective of any feasible completion of a
/// fixed prefix of counts.
///
/// Relaxes integrality, drops the lower inequality, and relaxes the upper
/// inequality to a single continuous knapsack over the free items, whose
/// optimum is `residual_w` times the best value density `v_i / w_min_i`.
pub fn upper_bound(instance: &Instance, prefix: &[u64], residual_w: f64) -> f64 {
    assert!(prefix.len() <= instance.len());
    let fixed_value: f64 = instance
        .items
        .iter()
        .zip(prefix.iter())
        .map(|(item, &x)| item.value * x as f64)
        .sum();
    let best_ratio = instance.items[prefix.len()..]
        .iter()
        .map(|item| item.value / item.w_min)
        .fold(f64::NEG_INFINITY, f64::max);
    if best_ratio == f64::NEG_INFINITY {
        fixed_value
    } else {
        fixed_value + residual_w * best_ratio
    }
}

struct Search<'a> {
    instance: &'a Instance,
    tol: Tolerance,
    /// Item indices in branching order (descending value density).
    order: Vec<usize>,
    bounds: Vec<u64>,
    /// Best value density over positions `d..` of the branching order.
    suffix_ratio: Vec<f64>,
    /// Max-weight capacity `sum w_max_i * U_i` over positions `d..`.
    suffix_max_cap: Vec<f64>,
    eps: f64,
    /// Pruning slack, comfortably above summation-order float noise but far
    /// below any value or weight scale of interest. Pruning with slack only
    /// widens the search; leaves are re-checked canonically.
    slack: f64,
    counts: Vec<u64>,
    best: Option<(f64, Vec<u64>)>,
    nodes: u64,
    started: Instant,
    limit_hit: bool,
}

impl Search<'_> {
    fn out_of_budget(&mut self, limits: &SearchLimits) -> bool {
        if self.nodes >= limits.max_nodes {
            return true;
        }
        if let Some(ms) = limits.time_budget_ms {
            // Checked on the first node and then periodically.
            if self.nodes % 1024 == 1 && self.started.elapsed().as_millis() as u64 >= ms {
                return true;
            }
        }
        false
    }

    fn dfs(
        &mut self,
        depth: usize,
        partial_min: f64,
        partial_max: f64,
        partial_value: f64,
        limits: &SearchLimits,
    ) {
        self.nodes += 1;
        if self.out_of_budget(limits) {
            self.limit_hit = true;
            return;
        }

        let target = self.instance.target_weight;
        if partial_min > target + self.eps + self.slack {
            return;
        }
        if partial_max + self.suffix_max_cap[depth] < target - self.eps - self.slack {
            return;
        }

        if depth == self.instance.len() {
            let config = Configuration::new(self.counts.clone());
            // Canonical feasibility and objective, in original item order, so
            // the accepted set matches the enumeration oracle exactly.
            if stage1_feasible(self.instance, &config, self.tol).expect("lengths match") {
                let value = objective_value(self.instance, &config).expect("lengths match");
                let better = match &self.best {
                    None => true,
                    Some((best_value, best_counts)) => {
                        value > *best_value
                            || (value == *best_value && config.counts < *best_counts)
                    }
                };
                if better {
                    self.best = Some((value, config.counts));
                }
            }
            return;
        }

        if let Some((best_value, _)) = &self.best {
            let residual = (target + self.eps - partial_min).max(0.0);
            let bound = partial_value + residual * self.suffix_ratio[depth];
            if bound < *best_value - self.slack.max(1e-7 * best_value.abs()) {
                return;
            }
        }

        let item_index = self.order[depth];
        let item = self.instance.items[item_index];
        let remaining = target + self.eps + self.slack - partial_min;
        let cap_by_weight = (remaining / item.w_min + self.tol.eps_rel).floor();
        let mut high = self.bounds[item_index];
        if cap_by_weight < high as f64 {
            high = cap_by_weight.max(0.0) as u64;
        }

        for k in (0..=high).rev() {
            self.counts[item_index] = k;
            self.dfs(
                depth + 1,
                partial_min + item.w_min * k as f64,
                partial_max + item.w_max * k as f64,
                partial_value + item.value * k as f64,
                limits,
            );
            if self.limit_hit {
                break;
            }
        }
        self.counts[item_index] = 0;
    }
}

/// Exact solve of the configuration stage by depth-first branch and bound.
///
/// Returns the maximum-value feasible configuration; ties in objective break
/// to the lexicographically smallest counts sequence. Infeasibility is
/// decided by exhausting the count box. When a node or time budget is hit,
/// the best incumbent found so far (if any) is returned as `limit_exceeded`.
pub fn solve_stage1(
    instance: &Instance,
    limits: &SearchLimits,
    tol: Tolerance,
) -> Result<Stage1Result> {
    let report = validate_instance(instance);
    if !report.is_valid() {
        return Err(Error::InvalidInstance(report));
    }
    let bounds = count_bounds(instance, limits.max_count_per_item, tol)?;
    let n = instance.len();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        let ra = instance.items[a].value / instance.items[a].w_min;
        let rb = instance.items[b].value / instance.items[b].w_min;
        rb.total_cmp(&ra).then(a.cmp(&b))
    });

    let mut suffix_ratio = vec![f64::NEG_INFINITY; n + 1];
    let mut suffix_max_cap = vec![0.0; n + 1];
    for d in (0..n).rev() {
        let item = instance.items[order[d]];
        suffix_ratio[d] = suffix_ratio[d + 1].max(item.value / item.w_min);
        suffix_max_cap[d] = suffix_max_cap[d + 1] + item.w_max * bounds[order[d]] as f64;
    }

    let mut search = Search {
        instance,
        tol,
        order,
        bounds,
        suffix_ratio,
        suffix_max_cap,
        eps: tol.abs_for(instance.target_weight),
        slack: 1e-7 * instance.target_weight.abs().max(1.0),
        counts: vec![0; n],
        best: None,
        nodes: 0,
        started: Instant::now(),
        limit_hit: false,
    };
    search.dfs(0, 0.0, 0.0, 0.0, limits);

    let nodes_explored = search.nodes;
    if search.limit_hit {
        let (objective, configuration) = match search.best {
            Some((value, counts)) => (Some(value), Some(Configuration::new(counts))),
            None => (None, None),
        };
        return Ok(Stage1Result {
            status: Stage1Status::LimitExceeded,
            configuration,
            objective,
            nodes_explored,
        });
    }
    match search.best {
        Some((value, counts)) => Ok(Stage1Result {
            status: Stage1Status::Optimal,
            configuration: Some(Configuration::new(counts)),
            objective: Some(value),
            nodes_explored,
        }),
        None => Ok(Stage1Result {
            status: Stage1Status::Infeasible,
            configuration: None,
            objective: None,
            nodes_explored,
        }),
    }
}
