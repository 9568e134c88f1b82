//! Deterministic instance generation.
//!
//! The PRNG and the draw order are part of the file-format contract:
//! regenerating an instance from the same spec must produce identical bytes
//! on every platform and in every future version, so fixtures stay portable.

use crate::error::{Error, Result};
use crate::model::{validate_instance, Instance, ItemType};
use crate::stage1::count_bounds;
use crate::model::Tolerance;

/// splitmix64: the generator's PRNG, fixed forever.
///
/// One 64-bit mixing step per output (Steele, Lea & Flood's SplitMix
/// finalizer). Floats are drawn as the top 53 bits scaled to `[0, 1)`.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform draw from `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform draw from `[lo, hi]`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + self.next_f64() * (hi - lo)
    }

    /// Uniform draw from `0..bound` for power-of-two bounds.
    pub fn below_pow2(&mut self, bound: u64) -> u64 {
        debug_assert!(bound.is_power_of_two());
        self.next_u64() & (bound - 1)
    }
}

/// How the target weight of a generated instance is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetMode {
    /// Draw a random configuration and place the target inside its weight
    /// span, guaranteeing the instance is feasible.
    SpanHit,
    /// Draw the target uniformly from `[0, 3 * n * max w_max]`; the
    /// instance may be infeasible.
    Random,
}

impl TargetMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            TargetMode::SpanHit => "span_hit",
            TargetMode::Random => "random",
        }
    }
}

/// Parameters of the instance generator.
///
/// `w_max` is drawn as `w_min` times a factor from `span_factor_range`, so
/// the factor range must start at 1 or above to keep the bounds ordered.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSpec {
    pub n: usize,
    pub seed: u64,
    pub value_range: (f64, f64),
    pub wmin_range: (f64, f64),
    pub span_factor_range: (f64, f64),
    pub target_mode: TargetMode,
}

impl Default for GeneratorSpec {
    fn default() -> Self {
        Self {
            n: 2,
            seed: 0,
            value_range: (1.0, 10.0),
            wmin_range: (1.0, 4.0),
            span_factor_range: (1.0, 2.0),
            target_mode: TargetMode::SpanHit,
        }
    }
}

fn check_range(name: &str, (lo, hi): (f64, f64), min_lo: f64) -> Result<()> {
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(Error::InvalidGeneratorSpec(format!("{name} not finite")));
    }
    if lo < min_lo {
        return Err(Error::InvalidGeneratorSpec(format!(
            "{name} must start at {min_lo} or above"
        )));
    }
    if lo > hi {
        return Err(Error::InvalidGeneratorSpec(format!("{name} has lo > hi")));
    }
    Ok(())
}

impl GeneratorSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidGeneratorSpec("n must be positive".to_string()));
        }
        check_range("value_range", self.value_range, f64::MIN_POSITIVE)?;
        check_range("wmin_range", self.wmin_range, f64::MIN_POSITIVE)?;
        check_range("span_factor_range", self.span_factor_range, 1.0)?;
        Ok(())
    }
}

/// Generates the instance determined by the spec.
///
/// Draw order, also fixed forever: per item, value then w_min then span
/// factor; then the target. Span-hit mode draws one count per item from
/// `{0..3}` (redrawing an all-zero configuration), then places the target
/// uniformly in the resulting weight span.
pub fn generate_instance(spec: &GeneratorSpec) -> Result<Instance> {
    spec.validate()?;
    let mut rng = SplitMix64::new(spec.seed);

    let mut items = Vec::with_capacity(spec.n);
    for _ in 0..spec.n {
        let value = rng.uniform(spec.value_range.0, spec.value_range.1);
        let w_min = rng.uniform(spec.wmin_range.0, spec.wmin_range.1);
        let factor = rng.uniform(spec.span_factor_range.0, spec.span_factor_range.1);
        items.push(ItemType::new(value, w_min, w_min * factor));
    }

    let target_weight = match spec.target_mode {
        TargetMode::SpanHit => {
            let counts: Vec<u64> = loop {
                let candidate: Vec<u64> = (0..spec.n).map(|_| rng.below_pow2(4)).collect();
                if candidate.iter().any(|&c| c > 0) {
                    break candidate;
                }
            };
            let low: f64 = items
                .iter()
                .zip(counts.iter())
                .map(|(it, &c)| it.w_min * c as f64)
                .sum();
            let high: f64 = items
                .iter()
                .zip(counts.iter())
                .map(|(it, &c)| it.w_max * c as f64)
                .sum();
            rng.uniform(low, high)
        }
        TargetMode::Random => {
            let max_wmax = items.iter().map(|it| it.w_max).fold(0.0f64, f64::max);
            rng.uniform(0.0, 3.0 * spec.n as f64 * max_wmax)
        }
    };

    let instance = Instance::new(items, target_weight);
    debug_assert!(validate_instance(&instance).is_valid());
    Ok(instance)
}

/// Size of the instance's count box, saturating at `u128::MAX`.
pub fn count_box_points(instance: &Instance, tol: Tolerance) -> u128 {
    match count_bounds(instance, u64::MAX, tol) {
        Ok(bounds) => bounds
            .iter()
            .fold(1u128, |acc, &b| acc.saturating_mul(b as u128 + 1)),
        Err(_) => u128::MAX,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Tolerance;
    use crate::stage1::{solve_stage1, SearchLimits, Stage1Status};

    #[test]
    fn same_spec_gives_identical_instances() {
        let spec = GeneratorSpec {
            n: 2,
            seed: 42,
            ..GeneratorSpec::default()
        };
        let a = generate_instance(&spec).unwrap();
        let b = generate_instance(&spec).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn span_hit_instances_are_always_solvable() {
        for seed in 0..40 {
            let spec = GeneratorSpec {
                n: 1 + (seed as usize % 3),
                seed,
                ..GeneratorSpec::default()
            };
            let inst = generate_instance(&spec).unwrap();
            assert!(validate_instance(&inst).is_valid());
            let result = solve_stage1(&inst, &SearchLimits::default(), Tolerance::default())
                .unwrap();
            assert_eq!(result.status, Stage1Status::Optimal, "seed {seed}");
        }
    }

    #[test]
    fn degenerate_ranges_give_fixed_weight_family() {
        let spec = GeneratorSpec {
            n: 3,
            seed: 7,
            wmin_range: (1.0, 1.0),
            span_factor_range: (1.0, 1.0),
            ..GeneratorSpec::default()
        };
        let inst = generate_instance(&spec).unwrap();
        for item in &inst.items {
            assert_eq!(item.w_min, 1.0);
            assert_eq!(item.w_max, 1.0);
        }
    }

    #[test]
    fn rejects_bad_specs() {
        let bad_specs = [
            GeneratorSpec { n: 0, ..GeneratorSpec::default() },
            GeneratorSpec { span_factor_range: (0.5, 2.0), ..GeneratorSpec::default() },
            GeneratorSpec { value_range: (5.0, 2.0), ..GeneratorSpec::default() },
        ];
        for spec in bad_specs {
            assert!(matches!(
                generate_instance(&spec),
                Err(Error::InvalidGeneratorSpec(_))
            ));
        }
    }

    #[test]
    fn splitmix_reference_values() {
        // First outputs for seed 1234567, from the published splitmix64
        // reference implementation.
        let mut rng = SplitMix64::new(1234567);
        assert_eq!(rng.next_u64(), 6457827717110365317);
        assert_eq!(rng.next_u64(), 3203168211198807973);
    }
}
