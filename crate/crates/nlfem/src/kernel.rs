//! The fractional kernel γ(x,y) = c_{n,s} / (2 |y-x|^{n+2s}), its
//! ball-truncated variant, and diagnostic checks of the admissibility
//! conditions (nonnegativity, positivity near the center, compact support,
//! two-sided power bound).

use crate::error::{Error, Result};
use crate::specfun::{c_ns, FractionalOrder};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;

/// Immutable description of a truncated fractional kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSpec {
    n: u32,
    s: FractionalOrder,
    lambda: f64,
    c: f64,
}

impl KernelSpec {
    /// Create a spec; the normalization c = c_{n,s} is computed here so the
    /// stored value always matches (n, s).
    pub fn new(n: u32, s: FractionalOrder, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::Domain(format!(
                "interaction radius must be positive, got {lambda}"
            )));
        }
        Ok(Self {
            n,
            s,
            lambda,
            c: c_ns(n, s)?,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn s(&self) -> FractionalOrder {
        self.s
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// The normalization c_{n,s}.
    pub fn normalization(&self) -> f64 {
        self.c
    }

    /// Exponent of the kernel power law, n + 2s.
    pub fn exponent(&self) -> f64 {
        self.n as f64 + 2.0 * self.s.value()
    }
}

/// Untruncated kernel c / (2 |y-x|^{n+2s}); errors at coincident points.
pub fn gamma_full(spec: &KernelSpec, x: f64, y: f64) -> Result<f64> {
    let r = (y - x).abs();
    if r == 0.0 {
        return Err(Error::Singularity(x));
    }
    Ok(spec.c / (2.0 * r.powf(spec.exponent())))
}

/// Truncated kernel: equal to `gamma_full` on the closed ball |y-x| ≤ λ,
/// zero outside.
pub fn gamma_truncated(spec: &KernelSpec, x: f64, y: f64) -> Result<f64> {
    let r = (y - x).abs();
    if r == 0.0 {
        return Err(Error::Singularity(x));
    }
    if r <= spec.lambda {
        gamma_full(spec, x, y)
    } else {
        Ok(0.0)
    }
}

/// Outcome of one admissibility condition.
#[derive(Debug, Clone, Copy)]
pub struct ConditionOutcome {
    pub passed: bool,
    /// Worst-case margin; its meaning depends on the condition (see the
    /// report fields).
    pub worst_margin: f64,
}

/// Sampled verification of the kernel conditions.
#[derive(Debug, Clone)]
pub struct KernelConditionReport {
    /// γ ≥ 0 on B_λ; margin is the minimum sampled value.
    pub nonnegative_on_ball: ConditionOutcome,
    /// γ ≥ γ₀ > 0 on B_{λ/2}; margin is the minimum sampled value.
    pub positive_on_half_ball: ConditionOutcome,
    /// γ = 0 outside B_λ; margin is the maximum sampled |γ|.
    pub vanishes_outside_ball: ConditionOutcome,
    /// γ₁ ≤ γ |y-x|^{n+2s} ≤ γ₂ with γ₁ = γ₂ = c/2; margin is the worst
    /// relative deviation of the ratio from c/2.
    pub power_bound: ConditionOutcome,
    pub samples: usize,
}

impl KernelConditionReport {
    pub fn all_passed(&self) -> bool {
        self.nonnegative_on_ball.passed
            && self.positive_on_half_ball.passed
            && self.vanishes_outside_ball.passed
            && self.power_bound.passed
    }
}

impl fmt::Display for KernelConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let line = |name: &str, o: &ConditionOutcome| {
            format!(
                "  {:<28} {}  (worst margin {:.3e})",
                name,
                if o.passed { "pass" } else { "FAIL" },
                o.worst_margin
            )
        };
        writeln!(f, "kernel conditions over {} sampled pairs:", self.samples)?;
        writeln!(f, "{}", line("nonnegative on B_lambda", &self.nonnegative_on_ball))?;
        writeln!(f, "{}", line("positive on B_lambda/2", &self.positive_on_half_ball))?;
        writeln!(f, "{}", line("zero outside B_lambda", &self.vanishes_outside_ball))?;
        write!(f, "{}", line("two-sided power bound", &self.power_bound))
    }
}

/// Check the spec's own truncated kernel on deterministic pseudo-random
/// point pairs over Ω ∪ Ω_I.
pub fn check_kernel_conditions(spec: &KernelSpec, sample_count: usize) -> KernelConditionReport {
    check_kernel_fn(
        |x, y| gamma_truncated(spec, x, y).unwrap_or(f64::INFINITY),
        spec,
        sample_count,
        0x5eed,
    )
}

/// Check an arbitrary kernel function against the admissibility conditions
/// of the given spec. Sampling is seeded and therefore reproducible.
pub fn check_kernel_fn<F>(
    kernel: F,
    spec: &KernelSpec,
    sample_count: usize,
    seed: u64,
) -> KernelConditionReport
where
    F: Fn(f64, f64) -> f64,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lambda = spec.lambda;
    let half = spec.c / 2.0;
    let lo = -1.0 - lambda;
    let hi = 1.0 + lambda;

    let mut min_on_ball = f64::INFINITY;
    let mut min_on_half = f64::INFINITY;
    let mut max_outside = 0.0f64;
    let mut worst_ratio_dev = 0.0f64;

    let n = sample_count.max(1);
    for k in 0..n {
        let x: f64 = rng.gen_range(lo..hi);
        // Cycle through the three distance regimes so every condition gets
        // its share of samples regardless of λ relative to the domain.
        let r = match k % 3 {
            0 => rng.gen_range(1e-9..=0.5 * lambda),
            1 => rng.gen_range(1e-9..=lambda),
            _ => rng.gen_range(lambda..=2.0 * lambda),
        };
        let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let y = (x + sign * r).clamp(lo, hi);
        let d = (y - x).abs();
        if d == 0.0 {
            continue;
        }
        let g = kernel(x, y);
        if d <= lambda {
            min_on_ball = min_on_ball.min(g);
            let ratio = g * d.powf(spec.exponent());
            worst_ratio_dev = worst_ratio_dev.max((ratio - half).abs() / half);
        }
        if d <= 0.5 * lambda {
            min_on_half = min_on_half.min(g);
        }
        if d > lambda {
            max_outside = max_outside.max(g.abs());
        }
    }

    KernelConditionReport {
        nonnegative_on_ball: ConditionOutcome {
            passed: min_on_ball >= 0.0,
            worst_margin: min_on_ball,
        },
        positive_on_half_ball: ConditionOutcome {
            passed: min_on_half > 0.0,
            worst_margin: min_on_half,
        },
        vanishes_outside_ball: ConditionOutcome {
            passed: max_outside == 0.0,
            worst_margin: max_outside,
        },
        power_bound: ConditionOutcome {
            passed: worst_ratio_dev <= 1e-12,
            worst_margin: worst_ratio_dev,
        },
        samples: n,
    }
}
