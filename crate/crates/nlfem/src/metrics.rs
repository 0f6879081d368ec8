//! Error norms over Ω (L², discrete energy) and observed convergence rates.

use crate::assembly::{bilinear_apply, NonlocalSystem};
use crate::error::{Error, Result};
use crate::mesh::FEFunction;
use crate::quadrature::gauss_on;
use serde::Serialize;

/// One row of a convergence table.
#[derive(Debug, Clone, Serialize)]
pub struct ErrorRecord {
    /// The swept parameter (h or λ).
    pub param: f64,
    pub l2_error: f64,
    pub energy_error: Option<f64>,
    pub rate_l2: Option<f64>,
    pub rate_energy: Option<f64>,
}

/// ‖u_h - u_ref‖_{L²(Ω)} by composite Gauss over the interior elements.
pub fn l2_error_omega<F>(uh: &FEFunction, u_ref: F, npts: usize) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if npts < 1 || npts > 16 {
        return Err(Error::Domain(format!("npts must be in 1..=16, got {npts}")));
    }
    let mesh = uh.mesh();
    let off = mesh.interior_offset();
    let mut acc = 0.0;
    for e in off..off + mesh.n_interior() {
        let (lo, hi) = (mesh.node(e), mesh.node(e + 1));
        let g = |x: f64| {
            let d = uh.eval(x).unwrap() - u_ref(x);
            d * d
        };
        acc += gauss_on(&g, lo, hi, npts);
    }
    Ok(acc.max(0.0).sqrt())
}

/// Discrete energy norm sqrt(eᵀ A e) induced by the system's truncated
/// kernel at the system's λ.
pub fn energy_error(e: &FEFunction, system: &NonlocalSystem) -> Result<f64> {
    let q = bilinear_apply(system, e, e)?;
    if q < 0.0 {
        return Err(Error::NegativeQuadraticForm(q));
    }
    Ok(q.sqrt())
}

/// Observed rates log(e_{k-1}/e_k) / |log(p_{k-1}/p_k)| for consecutive
/// pairs. The absolute value in the denominator makes converging sequences
/// come out positive for decreasing parameters (h-refinement, e ~ h^rate)
/// and for increasing parameters (λ-growth, e ~ λ^{-rate}) alike.
pub fn observed_rate(errors: &[(f64, f64)]) -> Result<Vec<f64>> {
    if errors.len() < 2 {
        return Err(Error::UndefinedRate(
            "need at least two (param, error) entries".into(),
        ));
    }
    let increasing = errors.windows(2).all(|w| w[1].0 > w[0].0);
    let decreasing = errors.windows(2).all(|w| w[1].0 < w[0].0);
    if !increasing && !decreasing {
        return Err(Error::UndefinedRate("parameters must be strictly monotone".into()));
    }
    errors
        .windows(2)
        .map(|w| {
            let ((p0, e0), (p1, e1)) = (w[0], w[1]);
            if e0 <= 0.0 || e1 <= 0.0 {
                return Err(Error::UndefinedRate(format!(
                    "zero or negative error in pair ({e0}, {e1})"
                )));
            }
            Ok((e0 / e1).ln() / (p0 / p1).ln().abs())
        })
        .collect()
}
