//! Closed-form integrals of hat-function differences against the power
//! kernel t^{-1-2s} on a single piece, where the basis functions are linear.
//! These replace per-piece Gauss exactly where the rule loses accuracy: at
//! and next to the kernel singularity.
//!
//! With t the distance from the singular point x, a hat restricted to one
//! piece contributes φ(y) - φ(x) = ±α t + c, where α is the element slope
//! and c = φ_P(x) - φ(x) vanishes whenever x touches the piece's element.

/// ∫ t^{1-2s} dt over [lo, hi]; finite for all s in (0,1) including lo = 0.
#[inline]
pub(crate) fn power_int_2(lo: f64, hi: f64, two_s: f64) -> f64 {
    let e = 2.0 - two_s;
    (hi.powf(e) - lo.powf(e)) / e
}

/// ∫ t^{-2s} dt over [lo, hi] with lo > 0 (logarithm branch at 2s = 1).
#[inline]
pub(crate) fn power_int_1(lo: f64, hi: f64, two_s: f64) -> f64 {
    if two_s == 1.0 {
        (hi / lo).ln()
    } else {
        let e = 1.0 - two_s;
        (hi.powf(e) - lo.powf(e)) / e
    }
}

/// Finite part of ∫₀^hi t^{-2s} dt: the boundary term at 0 is dropped. For
/// s < 1/2 this is the convergent value; for a piece pair surrounding the
/// singular point with equal slopes the dropped terms cancel exactly, which
/// realizes the principal value.
#[inline]
pub(crate) fn power_int_1_fp(hi: f64, two_s: f64) -> f64 {
    if two_s == 1.0 {
        hi.ln()
    } else {
        hi.powf(1.0 - two_s) / (1.0 - two_s)
    }
}

/// ∫ t^{-1-2s} dt over [lo, hi] with lo > 0.
#[inline]
pub(crate) fn power_int_0(lo: f64, hi: f64, two_s: f64) -> f64 {
    (lo.powf(-two_s) - hi.powf(-two_s)) / two_s
}

/// ∫ (α t + c) t^{-1-2s} dt over [lo, hi]. At lo = 0 the c-term must vanish
/// analytically (continuity at a touching node); the α-term is taken in the
/// finite-part sense, exact as a principal value when the caller pairs the
/// two sides of an interior singular point.
#[inline]
pub(crate) fn single_hat_piece(alpha: f64, c: f64, lo: f64, hi: f64, two_s: f64) -> f64 {
    if lo == 0.0 {
        alpha * power_int_1_fp(hi, two_s)
    } else {
        alpha * power_int_1(lo, hi, two_s) + c * power_int_0(lo, hi, two_s)
    }
}

/// ∫ (α_i t + c_i)(α_j t + c_j) t^{-1-2s} dt over [lo, hi]. At lo = 0 both
/// c's vanish analytically and only the absolutely convergent t^{1-2s}
/// moment survives.
#[inline]
pub(crate) fn pair_hat_piece(
    ai: f64,
    ci: f64,
    aj: f64,
    cj: f64,
    lo: f64,
    hi: f64,
    two_s: f64,
) -> f64 {
    if lo == 0.0 {
        ai * aj * power_int_2(lo, hi, two_s)
    } else {
        ai * aj * power_int_2(lo, hi, two_s)
            + (ai * cj + aj * ci) * power_int_1(lo, hi, two_s)
            + ci * cj * power_int_0(lo, hi, two_s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::gauss_on;

    #[test]
    fn moments_match_quadrature_away_from_zero() {
        for two_s in [0.5, 0.8, 1.0, 1.5, 1.8] {
            let (lo, hi) = (0.3, 1.7);
            let q2 = gauss_on(&|t: f64| t.powf(1.0 - two_s), lo, hi, 16);
            let q1 = gauss_on(&|t: f64| t.powf(-two_s), lo, hi, 16);
            let q0 = gauss_on(&|t: f64| t.powf(-1.0 - two_s), lo, hi, 16);
            assert!((power_int_2(lo, hi, two_s) - q2).abs() <= 1e-9 * q2.abs());
            assert!((power_int_1(lo, hi, two_s) - q1).abs() <= 1e-9 * q1.abs());
            assert!((power_int_0(lo, hi, two_s) - q0).abs() <= 1e-9 * q0.abs());
        }
    }

    #[test]
    fn principal_value_pairs_cancel_for_equal_slopes() {
        // ∫_{-w}^{w} α sign(t) |t|^{-2s} dt = 0 as a principal value: the
        // two finite-part sides must cancel exactly for equal widths.
        for two_s in [0.5, 1.0, 1.5] {
            let right = single_hat_piece(1.0, 0.0, 0.0, 0.25, two_s);
            let left = single_hat_piece(-1.0, 0.0, 0.0, 0.25, two_s);
            assert_eq!(right + left, 0.0);
        }
    }

    #[test]
    fn pair_piece_matches_refined_quadrature() {
        // (0.7 t + 0.2)(-1.3 t + 0.05) t^{-1-2s} on [0.1, 0.9]
        for two_s in [0.5, 1.0, 1.5] {
            let f = |t: f64| (0.7 * t + 0.2) * (-1.3 * t + 0.05) * t.powf(-1.0 - two_s);
            let mut q = 0.0;
            let mut b = 0.9;
            // graded composite toward the lower end
            while b > 0.1 + 1e-12 {
                let a = f64::max(0.1 + (b - 0.1) * 0.5, 0.1);
                q += gauss_on(&f, a, b, 16);
                b = a;
            }
            let closed = pair_hat_piece(0.7, 0.2, -1.3, 0.05, 0.1, 0.9, two_s);
            assert!(
                (closed - q).abs() <= 1e-10 * q.abs().max(1.0),
                "two_s = {two_s}: {closed} vs {q}"
            );
        }
    }
}
