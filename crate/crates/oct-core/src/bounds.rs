//! Closed-form evaluation of the approximation-ratio bound: the quadratic
//! whose larger root bounds the ratio, the worst-case (a, b) parameters at
//! which the three candidate ratios coincide, and the per-vertex dead
//! probability lower bound.
//!
//! Everything is evaluated in f64. The quadratic's discriminant is far from
//! cancellation for every reachable parameter choice (B^2 >> 4AC), so all
//! outputs carry at worst a few ulps (~1e-15 relative) of error, well under
//! the 1e-12 tolerances used by the tests.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BoundError {
    #[error("kappa must be positive, got {0}")]
    NonPositiveKappa(f64),
    #[error("degenerate denominator in worst-case parameters")]
    DegenerateDenominator,
}

/// Dead-density coefficient guaranteed by the derandomized cover
/// construction: each part of the distance-3 independent set keeps at least
/// |T|/400^3 dead triangles' worth of vertices, one third of the packing's
/// vertex count per triangle.
pub const DERANDOMIZED_KAPPA: f64 = 1.0 / (3.0 * 64_000_000.0);

/// Full evaluation of the bound at one parameter point.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct BoundResult {
    pub rho: f64,
    pub a_star: f64,
    pub b_star: f64,
    pub rho1: f64,
    pub rho2: f64,
    pub rho3: f64,
    /// The raw root fell below 2 and was clamped (the analysis assumes
    /// ratios >= 2; algebraically the quadratic is -2 at rho = 2, so this
    /// cannot fire, but the contract keeps the guard).
    pub clamped_at_2: bool,
    /// The maximizer's b exceeds 1 even though the analysis interprets b as
    /// a fraction in [0,1]; reported, not clamped.
    pub b_star_above_1: bool,
}

/// The larger root of the ratio quadratic, plus the clamp flag.
#[derive(Clone, Copy, Debug)]
pub struct RatioBound {
    pub rho: f64,
    pub clamped_at_2: bool,
}

/// Coefficient 3^(-((3/8)d + 5/4)) as a function of the average-degree
/// parameter d.
pub fn kappa_from_degree(d: f64) -> f64 {
    assert!(d >= 0.0, "average degree parameter must be non-negative");
    3f64.powf(-(0.375 * d + 1.25))
}

/// Per-vertex dead probability lower bound (1/3)^((3/8)deg + 1/4), degrees
/// measured inside the packed vertex set. Meaningful for deg >= 2 (a packed
/// vertex has at least its two triangle mates).
pub fn dead_probability_lower_bound(deg: usize) -> f64 {
    3f64.powf(-(0.375 * deg as f64 + 0.25))
}

/// Larger root of (kappa+1) rho^2 - ((2+rho0) kappa + 3) rho + 2 rho0 kappa,
/// clamped below at 2 with a flag. The root never exceeds 3 for rho0 <= 3
/// and equals 3 exactly at rho0 = 3.
pub fn ratio_bound(kappa: f64, rho0: f64) -> Result<RatioBound, BoundError> {
    if kappa <= 0.0 {
        return Err(BoundError::NonPositiveKappa(kappa));
    }
    let a = kappa + 1.0;
    let b = (2.0 + rho0) * kappa + 3.0;
    let c = 2.0 * rho0 * kappa;
    let disc = b * b - 4.0 * a * c;
    debug_assert!(disc >= 0.0, "ratio quadratic has real roots for kappa > 0");
    let raw = (b + disc.sqrt()) / (2.0 * a);
    Ok(RatioBound {
        rho: raw.max(2.0),
        clamped_at_2: raw < 2.0,
    })
}

/// The (a, b) point where the three candidate ratios coincide and the bound
/// is attained: a = (2 rho - rho0) / ((3 - rho0 + rho) + (rho - 2) kappa)
/// and b = 3 kappa a (the b/a ratio that makes rho1 = rho2).
pub fn worst_case_ab(kappa: f64, rho0: f64, rho: f64) -> Result<(f64, f64), BoundError> {
    let denom = (3.0 - rho0 + rho) + (rho - 2.0) * kappa;
    if denom.abs() < 1e-300 {
        return Err(BoundError::DegenerateDenominator);
    }
    let a = (2.0 * rho - rho0) / denom;
    Ok((a, 3.0 * kappa * a))
}

/// The three candidate ratios as functions of the packing fractions a, b:
///   rho1 = 3a + rho0 (1 - a)
///   rho2 = rho0 + (1 - 3 kappa)(3 - rho0) a + (3 - rho0) b
///   rho3 = 2b/3 + rho (2 - a - b/3)
/// Evaluated as written; no range checks on a, b.
pub fn candidate_ratios(a: f64, b: f64, kappa: f64, rho0: f64, rho: f64) -> (f64, f64, f64) {
    let rho1 = 3.0 * a + rho0 * (1.0 - a);
    let rho2 = rho0 + (1.0 - 3.0 * kappa) * (3.0 - rho0) * a + (3.0 - rho0) * b;
    let rho3 = 2.0 * b / 3.0 + rho * (2.0 - a - b / 3.0);
    (rho1, rho2, rho3)
}

/// Computes the bound and the worst-case point in one call. When `rho` is
/// given it replaces the computed root in the (a, b) and candidate-ratio
/// evaluations (the clamp flag then stays false).
pub fn evaluate(kappa: f64, rho0: f64, rho: Option<f64>) -> Result<BoundResult, BoundError> {
    let (rho, clamped_at_2) = match rho {
        Some(r) => (r, false),
        None => {
            let rb = ratio_bound(kappa, rho0)?;
            (rb.rho, rb.clamped_at_2)
        }
    };
    let (a_star, b_star) = worst_case_ab(kappa, rho0, rho)?;
    let (rho1, rho2, rho3) = candidate_ratios(a_star, b_star, kappa, rho0, rho);
    Ok(BoundResult {
        rho,
        a_star,
        b_star,
        rho1,
        rho2,
        rho3,
        clamped_at_2,
        b_star_above_1: b_star > 1.0,
    })
}

/// Residual of the ratio quadratic at rho; 0 at a true root.
pub fn quadratic_residual(kappa: f64, rho0: f64, rho: f64) -> f64 {
    (kappa + 1.0) * rho * rho - ((2.0 + rho0) * kappa + 3.0) * rho + 2.0 * rho0 * kappa
}
