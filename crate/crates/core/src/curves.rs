//! Parametrized bifurcation curves C1, C2, C3 in the (beta, alpha)-plane,
//! sampling, small-k Taylor checks and double-root refinement.
//!
//! C1 carries a double real root at ±k0, C2 a double imaginary root at
//! ±i k0, and C3 (alpha = alpha0, beta > beta0) a double root at 0.

use crate::dispersion::{axis_fn, Axis, DispersionContext};
use crate::error::{Error, Result};
use crate::numerics::{alpha_gap_kernel, curve_b_hyp, curve_b_trig, tcot_c};
use crate::parallel::maybe_par_map;
use crate::params::{BifurcationPoint, PhysicalParams};
use num_complex::Complex64;

/// Curve selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveId {
    C1,
    C2,
    C3,
}

impl CurveId {
    pub fn as_str(&self) -> &'static str {
        match self {
            CurveId::C1 => "C1",
            CurveId::C2 => "C2",
            CurveId::C3 => "C3",
        }
    }
}

/// Which parameter the double-root refinement is allowed to move.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FreeParam {
    Alpha,
    Beta,
}

/// One point on a bifurcation curve with its double-root residuals.
#[derive(Debug, Clone, Copy)]
pub struct CurvePoint {
    pub id: CurveId,
    /// Wavenumber k0 for C1/C2, beta for C3.
    pub param: f64,
    pub point: BifurcationPoint,
    /// (|F|, |F'|) at the designated double root.
    pub residuals: (f64, f64),
}

/// beta-hat(k0) on C1 (the trailing stray factor of the printed formula is
/// dropped; the double-root residuals and the Taylor coefficient 2*gamma3
/// both hold only for this version).
pub fn beta_hat(k0: f64, p: &PhysicalParams) -> f64 {
    p.rho * curve_b_trig(k0) + p.h * curve_b_trig(p.h * k0)
}

/// alpha-hat(k0) on C1.
pub fn alpha_hat(k0: f64, p: &PhysicalParams) -> f64 {
    let tc = |w: f64| tcot_c(Complex64::new(w, 0.0)).re;
    beta_hat(k0, p) * k0 * k0 + p.rho * tc(k0) + tc(p.h * k0) / p.h
}

/// beta*(k0) on C2.
pub fn beta_star(k0: f64, p: &PhysicalParams) -> f64 {
    p.rho * curve_b_hyp(k0) + p.h * curve_b_hyp(p.h * k0)
}

/// alpha*(k0) on C2.
pub fn alpha_star(k0: f64, p: &PhysicalParams) -> f64 {
    p.alpha0() + alpha_star_gap(k0, p)
}

/// alpha*(k0) - alpha0, evaluated without cancellation. Behaves like
/// gamma3 * k0^4 for small k0.
pub fn alpha_star_gap(k0: f64, p: &PhysicalParams) -> f64 {
    p.rho * alpha_gap_kernel(k0) + alpha_gap_kernel(p.h * k0) / p.h
}

fn double_root_residuals(id: CurveId, k0: f64, pt: BifurcationPoint, p: &PhysicalParams) -> (f64, f64) {
    let ctx = DispersionContext::new(*p, pt);
    match id {
        CurveId::C1 => {
            let (f, d, _) = axis_fn(Axis::Real, k0, &ctx);
            (f.abs(), d.abs())
        }
        CurveId::C2 => {
            let (f, d, _) = axis_fn(Axis::Imaginary, k0, &ctx);
            (f.abs(), d.abs())
        }
        CurveId::C3 => {
            // F is even, so F'(0) = 0 identically
            let (f, _, _) = axis_fn(Axis::Real, 0.0, &ctx);
            (f.abs(), 0.0)
        }
    }
}

/// Evaluate a curve at one parameter value (k0 for C1/C2, beta for C3).
pub fn curve_point(id: CurveId, param: f64, p: &PhysicalParams) -> Result<CurvePoint> {
    let pt = match id {
        CurveId::C1 => {
            let window = std::f64::consts::PI.min(std::f64::consts::PI / p.h);
            if param <= 0.0 || param >= window {
                return Err(Error::OutOfDomain("C1 needs k0 in (0, min(pi, pi/h))"));
            }
            BifurcationPoint::new(beta_hat(param, p), alpha_hat(param, p))
        }
        CurveId::C2 => {
            if param <= 0.0 {
                return Err(Error::OutOfDomain("C2 needs k0 > 0"));
            }
            BifurcationPoint::new(beta_star(param, p), alpha_star(param, p))
        }
        CurveId::C3 => {
            if param <= p.beta0() {
                return Err(Error::BetaBelowBeta0 {
                    beta: param,
                    beta0: p.beta0(),
                });
            }
            BifurcationPoint::new(param, p.alpha0())
        }
    };
    let k0 = if id == CurveId::C3 { 0.0 } else { param };
    let residuals = double_root_residuals(id, k0, pt, p);
    let cp = CurvePoint {
        id,
        param,
        point: pt,
        residuals,
    };
    if residuals.0 > 1e-9 || residuals.1 > 1e-9 {
        return Err(Error::ResidualTooLarge(residuals.0, residuals.1));
    }
    Ok(cp)
}

/// Polish a near-curve point with a 2D Newton iteration on (F, F') in the
/// unknowns (k0, alpha) or (k0, beta); the other parameter stays fixed.
pub fn refine_double_root(
    seed: &CurvePoint,
    ctx_axis: Axis,
    free: FreeParam,
    p: &PhysicalParams,
) -> Result<CurvePoint> {
    if seed.id == CurveId::C3 {
        // the double root sits at 0 for alpha = alpha0 exactly
        let pt = BifurcationPoint::new(seed.point.beta, p.alpha0());
        let residuals = double_root_residuals(CurveId::C3, 0.0, pt, p);
        return Ok(CurvePoint { point: pt, residuals, ..*seed });
    }
    let (r0, r1) = seed.residuals;
    if r0 > 1e-2 || r1 > 1e-2 {
        return Err(Error::NoConvergence("seed outside the Newton basin"));
    }
    let mut k = seed.param;
    let mut pt = seed.point;
    for _ in 0..50 {
        let ctx = DispersionContext::new(*p, pt);
        let (f, d1, d2) = axis_fn(ctx_axis, k, &ctx);
        if f.abs() < 1e-12 && d1.abs() < 1e-12 {
            let residuals = (f.abs(), d1.abs());
            return Ok(CurvePoint {
                id: seed.id,
                param: k,
                point: pt,
                residuals,
            });
        }
        // Jacobian of (F, F') in (k, free). dF/dalpha = -1; dF/dbeta = k^2
        // on the real axis, -k^2 on the imaginary axis; F' columns are the
        // k-derivatives of those.
        let (dfa, dda) = match free {
            FreeParam::Alpha => (-1.0, 0.0),
            FreeParam::Beta => match ctx_axis {
                Axis::Real => (k * k, 2.0 * k),
                Axis::Imaginary => (-k * k, -2.0 * k),
            },
        };
        let det = d1 * dda - d2 * dfa;
        if det.abs() < 1e-14 {
            return Err(Error::NoConvergence("singular Newton system"));
        }
        let dk = (-f * dda + d1 * dfa) / det;
        let dq = (-d1 * d1 + d2 * f) / det;
        k += dk;
        match free {
            FreeParam::Alpha => pt.alpha += dq,
            FreeParam::Beta => pt.beta += dq,
        }
        if !k.is_finite() || k <= 0.0 {
            return Err(Error::NoConvergence("refinement left the domain"));
        }
    }
    Err(Error::NoConvergence("double-root refinement"))
}

/// Sample a curve at n uniformly spaced parameters, each refined.
pub fn sample_curve(
    id: CurveId,
    p_min: f64,
    p_max: f64,
    n: usize,
    p: &PhysicalParams,
) -> Result<Vec<CurvePoint>> {
    if n < 2 {
        return Err(Error::OutOfDomain("sample_curve needs n >= 2"));
    }
    let params: Vec<f64> = (0..n)
        .map(|i| p_min + (p_max - p_min) * (i as f64) / ((n - 1) as f64))
        .collect();
    let p_copy = *p;
    let axis = if id == CurveId::C1 { Axis::Real } else { Axis::Imaginary };
    let results = maybe_par_map(params, move |t| {
        curve_point(id, t, &p_copy)
            .and_then(|cp| refine_double_root(&cp, axis, FreeParam::Alpha, &p_copy))
    });
    results.into_iter().collect()
}

/// Fit the leading Taylor coefficients of the C1 parametrization:
/// (beta-hat(k) - beta0)/k^2 -> 2*gamma3 and (alpha-hat(k) - alpha0)/k^4
/// -> gamma3 as k -> 0. Returns (fitted beta coefficient, fitted alpha
/// coefficient).
pub fn taylor_check(p: &PhysicalParams) -> (f64, f64) {
    let beta0 = p.beta0();
    let alpha0 = p.alpha0();

    let ks_beta: Vec<f64> = (0..7).map(|j| 1e-3 * 2f64.powi(j)).collect();
    let yb: Vec<f64> = ks_beta
        .iter()
        .map(|&k| (beta_hat(k, p) - beta0) / (k * k))
        .collect();
    let xb: Vec<f64> = ks_beta.iter().map(|&k| k * k).collect();
    let cb = crate::numerics::polyfit(&xb, &yb, 2);

    // alpha-hat - alpha0 is O(k^4); fit on larger k to stay above roundoff
    let ks_alpha: Vec<f64> = (0..5).map(|j| 1e-2 * 2f64.powi(j)).collect();
    let ya: Vec<f64> = ks_alpha
        .iter()
        .map(|&k| (alpha_hat(k, p) - alpha0) / (k * k * k * k))
        .collect();
    let xa: Vec<f64> = ks_alpha.iter().map(|&k| k * k).collect();
    let ca = crate::numerics::polyfit(&xa, &ya, 2);

    (cb[0], ca[0])
}
