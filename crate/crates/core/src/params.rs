//! Validated physical parameters and closed-form scalar invariants.

use crate::error::{Error, Result};

/// Nondimensional fluid parameters: density ratio and depth ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    /// Density ratio rho = rho1/rho2, with 0 <= rho < 1.
    pub rho: f64,
    /// Depth ratio h = h2/h1, positive.
    pub h: f64,
}

/// A point in the (beta, alpha) parameter plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BifurcationPoint {
    /// Interfacial-tension parameter, positive.
    pub beta: f64,
    /// Gravity parameter.
    pub alpha: f64,
}

impl BifurcationPoint {
    pub fn new(beta: f64, alpha: f64) -> Self {
        Self { beta, alpha }
    }
}

/// Scalar invariants shared by the reduction formulas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarInvariants {
    /// beta0 = (rho + h)/3
    pub beta0: f64,
    /// alpha0 = rho + 1/h
    pub alpha0: f64,
    /// gamma3 = (rho + h^3)/45
    pub gamma3: f64,
    /// gamma4 = 2(rho + h^5)/945
    pub gamma4: f64,
    /// gamma5 = beta - beta0, present when a beta was supplied
    pub gamma5: Option<f64>,
    /// A(rho, h) = gamma5^(3/2) (1/h^2 - rho), present with gamma5
    pub big_a: Option<f64>,
}

/// Validate (rho, h) and build a parameter set.
pub fn validate_params(rho: f64, h: f64) -> Result<PhysicalParams> {
    if !(0.0..1.0).contains(&rho) || !rho.is_finite() {
        return Err(Error::RhoOutOfRange(rho));
    }
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::DepthNonpositive(h));
    }
    Ok(PhysicalParams { rho, h })
}

impl PhysicalParams {
    pub fn new(rho: f64, h: f64) -> Result<Self> {
        validate_params(rho, h)
    }

    pub fn beta0(&self) -> f64 {
        (self.rho + self.h) / 3.0
    }

    pub fn alpha0(&self) -> f64 {
        self.rho + 1.0 / self.h
    }

    pub fn gamma3(&self) -> f64 {
        (self.rho + self.h.powi(3)) / 45.0
    }

    pub fn gamma4(&self) -> f64 {
        2.0 * (self.rho + self.h.powi(5)) / 945.0
    }
}

/// The codimension-2 point (beta0, alpha0) = ((rho+h)/3, rho + 1/h).
pub fn codim2_point(p: &PhysicalParams) -> (f64, f64) {
    (p.beta0(), p.alpha0())
}

/// Closed-form invariants; gamma5 and A require a beta above beta0.
pub fn scalar_invariants(p: &PhysicalParams, beta: Option<f64>) -> Result<ScalarInvariants> {
    let beta0 = p.beta0();
    let (gamma5, big_a) = match beta {
        None => (None, None),
        Some(b) => {
            if b <= beta0 {
                return Err(Error::BetaBelowBeta0 { beta: b, beta0 });
            }
            let g5 = b - beta0;
            let a = g5.powf(1.5) * (1.0 / (p.h * p.h) - p.rho);
            (Some(g5), Some(a))
        }
    };
    Ok(ScalarInvariants {
        beta0,
        alpha0: p.alpha0(),
        gamma3: p.gamma3(),
        gamma4: p.gamma4(),
        gamma5,
        big_a,
    })
}
