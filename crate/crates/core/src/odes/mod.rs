//! Reduced Hamiltonian ODE systems for the three resonances, a fixed-step
//! integrator, explicit 0^2 orbits, a reversible homoclinic solver for the
//! fourth-order equations, and physical wave-profile reconstruction.

mod homoclinic;
mod profiles;

pub use homoclinic::{
    solve_homoclinic, transversality_l, HomoclinicOrbit, SignTag, SolveOptions, SymmetryTag,
};
pub use profiles::{physical_profile, ProfileCase, ProfileParams};

use crate::error::{Error, Result};
use crate::params::PhysicalParams;

/// Which truncated reduced system is being integrated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReducedKind {
    R11Quad,
    R11Cubic,
    O2,
    O2Critical,
    QuarticGeneric,
}

/// A truncated reduced system with its precomputed coefficients.
#[derive(Debug, Clone, Copy)]
pub struct ReducedSystem {
    pub kind: ReducedKind,
    pub delta: f64,
    pub kappa: f64,
    /// Cubic Hamiltonian weight of the P1^3 (or Q^3) term.
    cubic: f64,
    /// Quartic Hamiltonian weight of the P1^4 (or Q^4) term.
    quartic: f64,
    /// Quartic-equation coefficients (P, q, c) for QuarticGeneric.
    pub p_coeff: f64,
    pub q_coeff: f64,
    pub c_coeff: f64,
}

impl ReducedSystem {
    /// Real 1:1 resonance, quadratic leading nonlinearity.
    pub fn r11_quad(p: &PhysicalParams, delta: f64) -> Self {
        let g3 = p.gamma3();
        let m = p.rho - 1.0 / (p.h * p.h);
        ReducedSystem {
            kind: ReducedKind::R11Quad,
            delta,
            kappa: 0.0,
            cubic: m / (2.0 * g3.powf(1.5)),
            quartic: 0.0,
            p_coeff: 0.0,
            q_coeff: 0.0,
            c_coeff: 0.0,
        }
    }

    /// Real 1:1 resonance at the critical ratio, cubic leading term with
    /// the scaled quadratic weight kappa.
    pub fn r11_cubic(p: &PhysicalParams, delta: f64, kappa: f64) -> Self {
        let g3 = p.gamma3();
        let quartic =
            (p.rho + 1.0 / p.h.powi(3) + 2.0 * (p.rho - 1.0).powi(2) / (225.0 * g3)) / (g3 * g3);
        ReducedSystem {
            kind: ReducedKind::R11Cubic,
            delta,
            kappa,
            cubic: kappa / (2.0 * g3.powf(1.5)),
            quartic,
            p_coeff: 0.0,
            q_coeff: 0.0,
            c_coeff: 0.0,
        }
    }

    /// 0^2 resonance away from the critical ratio.
    pub fn o2(p: &PhysicalParams, beta: f64) -> Result<Self> {
        let beta0 = p.beta0();
        if beta <= beta0 {
            return Err(Error::BetaBelowBeta0 { beta, beta0 });
        }
        let g5 = beta - beta0;
        let big_a = g5.powf(1.5) * (1.0 / (p.h * p.h) - p.rho);
        Ok(ReducedSystem {
            kind: ReducedKind::O2,
            delta: 0.0,
            kappa: 0.0,
            cubic: -big_a / 2.0,
            quartic: 0.0,
            p_coeff: 0.0,
            q_coeff: 0.0,
            c_coeff: 0.0,
        })
    }

    /// 0^2 resonance near the critical ratio with scaled quadratic weight
    /// kappa.
    pub fn o2_critical(p: &PhysicalParams, beta: f64, kappa: f64) -> Result<Self> {
        let beta0 = p.beta0();
        if beta <= beta0 {
            return Err(Error::BetaBelowBeta0 { beta, beta0 });
        }
        let g5 = beta - beta0;
        Ok(ReducedSystem {
            kind: ReducedKind::O2Critical,
            delta: 0.0,
            kappa,
            cubic: -kappa / (2.0 * g5),
            quartic: (p.rho + 1.0 / p.h.powi(3)) / (g5 * g5),
            p_coeff: 0.0,
            q_coeff: 0.0,
            c_coeff: 0.0,
        })
    }

    /// The generic fourth-order equation u'''' + P u'' + u - q u^2 - c u^3
    /// in (u, u', u'', u''') coordinates.
    pub fn quartic(p_coeff: f64, q_coeff: f64, c_coeff: f64) -> Self {
        ReducedSystem {
            kind: ReducedKind::QuarticGeneric,
            delta: 0.0,
            kappa: 0.0,
            cubic: 0.0,
            quartic: 0.0,
            p_coeff,
            q_coeff,
            c_coeff,
        }
    }

    pub fn dim(&self) -> usize {
        match self.kind {
            ReducedKind::O2 | ReducedKind::O2Critical => 2,
            _ => 4,
        }
    }

    /// The reverser of the truncated system.
    pub fn reverse(&self, state: &[f64]) -> Vec<f64> {
        match self.kind {
            ReducedKind::R11Quad | ReducedKind::R11Cubic => {
                vec![-state[0], state[1], -state[2], state[3]]
            }
            ReducedKind::O2 | ReducedKind::O2Critical => vec![state[0], -state[1]],
            ReducedKind::QuarticGeneric => vec![state[0], -state[1], state[2], -state[3]],
        }
    }
}

fn check_dim(sys: &ReducedSystem, state: &[f64]) -> Result<()> {
    if state.len() != sys.dim() {
        return Err(Error::DimensionMismatch {
            got: state.len(),
            want: sys.dim(),
        });
    }
    Ok(())
}

/// Right-hand side of the truncated reduced system.
pub fn reduced_rhs(sys: &ReducedSystem, state: &[f64]) -> Result<Vec<f64>> {
    check_dim(sys, state)?;
    let d = 1.0 + sys.delta;
    Ok(match sys.kind {
        ReducedKind::R11Quad | ReducedKind::R11Cubic => {
            let (q1, p1, q2, p2) = (state[0], state[1], state[2], state[3]);
            vec![
                2.0 * d * p2 / 3.0 - p1 + 4.0 * d * d * p1 / 9.0
                    + 3.0 * sys.cubic * p1 * p1
                    + 4.0 * sys.quartic * p1 * p1 * p1,
                q2,
                p2 + 2.0 * d * p1 / 3.0,
                q1 + 2.0 * d * q2 / 3.0,
            ]
        }
        ReducedKind::O2 | ReducedKind::O2Critical => {
            let (q, p) = (state[0], state[1]);
            vec![
                p,
                q - 3.0 * sys.cubic * q * q - 4.0 * sys.quartic * q * q * q,
            ]
        }
        ReducedKind::QuarticGeneric => {
            let (u, u1, u2, u3) = (state[0], state[1], state[2], state[3]);
            vec![
                u1,
                u2,
                u3,
                -sys.p_coeff * u2 - u + sys.q_coeff * u * u + sys.c_coeff * u * u * u,
            ]
        }
    })
}

/// Conserved energy of the truncated system; zero at the origin.
pub fn reduced_energy(sys: &ReducedSystem, state: &[f64]) -> Result<f64> {
    check_dim(sys, state)?;
    let d = 1.0 + sys.delta;
    Ok(match sys.kind {
        ReducedKind::R11Quad | ReducedKind::R11Cubic => {
            let (q1, p1, q2, p2) = (state[0], state[1], state[2], state[3]);
            p2 * p2 / 2.0 - q1 * q2 - d / 3.0 * (q2 * q2 - 2.0 * p1 * p2) - p1 * p1 / 2.0
                + 2.0 * d * d * p1 * p1 / 9.0
                + sys.cubic * p1.powi(3)
                + sys.quartic * p1.powi(4)
        }
        ReducedKind::O2 | ReducedKind::O2Critical => {
            let (q, p) = (state[0], state[1]);
            p * p / 2.0 - q * q / 2.0 + sys.cubic * q.powi(3) + sys.quartic * q.powi(4)
        }
        ReducedKind::QuarticGeneric => {
            let (u, u1, u2, u3) = (state[0], state[1], state[2], state[3]);
            u1 * u3 - u2 * u2 / 2.0 + sys.p_coeff * u1 * u1 / 2.0 + u * u / 2.0
                - sys.q_coeff * u.powi(3) / 3.0
                - sys.c_coeff * u.powi(4) / 4.0
        }
    })
}

/// A fixed-step trajectory.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub xs: Vec<f64>,
    pub states: Vec<Vec<f64>>,
}

pub(crate) fn rk4_step(sys: &ReducedSystem, state: &mut [f64], dt: f64) {
    let n = state.len();
    let k1 = reduced_rhs(sys, state).expect("dimension checked by caller");
    let mut tmp = vec![0.0; n];
    for i in 0..n {
        tmp[i] = state[i] + 0.5 * dt * k1[i];
    }
    let k2 = reduced_rhs(sys, &tmp).unwrap();
    for i in 0..n {
        tmp[i] = state[i] + 0.5 * dt * k2[i];
    }
    let k3 = reduced_rhs(sys, &tmp).unwrap();
    for i in 0..n {
        tmp[i] = state[i] + dt * k3[i];
    }
    let k4 = reduced_rhs(sys, &tmp).unwrap();
    for i in 0..n {
        state[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
}

/// Classical fixed-step RK4 over a span of |T| (backwards when T < 0).
pub fn integrate(sys: &ReducedSystem, state0: &[f64], t: f64, dt: f64) -> Result<Trajectory> {
    check_dim(sys, state0)?;
    if dt <= 0.0 {
        return Err(Error::OutOfDomain("integrate needs dt > 0"));
    }
    let n_steps = (t.abs() / dt).round() as usize;
    let step = dt * t.signum();
    let mut xs = Vec::with_capacity(n_steps + 1);
    let mut states = Vec::with_capacity(n_steps + 1);
    let mut s = state0.to_vec();
    xs.push(0.0);
    states.push(s.clone());
    for i in 1..=n_steps {
        rk4_step(sys, &mut s, step);
        xs.push(step * i as f64);
        states.push(s.clone());
    }
    Ok(Trajectory { xs, states })
}

/// Explicit homoclinic orbit family of the 0^2 truncated systems.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExplicitO2Kind {
    Plain,
    CriticalPlus,
    CriticalMinus,
}

/// Closed-form (Q, P) of the truncated 0^2 systems at position x.
///
/// Plain: Q = -sech^2(X/2)/A with A = gamma5^(3/2)(1/h^2 - rho).
/// Critical: Q = 2 gamma5 / (±S cosh X - kappa) with
/// S = sqrt(kappa^2 + 8(rho + 1/h^3)); this denominator sign makes the
/// pair solve the truncated system identically.
pub fn explicit_o2(
    kind: ExplicitO2Kind,
    x: f64,
    p: &PhysicalParams,
    beta: f64,
    kappa: f64,
) -> Result<(f64, f64)> {
    let beta0 = p.beta0();
    if beta <= beta0 {
        return Err(Error::BetaBelowBeta0 { beta, beta0 });
    }
    let g5 = beta - beta0;
    match kind {
        ExplicitO2Kind::Plain => {
            let big_a = g5.powf(1.5) * (1.0 / (p.h * p.h) - p.rho);
            if big_a.abs() < 1e-12 {
                return Err(Error::CriticalRatioDegenerate);
            }
            let s = 1.0 / (x / 2.0).cosh();
            let q = -s * s / big_a;
            let pp = s * s * (x / 2.0).tanh() / big_a;
            Ok((q, pp))
        }
        ExplicitO2Kind::CriticalPlus | ExplicitO2Kind::CriticalMinusate => {
            unreachable!()
        }
    }
}
