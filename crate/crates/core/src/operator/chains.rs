//! Generalized eigenchains for the three resonances, sampled from their
//! closed forms, together with the symplectic gamma coefficients.

use super::{apply_l_c, symplectic_form_c, CGridState, GridState};
use crate::curves::{alpha_star, beta_star};
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::numerics::gamma1_kernel;
use crate::params::{BifurcationPoint, PhysicalParams};
use num_complex::Complex64;

/// Resonance case selector for eigenchain construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChainCase {
    /// Double imaginary pair at ±ik on C2 (Hamiltonian-Hopf).
    Hopf { k: f64 },
    /// Zero of algebraic multiplicity four at (beta0, alpha0).
    R11,
    /// Zero of algebraic multiplicity two on C3 (beta > beta0).
    O2,
}

/// An eigenchain with its symplectic basis and diagnostics.
#[derive(Debug, Clone)]
pub struct EigenChain {
    pub case: ChainCase,
    /// Generalized eigenvectors e1, e2, ... in chain order.
    pub vectors: Vec<CGridState>,
    /// Symplectically normalized basis W1, W2, ...
    pub w_basis: Vec<CGridState>,
    /// Case gammas: [gamma1, gamma2] (Hopf), [gamma3, gamma4] (R11),
    /// [gamma5] (O2).
    pub gamma_values: Vec<f64>,
    /// Residuals of the chain relations under the discretized L.
    pub chain_residuals: Vec<f64>,
}

/// gamma1(k) = rho q(k) + h q(hk) with the per-layer kernel q; this is the
/// closed form of Omega(e1, conj(e2)) on C2.
pub fn gamma1_closed(k: f64, p: &PhysicalParams) -> f64 {
    p.rho * gamma1_kernel(k) + p.h * gamma1_kernel(p.h * k)
}

fn complex_state(
    grid: &Grid,
    eta: Complex64,
    s2: Complex64,
    f1: impl Fn(f64) -> Complex64,
    g1: impl Fn(f64) -> Complex64,
    f2: impl Fn(f64) -> Complex64,
    g2: impl Fn(f64) -> Complex64,
) -> CGridState {
    let re = GridState {
        eta: eta.re,
        s2: s2.re,
        f1: grid.sample(|z| f1(z).re),
        g1: grid.sample(|z| g1(z).re),
        f2: grid.sample(|z| f2(z).re),
        g2: grid.sample(|z| g2(z).re),
    };
    let im = GridState {
        eta: eta.im,
        s2: s2.im,
        f1: grid.sample(|z| f1(z).im),
        g1: grid.sample(|z| g1(z).im),
        f2: grid.sample(|z| f2(z).im),
        g2: grid.sample(|z| g2(z).im),
    };
    CGridState { re, im }
}

fn hopf_vectors(k: f64, pt: &BifurcationPoint, p: &PhysicalParams, grid: &Grid) -> (CGridState, CGridState) {
    let (rho, h, alpha) = (p.rho, p.h, pt.alpha);
    let i = Complex64::i();
    let gap = alpha - rho - 1.0 / h;
    let (sk, shk) = (k.sinh(), (h * k).sinh());
    let (cothk, cothhk) = (k.cosh() / sk, (h * k).cosh() / shk);

    let e1 = complex_state(
        grid,
        Complex64::new(1.0, 0.0),
        gap / (i * k),
        |z| i * ((k * z).cosh() / sk - 1.0 / k),
        |z| Complex64::new(rho * (z - (k * z).sinh() / sk), 0.0),
        |z| i * (1.0 / (h * k) - (h * k * z).cosh() / shk),
        |z| Complex64::new((h * k * z).sinh() / shk - z, 0.0),
    );

    let e2 = complex_state(
        grid,
        Complex64::new(0.0, 0.0),
        Complex64::new(gap / (k * k), 0.0),
        |z| Complex64::new((z * (k * z).sinh() - cothk * (k * z).cosh()) / sk + 1.0 / (k * k), 0.0),
        |z| -i * rho * (cothk * (k * z).sinh() - z * (k * z).cosh()) / sk,
        |z| {
            Complex64::new(
                -h * (z * (h * k * z).sinh() - cothhk * (h * k * z).cosh()) / shk
                    - 1.0 / (h * k * k),
                0.0,
            )
        },
        |z| i * h * (cothhk * (h * k * z).sinh() - z * (h * k * z).cosh()) / shk,
    );
    (e1, e2)
}

fn r11_vectors(p: &PhysicalParams, grid: &Grid) -> [CGridState; 4] {
    let (rho, h) = (p.rho, p.h);
    let gamma3 = p.gamma3();
    let mut e1 = GridState::zeros(grid.n);
    e1.eta = 1.0;

    let mut e2 = GridState::zeros(grid.n);
    e2.f1 = grid.sample(|z| (z * z - 1.0 / 3.0) / 2.0);
    e2.f2 = grid.sample(|z| -h * (z * z - 1.0 / 3.0) / 2.0);

    let mut e3 = GridState::zeros(grid.n);
    e3.g1 = grid.sample(|z| rho * z * (z * z - 1.0) / 6.0);
    e3.g2 = grid.sample(|z| -h * h * z * (z * z - 1.0) / 6.0);

    let mut e4 = GridState::zeros(grid.n);
    e4.s2 = -gamma3;
    e4.f1 = grid.sample(|z| -z * z / 12.0 * (z * z / 2.0 - 1.0) - 7.0 / 360.0);
    e4.f2 = grid.sample(|z| h.powi(3) * (z * z / 12.0 * (z * z / 2.0 - 1.0) + 7.0 / 360.0));

    [e1, e2, e3, e4].map(CGridState::from_real)
}

fn o2_vectors(pt: &BifurcationPoint, p: &PhysicalParams, grid: &Grid) -> [CGridState; 2] {
    let h = p.h;
    let mut e1 = GridState::zeros(grid.n);
    e1.eta = 1.0;
    let mut e2 = GridState::zeros(grid.n);
    e2.s2 = pt.beta - p.beta0();
    e2.f1 = grid.sample(|z| (z * z - 1.0 / 3.0) / 2.0);
    e2.f2 = grid.sample(|z| -h * (z * z - 1.0 / 3.0) / 2.0);
    [CGridState::from_real(e1), CGridState::from_real(e2)]
}

fn chain_residual(
    vectors: &[CGridState],
    lambda: Complex64,
    pt: &BifurcationPoint,
    p: &PhysicalParams,
    grid: &Grid,
) -> Result<Vec<f64>> {
    let mut res = Vec::with_capacity(vectors.len());
    let mut prev: Option<&CGridState> = None;
    for e in vectors {
        let le = apply_l_c(e, pt, p, grid)?;
        let mut defect = le.sub(&e.scaled(lambda));
        if let Some(q) = prev {
            defect = defect.sub(q);
        }
        res.push(defect.norm_inf());
        prev = Some(e);
    }
    Ok(res)
}

/// Build the eigenchain for one resonance case at resolution n. The
/// parameter point must be consistent with the case.
pub fn eigenchain(
    case: ChainCase,
    pt: &BifurcationPoint,
    p: &PhysicalParams,
    n: usize,
) -> Result<EigenChain> {
    let grid = Grid::shared(n);
    match case {
        ChainCase::Hopf { k } => {
            if k <= 0.0 {
                return Err(Error::CaseMismatch("Hopf needs k > 0"));
            }
            if (pt.beta - beta_star(k, p)).abs() > 1e-8 || (pt.alpha - alpha_star(k, p)).abs() > 1e-8
            {
                return Err(Error::CaseMismatch("point is not on C2 at this k"));
            }
            let (e1, e2) = hopf_vectors(k, pt, p, &grid);
            let gamma1 = gamma1_closed(k, p);
            let om22 = symplectic_form_c(&e2, &e2.conj(), &grid)?;
            let gamma2 = (Complex64::i() * om22).re;
            let e2p = e2.add(&e1.scaled(Complex64::i() * gamma2 / (2.0 * gamma1)));
            let scale = Complex64::new(1.0 / gamma1.sqrt(), 0.0);
            let w1 = e1.scaled(scale);
            let w2 = e2p.scaled(scale);
            let residuals = chain_residual(
                &[e1.clone(), e2.clone()],
                Complex64::new(0.0, k),
                pt,
                p,
                &grid,
            )?;
            Ok(EigenChain {
                case,
                vectors: vec![e1, e2],
                w_basis: vec![w1, w2],
                gamma_values: vec![gamma1, gamma2],
                chain_residuals: residuals,
            })
        }
        ChainCase::R11 => {
            if (pt.beta - p.beta0()).abs() > 1e-10 || (pt.alpha - p.alpha0()).abs() > 1e-10 {
                return Err(Error::CaseMismatch("R11 lives at (beta0, alpha0)"));
            }
            let [e1, e2, e3, e4] = r11_vectors(p, &grid);
            let (gamma3, gamma4) = (p.gamma3(), p.gamma4());
            let s = Complex64::new(1.0 / gamma3.sqrt(), 0.0);
            let w1 = e4.scaled(s);
            let w2 = e1.scaled(s);
            let w3 = e2.scaled(s);
            let w4 = e3
                .sub(&e1.scaled(Complex64::new(gamma4 / gamma3, 0.0)))
                .scaled(s);
            let residuals = chain_residual(
                &[e1.clone(), e2.clone(), e3.clone(), e4.clone()],
                Complex64::new(0.0, 0.0),
                pt,
                p,
                &grid,
            )?;
            Ok(EigenChain {
                case,
                vectors: vec![e1, e2, e3, e4],
                w_basis: vec![w1, w2, w3, w4],
                gamma_values: vec![gamma3, gamma4],
                chain_residuals: residuals,
            })
        }
        ChainCase::O2 => {
            if (pt.alpha - p.alpha0()).abs() > 1e-10 {
                return Err(Error::CaseMismatch("O2 lives at alpha = alpha0"));
            }
            if pt.beta <= p.beta0() {
                return Err(Error::CaseMismatch("O2 needs beta > beta0"));
            }
            let [e1, e2] = o2_vectors(pt, p, &grid);
            let gamma5 = pt.beta - p.beta0();
            let s = Complex64::new(1.0 / gamma5.sqrt(), 0.0);
            let w1 = e1.scaled(s);
            let w2 = e2.scaled(s);
            let residuals = chain_residual(
                &[e1.clone(), e2.clone()],
                Complex64::new(0.0, 0.0),
                pt,
                p,
                &grid,
            )?;
            Ok(EigenChain {
                case,
                vectors: vec![e1, e2],
                w_basis: vec![w1, w2],
                gamma_values: vec![gamma5],
                chain_residuals: residuals,
            })
        }
    }
}

/// (gamma1, gamma2) at wavenumber k: gamma1 from the closed form, gamma2 by
/// quadrature of Omega(e2, conj(e2)) = -i gamma2 on the default grid.
pub fn gamma12(k: f64, p: &PhysicalParams) -> Result<(f64, f64)> {
    gamma12_with_n(k, p, 48)
}

/// Same as [`gamma12`] with an explicit grid resolution.
pub fn gamma12_with_n(k: f64, p: &PhysicalParams, n: usize) -> Result<(f64, f64)> {
    if k <= 0.0 {
        return Err(Error::OutOfDomain("gamma12 needs k > 0"));
    }
    let pt = BifurcationPoint::new(beta_star(k, p), alpha_star(k, p));
    let grid = Grid::shared(n);
    let (_, e2) = hopf_vectors(k, &pt, p, &grid);
    let om22 = symplectic_form_c(&e2, &e2.conj(), &grid)?;
    let gamma2 = (Complex64::i() * om22).re;
    Ok((gamma1_closed(k, p), gamma2))
}
