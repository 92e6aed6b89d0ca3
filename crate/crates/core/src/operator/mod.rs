//! Discretized state space for (eta, omega/v, phi1, Gamma1, phi2, Gamma2),
//! the symplectic form, the linear operator L, the nonlinear field v_H with
//! its linearization K, and the change of variables G.
//!
//! States carry two scalars and four functions of z in [0, 1] sampled on a
//! Chebyshev–Lobatto grid. The scalar slot `s2` holds omega in
//! L-coordinates and v in K-coordinates; the function slots f1, f2 hold the
//! (mean-zero) potentials and g1, g2 the momentum-like variables vanishing
//! at both ends.

mod chains;
mod spectrum;

pub use chains::{eigenchain, gamma12, gamma12_with_n, gamma1_closed, ChainCase, EigenChain};
pub use spectrum::discretized_spectrum;

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::params::{BifurcationPoint, PhysicalParams};
use nalgebra::DVector;
use num_complex::Complex64;

/// Real state on a collocation grid of resolution n.
#[derive(Debug, Clone, PartialEq)]
pub struct GridState {
    pub eta: f64,
    /// omega (L-coordinates) or v (K-coordinates).
    pub s2: f64,
    pub f1: DVector<f64>,
    pub g1: DVector<f64>,
    pub f2: DVector<f64>,
    pub g2: DVector<f64>,
}

impl GridState {
    pub fn zeros(n: usize) -> Self {
        let z = DVector::zeros(n + 1);
        GridState {
            eta: 0.0,
            s2: 0.0,
            f1: z.clone(),
            g1: z.clone(),
            f2: z.clone(),
            g2: z,
        }
    }

    pub fn n(&self) -> usize {
        self.f1.len() - 1
    }

    pub fn norm_inf(&self) -> f64 {
        let mut m = self.eta.abs().max(self.s2.abs());
        for v in [&self.f1, &self.g1, &self.f2, &self.g2] {
            m = m.max(v.amax());
        }
        m
    }

    pub fn scaled(&self, c: f64) -> Self {
        GridState {
            eta: c * self.eta,
            s2: c * self.s2,
            f1: &self.f1 * c,
            g1: &self.g1 * c,
            f2: &self.f2 * c,
            g2: &self.g2 * c,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        GridState {
            eta: self.eta + other.eta,
            s2: self.s2 + other.s2,
            f1: &self.f1 + &other.f1,
            g1: &self.g1 + &other.g1,
            f2: &self.f2 + &other.f2,
            g2: &self.g2 + &other.g2,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scaled(-1.0))
    }

    /// Reverser S: (eta, v, phi1, Gamma1, phi2, Gamma2) ->
    /// (eta, -v, -phi1, Gamma1, -phi2, Gamma2).
    pub fn reversed(&self) -> Self {
        GridState {
            eta: self.eta,
            s2: -self.s2,
            f1: -self.f1.clone(),
            g1: self.g1.clone(),
            f2: -self.f2.clone(),
            g2: self.g2.clone(),
        }
    }

    /// Largest violation of mean-zero f-slots and end-vanishing g-slots.
    pub fn membership_defect(&self, grid: &Grid) -> f64 {
        let n = self.n();
        grid.integrate(&self.f1)
            .abs()
            .max(grid.integrate(&self.f2).abs())
            .max(self.g1[0].abs())
            .max(self.g1[n].abs())
            .max(self.g2[0].abs())
            .max(self.g2[n].abs())
    }
}

/// Complexified state stored as a pair of real states.
#[derive(Debug, Clone)]
pub struct CGridState {
    pub re: GridState,
    pub im: GridState,
}

impl CGridState {
    pub fn from_real(re: GridState) -> Self {
        let im = GridState::zeros(re.n());
        CGridState { re, im }
    }

    pub fn conj(&self) -> Self {
        CGridState {
            re: self.re.clone(),
            im: self.im.scaled(-1.0),
        }
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        CGridState {
            re: self.re.scaled(c.re).sub(&self.im.scaled(c.im)),
            im: self.re.scaled(c.im).add(&self.im.scaled(c.re)),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        CGridState {
            re: self.re.add(&other.re),
            im: self.im.add(&other.im),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        CGridState {
            re: self.re.sub(&other.re),
            im: self.im.sub(&other.im),
        }
    }

    pub fn norm_inf(&self) -> f64 {
        self.re.norm_inf().max(self.im.norm_inf())
    }
}

/// Direction of the change of variables G.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

fn check_same_grid(u: &GridState, v: &GridState) -> Result<()> {
    if u.n() != v.n() {
        return Err(Error::GridMismatch(u.n(), v.n()));
    }
    Ok(())
}

/// Position-independent symplectic form
///   Omega(u, v) = v.s2 u.eta - v.eta u.s2
///               + int (v.g1' u.f1 - v.f1 u.g1') + int (v.g2' u.f2 - v.f2 u.g2').
pub fn symplectic_form(u: &GridState, v: &GridState, grid: &Grid) -> Result<f64> {
    check_same_grid(u, v)?;
    let ug1z = &grid.d * &u.g1;
    let vg1z = &grid.d * &v.g1;
    let ug2z = &grid.d * &u.g2;
    let vg2z = &grid.d * &v.g2;
    let int1 = grid.integrate(&vg1z.component_mul(&u.f1)) - grid.integrate(&v.f1.component_mul(&ug1z));
    let int2 = grid.integrate(&vg2z.component_mul(&u.f2)) - grid.integrate(&v.f2.component_mul(&ug2z));
    Ok(v.s2 * u.eta - v.eta * u.s2 + int1 + int2)
}

/// Complex-bilinear extension of the symplectic form.
pub fn symplectic_form_c(u: &CGridState, v: &CGridState, grid: &Grid) -> Result<Complex64> {
    let rr = symplectic_form(&u.re, &v.re, grid)?;
    let ii = symplectic_form(&u.im, &v.im, grid)?;
    let ri = symplectic_form(&u.re, &v.im, grid)?;
    let ir = symplectic_form(&u.im, &v.re, grid)?;
    Ok(Complex64::new(rr - ii, ri + ir))
}

fn require_upper_layer(p: &PhysicalParams) -> Result<()> {
    if p.rho <= 0.0 {
        return Err(Error::OutOfDomain("operator formulas need rho > 0"));
    }
    Ok(())
}

/// Apply the linearization L (in the omega-chart) to a state satisfying the
/// linear boundary conditions. The mean-zero gauge is re-projected on the
/// output.
pub fn apply_l(
    u: &GridState,
    pt: &BifurcationPoint,
    p: &PhysicalParams,
    grid: &Grid,
) -> Result<GridState> {
    require_upper_layer(p)?;
    let n = u.n();
    let (rho, h, alpha, beta) = (p.rho, p.h, pt.alpha, pt.beta);
    let f1z = &grid.d * &u.f1;
    let f2z = &grid.d * &u.f2;
    let bval = (u.s2 + rho * u.f1[n] - u.f2[n]) / beta;
    let defect = f1z[0]
        .abs()
        .max((f1z[n] - bval).abs())
        .max(f2z[0].abs())
        .max((f2z[n] + h * bval).abs());
    if defect > 1e-8 * (1.0 + u.norm_inf()) {
        return Err(Error::BoundaryViolation(defect));
    }
    let g1z = &grid.d * &u.g1;
    let g2z = &grid.d * &u.g2;
    let mut out = GridState {
        eta: bval,
        s2: (alpha - rho - 1.0 / h) * u.eta,
        f1: &g1z / rho,
        g1: grid.z.map(|z| rho * z * bval) - &f1z * rho,
        f2: &g2z / h,
        g2: grid.z.map(|z| -z * bval) - &f2z / h,
    };
    project_mean_zero(&mut out, grid);
    Ok(out)
}

/// L on a complexified state (L is real-linear).
pub fn apply_l_c(
    u: &CGridState,
    pt: &BifurcationPoint,
    p: &PhysicalParams,
    grid: &Grid,
) -> Result<CGridState> {
    Ok(CGridState {
        re: apply_l(&u.re, pt, p, grid)?,
        im: apply_l(&u.im, pt, p, grid)?,
    })
}

fn project_mean_zero(u: &mut GridState, grid: &Grid) {
    let m1 = grid.integrate(&u.f1);
    let m2 = grid.integrate(&u.f2);
    u.f1.add_scalar_mut(-m1);
    u.f2.add_scalar_mut(-m2);
}

/// A[f](z) = int_0^z s f'(s) ds - int_0^1 int_0^z s f'(s) ds dz.
fn a_transform(f: &DVector<f64>, grid: &Grid) -> DVector<f64> {
    let fz = &grid.d * f;
    let zf = grid.z.component_mul(&fz);
    let mut cum = &grid.q * &zf;
    let mean = grid.integrate(&cum);
    cum.add_scalar_mut(-mean);
    cum
}

/// Apply the linearization K (in the v-chart) to a state with
/// phi_z(0) = phi_z(1) = 0.
pub fn apply_k(
    u: &GridState,
    pt: &BifurcationPoint,
    p: &PhysicalParams,
    grid: &Grid,
) -> Result<GridState> {
    require_upper_layer(p)?;
    let n = u.n();
    let (rho, h, alpha, beta) = (p.rho, p.h, pt.alpha, pt.beta);
    let f1z = &grid.d * &u.f1;
    let f2z = &grid.d * &u.f2;
    let defect = f1z[0].abs().max(f1z[n].abs()).max(f2z[0].abs()).max(f2z[n].abs());
    if defect > 1e-8 * (1.0 + u.norm_inf()) {
        return Err(Error::BoundaryViolation(defect));
    }
    let g1z = &grid.d * &u.g1;
    let g2z = &grid.d * &u.g2;
    let s = g1z[n] - g2z[n] / h + (alpha - rho - 1.0 / h) * u.eta;
    let shape = grid.z.map(|z| (1.0 / 3.0 - z * z) / (2.0 * beta));
    let mut out = GridState {
        eta: -3.0 * (u.f1[n] - u.f2[n] - u.s2) / (rho + h),
        s2: g1z[n] - g2z[n] / h,
        f1: &g1z + &shape * (s * rho),
        g1: -&f1z,
        f2: &g2z / h - &shape * (s * h),
        g2: -&f2z / h,
    };
    project_mean_zero(&mut out, grid);
    Ok(out)
}

/// Linearization of G at the origin: omega-chart to v-chart.
pub fn dg0(u: &GridState, pt: &BifurcationPoint, p: &PhysicalParams, grid: &Grid) -> GridState {
    let n = u.n();
    let (rho, h, beta) = (p.rho, p.h, pt.beta);
    let v = rho * u.f1[n] - u.f2[n];
    let wlin = (u.s2 + v) / beta;
    let shape = grid.z.map(|z| z * z - 1.0 / 3.0);
    GridState {
        eta: u.eta,
        s2: v,
        f1: &u.f1 * rho - &shape * (wlin * rho / 2.0),
        g1: u.g1.clone(),
        f2: &u.f2 + &shape * (wlin * h / 2.0),
        g2: u.g2.clone(),
    }
}

/// Linearization of G^{-1} at the origin: v-chart to omega-chart.
pub fn dg0_inv(u: &GridState, pt: &BifurcationPoint, p: &PhysicalParams, grid: &Grid) -> GridState {
    let n = u.n();
    let (rho, h, beta) = (p.rho, p.h, pt.beta);
    let r = -3.0 * (u.f1[n] - u.f2[n] - u.s2) / (rho + h);
    let shape = grid.z.map(|z| z * z - 1.0 / 3.0);
    GridState {
        eta: u.eta,
        s2: beta * r - u.s2,
        f1: &u.f1 / rho + &shape * (r / 2.0),
        g1: u.g1.clone(),
        f2: &u.f2 - &shape * (r * h / 2.0),
        g2: u.g2.clone(),
    }
}

/// The change of variables G (Forward: omega-chart to v-chart) and its
/// inverse (Inverse: v-chart to omega-chart), at full nonlinear order.
pub fn change_coords(
    u: &GridState,
    direction: Direction,
    pt: &BifurcationPoint,
    p: &PhysicalParams,
    grid: &Grid,
) -> Result<GridState> {
    require_upper_layer(p)?;
    let n = u.n();
    let (rho, h, beta) = (p.rho, p.h, pt.beta);
    if u.eta <= -h || u.eta >= 1.0 {
        return Err(Error::OutOfDomain("eta must lie in (-h, 1)"));
    }
    let shape1 = grid.z.map(|z| (rho / 2.0) * (z * z - 1.0 / 3.0));
    let shape2 = grid.z.map(|z| (h / 2.0) * (z * z - 1.0 / 3.0));
    match direction {
        Direction::Forward => {
            let f1z = &grid.d * &u.f1;
            let f2z = &grid.d * &u.f2;
            let g1z = &grid.d * &u.g1;
            let g2z = &grid.d * &u.g2;
            let i1 = grid.integrate(
                &grid
                    .z
                    .component_mul(&f1z)
                    .component_mul(&g1z.map(|v| v - rho)),
            ) / (u.eta - 1.0);
            let i2 = grid.integrate(
                &grid
                    .z
                    .component_mul(&f2z)
                    .component_mul(&g2z.map(|v| v - h)),
            ) / (u.eta + h);
            let omega_bar = u.s2 + i1 + i2;
            if omega_bar.abs() >= beta {
                return Err(Error::OutOfDomain("|omega_bar| must stay below beta"));
            }
            let w = omega_bar / (beta * beta - omega_bar * omega_bar).sqrt();
            let a1 = a_transform(&u.g1, grid);
            let a2 = a_transform(&u.g2, grid);
            Ok(GridState {
                eta: u.eta,
                s2: rho * u.f1[n] - u.f2[n],
                f1: &u.f1 * rho + (&a1 - &shape1) * w,
                g1: u.g1.clone(),
                f2: &u.f2 - (&a2 - &shape2) * w,
                g2: u.g2.clone(),
            })
        }
        Direction::Inverse => {
            let a1 = a_transform(&u.g1, grid);
            let a2 = a_transform(&u.g2, grid);
            let den = a1[n] + a2[n] - (rho + h) / 3.0;
            if den.abs() < 1e-6 {
                return Err(Error::DenominatorDegenerate(den));
            }
            let r = (u.f1[n] - u.f2[n] - u.s2) / den;
            let f1z = &grid.d * &u.f1;
            let f2z = &grid.d * &u.f2;
            let g1z = &grid.d * &u.g1;
            let g2z = &grid.d * &u.g2;
            let integrand1 = grid.z.zip_zip_map(&f1z, &g1z, |z, fz, gz| {
                z * (fz / rho - r * z * (gz - rho) / rho) * (gz - rho)
            });
            let integrand2 = grid
                .z
                .zip_zip_map(&f2z, &g2z, |z, fz, gz| z * (fz + r * z * (gz - h)) * (gz - h));
            let omega = beta * r / (1.0 + r * r).sqrt()
                - grid.integrate(&integrand1) / (u.eta - 1.0)
                - grid.integrate(&integrand2) / (u.eta + h);
            Ok(GridState {
                eta: u.eta,
                s2: omega,
                f1: &u.f1 / rho - (&a1 - &shape1) * (r / rho),
                g1: u.g1.clone(),
                f2: &u.f2 + (&a2 - &shape2) * r,
                g2: u.g2.clone(),
            })
        }
    }
}

/// The full nonlinear Hamiltonian vector field v_H in the v-chart.
pub fn apply_vh(
    u: &GridState,
    pt: &BifurcationPoint,
    p: &PhysicalParams,
    grid: &Grid,
) -> Result<GridState> {
    require_upper_layer(p)?;
    let n = u.n();
    let (rho, h, alpha, beta) = (p.rho, p.h, pt.alpha, pt.beta);
    if u.eta <= -h || u.eta >= 1.0 {
        return Err(Error::OutOfDomain("eta must lie in (-h, 1)"));
    }
    let a1 = a_transform(&u.g1, grid);
    let a2 = a_transform(&u.g2, grid);
    let den = a1[n] + a2[n] - (rho + h) / 3.0;
    if den.abs() < 1e-6 {
        return Err(Error::OutOfDomain("R-denominator too close to zero"));
    }
    let r = (u.f1[n] - u.f2[n] - u.s2) / den;

    let f1z = &grid.d * &u.f1;
    let f2z = &grid.d * &u.f2;
    let g1z = &grid.d * &u.g1;
    let g2z = &grid.d * &u.g2;
    let em1 = u.eta - 1.0;
    let eph = u.eta + h;
    let r2 = 1.0 + r * r;

    let omega_bar_dot = -r2 * (g1z[n] - rho).powi(2) / (2.0 * rho * em1 * em1)
        + r2 * (g2z[n] - h).powi(2) / (2.0 * eph * eph)
        + rho / 2.0
        - 0.5
        + alpha * u.eta;

    let eta_dot = r;
    let v_dot = (-g1z[n] + r * (-r * (g1z[n] - rho) - u.f1[n] + r * (a1[n] - rho / 3.0))) / em1
        - (g2z[n] + r * (r * (g2z[n] - h) - u.f2[n] - r * (a2[n] - h / 3.0))) / eph;

    let shape1 = grid.z.map(|z| (rho / 2.0) * (z * z - 1.0 / 3.0));
    let shape2 = grid.z.map(|z| (h / 2.0) * (z * z - 1.0 / 3.0));
    let af1z = a_transform(&f1z, grid);
    let af2z = a_transform(&f2z, grid);
    let coef = omega_bar_dot * r2.powf(1.5) / beta;

    let mut f1_dot = grid.z.zip_zip_map(&f1z, &g1z, |z, fz, gz| {
        (-gz + r * (z * fz - r * z * z * (gz - rho) - u.f1[n] + r * (a1[n] - rho / 3.0))) / em1
    });
    f1_dot += (&a1 - &shape1) * coef + &af1z * (r / em1);

    let g1_dot = &f1z / em1;

    let mut f2_dot = grid.z.zip_zip_map(&f2z, &g2z, |z, fz, gz| {
        (gz + r * (z * fz + r * z * z * (gz - h) - u.f2[n] - r * (a2[n] - h / 3.0))) / eph
    });
    f2_dot -= (&a2 - &shape2) * coef;
    f2_dot += &af2z * (r / eph);

    let g2_dot = -&f2z / eph;

    let mut out = GridState {
        eta: eta_dot,
        s2: v_dot,
        f1: f1_dot,
        g1: g1_dot,
        f2: f2_dot,
        g2: g2_dot,
    };
    project_mean_zero(&mut out, grid);
    Ok(out)
}

#[cfg(test)]
pub(crate) mod test_support {
    use super::*;
    use rand::Rng;

    /// Smooth random state satisfying the K-chart boundary conditions
    /// (phi_z vanishing at both ends, mean-zero phis, H0 Gammas).
    pub fn random_k_domain_state<R: Rng>(grid: &Grid, rng: &mut R, scale: f64) -> GridState {
        let mut f1 = DVector::zeros(grid.n + 1);
        let mut f2 = DVector::zeros(grid.n + 1);
        let mut g1 = DVector::zeros(grid.n + 1);
        let mut g2 = DVector::zeros(grid.n + 1);
        for m in 1..=4 {
            let (a, b) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let (c, d) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let fm = std::f64::consts::PI * m as f64;
            f1 += grid.sample(|z| a * (fm * z).cos());
            f2 += grid.sample(|z| b * (fm * z).cos());
            g1 += grid.sample(|z| c * (fm * z).sin());
            g2 += grid.sample(|z| d * (fm * z).sin());
        }
        GridState {
            eta: rng.gen_range(-1.0..1.0) * scale,
            s2: rng.gen_range(-1.0..1.0) * scale,
            f1: f1 * scale,
            g1: g1 * scale,
            f2: f2 * scale,
            g2: g2 * scale,
        }
    }

    /// Smooth random state in the domain of L (omega-chart boundary
    /// conditions wired through the omega slot).
    pub fn random_l_domain_state<R: Rng>(
        grid: &Grid,
        p: &PhysicalParams,
        pt: &BifurcationPoint,
        rng: &mut R,
        scale: f64,
    ) -> GridState {
        let n = grid.n;
        let mut u = random_k_domain_state(grid, rng, scale);
        // add a slope-carrying profile and solve the boundary rows for omega
        let b = rng.gen_range(-1.0..1.0) * scale;
        u.f1 += grid.sample(|z| b * (z * z - 1.0 / 3.0) / 2.0);
        u.f2 += grid.sample(|z| -p.h * b * (z * z - 1.0 / 3.0) / 2.0);
        u.s2 = pt.beta * b - p.rho * u.f1[n] + u.f2[n];
        u
    }
}

#[cfg(test)]
mod tests {
    use super::test_support::*;
    use super::*;
    use crate::curves::{curve_point, CurveId};
    use crate::params::validate_params;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn o2_e1(n: usize) -> GridState {
        let mut e = GridState::zeros(n);
        e.eta = 1.0;
        e
    }

    fn o2_e2(grid: &Grid, p: &PhysicalParams, beta: f64) -> GridState {
        let mut e = GridState::zeros(grid.n);
        e.s2 = beta - p.beta0();
        e.f1 = grid.sample(|z| (z * z - 1.0 / 3.0) / 2.0);
        e.f2 = grid.sample(|z| -p.h * (z * z - 1.0 / 3.0) / 2.0);
        e
    }

    #[test]
    fn symplectic_form_is_antisymmetric() {
        let grid = Grid::new(32);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let u = random_k_domain_state(&grid, &mut rng, 1.0);
        let v = random_k_domain_state(&grid, &mut rng, 1.0);
        let uv = symplectic_form(&u, &v, &grid).unwrap();
        let vu = symplectic_form(&v, &u, &grid).unwrap();
        assert!((uv + vu).abs() < 1e-12);
        let uu = symplectic_form(&u, &u, &grid).unwrap();
        assert!(uu.abs() < 1e-13);
    }

    #[test]
    fn o2_pairing_is_gamma5() {
        let p = validate_params(0.5, 1.0).unwrap();
        let beta = p.beta0() + 0.3;
        let grid = Grid::new(48);
        let e1 = o2_e1(48);
        let e2 = o2_e2(&grid, &p, beta);
        let om = symplectic_form(&e1, &e2, &grid).unwrap();
        assert!((om - (beta - p.beta0())).abs() < 1e-10);
    }

    #[test]
    fn grid_mismatch_is_reported() {
        let g32 = Grid::new(32);
        let u = GridState::zeros(32);
        let v = GridState::zeros(24);
        assert!(matches!(
            symplectic_form(&u, &v, &g32),
            Err(Error::GridMismatch(32, 24))
        ));
    }

    #[test]
    fn l_is_linear_and_rejects_bad_boundaries() {
        let p = validate_params(0.5, 1.0).unwrap();
        let pt = BifurcationPoint::new(p.beta0() + 0.3, p.alpha0());
        let grid = Grid::new(32);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let u = random_l_domain_state(&grid, &p, &pt, &mut rng, 1.0);
        let v = random_l_domain_state(&grid, &p, &pt, &mut rng, 1.0);
        let lu = apply_l(&u, &pt, &p, &grid).unwrap();
        let lv = apply_l(&v, &pt, &p, &grid).unwrap();
        let sum = u.scaled(0.7).add(&v.scaled(-1.3));
        let lsum = apply_l(&sum, &pt, &p, &grid).unwrap();
        let err = lsum.sub(&lu.scaled(0.7).add(&lv.scaled(-1.3))).norm_inf();
        assert!(err < 1e-12);

        let mut bad = u;
        bad.f1 += grid.sample(|z| z * z * z);
        assert!(matches!(
            apply_l(&bad, &pt, &p, &grid),
            Err(Error::BoundaryViolation(_))
        ));
    }

    #[test]
    fn l_is_skew_symmetric_for_omega() {
        let p = validate_params(0.4, 1.5).unwrap();
        let pt = BifurcationPoint::new(p.beta0() + 0.2, p.alpha0() + 0.1);
        let grid = Grid::new(40);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let u = random_l_domain_state(&grid, &p, &pt, &mut rng, 1.0);
            let v = random_l_domain_state(&grid, &p, &pt, &mut rng, 1.0);
            let lu = apply_l(&u, &pt, &p, &grid).unwrap();
            let lv = apply_l(&v, &pt, &p, &grid).unwrap();
            let a = symplectic_form(&lu, &v, &grid).unwrap();
            let b = symplectic_form(&u, &lv, &grid).unwrap();
            assert!((a + b).abs() < 1e-8, "skew defect {}", a + b);
        }
    }

    #[test]
    fn o2_chain_relations() {
        let p = validate_params(0.5, 1.0).unwrap();
        let beta = p.beta0() + 0.3;
        let pt = BifurcationPoint::new(beta, p.alpha0());
        let grid = Grid::new(48);
        let e1 = o2_e1(48);
        let e2 = o2_e2(&grid, &p, beta);
        let le1 = apply_l(&e1, &pt, &p, &grid).unwrap();
        assert!(le1.norm_inf() < 1e-12);
        let le2 = apply_l(&e2, &pt, &p, &grid).unwrap();
        assert!(le2.sub(&e1).norm_inf() < 1e-8);
    }

    #[test]
    fn g_fixes_origin_and_round_trips() {
        let p = validate_params(0.5, 1.0).unwrap();
        let pt = BifurcationPoint::new(p.beta0() + 0.3, p.alpha0() + 0.05);
        let grid = Grid::new(32);
        let zero = GridState::zeros(32);
        let gz = change_coords(&zero, Direction::Forward, &pt, &p, &grid).unwrap();
        assert!(gz.norm_inf() < 1e-15);

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..5 {
            let u = random_k_domain_state(&grid, &mut rng, 1e-2);
            let fwd = change_coords(&u, Direction::Forward, &pt, &p, &grid).unwrap();
            let back = change_coords(&fwd, Direction::Inverse, &pt, &p, &grid).unwrap();
            assert!(back.sub(&u).norm_inf() < 1e-10);
        }
    }

    #[test]
    fn inverse_transport_restores_nonlinear_boundary_conditions() {
        // states with phi_z(0) = phi_z(1) = 0 pull back to states solving
        // the omega-chart boundary rows
        let p = validate_params(0.5, 1.0).unwrap();
        let pt = BifurcationPoint::new(p.beta0() + 0.3, p.alpha0() + 0.05);
        let grid = Grid::new(40);
        let n = grid.n;
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let w = random_k_domain_state(&grid, &mut rng, 1e-2);
        let u = change_coords(&w, Direction::Inverse, &pt, &p, &grid).unwrap();

        let f1z = &grid.d * &u.f1;
        let f2z = &grid.d * &u.f2;
        let g1z = &grid.d * &u.g1;
        let g2z = &grid.d * &u.g2;
        let i1 = grid.integrate(
            &grid
                .z
                .component_mul(&f1z)
                .component_mul(&g1z.map(|v| v - p.rho)),
        ) / (u.eta - 1.0);
        let i2 = grid.integrate(
            &grid
                .z
                .component_mul(&f2z)
                .component_mul(&g2z.map(|v| v - p.h)),
        ) / (u.eta + p.h);
        let omega_bar = u.s2 + i1 + i2;
        let root = (pt.beta * pt.beta - omega_bar * omega_bar).sqrt();
        let b12 = p.rho * f1z[n] + omega_bar * (g1z[n] - p.rho) / root;
        let b22 = f2z[n] - omega_bar * (g2z[n] - p.h) / root;
        assert!(f1z[0].abs() < 1e-9);
        assert!(f2z[0].abs() < 1e-9);
        assert!(b12.abs() < 1e-9, "b12 defect {b12:.3e}");
        assert!(b22.abs() < 1e-9, "b22 defect {b22:.3e}");

        // and pushing forward again lands on vanishing phi_z ends
        let fwd = change_coords(&u, Direction::Forward, &pt, &p, &grid).unwrap();
        let p1z = &grid.d * &fwd.f1;
        let p2z = &grid.d * &fwd.f2;
        for v in [p1z[0], p1z[n], p2z[0], p2z[n]] {
            assert!(v.abs() < 1e-9);
        }
    }

    #[test]
    fn vh_vanishes_at_origin_and_matches_k() {
        let p = validate_params(0.5, 1.0).unwrap();
        let pt = BifurcationPoint::new(p.beta0() + 0.3, p.alpha0() + 0.02);
        let grid = Grid::new(48);
        let zero = GridState::zeros(48);
        let v0 = apply_vh(&zero, &pt, &p, &grid).unwrap();
        assert!(v0.norm_inf() < 1e-14);

        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let eps = 1e-5;
        for _ in 0..5 {
            let u = random_k_domain_state(&grid, &mut rng, 1.0);
            let plus = apply_vh(&u.scaled(eps), &pt, &p, &grid).unwrap();
            let minus = apply_vh(&u.scaled(-eps), &pt, &p, &grid).unwrap();
            let fd = plus.sub(&minus).scaled(1.0 / (2.0 * eps));
            let ku = apply_k(&u, &pt, &p, &grid).unwrap();
            let err = fd.sub(&ku).norm_inf();
            assert!(err < 1e-6, "FD Jacobian defect {err:.3e}");
        }
    }

    #[test]
    fn vh_anticommutes_with_reverser() {
        let p = validate_params(0.5, 1.0).unwrap();
        let pt = BifurcationPoint::new(p.beta0() + 0.3, p.alpha0() + 0.02);
        let grid = Grid::new(40);
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..5 {
            let u = random_k_domain_state(&grid, &mut rng, 5e-2);
            let vsu = apply_vh(&u.reversed(), &pt, &p, &grid).unwrap();
            let svu = apply_vh(&u, &pt, &p, &grid).unwrap().reversed();
            assert!(vsu.add(&svu).norm_inf() < 1e-10);
        }
    }

    #[test]
    fn k_equals_dg0_l_dg0_inv() {
        let p = validate_params(0.5, 1.0).unwrap();
        let pt = BifurcationPoint::new(p.beta0() + 0.3, p.alpha0() + 0.02);
        let grid = Grid::new(40);
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..5 {
            let u = random_k_domain_state(&grid, &mut rng, 1.0);
            let pulled = dg0_inv(&u, &pt, &p, &grid);
            let lu = apply_l(&pulled, &pt, &p, &grid).unwrap();
            let pushed = dg0(&lu, &pt, &p, &grid);
            let ku = apply_k(&u, &pt, &p, &grid).unwrap();
            assert!(pushed.sub(&ku).norm_inf() < 1e-9);
        }
    }

    #[test]
    fn dg0_round_trip() {
        let p = validate_params(0.3, 1.4).unwrap();
        let pt = BifurcationPoint::new(p.beta0() + 0.2, p.alpha0());
        let grid = Grid::new(32);
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        let u = random_k_domain_state(&grid, &mut rng, 1.0);
        let back = dg0(&dg0_inv(&u, &pt, &p, &grid), &pt, &p, &grid);
        assert!(back.sub(&u).norm_inf() < 1e-12);
    }

    #[test]
    fn hopf_chain_on_curve() {
        let p = validate_params(0.5, 1.0).unwrap();
        let k0 = 1.0;
        let cp = curve_point(CurveId::C2, k0, &p).unwrap();
        let chain = eigenchain(ChainCase::Hopf { k: k0 }, &cp.point, &p, 48).unwrap();
        for r in &chain.chain_residuals {
            assert!(*r < 1e-8, "chain residual {r:.3e}");
        }
    }
}
