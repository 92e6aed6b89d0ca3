//! Matrix discretization of L with boundary conditions and gauge
//! constraints eliminated, used as an independent check on the roots of
//! the characteristic function.

use crate::dispersion::default_strip_halfwidth;
use crate::grid::Grid;
use crate::params::{BifurcationPoint, PhysicalParams};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

struct Layout {
    np1: usize,
}

impl Layout {
    fn eta(&self) -> usize {
        0
    }
    fn omega(&self) -> usize {
        1
    }
    fn f1(&self, j: usize) -> usize {
        2 + j
    }
    fn g1(&self, j: usize) -> usize {
        2 + self.np1 + j
    }
    fn f2(&self, j: usize) -> usize {
        2 + 2 * self.np1 + j
    }
    fn g2(&self, j: usize) -> usize {
        2 + 3 * self.np1 + j
    }
    fn dim(&self) -> usize {
        2 + 4 * self.np1
    }
}

fn assemble_l(pt: &BifurcationPoint, p: &PhysicalParams, grid: &Grid) -> DMatrix<f64> {
    let n = grid.n;
    let lay = Layout { np1: n + 1 };
    let (rho, h, alpha, beta) = (p.rho, p.h, pt.alpha, pt.beta);
    let mut m = DMatrix::zeros(lay.dim(), lay.dim());

    // bval = (omega + rho f1(1) - f2(1))/beta enters several rows
    let mut bval = DVector::zeros(lay.dim());
    bval[lay.omega()] = 1.0 / beta;
    bval[lay.f1(n)] = rho / beta;
    bval[lay.f2(n)] = -1.0 / beta;

    // eta' = bval
    for c in 0..lay.dim() {
        m[(lay.eta(), c)] = bval[c];
    }
    // omega' = (alpha - rho - 1/h) eta
    m[(lay.omega(), lay.eta())] = alpha - rho - 1.0 / h;
    for j in 0..=n {
        // f1' = (D g1)/rho
        for l in 0..=n {
            m[(lay.f1(j), lay.g1(l))] = grid.d[(j, l)] / rho;
        }
        // g1' = rho z bval - rho D f1
        let zj = grid.z[j];
        for c in 0..lay.dim() {
            m[(lay.g1(j), c)] += rho * zj * bval[c];
        }
        for l in 0..=n {
            m[(lay.g1(j), lay.f1(l))] -= rho * grid.d[(j, l)];
        }
        // f2' = (D g2)/h
        for l in 0..=n {
            m[(lay.f2(j), lay.g2(l))] = grid.d[(j, l)] / h;
        }
        // g2' = -z bval - (D f2)/h
        for c in 0..lay.dim() {
            m[(lay.g2(j), c)] -= zj * bval[c];
        }
        for l in 0..=n {
            m[(lay.g2(j), lay.f2(l))] -= grid.d[(j, l)] / h;
        }
    }
    m
}

fn constraint_rows(pt: &BifurcationPoint, p: &PhysicalParams, grid: &Grid) -> Vec<DVector<f64>> {
    let n = grid.n;
    let lay = Layout { np1: n + 1 };
    let (rho, h, beta) = (p.rho, p.h, pt.beta);
    let mut rows = Vec::with_capacity(10);

    // f1_z(0) = 0 and f2_z(0) = 0
    for f in [0usize, 1] {
        let mut r = DVector::zeros(lay.dim());
        for l in 0..=n {
            let idx = if f == 0 { lay.f1(l) } else { lay.f2(l) };
            r[idx] = grid.d[(0, l)];
        }
        rows.push(r);
    }
    // f1_z(1) = bval
    let mut r = DVector::zeros(lay.dim());
    for l in 0..=n {
        r[lay.f1(l)] = grid.d[(n, l)];
    }
    r[lay.omega()] -= 1.0 / beta;
    r[lay.f1(n)] -= rho / beta;
    r[lay.f2(n)] += 1.0 / beta;
    rows.push(r);
    // f2_z(1) = -h bval
    let mut r = DVector::zeros(lay.dim());
    for l in 0..=n {
        r[lay.f2(l)] = grid.d[(n, l)];
    }
    r[lay.omega()] += h / beta;
    r[lay.f1(n)] += rho * h / beta;
    r[lay.f2(n)] -= h / beta;
    rows.push(r);
    // Gamma ends
    for idx in [lay.g1(0), lay.g1(n), lay.g2(0), lay.g2(n)] {
        let mut r = DVector::zeros(lay.dim());
        r[idx] = 1.0;
        rows.push(r);
    }
    // mean-zero gauges
    for f in [0usize, 1] {
        let mut r = DVector::zeros(lay.dim());
        for l in 0..=n {
            let idx = if f == 0 { lay.f1(l) } else { lay.f2(l) };
            r[idx] = grid.w[l];
        }
        rows.push(r);
    }
    rows
}

/// Orthonormal basis of the joint null space of the constraint rows.
fn null_space_basis(rows: &[DVector<f64>], dim: usize) -> DMatrix<f64> {
    // orthonormalize the constraints first
    let mut ortho: Vec<DVector<f64>> = Vec::new();
    for r in rows {
        let mut v = r.clone();
        for q in &ortho {
            let c = q.dot(&v);
            v -= q * c;
        }
        let nv = v.norm();
        if nv > 1e-12 {
            ortho.push(v / nv);
        }
    }
    let target = dim - ortho.len();
    let mut basis: Vec<DVector<f64>> = Vec::with_capacity(target);
    for i in 0..dim {
        let mut v = DVector::zeros(dim);
        v[i] = 1.0;
        for q in ortho.iter().chain(basis.iter()) {
            let c = q.dot(&v);
            v -= q * c;
        }
        // second orthogonalization pass for stability
        for q in ortho.iter().chain(basis.iter()) {
            let c = q.dot(&v);
            v -= q * c;
        }
        let nv = v.norm();
        if nv > 1e-8 {
            basis.push(v / nv);
        }
        if basis.len() == target {
            break;
        }
    }
    let mut b = DMatrix::zeros(dim, basis.len());
    for (j, v) in basis.iter().enumerate() {
        b.set_column(j, v);
    }
    b
}

/// Eigenvalues of the discretized L restricted to the constraint-satisfying
/// subspace, filtered to |Re| below the strip halfwidth and sorted by |Im|.
pub fn discretized_spectrum(
    pt: &BifurcationPoint,
    p: &PhysicalParams,
    n: usize,
) -> Vec<Complex64> {
    let grid = Grid::shared(n);
    let l_full = assemble_l(pt, p, &grid);
    let rows = constraint_rows(pt, p, &grid);
    let basis = null_space_basis(&rows, l_full.nrows());
    let l_red = basis.transpose() * &l_full * &basis;
    let eigen = l_red.complex_eigenvalues();
    let gamma = default_strip_halfwidth(p);
    let mut out: Vec<Complex64> = eigen
        .iter()
        .copied()
        .filter(|z| z.re.abs() < gamma)
        .collect();
    out.sort_by(|a, b| {
        a.im.abs()
            .partial_cmp(&b.im.abs())
            .unwrap()
            .then(a.re.partial_cmp(&b.re).unwrap())
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{curve_point, CurveId};
    use crate::dispersion::{axis_roots, imag_scan_bound, Axis, DispersionContext};
    use crate::params::validate_params;

    fn nearest(spec: &[Complex64], target: Complex64) -> f64 {
        spec.iter()
            .map(|z| (z - target).norm())
            .fold(f64::INFINITY, f64::min)
    }

    #[test]
    fn spectrum_matches_dispersion_roots_below_c2() {
        let p = validate_params(0.5, 1.0).unwrap();
        let cp = curve_point(CurveId::C2, 1.0, &p).unwrap();
        // stay between C3 and C2: the gap alpha* - alpha0 is gamma3 k0^4
        let pt = BifurcationPoint::new(cp.point.beta, cp.point.alpha - 0.01);
        let ctx = DispersionContext::new(p, pt);
        let roots = axis_roots(Axis::Imaginary, &ctx, imag_scan_bound(&ctx), 5e-4).unwrap();
        assert_eq!(roots.len(), 2);
        let spec = discretized_spectrum(&pt, &p, 48);
        for r in roots {
            let d = nearest(&spec, r.location);
            assert!(d < 1e-7, "root {} missed by {d:.3e}", r.location);
        }
    }

    #[test]
    fn spectrum_is_symmetric() {
        let p = validate_params(0.5, 1.0).unwrap();
        let pt = BifurcationPoint::new(p.beta0() + 0.2, p.alpha0() - 0.05);
        let spec = discretized_spectrum(&pt, &p, 48);
        for z in spec.iter().take(12) {
            let dm = nearest(&spec, -z);
            let dc = nearest(&spec, z.conj());
            assert!(dm < 1e-8, "missing -lambda partner of {z}");
            assert!(dc < 1e-8, "missing conj partner of {z}");
        }
    }

    #[test]
    fn near_defective_cluster_on_c2() {
        let p = validate_params(0.5, 1.0).unwrap();
        let cp = curve_point(CurveId::C2, 1.0, &p).unwrap();
        let spec = discretized_spectrum(&cp.point, &p, 64);
        let target = Complex64::new(0.0, 1.0);
        let mut close: Vec<Complex64> = spec
            .iter()
            .copied()
            .filter(|z| (z - target).norm() < 0.05)
            .collect();
        close.sort_by(|a, b| (a - target).norm().partial_cmp(&(b - target).norm()).unwrap());
        assert!(close.len() >= 2, "expected a cluster near i k0");
        let diam = (close[0] - close[1]).norm();
        assert!(diam < 1e-4, "cluster diameter {diam:.3e}");
    }
}
