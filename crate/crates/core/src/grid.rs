//! Chebyshev–Lobatto collocation on z in [0, 1]: nodes, differentiation
//! matrix, Clenshaw–Curtis weights and a cumulative integration matrix.

use nalgebra::{DMatrix, DVector};
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

/// Collocation machinery for one resolution N (N+1 nodes).
#[derive(Debug)]
pub struct Grid {
    pub n: usize,
    /// Nodes z_j = (1 - cos(j pi / N))/2, ascending from 0 to 1.
    pub z: DVector<f64>,
    /// Spectral differentiation matrix d/dz.
    pub d: DMatrix<f64>,
    /// Clenshaw–Curtis quadrature weights for the integral over [0, 1].
    pub w: DVector<f64>,
    /// Cumulative integration matrix: (q f)_j ~ integral of f from 0 to z_j.
    pub q: DMatrix<f64>,
}

fn cheb_diff_matrix(n: usize) -> DMatrix<f64> {
    // standard Chebyshev matrix on x_j = cos(j pi / N)
    let np1 = n + 1;
    let x: Vec<f64> = (0..np1).map(|j| (j as f64 * PI / n as f64).cos()).collect();
    let mut c = vec![1.0; np1];
    c[0] = 2.0;
    c[n] = 2.0;
    let mut d = DMatrix::zeros(np1, np1);
    for i in 0..np1 {
        for j in 0..np1 {
            if i != j {
                let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
                d[(i, j)] = (c[i] / c[j]) * sign / (x[i] - x[j]);
            }
        }
    }
    for i in 0..np1 {
        let mut s = 0.0;
        for j in 0..np1 {
            if j != i {
                s += d[(i, j)];
            }
        }
        d[(i, i)] = -s;
    }
    d
}

fn clenshaw_curtis(n: usize) -> DVector<f64> {
    // weights on [-1, 1] (Trefethen's clencurt), later scaled to [0, 1]
    let np1 = n + 1;
    let mut w = DVector::zeros(np1);
    if n == 0 {
        w[0] = 2.0;
        return w;
    }
    let theta: Vec<f64> = (0..np1).map(|j| j as f64 * PI / n as f64).collect();
    let mut v = vec![1.0f64; n - 1];
    if n % 2 == 0 {
        w[0] = 1.0 / ((n * n - 1) as f64);
        w[n] = w[0];
        for (i, item) in v.iter_mut().enumerate() {
            let th = theta[i + 1];
            for m in 1..(n / 2) {
                *item -= 2.0 * (2.0 * m as f64 * th).cos() / ((4 * m * m - 1) as f64);
            }
            *item -= ((n as f64) * th).cos() / ((n * n - 1) as f64);
        }
    } else {
        w[0] = 1.0 / ((n * n) as f64);
        w[n] = w[0];
        for (i, item) in v.iter_mut().enumerate() {
            let th = theta[i + 1];
            for m in 1..=((n - 1) / 2) {
                *item -= 2.0 * (2.0 * m as f64 * th).cos() / ((4 * m * m - 1) as f64);
            }
        }
    }
    for i in 1..n {
        w[i] = 2.0 * v[i - 1] / (n as f64);
    }
    w
}

impl Grid {
    pub fn new(n: usize) -> Self {
        assert!(n >= 4, "grid needs at least 5 nodes");
        let np1 = n + 1;
        let z = DVector::from_iterator(
            np1,
            (0..np1).map(|j| 0.5 * (1.0 - (j as f64 * PI / n as f64).cos())),
        );
        // z = (1 - x)/2 with x the standard Chebyshev coordinate, so
        // d/dz = -2 d/dx
        let dx = cheb_diff_matrix(n);
        let d = dx.map(|v| -2.0 * v);
        let w = clenshaw_curtis(n).map(|v| 0.5 * v);

        // Value -> Chebyshev coefficient map (DCT-I with halved endpoints).
        let mut coeff = DMatrix::zeros(np1, np1);
        for m in 0..np1 {
            let cm = if m == 0 || m == n { 2.0 } else { 1.0 };
            for j in 0..np1 {
                let cj = if j == 0 || j == n { 2.0 } else { 1.0 };
                coeff[(m, j)] =
                    (2.0 / (n as f64)) * ((m * j) as f64 * PI / n as f64).cos() / (cm * cj);
            }
        }
        // Coefficient antiderivative in x, constant fixed by B(x=1) = 0.
        let mut integ = DMatrix::zeros(np1, np1);
        for m in 1..np1 {
            let prev = m - 1;
            integ[(m, prev)] += 1.0 / (2.0 * m as f64);
            if m + 1 < np1 {
                integ[(m, m + 1)] -= 1.0 / (2.0 * m as f64);
            }
        }
        // b_1 gets a_0 with full weight
        integ[(1, 0)] = 1.0;
        if 2 < np1 {
            integ[(1, 2)] = -0.5;
        }
        // Coefficient -> value map.
        let mut eval = DMatrix::zeros(np1, np1);
        for j in 0..np1 {
            for m in 0..np1 {
                eval[(j, m)] = ((m * j) as f64 * PI / n as f64).cos();
            }
        }
        let raw = &eval * &integ * &coeff;
        // subtract the value at z = 0 (x = 1, row j = 0) and flip the sign
        // from dz = -dx/2
        let row0 = raw.row(0).into_owned();
        let mut q = raw.clone();
        for j in 0..np1 {
            for m in 0..np1 {
                q[(j, m)] = -0.5 * (raw[(j, m)] - row0[m]);
            }
        }
        Grid { n, z, d, w, q }
    }

    /// Shared, cached grid for a given resolution.
    pub fn shared(n: usize) -> Arc<Grid> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Grid>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut map = cache.lock().unwrap();
        map.entry(n).or_insert_with(|| Arc::new(Grid::new(n))).clone()
    }

    /// Integral over [0, 1] of nodal values.
    pub fn integrate(&self, f: &DVector<f64>) -> f64 {
        self.w.dot(f)
    }

    /// Sample a scalar function of z onto the nodes.
    pub fn sample(&self, f: impl Fn(f64) -> f64) -> DVector<f64> {
        DVector::from_iterator(self.n + 1, self.z.iter().map(|&z| f(z)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_integral_is_exact() {
        for n in [8, 24, 48] {
            let g = Grid::new(n);
            let one = DVector::from_element(n + 1, 1.0);
            assert!((g.integrate(&one) - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn quadrature_exact_on_monomials() {
        let g = Grid::new(24);
        for p in 0..=20usize {
            let f = g.sample(|z| z.powi(p as i32));
            let exact = 1.0 / (p as f64 + 1.0);
            assert!(
                (g.integrate(&f) - exact).abs() < 1e-14,
                "monomial degree {p}"
            );
        }
    }

    #[test]
    fn differentiation_on_polynomials_and_cosh() {
        let g = Grid::new(32);
        let f = g.sample(|z| z * z * z - 2.0 * z + 0.5);
        let df = &g.d * &f;
        for (j, &z) in g.z.iter().enumerate() {
            assert!((df[j] - (3.0 * z * z - 2.0)).abs() < 1e-10);
        }
        let f = g.sample(|z| (2.0 * z).cosh());
        let df = &g.d * &f;
        for (j, &z) in g.z.iter().enumerate() {
            assert!((df[j] - 2.0 * (2.0 * z).sinh()).abs() < 1e-9);
        }
    }

    #[test]
    fn cumulative_integration() {
        let g = Grid::new(32);
        let f = g.sample(|_| 1.0);
        let c = &g.q * &f;
        for (j, &z) in g.z.iter().enumerate() {
            assert!((c[j] - z).abs() < 1e-12);
        }
        let f = g.sample(|z| 3.0 * z * z);
        let c = &g.q * &f;
        for (j, &z) in g.z.iter().enumerate() {
            assert!((c[j] - z * z * z).abs() < 1e-12);
        }
        let f = g.sample(|z| (1.5 * z).sin());
        let c = &g.q * &f;
        for (j, &z) in g.z.iter().enumerate() {
            let exact = (1.0 - (1.5 * z).cos()) / 1.5;
            assert!((c[j] - exact).abs() < 1e-11);
        }
    }

    #[test]
    fn shared_cache_returns_same_grid() {
        let a = Grid::shared(20);
        let b = Grid::shared(20);
        assert!(Arc::ptr_eq(&a, &b));
    }
}
