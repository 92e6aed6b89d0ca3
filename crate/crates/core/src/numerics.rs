//! Small shared numerical routines: stable scalar kernels, root finding,
//! adaptive quadrature and least-squares polynomial fits.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

// ---------------------------------------------------------------------------
// Scalar kernels with series-stabilized small arguments
// ---------------------------------------------------------------------------

/// w * cot(w) for complex w, with the removable singularity at 0 handled by
/// the series 1 - w^2/3 - w^4/45 - 2 w^6/945 for |w| < 1e-3.
pub fn tcot_c(w: Complex64) -> Complex64 {
    if w.norm() < 1e-3 {
        let w2 = w * w;
        Complex64::new(1.0, 0.0) - w2 / 3.0 - w2 * w2 / 45.0 - 2.0 * w2 * w2 * w2 / 945.0
    } else {
        w * w.cos() / w.sin()
    }
}

/// Derivative d/dw of w*cot(w).
pub fn tcot_c_d1(w: Complex64) -> Complex64 {
    if w.norm() < 1e-3 {
        let w2 = w * w;
        -2.0 * w / 3.0 - 4.0 * w * w2 / 45.0 - 12.0 * w * w2 * w2 / 945.0
    } else {
        let s = w.sin();
        w.cos() / s - w / (s * s)
    }
}

/// Second derivative of w*cot(w): 2 (w cot w - 1)/sin^2(w).
pub fn tcot_c_d2(w: Complex64) -> Complex64 {
    if w.norm() < 1e-3 {
        let w2 = w * w;
        Complex64::new(-2.0 / 3.0, 0.0) - 4.0 * w2 / 15.0 - 4.0 * w2 * w2 / 63.0
    } else {
        let s = w.sin();
        2.0 * (tcot_c(w) - 1.0) / (s * s)
    }
}

/// w * coth(w) for real w (even function), series below 1e-3.
pub fn tcoth(w: f64) -> f64 {
    if w.abs() < 1e-3 {
        let w2 = w * w;
        1.0 + w2 / 3.0 - w2 * w2 / 45.0 + 2.0 * w2 * w2 * w2 / 945.0
    } else {
        w * w.cosh() / w.sinh()
    }
}

pub fn tcoth_d1(w: f64) -> f64 {
    if w.abs() < 1e-3 {
        let w2 = w * w;
        2.0 * w / 3.0 - 4.0 * w * w2 / 45.0 + 12.0 * w * w2 * w2 / 945.0
    } else {
        let s = w.sinh();
        w.cosh() / s - w / (s * s)
    }
}

pub fn tcoth_d2(w: f64) -> f64 {
    if w.abs() < 1e-3 {
        let w2 = w * w;
        2.0 / 3.0 - 4.0 * w2 / 15.0 + 4.0 * w2 * w2 / 63.0
    } else {
        let s = w.sinh();
        2.0 * (tcoth(w) - 1.0) / (s * s)
    }
}

/// w*coth(w) - 1, accurate for small w.
pub fn tcoth_m1(w: f64) -> f64 {
    if w.abs() < 1e-3 {
        let w2 = w * w;
        w2 / 3.0 - w2 * w2 / 45.0 + 2.0 * w2 * w2 * w2 / 945.0
    } else {
        tcoth(w) - 1.0
    }
}

/// w*coth(w) - 1 - w^2/3 = -w^4/45 + 2w^6/945 - ..., accurate for small w.
pub fn tcoth_m1_mq(w: f64) -> f64 {
    let w2 = w * w;
    if w.abs() < 0.08 {
        -w2 * w2 / 45.0 + 2.0 * w2 * w2 * w2 / 945.0 - w2 * w2 * w2 * w2 / 4725.0
    } else {
        tcoth(w) - 1.0 - w2 / 3.0
    }
}

/// Hyperbolic per-layer curve kernel
///   b(w) = (sinh w cosh w - w) / (2 w sinh^2 w)
/// entering beta*(k) = rho*b(k) + h*b(h k). Series 1/3 - 2w^2/45 + 2w^4/315
/// - 4w^6/4725 for small w.
pub fn curve_b_hyp(w: f64) -> f64 {
    if w.abs() < 0.08 {
        let w2 = w * w;
        let w4 = w2 * w2;
        1.0 / 3.0 - 2.0 * w2 / 45.0 + 2.0 * w4 / 315.0 - 4.0 * w4 * w2 / 4725.0
            + 2.0 * w4 * w4 / 18711.0
    } else {
        let s = w.sinh();
        (s * w.cosh() - w) / (2.0 * w * s * s)
    }
}

/// 1/3 - b(w) = 2w^2/45 - 2w^4/315 + 4w^6/4725 - ..., stable near 0.
pub fn curve_b_hyp_gap(w: f64) -> f64 {
    if w.abs() < 0.08 {
        let w2 = w * w;
        let w4 = w2 * w2;
        2.0 * w2 / 45.0 - 2.0 * w4 / 315.0 + 4.0 * w4 * w2 / 4725.0 - 2.0 * w4 * w4 / 18711.0
    } else {
        1.0 / 3.0 - curve_b_hyp(w)
    }
}

/// Trigonometric per-layer curve kernel
///   bt(w) = (-sin w cos w + w) / (2 w sin^2 w)
/// entering betahat(k) = rho*bt(k) + h*bt(h k). Series 1/3 + 2w^2/45 +
/// 2w^4/315 for small w.
pub fn curve_b_trig(w: f64) -> f64 {
    if w.abs() < 0.08 {
        let w2 = w * w;
        let w4 = w2 * w2;
        1.0 / 3.0 + 2.0 * w2 / 45.0 + 2.0 * w4 / 315.0 + 4.0 * w4 * w2 / 4725.0
            + 2.0 * w4 * w4 / 18711.0
    } else {
        let s = w.sin();
        (-s * w.cos() + w) / (2.0 * w * s * s)
    }
}

/// Per-layer symplectic pairing kernel for gamma1:
///   q(w) = coth(w)/(2w) + 1/(2 sinh^2 w) - w coth(w)/sinh^2(w),
/// gamma1(k) = rho*q(k) + h*q(h k). Series 4w^2/45 - 8w^4/315 + 8w^6/1575.
pub fn gamma1_kernel(w: f64) -> f64 {
    if w.abs() < 0.08 {
        let w2 = w * w;
        let w4 = w2 * w2;
        4.0 * w2 / 45.0 - 8.0 * w4 / 315.0 + 8.0 * w4 * w2 / 1575.0 - 16.0 * w4 * w4 / 18711.0
    } else {
        let s = w.sinh();
        let c = w.cosh();
        c / (2.0 * w * s) + 1.0 / (2.0 * s * s) - w * c / (s * s * s)
    }
}

/// Per-layer kernel of alpha*(k) - alpha0:
///   acurve(w) = (w/2) coth w - 1 + w^2/(2 sinh^2 w)
/// so that alpha*(k) - alpha0 = rho*acurve(k) + acurve(h k)/h.
/// Series w^4/45 - 4w^6/945 + w^8/1575.
pub fn alpha_gap_kernel(w: f64) -> f64 {
    if w.abs() < 0.08 {
        let w2 = w * w;
        let w4 = w2 * w2;
        w4 / 45.0 - 4.0 * w4 * w2 / 945.0 + w4 * w4 / 1575.0 - 8.0 * w4 * w4 * w2 / 93555.0
    } else {
        let s = w.sinh();
        0.5 * w * w.cosh() / s - 1.0 + 0.5 * w * w / (s * s)
    }
}

// ---------------------------------------------------------------------------
// Root finding
// ---------------------------------------------------------------------------

/// Brent's method on a bracketing interval [a, b] with f(a)*f(b) <= 0.
pub fn brent<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64, max_iter: usize) -> Option<f64> {
    let (mut a, mut b) = (a, b);
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Some(a);
    }
    if fb == 0.0 {
        return Some(b);
    }
    if fa * fb > 0.0 {
        return None;
    }
    if fa.abs() < fb.abs() {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut fa, &mut fb);
    }
    let mut c = a;
    let mut fc = fa;
    let mut mflag = true;
    let mut d = a;
    for _ in 0..max_iter {
        if fb == 0.0 || (b - a).abs() < tol {
            return Some(b);
        }
        let mut s = if fa != fc && fb != fc {
            // inverse quadratic interpolation
            a * fb * fc / ((fa - fb) * (fa - fc))
                + b * fa * fc / ((fb - fa) * (fb - fc))
                + c * fa * fb / ((fc - fa) * (fc - fb))
        } else {
            b - fb * (b - a) / (fb - fa)
        };
        let lo = (3.0 * a + b) / 4.0;
        let cond = !(((lo.min(b)) < s && s < lo.max(b))
            && !(mflag && (s - b).abs() >= (b - c).abs() / 2.0)
            && !(!mflag && (s - b).abs() >= (c - d).abs() / 2.0)
            && !(mflag && (b - c).abs() < tol)
            && !(!mflag && (c - d).abs() < tol));
        if cond {
            s = (a + b) / 2.0;
            mflag = true;
        } else {
            mflag = false;
        }
        let fs = f(s);
        d = c;
        c = b;
        fc = fb;
        if fa * fs < 0.0 {
            b = s;
            fb = fs;
        } else {
            a = s;
            fa = fs;
        }
        if fa.abs() < fb.abs() {
            std::mem::swap(&mut a, &mut b);
            std::mem::swap(&mut fa, &mut fb);
        }
    }
    Some(b)
}

/// Newton iteration on a scalar function given value and derivative.
pub fn newton_1d<F: FnMut(f64) -> (f64, f64)>(
    mut f: F,
    x0: f64,
    tol: f64,
    max_iter: usize,
) -> Option<f64> {
    let mut x = x0;
    for _ in 0..max_iter {
        let (v, d) = f(x);
        if d == 0.0 {
            return None;
        }
        let step = v / d;
        x -= step;
        if step.abs() < tol {
            return Some(x);
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

fn simpson_step(fa: Complex64, fm: Complex64, fb: Complex64, h: f64) -> Complex64 {
    (fa + 4.0 * fm + fb) * (h / 6.0)
}

fn adapt<F: Fn(f64) -> Complex64>(
    f: &F,
    a: f64,
    b: f64,
    fa: Complex64,
    fm: Complex64,
    fb: Complex64,
    whole: Complex64,
    tol: f64,
    depth: usize,
) -> Complex64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson_step(fa, flm, fm, m - a);
    let right = simpson_step(fm, frm, fb, b - m);
    let err = left + right - whole;
    if depth == 0 || err.norm() < 15.0 * tol {
        return left + right + err / 15.0;
    }
    adapt(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
        + adapt(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

/// Adaptive Simpson quadrature of a complex-valued function on [a, b].
pub fn adaptive_simpson<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, tol: f64) -> Complex64 {
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson_step(fa, fm, fb, b - a);
    adapt(&f, a, b, fa, fm, fb, whole, tol, 40)
}

// ---------------------------------------------------------------------------
// Least squares
// ---------------------------------------------------------------------------

/// Least-squares fit of y against the monomials x^0..x^degree.
/// Returns the coefficient vector, lowest order first.
pub fn polyfit(x: &[f64], y: &[f64], degree: usize) -> Vec<f64> {
    let n = x.len();
    let mut vand = DMatrix::zeros(n, degree + 1);
    for i in 0..n {
        let mut p = 1.0;
        for j in 0..=degree {
            vand[(i, j)] = p;
            p *= x[i];
        }
    }
    let rhs = DVector::from_column_slice(y);
    let svd = vand.svd(true, true);
    let sol = svd.solve(&rhs, 1e-14).expect("polyfit SVD solve");
    sol.iter().copied().collect()
}

pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2);
    (0..n)
        .map(|i| a + (b - a) * (i as f64) / ((n - 1) as f64))
        .collect()
}
