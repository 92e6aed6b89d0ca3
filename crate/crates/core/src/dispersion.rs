//! The characteristic function F of the linearized operator, its roots on
//! the axes and in a vertical strip, and spectral-signature classification.
//!
//! F(lambda) = lambda (rho/tan(lambda) + 1/tan(h lambda)) - alpha + beta lambda^2
//! is meromorphic with real poles at n*pi (for rho > 0) and n*pi/h. Restricted
//! to the real or imaginary axis it is real valued and even.

use crate::error::{Error, Result};
use crate::numerics::{
    adaptive_simpson, brent, tcot_c, tcot_c_d1, tcot_c_d2, tcoth, tcoth_d1, tcoth_d2,
};
use crate::params::{BifurcationPoint, PhysicalParams};
use num_complex::Complex64;

/// Parameters fixing one characteristic function.
#[derive(Debug, Clone, Copy)]
pub struct DispersionContext {
    pub params: PhysicalParams,
    pub point: BifurcationPoint,
}

impl DispersionContext {
    pub fn new(params: PhysicalParams, point: BifurcationPoint) -> Self {
        Self { params, point }
    }
}

/// Which axis a root scan walks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Real,
    Imaginary,
}

/// Where a located root sits relative to the axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisTag {
    RealAxis,
    ImaginaryAxis,
    OffAxis,
}

/// A root of F with multiplicity, stored as its representative with
/// non-negative real and imaginary parts. The full root set is recovered
/// from the reversible-Hamiltonian symmetry lambda -> -lambda, conj(lambda).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocatedRoot {
    pub location: Complex64,
    pub multiplicity: u32,
    pub axis_tag: AxisTag,
}

impl LocatedRoot {
    /// Number of distinct points in the symmetry orbit of this representative.
    pub fn orbit_size(&self) -> u32 {
        let z = self.location;
        if z.norm() == 0.0 {
            1
        } else if self.axis_tag == AxisTag::OffAxis {
            4
        } else {
            2
        }
    }
}

/// Spectrum classification labels for the strip.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignatureLabel {
    TwoRealPairs,
    TwoImagPairs,
    ComplexQuartet,
    MixedRealImag,
    RealDoublePair,
    ImagDoublePair,
    ZeroDoublePlusRealPair,
    Other,
}

impl SignatureLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            SignatureLabel::TwoRealPairs => "TWO_REAL_PAIRS",
            SignatureLabel::TwoImagPairs => "TWO_IMAG_PAIRS",
            SignatureLabel::ComplexQuartet => "COMPLEX_QUARTET",
            SignatureLabel::MixedRealImag => "MIXED_REAL_IMAG",
            SignatureLabel::RealDoublePair => "REAL_DOUBLE_PAIR",
            SignatureLabel::ImagDoublePair => "IMAG_DOUBLE_PAIR",
            SignatureLabel::ZeroDoublePlusRealPair => "ZERO_DOUBLE_PLUS_REAL_PAIR",
            SignatureLabel::Other => "OTHER",
        }
    }
}

/// Classified strip spectrum.
#[derive(Debug, Clone)]
pub struct SpectralSignature {
    pub label: SignatureLabel,
    pub roots: Vec<LocatedRoot>,
    pub strip_halfwidth: f64,
}

impl SpectralSignature {
    /// Sum of multiplicities over the full symmetry orbits.
    pub fn total_count(&self) -> u32 {
        self.roots
            .iter()
            .map(|r| r.multiplicity * r.orbit_size())
            .sum()
    }
}

const POLE_TOL: f64 = 1e-8;

/// Distance from lambda to the nearest pole of F, together with the pole.
fn nearest_pole(lambda: Complex64, p: &PhysicalParams) -> Option<(f64, f64)> {
    let mut best: Option<(f64, f64)> = None;
    let mut consider = |step: f64| {
        let n = (lambda.re / step).round();
        for m in [n - 1.0, n, n + 1.0] {
            if m == 0.0 {
                continue;
            }
            let pole = m * step;
            let d = (lambda - Complex64::new(pole, 0.0)).norm();
            if best.map_or(true, |(bd, _)| d < bd) {
                best = Some((d, pole));
            }
        }
    };
    if p.rho > 0.0 {
        consider(std::f64::consts::PI);
    }
    consider(std::f64::consts::PI / p.h);
    best
}

/// Evaluate F (order 0) or its derivative dF/dlambda (order 1).
pub fn disp_eval(lambda: Complex64, order: u8, ctx: &DispersionContext) -> Result<Complex64> {
    if let Some((d, pole)) = nearest_pole(lambda, &ctx.params) {
        if d < POLE_TOL {
            return Err(Error::NearPole { pole, dist: d });
        }
    }
    let p = &ctx.params;
    let (alpha, beta) = (ctx.point.alpha, ctx.point.beta);
    let h = p.h;
    let v = match order {
        0 => {
            let mut f = tcot_c(h * lambda) / h - alpha + beta * lambda * lambda;
            if p.rho > 0.0 {
                f += p.rho * tcot_c(lambda);
            }
            f
        }
        1 => {
            let mut f = tcot_c_d1(h * lambda) + 2.0 * beta * lambda;
            if p.rho > 0.0 {
                f += p.rho * tcot_c_d1(lambda);
            }
            f
        }
        _ => return Err(Error::OutOfDomain("disp_eval order must be 0 or 1")),
    };
    Ok(v)
}

/// F restricted to an axis as a real function of the non-negative
/// coordinate t (lambda = t on the real axis, lambda = i t on the
/// imaginary axis), with first and second derivatives in t.
pub(crate) fn axis_fn(axis: Axis, t: f64, ctx: &DispersionContext) -> (f64, f64, f64) {
    let p = &ctx.params;
    let (alpha, beta) = (ctx.point.alpha, ctx.point.beta);
    let h = p.h;
    match axis {
        Axis::Imaginary => {
            let f = p.rho * tcoth(t) + tcoth(h * t) / h - alpha - beta * t * t;
            let d1 = p.rho * tcoth_d1(t) + tcoth_d1(h * t) - 2.0 * beta * t;
            let d2 = p.rho * tcoth_d2(t) + h * tcoth_d2(h * t) - 2.0 * beta;
            (f, d1, d2)
        }
        Axis::Real => {
            let z = Complex64::new(t, 0.0);
            let f = p.rho * tcot_c(z).re + tcot_c(Complex64::new(h * t, 0.0)).re / h - alpha
                + beta * t * t;
            let d1 = p.rho * tcot_c_d1(z).re
                + tcot_c_d1(Complex64::new(h * t, 0.0)).re
                + 2.0 * beta * t;
            let d2 = p.rho * tcot_c_d2(z).re
                + h * tcot_c_d2(Complex64::new(h * t, 0.0)).re
                + 2.0 * beta;
            (f, d1, d2)
        }
    }
}

/// Upper scan bound on the imaginary axis: beyond this beta k^2 dominates
/// k (rho coth k + coth hk), so no further roots exist.
pub fn imag_scan_bound(ctx: &DispersionContext) -> f64 {
    let (alpha, beta) = (ctx.point.alpha, ctx.point.beta);
    let rho = ctx.params.rho;
    2.0 * ((alpha.max(1.0) / beta).sqrt() + (rho + 1.0) / beta + 1.0)
}

/// Roots of F on one axis in (0, halfwidth], plus the root at 0 when
/// present. Simple vs double is decided by |F'| after Newton polishing.
pub fn axis_roots(
    axis: Axis,
    ctx: &DispersionContext,
    halfwidth: f64,
    scan_resolution: f64,
) -> Result<Vec<LocatedRoot>> {
    if scan_resolution <= 0.0 || halfwidth <= 0.0 {
        return Err(Error::OutOfDomain("axis_roots needs positive halfwidth and resolution"));
    }
    let h = ctx.params.h;
    if axis == Axis::Real {
        let pole_window = std::f64::consts::PI.min(std::f64::consts::PI / h);
        if halfwidth >= pole_window {
            return Err(Error::OutOfDomain("real-axis halfwidth must stay below the first pole"));
        }
    }
    let tag = match axis {
        Axis::Real => AxisTag::RealAxis,
        Axis::Imaginary => AxisTag::ImaginaryAxis,
    };
    let to_location = |t: f64| match axis {
        Axis::Real => Complex64::new(t, 0.0),
        Axis::Imaginary => Complex64::new(0.0, t),
    };

    let f0 = axis_fn(axis, 0.0, ctx).0;
    let mut roots: Vec<(f64, u32)> = Vec::new();
    // The function is even, so a zero at the origin is at least double.
    let zero_root = f0.abs() < 1e-11;
    if zero_root {
        roots.push((0.0, 2));
    }

    let n_steps = (halfwidth / scan_resolution).ceil() as usize;
    let ts: Vec<f64> = (0..=n_steps)
        .map(|i| (i as f64) * halfwidth / (n_steps as f64))
        .collect();
    let vals: Vec<(f64, f64)> = ts
        .iter()
        .map(|&t| {
            let (f, d, _) = axis_fn(axis, t, ctx);
            (f, d)
        })
        .collect();

    // Start bracketing after the origin has cleared its (possible) zero.
    let mut start = 0;
    if zero_root {
        while start + 1 < ts.len() && vals[start].0.abs() < 1e-9 {
            start += 1;
        }
    }

    let mut simple: Vec<f64> = Vec::new();
    for i in start..n_steps {
        let (fa, fb) = (vals[i].0, vals[i + 1].0);
        if fa == 0.0 {
            continue;
        }
        if fa * fb < 0.0 {
            let r = brent(
                |t| axis_fn(axis, t, ctx).0,
                ts[i],
                ts[i + 1],
                1e-14,
                200,
            )
            .ok_or(Error::NoConvergence("axis root bracket"))?;
            // polish with Newton on F
            let mut x = r;
            for _ in 0..8 {
                let (f, d, _) = axis_fn(axis, x, ctx);
                if d.abs() < 1e-14 {
                    break;
                }
                x -= f / d;
            }
            simple.push(x);
        }
    }

    // Critical points of F along the axis catch double roots, which touch
    // zero without a sign change.
    let mut doubles: Vec<f64> = Vec::new();
    for i in 0..n_steps {
        let (da, db) = (vals[i].1, vals[i + 1].1);
        if ts[i] == 0.0 && zero_root {
            continue;
        }
        if da * db < 0.0 {
            let c = brent(
                |t| axis_fn(axis, t, ctx).1,
                ts[i],
                ts[i + 1],
                1e-14,
                200,
            )
            .ok_or(Error::NoConvergence("axis critical point bracket"))?;
            let mut x = c;
            for _ in 0..8 {
                let (_, d, dd) = axis_fn(axis, x, ctx);
                if dd.abs() < 1e-14 {
                    break;
                }
                x -= d / dd;
            }
            if x <= 0.0 || x > halfwidth {
                continue;
            }
            let (f, d, _) = axis_fn(axis, x, ctx);
            if f.abs() < 1e-10 && d.abs() < 1e-8 {
                doubles.push(x);
            }
        }
    }

    // A double found through the |F| minimum may coincide with a pair of
    // near-tangent simple brackets; drop those duplicates.
    for &dx in &doubles {
        simple.retain(|&s| (s - dx).abs() > 1e-6);
        roots.push((dx, 2));
    }

    // Two genuinely distinct simple roots closer than twice the resolution
    // cannot be trusted apart.
    simple.sort_by(|a, b| a.partial_cmp(b).unwrap());
    for w in simple.windows(2) {
        if (w[1] - w[0]).abs() < 2.0 * scan_resolution && (w[1] - w[0]).abs() > 1e-9 {
            return Err(Error::ResolutionTooCoarse(w[0]));
        }
    }
    for s in simple {
        if s > 1e-9 {
            roots.push((s, 1));
        }
    }

    roots.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    roots.dedup_by(|a, b| (a.0 - b.0).abs() < 1e-9);
    Ok(roots
        .into_iter()
        .map(|(t, m)| LocatedRoot {
            location: to_location(t),
            multiplicity: m,
            axis_tag: if t == 0.0 { tag } else { tag },
        })
        .collect())
}

/// Real poles of F strictly inside |x| < a, counted with multiplicity one
/// per distinct location.
fn poles_inside(p: &PhysicalParams, a: f64) -> usize {
    let mut locs: Vec<f64> = Vec::new();
    let mut push_family = |step: f64| {
        let mut n = 1.0;
        while n * step < a {
            locs.push(n * step);
            n += 1.0;
        }
    };
    if p.rho > 0.0 {
        push_family(std::f64::consts::PI);
    }
    push_family(std::f64::consts::PI / p.h);
    locs.sort_by(|x, y| x.partial_cmp(y).unwrap());
    locs.dedup_by(|x, y| (*x - *y).abs() < 1e-12);
    // each distinct positive location together with its mirror image
    2 * locs.len()
}

fn contour_integral(ctx: &DispersionContext, a: f64, b: f64, tol: f64) -> Result<Complex64> {
    let integrand = |z: Complex64, dz: Complex64| -> Complex64 {
        let f = disp_eval(z, 0, ctx).unwrap_or(Complex64::new(f64::NAN, 0.0));
        let d = disp_eval(z, 1, ctx).unwrap_or(Complex64::new(f64::NAN, 0.0));
        d / f * dz
    };
    // counterclockwise rectangle with corners (±a, ±ib)
    let right = adaptive_simpson(
        |t| integrand(Complex64::new(a, t), Complex64::new(0.0, 1.0)),
        -b,
        b,
        tol,
    );
    let top = adaptive_simpson(
        |t| integrand(Complex64::new(t, b), Complex64::new(-1.0, 0.0)),
        -a,
        a,
        tol,
    );
    let left = adaptive_simpson(
        |t| integrand(Complex64::new(-a, -t), Complex64::new(0.0, -1.0)),
        -b,
        b,
        tol,
    );
    let bottom = adaptive_simpson(
        |t| integrand(Complex64::new(t, -b), Complex64::new(1.0, 0.0)),
        -a,
        a,
        tol,
    );
    let total = right + top + left + bottom;
    if !total.re.is_finite() || !total.im.is_finite() {
        return Err(Error::ContourUnresolved(f64::NAN));
    }
    Ok(total)
}

fn boundary_clear(ctx: &DispersionContext, a: f64, b: f64) -> bool {
    let n = 160;
    for i in 0..=n {
        let t = -1.0 + 2.0 * (i as f64) / (n as f64);
        for z in [
            Complex64::new(a, b * t),
            Complex64::new(-a, b * t),
            Complex64::new(a * t, b),
            Complex64::new(a * t, -b),
        ] {
            match disp_eval(z, 0, ctx) {
                Ok(v) => {
                    if v.norm() < 1e-6 {
                        return false;
                    }
                }
                Err(_) => return false,
            }
        }
    }
    true
}

/// Number of zeros of F (with multiplicity) inside the rectangle
/// |Re| < re_halfwidth, |Im| < im_halfheight, by the argument principle.
pub fn count_roots_rect(
    ctx: &DispersionContext,
    re_halfwidth: f64,
    im_halfheight: f64,
) -> Result<usize> {
    let (mut a, mut b) = (re_halfwidth, im_halfheight);
    // inflate by up to 1% if the boundary runs too close to a zero or pole
    let mut inflated = 0;
    while !boundary_clear(ctx, a, b) && inflated < 2 {
        a *= 1.005;
        b *= 1.005;
        inflated += 1;
    }
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut tol = 1e-8;
    for _ in 0..3 {
        let total = contour_integral(ctx, a, b, tol)?;
        let winding = (total / Complex64::new(0.0, two_pi)).re;
        let im_part = (total / Complex64::new(0.0, two_pi)).im;
        let nearest = winding.round();
        if (winding - nearest).abs() <= 0.25 && im_part.abs() <= 0.25 {
            let z_minus_p = nearest as i64;
            let p_count = poles_inside(&ctx.params, a) as i64;
            let z = z_minus_p + p_count;
            if z < 0 {
                return Err(Error::ContourUnresolved(winding));
            }
            return Ok(z as usize);
        }
        tol /= 100.0;
    }
    let total = contour_integral(ctx, a, b, tol)?;
    Err(Error::ContourUnresolved(
        (total / Complex64::new(0.0, two_pi)).re,
    ))
}

/// Newton search for an off-axis root of F starting from `seed`; returns
/// the representative in the closed first quadrant if it converges.
pub fn off_axis_root(ctx: &DispersionContext, seed: Complex64) -> Option<Complex64> {
    let mut z = seed;
    for _ in 0..60 {
        let f = disp_eval(z, 0, ctx).ok()?;
        let d = disp_eval(z, 1, ctx).ok()?;
        if d.norm() == 0.0 {
            return None;
        }
        let step = f / d;
        z -= step;
        if step.norm() < 1e-13 {
            let f = disp_eval(z, 0, ctx).ok()?;
            if f.norm() < 1e-9 {
                return Some(Complex64::new(z.re.abs(), z.im.abs()));
            }
            return None;
        }
    }
    None
}

/// Default strip halfwidth: pole-free analyticity window with a margin.
pub fn default_strip_halfwidth(p: &PhysicalParams) -> f64 {
    0.9 * std::f64::consts::PI.min(std::f64::consts::PI / p.h)
}

/// Classify the spectrum of L in the strip by combining axis scans with
/// an argument-principle count over the matching rectangle.
pub fn spectral_signature(
    ctx: &DispersionContext,
    strip_halfwidth: Option<f64>,
) -> Result<SpectralSignature> {
    let gamma = strip_halfwidth.unwrap_or_else(|| default_strip_halfwidth(&ctx.params));
    let m_imag = imag_scan_bound(ctx);
    let resolution = 5e-4;

    let real_roots = axis_roots(Axis::Real, ctx, gamma, resolution)?;
    let imag_roots = axis_roots(Axis::Imaginary, ctx, m_imag, resolution)?;

    let mut roots: Vec<LocatedRoot> = Vec::new();
    for r in real_roots.iter().chain(imag_roots.iter()) {
        if r.location.norm() == 0.0 && roots.iter().any(|q| q.location.norm() == 0.0) {
            continue;
        }
        roots.push(*r);
    }

    let axis_count: u32 = roots.iter().map(|r| r.multiplicity * r.orbit_size()).sum();
    let total = count_roots_rect(ctx, gamma, m_imag)? as i64;
    let off = total - axis_count as i64;
    let quartets = if off >= 0 && off % 4 == 0 { off / 4 } else { -1 };

    // try to locate a representative for each quartet
    if quartets > 0 {
        let k_seed = imag_roots
            .iter()
            .map(|r| r.location.im)
            .fold(0.0f64, f64::max)
            .max(1.0);
        for guess in [
            Complex64::new(0.05, k_seed),
            Complex64::new(0.2, k_seed),
            Complex64::new(0.1, 0.5 * k_seed),
        ] {
            if let Some(z) = off_axis_root(ctx, guess) {
                if z.re > 1e-7 && z.im > 1e-7 && z.re < gamma && z.im < m_imag {
                    roots.push(LocatedRoot {
                        location: z,
                        multiplicity: 1,
                        axis_tag: AxisTag::OffAxis,
                    });
                    break;
                }
            }
        }
    }

    let zero = roots
        .iter()
        .find(|r| r.location.norm() == 0.0)
        .map(|r| r.multiplicity);
    let reals: Vec<&LocatedRoot> = roots
        .iter()
        .filter(|r| r.axis_tag == AxisTag::RealAxis && r.location.norm() > 0.0)
        .collect();
    let imags: Vec<&LocatedRoot> = roots
        .iter()
        .filter(|r| r.axis_tag == AxisTag::ImaginaryAxis && r.location.norm() > 0.0)
        .collect();

    let n_real_simple = reals.iter().filter(|r| r.multiplicity == 1).count();
    let n_real_double = reals.iter().filter(|r| r.multiplicity == 2).count();
    let n_imag_simple = imags.iter().filter(|r| r.multiplicity == 1).count();
    let n_imag_double = imags.iter().filter(|r| r.multiplicity == 2).count();

    let label = match (zero, n_real_simple, n_real_double, n_imag_simple, n_imag_double, quartets) {
        (None, 2, 0, 0, 0, 0) => SignatureLabel::TwoRealPairs,
        (None, 0, 0, 2, 0, 0) => SignatureLabel::TwoImagPairs,
        (None, 0, 0, 0, 0, 1) => SignatureLabel::ComplexQuartet,
        (None, 1, 0, 1, 0, 0) => SignatureLabel::MixedRealImag,
        (None, 0, 1, 0, 0, 0) => SignatureLabel::RealDoublePair,
        (None, 0, 0, 0, 1, 0) => SignatureLabel::ImagDoublePair,
        (Some(2), 1, 0, 0, 0, 0) => SignatureLabel::ZeroDoublePlusRealPair,
        _ => SignatureLabel::Other,
    };

    Ok(SpectralSignature {
        label,
        roots,
        strip_halfwidth: gamma,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::validate_params;

    fn ctx(rho: f64, h: f64, beta: f64, alpha: f64) -> DispersionContext {
        DispersionContext::new(
            validate_params(rho, h).unwrap(),
            BifurcationPoint::new(beta, alpha),
        )
    }

    #[test]
    fn value_at_zero_is_alpha_gap() {
        let c = ctx(0.5, 2.0, 0.6, 1.3);
        let v = disp_eval(Complex64::new(0.0, 0.0), 0, &c).unwrap();
        assert!((v.re - (0.5 + 0.5 - 1.3)).abs() < 1e-14);
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn imaginary_axis_matches_hyperbolic_form() {
        let c = ctx(0.4, 1.5, 0.5, 1.2);
        for &k in &[0.3, 1.0, 2.7] {
            let v = disp_eval(Complex64::new(0.0, k), 0, &c).unwrap();
            let direct = 0.4 * tcoth(k) + tcoth(1.5 * k) / 1.5 - 1.2 - 0.5 * k * k;
            assert!((v.re - direct).abs() < 1e-14);
            assert!(v.im.abs() < 1e-14);
        }
    }

    #[test]
    fn near_pole_is_rejected() {
        let c = ctx(0.5, 1.0, 0.5, 1.2);
        let z = Complex64::new(std::f64::consts::PI + 1e-9, 0.0);
        assert!(matches!(
            disp_eval(z, 0, &c),
            Err(Error::NearPole { .. })
        ));
        // with rho = 0 the pole family at n*pi disappears (h = 1 still has
        // its own family at the same place, so use h != 1)
        let c0 = ctx(0.0, 0.7, 0.5, 1.2);
        assert!(disp_eval(z, 0, &c0).is_ok());
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let c = ctx(0.3, 1.2, 0.4, 1.1);
        let z = Complex64::new(0.2, 0.9);
        let d = disp_eval(z, 1, &c).unwrap();
        let e = 1e-6;
        let fd = (disp_eval(z + Complex64::new(e, 0.0), 0, &c).unwrap()
            - disp_eval(z - Complex64::new(e, 0.0), 0, &c).unwrap())
            / (2.0 * e);
        assert!((d - fd).norm() < 1e-8);
    }

    #[test]
    fn axis_function_is_real_on_axes() {
        let c = ctx(0.3, 1.4, 0.45, 1.15);
        for &t in &[0.0, 0.4, 1.1, 1.9] {
            let vr = disp_eval(Complex64::new(t, 0.0), 0, &c).unwrap();
            let vi = disp_eval(Complex64::new(0.0, t), 0, &c).unwrap();
            assert!(vr.im.abs() < 1e-13);
            assert!(vi.im.abs() < 1e-13);
        }
    }

    #[test]
    fn zero_root_reported_double_on_c3() {
        // alpha = alpha0, beta > beta0: spectrum {0 (double), ±k0 (simple)}
        let p = validate_params(0.5, 1.0).unwrap();
        let c = ctx(0.5, 1.0, p.beta0() + 0.2, p.alpha0());
        let roots = axis_roots(Axis::Real, &c, default_strip_halfwidth(&p), 5e-4).unwrap();
        let zero = roots.iter().find(|r| r.location.norm() == 0.0).unwrap();
        assert_eq!(zero.multiplicity, 2);
        let pos: Vec<_> = roots.iter().filter(|r| r.location.re > 0.0).collect();
        assert_eq!(pos.len(), 1);
        assert_eq!(pos[0].multiplicity, 1);
    }

    #[test]
    fn resolution_guard_triggers() {
        // just below C3 on the real axis two roots sit ~0.07 apart near 0;
        // an overly coarse scan must refuse rather than merge them
        let p = validate_params(0.5, 1.0).unwrap();
        let c = ctx(0.5, 1.0, p.beta0() + 0.2, p.alpha0() + 1e-3);
        let r = axis_roots(Axis::Real, &c, 2.0, 0.5);
        assert!(matches!(r, Err(Error::ResolutionTooCoarse(_)) | Err(Error::NoConvergence(_))) || {
            // fine scans see both roots; ensure the coarse call did not
            // silently report a single simple root
            r.map(|v| v.len() >= 2).unwrap_or(false)
        });
    }

    #[test]
    fn count_matches_mirror_orientation() {
        let p = validate_params(0.5, 1.0).unwrap();
        let c = ctx(0.5, 1.0, p.beta0() + 0.2, p.alpha0() - 0.05);
        let n1 = count_roots_rect(&c, 1.8, 2.5).unwrap();
        let n2 = count_roots_rect(&c, 1.8001, 2.5001).unwrap();
        assert_eq!(n1, n2);
    }
}
