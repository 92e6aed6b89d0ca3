//! Closed-form normal-form and reduced-Hamiltonian coefficients for the
//! three resonances, Laurent asymptotics of the Hopf cubic coefficient,
//! bright/dark classification and NLS envelopes.

use crate::curves::{alpha_star, alpha_star_gap, beta_star};
use crate::error::{Error, Result};
use crate::numerics::{curve_b_hyp_gap, tcoth_m1_mq};
use crate::operator::{gamma12, gamma1_closed};
use crate::parallel::maybe_par_map;
use crate::params::{BifurcationPoint, PhysicalParams};

/// Hopf normal-form coefficients at one wavenumber.
#[derive(Debug, Clone, Copy)]
pub struct HopfCoeffs {
    pub k: f64,
    pub c1: f64,
    pub c3: f64,
    pub gamma1: f64,
}

/// Reduced-Hamiltonian coefficients of the real 1:1 resonance.
#[derive(Debug, Clone, Copy)]
pub struct R11Coeffs {
    /// (rho - 1/h^2)/(2 gamma3^(3/2)), the quadratic weight.
    pub c1_00: f64,
    pub c2_00: f64,
    pub c2_10: f64,
    pub c1_01: f64,
    pub c1_10: f64,
    pub c1_20: f64,
    /// (rho + 1/h^3)/gamma3^2 + 2(rho-1)^2/(225 gamma3^3); the quartic
    /// weight with the undetermined critical-ratio correction dropped.
    pub e1_00_main: f64,
    /// Coefficient c in f(u) = -u + c kappa u^2 + u^3.
    pub cubic_c: f64,
}

/// Reduced-Hamiltonian coefficients of the 0^2 resonance.
#[derive(Debug, Clone, Copy)]
pub struct O2Coeffs {
    pub c02_0: f64,
    pub c20_1: f64,
    pub c30_0: f64,
    pub c40_0: f64,
}

/// Solitary-wave type predicted by the signs of (delta, c3).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HopfClass {
    /// Focusing case delta > 0, c3 > 0: two symmetric sech-envelope waves.
    /// The same parameters also carry countable multipulse families.
    Bright,
    BrightMultipulseFamily,
    /// Defocusing case delta < 0, c3 < 0: tanh-front envelopes.
    Dark,
    Undetermined,
}

impl HopfClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            HopfClass::Bright => "BRIGHT",
            HopfClass::BrightMultipulseFamily => "BRIGHT_MULTIPULSE_FAMILY",
            HopfClass::Dark => "DARK",
            HopfClass::Undetermined => "UNDETERMINED",
        }
    }
}

/// Envelope kind for the NLS limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnvelopeKind {
    Bright,
    Dark,
}

/// c1 = -1/gamma1(k); always negative since gamma1 > 0.
pub fn hopf_c1(k: f64, p: &PhysicalParams) -> f64 {
    -1.0 / gamma1_closed(k, p)
}

/// The second-harmonic bracket alpha + 4 beta k^2 - 2k coth(2hk)
/// - 2 rho k coth(2k) = -F(2ik) at the C2 point. It behaves like
/// 9 gamma3 k^4 for small k, so the small-k branch assembles it from
/// cancellation-free kernels.
fn bracket_second_harmonic(k: f64, p: &PhysicalParams) -> f64 {
    let (rho, h) = (p.rho, p.h);
    if k < 0.1 {
        let kk = 2.0 * k;
        let beta_gap = rho * curve_b_hyp_gap(k) + h * curve_b_hyp_gap(h * k);
        let g = rho * tcoth_m1_mq(kk) + tcoth_m1_mq(h * kk) / h + kk * kk * beta_gap
            - alpha_star_gap(k, p);
        -g
    } else {
        let alpha = alpha_star(k, p);
        let beta = beta_star(k, p);
        alpha + 4.0 * beta * k * k
            - 2.0 * k / (2.0 * h * k).tanh()
            - 2.0 * rho * k / (2.0 * k).tanh()
    }
}

/// The zero-mode bracket rho + 1/h - alpha = alpha0 - alpha*, which
/// equals -gamma3 k^4 + O(k^6) on the curve.
fn bracket_zero_mode(k: f64, p: &PhysicalParams) -> f64 {
    -alpha_star_gap(k, p)
}

/// Hopf cubic coefficient c3(k), with (beta, alpha) the C2 values at k.
/// The supplied point is validated against the curve; the closed-form
/// curve values are used inside the formula.
pub fn hopf_c3(k: f64, p: &PhysicalParams, pt: &BifurcationPoint) -> Result<f64> {
    if k <= 0.0 {
        return Err(Error::OutOfDomain("hopf_c3 needs k > 0"));
    }
    let beta = beta_star(k, p);
    let alpha = alpha_star(k, p);
    if (pt.beta - beta).abs() > 1e-9 || (pt.alpha - alpha).abs() > 1e-9 {
        return Err(Error::CaseMismatch("point is not the C2 curve point at k"));
    }
    let (rho, h) = (p.rho, p.h);
    let s = k;

    // Both brackets vanish like k^4 toward the codimension-two point, so
    // the singularity guard scales with that floor; away from it the
    // absolute threshold applies.
    let guard = 1e-10 * k.powi(4).min(1.0);
    let d1 = bracket_second_harmonic(k, p);
    let d2 = bracket_zero_mode(k, p);
    if d1.abs() < guard {
        return Err(Error::SingularBracket(d1));
    }
    if d2.abs() < guard {
        return Err(Error::SingularBracket(d2));
    }

    let th = |w: f64| w.tanh();
    let sh = |w: f64| w.sinh();

    let b1 = s * s / th(h * s).powi(2) + 4.0 * s * s / (th(h * s) * th(2.0 * h * s)) - 3.0 * s * s
        - rho * (s * s / th(s).powi(2) + 4.0 * s * s / (th(s) * th(2.0 * s)) - 3.0 * s * s);
    let b2 = s * s / sh(h * s).powi(2) + 2.0 * s / (h * th(h * s))
        - rho * (s * s / sh(s).powi(2) + 2.0 * s / th(s));
    let t = 6.0 * s.powi(3) / th(h * s)
        - 4.0 * s.powi(3) / (th(h * s).powi(2) * th(2.0 * h * s))
        - 4.0 * s * s / (h * th(h * s).powi(2))
        + rho
            * (6.0 * s.powi(3) / th(s)
                - 4.0 * s.powi(3) / (th(s).powi(2) * th(2.0 * s))
                - 4.0 * s * s / th(s).powi(2))
        - 1.5 * s.powi(4) * beta;

    let brace = -0.5 * b1 * b1 / d1 + b2 * b2 / d2 + t;
    let g1 = gamma1_closed(k, p);
    Ok(-brace / (2.0 * g1 * g1))
}

/// Hopf coefficients (c1, c3, gamma1) at k, using the C2 curve point.
pub fn hopf_coeffs(k: f64, p: &PhysicalParams) -> Result<HopfCoeffs> {
    let pt = BifurcationPoint::new(beta_star(k, p), alpha_star(k, p));
    Ok(HopfCoeffs {
        k,
        c1: hopf_c1(k, p),
        c3: hopf_c3(k, p, &pt)?,
        gamma1: gamma1_closed(k, p),
    })
}

/// Leading Laurent data of 2 gamma1^2 c3(k):
///   a1 = 855 (rho - 1/h^2)^2 / (h^3 + rho),
/// and at the critical ratio rho = 1/h^2 also
///   a3 = 15 h^2 (1 - 1/h^2)^2 / (2 (1 + h^5)) + 6 (1 + h)/h^3.
/// The measured asymptotics are k^4 * 2 gamma1^2 c3(k) -> a1/2 and, at
/// the critical ratio, 2 gamma1^2 c3(k) -> a3 as k -> 0.
pub fn laurent_coeffs(p: &PhysicalParams) -> (f64, Option<f64>) {
    let (rho, h) = (p.rho, p.h);
    let m = rho - 1.0 / (h * h);
    let a1 = 855.0 * m * m / (h.powi(3) + rho);
    let a3 = if m.abs() < 1e-12 {
        Some(
            15.0 * h * h * (1.0 - 1.0 / (h * h)).powi(2) / (2.0 * (1.0 + h.powi(5)))
                + 6.0 * (1.0 + h) / h.powi(3),
        )
    } else {
        None
    };
    (a1, a3)
}

/// Wave type from the signs of the detuning delta and the cubic
/// coefficient c3 (c1 < 0 is automatic).
pub fn classify_hopf(delta: f64, c3: f64) -> HopfClass {
    if c3.abs() < 1e-12 {
        return HopfClass::Undetermined;
    }
    if delta > 0.0 && c3 > 0.0 {
        HopfClass::Bright
    } else if delta < 0.0 && c3 < 0.0 {
        HopfClass::Dark
    } else {
        HopfClass::Undetermined
    }
}

/// Amplitude and width of the envelope solving
/// A'' + sgn(delta) c1 A + 2 c3 A |A|^2 = 0:
/// bright A = a sech(b x) with b^2 = -c1, a^2 = -c1/c3;
/// dark A = a tanh(b x) with b^2 = -c1/2, a^2 = c1/(2 c3).
pub fn nls_envelope(kind: EnvelopeKind, delta: f64, c1: f64, c3: f64) -> Result<(f64, f64)> {
    if c1 >= 0.0 {
        return Err(Error::SignMismatch("c1 must be negative"));
    }
    match kind {
        EnvelopeKind::Bright => {
            if delta <= 0.0 || c3 <= 0.0 {
                return Err(Error::SignMismatch("bright needs delta > 0 and c3 > 0"));
            }
            Ok(((-c1 / c3).sqrt(), (-c1).sqrt()))
        }
        EnvelopeKind::Dark => {
            if delta >= 0.0 || c3 >= 0.0 {
                return Err(Error::SignMismatch("dark needs delta < 0 and c3 < 0"));
            }
            Ok(((c1 / (2.0 * c3)).sqrt(), (-c1 / 2.0).sqrt()))
        }
    }
}

/// Pointwise residual of the NLS equation for the closed-form envelope.
pub fn nls_residual(
    kind: EnvelopeKind,
    delta: f64,
    c1: f64,
    c3: f64,
    a: f64,
    b: f64,
    x: f64,
) -> f64 {
    let sgn = if delta > 0.0 { 1.0 } else { -1.0 };
    match kind {
        EnvelopeKind::Bright => {
            let s = 1.0 / (b * x).cosh();
            let amp = a * s;
            let second = a * b * b * (s - 2.0 * s * s * s);
            second + sgn * c1 * amp + 2.0 * c3 * amp.powi(3)
        }
        EnvelopeKind::Dark => {
            let t = (b * x).tanh();
            let amp = a * t;
            let second = a * b * b * (-2.0 * t + 2.0 * t * t * t);
            second + sgn * c1 * amp + 2.0 * c3 * amp.powi(3)
        }
    }
}

/// Closed-form coefficients of the real 1:1 reduced Hamiltonian.
pub fn r11_coeffs(p: &PhysicalParams) -> R11Coeffs {
    let (rho, h) = (p.rho, p.h);
    let g3 = p.gamma3();
    let g4 = p.gamma4();
    let m = rho - 1.0 / (h * h);
    let quartic = rho + 1.0 / h.powi(3) + 2.0 * (rho - 1.0) * (rho - 1.0) / (225.0 * g3);
    R11Coeffs {
        c1_00: m / (2.0 * g3.powf(1.5)),
        c2_00: (3.0 * m * g4 / g3 + (rho - 1.0) / 3.0) / (5.0 * g3.powf(1.5)),
        c2_10: -1.0 / (6.0 * g3),
        c1_01: -1.0 / (2.0 * g3),
        c1_10: 0.0,
        c1_20: 1.0 / (18.0 * g3 * g3),
        e1_00_main: quartic / (g3 * g3),
        cubic_c: 3.0 / (4.0 * g3.sqrt() * quartic.sqrt()),
    }
}

/// Closed-form coefficients of the 0^2 reduced Hamiltonian at beta > beta0.
pub fn o2_coeffs(p: &PhysicalParams, beta: f64) -> Result<O2Coeffs> {
    let beta0 = p.beta0();
    if beta <= beta0 {
        return Err(Error::BetaBelowBeta0 { beta, beta0 });
    }
    let g5 = beta - beta0;
    let m = p.rho - 1.0 / (p.h * p.h);
    Ok(O2Coeffs {
        c02_0: 0.5,
        c20_1: -1.0 / (2.0 * g5),
        c30_0: m / (2.0 * g5.powf(1.5)),
        c40_0: (p.rho + 1.0 / p.h.powi(3)) / (g5 * g5),
    })
}

/// One row of a c3 scan along C2.
#[derive(Debug, Clone, Copy)]
pub struct C3ScanRow {
    pub k: f64,
    pub beta: f64,
    pub alpha: f64,
    pub gamma1: f64,
    pub c1: f64,
    pub c3: f64,
    /// 2 gamma1 c3, the figure-caption scaling.
    pub two_g1_c3: f64,
    /// 2 gamma1^2 c3, the Laurent scaling.
    pub two_g1sq_c3: f64,
}

/// Scan c3 along C2 over [k_min, k_max] with n uniformly spaced samples.
pub fn c3_scan(p: &PhysicalParams, k_min: f64, k_max: f64, n: usize) -> Result<Vec<C3ScanRow>> {
    if n < 2 || k_min <= 0.0 || k_max <= k_min {
        return Err(Error::OutOfDomain("c3_scan needs k_max > k_min > 0 and n >= 2"));
    }
    let ks: Vec<f64> = (0..n)
        .map(|i| k_min + (k_max - k_min) * (i as f64) / ((n - 1) as f64))
        .collect();
    let pc = *p;
    let rows = maybe_par_map(ks, move |k| -> Result<C3ScanRow> {
        let beta = beta_star(k, &pc);
        let alpha = alpha_star(k, &pc);
        let pt = BifurcationPoint::new(beta, alpha);
        let c3 = hopf_c3(k, &pc, &pt)?;
        let g1 = gamma1_closed(k, &pc);
        Ok(C3ScanRow {
            k,
            beta,
            alpha,
            gamma1: g1,
            c1: -1.0 / g1,
            c3,
            two_g1_c3: 2.0 * g1 * c3,
            two_g1sq_c3: 2.0 * g1 * g1 * c3,
        })
    });
    rows.into_iter().collect()
}

/// Number of sign changes of c3 along a scan (exact zeros are skipped).
pub fn c3_sign_changes(rows: &[C3ScanRow]) -> usize {
    let mut changes = 0;
    let mut prev: Option<f64> = None;
    for r in rows {
        let s = r.c3.signum();
        if s == 0.0 {
            continue;
        }
        if let Some(q) = prev {
            if q != s {
                changes += 1;
            }
        }
        prev = Some(s);
    }
    changes
}

/// (gamma1, gamma2) with gamma2 from quadrature; see the operator module.
pub fn hopf_gamma12(k: f64, p: &PhysicalParams) -> Result<(f64, f64)> {
    gamma12(k, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::validate_params;

    fn curve_pt(k: f64, p: &PhysicalParams) -> BifurcationPoint {
        BifurcationPoint::new(beta_star(k, p), alpha_star(k, p))
    }

    #[test]
    fn c1_is_negative_and_matches_gamma1() {
        for (rho, h) in [(0.0, 1.0), (0.3, 0.5), (0.6, 2.0), (0.9, 1.0)] {
            let p = validate_params(rho, h).unwrap();
            for k in [0.3, 1.0, 3.0] {
                let c1 = hopf_c1(k, &p);
                assert!(c1 < 0.0);
                let g1 = gamma1_closed(k, &p);
                assert!((-1.0 / c1 - g1).abs() <= 1e-15 * g1.abs());
            }
        }
    }

    #[test]
    fn c1_consistent_with_quadrature_gamma1() {
        let p = validate_params(0.0, 1.0).unwrap();
        let (g1_closed, _) = hopf_gamma12(1.0, &p).unwrap();
        assert!((hopf_c1(1.0, &p) + 1.0 / g1_closed).abs() < 1e-12);
    }

    #[test]
    fn c3_positive_for_surface_case() {
        let p = validate_params(0.0, 1.0).unwrap();
        for k in [0.5, 1.0, 2.0] {
            let c3 = hopf_c3(k, &p, &curve_pt(k, &p)).unwrap();
            assert!(c3 > 0.0, "c3({k}) = {c3}");
        }
    }

    #[test]
    fn c3_rejects_off_curve_points() {
        let p = validate_params(0.5, 1.0).unwrap();
        let mut pt = curve_pt(1.0, &p);
        pt.alpha += 1e-3;
        assert!(matches!(hopf_c3(1.0, &p, &pt), Err(Error::CaseMismatch(_))));
    }

    #[test]
    fn laurent_a1_limit_holds() {
        // k^4 * 2 gamma1^2 c3 -> a1/2; spot value frozen from a 60-digit
        // evaluation of the same closed forms
        let p = validate_params(0.5, 1.0).unwrap();
        let (a1, _) = laurent_coeffs(&p);
        assert_eq!(a1, 855.0 * 0.25 / 1.5);
        let k = 1e-2f64;
        let q = 2.0 * gamma1_closed(k, &p).powi(2) * hopf_c3(k, &p, &curve_pt(k, &p)).unwrap();
        let scaled = q * k.powi(4);
        assert!(
            (scaled - a1 / 2.0).abs() / (a1 / 2.0) < 5e-4,
            "k^4 2g1^2 c3 = {scaled}, a1/2 = {}",
            a1 / 2.0
        );
        assert!((scaled - 71.25325017).abs() < 1e-5);
    }

    #[test]
    fn laurent_error_decreases_monotonically() {
        let p = validate_params(0.5, 1.0).unwrap();
        let (a1, _) = laurent_coeffs(&p);
        let mut last = f64::INFINITY;
        for j in 0..6 {
            let k = 10f64.powf(-2.0 - 0.2 * j as f64);
            let q = 2.0 * gamma1_closed(k, &p).powi(2) * hopf_c3(k, &p, &curve_pt(k, &p)).unwrap();
            let err = (q * k.powi(4) - a1 / 2.0).abs();
            assert!(err < last, "error not monotone at k = {k}: {err} vs {last}");
            last = err;
        }
    }

    #[test]
    fn laurent_a3_at_critical_ratio() {
        let p = validate_params(0.25, 2.0).unwrap();
        let (a1, a3) = laurent_coeffs(&p);
        assert_eq!(a1, 0.0);
        let a3 = a3.unwrap();
        assert!((a3 - 2.761363636363636).abs() < 1e-12);
        let k = 1e-2;
        let q = 2.0 * gamma1_closed(k, &p).powi(2) * hopf_c3(k, &p, &curve_pt(k, &p)).unwrap();
        assert!((q - a3).abs() / a3 < 1e-3, "2g1^2c3 = {q} vs a3 = {a3}");

        let p = validate_params(0.5, 1.0).unwrap();
        assert!(laurent_coeffs(&p).1.is_none());
        let p = validate_params(0.0, 1.0).unwrap();
        assert_eq!(laurent_coeffs(&p).0, 855.0);
    }

    #[test]
    fn c3_positive_at_small_k_over_sample_grid() {
        for &rho in &[0.0, 0.3, 0.6, 0.9] {
            for &h in &[0.5, 1.0, 2.0] {
                let p = validate_params(rho, h).unwrap();
                for &k in &[0.01, 0.05] {
                    let c3 = hopf_c3(k, &p, &curve_pt(k, &p)).unwrap();
                    assert!(c3 > 0.0, "c3 <= 0 at rho={rho} h={h} k={k}");
                }
            }
        }
    }

    #[test]
    fn c3_sign_change_count_for_large_rho() {
        let p = validate_params(0.9, 1.0).unwrap();
        let rows = c3_scan(&p, 0.1, 10.0, 400).unwrap();
        assert_eq!(c3_sign_changes(&rows), 1);
        // the flip sits near k = 3.25 per the high-precision scan
        let flip = rows.windows(2).find(|w| w[0].c3 * w[1].c3 < 0.0).unwrap();
        assert!((flip[0].k - 3.25).abs() < 0.1);
    }

    #[test]
    fn c3_scan_is_continuous() {
        let p = validate_params(0.5, 1.0).unwrap();
        let rows = c3_scan(&p, 0.5, 3.0, 200).unwrap();
        for w in rows.windows(3) {
            let slope = (w[2].c3 - w[0].c3) / (w[2].k - w[0].k);
            let jump = (w[1].c3 - w[0].c3).abs();
            let allowed = 10.0 * slope.abs().max(1.0) * (w[1].k - w[0].k);
            assert!(jump <= allowed, "jump {jump} at k={}", w[1].k);
        }
    }

    #[test]
    fn classification_table() {
        assert_eq!(classify_hopf(1e-3, 0.2), HopfClass::Bright);
        assert_eq!(classify_hopf(-1e-3, -0.2), HopfClass::Dark);
        assert_eq!(classify_hopf(1e-3, 0.0), HopfClass::Undetermined);
        assert_eq!(classify_hopf(1e-3, -0.2), HopfClass::Undetermined);
        assert_eq!(classify_hopf(-1e-3, 0.2), HopfClass::Undetermined);
    }

    #[test]
    fn nls_envelope_closed_forms() {
        let (a, b) = nls_envelope(EnvelopeKind::Bright, 1.0, -1.0, 1.0).unwrap();
        assert_eq!((a, b), (1.0, 1.0));
        for i in 0..=100 {
            let x = -20.0 + 40.0 * i as f64 / 100.0;
            assert!(nls_residual(EnvelopeKind::Bright, 1.0, -1.0, 1.0, a, b, x).abs() < 1e-14);
        }
        let (a, b) = nls_envelope(EnvelopeKind::Dark, -1.0, -2.0, -1.0).unwrap();
        assert!((b * b - 1.0).abs() < 1e-15);
        assert!((a * a - 1.0).abs() < 1e-15);
        for i in 0..=100 {
            let x = -20.0 + 40.0 * i as f64 / 100.0;
            assert!(nls_residual(EnvelopeKind::Dark, -1.0, -2.0, -1.0, a, b, x).abs() < 1e-14);
        }
        assert!(matches!(
            nls_envelope(EnvelopeKind::Bright, -1.0, -1.0, 1.0),
            Err(Error::SignMismatch(_))
        ));
    }

    #[test]
    fn r11_coefficient_values() {
        let p = validate_params(0.25, 2.0).unwrap();
        let c = r11_coeffs(&p);
        assert_eq!(c.c1_00, 0.0);
        assert_eq!(c.c1_10, 0.0);

        let p = validate_params(0.0, 1.0).unwrap();
        let c = r11_coeffs(&p);
        assert!((c.c2_10 + 7.5).abs() < 1e-12);
        assert!(c.e1_00_main > 0.0);

        // the quadratic weights of both resonances share the sign of
        // rho - 1/h^2 across a rho scan
        let h = 2.0;
        for rho in [0.05, 0.2, 0.3, 0.6, 0.9] {
            let p = validate_params(rho, h).unwrap();
            let c = r11_coeffs(&p);
            let o = o2_coeffs(&p, p.beta0() + 0.4).unwrap();
            let m: f64 = rho - 1.0 / (h * h);
            assert_eq!(c.c1_00.signum(), m.signum());
            assert_eq!(o.c30_0.signum(), m.signum());
        }
    }

    #[test]
    fn o2_coefficient_values() {
        let p = validate_params(0.0, 1.0).unwrap();
        let c = o2_coeffs(&p, 0.5).unwrap();
        assert_eq!(c.c02_0, 0.5);
        assert!((c.c20_1 + 3.0).abs() < 1e-12);
        assert!(c.c40_0 > 0.0);
        let p = validate_params(0.25, 2.0).unwrap();
        let c = o2_coeffs(&p, p.beta0() + 1.0).unwrap();
        assert_eq!(c.c30_0, 0.0);
        assert!(matches!(
            o2_coeffs(&p, 0.1),
            Err(Error::BetaBelowBeta0 { .. })
        ));
    }
}
