//! Analytic characteristic functions and their Gaussian smoothing by
//! quadrature.
//!
//! This is verification machinery: a compactly supported characteristic
//! function is invisible to pointwise CF comparisons outside its support,
//! but its convolution with an analytic kernel is not. The quadrature here
//! is the independent oracle for that smoothing effect.

use num_complex::Complex64;

use crate::error::Error;

/// A characteristic function on the real line given in closed form.
pub struct AnalyticCf {
    eval: Box<dyn Fn(f64) -> Complex64 + Send + Sync>,
    support_radius: f64,
}

impl AnalyticCf {
    /// Wraps a closed-form CF. `support_radius` is the radius beyond which
    /// the function is identically zero; use `f64::INFINITY` when there is
    /// none.
    pub fn new(
        eval: impl Fn(f64) -> Complex64 + Send + Sync + 'static,
        support_radius: f64,
    ) -> Self {
        AnalyticCf {
            eval: Box::new(eval),
            support_radius,
        }
    }

    pub fn evaluate(&self, t: f64) -> Complex64 {
        (self.eval)(t)
    }

    pub fn support_radius(&self) -> f64 {
        self.support_radius
    }
}

impl std::fmt::Debug for AnalyticCf {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AnalyticCf")
            .field("support_radius", &self.support_radius)
            .finish()
    }
}

/// The triangular Polya characteristic function f_w(t) = max(0, 1 - w|t|),
/// supported on |t| <= 1/w. Distinct w give distinct distributions whose CFs
/// agree (at zero) outside the larger support.
pub fn polya_cf(w: f64) -> Result<AnalyticCf, Error> {
    if !(w > 0.0) || !w.is_finite() {
        return Err(Error::domain("polya_cf requires w > 0"));
    }
    Ok(AnalyticCf::new(
        move |t| Complex64::new((1.0 - w * t.abs()).max(0.0), 0.0),
        1.0 / w,
    ))
}

/// Adaptive Simpson quadrature for complex integrands, absolute tolerance.
fn simpson_complex<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64, tol: f64) -> Complex64 {
    #[allow(clippy::too_many_arguments)]
    fn rec<F: Fn(f64) -> Complex64>(
        f: &F,
        a: f64,
        b: f64,
        fa: Complex64,
        fb: Complex64,
        fm: Complex64,
        whole: Complex64,
        tol: f64,
        depth: u32,
    ) -> Complex64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let err = left + right - whole;
        if depth == 0 || err.norm() <= 15.0 * tol {
            left + right + err / 15.0
        } else {
            rec(f, a, m, fa, fm, flm, left, tol / 2.0, depth - 1)
                + rec(f, m, b, fm, fb, frm, right, tol / 2.0, depth - 1)
        }
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    rec(f, a, b, fa, fb, fm, whole, tol, 48)
}

const QUADRATURE_TOL: f64 = 1e-8;

/// Fixed panels ahead of the adaptive pass, so a support much narrower than
/// the integration window cannot slip between the first probe points.
fn simpson_panelled<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64, tol: f64) -> Complex64 {
    let panels = 64;
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|i| {
            simpson_complex(
                f,
                a + i as f64 * h,
                a + (i + 1) as f64 * h,
                tol / panels as f64,
            )
        })
        .sum()
}

/// The smoothed CF at frequency t: the convolution of `cf` with the
/// Gaussian kernel l(u) = exp(-u^2 / ell_width^2), computed by adaptive
/// Simpson quadrature to absolute error ~1e-8 over the compact support
/// expanded by eight smoothing widths.
///
/// Requires a finite support radius; for CFs without one, supply an explicit
/// truncation via [`smooth_cf_quadrature_truncated`].
pub fn smooth_cf_quadrature(
    cf: &AnalyticCf,
    t: f64,
    ell_width: f64,
) -> Result<Complex64, Error> {
    if !cf.support_radius().is_finite() {
        return Err(Error::domain(
            "CF support is unbounded; use smooth_cf_quadrature_truncated",
        ));
    }
    smooth_cf_quadrature_truncated(cf, t, ell_width, cf.support_radius())
}

/// As [`smooth_cf_quadrature`], integrating over the window
/// [-radius - 8 ell, radius + 8 ell].
pub fn smooth_cf_quadrature_truncated(
    cf: &AnalyticCf,
    t: f64,
    ell_width: f64,
    radius: f64,
) -> Result<Complex64, Error> {
    if !(ell_width > 0.0) || !ell_width.is_finite() {
        return Err(Error::domain("smoothing width must be positive"));
    }
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(Error::domain("truncation radius must be positive and finite"));
    }
    let lo = -radius - 8.0 * ell_width;
    let hi = radius + 8.0 * ell_width;
    let integrand = |w: f64| {
        let damp = (-(t - w) * (t - w) / (ell_width * ell_width)).exp();
        cf.evaluate(w) * damp
    };
    Ok(simpson_panelled(&integrand, lo, hi, QUADRATURE_TOL))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{Seed, Stream};

    #[test]
    fn polya_shape() {
        let cf = polya_cf(2.0).unwrap();
        assert_eq!(cf.evaluate(0.0), Complex64::new(1.0, 0.0));
        assert_eq!(cf.evaluate(0.5), Complex64::new(0.0, 0.0));
        assert_eq!(cf.evaluate(0.7), Complex64::new(0.0, 0.0));
        assert_eq!(cf.evaluate(-0.7), Complex64::new(0.0, 0.0));
        assert!((cf.evaluate(0.25).re - 0.5).abs() < 1e-15);
        assert_eq!(cf.support_radius(), 0.5);
    }

    #[test]
    fn polya_cf_axioms() {
        // evaluate(0) = 1, |evaluate| <= 1, Hermitian symmetry, at random
        // frequencies.
        let cf = polya_cf(3.0).unwrap();
        let mut rng = Stream::new(Seed(1));
        for _ in 0..1000 {
            let t = 4.0 * rng.next_normal();
            let v = cf.evaluate(t);
            assert!(v.norm() <= 1.0 + 1e-15);
            let conj = cf.evaluate(-t).conj();
            assert_eq!(v, conj);
        }
    }

    #[test]
    fn distinct_w_differ_near_inner_support_edge() {
        let a = polya_cf(2.0).unwrap();
        let b = polya_cf(3.0).unwrap();
        // Near 1/w1 = 1/2 the wider triangle is still positive.
        let t = 0.4;
        assert!((a.evaluate(t).re - b.evaluate(t).re).abs() > 0.01);
    }

    #[test]
    fn constant_cf_integrates_the_window() {
        // A truncated constant integrand: the smoothed value approaches the
        // integral of the kernel over the window. With the window much wider
        // than ell, that is the full Gaussian mass ell * sqrt(pi).
        let r = 50.0;
        let cf = AnalyticCf::new(
            move |t| {
                if t.abs() <= r {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::ZERO
                }
            },
            r,
        );
        let ell = 1.0;
        let got = smooth_cf_quadrature(&cf, 0.0, ell).unwrap();
        let want = ell * std::f64::consts::PI.sqrt();
        assert!((got.re - want).abs() < 1e-7, "{got} vs {want}");
        assert!(got.im.abs() < 1e-12);
    }

    #[test]
    fn smoothing_spreads_compact_support() {
        // Outside the support the raw CF is exactly zero, the smoothed one
        // only small.
        let cf = polya_cf(2.0).unwrap();
        let ell = 1.0;
        let near = smooth_cf_quadrature(&cf, 1.5, ell).unwrap();
        assert!(near.re > 1e-7);
        let far = smooth_cf_quadrature(&cf, 40.0, ell).unwrap();
        assert!(far.norm() < 1e-6);
        assert_eq!(cf.evaluate(40.0), Complex64::ZERO);
    }

    #[test]
    fn quadrature_is_linear() {
        let a = polya_cf(2.0).unwrap();
        let b = polya_cf(3.0).unwrap();
        let diff = AnalyticCf::new(
            |t| {
                let fa = Complex64::new((1.0 - 2.0 * t.abs()).max(0.0), 0.0);
                let fb = Complex64::new((1.0 - 3.0 * t.abs()).max(0.0), 0.0);
                fa - fb
            },
            0.5,
        );
        for &t in &[0.2, 1.0, 2.5] {
            let lhs = smooth_cf_quadrature(&diff, t, 0.7).unwrap();
            let rhs = smooth_cf_quadrature_truncated(&a, t, 0.7, 0.5).unwrap()
                - smooth_cf_quadrature_truncated(&b, t, 0.7, 0.5).unwrap();
            assert!((lhs - rhs).norm() < 1e-7, "t={t}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn unbounded_support_needs_truncation() {
        let cf = AnalyticCf::new(|t| Complex64::new((-t * t).exp(), 0.0), f64::INFINITY);
        assert!(smooth_cf_quadrature(&cf, 0.0, 1.0).is_err());
        assert!(smooth_cf_quadrature_truncated(&cf, 0.0, 1.0, 20.0).is_ok());
    }

    #[test]
    fn invalid_parameters() {
        assert!(polya_cf(0.0).is_err());
        assert!(polya_cf(-2.0).is_err());
        let cf = polya_cf(1.0).unwrap();
        assert!(smooth_cf_quadrature(&cf, 0.0, 0.0).is_err());
    }
}
