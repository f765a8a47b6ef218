//! Reference integrals computed independently of the sum engine.
//!
//! Exact catalog values are used when recorded for the requested interval;
//! everything else goes through recursive adaptive Simpson quadrature. None
//! of this shares code with [`crate::sums`] apart from the `Interval` value
//! type and the integrand itself.

use crate::error::{Error, Result};
use crate::expr::Integrand;
use crate::sums::Interval;

/// Maximum recursion depth of the adaptive Simpson rule.
pub const MAX_DEPTH: u32 = 60;

/// Tolerance used by [`reference_integral`] when no exact value is known.
pub const REFERENCE_TOL: f64 = 1e-11;

/// Distance pulled in from an endpoint where `ln f` is singular, in units of
/// the interval width, when improper integrals are allowed.
pub const IMPROPER_EPSILON: f64 = 1e-9;

/// Number of evenly spaced samples used to check positivity.
pub const POSITIVITY_SAMPLES: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
}

struct Simpson<'f, F> {
    f: &'f mut F,
    evaluations: usize,
    error_estimate: f64,
    depth_capped: bool,
}

impl<F: FnMut(f64) -> Result<f64>> Simpson<'_, F> {
    fn eval(&mut self, x: f64) -> Result<f64> {
        self.evaluations += 1;
        (self.f)(x)
    }

    /// Endpoints may be singular (only the interior must be evaluable); a
    /// failing endpoint is replaced by a point just inside it.
    fn eval_endpoint(&mut self, x: f64, inward: f64) -> Result<f64> {
        match self.eval(x) {
            Ok(v) if v.is_finite() => Ok(v),
            Ok(_) | Err(Error::Domain { .. }) => self.eval(x + inward),
            Err(e) => Err(e),
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn recurse(
        &mut self,
        a: f64,
        fa: f64,
        m: f64,
        fm: f64,
        b: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> Result<f64> {
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = self.eval(lm)?;
        let frm = self.eval(rm)?;
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if delta.abs() <= 15.0 * tol || depth >= MAX_DEPTH || !(lm > a && rm < b) {
            if delta.abs() > 15.0 * tol {
                self.depth_capped = true;
            }
            self.error_estimate += delta.abs() / 15.0;
            return Ok(left + right + delta / 15.0);
        }
        let l = self.recurse(a, fa, lm, flm, m, fm, left, 0.5 * tol, depth + 1)?;
        let r = self.recurse(m, fm, rm, frm, b, fb, right, 0.5 * tol, depth + 1)?;
        Ok(l + r)
    }
}

/// Adaptive Simpson quadrature of an arbitrary closure over `[a, b]`.
///
/// Subintervals are halved until `|S_fine - S_coarse| <= 15 * tol_local`,
/// with `tol_local` halving at each level, down to depth [`MAX_DEPTH`].
/// Leaves that hit the depth cap still contribute their Richardson-corrected
/// estimate; the run only fails with `NoConvergence` when the accumulated
/// error estimate ends up above `tol`.
pub fn adaptive_simpson<F>(mut f: F, interval: Interval, tol: f64) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    if tol.is_nan() || tol < 1e-13 {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be >= 1e-13, got {tol}"
        )));
    }
    let (a, b) = (interval.a(), interval.b());
    let inward = (b - a) * f64::EPSILON.sqrt() * 1e-4;
    let mut s = Simpson {
        f: &mut f,
        evaluations: 0,
        error_estimate: 0.0,
        depth_capped: false,
    };
    let fa = s.eval_endpoint(a, inward)?;
    let fb = s.eval_endpoint(b, -inward)?;
    let m = 0.5 * (a + b);
    let fm = s.eval(m)?;
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let value = s.recurse(a, fa, m, fm, b, fb, whole, tol, 0)?;
    let result = QuadratureResult {
        value,
        error_estimate: s.error_estimate,
        evaluations: s.evaluations,
        converged: s.error_estimate <= tol,
    };
    if !result.value.is_finite() || (s.depth_capped && !result.converged) {
        return Err(Error::NoConvergence {
            value: result.value,
            error_estimate: result.error_estimate,
            tol,
        });
    }
    Ok(QuadratureResult {
        converged: true,
        ..result
    })
}

/// Adaptive Simpson integral of an integrand.
pub fn integrate_adaptive(f: &Integrand, interval: Interval, tol: f64) -> Result<QuadratureResult> {
    adaptive_simpson(|x| f.eval(x), interval, tol)
}

/// `I = integral of f over the interval`: the exact catalog value when one is
/// recorded for this interval, otherwise quadrature at [`REFERENCE_TOL`].
pub fn reference_integral(integrand: &Integrand, interval: Interval) -> Result<f64> {
    if let Some(exact) = integrand.exact_integral(interval) {
        return Ok(exact);
    }
    Ok(integrate_adaptive(integrand, interval, REFERENCE_TOL)?.value)
}

/// How [`log_reference`] treats endpoints where `f` is not positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EndpointMode {
    /// Any non-positive sample is an error.
    #[default]
    Strict,
    /// Endpoints where `f <= 0` are pulled in by [`IMPROPER_EPSILON`]
    /// before integrating; interior failures are still errors.
    AllowImproper,
}

fn sample_points(interval: Interval) -> impl Iterator<Item = f64> {
    let (a, b) = (interval.a(), interval.b());
    let last = POSITIVITY_SAMPLES - 1;
    (0..POSITIVITY_SAMPLES).map(move |i| {
        if i == last {
            b
        } else {
            a + (i as f64 / last as f64) * (b - a)
        }
    })
}

fn positive_at(f: &Integrand, x: f64) -> bool {
    matches!(f.eval(x), Ok(v) if v > 0.0 && v.is_finite())
}

/// Checks `f > 0` on evenly spaced samples, returning the first witness of
/// failure.
pub fn check_positive(f: &Integrand, interval: Interval) -> Result<()> {
    for x in sample_points(interval) {
        if !positive_at(f, x) {
            let value = f.eval(x).unwrap_or(f64::NAN);
            return Err(Error::NotPositive { x, value });
        }
    }
    Ok(())
}

/// `integral of ln f` over the interval, after a sampled positivity check.
pub fn log_reference(integrand: &Integrand, interval: Interval, mode: EndpointMode) -> Result<f64> {
    let interval = match mode {
        EndpointMode::Strict => interval,
        EndpointMode::AllowImproper => {
            let eps = IMPROPER_EPSILON * interval.width();
            let a = if positive_at(integrand, interval.a()) {
                interval.a()
            } else {
                interval.a() + eps
            };
            let b = if positive_at(integrand, interval.b()) {
                interval.b()
            } else {
                interval.b() - eps
            };
            Interval::new(a, b)?
        }
    };
    check_positive(integrand, interval)?;
    let result = adaptive_simpson(
        |x| {
            let v = integrand.eval(x)?;
            if v > 0.0 {
                Ok(v.ln())
            } else {
                Err(Error::NotPositive { x, value: v })
            }
        },
        interval,
        REFERENCE_TOL,
    )?;
    Ok(result.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{catalog_lookup, catalog_names};
    use std::f64::consts::{LN_2, PI};

    fn unit() -> Interval {
        Interval::unit()
    }

    #[test]
    fn sin_pi_matches_two_over_pi() {
        let r = integrate_adaptive(&catalog_lookup("sin_pi").unwrap(), unit(), 1e-10).unwrap();
        assert!((r.value - 2.0 / PI).abs() < 1e-10);
        assert!(r.converged && r.error_estimate <= 1e-10);
    }

    #[test]
    fn simpson_is_exact_on_cubics() {
        let r = integrate_adaptive(&catalog_lookup("poly_x").unwrap(), unit(), 1e-10).unwrap();
        assert!((r.value - 0.5).abs() < 1e-12);
        let cubic = Integrand::parse("x^3 - 2*x").unwrap();
        let r = integrate_adaptive(&cubic, Interval::new(-1.0, 2.0).unwrap(), 1e-10).unwrap();
        assert!((r.value - (15.0 / 4.0 - 3.0)).abs() < 1e-12);
        assert_eq!(r.evaluations, 5);
    }

    #[test]
    fn log_singularity_at_left_end() {
        let ln = Integrand::parse("ln(x)").unwrap();
        match integrate_adaptive(&ln, unit(), 1e-8) {
            Ok(r) => assert!((r.value + 1.0).abs() < 1e-6, "{}", r.value),
            Err(Error::NoConvergence { .. }) => {}
            Err(other) => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn catalog_values_agree() {
        for name in catalog_names() {
            let f = catalog_lookup(name).unwrap();
            let exact = f.exact_integral(unit()).unwrap();
            let r = integrate_adaptive(&f, unit(), 1e-11).unwrap();
            assert!(
                (r.value - exact).abs() < 1e-10,
                "{name}: {} vs {exact}",
                r.value
            );
        }
    }

    #[test]
    fn reference_prefers_exact_values() {
        let f = catalog_lookup("sin_pi").unwrap();
        assert_eq!(reference_integral(&f, unit()).unwrap(), 2.0 / PI);
        assert_eq!(
            reference_integral(&catalog_lookup("const1").unwrap(), unit()).unwrap(),
            1.0
        );
        let sq = Integrand::parse("x*x").unwrap();
        assert!((reference_integral(&sq, unit()).unwrap() - 1.0 / 3.0).abs() < 1e-11);
        let shifted = reference_integral(
            &catalog_lookup("poly_x").unwrap(),
            Interval::new(0.0, 2.0).unwrap(),
        );
        assert!((shifted.unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn log_references() {
        let exp = catalog_lookup("exp").unwrap();
        assert!((log_reference(&exp, unit(), EndpointMode::Strict).unwrap() - 0.5).abs() < 1e-11);
        let one = catalog_lookup("const1").unwrap();
        assert_eq!(
            log_reference(&one, unit(), EndpointMode::Strict).unwrap(),
            0.0
        );
    }

    #[test]
    fn log_reference_of_sin_is_strict_by_default() {
        let f = catalog_lookup("sin_pi").unwrap();
        match log_reference(&f, unit(), EndpointMode::Strict) {
            Err(Error::NotPositive { x, .. }) => assert_eq!(x, 0.0),
            other => panic!("expected NotPositive, got {other:?}"),
        }
        let v = log_reference(&f, unit(), EndpointMode::AllowImproper).unwrap();
        assert!((v + LN_2).abs() < 1e-6, "{v}");
    }

    #[test]
    fn improper_mode_still_rejects_interior_zeros() {
        let f = Integrand::parse("abs(x - 0.5)").unwrap();
        assert!(matches!(
            log_reference(&f, unit(), EndpointMode::AllowImproper),
            Err(Error::NotPositive { .. }) | Err(Error::NoConvergence { .. })
        ));
    }

    #[test]
    fn tolerance_floor() {
        let f = catalog_lookup("exp").unwrap();
        assert!(matches!(
            integrate_adaptive(&f, unit(), 1e-14),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn interior_domain_errors_propagate() {
        let f = Integrand::parse("1 / (x - 0.5)").unwrap();
        assert!(matches!(
            integrate_adaptive(&f, unit(), 1e-8),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn split_additivity() {
        let f = Integrand::parse("exp(-x) * cos(3*x) + sqrt(x + 1)").unwrap();
        let whole = integrate_adaptive(&f, unit(), 1e-12).unwrap().value;
        for c in [0.1, 0.37, 0.5, 0.93] {
            let l = integrate_adaptive(&f, Interval::new(0.0, c).unwrap(), 1e-12)
                .unwrap()
                .value;
            let r = integrate_adaptive(&f, Interval::new(c, 1.0).unwrap(), 1e-12)
                .unwrap()
                .value;
            assert!((l + r - whole).abs() < 1e-10, "split at {c}");
        }
    }
}
