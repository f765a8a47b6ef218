//! Convergence studies over schedules of `n`.
//!
//! A run evaluates one [`SumSpec`] at every scheduled `n`, compares against
//! the oracle reference, fits an empirical order and classifies the outcome.
//! Finite-`n` admissibility checks mirror the asymptotic hypotheses
//! `max_k d(n,k)/n -> 0` and `K(n)/n -> 0`.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::oracle::{self, EndpointMode};
use crate::sums::{disturbance_value, Form, SumSpec};

/// Threshold below which a hypothesis ratio counts as small at the largest n.
pub const ADMISSIBLE_THRESHOLD: f64 = 0.01;

/// Reading of the disturbance condition used by every admissibility check.
pub const DISTURBANCE_INTERPRETATION: &str = "uniform: max over k of d(n,k)/n";

/// Geometric schedule `round(start * factor^i)`, deduplicated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NSchedule {
    start: usize,
    factor: f64,
    count: usize,
}

impl Default for NSchedule {
    /// `1024 * 2^i` for `i = 0..11`, i.e. up to `2^20`.
    fn default() -> Self {
        NSchedule {
            start: 1024,
            factor: 2.0,
            count: 11,
        }
    }
}

impl NSchedule {
    pub fn new(start: usize, factor: f64, count: usize) -> Result<Self> {
        let schedule = NSchedule {
            start,
            factor,
            count,
        };
        if start < 2 {
            return Err(Error::InvalidArgument(format!(
                "schedule start must be >= 2, got {start}"
            )));
        }
        if !(factor.is_finite() && factor > 1.0) {
            return Err(Error::InvalidArgument(format!(
                "schedule factor must be > 1, got {factor}"
            )));
        }
        if count < 2 {
            return Err(Error::InvalidArgument(format!(
                "schedule count must be >= 2, got {count}"
            )));
        }
        let ns = schedule.ns();
        if ns.len() < 2 {
            return Err(Error::InvalidArgument(
                "schedule collapses to fewer than two distinct n".into(),
            ));
        }
        if *ns.last().expect("non-empty") > 1 << 40 {
            return Err(Error::InvalidArgument("schedule exceeds n = 2^40".into()));
        }
        Ok(schedule)
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn factor(&self) -> f64 {
        self.factor
    }

    pub fn count(&self) -> usize {
        self.count
    }

    /// Realized values of `n`, strictly increasing.
    pub fn ns(&self) -> Vec<usize> {
        let mut ns: Vec<usize> = (0..self.count)
            .map(|i| (self.start as f64 * self.factor.powi(i as i32)).round() as usize)
            .collect();
        ns.dedup();
        ns
    }
}

/// Least-squares fit of `log|error| = alpha * log n + c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderFit {
    pub alpha: f64,
    /// Root-mean-square residual of the fit in log space.
    pub residual: f64,
    /// Points dropped for sitting at or below the rounding floor.
    pub excluded: usize,
}

fn ulp(x: f64) -> f64 {
    let x = x.abs();
    x.next_up() - x
}

/// Errors at or below this are indistinguishable from rounding noise.
pub fn noise_floor(reference_scale: f64) -> f64 {
    let scale = if reference_scale.abs() > 0.0 {
        reference_scale
    } else {
        1.0
    };
    1e2 * ulp(scale)
}

/// Empirical convergence order from `(n, |error|)` pairs.
pub fn estimate_order(ns: &[usize], abs_errors: &[f64], reference_scale: f64) -> Result<OrderFit> {
    if ns.len() != abs_errors.len() {
        return Err(Error::InvalidArgument(format!(
            "{} values of n but {} errors",
            ns.len(),
            abs_errors.len()
        )));
    }
    let floor = noise_floor(reference_scale);
    let points: Vec<(f64, f64)> = ns
        .iter()
        .zip(abs_errors)
        .filter(|(_, e)| e.is_finite() && e.abs() > floor)
        .map(|(&n, e)| ((n as f64).ln(), e.abs().ln()))
        .collect();
    let excluded = ns.len() - points.len();
    if points.len() < 2 {
        return Err(Error::TooFewPoints {
            usable: points.len(),
        });
    }
    let m = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / m;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    if sxx == 0.0 {
        return Err(Error::TooFewPoints { usable: 1 });
    }
    let alpha = sxy / sxx;
    let intercept = mean_y - alpha * mean_x;
    let sse: f64 = points
        .iter()
        .map(|p| (p.1 - (intercept + alpha * p.0)).powi(2))
        .sum();
    Ok(OrderFit {
        alpha,
        residual: (sse / m).sqrt(),
        excluded,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Admissibility {
    Admissible,
    /// Decaying, but still above the threshold at the largest n.
    Borderline,
    Inadmissible,
}

impl fmt::Display for Admissibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Admissibility::Admissible => "admissible",
            Admissibility::Borderline => "borderline",
            Admissibility::Inadmissible => "inadmissible",
        })
    }
}

/// Classifies a ratio sequence over increasing `n`.
///
/// An identically zero sequence is admissible. Otherwise the value at the
/// largest `n` must be below [`ADMISSIBLE_THRESHOLD`] and strictly below the
/// value at the smallest `n`; a sequence that decays but stays above the
/// threshold is borderline, and one that does not decay is inadmissible.
pub fn classify_ratios(ratios: &[f64]) -> Admissibility {
    let (Some(&first), Some(&last)) = (ratios.first(), ratios.last()) else {
        return Admissibility::Inadmissible;
    };
    if ratios.iter().all(|&r| r == 0.0) {
        return Admissibility::Admissible;
    }
    let decays = last < first * (1.0 - 1e-9);
    match (decays, last < ADMISSIBLE_THRESHOLD) {
        (true, true) => Admissibility::Admissible,
        (true, false) => Admissibility::Borderline,
        (false, _) => Admissibility::Inadmissible,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdmissibilityReport {
    pub ns: Vec<usize>,
    /// `max_k d(n,k) / n` at each scheduled `n`.
    pub max_d_over_n: Vec<f64>,
    /// `|J_K| / n` at each scheduled `n`.
    pub k_over_n: Vec<f64>,
    pub disturbance: Admissibility,
    pub deletion: Admissibility,
    pub interpretation: &'static str,
}

impl AdmissibilityReport {
    pub fn worst(&self) -> Admissibility {
        use Admissibility::*;
        match (self.disturbance, self.deletion) {
            (Inadmissible, _) | (_, Inadmissible) => Inadmissible,
            (Borderline, _) | (_, Borderline) => Borderline,
            _ => Admissible,
        }
    }
}

/// `max_k d(n,k)/n` by direct scan over `k = 1..=n`.
pub fn max_disturbance_ratio(spec: &SumSpec, n: usize) -> f64 {
    let max_d = (1..=n)
        .map(|k| disturbance_value(&spec.disturbance, n, k))
        .fold(0.0, f64::max);
    max_d / n as f64
}

pub fn check_admissibility(spec: &SumSpec, schedule: &NSchedule) -> AdmissibilityReport {
    let ns = schedule.ns();
    let max_d_over_n: Vec<f64> = ns.iter().map(|&n| max_disturbance_ratio(spec, n)).collect();
    let k_over_n: Vec<f64> = ns
        .iter()
        .map(|&n| spec.deletion.count(n) as f64 / n as f64)
        .collect();
    AdmissibilityReport {
        disturbance: classify_ratios(&max_d_over_n),
        deletion: classify_ratios(&k_over_n),
        ns,
        max_d_over_n,
        k_over_n,
        interpretation: DISTURBANCE_INTERPRETATION,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Row {
    pub n: usize,
    pub value: f64,
    pub signed_error: f64,
    pub abs_error: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Verdict {
    ConvergesToI,
    /// Settles away from the reference; `limit` is the value at the largest n.
    ConvergesElsewhere {
        limit: f64,
    },
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::ConvergesToI => f.write_str("converges to I"),
            Verdict::ConvergesElsewhere { limit } => {
                write!(f, "converges elsewhere (~{limit:.10})")
            }
            Verdict::Inconclusive => f.write_str("inconclusive"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunOptions {
    /// Largest acceptable `|error|` at the final n for a `ConvergesToI` verdict.
    pub tolerance: f64,
    pub endpoint_mode: EndpointMode,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            tolerance: 1e-6,
            endpoint_mode: EndpointMode::Strict,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub spec: String,
    pub reference: f64,
    pub tolerance: f64,
    pub rows: Vec<Row>,
    /// `None` when fewer than two errors sit above the rounding floor.
    pub order: Option<OrderFit>,
    pub admissibility: AdmissibilityReport,
    pub verdict: Verdict,
    /// Set when the run falls outside the sign hypotheses of the
    /// disturbance results.
    pub outside_hypotheses: Option<String>,
}

impl ConvergenceReport {
    pub fn last(&self) -> &Row {
        self.rows.last().expect("a report has at least two rows")
    }
}

/// Limit target of the spec's family: `I` for linear sums, `exp(integral
/// of ln f)` for the product form.
pub fn reference_value(spec: &SumSpec, mode: EndpointMode) -> Result<f64> {
    match spec.form {
        Form::Linear => oracle::reference_integral(&spec.integrand, spec.interval),
        Form::ExpLog => Ok(oracle::log_reference(&spec.integrand, spec.interval, mode)?.exp()),
    }
}

const SIGN_SAMPLES: usize = 1001;

fn sampled_values(spec: &SumSpec) -> Vec<f64> {
    let (a, w) = (spec.interval.a(), spec.interval.width());
    (0..SIGN_SAMPLES)
        .filter_map(|i| {
            let x = a + (i as f64 / (SIGN_SAMPLES - 1) as f64) * w;
            let v = spec.integrand.eval(x).ok()?;
            match spec.form {
                Form::Linear => Some(v),
                Form::ExpLog => (v > 0.0).then(|| v.ln()),
            }
        })
        .filter(|v| v.is_finite())
        .collect()
}

/// The disturbance results need a summand of one sign; flags runs that
/// disturb the mesh of a sign-changing summand (`f`, or `ln f` for the
/// product form).
pub fn hypothesis_note(spec: &SumSpec) -> Option<String> {
    if spec.disturbance.is_zero() {
        return None;
    }
    let values = sampled_values(spec);
    let has_pos = values.iter().any(|&v| v > 0.0);
    let has_neg = values.iter().any(|&v| v < 0.0);
    (has_pos && has_neg).then(|| {
        let what = match spec.form {
            Form::Linear => "f",
            Form::ExpLog => "ln f",
        };
        format!("outside theorem hypotheses: {what} changes sign on a disturbed mesh")
    })
}

fn decide_verdict(rows: &[Row], tolerance: f64, floor: f64) -> Verdict {
    let tail = &rows[rows.len().saturating_sub(3)..];
    let last = tail.last().expect("non-empty");
    let non_increasing = tail
        .windows(2)
        .all(|w| w[1].abs_error.max(floor) <= w[0].abs_error.max(floor));
    if last.abs_error <= tolerance && non_increasing {
        return Verdict::ConvergesToI;
    }
    let (lo, hi) = tail
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| {
            (lo.min(r.value), hi.max(r.value))
        });
    if last.abs_error > tolerance && hi - lo < last.abs_error / 10.0 {
        Verdict::ConvergesElsewhere { limit: last.value }
    } else {
        Verdict::Inconclusive
    }
}

/// Evaluates `spec` at every scheduled `n` (possibly in parallel; results
/// do not depend on scheduling).
pub fn evaluate_schedule(spec: &SumSpec, ns: &[usize]) -> Result<Vec<f64>> {
    let results: Vec<Result<f64>> = ns.par_iter().map(|&n| spec.value(n)).collect();
    ns.iter()
        .zip(results)
        .map(|(&n, r)| {
            r.map_err(|e| Error::AtN {
                n,
                source: Box::new(e),
            })
        })
        .collect()
}

pub fn run_convergence(
    spec: &SumSpec,
    schedule: &NSchedule,
    options: &RunOptions,
) -> Result<ConvergenceReport> {
    if options.tolerance.is_nan() || options.tolerance < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be >= 0, got {}",
            options.tolerance
        )));
    }
    spec.validate()?;
    let reference = reference_value(spec, options.endpoint_mode)?;
    let ns = schedule.ns();
    let values = evaluate_schedule(spec, &ns)?;
    let rows: Vec<Row> = ns
        .iter()
        .zip(&values)
        .map(|(&n, &value)| Row {
            n,
            value,
            signed_error: value - reference,
            abs_error: (value - reference).abs(),
        })
        .collect();
    let errors: Vec<f64> = rows.iter().map(|r| r.abs_error).collect();
    let order = estimate_order(&ns, &errors, reference).ok();
    let verdict = decide_verdict(&rows, options.tolerance, noise_floor(reference));
    Ok(ConvergenceReport {
        spec: spec.to_string(),
        reference,
        tolerance: options.tolerance,
        rows,
        order,
        admissibility: check_admissibility(spec, schedule),
        verdict,
        outside_hypotheses: hypothesis_note(spec),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Falsification {
    /// The last errors all exceed the margin and agree with each other:
    /// the family settles on a value other than the reference.
    Falsified {
        gap: f64,
    },
    NotFalsified,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FalsifyOutcome {
    pub verdict: Falsification,
    pub report: ConvergenceReport,
}

pub fn falsify(
    spec: &SumSpec,
    schedule: &NSchedule,
    margin: f64,
    options: &RunOptions,
) -> Result<FalsifyOutcome> {
    if !(margin > 0.0 && margin.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "margin must be > 0, got {margin}"
        )));
    }
    let report = run_convergence(spec, schedule, options)?;
    let tail = &report.rows[report.rows.len().saturating_sub(3)..];
    let all_exceed = tail.iter().all(|r| r.abs_error > margin);
    let (lo, hi) = tail
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| {
            (lo.min(r.abs_error), hi.max(r.abs_error))
        });
    let verdict = if all_exceed && hi - lo < margin / 10.0 {
        Falsification::Falsified {
            gap: report.last().abs_error,
        }
    } else {
        Falsification::NotFalsified
    };
    Ok(FalsifyOutcome { verdict, report })
}

/// A-priori bound on `|S(n) - target|` assembled from the ingredients of
/// the deletion and squeeze arguments:
///
/// ```text
/// |S(n) - I| <= V * h + M * |J_K| * h + M * (b - a) * d_max / (n + d_max)
/// ```
///
/// with `h = (b-a)/n`, `M` the sup and `V` the total variation of the
/// summand (`f`, or `ln f` for the product form), both estimated on a dense
/// grid. For the product form the exponent bound `B` maps to
/// `exp(J) * (exp(B) - 1)` with `J` the integral of `ln f`.
pub fn a_priori_bound(spec: &SumSpec, n: usize, mode: EndpointMode) -> Result<f64> {
    spec.validate()?;
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "n must be at least 2, got {n}"
        )));
    }
    let values = sampled_values(spec);
    if values.len() < SIGN_SAMPLES {
        return Err(Error::domain(
            spec.integrand.to_string(),
            "summand is not finite on the whole interval",
        ));
    }
    let sup = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let variation: f64 = values.windows(2).map(|w| (w[1] - w[0]).abs()).sum();
    let span = spec.interval.width();
    let h = span / n as f64;
    let d_max = (1..=n)
        .map(|k| disturbance_value(&spec.disturbance, n, k))
        .fold(0.0, f64::max);
    let deleted = spec.deletion.count(n) as f64;
    let bound = variation * h + sup * deleted * h + sup * span * d_max / (n as f64 + d_max);
    match spec.form {
        Form::Linear => Ok(bound),
        Form::ExpLog => {
            let j = oracle::log_reference(&spec.integrand, spec.interval, mode)?;
            Ok(j.exp() * bound.exp_m1())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{catalog_lookup, Integrand};
    use crate::sums::{DeletionPolicy, DisturbancePolicy, Interval};
    use std::f64::consts::PI;

    fn sin_pi() -> SumSpec {
        SumSpec::new(catalog_lookup("sin_pi").unwrap(), Interval::unit())
    }

    #[test]
    fn schedule_realization() {
        let s = NSchedule::new(10, 1.5, 6).unwrap();
        assert_eq!(s.ns(), vec![10, 15, 23, 34, 51, 76]);
        assert_eq!(NSchedule::default().ns().last(), Some(&(1 << 20)));
        let dedup = NSchedule::new(2, 1.1, 4).unwrap();
        assert_eq!(dedup.ns(), vec![2, 3]);
        assert!(NSchedule::new(2, 1.01, 3).is_err());
        assert!(NSchedule::new(1, 2.0, 3).is_err());
        assert!(NSchedule::new(4, 1.0, 3).is_err());
        assert!(NSchedule::new(4, 2.0, 1).is_err());
    }

    #[test]
    fn order_of_exact_power_laws() {
        let ns = [10, 100, 1000];
        let errs: Vec<f64> = ns.iter().map(|&n| 3.0 / n as f64).collect();
        let fit = estimate_order(&ns, &errs, 1.0).unwrap();
        assert!((fit.alpha + 1.0).abs() < 1e-9);
        assert_eq!(fit.excluded, 0);
        let errs: Vec<f64> = ns.iter().map(|&n| (n as f64).powf(-2.0 / 9.0)).collect();
        let fit = estimate_order(&ns, &errs, 1.0).unwrap();
        assert!((fit.alpha + 2.0 / 9.0).abs() < 1e-9);
        assert!(fit.residual < 1e-12);
    }

    #[test]
    fn order_needs_two_points_above_floor() {
        assert_eq!(
            estimate_order(&[10, 20, 40], &[1e-17, 0.0, 2e-16], 1.0),
            Err(Error::TooFewPoints { usable: 0 })
        );
        let fit = estimate_order(&[10, 20, 40], &[1e-3, 5e-4, 0.0], 1.0).unwrap();
        assert_eq!(fit.excluded, 1);
        assert!(estimate_order(&[10], &[1.0, 2.0], 1.0).is_err());
    }

    #[test]
    fn ratio_classification() {
        assert_eq!(classify_ratios(&[0.0, 0.0]), Admissibility::Admissible);
        assert_eq!(classify_ratios(&[0.1, 0.001]), Admissibility::Admissible);
        assert_eq!(classify_ratios(&[0.5, 0.2]), Admissibility::Borderline);
        assert_eq!(classify_ratios(&[1.0, 1.0]), Admissibility::Inadmissible);
        assert_eq!(
            classify_ratios(&[0.001, 0.002]),
            Admissibility::Inadmissible
        );
    }

    #[test]
    fn admissibility_examples() {
        let schedule = NSchedule::default();
        let k_over_n = check_admissibility(
            &sin_pi().with_disturbance(DisturbancePolicy::KOverN),
            &schedule,
        );
        for (&n, &r) in k_over_n.ns.iter().zip(&k_over_n.max_d_over_n) {
            assert_eq!(r, 1.0 / n as f64);
        }
        assert_eq!(k_over_n.disturbance, Admissibility::Admissible);

        let violating = check_admissibility(
            &sin_pi().with_disturbance(DisturbancePolicy::ViolatingLinear(1.0)),
            &schedule,
        );
        assert!(violating.max_d_over_n.iter().all(|&r| r == 1.0));
        assert_eq!(violating.disturbance, Admissibility::Inadmissible);

        let growing = check_admissibility(
            &sin_pi().with_deletion(DeletionPolicy::PrefixGrowing {
                c: 1.0,
                q: 8.0 / 9.0,
            }),
            &schedule,
        );
        let last = *growing.k_over_n.last().unwrap();
        // floor(n^(8/9))/n at n = 2^20 against n^(-1/9) = 2^(-20/9).
        assert!((last - 2f64.powf(-20.0 / 9.0)).abs() < 1e-5);
        assert_eq!(growing.deletion, Admissibility::Borderline);
        assert_eq!(growing.disturbance, Admissibility::Admissible);
    }

    #[test]
    fn sin_pi_converges() {
        let schedule = NSchedule::new(1 << 10, 2.0, 11).unwrap();
        let report = run_convergence(&sin_pi(), &schedule, &RunOptions::default()).unwrap();
        assert_eq!(report.verdict, Verdict::ConvergesToI);
        assert!(report.last().abs_error < 1e-6);
        assert_eq!(report.reference, 2.0 / PI);
        // Right endpoints coincide with the trapezoid rule here: second order.
        let order = report.order.unwrap();
        assert!((order.alpha + 2.0).abs() < 0.05, "{order:?}");
    }

    #[test]
    fn half_prefix_converges_elsewhere() {
        let spec = sin_pi().with_deletion(DeletionPolicy::PrefixGrowing { c: 0.5, q: 1.0 });
        let report = run_convergence(&spec, &NSchedule::default(), &RunOptions::default()).unwrap();
        match report.verdict {
            Verdict::ConvergesElsewhere { limit } => assert!((limit - 1.0 / PI).abs() < 1e-3),
            other => panic!("{other:?}"),
        }
        assert_eq!(report.admissibility.deletion, Admissibility::Inadmissible);
    }

    #[test]
    fn falsification_cases() {
        let schedule = NSchedule::default();
        let opts = RunOptions::default();
        let half = sin_pi().with_deletion(DeletionPolicy::PrefixGrowing { c: 0.5, q: 1.0 });
        match falsify(&half, &schedule, 0.25, &opts).unwrap().verdict {
            Falsification::Falsified { gap } => assert!((gap - 1.0 / PI).abs() < 0.02),
            other => panic!("{other:?}"),
        }
        let violating = SumSpec::new(catalog_lookup("const1").unwrap(), Interval::unit())
            .with_disturbance(DisturbancePolicy::ViolatingLinear(1.0));
        assert_eq!(
            falsify(&violating, &schedule, 0.25, &opts).unwrap().verdict,
            Falsification::Falsified { gap: 0.5 }
        );
        let example9 = sin_pi().with_disturbance(DisturbancePolicy::KOverN);
        assert_eq!(
            falsify(&example9, &schedule, 0.25, &opts).unwrap().verdict,
            Falsification::NotFalsified
        );
        assert!(falsify(&example9, &schedule, 0.0, &opts).is_err());
    }

    #[test]
    fn domain_errors_carry_n() {
        let spec = sin_pi().with_form(Form::ExpLog);
        let opts = RunOptions {
            endpoint_mode: EndpointMode::AllowImproper,
            ..RunOptions::default()
        };
        let err = run_convergence(&spec, &NSchedule::new(8, 2.0, 3).unwrap(), &opts).unwrap_err();
        assert!(matches!(err, Error::AtN { n: 8, .. }), "{err:?}");
        assert!(matches!(err.root(), Error::Domain { .. }));
    }

    #[test]
    fn sign_changing_disturbed_runs_are_flagged() {
        let f = Integrand::parse("sin(2*pi*x)").unwrap();
        let spec = SumSpec::new(f, Interval::unit());
        assert!(hypothesis_note(&spec).is_none());
        let disturbed = spec.with_disturbance(DisturbancePolicy::KOverN);
        assert!(hypothesis_note(&disturbed)
            .unwrap()
            .contains("changes sign"));
        let report = run_convergence(
            &disturbed,
            &NSchedule::new(64, 2.0, 4).unwrap(),
            &RunOptions::default(),
        )
        .unwrap();
        assert!(report.outside_hypotheses.is_some());
    }

    #[test]
    fn bound_covers_deletion_error() {
        let spec = sin_pi().with_deletion(DeletionPolicy::PrefixGrowing {
            c: 1.0,
            q: 8.0 / 9.0,
        });
        for n in [1 << 10, 1 << 14, 1 << 18] {
            let err = (spec.value(n).unwrap() - 2.0 / PI).abs();
            let bound = a_priori_bound(&spec, n, EndpointMode::Strict).unwrap();
            assert!(err <= bound, "n = {n}: {err} > {bound}");
        }
    }
}
