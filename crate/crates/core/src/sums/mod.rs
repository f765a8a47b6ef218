//! Generalized Riemann sums.
//!
//! The equal-width family evaluated here is
//!
//! ```text
//! S(n) = sum over k in {1..n} \ J_K of  f(xi_k) * (b - a) / (n + d(n,k))
//! xi_k = a + ((k - 1 + theta_k) / n) * (b - a)
//! ```
//!
//! with the deletion set `J_K` from a [`DeletionPolicy`], the disturbance
//! `d(n,k) >= 0` from a [`DisturbancePolicy`] and `theta_k` from a
//! [`TagRule`]. The product form replaces `f` by `ln f` and returns the
//! exponential of the sum. Arbitrary (non-uniform) partitions live in
//! [`partition`] and support deletion only.
//!
//! All sums run in ascending `k` through compensated summation, so a given
//! `(spec, n)` always produces the same bits.

mod compensated;
pub mod partition;
mod policy;

use std::fmt;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

pub(crate) use compensated::CompensatedSum;
pub use partition::{mesh, random_refined_partition, tagged_partition_sum, TaggedPartition};
pub use policy::{
    disturbance_value, resolve_deletion, Deletion, DeletionPolicy, DisturbancePolicy,
};

use crate::error::{Error, Result};
use crate::expr::Integrand;

/// A closed interval `[a, b]` with `a < b`, both finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    a: f64,
    b: f64,
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::InvalidArgument(format!(
                "interval needs finite a < b, got [{a}, {b}]"
            )));
        }
        Ok(Interval { a, b })
    }

    pub fn unit() -> Self {
        Interval { a: 0.0, b: 1.0 }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn width(&self) -> f64 {
        self.b - self.a
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.a, self.b)
    }
}

/// Where the sample point sits inside each subinterval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TagRule {
    Left,
    Right,
    Midpoint,
    /// Fixed relative position `theta` in `[0, 1]`.
    Offset(f64),
    /// Independent uniform positions drawn from SplitMix64 seeded with the
    /// given value; draw `k` is used for subinterval `k`.
    Random(u64),
}

impl TagRule {
    pub fn validate(&self) -> Result<()> {
        match *self {
            TagRule::Offset(theta) if !(0.0..=1.0).contains(&theta) => Err(Error::InvalidArgument(
                format!("tag offset must lie in [0, 1], got {theta}"),
            )),
            _ => Ok(()),
        }
    }

    /// Relative positions `theta_1, theta_2, ...`.
    pub fn thetas(&self) -> Thetas {
        match *self {
            TagRule::Left => Thetas::Fixed(0.0),
            TagRule::Right => Thetas::Fixed(1.0),
            TagRule::Midpoint => Thetas::Fixed(0.5),
            TagRule::Offset(theta) => Thetas::Fixed(theta),
            TagRule::Random(seed) => Thetas::Random(SplitMix64::seed_from_u64(seed)),
        }
    }
}

impl fmt::Display for TagRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TagRule::Left => f.write_str("left"),
            TagRule::Right => f.write_str("right"),
            TagRule::Midpoint => f.write_str("midpoint"),
            TagRule::Offset(theta) => write!(f, "offset:{theta}"),
            TagRule::Random(seed) => write!(f, "random:{seed}"),
        }
    }
}

/// Infinite stream of relative tag positions.
pub enum Thetas {
    Fixed(f64),
    Random(SplitMix64),
}

/// Uniform double in `[0, 1)` from the top 53 bits.
pub(crate) fn unit_f64(rng: &mut SplitMix64) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

impl Iterator for Thetas {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        Some(match self {
            Thetas::Fixed(theta) => *theta,
            Thetas::Random(rng) => unit_f64(rng),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Form {
    /// `sum f(xi_k) * width_k`
    Linear,
    /// `exp(sum ln f(xi_k) * width_k)`, the limit of weighted geometric means.
    ExpLog,
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Form::Linear => "linear",
            Form::ExpLog => "explog",
        })
    }
}

/// Full recipe for one family of generalized sums, indexed by `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SumSpec {
    pub integrand: Integrand,
    pub interval: Interval,
    pub tag: TagRule,
    pub deletion: DeletionPolicy,
    pub disturbance: DisturbancePolicy,
    pub form: Form,
}

impl SumSpec {
    /// Right-endpoint, undeleted, undisturbed linear sums.
    pub fn new(integrand: Integrand, interval: Interval) -> Self {
        SumSpec {
            integrand,
            interval,
            tag: TagRule::Right,
            deletion: DeletionPolicy::None,
            disturbance: DisturbancePolicy::Zero,
            form: Form::Linear,
        }
    }

    pub fn with_tag(mut self, tag: TagRule) -> Self {
        self.tag = tag;
        self
    }

    pub fn with_deletion(mut self, deletion: DeletionPolicy) -> Self {
        self.deletion = deletion;
        self
    }

    pub fn with_disturbance(mut self, disturbance: DisturbancePolicy) -> Self {
        self.disturbance = disturbance;
        self
    }

    pub fn with_form(mut self, form: Form) -> Self {
        self.form = form;
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.tag.validate()?;
        self.deletion.validate()?;
        self.disturbance.validate()
    }

    /// The sum (or product) at `n`, whichever the form asks for.
    pub fn value(&self, n: usize) -> Result<f64> {
        match self.form {
            Form::Linear => equal_width_sum(self, n),
            Form::ExpLog => product_form_value(self, n),
        }
    }

    /// Sum of the retained disturbed widths at `n`; never above `b - a`.
    pub fn retained_width(&self, n: usize) -> Result<f64> {
        let mut acc = CompensatedSum::default();
        for_each_term(self, n, |_, _, width| {
            acc.add(width);
            Ok(())
        })?;
        Ok(acc.value())
    }
}

impl fmt::Display for SumSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} on {} | form {} | tag {} | deletion {} | disturbance {}",
            self.integrand, self.interval, self.form, self.tag, self.deletion, self.disturbance
        )
    }
}

/// Walks the retained terms in ascending `k`, handing `(k, xi_k, width_k)`
/// to `visit`.
fn for_each_term(
    spec: &SumSpec,
    n: usize,
    mut visit: impl FnMut(usize, f64, f64) -> Result<()>,
) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "n must be at least 2, got {n}"
        )));
    }
    spec.validate()?;
    let deleted = resolve_deletion(&spec.deletion, n)?;
    let (a, span) = (spec.interval.a(), spec.interval.width());
    let nf = n as f64;
    let uniform_width = spec
        .disturbance
        .is_uniform()
        .then(|| span / (nf + disturbance_value(&spec.disturbance, n, 1)));
    for (k, theta) in (1..=n).zip(spec.tag.thetas()) {
        if deleted.contains(k) {
            continue;
        }
        let tag = a + (((k - 1) as f64 + theta) / nf) * span;
        let width = match uniform_width {
            Some(w) => w,
            None => span / (nf + disturbance_value(&spec.disturbance, n, k)),
        };
        visit(k, tag, width)?;
    }
    Ok(())
}

/// Equal-width generalized Riemann sum with deletion and disturbance.
pub fn equal_width_sum(spec: &SumSpec, n: usize) -> Result<f64> {
    if spec.form != Form::Linear {
        return Err(Error::InvalidArgument(
            "equal_width_sum needs a linear-form spec".into(),
        ));
    }
    let mut acc = CompensatedSum::default();
    for_each_term(spec, n, |_, tag, width| {
        acc.add(spec.integrand.eval(tag)? * width);
        Ok(())
    })?;
    Ok(acc.value())
}

/// Product form `exp(sum ln f(xi_k) * width_k)`, accumulated in log space.
pub fn product_form_value(spec: &SumSpec, n: usize) -> Result<f64> {
    if spec.form != Form::ExpLog {
        return Err(Error::InvalidArgument(
            "product_form_value needs an explog-form spec".into(),
        ));
    }
    let mut acc = CompensatedSum::default();
    for_each_term(spec, n, |k, tag, width| {
        let fx = spec.integrand.eval(tag)?;
        if fx.is_nan() || fx <= 0.0 {
            return Err(Error::domain(
                format!("ln f(xi_{k}) with xi_{k} = {tag}"),
                format!("f(xi_{k}) = {fx} is not positive"),
            ));
        }
        acc.add(fx.ln() * width);
        Ok(())
    })?;
    Ok(acc.value().exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::catalog_lookup;
    use std::f64::consts::{E, PI};

    fn catalog_spec(name: &str) -> SumSpec {
        SumSpec::new(catalog_lookup(name).unwrap(), Interval::unit())
    }

    fn expr_spec(text: &str) -> SumSpec {
        SumSpec::new(Integrand::parse(text).unwrap(), Interval::unit())
    }

    fn close(a: f64, b: f64, ulps: f64) -> bool {
        (a - b).abs() <= ulps * f64::EPSILON * b.abs().max(1.0)
    }

    #[test]
    fn constant_full_sum() {
        assert_eq!(equal_width_sum(&catalog_spec("const1"), 10).unwrap(), 1.0);
    }

    #[test]
    fn constant_prefix_deleted() {
        let spec = catalog_spec("const1").with_deletion(DeletionPolicy::PrefixFixed(3));
        let v = equal_width_sum(&spec, 10).unwrap();
        assert!(close(v, 0.7, 2.0), "{v}");
    }

    #[test]
    fn sin_pi_right_sum() {
        let v = equal_width_sum(&catalog_spec("sin_pi"), 100_000).unwrap();
        assert!((v - 2.0 / PI).abs() < 1e-6);
    }

    #[test]
    fn violating_linear_halves_constant() {
        let spec = catalog_spec("const1").with_disturbance(DisturbancePolicy::ViolatingLinear(1.0));
        for n in [2, 64, 1024, 4096] {
            assert_eq!(equal_width_sum(&spec, n).unwrap(), 0.5);
        }
        for n in [3, 10, 999] {
            assert!(close(equal_width_sum(&spec, n).unwrap(), 0.5, 4.0));
        }
    }

    #[test]
    fn product_of_constant() {
        let spec = expr_spec("2").with_form(Form::ExpLog);
        let v = product_form_value(&spec, 7).unwrap();
        assert!(close(v, 2.0, 4.0), "{v}");
    }

    #[test]
    fn product_of_exp_closed_form() {
        // exp(sum_{k=1}^n (k/n)(1/n)) = exp((n+1)/(2n)); at n = 4 that is exp(5/8).
        let spec = expr_spec("exp(x)").with_form(Form::ExpLog);
        let v = product_form_value(&spec, 4).unwrap();
        assert!(close(v, (5.0f64 / 8.0).exp(), 4.0), "{v}");
        assert!((v - 1.868245957).abs() < 1e-9);
    }

    #[test]
    fn product_of_sin_fails_at_right_end() {
        let spec = catalog_spec("sin_pi").with_form(Form::ExpLog);
        match product_form_value(&spec, 16) {
            Err(Error::Domain { expr, .. }) => assert!(expr.contains("xi_16"), "{expr}"),
            other => panic!("expected domain error, got {other:?}"),
        }
    }

    #[test]
    fn form_mismatch_is_rejected() {
        let spec = catalog_spec("exp");
        assert!(product_form_value(&spec, 4).is_err());
        assert!(equal_width_sum(&spec.with_form(Form::ExpLog), 4).is_err());
    }

    #[test]
    fn small_n_is_rejected() {
        assert!(matches!(
            equal_width_sum(&catalog_spec("const1"), 1),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn tag_rules_place_points() {
        // f(x) = x on [0,1] with n = 4: left gives sum (k-1)/16, right k/16.
        let spec = catalog_spec("poly_x");
        let left = equal_width_sum(&spec.clone().with_tag(TagRule::Left), 4).unwrap();
        let right = equal_width_sum(&spec.clone().with_tag(TagRule::Right), 4).unwrap();
        let mid = equal_width_sum(&spec.clone().with_tag(TagRule::Midpoint), 4).unwrap();
        assert_eq!(left, 6.0 / 16.0);
        assert_eq!(right, 10.0 / 16.0);
        assert_eq!(mid, 0.5);
        let quarter = equal_width_sum(&spec.with_tag(TagRule::Offset(0.25)), 4).unwrap();
        assert!(close(quarter, 7.0 / 16.0, 2.0));
    }

    #[test]
    fn random_tags_are_reproducible_and_inside() {
        let spec = catalog_spec("exp").with_tag(TagRule::Random(42));
        let a = equal_width_sum(&spec, 1000).unwrap();
        let b = equal_width_sum(&spec, 1000).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
        assert!((a - (E - 1.0)).abs() < 2.0 * (E - 1.0) / 1000.0);
        let other = equal_width_sum(&spec.with_tag(TagRule::Random(43)), 1000).unwrap();
        assert_ne!(a, other);
        assert!(TagRule::Random(7)
            .thetas()
            .take(10_000)
            .all(|t| (0.0..1.0).contains(&t)));
    }

    #[test]
    fn offset_outside_unit_range() {
        let spec = catalog_spec("exp").with_tag(TagRule::Offset(1.5));
        assert!(equal_width_sum(&spec, 10).is_err());
    }

    #[test]
    fn width_budget() {
        let base = catalog_spec("sin_pi");
        assert!(close(base.retained_width(100).unwrap(), 1.0, 4.0));
        let disturbed = base.clone().with_disturbance(DisturbancePolicy::SqrtK);
        assert!(disturbed.retained_width(100).unwrap() < 1.0);
        let deleted = base.with_deletion(DeletionPolicy::SuffixFixed(1));
        assert!(close(deleted.retained_width(100).unwrap(), 0.99, 4.0));
    }
}
