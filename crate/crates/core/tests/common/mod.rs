//! Strategies and property checks shared by the property and acceptance
//! targets.
#![allow(dead_code)]

use std::collections::BTreeSet;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use riemann_lab::analysis::{self, estimate_order};
use riemann_lab::expr::{Expr, Func, Integrand};
use riemann_lab::sums::{
    disturbance_value, equal_width_sum, product_form_value, resolve_deletion, tagged_partition_sum,
    DeletionPolicy, DisturbancePolicy, Form, Interval, SumSpec, TagRule, TaggedPartition,
};

pub fn ulp(x: f64) -> f64 {
    let x = x.abs();
    if x == 0.0 {
        f64::MIN_POSITIVE
    } else {
        f64::from_bits(x.to_bits() + 1) - x
    }
}

/// Seeded runner so the acceptance counts are reproducible.
pub fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

const NONNEG: &[&str] = &[
    "1",
    "x^2",
    "exp(-x)",
    "abs(sin(3*x))",
    "1 + cos(x)",
    "sqrt(abs(x))",
    "floor(abs(x)) + 0.5",
    "exp(x)",
    "x^4 - 2*x^2 + 1",
];

const POSITIVE: &[&str] = &[
    "exp(x)",
    "2",
    "1 + x^2",
    "2 + sin(5*x)",
    "exp(-x^2)",
    "1/(1 + x^2)",
    "3 + floor(x)",
];

const ANY: &[&str] = &[
    "sin(pi*x)",
    "x^3 - x",
    "cos(7*x) * exp(x)",
    "tan(x/4)",
    "x - floor(x)",
    "-abs(x) + 0.25",
];

fn from_list(list: &'static [&'static str]) -> impl Strategy<Value = Integrand> {
    prop::sample::select(list).prop_map(|s| Integrand::parse(s).unwrap())
}

pub fn nonneg_integrand() -> impl Strategy<Value = Integrand> {
    from_list(NONNEG)
}

pub fn positive_integrand() -> impl Strategy<Value = Integrand> {
    from_list(POSITIVE)
}

pub fn any_integrand() -> impl Strategy<Value = Integrand> {
    prop_oneof![from_list(NONNEG), from_list(POSITIVE), from_list(ANY)]
}

pub fn interval() -> impl Strategy<Value = Interval> {
    (-1.0f64..1.0, 0.5f64..2.0).prop_map(|(a, w)| Interval::new(a, a + w).unwrap())
}

pub fn tag() -> impl Strategy<Value = TagRule> {
    prop_oneof![
        Just(TagRule::Left),
        Just(TagRule::Right),
        Just(TagRule::Midpoint),
        (0.0f64..=1.0).prop_map(TagRule::Offset),
        any::<u64>().prop_map(TagRule::Random),
    ]
}

pub fn disturbance() -> impl Strategy<Value = DisturbancePolicy> {
    use DisturbancePolicy as D;
    prop_oneof![
        Just(D::Zero),
        (0.01f64..5.0, -1.0f64..0.95).prop_map(|(c, p)| D::PowerOfN { c, p }),
        (0.01f64..5.0, 0.1f64..0.95).prop_map(|(c, p)| D::FloorPowerOfN { c, p }),
        (0.01f64..5.0, -2.0f64..1.0).prop_map(|(c, p)| D::PowerOfK { c, p }),
        (0.01f64..5.0, 0.1f64..1.0).prop_map(|(c, p)| D::FloorPowerOfK { c, p }),
        Just(D::KOverN),
        Just(D::SqrtK),
        (0.01f64..10.0).prop_map(D::Constant),
        (0.01f64..2.0).prop_map(D::ViolatingLinear),
    ]
}

/// Deletion policies that keep `|J_K| < n` for every `n >= 8`.
pub fn deletion(n: usize) -> impl Strategy<Value = DeletionPolicy> {
    use DeletionPolicy as D;
    prop_oneof![
        Just(D::None),
        (0usize..6).prop_map(D::PrefixFixed),
        (0usize..6).prop_map(D::SuffixFixed),
        (0.1f64..1.0, 0.1f64..0.9).prop_map(|(c, q)| D::PrefixGrowing { c, q }),
        (0.1f64..1.0, 0.1f64..0.9).prop_map(|(c, q)| D::SuffixGrowing { c, q }),
        prop::collection::btree_set(1..=n, 0..6).prop_map(D::ExplicitSet),
    ]
}

fn size() -> impl Strategy<Value = usize> {
    8usize..3000
}

/// `(spec, n)` with `f >= 0` everywhere.
pub fn nonneg_spec() -> impl Strategy<Value = (SumSpec, usize)> {
    size().prop_flat_map(|n| {
        (
            nonneg_integrand(),
            interval(),
            tag(),
            deletion(n),
            disturbance(),
        )
            .prop_map(move |(f, i, t, del, dist)| {
                let spec = SumSpec::new(f, i)
                    .with_tag(t)
                    .with_deletion(del)
                    .with_disturbance(dist);
                (spec, n)
            })
    })
}

pub fn positive_spec() -> impl Strategy<Value = (SumSpec, usize)> {
    size().prop_flat_map(|n| {
        (
            positive_integrand(),
            interval(),
            tag(),
            deletion(n),
            disturbance(),
        )
            .prop_map(move |(f, i, t, del, dist)| {
                let spec = SumSpec::new(f, i)
                    .with_tag(t)
                    .with_deletion(del)
                    .with_disturbance(dist)
                    .with_form(Form::ExpLog);
                (spec, n)
            })
    })
}

pub fn constant_case() -> impl Strategy<Value = (f64, Interval, usize, TagRule)> {
    (
        -100.0f64..100.0,
        -50.0f64..50.0,
        1e-3f64..100.0,
        2usize..5000,
        tag(),
    )
        .prop_map(|(c, a, w, n, t)| (c, Interval::new(a, a + w).unwrap(), n, t))
}

pub fn path_case() -> impl Strategy<Value = (Integrand, Interval, usize, BTreeSet<usize>)> {
    size().prop_flat_map(|n| {
        (
            any_integrand(),
            interval(),
            Just(n),
            prop::collection::btree_set(1..=n, 0..6),
        )
    })
}

fn fail(msg: String) -> Result<(), TestCaseError> {
    Err(TestCaseError::fail(msg))
}

pub fn check_constant(
    c: f64,
    interval: Interval,
    n: usize,
    tag: TagRule,
) -> Result<(), TestCaseError> {
    let f = Integrand::from_expr(Expr::Num(c));
    let spec = SumSpec::new(f, interval).with_tag(tag);
    let s = equal_width_sum(&spec, n).unwrap();
    let exact = c * interval.width();
    let tol = n as f64 * 4.0 * ulp(exact);
    if (s - exact).abs() > tol {
        return fail(format!("c={c} on {interval}, n={n}: {s} vs {exact}"));
    }
    Ok(())
}

fn uniform(d: f64) -> DisturbancePolicy {
    if d == 0.0 {
        DisturbancePolicy::Zero
    } else {
        DisturbancePolicy::Constant(d)
    }
}

pub fn check_squeeze(spec: &SumSpec, n: usize) -> Result<(), TestCaseError> {
    let ds: Vec<f64> = (1..=n)
        .map(|k| disturbance_value(&spec.disturbance, n, k))
        .collect();
    let d_min = ds.iter().copied().fold(f64::INFINITY, f64::min);
    let d_max = ds.iter().copied().fold(0.0, f64::max);
    let s = equal_width_sum(spec, n).unwrap();
    let lo = equal_width_sum(&spec.clone().with_disturbance(uniform(d_max)), n).unwrap();
    let hi = equal_width_sum(&spec.clone().with_disturbance(uniform(d_min)), n).unwrap();
    let slack = 4.0 * ulp(hi);
    if !(lo <= s + slack && s <= hi + slack) {
        return fail(format!("{spec} at n={n}: {lo} <= {s} <= {hi} violated"));
    }
    Ok(())
}

pub fn check_explog(spec: &SumSpec, n: usize) -> Result<(), TestCaseError> {
    let p = product_form_value(spec, n).unwrap();
    let ln_f = Integrand::from_expr(Expr::call(Func::Ln, spec.integrand.expr().clone()));
    let mut linear = spec.clone().with_form(Form::Linear);
    linear.integrand = ln_f;
    let l = equal_width_sum(&linear, n).unwrap();
    let u = 4.0 * ulp(l);
    let (lo, hi) = ((l - u).exp(), (l + u).exp());
    if !(lo - ulp(lo) <= p && p <= hi + ulp(hi)) {
        return fail(format!(
            "{spec} at n={n}: product {p} vs exp({l}) = {}",
            l.exp()
        ));
    }
    Ok(())
}

pub fn check_path(
    f: &Integrand,
    interval: Interval,
    n: usize,
    deleted: &BTreeSet<usize>,
) -> Result<(), TestCaseError> {
    let partition = TaggedPartition::equal_width(interval, n, TagRule::Right).unwrap();
    let tagged = tagged_partition_sum(f, &partition, deleted).unwrap();
    let spec = SumSpec::new(f.clone(), interval)
        .with_deletion(DeletionPolicy::ExplicitSet(deleted.clone()));
    let direct = equal_width_sum(&spec, n).unwrap();
    let scale: f64 = partition
        .tags()
        .iter()
        .map(|&x| f.eval(x).unwrap().abs())
        .sum::<f64>()
        * interval.width()
        / n as f64;
    let tol = 4.0 * n as f64 * ulp(scale);
    if (tagged - direct).abs() > tol {
        return fail(format!(
            "{f} on {interval}, n={n}: {tagged} vs {direct} (tol {tol:e})"
        ));
    }
    Ok(())
}

pub fn check_order(alpha: f64, c: f64, start: usize, count: usize) -> Result<(), TestCaseError> {
    let ns: Vec<usize> = (0..count).map(|i| start << i).collect();
    let errs: Vec<f64> = ns.iter().map(|&n| c * (n as f64).powf(alpha)).collect();
    let fit = estimate_order(&ns, &errs, 1.0).unwrap();
    if (fit.alpha - alpha).abs() > 1e-9 {
        return fail(format!("alpha {alpha}: fitted {}", fit.alpha));
    }
    Ok(())
}

pub fn check_deletion_monotone(
    spec: &SumSpec,
    n: usize,
    extra: &BTreeSet<usize>,
) -> Result<(), TestCaseError> {
    let base = resolve_deletion(&spec.deletion, n).unwrap().to_set();
    let mut bigger = base.clone();
    bigger.extend(extra.iter().copied());
    if bigger.len() >= n {
        return Ok(());
    }
    let small = spec
        .clone()
        .with_deletion(DeletionPolicy::ExplicitSet(base));
    let large = spec
        .clone()
        .with_deletion(DeletionPolicy::ExplicitSet(bigger));
    let (s_small, s_large) = (
        equal_width_sum(&small, n).unwrap(),
        equal_width_sum(&large, n).unwrap(),
    );
    if s_large > s_small + 2.0 * ulp(s_small) {
        return fail(format!("{spec} at n={n}: {s_large} > {s_small}"));
    }
    Ok(())
}

pub fn check_width_budget(spec: &SumSpec, n: usize) -> Result<(), TestCaseError> {
    let w = spec.retained_width(n).unwrap();
    let span = spec.interval.width();
    let full = spec.deletion.count(n) == 0 && spec.disturbance.is_zero();
    let tol = 4.0 * n as f64 * ulp(span);
    if w > span + tol {
        return fail(format!("{spec} at n={n}: width {w} > {span}"));
    }
    if full && (w - span).abs() > tol {
        return fail(format!("{spec} at n={n}: width {w} != {span}"));
    }
    let disturbed = (1..=n).any(|k| disturbance_value(&spec.disturbance, n, k) > 0.0);
    if !full && (!resolve_deletion(&spec.deletion, n).unwrap().is_empty() || disturbed) && w >= span
    {
        return fail(format!("{spec} at n={n}: width {w} not below {span}"));
    }
    Ok(())
}

pub fn check_parallel_matches_sequential(
    spec: &SumSpec,
    ns: &[usize],
) -> Result<(), TestCaseError> {
    let par = analysis::evaluate_schedule(spec, ns).unwrap();
    let seq: Vec<f64> = ns.iter().map(|&n| spec.value(n).unwrap()).collect();
    let same = par
        .iter()
        .zip(&seq)
        .all(|(a, b)| a.to_bits() == b.to_bits());
    if !same {
        return fail(format!("{spec}: parallel {par:?} vs sequential {seq:?}"));
    }
    Ok(())
}
