//! Policies that break the hypotheses converge to the wrong value.

use riemann_lab::analysis::{falsify, NSchedule, RunOptions};
use riemann_lab::expr::catalog_lookup;
use riemann_lab::sums::{DeletionPolicy, DisturbancePolicy, Interval, SumSpec};

fn main() {
    let unit = Interval::unit();
    let schedule = NSchedule::default();
    let options = RunOptions::default();
    let cases = [
        SumSpec::new(catalog_lookup("sin_pi").unwrap(), unit)
            .with_deletion(DeletionPolicy::PrefixGrowing { c: 0.5, q: 1.0 }),
        SumSpec::new(catalog_lookup("const1").unwrap(), unit)
            .with_disturbance(DisturbancePolicy::ViolatingLinear(1.0)),
        SumSpec::new(catalog_lookup("sin_pi").unwrap(), unit)
            .with_disturbance(DisturbancePolicy::KOverN),
    ];
    for spec in cases {
        let outcome = falsify(&spec, &schedule, 0.25, &options).unwrap();
        let last = outcome.report.last();
        println!("{spec}");
        println!(
            "  reference {:.10}, S({}) = {:.10}: {:?}",
            outcome.report.reference, last.n, last.value, outcome.verdict
        );
    }
}
