//! Finite-n check of whether deletion and disturbance policies meet the
//! hypotheses K(n)/n -> 0 and max_k d(n,k)/n -> 0.

use riemann_lab::analysis::{check_admissibility, NSchedule};
use riemann_lab::expr::catalog_lookup;
use riemann_lab::sums::{DeletionPolicy, DisturbancePolicy, Interval, SumSpec};

fn main() {
    let base = SumSpec::new(catalog_lookup("sin_pi").unwrap(), Interval::unit());
    let schedule = NSchedule::default();
    let cases = [
        (DeletionPolicy::PrefixFixed(10), DisturbancePolicy::KOverN),
        (
            DeletionPolicy::PrefixGrowing {
                c: 1.0,
                q: 8.0 / 9.0,
            },
            DisturbancePolicy::SqrtK,
        ),
        (
            DeletionPolicy::None,
            DisturbancePolicy::PowerOfN { c: 1.0, p: 0.99 },
        ),
        (
            DeletionPolicy::None,
            DisturbancePolicy::PowerOfN { c: 1.0, p: 1.0 },
        ),
        (
            DeletionPolicy::PrefixGrowing { c: 0.5, q: 1.0 },
            DisturbancePolicy::Zero,
        ),
    ];
    for (del, dist) in cases {
        let spec = base.clone().with_deletion(del).with_disturbance(dist);
        let r = check_admissibility(&spec, &schedule);
        println!(
            "{:<18} {:<16} deletion {:<12} disturbance {:<12} -> {}",
            spec.deletion.to_string(),
            dist.to_string(),
            r.deletion.to_string(),
            r.disturbance.to_string(),
            r.worst()
        );
    }
}
