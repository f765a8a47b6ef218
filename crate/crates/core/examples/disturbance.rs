//! Disturbed meshes: widths (b-a)/(n + d(n,k)) instead of (b-a)/n.
//!
//! For f >= 0 the disturbed sum is squeezed between the sums with the
//! uniform disturbances max_k d and min_k d.

use riemann_lab::expr::catalog_lookup;
use riemann_lab::sums::{disturbance_value, DisturbancePolicy, Interval, SumSpec};

fn main() {
    let base = SumSpec::new(catalog_lookup("sin_pi").unwrap(), Interval::unit());
    let target = 2.0 / std::f64::consts::PI;
    let policies = [
        DisturbancePolicy::KOverN,
        DisturbancePolicy::FloorPowerOfK {
            c: 1.0,
            p: 8.0 / 9.0,
        },
        DisturbancePolicy::SqrtK,
        DisturbancePolicy::PowerOfN { c: 1.0, p: 0.5 },
        DisturbancePolicy::ViolatingLinear(1.0),
    ];
    let n = 100_000;
    for policy in policies {
        let spec = base.clone().with_disturbance(policy);
        let ds: Vec<f64> = (1..=n).map(|k| disturbance_value(&policy, n, k)).collect();
        let d_min = ds.iter().copied().fold(f64::INFINITY, f64::min);
        let d_max = ds.iter().copied().fold(0.0, f64::max);
        let lo = base
            .clone()
            .with_disturbance(DisturbancePolicy::Constant(d_max))
            .value(n)
            .unwrap();
        let hi = base
            .clone()
            .with_disturbance(DisturbancePolicy::Constant(d_min))
            .value(n)
            .unwrap();
        let s = spec.value(n).unwrap();
        println!("{policy}");
        println!("  S(n) - 2/pi = {:.6e}", s - target);
        println!("  squeeze: {lo:.12} <= {s:.12} <= {hi:.12}");
        println!("  retained width: {:.12}", spec.retained_width(n).unwrap());
    }
}
