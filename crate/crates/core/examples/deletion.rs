//! Right-endpoint sums of sin(pi x) with terms deleted.
//!
//! A fixed number of deleted terms costs O(1/n); deleting floor(n^(8/9))
//! terms still converges, but only like n^(-1/9).

use riemann_lab::expr::catalog_lookup;
use riemann_lab::sums::{resolve_deletion, DeletionPolicy, Interval, SumSpec};

fn main() {
    let base = SumSpec::new(catalog_lookup("sin_pi").unwrap(), Interval::unit());
    let target = 2.0 / std::f64::consts::PI;
    let policies = [
        DeletionPolicy::None,
        DeletionPolicy::PrefixFixed(10),
        DeletionPolicy::PrefixGrowing {
            c: 1.0,
            q: 8.0 / 9.0,
        },
        DeletionPolicy::SuffixGrowing {
            c: 1.0,
            q: 8.0 / 9.0,
        },
        DeletionPolicy::PrefixGrowing { c: 0.5, q: 1.0 },
    ];
    println!(
        "{:<22} {:>9} {:>8} {:>14}",
        "deletion", "n", "|J_K|", "S(n) - 2/pi"
    );
    for policy in policies {
        let spec = base.clone().with_deletion(policy);
        for n in [1_000, 100_000, 1 << 20] {
            let k = resolve_deletion(&spec.deletion, n).unwrap().len();
            let s = spec.value(n).unwrap();
            println!(
                "{:<22} {n:>9} {k:>8} {:>14.6e}",
                spec.deletion.to_string(),
                s - target
            );
        }
    }
}
