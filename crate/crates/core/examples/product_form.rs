//! Geometric-mean products (f(x_1) ... f(x_n))^(1/n) and their deleted and
//! disturbed variants, which tend to exp(integral of ln f).

use riemann_lab::expr::{catalog_lookup, Integrand};
use riemann_lab::oracle::{log_reference, EndpointMode};
use riemann_lab::sums::{DeletionPolicy, DisturbancePolicy, Form, Interval, SumSpec};

fn main() {
    let unit = Interval::unit();
    let integrands = [
        catalog_lookup("exp").unwrap(),
        Integrand::parse("1 + x^2").unwrap(),
        catalog_lookup("const2").unwrap(),
    ];
    for f in integrands {
        let target = log_reference(&f, unit, EndpointMode::Strict).unwrap().exp();
        println!("f = {f}, exp(integral of ln f) = {target:.12}");
        let variants = [
            (DeletionPolicy::None, DisturbancePolicy::Zero),
            (DeletionPolicy::PrefixFixed(10), DisturbancePolicy::Zero),
            (DeletionPolicy::None, DisturbancePolicy::KOverN),
            (
                DeletionPolicy::None,
                DisturbancePolicy::FloorPowerOfN {
                    c: 1.0,
                    p: 8.0 / 9.0,
                },
            ),
        ];
        for (del, dist) in variants {
            let spec = SumSpec::new(f.clone(), unit)
                .with_deletion(del)
                .with_disturbance(dist)
                .with_form(Form::ExpLog);
            let p = spec.value(1 << 16).unwrap();
            println!(
                "  {:<8} {:<22} P = {p:.12}  error {:+.3e}",
                spec.deletion.to_string(),
                dist.to_string(),
                p - target
            );
        }
    }

    // Products need f > 0 at every tag.
    let bad = SumSpec::new(catalog_lookup("sin_pi").unwrap(), unit).with_form(Form::ExpLog);
    println!(
        "\nsin(pi x) with right tags: {}",
        bad.value(100).unwrap_err()
    );
}
