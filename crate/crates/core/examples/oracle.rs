//! The reference integrator: adaptive Simpson with an error estimate.

use riemann_lab::expr::Integrand;
use riemann_lab::oracle::{adaptive_simpson, integrate_adaptive, log_reference, EndpointMode};
use riemann_lab::sums::Interval;

fn main() {
    let unit = Interval::unit();
    for text in ["sin(pi*x)", "sqrt(x)", "floor(3*x)", "exp(-x^2)"] {
        let f = Integrand::parse(text).unwrap();
        let r = integrate_adaptive(&f, unit, 1e-10).unwrap();
        println!(
            "{text:<12} {:.15}  est. error {:.1e}, {} evaluations",
            r.value, r.error_estimate, r.evaluations
        );
    }

    let r = adaptive_simpson(
        |x| Ok(1.0 / (1.0 + x * x)),
        Interval::new(0.0, 1.0).unwrap(),
        1e-12,
    )
    .unwrap();
    println!("4 * integral of 1/(1+x^2) = {:.15}", 4.0 * r.value);

    // ln f with f vanishing at an endpoint needs the improper mode.
    let x = Integrand::parse("x").unwrap();
    println!(
        "strict:   {}",
        log_reference(&x, unit, EndpointMode::Strict).unwrap_err()
    );
    println!(
        "improper: integral of ln x = {:.9}",
        log_reference(&x, unit, EndpointMode::AllowImproper).unwrap()
    );
}
