//! Parse, print and evaluate integrand expressions.
//!
//! cargo run --example expressions -- "x^2 * exp(-x)"

use riemann_lab::expr::{catalog_lookup, catalog_names, parse};

fn main() {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "sin(pi*x) + x^2/2".to_string());
    let expr = match parse(&text) {
        Ok(e) => e,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    };
    println!("parsed:  {expr}");
    for x in [0.0, 0.25, 0.5, 1.0] {
        match expr.eval(x) {
            Ok(v) => println!("  f({x}) = {v:?}"),
            Err(e) => println!("  f({x}): {e}"),
        }
    }

    println!("\ncatalog:");
    for name in catalog_names() {
        let f = catalog_lookup(name).unwrap();
        let interval = f.exact_interval().unwrap();
        let exact = f.exact_integral(interval).unwrap();
        println!(
            "  {name:<12} {:<20} integral on {interval} = {exact:.15}",
            f.expr().to_string()
        );
    }
}
