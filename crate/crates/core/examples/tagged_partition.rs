//! Sums over arbitrary tagged partitions, with deletion.
//!
//! Random partitions refined towards zero mesh give sums converging to the
//! integral whatever the tags, as long as the deleted width vanishes.

use std::collections::BTreeSet;

use riemann_lab::expr::Integrand;
use riemann_lab::oracle::reference_integral;
use riemann_lab::sums::{mesh, random_refined_partition, tagged_partition_sum, Interval};

fn main() {
    let f = Integrand::parse("x * cos(3*x) + 1").unwrap();
    let interval = Interval::new(-1.0, 2.0).unwrap();
    let exact = reference_integral(&f, interval).unwrap();
    println!("f = {f} on {interval}, oracle integral {exact:.12}");
    println!(
        "{:>8} {:>12} {:>14} {:>14}",
        "n", "mesh", "error", "error (del 3)"
    );
    for n in [10, 100, 1_000, 10_000, 100_000] {
        let p = random_refined_partition(interval, n, 42, 0.25).unwrap();
        let full = tagged_partition_sum(&f, &p, &BTreeSet::new()).unwrap();
        let deleted: BTreeSet<usize> = [1, n / 2, n].into_iter().collect();
        let partial = tagged_partition_sum(&f, &p, &deleted).unwrap();
        println!(
            "{n:>8} {:>12.3e} {:>14.3e} {:>14.3e}",
            mesh(&p),
            full - exact,
            partial - exact
        );
    }
}
