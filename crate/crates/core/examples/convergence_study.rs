//! Run a schedule of n, fit the empirical order and write the CSV report.
//!
//! cargo run --release --example convergence_study > study.csv

use std::io;

use riemann_lab::analysis::{run_convergence, NSchedule, RunOptions};
use riemann_lab::cli::csv_report::write_csv;
use riemann_lab::expr::catalog_lookup;
use riemann_lab::sums::{DeletionPolicy, DisturbancePolicy, Interval, SumSpec};

fn main() {
    let spec = SumSpec::new(catalog_lookup("sin_pi").unwrap(), Interval::unit())
        .with_deletion(DeletionPolicy::PrefixGrowing {
            c: 1.0,
            q: 8.0 / 9.0,
        })
        .with_disturbance(DisturbancePolicy::SqrtK);
    let schedule = NSchedule::new(1 << 8, 2.0, 11).unwrap();
    let options = RunOptions {
        tolerance: 0.1,
        ..RunOptions::default()
    };
    let report = run_convergence(&spec, &schedule, &options).unwrap();

    eprintln!("{}", report.spec);
    if let Some(fit) = report.order {
        eprintln!("order {:.4} (residual {:.1e})", fit.alpha, fit.residual);
    }
    eprintln!("verdict: {}", report.verdict);
    write_csv(&report, io::stdout().lock()).unwrap();
}
