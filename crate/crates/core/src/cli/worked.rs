//! The worked limits of sums and products, as runnable specs.
//!
//! Linear rows use `f(x) = sin(pi x)` on `[0, 1]` with right-endpoint tags.
//! Product-form rows need a concrete positive `f`; each is run twice, with
//! `f = exp(x)` (where `integral of ln f = 1/2`) and with `f = 2`.
//! Deletions written `[n^(8/9)]` use `K(n) = floor(n^(8/9))`; the fixed-K
//! rows use `K = 10`.

use crate::analysis::{self, Admissibility, NSchedule, RunOptions, Verdict};
use crate::error::Result;
use crate::expr::catalog_lookup;
use crate::oracle::EndpointMode;
use crate::sums::{DeletionPolicy, DisturbancePolicy, Form, Interval, SumSpec};

pub const FIXED_K: usize = 10;

#[derive(Debug, Clone)]
pub struct WorkedExample {
    pub id: String,
    pub description: &'static str,
    pub spec: SumSpec,
}

fn growing_prefix() -> DeletionPolicy {
    DeletionPolicy::PrefixGrowing {
        c: 1.0,
        q: 8.0 / 9.0,
    }
}

fn growing_suffix() -> DeletionPolicy {
    DeletionPolicy::SuffixGrowing {
        c: 1.0,
        q: 8.0 / 9.0,
    }
}

pub fn worked_examples() -> Vec<WorkedExample> {
    use DeletionPolicy as Del;
    use DisturbancePolicy as Dist;
    let linear: Vec<(&str, &'static str, DeletionPolicy, DisturbancePolicy)> = vec![
        ("1", "plain right-endpoint sum", Del::None, Dist::Zero),
        (
            "1'",
            "widths 1/(n + 1/k)",
            Del::None,
            Dist::PowerOfK { c: 1.0, p: -1.0 },
        ),
        (
            "3",
            "drop first K terms",
            Del::PrefixFixed(FIXED_K),
            Dist::Zero,
        ),
        (
            "4",
            "drop first [n^(8/9)] terms",
            growing_prefix(),
            Dist::Zero,
        ),
        (
            "5",
            "drop last [n^(8/9)] terms",
            growing_suffix(),
            Dist::Zero,
        ),
        ("9", "widths 1/(n + k/n)", Del::None, Dist::KOverN),
        (
            "10",
            "widths 1/(n + [k^(8/9)])",
            Del::None,
            Dist::FloorPowerOfK {
                c: 1.0,
                p: 8.0 / 9.0,
            },
        ),
        (
            "13",
            "drop first [n^(8/9)], widths 1/(n + k/n)",
            growing_prefix(),
            Dist::KOverN,
        ),
        (
            "14",
            "drop last [n^(8/9)], widths 1/(n + k/n)",
            growing_suffix(),
            Dist::KOverN,
        ),
        (
            "15",
            "drop first [n^(8/9)], widths 1/(n + sqrt k)",
            growing_prefix(),
            Dist::SqrtK,
        ),
        (
            "16",
            "drop last [n^(8/9)], widths 1/(n + sqrt k)",
            growing_suffix(),
            Dist::SqrtK,
        ),
    ];
    let product: Vec<(&str, &'static str, DeletionPolicy, DisturbancePolicy)> = vec![
        ("2", "n-th root of the product", Del::None, Dist::Zero),
        (
            "6",
            "drop first K factors",
            Del::PrefixFixed(FIXED_K),
            Dist::Zero,
        ),
        (
            "7",
            "drop first [n^(8/9)] factors",
            growing_prefix(),
            Dist::Zero,
        ),
        (
            "8",
            "drop last [n^(8/9)] factors",
            growing_suffix(),
            Dist::Zero,
        ),
        (
            "11",
            "(n + [n^(8/9)])-th root",
            Del::None,
            Dist::FloorPowerOfN {
                c: 1.0,
                p: 8.0 / 9.0,
            },
        ),
        ("12", "exponents 1/(n + k/n)", Del::None, Dist::KOverN),
        (
            "17",
            "drop first [n^(8/9)], (n + sqrt n)-th root",
            growing_prefix(),
            Dist::PowerOfN { c: 1.0, p: 0.5 },
        ),
        (
            "18",
            "drop last [n^(8/9)], (n + sqrt n)-th root",
            growing_suffix(),
            Dist::PowerOfN { c: 1.0, p: 0.5 },
        ),
        (
            "19",
            "drop first [n^(8/9)], exponents 1/(n + k/n)",
            growing_prefix(),
            Dist::KOverN,
        ),
        (
            "20",
            "drop last [n^(8/9)], exponents 1/(n + k/n)",
            growing_suffix(),
            Dist::KOverN,
        ),
    ];

    let unit = Interval::unit();
    let sin_pi = catalog_lookup("sin_pi").expect("catalog entry");
    let mut out: Vec<WorkedExample> = linear
        .into_iter()
        .map(|(id, description, del, dist)| WorkedExample {
            id: id.to_string(),
            description,
            spec: SumSpec::new(sin_pi.clone(), unit)
                .with_deletion(del)
                .with_disturbance(dist),
        })
        .collect();
    for (name, suffix) in [("exp", "exp"), ("const2", "f=2")] {
        let f = catalog_lookup(name).expect("catalog entry");
        out.extend(product.iter().map(|(id, description, del, dist)| {
            WorkedExample {
                id: format!("{id} ({suffix})"),
                description,
                spec: SumSpec::new(f.clone(), unit)
                    .with_deletion(del.clone())
                    .with_disturbance(*dist)
                    .with_form(Form::ExpLog),
            }
        }));
    }
    out
}

/// Looks up a worked example by id, e.g. `"9"` or `"12 (exp)"`.
pub fn worked_example(id: &str) -> Option<WorkedExample> {
    worked_examples().into_iter().find(|e| e.id == id)
}

#[derive(Debug, Clone)]
pub struct WorkedRow {
    pub id: String,
    pub description: &'static str,
    pub n_max: usize,
    pub value: f64,
    pub reference: f64,
    pub abs_error: f64,
    /// Tolerance for the verdict: the a-priori bound at `n_max` plus the
    /// rounding floor.
    pub tolerance: f64,
    pub verdict: Verdict,
    pub admissibility: Admissibility,
}

/// Runs one worked example with its a-priori bound as the tolerance.
pub fn run_worked(example: &WorkedExample, schedule: &NSchedule) -> Result<WorkedRow> {
    let n_max = *schedule.ns().last().expect("schedules are non-empty");
    let bound = analysis::a_priori_bound(&example.spec, n_max, EndpointMode::Strict)?;
    let reference = analysis::reference_value(&example.spec, EndpointMode::Strict)?;
    let options = RunOptions {
        tolerance: bound + analysis::noise_floor(reference),
        endpoint_mode: EndpointMode::Strict,
    };
    let report = analysis::run_convergence(&example.spec, schedule, &options)?;
    let last = report.last();
    Ok(WorkedRow {
        id: example.id.clone(),
        description: example.description,
        n_max,
        value: last.value,
        reference: report.reference,
        abs_error: last.abs_error,
        tolerance: options.tolerance,
        verdict: report.verdict,
        admissibility: report.admissibility.worst(),
    })
}
