//! Arbitrary tagged partitions, used for deleted sums over non-uniform
//! meshes. Disturbance is defined only for equal widths and is not offered
//! here.

use std::collections::BTreeSet;

use rand_core::SeedableRng;
use rand_xoshiro::SplitMix64;

use super::{unit_f64, CompensatedSum, Interval, TagRule};
use crate::error::{Error, Result};
use crate::expr::Integrand;

/// Points `a = x_0 < x_1 < ... < x_n = b` with one tag per subinterval.
#[derive(Debug, Clone, PartialEq)]
pub struct TaggedPartition {
    points: Vec<f64>,
    tags: Vec<f64>,
}

impl TaggedPartition {
    pub fn new(points: Vec<f64>, tags: Vec<f64>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidArgument(
                "a partition needs at least two points".into(),
            ));
        }
        if points.iter().chain(&tags).any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(
                "partition values must be finite".into(),
            ));
        }
        if let Some(i) = points.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(format!(
                "partition points must increase strictly (x_{i} = {}, x_{} = {})",
                points[i],
                i + 1,
                points[i + 1]
            )));
        }
        if tags.len() != points.len() - 1 {
            return Err(Error::InvalidArgument(format!(
                "{} subintervals need {} tags, got {}",
                points.len() - 1,
                points.len() - 1,
                tags.len()
            )));
        }
        for (k, (w, &tag)) in points.windows(2).zip(&tags).enumerate() {
            if !(w[0] <= tag && tag <= w[1]) {
                return Err(Error::InvalidArgument(format!(
                    "tag {} = {tag} lies outside [{}, {}]",
                    k + 1,
                    w[0],
                    w[1]
                )));
            }
        }
        Ok(TaggedPartition { points, tags })
    }

    /// `n` equal subintervals with `x_k = a + (k/n)(b-a)` and `x_n = b`.
    pub fn equal_width(interval: Interval, n: usize, tag: TagRule) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be at least 1".into()));
        }
        tag.validate()?;
        let (a, b) = (interval.a(), interval.b());
        let span = interval.width();
        let mut points: Vec<f64> = (0..n).map(|k| a + (k as f64 / n as f64) * span).collect();
        points.push(b);
        let tags = points
            .windows(2)
            .zip(tag.thetas())
            .map(|(w, theta)| place_tag(w[0], w[1], theta))
            .collect();
        TaggedPartition::new(points, tags)
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn tags(&self) -> &[f64] {
        &self.tags
    }

    /// Number of subintervals.
    pub fn len(&self) -> usize {
        self.tags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tags.is_empty()
    }

    pub fn widths(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.windows(2).map(|w| w[1] - w[0])
    }
}

fn place_tag(lo: f64, hi: f64, theta: f64) -> f64 {
    if theta == 0.0 {
        lo
    } else if theta == 1.0 {
        hi
    } else {
        (lo + theta * (hi - lo)).clamp(lo, hi)
    }
}

/// Largest subinterval width.
pub fn mesh(partition: &TaggedPartition) -> f64 {
    partition.widths().fold(0.0, f64::max)
}

/// `sum over k not in deleted of f(xi_k) * dx_k`, ascending `k`.
pub fn tagged_partition_sum(
    f: &Integrand,
    partition: &TaggedPartition,
    deleted: &BTreeSet<usize>,
) -> Result<f64> {
    let n = partition.len();
    if let Some(&bad) = deleted.iter().find(|&&i| i == 0 || i > n) {
        return Err(Error::Index { index: bad, n });
    }
    if deleted.len() >= n {
        return Err(Error::InvalidPolicy(format!(
            "deleting {} of {n} terms; |J_K| < n is required",
            deleted.len()
        )));
    }
    let mut acc = CompensatedSum::default();
    for (k, (width, &tag)) in (1..=n).zip(partition.widths().zip(&partition.tags)) {
        if deleted.contains(&k) {
            continue;
        }
        acc.add(f.eval(tag)? * width);
    }
    Ok(acc.value())
}

/// Random partition of `interval` into `n` pieces, reproducible from `seed`.
///
/// Raw widths `skew + (1 - skew) * u_k` are normalized to fill `[a, b]`, so
/// every width is at least `skew * (b - a) / n`. Tags are then drawn
/// uniformly inside each subinterval from the same SplitMix64 stream.
pub fn random_refined_partition(
    interval: Interval,
    n: usize,
    seed: u64,
    skew: f64,
) -> Result<TaggedPartition> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if !(skew > 0.0 && skew <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "skew must lie in (0, 1], got {skew}"
        )));
    }
    let mut rng = SplitMix64::seed_from_u64(seed);
    let raw: Vec<f64> = (0..n)
        .map(|_| skew + (1.0 - skew) * unit_f64(&mut rng))
        .collect();
    let mut total = CompensatedSum::default();
    total.extend(raw.iter().copied());
    let total = total.value();

    let (a, b) = (interval.a(), interval.b());
    let span = interval.width();
    let mut points = Vec::with_capacity(n + 1);
    points.push(a);
    let mut run = CompensatedSum::default();
    for w in &raw[..n - 1] {
        run.add(*w);
        points.push(a + span * (run.value() / total));
    }
    points.push(b);
    let tags = points
        .windows(2)
        .map(|w| place_tag(w[0], w[1], unit_f64(&mut rng)))
        .collect();
    TaggedPartition::new(points, tags)
}
