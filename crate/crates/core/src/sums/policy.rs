use std::collections::BTreeSet;
use std::fmt;
use std::ops::RangeInclusive;

use crate::error::{Error, Result};

/// `floor(x)`, except that values within a relative 1e-9 of an integer snap
/// to it, so `512^(8/9)` counts as 256 even when `powf` lands just below.
pub(crate) fn snapped_floor(x: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() <= 1e-9 * r.abs().max(1.0) {
        r
    } else {
        x.floor()
    }
}

/// Which terms of an `n`-term sum are dropped. Indices are 1-based.
#[derive(Debug, Clone, PartialEq)]
pub enum DeletionPolicy {
    None,
    ExplicitSet(BTreeSet<usize>),
    /// Drop `k = 1..=K`.
    PrefixFixed(usize),
    /// Drop `k = n-K+1..=n`.
    SuffixFixed(usize),
    /// Drop the first `K(n) = floor(c * n^q)` terms.
    PrefixGrowing {
        c: f64,
        q: f64,
    },
    /// Drop the last `K(n) = floor(c * n^q)` terms.
    SuffixGrowing {
        c: f64,
        q: f64,
    },
}

/// A resolved deletion set `J_K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Deletion {
    Empty,
    Range(RangeInclusive<usize>),
    Set(BTreeSet<usize>),
}

impl Deletion {
    pub fn contains(&self, k: usize) -> bool {
        match self {
            Deletion::Empty => false,
            Deletion::Range(r) => r.contains(&k),
            Deletion::Set(s) => s.contains(&k),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Deletion::Empty => 0,
            Deletion::Range(r) => r.clone().count(),
            Deletion::Set(s) => s.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_set(&self) -> BTreeSet<usize> {
        match self {
            Deletion::Empty => BTreeSet::new(),
            Deletion::Range(r) => r.clone().collect(),
            Deletion::Set(s) => s.clone(),
        }
    }
}

impl DeletionPolicy {
    pub fn validate(&self) -> Result<()> {
        match self {
            DeletionPolicy::ExplicitSet(set) if set.contains(&0) => Err(Error::InvalidPolicy(
                "deletion indices are 1-based; 0 is not an index".into(),
            )),
            DeletionPolicy::PrefixGrowing { c, q } | DeletionPolicy::SuffixGrowing { c, q } => {
                if !(c.is_finite() && *c > 0.0) {
                    return Err(Error::InvalidPolicy(format!(
                        "growth coefficient c must be finite and > 0, got {c}"
                    )));
                }
                // q = 1 is accepted on purpose: K(n) = floor(c*n) violates
                // K(n)/n -> 0 and is what the falsifier feeds on.
                if !(*q > 0.0 && *q <= 1.0) {
                    return Err(Error::InvalidPolicy(format!(
                        "growth exponent q must lie in (0, 1], got {q}"
                    )));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Number of deleted terms at `n`, before any range check.
    pub fn count(&self, n: usize) -> usize {
        match self {
            DeletionPolicy::None => 0,
            DeletionPolicy::ExplicitSet(set) => set.len(),
            DeletionPolicy::PrefixFixed(k) | DeletionPolicy::SuffixFixed(k) => *k,
            DeletionPolicy::PrefixGrowing { c, q } | DeletionPolicy::SuffixGrowing { c, q } => {
                let k = snapped_floor(c * (n as f64).powf(*q));
                if k <= 0.0 {
                    0
                } else if k >= usize::MAX as f64 {
                    usize::MAX
                } else {
                    k as usize
                }
            }
        }
    }

    pub fn is_none(&self) -> bool {
        matches!(self, DeletionPolicy::None)
    }
}

/// Resolves the deletion set for an `n`-term sum.
///
/// Fails with `InvalidPolicy` unless the set is a proper subset of `1..=n`.
pub fn resolve_deletion(policy: &DeletionPolicy, n: usize) -> Result<Deletion> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    policy.validate()?;
    let k = policy.count(n);
    if k >= n {
        return Err(Error::InvalidPolicy(format!(
            "{policy} deletes {k} of {n} terms; |J_K| < n is required"
        )));
    }
    if k == 0 {
        return Ok(Deletion::Empty);
    }
    Ok(match policy {
        DeletionPolicy::None => Deletion::Empty,
        DeletionPolicy::ExplicitSet(set) => {
            if let Some(&bad) = set.iter().find(|&&i| i > n) {
                return Err(Error::InvalidPolicy(format!(
                    "deletion index {bad} outside 1..={n}"
                )));
            }
            Deletion::Set(set.clone())
        }
        DeletionPolicy::PrefixFixed(_) | DeletionPolicy::PrefixGrowing { .. } => {
            Deletion::Range(1..=k)
        }
        DeletionPolicy::SuffixFixed(_) | DeletionPolicy::SuffixGrowing { .. } => {
            Deletion::Range(n - k + 1..=n)
        }
    })
}

impl fmt::Display for DeletionPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeletionPolicy::None => f.write_str("none"),
            DeletionPolicy::ExplicitSet(set) => {
                let items: Vec<String> = set.iter().map(usize::to_string).collect();
                write!(f, "set:{}", items.join(","))
            }
            DeletionPolicy::PrefixFixed(k) => write!(f, "prefix:{k}"),
            DeletionPolicy::SuffixFixed(k) => write!(f, "suffix:{k}"),
            DeletionPolicy::PrefixGrowing { c, q } => write!(f, "prefix_pow:{c}:{q}"),
            DeletionPolicy::SuffixGrowing { c, q } => write!(f, "suffix_pow:{c}:{q}"),
        }
    }
}

/// Non-negative perturbation `d(n,k)` of the equal width `(b-a)/n`, which
/// becomes `(b-a)/(n + d(n,k))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DisturbancePolicy {
    Zero,
    /// `c * n^p`
    PowerOfN {
        c: f64,
        p: f64,
    },
    /// `floor(c * n^p)`
    FloorPowerOfN {
        c: f64,
        p: f64,
    },
    /// `c * k^p`
    PowerOfK {
        c: f64,
        p: f64,
    },
    /// `floor(c * k^p)`
    FloorPowerOfK {
        c: f64,
        p: f64,
    },
    /// `k / n`
    KOverN,
    /// `sqrt(k)`
    SqrtK,
    Constant(f64),
    /// `c * n`: never admissible, kept for falsification runs.
    ViolatingLinear(f64),
}

impl DisturbancePolicy {
    pub fn validate(&self) -> Result<()> {
        let check_c = |c: f64, strict: bool| {
            let ok = c.is_finite() && if strict { c > 0.0 } else { c >= 0.0 };
            if ok {
                Ok(())
            } else {
                Err(Error::InvalidPolicy(format!(
                    "disturbance coefficient must be finite and {} 0, got {c}",
                    if strict { ">" } else { ">=" }
                )))
            }
        };
        match *self {
            DisturbancePolicy::PowerOfN { c, p }
            | DisturbancePolicy::FloorPowerOfN { c, p }
            | DisturbancePolicy::PowerOfK { c, p }
            | DisturbancePolicy::FloorPowerOfK { c, p } => {
                if !p.is_finite() {
                    return Err(Error::InvalidPolicy(format!(
                        "exponent must be finite, got {p}"
                    )));
                }
                check_c(c, false)
            }
            DisturbancePolicy::Constant(c) => check_c(c, false),
            DisturbancePolicy::ViolatingLinear(c) => check_c(c, true),
            DisturbancePolicy::Zero | DisturbancePolicy::KOverN | DisturbancePolicy::SqrtK => {
                Ok(())
            }
        }
    }

    /// True when `d(n,k)` does not depend on `k`.
    pub fn is_uniform(&self) -> bool {
        !matches!(
            self,
            DisturbancePolicy::PowerOfK { .. }
                | DisturbancePolicy::FloorPowerOfK { .. }
                | DisturbancePolicy::KOverN
                | DisturbancePolicy::SqrtK
        )
    }

    pub fn is_zero(&self) -> bool {
        match *self {
            DisturbancePolicy::Zero => true,
            DisturbancePolicy::PowerOfN { c, .. }
            | DisturbancePolicy::FloorPowerOfN { c, .. }
            | DisturbancePolicy::PowerOfK { c, .. }
            | DisturbancePolicy::FloorPowerOfK { c, .. }
            | DisturbancePolicy::Constant(c) => c == 0.0,
            _ => false,
        }
    }
}

/// `d(n,k)` for `1 <= k <= n`.
pub fn disturbance_value(policy: &DisturbancePolicy, n: usize, k: usize) -> f64 {
    let (nf, kf) = (n as f64, k as f64);
    match *policy {
        DisturbancePolicy::Zero => 0.0,
        DisturbancePolicy::PowerOfN { c, p } => c * nf.powf(p),
        DisturbancePolicy::FloorPowerOfN { c, p } => snapped_floor(c * nf.powf(p)),
        DisturbancePolicy::PowerOfK { c, p } => c * kf.powf(p),
        DisturbancePolicy::FloorPowerOfK { c, p } => snapped_floor(c * kf.powf(p)),
        DisturbancePolicy::KOverN => kf / nf,
        DisturbancePolicy::SqrtK => kf.sqrt(),
        DisturbancePolicy::Constant(c) => c,
        DisturbancePolicy::ViolatingLinear(c) => c * nf,
    }
}

impl fmt::Display for DisturbancePolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DisturbancePolicy::Zero => f.write_str("zero"),
            DisturbancePolicy::PowerOfN { c, p } => write!(f, "pow_n:{c}:{p}"),
            DisturbancePolicy::FloorPowerOfN { c, p } => write!(f, "pow_n_floor:{c}:{p}"),
            DisturbancePolicy::PowerOfK { c, p } => write!(f, "pow_k:{c}:{p}"),
            DisturbancePolicy::FloorPowerOfK { c, p } => write!(f, "pow_k_floor:{c}:{p}"),
            DisturbancePolicy::KOverN => f.write_str("k_over_n"),
            DisturbancePolicy::SqrtK => f.write_str("sqrt_k"),
            DisturbancePolicy::Constant(c) => write!(f, "const:{c}"),
            DisturbancePolicy::ViolatingLinear(c) => write!(f, "violating:{c}"),
        }
    }
}
