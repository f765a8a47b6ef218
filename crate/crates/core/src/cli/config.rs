//! Flat `key = value` experiment configs.
//!
//! One pair per line; `#` starts a comment; blank lines are ignored. Unknown
//! or repeated keys are errors. Every key is optional:
//!
//! | key | default |
//! |---|---|
//! | `function` | `catalog:sin_pi` (expression text or `catalog:<name>`) |
//! | `a`, `b` | `0`, `1` |
//! | `tag` | `right` (`left`, `midpoint`, `offset:<theta>`, `random:<seed>`) |
//! | `form` | `linear` (`explog`) |
//! | `deletion` | `none` (`prefix:<K>`, `suffix:<K>`, `prefix_pow:<c>:<q>`, `suffix_pow:<c>:<q>`, `set:<i,j,...>`) |
//! | `disturbance` | `zero` (`pow_n:<c>:<p>`, `pow_n_floor:<c>:<p>`, `pow_k:<c>:<p>`, `pow_k_floor:<c>:<p>`, `k_over_n`, `sqrt_k`, `const:<c>`, `violating:<c>`) |
//! | `schedule.start`, `schedule.factor`, `schedule.count` | `1024`, `2`, `11` |
//! | `tolerance` | `1e-6` |

use std::collections::{BTreeSet, HashSet};
use std::str::FromStr;

use thiserror::Error;

use crate::analysis::{NSchedule, RunOptions};
use crate::expr::{catalog_lookup, Integrand};
use crate::sums::{DeletionPolicy, DisturbancePolicy, Form, Interval, SumSpec, TagRule};

#[derive(Debug, Clone, PartialEq, Error)]
#[error("{}{message}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
pub struct ConfigError {
    pub line: Option<usize>,
    pub message: String,
}

impl ConfigError {
    fn new(message: impl Into<String>) -> Self {
        ConfigError {
            line: None,
            message: message.into(),
        }
    }

    fn at(mut self, line: usize) -> Self {
        self.line.get_or_insert(line);
        self
    }
}

impl From<crate::error::Error> for ConfigError {
    fn from(e: crate::error::Error) -> Self {
        ConfigError::new(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub spec: SumSpec,
    pub schedule: NSchedule,
    pub tolerance: f64,
}

impl ExperimentConfig {
    pub fn run_options(&self) -> RunOptions {
        RunOptions {
            tolerance: self.tolerance,
            ..RunOptions::default()
        }
    }
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        parse_config("").expect("empty config is valid")
    }
}

fn number<T: FromStr>(what: &str, text: &str) -> Result<T, ConfigError> {
    text.trim()
        .parse()
        .map_err(|_| ConfigError::new(format!("{what}: cannot parse `{text}` as a number")))
}

fn real(what: &str, text: &str) -> Result<f64, ConfigError> {
    let v: f64 = number(what, text)?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(ConfigError::new(format!("{what}: `{text}` is not finite")))
    }
}

/// Splits `name:arg1:arg2` and checks the argument count.
fn split_args<'a>(what: &str, text: &'a str, arity: usize) -> Result<Vec<&'a str>, ConfigError> {
    let args: Vec<&str> = text.split(':').skip(1).collect();
    if args.len() != arity {
        return Err(ConfigError::new(format!(
            "{what}: `{text}` takes {arity} argument(s) after the name"
        )));
    }
    Ok(args)
}

pub fn parse_tag(text: &str) -> Result<TagRule, ConfigError> {
    let head = text.split(':').next().unwrap_or_default();
    let tag = match head {
        "left" | "right" | "midpoint" => {
            split_args("tag", text, 0)?;
            match head {
                "left" => TagRule::Left,
                "right" => TagRule::Right,
                _ => TagRule::Midpoint,
            }
        }
        "offset" => TagRule::Offset(real("tag offset", split_args("tag", text, 1)?[0])?),
        "random" => TagRule::Random(number("tag seed", split_args("tag", text, 1)?[0])?),
        _ => return Err(ConfigError::new(format!("unknown tag rule `{text}`"))),
    };
    tag.validate()?;
    Ok(tag)
}

pub fn parse_form(text: &str) -> Result<Form, ConfigError> {
    match text {
        "linear" => Ok(Form::Linear),
        "explog" => Ok(Form::ExpLog),
        _ => Err(ConfigError::new(format!(
            "unknown form `{text}` (linear|explog)"
        ))),
    }
}

pub fn parse_deletion(text: &str) -> Result<DeletionPolicy, ConfigError> {
    let head = text.split(':').next().unwrap_or_default();
    let policy = match head {
        "none" => {
            split_args("deletion", text, 0)?;
            DeletionPolicy::None
        }
        "prefix" => {
            DeletionPolicy::PrefixFixed(number("deletion K", split_args("deletion", text, 1)?[0])?)
        }
        "suffix" => {
            DeletionPolicy::SuffixFixed(number("deletion K", split_args("deletion", text, 1)?[0])?)
        }
        "prefix_pow" | "suffix_pow" => {
            let args = split_args("deletion", text, 2)?;
            let (c, q) = (real("deletion c", args[0])?, real("deletion q", args[1])?);
            if head == "prefix_pow" {
                DeletionPolicy::PrefixGrowing { c, q }
            } else {
                DeletionPolicy::SuffixGrowing { c, q }
            }
        }
        "set" => {
            let list = split_args("deletion", text, 1)?[0];
            let set = list
                .split(',')
                .map(|s| number::<usize>("deletion index", s))
                .collect::<Result<BTreeSet<_>, _>>()?;
            DeletionPolicy::ExplicitSet(set)
        }
        _ => {
            return Err(ConfigError::new(format!(
                "unknown deletion policy `{text}`"
            )))
        }
    };
    policy.validate()?;
    Ok(policy)
}

pub fn parse_disturbance(text: &str) -> Result<DisturbancePolicy, ConfigError> {
    let head = text.split(':').next().unwrap_or_default();
    let two = |text| -> Result<(f64, f64), ConfigError> {
        let args = split_args("disturbance", text, 2)?;
        Ok((
            real("disturbance c", args[0])?,
            real("disturbance p", args[1])?,
        ))
    };
    let one = |text| -> Result<f64, ConfigError> {
        real("disturbance c", split_args("disturbance", text, 1)?[0])
    };
    let policy = match head {
        "zero" | "k_over_n" | "sqrt_k" => {
            split_args("disturbance", text, 0)?;
            match head {
                "zero" => DisturbancePolicy::Zero,
                "k_over_n" => DisturbancePolicy::KOverN,
                _ => DisturbancePolicy::SqrtK,
            }
        }
        "pow_n" => {
            let (c, p) = two(text)?;
            DisturbancePolicy::PowerOfN { c, p }
        }
        "pow_n_floor" => {
            let (c, p) = two(text)?;
            DisturbancePolicy::FloorPowerOfN { c, p }
        }
        "pow_k" => {
            let (c, p) = two(text)?;
            DisturbancePolicy::PowerOfK { c, p }
        }
        "pow_k_floor" => {
            let (c, p) = two(text)?;
            DisturbancePolicy::FloorPowerOfK { c, p }
        }
        "const" => DisturbancePolicy::Constant(one(text)?),
        "violating" => DisturbancePolicy::ViolatingLinear(one(text)?),
        _ => {
            return Err(ConfigError::new(format!(
                "unknown disturbance policy `{text}`"
            )))
        }
    };
    policy.validate()?;
    Ok(policy)
}

/// `catalog:<name>` or an expression in `x`.
pub fn parse_function(text: &str) -> Result<Integrand, ConfigError> {
    match text.strip_prefix("catalog:") {
        Some(name) => Ok(catalog_lookup(name.trim())?),
        None => Ok(Integrand::parse(text)?),
    }
}

const KEYS: &[&str] = &[
    "function",
    "a",
    "b",
    "tag",
    "form",
    "deletion",
    "disturbance",
    "schedule.start",
    "schedule.factor",
    "schedule.count",
    "tolerance",
];

pub fn parse_config(text: &str) -> Result<ExperimentConfig, ConfigError> {
    let mut seen = HashSet::new();
    let mut integrand = catalog_lookup("sin_pi").expect("catalog entry");
    let (mut a, mut b) = (0.0, 1.0);
    let mut tag = TagRule::Right;
    let mut form = Form::Linear;
    let mut deletion = DeletionPolicy::None;
    let mut disturbance = DisturbancePolicy::Zero;
    let defaults = NSchedule::default();
    let (mut start, mut factor, mut count) =
        (defaults.start(), defaults.factor(), defaults.count());
    let mut tolerance = RunOptions::default().tolerance;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or_default().trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            ConfigError::new(format!("expected `key = value`, got `{line}`")).at(line_no)
        })?;
        let (key, value) = (key.trim(), value.trim());
        if !KEYS.contains(&key) {
            return Err(ConfigError::new(format!("unknown key `{key}`")).at(line_no));
        }
        if !seen.insert(key.to_string()) {
            return Err(ConfigError::new(format!("key `{key}` given twice")).at(line_no));
        }
        let applied: Result<(), ConfigError> = (|| {
            match key {
                "function" => integrand = parse_function(value)?,
                "a" => a = real("a", value)?,
                "b" => b = real("b", value)?,
                "tag" => tag = parse_tag(value)?,
                "form" => form = parse_form(value)?,
                "deletion" => deletion = parse_deletion(value)?,
                "disturbance" => disturbance = parse_disturbance(value)?,
                "schedule.start" => start = number("schedule.start", value)?,
                "schedule.factor" => factor = real("schedule.factor", value)?,
                "schedule.count" => count = number("schedule.count", value)?,
                "tolerance" => {
                    tolerance = real("tolerance", value)?;
                    if tolerance < 0.0 {
                        return Err(ConfigError::new("tolerance must be >= 0"));
                    }
                }
                _ => unreachable!("key list checked above"),
            }
            Ok(())
        })();
        applied.map_err(|e| e.at(line_no))?;
    }

    let interval = Interval::new(a, b)?;
    let spec = SumSpec {
        integrand,
        interval,
        tag,
        deletion,
        disturbance,
        form,
    };
    Ok(ExperimentConfig {
        spec,
        schedule: NSchedule::new(start, factor, count)?,
        tolerance,
    })
}
