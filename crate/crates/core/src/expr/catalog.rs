use std::fmt;

use super::{parse, Expr};
use crate::error::{Error, Result};
use crate::sums::Interval;

/// A real function of one variable, optionally carrying its exact integral.
#[derive(Debug, Clone, PartialEq)]
pub struct Integrand {
    name: Option<String>,
    expr: Expr,
    exact: Option<(Interval, f64)>,
    positive: bool,
}

impl Integrand {
    pub fn from_expr(expr: Expr) -> Self {
        Integrand {
            name: None,
            expr,
            exact: None,
            positive: false,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(Self::from_expr(parse(text)?))
    }

    /// Records the exact value of the integral over `interval`.
    pub fn with_exact(mut self, interval: Interval, value: f64) -> Self {
        self.exact = Some((interval, value));
        self
    }

    /// Marks the integrand as asserted positive on its intended interval.
    pub fn asserted_positive(mut self) -> Self {
        self.positive = true;
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    pub fn is_asserted_positive(&self) -> bool {
        self.positive
    }

    /// Exact integral, only when `interval` is the one it was recorded for.
    pub fn exact_integral(&self, interval: Interval) -> Option<f64> {
        match self.exact {
            Some((iv, value)) if iv == interval => Some(value),
            _ => None,
        }
    }

    /// Interval the exact integral was recorded for, if any.
    pub fn exact_interval(&self) -> Option<Interval> {
        self.exact.map(|(iv, _)| iv)
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        self.expr.eval(x)
    }
}

impl fmt::Display for Integrand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.name {
            Some(name) => write!(f, "catalog:{name}"),
            None => write!(f, "{}", self.expr),
        }
    }
}

struct Entry {
    name: &'static str,
    source: &'static str,
    exact: fn() -> f64,
    positive: bool,
}

const CATALOG: &[Entry] = &[
    Entry {
        name: "sin_pi",
        source: "sin(pi*x)",
        exact: || 2.0 / std::f64::consts::PI,
        positive: false,
    },
    Entry {
        name: "exp",
        source: "exp(x)",
        exact: || std::f64::consts::E - 1.0,
        positive: true,
    },
    Entry {
        name: "const1",
        source: "1",
        exact: || 1.0,
        positive: true,
    },
    Entry {
        name: "const2",
        source: "2",
        exact: || 2.0,
        positive: true,
    },
    Entry {
        name: "poly_x",
        source: "x",
        exact: || 0.5,
        positive: false,
    },
    Entry {
        name: "poly_x2",
        source: "x^2",
        exact: || 1.0 / 3.0,
        positive: false,
    },
    Entry {
        name: "cos_pi_half",
        source: "cos(pi*x/2)",
        exact: || 2.0 / std::f64::consts::PI,
        positive: false,
    },
    Entry {
        name: "one_plus_x",
        source: "1 + x",
        exact: || 1.5,
        positive: true,
    },
];

/// Names accepted by [`catalog_lookup`]. Every entry is recorded on `[0, 1]`.
pub fn catalog_names() -> impl Iterator<Item = &'static str> {
    CATALOG.iter().map(|e| e.name)
}

pub fn catalog_lookup(name: &str) -> Result<Integrand> {
    let entry = CATALOG
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownName(name.to_string()))?;
    let expr = parse(entry.source).expect("catalog sources parse");
    Ok(Integrand {
        name: Some(entry.name.to_string()),
        expr,
        exact: Some((Interval::unit(), (entry.exact)())),
        positive: entry.positive,
    })
}
