//! Integrand expressions.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' unary)?          right associative
//! primary := number | 'x' | 'pi' | 'e' | func '(' expr ')' | '(' expr ')'
//! func    := sin | cos | tan | exp | ln | sqrt | abs | floor
//! ```
//!
//! Unary minus binds looser than `^`, so `-x^2` is `-(x^2)`, while `2^-x`
//! is accepted because the exponent is a `unary`.

mod catalog;
mod parse;

use std::fmt;

pub use catalog::{catalog_lookup, catalog_names, Integrand};
pub use parse::parse;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
            BinOp::Pow => '^',
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
            BinOp::Pow => 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Exp,
    Ln,
    Sqrt,
    Abs,
    Floor,
}

impl Func {
    pub const ALL: [Func; 8] = [
        Func::Sin,
        Func::Cos,
        Func::Tan,
        Func::Exp,
        Func::Ln,
        Func::Sqrt,
        Func::Abs,
        Func::Floor,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sqrt => "sqrt",
            Func::Abs => "abs",
            Func::Floor => "floor",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }
}

/// Abstract syntax tree of a one-variable real expression.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    X,
    Pi,
    E,
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

const NEG_PRECEDENCE: u8 = 3;
const ATOM_PRECEDENCE: u8 = 5;

impl Expr {
    pub fn binary(op: BinOp, lhs: Expr, rhs: Expr) -> Expr {
        Expr::Binary(op, Box::new(lhs), Box::new(rhs))
    }

    pub fn call(func: Func, arg: Expr) -> Expr {
        Expr::Call(func, Box::new(arg))
    }

    /// Evaluates the expression at `x` in IEEE double precision.
    ///
    /// Leaving the real domain (`ln` of a non-positive value, `sqrt` of a
    /// negative one, division by zero, `0^negative`, a non-real power) is an
    /// error naming the offending sub-expression.
    pub fn eval(&self, x: f64) -> Result<f64> {
        match self {
            Expr::Num(v) => Ok(*v),
            Expr::X => Ok(x),
            Expr::Pi => Ok(std::f64::consts::PI),
            Expr::E => Ok(std::f64::consts::E),
            Expr::Neg(inner) => Ok(-inner.eval(x)?),
            Expr::Binary(op, lhs, rhs) => {
                let l = lhs.eval(x)?;
                let r = rhs.eval(x)?;
                match op {
                    BinOp::Add => Ok(l + r),
                    BinOp::Sub => Ok(l - r),
                    BinOp::Mul => Ok(l * r),
                    BinOp::Div => {
                        if r == 0.0 {
                            return Err(Error::domain(self.to_string(), "division by zero"));
                        }
                        Ok(l / r)
                    }
                    BinOp::Pow => {
                        if l == 0.0 && r < 0.0 {
                            return Err(Error::domain(
                                self.to_string(),
                                "zero raised to a negative power",
                            ));
                        }
                        let v = l.powf(r);
                        if v.is_nan() && !l.is_nan() && !r.is_nan() {
                            return Err(Error::domain(
                                self.to_string(),
                                format!("non-real power {l}^{r}"),
                            ));
                        }
                        Ok(v)
                    }
                }
            }
            Expr::Call(func @ (Func::Sin | Func::Cos), arg) if arg.pi_multiple().is_some() => {
                let t = arg.pi_multiple().expect("checked").eval(x)?;
                Ok(if *func == Func::Sin {
                    sin_pi(t)
                } else {
                    cos_pi(t)
                })
            }
            Expr::Call(func, arg) => {
                let v = arg.eval(x)?;
                match func {
                    Func::Sin => Ok(v.sin()),
                    Func::Cos => Ok(v.cos()),
                    Func::Tan => Ok(v.tan()),
                    Func::Exp => Ok(v.exp()),
                    Func::Ln => {
                        if v <= 0.0 {
                            return Err(Error::domain(
                                self.to_string(),
                                format!("logarithm of non-positive value {v}"),
                            ));
                        }
                        Ok(v.ln())
                    }
                    Func::Sqrt => {
                        if v < 0.0 {
                            return Err(Error::domain(
                                self.to_string(),
                                format!("square root of negative value {v}"),
                            ));
                        }
                        Ok(v.sqrt())
                    }
                    Func::Abs => Ok(v.abs()),
                    Func::Floor => Ok(v.floor()),
                }
            }
        }
    }

    /// `t` when the expression is `pi * t` or `t * pi`.
    fn pi_multiple(&self) -> Option<&Expr> {
        match self {
            Expr::Binary(BinOp::Mul, lhs, rhs) if **lhs == Expr::Pi => Some(rhs),
            Expr::Binary(BinOp::Mul, lhs, rhs) if **rhs == Expr::Pi => Some(lhs),
            _ => None,
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Binary(op, ..) => op.precedence(),
            Expr::Neg(_) => NEG_PRECEDENCE,
            _ => ATOM_PRECEDENCE,
        }
    }
}

/// `sin(pi * t)` with exact reduction of `t`, so integers give exact zeros.
fn sin_pi(t: f64) -> f64 {
    if !t.is_finite() {
        return f64::NAN;
    }
    // r in [-1, 1], sin(pi t) = sin(pi r); the subtraction is exact.
    let r = t - 2.0 * (t / 2.0).round();
    let (sign, r) = if r < 0.0 { (-1.0, -r) } else { (1.0, r) };
    let r = if r > 0.5 { 1.0 - r } else { r };
    let v = if r == 0.0 {
        0.0
    } else if r <= 0.25 {
        (std::f64::consts::PI * r).sin()
    } else {
        (std::f64::consts::PI * (0.5 - r)).cos()
    };
    if v == 0.0 {
        0.0
    } else {
        sign * v
    }
}

/// `cos(pi * t)`, exact zeros at half-integers and exact ones at integers.
fn cos_pi(t: f64) -> f64 {
    if !t.is_finite() {
        return f64::NAN;
    }
    let r = (t - 2.0 * (t / 2.0).round()).abs();
    let (sign, r) = if r > 0.5 { (-1.0, 1.0 - r) } else { (1.0, r) };
    let v = if r == 0.5 {
        0.0
    } else if r <= 0.25 {
        (std::f64::consts::PI * r).cos()
    } else {
        (std::f64::consts::PI * (0.5 - r)).sin()
    };
    if v == 0.0 {
        0.0
    } else {
        sign * v
    }
}

fn write_operand(f: &mut fmt::Formatter<'_>, e: &Expr, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

/// Prints with the minimum parentheses the grammar needs to re-parse the
/// same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) => {
                if *v < 0.0 || (*v == 0.0 && v.is_sign_negative()) {
                    write!(f, "({v:?})")
                } else {
                    write!(f, "{v:?}")
                }
            }
            Expr::X => f.write_str("x"),
            Expr::Pi => f.write_str("pi"),
            Expr::E => f.write_str("e"),
            Expr::Neg(inner) => {
                f.write_str("-")?;
                write_operand(f, inner, inner.precedence() < NEG_PRECEDENCE)
            }
            Expr::Binary(op, lhs, rhs) => {
                let p = op.precedence();
                let (lhs_parens, rhs_parens) = if *op == BinOp::Pow {
                    (lhs.precedence() <= p, rhs.precedence() < NEG_PRECEDENCE)
                } else {
                    (lhs.precedence() < p, rhs.precedence() <= p)
                };
                write_operand(f, lhs, lhs_parens)?;
                if *op == BinOp::Pow {
                    f.write_str("^")?;
                } else {
                    write!(f, " {} ", op.symbol())?;
                }
                write_operand(f, rhs, rhs_parens)
            }
            Expr::Call(func, arg) => write!(f, "{}({arg})", func.name()),
        }
    }
}
