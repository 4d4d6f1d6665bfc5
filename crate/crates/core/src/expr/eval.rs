use super::ast::{BinaryOp, ExprNode, Function};
use super::jet::Jet;
use thiserror::Error;

/// Threshold below which `abs` is treated as non-differentiable.
pub const ABS_KINK_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainKind {
    LogNonPositive,
    SqrtNegative,
    AsinOutOfRange,
    DivisionByZero,
    NegativeBase,
    NonDifferentiable,
    NonFinite,
}

impl DomainKind {
    fn describe(self) -> &'static str {
        match self {
            DomainKind::LogNonPositive => "logarithm of a non-positive number",
            DomainKind::SqrtNegative => "square root of a negative number",
            DomainKind::AsinOutOfRange => "asin argument outside [-1, 1]",
            DomainKind::DivisionByZero => "division by zero",
            DomainKind::NegativeBase => "fractional power of a negative base",
            DomainKind::NonDifferentiable => "not differentiable here",
            DomainKind::NonFinite => "non-finite result",
        }
    }
}

/// Evaluation left the real domain of a subexpression.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("{}: `{subexpression}` (argument {argument})", kind.describe())]
pub struct EvalError {
    pub kind: DomainKind,
    pub subexpression: String,
    pub argument: f64,
}

fn fail(kind: DomainKind, node: &ExprNode, argument: f64) -> EvalError {
    EvalError {
        kind,
        subexpression: node.to_string(),
        argument,
    }
}

/// Evaluate the expression at `s0` in plain binary64.
pub fn eval_scalar(expr: &ExprNode, s0: f64) -> Result<f64, EvalError> {
    let value = match expr {
        ExprNode::Constant(c) => *c,
        ExprNode::Variable => s0,
        ExprNode::Negate(inner) => -eval_scalar(inner, s0)?,
        ExprNode::Binary { op, lhs, rhs } => {
            let a = eval_scalar(lhs, s0)?;
            let b = eval_scalar(rhs, s0)?;
            match op {
                BinaryOp::Add => a + b,
                BinaryOp::Sub => a - b,
                BinaryOp::Mul => a * b,
                BinaryOp::Div => {
                    if b == 0.0 {
                        return Err(fail(DomainKind::DivisionByZero, expr, b));
                    }
                    a / b
                }
                BinaryOp::Pow => scalar_pow(expr, a, b)?,
            }
        }
        ExprNode::Call { func, arg } => {
            let x = eval_scalar(arg, s0)?;
            match func {
                Function::Sin => x.sin(),
                Function::Cos => x.cos(),
                Function::Tan => x.tan(),
                Function::Asin => {
                    if !(-1.0..=1.0).contains(&x) {
                        return Err(fail(DomainKind::AsinOutOfRange, expr, x));
                    }
                    x.asin()
                }
                Function::Atan => x.atan(),
                Function::Exp => x.exp(),
                Function::Ln => {
                    if x <= 0.0 {
                        return Err(fail(DomainKind::LogNonPositive, expr, x));
                    }
                    x.ln()
                }
                Function::Sqrt => {
                    if x < 0.0 {
                        return Err(fail(DomainKind::SqrtNegative, expr, x));
                    }
                    x.sqrt()
                }
                Function::Abs => x.abs(),
            }
        }
    };
    if !value.is_finite() {
        return Err(fail(DomainKind::NonFinite, expr, value));
    }
    Ok(value)
}

fn scalar_pow(node: &ExprNode, base: f64, exponent: f64) -> Result<f64, EvalError> {
    if exponent.fract() == 0.0 {
        if base == 0.0 && exponent < 0.0 {
            return Err(fail(DomainKind::DivisionByZero, node, base));
        }
        Ok(base.powi(exponent as i32))
    } else {
        if base < 0.0 {
            return Err(fail(DomainKind::NegativeBase, node, base));
        }
        if base == 0.0 && exponent < 0.0 {
            return Err(fail(DomainKind::DivisionByZero, node, base));
        }
        Ok(base.powf(exponent))
    }
}

/// Evaluate the expression and its first four derivatives at `s0`.
pub fn eval_jet(expr: &ExprNode, s0: f64) -> Result<Jet, EvalError> {
    let jet = match expr {
        ExprNode::Constant(c) => Jet::constant(*c),
        ExprNode::Variable => Jet::variable(s0),
        ExprNode::Negate(inner) => -eval_jet(inner, s0)?,
        ExprNode::Binary { op, lhs, rhs } => {
            let a = eval_jet(lhs, s0)?;
            match op {
                BinaryOp::Pow => {
                    let exponent = eval_scalar(rhs, s0)?;
                    jet_pow(expr, a, exponent)?
                }
                _ => {
                    let b = eval_jet(rhs, s0)?;
                    match op {
                        BinaryOp::Add => a + b,
                        BinaryOp::Sub => a - b,
                        BinaryOp::Mul => a * b,
                        BinaryOp::Div => {
                            if b.value() == 0.0 {
                                return Err(fail(DomainKind::DivisionByZero, expr, 0.0));
                            }
                            a / b
                        }
                        BinaryOp::Pow => unreachable!(),
                    }
                }
            }
        }
        ExprNode::Call { func, arg } => {
            let a = eval_jet(arg, s0)?;
            let x = a.value();
            match func {
                Function::Sin => a.sin(),
                Function::Cos => a.cos(),
                Function::Tan => a.tan(),
                Function::Asin => {
                    if x.abs() > 1.0 {
                        return Err(fail(DomainKind::AsinOutOfRange, expr, x));
                    }
                    if x.abs() == 1.0 {
                        return Err(fail(DomainKind::NonDifferentiable, expr, x));
                    }
                    a.asin()
                }
                Function::Atan => a.atan(),
                Function::Exp => a.exp(),
                Function::Ln => {
                    if x <= 0.0 {
                        return Err(fail(DomainKind::LogNonPositive, expr, x));
                    }
                    a.ln()
                }
                Function::Sqrt => {
                    if x < 0.0 {
                        return Err(fail(DomainKind::SqrtNegative, expr, x));
                    }
                    if x == 0.0 {
                        return Err(fail(DomainKind::NonDifferentiable, expr, x));
                    }
                    a.sqrt()
                }
                Function::Abs => {
                    if x.abs() < ABS_KINK_TOLERANCE {
                        return Err(fail(DomainKind::NonDifferentiable, expr, x));
                    }
                    a.abs()
                }
            }
        }
    };
    if !jet.is_finite() {
        return Err(fail(DomainKind::NonFinite, expr, jet.value()));
    }
    Ok(jet)
}

fn jet_pow(node: &ExprNode, base: Jet, exponent: f64) -> Result<Jet, EvalError> {
    let x = base.value();
    if exponent.fract() == 0.0 {
        if x == 0.0 && exponent < 0.0 {
            return Err(fail(DomainKind::DivisionByZero, node, x));
        }
        return Ok(base.powi(exponent as i32));
    }
    if x < 0.0 {
        return Err(fail(DomainKind::NegativeBase, node, x));
    }
    // At a zero base every derivative of order above the exponent blows up.
    if x == 0.0 && exponent < super::jet::JET_ORDER as f64 {
        return Err(fail(DomainKind::NonDifferentiable, node, x));
    }
    Ok(base.powf(exponent))
}
