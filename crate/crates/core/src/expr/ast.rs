use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinaryOp {
    pub fn symbol(self) -> char {
        match self {
            BinaryOp::Add => '+',
            BinaryOp::Sub => '-',
            BinaryOp::Mul => '*',
            BinaryOp::Div => '/',
            BinaryOp::Pow => '^',
        }
    }
}

/// Supported single-argument functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Function {
    Sin,
    Cos,
    Tan,
    Asin,
    Atan,
    Exp,
    Ln,
    Sqrt,
    Abs,
}

impl Function {
    pub const ALL: [Function; 9] = [
        Function::Sin,
        Function::Cos,
        Function::Tan,
        Function::Asin,
        Function::Atan,
        Function::Exp,
        Function::Ln,
        Function::Sqrt,
        Function::Abs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Function::Sin => "sin",
            Function::Cos => "cos",
            Function::Tan => "tan",
            Function::Asin => "asin",
            Function::Atan => "atan",
            Function::Exp => "exp",
            Function::Ln => "ln",
            Function::Sqrt => "sqrt",
            Function::Abs => "abs",
        }
    }

    pub fn from_name(name: &str) -> Option<Function> {
        Function::ALL.into_iter().find(|f| f.name() == name)
    }
}

/// Expression tree over a single free variable.
#[derive(Debug, Clone, PartialEq)]
pub enum ExprNode {
    Constant(f64),
    Variable,
    Negate(Box<ExprNode>),
    Binary {
        op: BinaryOp,
        lhs: Box<ExprNode>,
        rhs: Box<ExprNode>,
    },
    Call {
        func: Function,
        arg: Box<ExprNode>,
    },
}

impl ExprNode {
    pub fn binary(op: BinaryOp, lhs: ExprNode, rhs: ExprNode) -> Self {
        ExprNode::Binary {
            op,
            lhs: Box::new(lhs),
            rhs: Box::new(rhs),
        }
    }

    pub fn call(func: Function, arg: ExprNode) -> Self {
        ExprNode::Call {
            func,
            arg: Box::new(arg),
        }
    }

    pub fn negate(inner: ExprNode) -> Self {
        ExprNode::Negate(Box::new(inner))
    }

    /// Whether the free variable occurs anywhere in the tree.
    pub fn depends_on_variable(&self) -> bool {
        match self {
            ExprNode::Constant(_) => false,
            ExprNode::Variable => true,
            ExprNode::Negate(inner) => inner.depends_on_variable(),
            ExprNode::Binary { lhs, rhs, .. } => lhs.depends_on_variable() || rhs.depends_on_variable(),
            ExprNode::Call { arg, .. } => arg.depends_on_variable(),
        }
    }

    /// Render with an explicit variable name. Binary and unary nodes are fully
    /// parenthesized so that re-parsing reproduces the same tree.
    pub fn display_with<'a>(&'a self, variable: &'a str) -> impl fmt::Display + 'a {
        Printer { node: self, variable }
    }
}

struct Printer<'a> {
    node: &'a ExprNode,
    variable: &'a str,
}

impl fmt::Display for Printer<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sub = |node| Printer {
            node,
            variable: self.variable,
        };
        match self.node {
            ExprNode::Constant(c) => write!(f, "{c:?}"),
            ExprNode::Variable => f.write_str(self.variable),
            ExprNode::Negate(inner) => write!(f, "(-{})", sub(inner)),
            ExprNode::Binary { op, lhs, rhs } => {
                write!(f, "({} {} {})", sub(lhs), op.symbol(), sub(rhs))
            }
            ExprNode::Call { func, arg } => write!(f, "{}({})", func.name(), sub(arg)),
        }
    }
}

impl fmt::Display for ExprNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("s"))
    }
}
