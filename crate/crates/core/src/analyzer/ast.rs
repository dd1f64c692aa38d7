//! Syntax tree of the while language.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Add,
    Sub,
    Mul,
}

impl Op {
    pub fn symbol(self) -> &'static str {
        match self {
            Op::Add => "+",
            Op::Sub => "-",
            Op::Mul => "*",
        }
    }

    pub fn eval(self, x: i64, y: i64) -> i64 {
        match self {
            Op::Add => x.saturating_add(y),
            Op::Sub => x.saturating_sub(y),
            Op::Mul => x.saturating_mul(y),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cmp {
    Lt,
    Le,
    Eq,
    Ne,
    Gt,
    Ge,
}

impl Cmp {
    pub fn symbol(self) -> &'static str {
        match self {
            Cmp::Lt => "<",
            Cmp::Le => "<=",
            Cmp::Eq => "=",
            Cmp::Ne => "!=",
            Cmp::Gt => ">",
            Cmp::Ge => ">=",
        }
    }

    pub fn holds(self, x: i64, y: i64) -> bool {
        match self {
            Cmp::Lt => x < y,
            Cmp::Le => x <= y,
            Cmp::Eq => x == y,
            Cmp::Ne => x != y,
            Cmp::Gt => x > y,
            Cmp::Ge => x >= y,
        }
    }
}

/// Arithmetic expression; variables are indices into [`Program::vars`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Aexp {
    Int(i64),
    Var(usize),
    Bin(Op, Box<Aexp>, Box<Aexp>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bexp {
    pub lhs: Aexp,
    pub cmp: Cmp,
    pub rhs: Aexp,
}

/// A statement with the label of its entry point. A loop's label is its head.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stmt {
    Assign { label: usize, var: usize, expr: Aexp },
    While { label: usize, cond: Bexp, body: Vec<Stmt> },
    If { label: usize, cond: Bexp, then: Vec<Stmt>, els: Vec<Stmt> },
    Skip { label: usize },
}

impl Stmt {
    pub fn label(&self) -> usize {
        match self {
            Stmt::Assign { label, .. } | Stmt::While { label, .. } | Stmt::If { label, .. } | Stmt::Skip { label } => *label,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Program {
    pub body: Vec<Stmt>,
    /// Variable names in order of first occurrence.
    pub vars: Vec<String>,
    /// The label after the last statement; labels run `0..=exit`.
    pub exit: usize,
}

impl Program {
    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Labels of loop heads.
    pub fn loop_heads(&self) -> Vec<usize> {
        fn walk(stmts: &[Stmt], out: &mut Vec<usize>) {
            for s in stmts {
                match s {
                    Stmt::While { label, body, .. } => {
                        out.push(*label);
                        walk(body, out);
                    }
                    Stmt::If { then, els, .. } => {
                        walk(then, out);
                        walk(els, out);
                    }
                    _ => {}
                }
            }
        }
        let mut out = Vec::new();
        walk(&self.body, &mut out);
        out
    }
}
