//! Abstract interpreter for a small while language over a PCGC domain.
//!
//! Transfer functions for `+`, `-` and `*` are best correct approximations
//! computed from the domain, literals are abstracted with η, and loop heads
//! iterate plain joins to a fixpoint. Conditions never refine states.

pub mod ast;
pub mod concrete;
pub mod lexer;
pub mod parser;

use std::fmt;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::functions::{bca_pcgc, FunctionError, OpTable};
use crate::galois::{check_pcgc, Constructive};
use crate::order::Lattice;

pub use ast::{Aexp, Bexp, Cmp, Op, Program, Stmt};
pub use concrete::{run as run_concrete, Env, Run, STEP_BUDGET};
pub use parser::{parse_aexp, parse_program};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{line}:{col}: expected {expected}, found {found}")]
pub struct SyntaxError {
    pub line: usize,
    pub col: usize,
    pub expected: String,
    pub found: String,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at {0}")]
    Syntax(#[from] SyntaxError),
    #[error("{line}:{col}: variable {var} may be read before it is assigned")]
    UseBeforeAssign { var: String, line: usize, col: usize },
}

#[derive(Debug, Error)]
pub enum AnalyzeError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error(transparent)]
    Function(#[from] FunctionError),
    #[error("unknown variable {0}")]
    UnknownVariable(String),
}

/// Abstract value of every program variable, indexed like [`Program::vars`].
pub type State = Vec<usize>;

/// Transfer functions of one domain.
pub struct Transfer<'a> {
    domain: &'a Constructive,
    lattice: &'a Lattice,
    add: OpTable,
    sub: OpTable,
    mul: OpTable,
}

impl<'a> Transfer<'a> {
    /// Accepts PCGCs over an integer carrier whose abstract side is a lattice.
    pub fn new(domain: &'a Constructive) -> Result<Self, AnalyzeError> {
        let lattice = domain
            .lattice()
            .ok_or_else(|| AnalyzeError::DomainMismatch("the abstract side is not a complete lattice".into()))?;
        let carrier = domain.carrier();
        if carrier.int_range().is_none() {
            return Err(AnalyzeError::DomainMismatch("the carrier is not a set of integers".into()));
        }
        let report = check_pcgc(domain);
        if let Err(w) = report.outcome() {
            return Err(AnalyzeError::DomainMismatch(format!("not a PCGC: {w}")));
        }
        let table = |op: Op| -> Result<OpTable, AnalyzeError> {
            let f = OpTable::int_binary(carrier, |x, y| op.eval(x, y))?;
            Ok(bca_pcgc(domain, &f)?)
        };
        Ok(Transfer { domain, lattice, add: table(Op::Add)?, sub: table(Op::Sub)?, mul: table(Op::Mul)? })
    }

    pub fn domain(&self) -> &Constructive {
        self.domain
    }

    pub fn lattice(&self) -> &Lattice {
        self.lattice
    }

    /// The BCA of a binary operator.
    pub fn op(&self, op: Op) -> &OpTable {
        match op {
            Op::Add => &self.add,
            Op::Sub => &self.sub,
            Op::Mul => &self.mul,
        }
    }

    /// η of an integer literal closed into the carrier.
    pub fn literal(&self, n: i64) -> usize {
        let a = self.domain.carrier().close(n).expect("integer carrier");
        self.domain.eta_at(a)
    }

    pub fn eval(&self, e: &Aexp, state: &[usize]) -> Result<usize, AnalyzeError> {
        Ok(match e {
            Aexp::Int(n) => self.literal(*n),
            Aexp::Var(v) => *state.get(*v).ok_or_else(|| AnalyzeError::UnknownVariable(format!("#{v}")))?,
            Aexp::Bin(op, l, r) => self.op(*op).get(&[self.eval(l, state)?, self.eval(r, state)?]),
        })
    }

    fn join(&self, x: &[usize], y: &[usize]) -> State {
        x.iter().zip(y).map(|(&a, &b)| self.lattice.join(a, b)).collect()
    }
}

/// Evaluates an expression given as text, with variables bound to abstract
/// element names.
pub fn abstract_eval(expr: &str, bindings: &[(&str, &str)], domain: &Constructive) -> Result<String, AnalyzeError> {
    let (e, vars) = parse_aexp(expr)?;
    let t = Transfer::new(domain)?;
    let p = domain.abs_poset();
    let mut state = Vec::with_capacity(vars.len());
    for v in &vars {
        let (_, name) = bindings.iter().find(|(k, _)| k == v).ok_or_else(|| AnalyzeError::UnknownVariable(v.clone()))?;
        let b = p
            .index_of(name)
            .ok_or_else(|| AnalyzeError::DomainMismatch(format!("{name} is not an element of the abstract domain")))?;
        state.push(b);
    }
    Ok(p.name(t.eval(&e, &state)?).to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointKind {
    Entry,
    LoopHead,
    Exit,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Point {
    pub label: String,
    pub kind: PointKind,
    /// Every program variable with the name of its abstract value.
    pub state: IndexMap<String, String>,
}

/// Per-label states of a finished analysis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisResult {
    pub points: Vec<Point>,
    /// Number of loop body evaluations.
    pub iterations: usize,
    #[serde(skip)]
    states: Vec<State>,
    #[serde(skip)]
    bottom: String,
}

impl AnalysisResult {
    /// State at label `Lk` as element indices.
    pub fn state(&self, label: usize) -> &[usize] {
        &self.states[label]
    }

    pub fn point(&self, label: usize) -> &Point {
        &self.points[label]
    }

    /// Loop-head points in label order.
    pub fn loop_heads(&self) -> impl Iterator<Item = &Point> {
        self.points.iter().filter(|p| p.kind == PointKind::LoopHead)
    }

    pub fn exit(&self) -> &Point {
        self.points.last().expect("exit point")
    }

    /// `{x ↦ v, ...}` leaving out variables still at bottom.
    pub fn show_state(&self, label: usize) -> String {
        let parts: Vec<String> = self.points[label]
            .state
            .iter()
            .filter(|(_, v)| **v != self.bottom)
            .map(|(k, v)| format!("{k} ↦ {v}"))
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

impl fmt::Display for AnalysisResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, p) in self.points.iter().enumerate() {
            writeln!(f, "{}: {}", p.label, self.show_state(k))?;
        }
        Ok(())
    }
}

struct Analysis<'t, 'a> {
    t: &'t Transfer<'a>,
    states: Vec<Option<State>>,
    iterations: usize,
}

impl Analysis<'_, '_> {
    fn block(&mut self, stmts: &[Stmt], mut state: State) -> Result<State, AnalyzeError> {
        for s in stmts {
            state = self.stmt(s, state)?;
        }
        Ok(state)
    }

    fn stmt(&mut self, s: &Stmt, state: State) -> Result<State, AnalyzeError> {
        match s {
            Stmt::Assign { label, var, expr } => {
                let v = self.t.eval(expr, &state)?;
                self.states[*label] = Some(state.clone());
                let mut out = state;
                out[*var] = v;
                Ok(out)
            }
            Stmt::Skip { label } => {
                self.states[*label] = Some(state.clone());
                Ok(state)
            }
            Stmt::If { label, then, els, .. } => {
                self.states[*label] = Some(state.clone());
                let a = self.block(then, state.clone())?;
                let b = self.block(els, state)?;
                Ok(self.t.join(&a, &b))
            }
            Stmt::While { label, body, .. } => {
                let entry = state;
                let mut head = entry.clone();
                loop {
                    self.states[*label] = Some(head.clone());
                    let out = self.block(body, head.clone())?;
                    self.iterations += 1;
                    let next = self.t.join(&entry, &out);
                    if next == head {
                        return Ok(head);
                    }
                    head = next;
                }
            }
        }
    }
}

/// Forward analysis of `program` starting with every variable at bottom.
pub fn analyze(program: &Program, t: &Transfer<'_>) -> Result<AnalysisResult, AnalyzeError> {
    let bottom = t.lattice.bottom();
    let mut a = Analysis { t, states: vec![None; program.exit + 1], iterations: 0 };
    let end = a.block(&program.body, vec![bottom; program.vars.len()])?;
    a.states[program.exit] = Some(end);
    let heads = program.loop_heads();
    let p = t.domain.abs_poset();
    let states: Vec<State> = a.states.into_iter().map(|s| s.expect("every label is reached")).collect();
    let points = states
        .iter()
        .enumerate()
        .map(|(k, s)| Point {
            label: format!("L{k}"),
            kind: if k == program.exit {
                PointKind::Exit
            } else if heads.contains(&k) {
                PointKind::LoopHead
            } else {
                PointKind::Entry
            },
            state: program.vars.iter().cloned().zip(s.iter().map(|&b| p.name(b).to_string())).collect(),
        })
        .collect();
    Ok(AnalysisResult { points, iterations: a.iterations, states, bottom: p.name(bottom).to_string() })
}

/// Parses and analyzes program text.
pub fn analyze_source(src: &str, domain: &Constructive) -> Result<AnalysisResult, AnalyzeError> {
    let program = parse_program(src)?;
    analyze(&program, &Transfer::new(domain)?)
}

/// A concrete value the analysis failed to cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub label: usize,
    pub var: String,
    pub value: i64,
    pub abstract_value: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L{}: {} = {} is not covered by {}", self.label, self.var, self.value, self.abstract_value)
    }
}

/// Runs the concrete interpreter and reports every value `v` seen at a
/// label where `η(v)` is not below the analysis result for its variable.
pub fn oracle(program: &Program, domain: &Constructive, result: &AnalysisResult, budget: usize) -> (Run, Vec<Violation>) {
    let p = domain.abs_poset();
    let carrier = domain.carrier();
    let mut bad = Vec::new();
    let run = run_concrete(program, carrier, budget, |label, env| {
        let abs = result.state(label);
        for (v, value) in env.iter().enumerate() {
            let Some(value) = *value else { continue };
            let a = carrier.index_of_int(value).expect("normalized value");
            if !p.leq(domain.eta_at(a), abs[v]) {
                bad.push(Violation { label, var: program.vars[v].clone(), value, abstract_value: p.name(abs[v]).to_string() });
            }
        }
    });
    (run, bad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::signconst_pcgc;

    const LOOP: &str = "x := 2; y := 2; while x < 9 do { x := x * y; }";

    #[test]
    fn loop_invariant() {
        let d = signconst_pcgc(64).unwrap();
        let r = analyze_source(LOOP, &d).unwrap();
        assert_eq!(r.show_state(2), "{x ↦ >0, y ↦ 2}");
        assert_eq!(r.point(2).kind, PointKind::LoopHead);
        assert_eq!(r.show_state(4), "{x ↦ >0, y ↦ 2}");
        assert_eq!(r.to_string().lines().next(), Some("L0: {}"));
    }

    #[test]
    fn squaring_loop() {
        let d = signconst_pcgc(64).unwrap();
        let r = analyze_source("x := 2; while x<9 do { x := x*x; }", &d).unwrap();
        assert_eq!(r.show_state(1), "{x ↦ >0}");
        // 2, then 2 ∨ 4, then stable
        assert_eq!(r.iterations, 2);
    }

    #[test]
    fn single_constant() {
        let d = signconst_pcgc(64).unwrap();
        let r = analyze_source("x := 0;", &d).unwrap();
        assert_eq!(r.exit().state["x"], "0");
        assert_eq!(r.exit().kind, PointKind::Exit);
    }

    #[test]
    fn abstract_products() {
        let d = signconst_pcgc(64).unwrap();
        assert_eq!(abstract_eval("2", &[], &d).unwrap(), "2");
        assert_eq!(abstract_eval("x*y", &[("x", "2"), ("y", "<0")], &d).unwrap(), "<0");
        assert_eq!(abstract_eval("x*y", &[("x", "-2"), ("y", "≤0")], &d).unwrap(), "≥0");
        assert!(matches!(abstract_eval("x*z", &[("x", "2")], &d), Err(AnalyzeError::UnknownVariable(v)) if v == "z"));
    }

    #[test]
    fn oracle_accepts_the_loop() {
        let d = signconst_pcgc(64).unwrap();
        let p = parse_program(LOOP).unwrap();
        let r = analyze(&p, &Transfer::new(&d).unwrap()).unwrap();
        let (run, bad) = oracle(&p, &d, &r, STEP_BUDGET);
        assert!(run.finished);
        assert!(bad.is_empty(), "{bad:?}");
    }

    #[test]
    fn rejects_domains_without_a_lattice() {
        let d = crate::catalog::sign_cgc(8).unwrap();
        assert!(matches!(Transfer::new(&d), Err(AnalyzeError::DomainMismatch(_))));
    }
}
