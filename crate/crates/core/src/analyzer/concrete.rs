//! Reference interpreter over a bounded integer carrier.

use crate::setops::Carrier;

use super::ast::{Aexp, Bexp, Program, Stmt};

/// Steps the oracle interpreter may take by default.
pub const STEP_BUDGET: usize = 10_000;

/// Variable values, `None` while unassigned.
pub type Env = Vec<Option<i64>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Run {
    pub steps: usize,
    /// Whether the program reached its exit label within the budget.
    pub finished: bool,
}

struct Interp<'a, F> {
    carrier: &'a Carrier,
    budget: usize,
    steps: usize,
    visit: F,
}

impl<F: FnMut(usize, &Env)> Interp<'_, F> {
    fn norm(&self, v: i64) -> i64 {
        self.carrier.normalize(v).expect("integer carrier")
    }

    fn aexp(&self, e: &Aexp, env: &Env) -> i64 {
        match e {
            Aexp::Int(n) => self.norm(*n),
            Aexp::Var(v) => env[*v].expect("assigned before use"),
            Aexp::Bin(op, l, r) => self.norm(op.eval(self.aexp(l, env), self.aexp(r, env))),
        }
    }

    fn bexp(&self, b: &Bexp, env: &Env) -> bool {
        b.cmp.holds(self.aexp(&b.lhs, env), self.aexp(&b.rhs, env))
    }

    // false once the budget is spent
    fn tick(&mut self, label: usize, env: &Env) -> bool {
        if self.steps >= self.budget {
            return false;
        }
        self.steps += 1;
        (self.visit)(label, env);
        true
    }

    fn block(&mut self, stmts: &[Stmt], env: &mut Env) -> bool {
        stmts.iter().all(|s| self.stmt(s, env))
    }

    fn stmt(&mut self, s: &Stmt, env: &mut Env) -> bool {
        if !self.tick(s.label(), env) {
            return false;
        }
        match s {
            Stmt::Assign { var, expr, .. } => {
                env[*var] = Some(self.aexp(expr, env));
                true
            }
            Stmt::Skip { .. } => true,
            Stmt::If { cond, then, els, .. } => {
                if self.bexp(cond, env) {
                    self.block(then, env)
                } else {
                    self.block(els, env)
                }
            }
            Stmt::While { label, cond, body } => {
                while self.bexp(cond, env) {
                    if !self.block(body, env) || !self.tick(*label, env) {
                        return false;
                    }
                }
                true
            }
        }
    }
}

/// Runs `program` with saturating or wrapping arithmetic from `carrier`,
/// calling `visit(label, env)` each time control reaches a label. A loop
/// head is visited once per test of its condition.
pub fn run(program: &Program, carrier: &Carrier, budget: usize, visit: impl FnMut(usize, &Env)) -> Run {
    let mut it = Interp { carrier, budget, steps: 0, visit };
    let mut env: Env = vec![None; program.vars.len()];
    let finished = it.block(&program.body, &mut env) && it.tick(program.exit, &env);
    Run { steps: it.steps, finished }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analyzer::parse_program;

    fn final_env(src: &str, n: i64) -> (Env, Run) {
        let p = parse_program(src).unwrap();
        let c = Carrier::saturating(n).unwrap();
        let mut last = Vec::new();
        let r = run(&p, &c, STEP_BUDGET, |l, env| {
            if l == p.exit {
                last = env.clone();
            }
        });
        (last, r)
    }

    #[test]
    fn loop_program_ends_at_sixteen() {
        let (env, r) = final_env("x := 2; y := 2; while x < 9 do { x := x * y; }", 64);
        assert_eq!(env, [Some(16), Some(2)]);
        assert!(r.finished);
    }

    #[test]
    fn arithmetic_saturates() {
        let (env, _) = final_env("x := 100; y := x * x - 3;", 8);
        assert_eq!(env, [Some(8), Some(5)]);
    }

    #[test]
    fn budget_stops_divergent_loops() {
        let (env, r) = final_env("x := 0; while x < 1 do { skip; }", 8);
        assert!(env.is_empty());
        assert!(!r.finished);
        assert_eq!(r.steps, STEP_BUDGET);
    }
}
