//! Recursive descent parser with a definite-assignment check.

use std::collections::BTreeSet;

use super::ast::{Aexp, Bexp, Cmp, Op, Program, Stmt};
use super::lexer::{lex, Tok, Token};
use super::{ParseError, SyntaxError};

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    vars: Vec<String>,
    assigned: BTreeSet<usize>,
    next_label: usize,
    check_assigned: bool,
    // first read of an unassigned variable; reported after syntax errors
    unassigned: Option<ParseError>,
}

impl Parser {
    fn new(src: &str, check_assigned: bool) -> Result<Self, ParseError> {
        Ok(Parser { toks: lex(src)?, pos: 0, vars: Vec::new(), assigned: BTreeSet::new(), next_label: 0, check_assigned, unassigned: None })
    }

    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> ParseError {
        let t = self.peek();
        ParseError::Syntax(SyntaxError { line: t.line, col: t.col, expected: expected.to_string(), found: t.tok.to_string() })
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if self.peek().tok == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&tok.to_string()))
        }
    }

    fn var(&mut self, name: &str) -> usize {
        match self.vars.iter().position(|v| v == name) {
            Some(i) => i,
            None => {
                self.vars.push(name.to_string());
                self.vars.len() - 1
            }
        }
    }

    fn label(&mut self) -> usize {
        self.next_label += 1;
        self.next_label - 1
    }

    fn program(&mut self) -> Result<Program, ParseError> {
        if self.peek().tok == Tok::Eof {
            return Err(self.error("a statement"));
        }
        let mut body = Vec::new();
        while self.peek().tok != Tok::Eof {
            body.push(self.stmt()?);
        }
        if let Some(e) = self.unassigned.take() {
            return Err(e);
        }
        Ok(Program { body, vars: std::mem::take(&mut self.vars), exit: self.next_label })
    }

    fn block(&mut self) -> Result<Vec<Stmt>, ParseError> {
        self.expect(Tok::LBrace)?;
        let mut out = Vec::new();
        while self.peek().tok != Tok::RBrace {
            if self.peek().tok == Tok::Eof {
                return Err(self.error("'}'"));
            }
            out.push(self.stmt()?);
        }
        self.bump();
        Ok(out)
    }

    fn stmt(&mut self) -> Result<Stmt, ParseError> {
        match self.peek().tok.clone() {
            Tok::Ident(name) => {
                let label = self.label();
                self.bump();
                self.expect(Tok::Assign)?;
                let expr = self.aexp()?;
                self.expect(Tok::Semi)?;
                let var = self.var(&name);
                self.assigned.insert(var);
                Ok(Stmt::Assign { label, var, expr })
            }
            Tok::Skip => {
                let label = self.label();
                self.bump();
                self.expect(Tok::Semi)?;
                Ok(Stmt::Skip { label })
            }
            Tok::While => {
                let label = self.label();
                self.bump();
                let cond = self.bexp()?;
                self.expect(Tok::Do)?;
                let entry = self.assigned.clone();
                let body = self.block()?;
                self.assigned = entry;
                Ok(Stmt::While { label, cond, body })
            }
            Tok::If => {
                let label = self.label();
                self.bump();
                let cond = self.bexp()?;
                self.expect(Tok::Then)?;
                let entry = self.assigned.clone();
                let then = self.block()?;
                let after_then = std::mem::replace(&mut self.assigned, entry);
                self.expect(Tok::Else)?;
                let els = self.block()?;
                self.assigned = self.assigned.intersection(&after_then).copied().collect();
                Ok(Stmt::If { label, cond, then, els })
            }
            _ => Err(self.error("a statement")),
        }
    }

    fn bexp(&mut self) -> Result<Bexp, ParseError> {
        let lhs = self.aexp()?;
        let cmp = match self.peek().tok {
            Tok::Lt => Cmp::Lt,
            Tok::Le => Cmp::Le,
            Tok::Eq => Cmp::Eq,
            Tok::Ne => Cmp::Ne,
            Tok::Gt => Cmp::Gt,
            Tok::Ge => Cmp::Ge,
            _ => return Err(self.error("a comparison")),
        };
        self.bump();
        let rhs = self.aexp()?;
        Ok(Bexp { lhs, cmp, rhs })
    }

    fn aexp(&mut self) -> Result<Aexp, ParseError> {
        let mut e = self.term()?;
        loop {
            let op = match self.peek().tok {
                Tok::Plus => Op::Add,
                Tok::Minus => Op::Sub,
                _ => return Ok(e),
            };
            self.bump();
            e = Aexp::Bin(op, Box::new(e), Box::new(self.term()?));
        }
    }

    fn term(&mut self) -> Result<Aexp, ParseError> {
        let mut e = self.factor()?;
        while self.peek().tok == Tok::Star {
            self.bump();
            e = Aexp::Bin(Op::Mul, Box::new(e), Box::new(self.factor()?));
        }
        Ok(e)
    }

    fn factor(&mut self) -> Result<Aexp, ParseError> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Int(n) => {
                self.bump();
                Ok(Aexp::Int(n))
            }
            Tok::Ident(name) => {
                self.bump();
                let v = self.var(&name);
                if self.check_assigned && !self.assigned.contains(&v) && self.unassigned.is_none() {
                    self.unassigned = Some(ParseError::UseBeforeAssign { var: name, line: t.line, col: t.col });
                }
                Ok(Aexp::Var(v))
            }
            Tok::LParen => {
                self.bump();
                let e = self.aexp()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            _ => Err(self.error("an integer, a variable or '('")),
        }
    }
}

/// Parses a while program and checks that every variable is assigned on
/// all paths before it is read.
pub fn parse_program(src: &str) -> Result<Program, ParseError> {
    Parser::new(src, true)?.program()
}

/// Parses a lone arithmetic expression. Returns the expression and its
/// variables in order of first occurrence.
pub fn parse_aexp(src: &str) -> Result<(Aexp, Vec<String>), ParseError> {
    let mut p = Parser::new(src, false)?;
    let e = p.aexp()?;
    if p.peek().tok != Tok::Eof {
        return Err(p.error("end of input"));
    }
    Ok((e, p.vars))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn syntax(src: &str) -> SyntaxError {
        match parse_program(src) {
            Err(ParseError::Syntax(e)) => e,
            other => panic!("expected a syntax error, got {other:?}"),
        }
    }

    #[test]
    fn single_assignment() {
        let p = parse_program("x := 2;").unwrap();
        assert_eq!(p.body, vec![Stmt::Assign { label: 0, var: 0, expr: Aexp::Int(2) }]);
        assert_eq!(p.exit, 1);
    }

    #[test]
    fn loop_program_labels() {
        let p = parse_program("x := 2; y := 2; while x < 9 do { x := x * y; }").unwrap();
        assert_eq!(p.vars, ["x", "y"]);
        assert_eq!(p.body.len(), 3);
        match &p.body[2] {
            Stmt::While { label, body, cond } => {
                assert_eq!(*label, 2);
                assert_eq!(body[0].label(), 3);
                assert_eq!(cond.cmp, Cmp::Lt);
            }
            s => panic!("{s:?}"),
        }
        assert_eq!(p.exit, 4);
        assert_eq!(p.loop_heads(), [2]);
    }

    #[test]
    fn missing_right_operand() {
        let e = syntax("while x < do {}");
        assert_eq!((e.line, e.col), (1, 11));
        assert_eq!(e.found, "'do'");
    }

    #[test]
    fn empty_program_is_rejected() {
        syntax("# nothing\n");
    }

    #[test]
    fn precedence_and_negative_literals() {
        let (e, vars) = parse_aexp("a - -2 * b").unwrap();
        assert_eq!(vars, ["a", "b"]);
        let expected = Aexp::Bin(
            Op::Sub,
            Box::new(Aexp::Var(0)),
            Box::new(Aexp::Bin(Op::Mul, Box::new(Aexp::Int(-2)), Box::new(Aexp::Var(1)))),
        );
        assert_eq!(e, expected);
    }

    #[test]
    fn use_before_assign() {
        let err = parse_program("x := 1;\ny := x + z;").unwrap_err();
        assert_eq!(err, ParseError::UseBeforeAssign { var: "z".into(), line: 2, col: 10 });
        // a loop body may not run, so its assignments do not count afterwards
        assert!(parse_program("x := 0; while x < 3 do { y := 1; x := x + 1; } z := y;").is_err());
        // assignments on both branches do count
        parse_program("x := 0; if x < 1 then { y := 1; } else { y := 2; } z := y;").unwrap();
        assert!(parse_program("x := 0; if x < 1 then { y := 1; } else { skip; } z := y;").is_err());
    }

    #[test]
    fn labels_follow_preorder() {
        let p = parse_program("a := 1; if a < 2 then { b := 1; } else { b := 2; skip; } while a < 3 do { a := a + 1; }").unwrap();
        let labels: Vec<usize> = p.body.iter().map(Stmt::label).collect();
        assert_eq!(labels, [0, 1, 5]);
        assert_eq!(p.exit, 7);
    }
}
