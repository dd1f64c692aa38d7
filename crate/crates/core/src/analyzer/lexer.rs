//! Tokens with line and column positions.

use std::fmt;

use super::SyntaxError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Int(i64),
    Ident(String),
    While,
    Do,
    If,
    Then,
    Else,
    Skip,
    Assign,
    Semi,
    LBrace,
    RBrace,
    LParen,
    RParen,
    Plus,
    Minus,
    Star,
    Lt,
    Le,
    Eq,
    Ne,
    Gt,
    Ge,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Int(n) => return write!(f, "integer {n}"),
            Tok::Ident(s) => return write!(f, "identifier {s}"),
            Tok::While => "'while'",
            Tok::Do => "'do'",
            Tok::If => "'if'",
            Tok::Then => "'then'",
            Tok::Else => "'else'",
            Tok::Skip => "'skip'",
            Tok::Assign => "':='",
            Tok::Semi => "';'",
            Tok::LBrace => "'{'",
            Tok::RBrace => "'}'",
            Tok::LParen => "'('",
            Tok::RParen => "')'",
            Tok::Plus => "'+'",
            Tok::Minus => "'-'",
            Tok::Star => "'*'",
            Tok::Lt => "'<'",
            Tok::Le => "'<='",
            Tok::Eq => "'='",
            Tok::Ne => "'!='",
            Tok::Gt => "'>'",
            Tok::Ge => "'>='",
            Tok::Eof => "end of input",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

fn is_operand(t: Option<&Token>) -> bool {
    matches!(t.map(|t| &t.tok), Some(Tok::Int(_) | Tok::Ident(_) | Tok::RParen))
}

/// Splits source text into tokens. A `-` directly before digits is part of
/// an integer literal unless it follows an operand.
pub fn lex(src: &str) -> Result<Vec<Token>, SyntaxError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out: Vec<Token> = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let start = (line, col);
        let mut advance = |n: usize, i: &mut usize| {
            *i += n;
            col += n;
        };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            advance(1, &mut i);
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let next = chars.get(i + 1).copied();
        let negative = c == '-' && next.is_some_and(|d| d.is_ascii_digit()) && !is_operand(out.last());
        let tok = if c.is_ascii_digit() || negative {
            let from = i;
            let mut j = i + 1;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            let text: String = chars[from..j].iter().collect();
            let n = text.parse::<i64>().map_err(|_| SyntaxError {
                line: start.0,
                col: start.1,
                expected: "an integer that fits in 64 bits".into(),
                found: text.clone(),
            })?;
            advance(j - i, &mut i);
            Tok::Int(n)
        } else if c.is_ascii_alphabetic() || c == '_' {
            let from = i;
            let mut j = i;
            while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                j += 1;
            }
            let word: String = chars[from..j].iter().collect();
            advance(j - i, &mut i);
            match word.as_str() {
                "while" => Tok::While,
                "do" => Tok::Do,
                "if" => Tok::If,
                "then" => Tok::Then,
                "else" => Tok::Else,
                "skip" => Tok::Skip,
                _ => Tok::Ident(word),
            }
        } else {
            let (tok, len) = match (c, next) {
                (':', Some('=')) => (Tok::Assign, 2),
                ('<', Some('=')) => (Tok::Le, 2),
                ('>', Some('=')) => (Tok::Ge, 2),
                ('!', Some('=')) => (Tok::Ne, 2),
                ('<', _) => (Tok::Lt, 1),
                ('>', _) => (Tok::Gt, 1),
                ('=', _) => (Tok::Eq, 1),
                (';', _) => (Tok::Semi, 1),
                ('{', _) => (Tok::LBrace, 1),
                ('}', _) => (Tok::RBrace, 1),
                ('(', _) => (Tok::LParen, 1),
                (')', _) => (Tok::RParen, 1),
                ('+', _) => (Tok::Plus, 1),
                ('-', _) => (Tok::Minus, 1),
                ('*', _) => (Tok::Star, 1),
                _ => {
                    return Err(SyntaxError { line, col, expected: "a token".into(), found: format!("character {c:?}") });
                }
            };
            advance(len, &mut i);
            tok
        };
        out.push(Token { tok, line: start.0, col: start.1 });
    }
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        lex(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn minus_after_operand_is_an_operator() {
        assert_eq!(toks("x-1"), [Tok::Ident("x".into()), Tok::Minus, Tok::Int(1), Tok::Eof]);
        assert_eq!(toks("x := -3"), [Tok::Ident("x".into()), Tok::Assign, Tok::Int(-3), Tok::Eof]);
        assert_eq!(toks("2 - -3"), [Tok::Int(2), Tok::Minus, Tok::Int(-3), Tok::Eof]);
    }

    #[test]
    fn comments_and_positions() {
        let t = lex("# note\n  x := 1; # tail\ny").unwrap();
        assert_eq!((t[0].line, t[0].col), (2, 3));
        assert_eq!(t[4].tok, Tok::Ident("y".into()));
        assert_eq!((t[4].line, t[4].col), (3, 1));
    }

    #[test]
    fn stray_character() {
        let e = lex("x := 1 @").unwrap_err();
        assert_eq!((e.line, e.col), (1, 8));
    }
}
