//! Text format for meromorphic bundle maps.
//!
//! ```text
//! # diag(z, 1) into O(1) + O(0)
//! r = 2;
//! twist = [1, 0];
//! [ z, 0 ; 0, 1 ]
//! ```
//!
//! Entries are rational expressions in `z` built from integers, `z`, `+`,
//! `-`, `*`, `/`, `^` with a non-negative integer exponent, and parentheses.
//! A coefficient may be juxtaposed with `z` or a parenthesis (`3z^2`).
//! `p/q` is ordinary division, so rational coefficients need no special
//! syntax.

use std::fmt;

use num_traits::Zero;
use quotvortex_core::vortex::{Mat, MeroMap, VortexError};
use quotvortex_core::{Int, Poly, Rat, RatFunc};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

/// Declared rank, twist and rows.
type Header = (usize, Vec<i64>, Vec<Vec<RatFunc>>);

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at {0}")]
    Syntax(SyntaxError),
    #[error("declared rank {declared} but the matrix is {rows}x{cols}")]
    DeclaredRank {
        declared: usize,
        rows: usize,
        cols: usize,
    },
    #[error(transparent)]
    Vortex(#[from] VortexError),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(Int),
    Ident(String),
    Sym(char),
    Eof,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Token>, SyntaxError> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    let (mut line, mut col) = (1, 1);
    while let Some(&c) = chars.peek() {
        let (l0, c0) = (line, col);
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
        } else if c.is_whitespace() {
            chars.next();
            col += 1;
        } else if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                chars.next();
            }
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                s.push(d);
                chars.next();
                col += 1;
            }
            out.push(Token {
                tok: Tok::Int(s.parse().expect("digits")),
                line: l0,
                col: c0,
            });
        } else if c.is_ascii_alphabetic() {
            let mut s = String::new();
            while let Some(&d) = chars
                .peek()
                .filter(|d| d.is_ascii_alphanumeric() || **d == '_')
            {
                s.push(d);
                chars.next();
                col += 1;
            }
            out.push(Token {
                tok: Tok::Ident(s),
                line: l0,
                col: c0,
            });
        } else if "=;[],+-*/^()".contains(c) {
            chars.next();
            col += 1;
            out.push(Token {
                tok: Tok::Sym(c),
                line: l0,
                col: c0,
            });
        } else {
            return Err(SyntaxError {
                line,
                col,
                message: format!("unexpected character {c:?}"),
            });
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, t: &Token, message: impl Into<String>) -> Result<T, SyntaxError> {
        Err(SyntaxError {
            line: t.line,
            col: t.col,
            message: message.into(),
        })
    }

    fn describe(t: &Tok) -> String {
        match t {
            Tok::Int(n) => format!("integer {n}"),
            Tok::Ident(s) => format!("{s:?}"),
            Tok::Sym(c) => format!("{c:?}"),
            Tok::Eof => "end of input".into(),
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<(), SyntaxError> {
        let t = self.next();
        if t.tok == Tok::Sym(c) {
            Ok(())
        } else {
            self.err(
                &t,
                format!("expected {c:?}, found {}", Self::describe(&t.tok)),
            )
        }
    }

    fn expect_ident(&mut self, name: &str) -> Result<(), SyntaxError> {
        let t = self.next();
        match &t.tok {
            Tok::Ident(s) if s == name => Ok(()),
            other => self.err(
                &t,
                format!("expected {name:?}, found {}", Self::describe(other)),
            ),
        }
    }

    fn signed_int(&mut self) -> Result<Int, SyntaxError> {
        let neg = self.peek().tok == Tok::Sym('-');
        if neg {
            self.next();
        }
        let t = self.next();
        match t.tok {
            Tok::Int(n) => Ok(if neg { -n } else { n }),
            ref other => self.err(
                &t,
                format!("expected an integer, found {}", Self::describe(other)),
            ),
        }
    }

    fn small_int<T: TryFrom<Int>>(&mut self) -> Result<T, SyntaxError> {
        let t = self.peek().clone();
        let n = self.signed_int()?;
        T::try_from(n).or_else(|_| self.err(&t, "integer out of range"))
    }

    fn file(&mut self) -> Result<Header, SyntaxError> {
        self.expect_ident("r")?;
        self.expect_sym('=')?;
        let r_tok = self.peek().clone();
        let r: usize = self.small_int()?;
        if r == 0 {
            return self.err(&r_tok, "rank must be positive");
        }
        self.expect_sym(';')?;
        self.expect_ident("twist")?;
        self.expect_sym('=')?;
        self.expect_sym('[')?;
        let mut twist = vec![self.small_int()?];
        while self.peek().tok == Tok::Sym(',') {
            self.next();
            twist.push(self.small_int()?);
        }
        self.expect_sym(']')?;
        self.expect_sym(';')?;
        self.expect_sym('[')?;
        let mut rows = vec![self.row()?];
        while self.peek().tok == Tok::Sym(';') {
            self.next();
            rows.push(self.row()?);
        }
        self.expect_sym(']')?;
        if self.peek().tok == Tok::Sym(';') {
            self.next();
        }
        let t = self.peek().clone();
        if t.tok != Tok::Eof {
            return self.err(
                &t,
                format!("unexpected {} after the matrix", Self::describe(&t.tok)),
            );
        }
        Ok((r, twist, rows))
    }

    fn row(&mut self) -> Result<Vec<RatFunc>, SyntaxError> {
        let mut row = vec![self.expr()?];
        while self.peek().tok == Tok::Sym(',') {
            self.next();
            row.push(self.expr()?);
        }
        Ok(row)
    }

    fn expr(&mut self) -> Result<RatFunc, SyntaxError> {
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Sym('+') => {
                    self.next();
                    acc = &acc + &self.term()?;
                }
                Tok::Sym('-') => {
                    self.next();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc, SyntaxError> {
        let mut acc = self.unary()?;
        loop {
            let t = self.peek().clone();
            match &t.tok {
                Tok::Sym('*') => {
                    self.next();
                    acc = &acc * &self.unary()?;
                }
                Tok::Sym('/') => {
                    self.next();
                    let d = self.unary()?;
                    match acc.checked_div(&d) {
                        Some(q) => acc = q,
                        None => return self.err(&t, "division by zero"),
                    }
                }
                // Juxtaposition: `3z`, `2(z+1)`, `z(z-1)`.
                Tok::Ident(_) | Tok::Sym('(') | Tok::Int(_) => acc = &acc * &self.power()?,
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc, SyntaxError> {
        match self.peek().tok {
            Tok::Sym('-') => {
                self.next();
                Ok(-self.unary()?)
            }
            Tok::Sym('+') => {
                self.next();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFunc, SyntaxError> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Sym('^') {
            return Ok(base);
        }
        self.next();
        let t = self.peek().clone();
        let e: i64 = self.small_int()?;
        if e >= 0 {
            let e = u32::try_from(e).or_else(|_| self.err(&t, "exponent too large"))?;
            Ok(base.pow(e))
        } else {
            match base.inv() {
                Some(b) => {
                    Ok(b.pow(u32::try_from(-e).or_else(|_| self.err(&t, "exponent too large"))?))
                }
                None => self.err(&t, "zero raised to a negative power"),
            }
        }
    }

    fn atom(&mut self) -> Result<RatFunc, SyntaxError> {
        let t = self.next();
        match &t.tok {
            Tok::Int(n) => Ok(RatFunc::from_rat(Rat::from_integer(n.clone()))),
            Tok::Ident(s) if s == "z" => Ok(RatFunc::z()),
            Tok::Sym('(') => {
                let v = self.expr()?;
                self.expect_sym(')')?;
                Ok(v)
            }
            other => self.err(
                &t,
                format!("expected a term, found {}", Self::describe(other)),
            ),
        }
    }
}

/// Parses a single rational expression in `z`.
pub fn parse_expr(src: &str) -> Result<RatFunc, SyntaxError> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
    };
    let v = p.expr()?;
    let t = p.peek().clone();
    if t.tok != Tok::Eof {
        return p.err(&t, format!("unexpected {}", Parser::describe(&t.tok)));
    }
    Ok(v)
}

pub fn parse_meromap(src: &str) -> Result<MeroMap, ParseError> {
    let mut p = Parser {
        toks: lex(src).map_err(ParseError::Syntax)?,
        pos: 0,
    };
    let (r, twist, rows) = p.file().map_err(ParseError::Syntax)?;
    let cols = rows[0].len();
    if rows.iter().any(|row| row.len() != cols) {
        return Err(VortexError::RankMismatch {
            rows: rows.len(),
            cols,
            twist: twist.len(),
        }
        .into());
    }
    if rows.len() != r || cols != r {
        return Err(ParseError::DeclaredRank {
            declared: r,
            rows: rows.len(),
            cols,
        });
    }
    let mat = Mat::new(r, r, rows.into_iter().flatten().collect());
    Ok(MeroMap::new(mat, twist)?)
}

/// Renders a map back in the same grammar.
pub fn render_meromap(f: &MeroMap) -> String {
    let r = f.rank();
    let twist: Vec<String> = f.twist().iter().map(i64::to_string).collect();
    let rows: Vec<String> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| render_ratfunc(f.matrix().get(i, j)))
                .collect::<Vec<_>>()
                .join(", ")
        })
        .collect();
    format!(
        "r={r}; twist=[{}]; [ {} ]",
        twist.join(","),
        rows.join(" ; ")
    )
}

/// `z`-polynomial in descending powers, with rational coefficients.
pub fn render_zpoly(p: &Poly<Rat>) -> String {
    let Some(deg) = p.degree() else {
        return "0".into();
    };
    let mut s = String::new();
    for k in (0..=deg).rev() {
        let c = p.coeff(k);
        if c.is_zero() {
            continue;
        }
        let neg = c < Rat::zero();
        let mag = if neg { -c } else { c };
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let unit = mag == Rat::from_integer(Int::from(1));
        match (k, unit) {
            (0, _) => s.push_str(&mag.to_string()),
            (_, true) => {}
            (_, false) if mag.is_integer() => s.push_str(&mag.to_string()),
            (_, false) => s.push_str(&format!("({mag})")),
        }
        match k {
            0 => {}
            1 => s.push('z'),
            _ => s.push_str(&format!("z^{k}")),
        }
    }
    s
}

pub fn render_ratfunc(x: &RatFunc) -> String {
    let num = render_zpoly(x.num());
    if x.is_polynomial() {
        return num;
    }
    let wrap = |s: String, p: &Poly<Rat>| {
        let terms = p.coeffs().iter().filter(|c| !c.is_zero()).count();
        if terms > 1 {
            format!("({s})")
        } else {
            s
        }
    };
    format!(
        "{}/{}",
        wrap(num, x.num()),
        wrap(render_zpoly(x.den()), x.den())
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(c: &[i64]) -> Poly<Rat> {
        Poly::new(c.iter().map(|&x| Rat::from_integer(Int::from(x))).collect())
    }

    #[test]
    fn scalar_map() {
        let f = parse_meromap("r=1; twist=[1]; [ z ]").unwrap();
        assert_eq!(f.rank(), 1);
        assert_eq!(f.twist(), &[1]);
        assert_eq!(f.matrix().get(0, 0), &RatFunc::z());
    }

    #[test]
    fn multiline_with_comments() {
        let src = "# a comment\nr = 2;   # rank\ntwist = [1, -1];\n[ z, 0 ;\n  1/2, 1/z ]\n";
        let f = parse_meromap(src).unwrap();
        assert_eq!(f.twist(), &[1, -1]);
        assert_eq!(
            f.matrix().get(1, 0),
            &RatFunc::from_rat(Rat::new(Int::from(1), Int::from(2)))
        );
        assert_eq!(f.matrix().get(1, 1), &RatFunc::z_pow(-1));
    }

    #[test]
    fn expression_forms() {
        let e = parse_expr("3z^2 - (1/2)*z + 1").unwrap();
        assert_eq!(
            e,
            RatFunc::from_poly(Poly::new(vec![
                Rat::from_integer(Int::from(1)),
                Rat::new(Int::from(-1), Int::from(2)),
                Rat::from_integer(Int::from(3)),
            ]))
        );
        let e = parse_expr("(z^2 - 1)/(z - 1)").unwrap();
        assert_eq!(e, RatFunc::from_poly(qp(&[1, 1])));
        assert_eq!(parse_expr("z^-2").unwrap(), RatFunc::z_pow(-2));
        assert_eq!(
            parse_expr("2(z+1)").unwrap(),
            RatFunc::from_poly(qp(&[2, 2]))
        );
        assert_eq!(
            parse_expr("-z*-z").unwrap(),
            RatFunc::from_poly(qp(&[0, 0, 1]))
        );
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_meromap("r=1;\ntwist=[1];\n[ z + ]").unwrap_err();
        let ParseError::Syntax(e) = err else {
            panic!("{err:?}")
        };
        assert_eq!((e.line, e.col), (3, 7));

        let ParseError::Syntax(e) = parse_meromap("r=1; twist=[1]; [ y ]").unwrap_err() else {
            panic!()
        };
        assert_eq!((e.line, e.col), (1, 19));

        let ParseError::Syntax(e) = parse_meromap("r=1; twist=[1]; [ 1/(z-z) ]").unwrap_err()
        else {
            panic!()
        };
        assert!(e.message.contains("division by zero"));

        assert!(matches!(
            parse_meromap("r=1; twist=[1]; [ z ] junk"),
            Err(ParseError::Syntax(_))
        ));
        assert!(matches!(
            parse_meromap("r=0; twist=[1]; [ z ]"),
            Err(ParseError::Syntax(_))
        ));
        assert!(matches!(
            parse_meromap("r=1; twist=[1]; [ z $ ]"),
            Err(ParseError::Syntax(_))
        ));
    }

    #[test]
    fn semantic_errors() {
        assert_eq!(
            parse_meromap("r=2; twist=[0,0]; [ 1, z ; 1, z ]").unwrap_err(),
            ParseError::Vortex(VortexError::SingularMatrix)
        );
        assert!(matches!(
            parse_meromap("r=2; twist=[0]; [ 1, 0 ; 0, 1 ]").unwrap_err(),
            ParseError::Vortex(VortexError::RankMismatch { .. })
        ));
        assert!(matches!(
            parse_meromap("r=2; twist=[0,0]; [ 1, 0 ; 0 ]").unwrap_err(),
            ParseError::Vortex(VortexError::RankMismatch { .. })
        ));
        assert!(matches!(
            parse_meromap("r=3; twist=[0,0]; [ 1, 0 ; 0, 1 ]").unwrap_err(),
            ParseError::DeclaredRank { declared: 3, .. }
        ));
    }

    #[test]
    fn render_round_trip() {
        let src = "r=2; twist=[2,-1]; [ 3z^2 - (1/2)*z + 1, 1/(z^2+1) ; -z/(z-2), 7 ]";
        let f = parse_meromap(src).unwrap();
        let text = render_meromap(&f);
        assert_eq!(parse_meromap(&text).unwrap(), f);
        assert_eq!(render_ratfunc(f.matrix().get(0, 0)), "3z^2 - (1/2)z + 1");
        assert_eq!(render_ratfunc(f.matrix().get(1, 0)), "-z/(z - 2)");
    }
}
