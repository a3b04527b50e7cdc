//! Line-oriented native format.
//!
//! ```text
//! # comment
//! var x y r
//! x*y - r % 7 = 0
//! x + 1 % 3 != 0
//! x - y = 0
//! x <= 5
//! ```
//!
//! `%` binds loosest on the left-hand side, so `x*y - r % 7 = 0` means
//! `(x*y - r) mod 7 = 0`. Variables not named on a `var` line are declared
//! on first use.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use super::expr::{is_zero_const, Expression, Literal, ProblemInstance, Relation};
use super::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(&'static str),
    LParen,
    RParen,
}

const RELS: [&str; 6] = ["!=", "<=", ">=", "=", "<", ">"];

fn tokenize(line: &str, lineno: usize) -> Result<Vec<Tok>, ParseError> {
    let mut toks = Vec::new();
    let cs: Vec<char> = line.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = cs[start..i].iter().collect();
            toks.push(Tok::Num(s.parse().unwrap()));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < cs.len() && (cs[i].is_alphanumeric() || "_'.!$".contains(cs[i])) {
                if cs[i] == '!' && cs.get(i + 1) == Some(&'=') {
                    break;
                }
                i += 1;
            }
            toks.push(Tok::Ident(cs[start..i].iter().collect()));
        } else {
            let two: String = cs[i..(i + 2).min(cs.len())].iter().collect();
            if let Some(op) = ["!=", "<=", ">="].into_iter().find(|op| *op == two) {
                toks.push(Tok::Op(op));
                i += 2;
                continue;
            }
            let op = match c {
                '+' => Tok::Op("+"),
                '-' => Tok::Op("-"),
                '*' => Tok::Op("*"),
                '^' => Tok::Op("^"),
                '%' => Tok::Op("%"),
                '=' => Tok::Op("="),
                '<' => Tok::Op("<"),
                '>' => Tok::Op(">"),
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                _ => {
                    return Err(ParseError::SyntaxError {
                        line: lineno,
                        msg: format!("unexpected character `{c}`"),
                    })
                }
            };
            toks.push(op);
            i += 1;
        }
    }
    Ok(toks)
}

struct ExprParser<'a> {
    toks: &'a [Tok],
    pos: usize,
    line: usize,
    inst: &'a mut ProblemInstance,
    consts: Vec<BigInt>,
}

impl ExprParser<'_> {
    fn err(&self, msg: &str) -> ParseError {
        ParseError::SyntaxError {
            line: self.line,
            msg: msg.to_string(),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn sum(&mut self) -> Result<Expression, ParseError> {
        let mut acc = self.product()?;
        while let Some(Tok::Op(op @ ("+" | "-"))) = self.peek() {
            let op = *op;
            self.pos += 1;
            let rhs = self.product()?;
            acc = if op == "+" {
                Expression::add(acc, rhs)
            } else {
                Expression::sub(acc, rhs)
            };
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Expression, ParseError> {
        let mut acc = self.unary()?;
        while let Some(Tok::Op("*")) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = Expression::mul(acc, rhs);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Expression, ParseError> {
        if let Some(Tok::Op("-")) = self.peek() {
            self.pos += 1;
            return Ok(Expression::neg(self.unary()?));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expression, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Op("^")) = self.peek() {
            self.pos += 1;
            let e = match self.toks.get(self.pos) {
                Some(Tok::Num(n)) => n.to_u32().ok_or_else(|| self.err("exponent too large"))?,
                _ => return Err(self.err("exponent must be a non-negative integer")),
            };
            self.pos += 1;
            return Ok(Expression::product(std::iter::repeat_n(base, e as usize)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expression, ParseError> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                self.consts.push(n.clone());
                Ok(Expression::Const(n))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(Expression::Var(self.inst.declare(&name)))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.sum()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(t) => Err(self.err(&format!("unexpected token {t:?}"))),
            None => Err(self.err("unexpected end of line")),
        }
    }
}

fn parse_expr(
    toks: &[Tok],
    line: usize,
    inst: &mut ProblemInstance,
) -> Result<(Expression, Vec<BigInt>), ParseError> {
    if toks.is_empty() {
        return Err(ParseError::SyntaxError {
            line,
            msg: "empty expression".into(),
        });
    }
    let mut p = ExprParser {
        toks,
        pos: 0,
        line,
        inst,
        consts: Vec::new(),
    };
    let e = p.sum()?;
    if p.pos != toks.len() {
        return Err(p.err(&format!("trailing tokens after expression: {:?}", &toks[p.pos..])));
    }
    Ok((e, p.consts))
}

/// Position of the first token matching `pred` outside parentheses.
fn top_level(toks: &[Tok], pred: impl Fn(&Tok) -> bool) -> Option<usize> {
    let mut depth = 0i32;
    for (i, t) in toks.iter().enumerate() {
        match t {
            Tok::LParen => depth += 1,
            Tok::RParen => depth -= 1,
            t if depth == 0 && pred(t) => return Some(i),
            _ => {}
        }
    }
    None
}

pub fn parse_native(text: &str) -> Result<ProblemInstance, ParseError> {
    let mut inst = ProblemInstance::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("var ") {
            for name in rest.split_whitespace() {
                inst.declare(name);
            }
            continue;
        }
        let toks = tokenize(line, lineno)?;
        let rel_at = top_level(&toks, |t| matches!(t, Tok::Op(op) if RELS.contains(op)))
            .ok_or_else(|| ParseError::SyntaxError {
                line: lineno,
                msg: "expected a relation (=, !=, <=, >=, <, >)".into(),
            })?;
        let Tok::Op(rel) = toks[rel_at] else {
            unreachable!()
        };
        let (lhs, rhs) = (&toks[..rel_at], &toks[rel_at + 1..]);
        if top_level(rhs, |t| matches!(t, Tok::Op(op) if RELS.contains(op))).is_some() {
            return Err(ParseError::UnsupportedConstruct(format!(
                "chained relation on line {lineno}"
            )));
        }
        let (rexpr, mut consts) = parse_expr(rhs, lineno, &mut inst)?;
        let lit = if let Some(pct) = top_level(lhs, |t| *t == Tok::Op("%")) {
            let n = match &lhs[pct + 1..] {
                [Tok::Num(n)] if n >= &BigInt::from(2) => n.clone(),
                _ => {
                    return Err(ParseError::UnsupportedConstruct(format!(
                        "modulus on line {lineno} must be an integer constant of at least 2"
                    )))
                }
            };
            let negated = match rel {
                "=" => false,
                "!=" => true,
                _ => {
                    return Err(ParseError::UnsupportedConstruct(format!(
                        "modular inequality on line {lineno}"
                    )))
                }
            };
            match rexpr.as_const() {
                Some(c) if !c.is_negative() && c < &n => {}
                _ => {
                    return Err(ParseError::UnsupportedConstruct(format!(
                        "residue on line {lineno} must be a constant in [0, {n})"
                    )))
                }
            }
            let (lexpr, lc) = parse_expr(&lhs[..pct], lineno, &mut inst)?;
            consts.extend(lc);
            consts.push(n.clone());
            let e = if is_zero_const(&rexpr) {
                lexpr
            } else {
                Expression::sub(lexpr, rexpr)
            };
            Literal::ModEq {
                expr: e,
                modulus: n,
                negated,
            }
        } else {
            let (lexpr, lc) = parse_expr(lhs, lineno, &mut inst)?;
            consts.extend(lc);
            match rel {
                "=" | "!=" => Literal::IntEq {
                    expr: if is_zero_const(&rexpr) {
                        lexpr
                    } else {
                        Expression::sub(lexpr, rexpr)
                    },
                    negated: rel == "!=",
                },
                _ => bound_literal(rel, lexpr, rexpr, lineno)?,
            }
        };
        inst.push_raw(lit);
        inst.record_constants(consts);
    }
    Ok(inst)
}

fn bound_literal(
    rel: &str,
    lhs: Expression,
    rhs: Expression,
    line: usize,
) -> Result<Literal, ParseError> {
    let flip = |r: &str| match r {
        "<=" => ">=",
        ">=" => "<=",
        "<" => ">",
        _ => "<",
    };
    let (v, c, rel) = match (lhs, rhs) {
        (Expression::Var(v), Expression::Const(c)) => (v, c, rel),
        (Expression::Const(c), Expression::Var(v)) => (v, c, flip(rel)),
        _ => {
            return Err(ParseError::UnsupportedConstruct(format!(
                "inequality on line {line} must compare a variable with a constant"
            )))
        }
    };
    let (rel, value) = match rel {
        "<=" => (Relation::Le, c),
        ">=" => (Relation::Ge, c),
        "<" => (Relation::Le, c - BigInt::one()),
        _ => (Relation::Ge, c + BigInt::one()),
    };
    Ok(Literal::Bound {
        var: v,
        rel,
        value,
        negated: false,
    })
}
