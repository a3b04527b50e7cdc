use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::expr::{Expression, Literal, ProblemInstance, Relation};
use super::sexpr::{parse_all, SExpr};
use super::ParseError;

/// Parses the SMT-LIB subset: declarations, assertions of literal
/// conjunctions, and the usual no-op commands.
pub fn parse_smtlib(text: &str) -> Result<ProblemInstance, ParseError> {
    let mut inst = ProblemInstance::new();
    for cmd in parse_all(text)? {
        let (head, args) = cmd.as_app().ok_or_else(|| ParseError::SyntaxError {
            line: cmd.line(),
            msg: format!("expected a command, found `{}`", cmd.render()),
        })?;
        match head {
            "set-logic" | "set-info" | "set-option" | "check-sat" | "exit" | "get-model"
            | "get-info" | "get-value" => {}
            "declare-const" => {
                let [name, sort] = args else {
                    return Err(syntax(&cmd, "declare-const takes a name and a sort"));
                };
                declare(&mut inst, name, sort)?;
            }
            "declare-fun" => {
                let [name, params, sort] = args else {
                    return Err(syntax(&cmd, "declare-fun takes a name, parameters and a sort"));
                };
                if !matches!(params, SExpr::List(p, _) if p.is_empty()) {
                    return Err(ParseError::UnsupportedConstruct(format!(
                        "function with parameters: {}",
                        cmd.render()
                    )));
                }
                declare(&mut inst, name, sort)?;
            }
            "assert" => {
                let [formula] = args else {
                    return Err(syntax(&cmd, "assert takes one formula"));
                };
                let mut nums = Vec::new();
                numerals(formula, &mut nums);
                let mut lits = Vec::new();
                literals(&inst, formula, false, &mut lits)?;
                for l in lits {
                    inst.push_raw(l);
                }
                inst.record_constants(nums);
            }
            other => {
                return Err(ParseError::UnsupportedConstruct(format!("command `{other}`")));
            }
        }
    }
    Ok(inst)
}

fn syntax(at: &SExpr, msg: &str) -> ParseError {
    ParseError::SyntaxError {
        line: at.line(),
        msg: msg.to_string(),
    }
}

fn declare(inst: &mut ProblemInstance, name: &SExpr, sort: &SExpr) -> Result<(), ParseError> {
    let name = name
        .as_atom()
        .ok_or_else(|| syntax(name, "expected a symbol"))?;
    if sort.as_atom() != Some("Int") {
        return Err(ParseError::UnsupportedConstruct(format!(
            "sort `{}`",
            sort.render()
        )));
    }
    inst.declare(name);
    Ok(())
}

fn numeral(s: &str) -> Option<BigInt> {
    if !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()) {
        s.parse().ok()
    } else {
        None
    }
}

fn numerals(s: &SExpr, out: &mut Vec<BigInt>) {
    match s {
        SExpr::Atom(a, _) => out.extend(numeral(a)),
        SExpr::List(items, _) => items.iter().for_each(|i| numerals(i, out)),
    }
}

fn literals(
    inst: &ProblemInstance,
    f: &SExpr,
    negated: bool,
    out: &mut Vec<Literal>,
) -> Result<(), ParseError> {
    if f.as_atom() == Some("true") && !negated {
        return Ok(());
    }
    let (head, args) = f
        .as_app()
        .ok_or_else(|| ParseError::UnsupportedConstruct(format!("formula `{}`", f.render())))?;
    match (head, args) {
        ("and", _) if !negated => {
            for a in args {
                literals(inst, a, false, out)?;
            }
            Ok(())
        }
        ("not", [inner]) => literals(inst, inner, !negated, out),
        ("=", [a, b]) => {
            out.push(equality(inst, a, b, negated)?);
            Ok(())
        }
        ("distinct", [a, b]) => {
            out.push(equality(inst, a, b, !negated)?);
            Ok(())
        }
        ("<=" | ">=" | "<" | ">", [a, b]) => {
            out.push(bound(inst, head, a, b, negated)?);
            Ok(())
        }
        _ => Err(ParseError::UnsupportedConstruct(format!(
            "formula `{}`",
            f.render()
        ))),
    }
}

fn as_mod(s: &SExpr) -> Option<(&SExpr, &SExpr)> {
    match s.as_app() {
        Some(("mod", [e, n])) => Some((e, n)),
        _ => None,
    }
}

fn modulus(n: &SExpr) -> Result<BigInt, ParseError> {
    match n.as_atom().and_then(numeral) {
        Some(v) if v >= BigInt::from(2) => Ok(v),
        _ => Err(ParseError::UnsupportedConstruct(format!(
            "modulus must be an integer constant of at least 2, found `{}`",
            n.render()
        ))),
    }
}

fn equality(
    inst: &ProblemInstance,
    a: &SExpr,
    b: &SExpr,
    negated: bool,
) -> Result<Literal, ParseError> {
    let (a, b) = if as_mod(a).is_none() && as_mod(b).is_some() {
        (b, a)
    } else {
        (a, b)
    };
    if let Some((e, n)) = as_mod(a) {
        let n = modulus(n)?;
        let lhs = expr(inst, e)?;
        let rhs = match as_mod(b) {
            Some((f, m)) => {
                if modulus(m)? != n {
                    return Err(ParseError::UnsupportedConstruct(
                        "equality between different moduli".into(),
                    ));
                }
                expr(inst, f)?
            }
            None => {
                let c = expr(inst, b)?;
                match c.as_const() {
                    Some(v) if !v.is_negative() && v < &n => c,
                    _ => {
                        return Err(ParseError::UnsupportedConstruct(format!(
                            "residue `{}` must be a constant in [0, {n})",
                            b.render()
                        )))
                    }
                }
            }
        };
        let e = if super::expr::is_zero_const(&rhs) {
            lhs
        } else {
            Expression::sub(lhs, rhs)
        };
        return Ok(Literal::ModEq {
            expr: e,
            modulus: n,
            negated,
        });
    }
    let lhs = expr(inst, a)?;
    let rhs = expr(inst, b)?;
    let e = if super::expr::is_zero_const(&rhs) {
        lhs
    } else {
        Expression::sub(lhs, rhs)
    };
    Ok(Literal::IntEq { expr: e, negated })
}

fn bound(
    inst: &ProblemInstance,
    op: &str,
    a: &SExpr,
    b: &SExpr,
    negated: bool,
) -> Result<Literal, ParseError> {
    let ea = expr(inst, a)?;
    let eb = expr(inst, b)?;
    // orient as `var op const`
    let (v, c, op) = match (&ea, &eb) {
        (Expression::Var(v), Expression::Const(c)) => (*v, c.clone(), op),
        (Expression::Const(c), Expression::Var(v)) => (
            *v,
            c.clone(),
            match op {
                "<=" => ">=",
                ">=" => "<=",
                "<" => ">",
                _ => "<",
            },
        ),
        _ => {
            return Err(ParseError::UnsupportedConstruct(format!(
                "inequality must compare a variable with a constant: `({op} {} {})`",
                a.render(),
                b.render()
            )))
        }
    };
    let (rel, value) = match op {
        "<=" => (Relation::Le, c),
        ">=" => (Relation::Ge, c),
        "<" => (Relation::Le, c - BigInt::one()),
        _ => (Relation::Ge, c + BigInt::one()),
    };
    Ok(Literal::Bound {
        var: v,
        rel,
        value,
        negated,
    })
}

fn expr(inst: &ProblemInstance, s: &SExpr) -> Result<Expression, ParseError> {
    match s {
        SExpr::Atom(a, _) => {
            if let Some(v) = numeral(a) {
                return Ok(Expression::Const(v));
            }
            inst.var(a)
                .map(Expression::Var)
                .ok_or_else(|| ParseError::UndeclaredVariable(a.clone()))
        }
        SExpr::List(..) => {
            let (head, args) = s
                .as_app()
                .ok_or_else(|| ParseError::UnsupportedConstruct(s.render()))?;
            let sub: Vec<Expression> = args
                .iter()
                .map(|x| expr(inst, x))
                .collect::<Result<_, _>>()?;
            match (head, sub.len()) {
                ("+", n) if n >= 1 => Ok(Expression::sum(sub)),
                ("*", n) if n >= 1 => Ok(Expression::product(sub)),
                ("-", 1) => Ok(Expression::neg(sub.into_iter().next().unwrap())),
                ("-", n) if n >= 2 => {
                    let mut it = sub.into_iter();
                    let first = it.next().unwrap();
                    Ok(it.fold(first, Expression::sub))
                }
                _ => Err(ParseError::UnsupportedConstruct(format!(
                    "term `{}`",
                    s.render()
                ))),
            }
        }
    }
}
