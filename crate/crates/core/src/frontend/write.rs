use num_traits::Signed;

use super::expr::{BinOp, Expression, Literal, ProblemInstance, Relation};

fn smt_symbol(name: &str) -> String {
    let simple = !name.is_empty()
        && !name.starts_with(|c: char| c.is_ascii_digit())
        && name
            .chars()
            .all(|c| c.is_alphanumeric() || "~!@$%^&*_-+=<>.?/".contains(c));
    if simple {
        name.to_string()
    } else {
        format!("|{name}|")
    }
}

fn smt_expr(e: &Expression, names: &[String]) -> String {
    match e {
        Expression::Const(c) if c.is_negative() => format!("(- {})", c.abs()),
        Expression::Const(c) => c.to_string(),
        Expression::Var(v) => smt_symbol(&names[*v as usize]),
        Expression::Bin(op, a, b) => {
            let sym = match op {
                BinOp::Add => "+",
                BinOp::Sub => "-",
                BinOp::Mul => "*",
            };
            format!("({sym} {} {})", smt_expr(a, names), smt_expr(b, names))
        }
    }
}

fn smt_literal(l: &Literal, names: &[String]) -> String {
    let (atom, negated) = match l {
        Literal::Bound {
            var,
            rel,
            value,
            negated,
        } => {
            let op = match rel {
                Relation::Le => "<=",
                Relation::Ge => ">=",
            };
            let c = smt_expr(&Expression::Const(value.clone()), names);
            (
                format!("({op} {} {c})", smt_symbol(&names[*var as usize])),
                *negated,
            )
        }
        Literal::IntEq { expr, negated } => (format!("(= {} 0)", smt_expr(expr, names)), *negated),
        Literal::ModEq {
            expr,
            modulus,
            negated,
        } => (
            format!("(= (mod {} {modulus}) 0)", smt_expr(expr, names)),
            *negated,
        ),
    };
    if negated {
        format!("(not {atom})")
    } else {
        atom
    }
}

/// SMT-LIB rendering. `header` lines are emitted as `;` comments.
pub fn to_smt2_with_header(inst: &ProblemInstance, header: &[String]) -> String {
    let names = inst.names();
    let mut out = String::new();
    for h in header {
        out.push_str(&format!("; {h}\n"));
    }
    out.push_str("(set-logic QF_NIA)\n");
    for n in &names {
        out.push_str(&format!("(declare-const {} Int)\n", smt_symbol(n)));
    }
    for l in inst.literals() {
        out.push_str(&format!("(assert {})\n", smt_literal(l, &names)));
    }
    out.push_str("(check-sat)\n");
    out
}

pub fn to_smt2(inst: &ProblemInstance) -> String {
    to_smt2_with_header(inst, &[])
}

/// Native rendering. `header` lines are emitted as `#` comments.
pub fn to_native_with_header(inst: &ProblemInstance, header: &[String]) -> String {
    let names = inst.names();
    let mut out = String::new();
    for h in header {
        out.push_str(&format!("# {h}\n"));
    }
    if !names.is_empty() {
        out.push_str(&format!("var {}\n", names.join(" ")));
    }
    for l in inst.literals() {
        out.push_str(&l.render(&names));
        out.push('\n');
    }
    out
}

pub fn to_native(inst: &ProblemInstance) -> String {
    to_native_with_header(inst, &[])
}
