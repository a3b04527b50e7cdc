use std::collections::BTreeSet;
use std::fmt;

use indexmap::IndexSet;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::poly::VarId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
}

/// Integer term built from constants, variables, `+`, `-` and `*`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expression {
    Const(BigInt),
    Var(VarId),
    Bin(BinOp, Box<Expression>, Box<Expression>),
}

impl Expression {
    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Expression::Const(c.into())
    }

    pub fn var(v: VarId) -> Self {
        Expression::Var(v)
    }

    /// Builds `a op b`, folding when both sides are constants.
    pub fn bin(op: BinOp, a: Expression, b: Expression) -> Self {
        match (&a, &b) {
            (Expression::Const(x), Expression::Const(y)) => Expression::Const(match op {
                BinOp::Add => x + y,
                BinOp::Sub => x - y,
                BinOp::Mul => x * y,
            }),
            _ => Expression::Bin(op, Box::new(a), Box::new(b)),
        }
    }

    pub fn add(a: Expression, b: Expression) -> Self {
        Self::bin(BinOp::Add, a, b)
    }

    pub fn sub(a: Expression, b: Expression) -> Self {
        Self::bin(BinOp::Sub, a, b)
    }

    pub fn mul(a: Expression, b: Expression) -> Self {
        Self::bin(BinOp::Mul, a, b)
    }

    pub fn neg(a: Expression) -> Self {
        match a {
            Expression::Const(c) => Expression::Const(-c),
            other => Self::mul(Expression::constant(-1), other),
        }
    }

    pub fn sum<I: IntoIterator<Item = Expression>>(terms: I) -> Self {
        terms
            .into_iter()
            .reduce(Expression::add)
            .unwrap_or_else(|| Expression::constant(0))
    }

    pub fn product<I: IntoIterator<Item = Expression>>(factors: I) -> Self {
        factors
            .into_iter()
            .reduce(Expression::mul)
            .unwrap_or_else(|| Expression::constant(1))
    }

    pub fn as_const(&self) -> Option<&BigInt> {
        match self {
            Expression::Const(c) => Some(c),
            _ => None,
        }
    }

    /// Absolute values of the integer constants occurring in the tree.
    pub fn constants(&self, out: &mut BTreeSet<BigInt>) {
        match self {
            Expression::Const(c) => {
                out.insert(c.abs());
            }
            Expression::Var(_) => {}
            Expression::Bin(_, a, b) => {
                a.constants(out);
                b.constants(out);
            }
        }
    }

    pub fn vars(&self, out: &mut BTreeSet<VarId>) {
        match self {
            Expression::Const(_) => {}
            Expression::Var(v) => {
                out.insert(*v);
            }
            Expression::Bin(_, a, b) => {
                a.vars(out);
                b.vars(out);
            }
        }
    }

    /// Infix rendering with explicit parentheses around compound operands.
    pub fn render(&self, names: &[String]) -> String {
        match self {
            Expression::Const(c) => {
                if c.is_negative() {
                    format!("({c})")
                } else {
                    c.to_string()
                }
            }
            Expression::Var(v) => names
                .get(*v as usize)
                .cloned()
                .unwrap_or_else(|| format!("x{v}")),
            Expression::Bin(op, a, b) => {
                let sym = match op {
                    BinOp::Add => "+",
                    BinOp::Sub => "-",
                    BinOp::Mul => "*",
                };
                let wrap = |e: &Expression| match e {
                    Expression::Bin(..) => format!("({})", e.render(names)),
                    _ => e.render(names),
                };
                format!("{} {} {}", wrap(a), sym, wrap(b))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Ge,
}

/// A literal of the fragment. `negated` flips the atom.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Literal {
    /// `var rel value`
    Bound {
        var: VarId,
        rel: Relation,
        value: BigInt,
        negated: bool,
    },
    /// `expr = 0`
    IntEq { expr: Expression, negated: bool },
    /// `expr mod modulus = 0`
    ModEq {
        expr: Expression,
        modulus: BigInt,
        negated: bool,
    },
}

impl Literal {
    pub fn bound<T: Into<BigInt>>(var: VarId, rel: Relation, value: T) -> Self {
        Literal::Bound {
            var,
            rel,
            value: value.into(),
            negated: false,
        }
    }

    pub fn int_eq(expr: Expression) -> Self {
        Literal::IntEq {
            expr,
            negated: false,
        }
    }

    pub fn int_diseq(expr: Expression) -> Self {
        Literal::IntEq {
            expr,
            negated: true,
        }
    }

    pub fn mod_eq<T: Into<BigInt>>(expr: Expression, modulus: T) -> Self {
        Literal::ModEq {
            expr,
            modulus: modulus.into(),
            negated: false,
        }
    }

    pub fn mod_diseq<T: Into<BigInt>>(expr: Expression, modulus: T) -> Self {
        Literal::ModEq {
            expr,
            modulus: modulus.into(),
            negated: true,
        }
    }

    pub fn negate(self) -> Self {
        match self {
            Literal::Bound {
                var,
                rel,
                value,
                negated,
            } => Literal::Bound {
                var,
                rel,
                value,
                negated: !negated,
            },
            Literal::IntEq { expr, negated } => Literal::IntEq {
                expr,
                negated: !negated,
            },
            Literal::ModEq {
                expr,
                modulus,
                negated,
            } => Literal::ModEq {
                expr,
                modulus,
                negated: !negated,
            },
        }
    }

    /// Integer constants greater than one that the literal mentions.
    pub fn constants(&self) -> BTreeSet<BigInt> {
        let mut out = BTreeSet::new();
        match self {
            Literal::Bound { value, .. } => {
                out.insert(value.abs());
            }
            Literal::IntEq { expr, .. } => expr.constants(&mut out),
            Literal::ModEq { expr, modulus, .. } => {
                expr.constants(&mut out);
                out.insert(modulus.clone());
            }
        }
        out.retain(|c| c > &BigInt::one());
        out
    }

    pub fn render(&self, names: &[String]) -> String {
        match self {
            Literal::Bound {
                var,
                rel,
                value,
                negated,
            } => {
                let name = names
                    .get(*var as usize)
                    .cloned()
                    .unwrap_or_else(|| format!("x{var}"));
                let op = match (rel, negated) {
                    (Relation::Le, false) => "<=",
                    (Relation::Ge, false) => ">=",
                    (Relation::Le, true) => ">",
                    (Relation::Ge, true) => "<",
                };
                format!("{name} {op} {value}")
            }
            Literal::IntEq { expr, negated } => {
                format!("{} {} 0", expr.render(names), if *negated { "!=" } else { "=" })
            }
            Literal::ModEq {
                expr,
                modulus,
                negated,
            } => format!(
                "({}) % {} {} 0",
                expr.render(names),
                modulus,
                if *negated { "!=" } else { "=" }
            ),
        }
    }
}

/// Declared variables, the literal conjunction, and the integer constants
/// greater than one that appeared in the source text.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProblemInstance {
    variables: IndexSet<String>,
    literals: Vec<Literal>,
    constants: BTreeSet<BigInt>,
}

impl ProblemInstance {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declares a variable (idempotent) and returns its id.
    pub fn declare(&mut self, name: &str) -> VarId {
        let (i, _) = self.variables.insert_full(name.to_string());
        i as VarId
    }

    pub fn var(&self, name: &str) -> Option<VarId> {
        self.variables.get_index_of(name).map(|i| i as VarId)
    }

    /// Adds a literal and records the constants it mentions.
    pub fn push(&mut self, lit: Literal) {
        self.constants.extend(lit.constants());
        self.literals.push(lit);
    }

    /// Adds a literal without recording its constants; parsers use this and
    /// record the constants of the source text instead.
    pub fn push_raw(&mut self, lit: Literal) {
        self.literals.push(lit);
    }

    /// Records constants seen in the source that normalization may have
    /// rewritten away (e.g. the `5` of `x < 5`).
    pub fn record_constants<I: IntoIterator<Item = BigInt>>(&mut self, cs: I) {
        self.constants
            .extend(cs.into_iter().map(|c| c.abs()).filter(|c| c > &BigInt::one()));
    }

    pub fn variables(&self) -> &IndexSet<String> {
        &self.variables
    }

    pub fn names(&self) -> Vec<String> {
        self.variables.iter().cloned().collect()
    }

    pub fn num_vars(&self) -> usize {
        self.variables.len()
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    /// Every integer constant greater than one; these index the modular
    /// subsystems.
    pub fn moduli(&self) -> &BTreeSet<BigInt> {
        &self.constants
    }
}

impl fmt::Display for ProblemInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::write::to_native(self))
    }
}

pub(crate) fn is_zero_const(e: &Expression) -> bool {
    e.as_const().is_some_and(Zero::is_zero)
}
