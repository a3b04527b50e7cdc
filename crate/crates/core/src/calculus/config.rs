use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use indexmap::IndexSet;
use num_bigint::BigInt;

use crate::frontend::{Literal, ProblemInstance, Relation};
use crate::intervals::{BoundsMap, Ext};
use crate::poly::{from_poly, Polynomial};

/// One subsystem: polynomials constrained to be `≡ 0` and `≢ 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Subsystem {
    pub eqs: IndexSet<Polynomial>,
    pub diseqs: IndexSet<Polynomial>,
}

impl Subsystem {
    pub fn eq_list(&self) -> Vec<Polynomial> {
        self.eqs.iter().cloned().collect()
    }

    pub fn size(&self) -> usize {
        self.eqs.len() + self.diseqs.len()
    }
}

/// Subsystem key: `Int` is the integer subsystem (`n = ∞`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Modulus {
    Mod(BigInt),
    Int,
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Modulus::Int => write!(f, "inf"),
            Modulus::Mod(n) => write!(f, "{n}"),
        }
    }
}

/// `(B, R_∞^=, R_∞^≠, {R_n^=, R_n^≠}_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    pub bounds: BoundsMap,
    pub int: Subsystem,
    pub modular: BTreeMap<BigInt, Subsystem>,
    names: Arc<Vec<String>>,
}

impl Configuration {
    pub fn new(names: Vec<String>) -> Self {
        Configuration {
            bounds: BoundsMap::unbounded(names.len()),
            int: Subsystem::default(),
            modular: BTreeMap::new(),
            names: Arc::new(names),
        }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn num_vars(&self) -> usize {
        self.names.len()
    }

    pub fn ensure_modulus(&mut self, n: &BigInt) -> &mut Subsystem {
        assert!(n >= &BigInt::from(2), "modulus keys are at least 2");
        self.modular.entry(n.clone()).or_default()
    }

    pub fn moduli(&self) -> impl Iterator<Item = &BigInt> {
        self.modular.keys()
    }

    pub fn subsystem(&self, m: &Modulus) -> &Subsystem {
        match m {
            Modulus::Int => &self.int,
            Modulus::Mod(n) => &self.modular[n],
        }
    }

    pub fn subsystem_mut(&mut self, m: &Modulus) -> &mut Subsystem {
        match m {
            Modulus::Int => &mut self.int,
            Modulus::Mod(n) => self.ensure_modulus(n),
        }
    }

    pub fn render_poly(&self, p: &Polynomial) -> String {
        p.render(&self.names)
    }

    /// The literal conjunction this configuration stands for.
    pub fn to_instance(&self) -> ProblemInstance {
        let mut inst = ProblemInstance::new();
        for name in self.names.iter() {
            inst.declare(name);
        }
        for (v, iv) in self.bounds.iter() {
            if let Ext::Fin(lo) = &iv.lo {
                inst.push(Literal::bound(v, Relation::Ge, lo.clone()));
            }
            if let Ext::Fin(hi) = &iv.hi {
                inst.push(Literal::bound(v, Relation::Le, hi.clone()));
            }
        }
        for e in &self.int.eqs {
            inst.push(Literal::int_eq(from_poly(e)));
        }
        for e in &self.int.diseqs {
            inst.push(Literal::int_diseq(from_poly(e)));
        }
        for (n, sub) in &self.modular {
            for e in &sub.eqs {
                inst.push(Literal::mod_eq(from_poly(e), n.clone()));
            }
            for e in &sub.diseqs {
                inst.push(Literal::mod_diseq(from_poly(e), n.clone()));
            }
        }
        inst
    }

    /// Total number of stored (dis)equalities.
    pub fn size(&self) -> usize {
        self.int.size() + self.modular.values().map(Subsystem::size).sum::<usize>()
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |set: &IndexSet<Polynomial>| {
            set.iter()
                .map(|p| p.render(&self.names))
                .collect::<Vec<_>>()
                .join(", ")
        };
        writeln!(f, "B:")?;
        for (v, iv) in self.bounds.iter() {
            writeln!(f, "  {} in {iv}", self.names[v as usize])?;
        }
        writeln!(f, "R_inf^= {{{}}}", show(&self.int.eqs))?;
        writeln!(f, "R_inf^!= {{{}}}", show(&self.int.diseqs))?;
        for (n, s) in &self.modular {
            writeln!(f, "R_{n}^= {{{}}}", show(&s.eqs))?;
            writeln!(f, "R_{n}^!= {{{}}}", show(&s.diseqs))?;
        }
        Ok(())
    }
}
