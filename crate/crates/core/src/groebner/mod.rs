//! Reduction, ideal membership, and strong reduced Gröbner bases over `Z`,
//! `Z_n` and `Z_p`.

mod buchberger;
mod cache;
mod coeffs;

use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use cache::clear_cache;
pub use coeffs::is_prime;
pub use coeffs::mod_inverse;

use crate::poly::{MonomialOrder, Polynomial};
use buchberger::{Engine, Poly};
use coeffs::Coeffs;

/// Default time budget of one basis computation.
pub const DEFAULT_BUDGET: Duration = Duration::from_secs(30);

/// Coefficient ring: `Z` or `Z_n` for `n >= 2`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Integers,
    Modular { n: BigInt, prime: bool },
}

impl RingSpec {
    pub fn integers() -> Self {
        RingSpec::Integers
    }

    pub fn modular(n: &BigInt) -> Self {
        assert!(n >= &BigInt::from(2), "modulus must be at least 2");
        RingSpec::Modular {
            n: n.clone(),
            prime: is_prime(n),
        }
    }

    pub fn modulus(&self) -> Option<&BigInt> {
        match self {
            RingSpec::Integers => None,
            RingSpec::Modular { n, .. } => Some(n),
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(self, RingSpec::Modular { prime: true, .. })
    }

    fn coeffs(&self) -> Coeffs {
        Coeffs {
            modulus: self.modulus().cloned(),
        }
    }
}

impl fmt::Debug for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => write!(f, "Z"),
            RingSpec::Modular { n, .. } => write!(f, "Z_{n}"),
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    Yes,
    No,
    Unknown,
}

impl Membership {
    pub fn is_yes(self) -> bool {
        self == Membership::Yes
    }
}

/// A generating set of an ideal; a strong reduced Gröbner basis when
/// `complete`, otherwise whatever was inter-reduced before the budget ran
/// out.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub generators: Vec<Polynomial>,
    pub ring: RingSpec,
    pub order: MonomialOrder,
    pub complete: bool,
    inputs: Vec<Polynomial>,
    budget: Duration,
}

impl GroebnerBasis {
    fn engine(&self) -> (Coeffs, bool) {
        (self.ring.coeffs(), self.ring.is_field())
    }

    /// Normal form of `p` modulo the generators.
    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        let (ring, field) = self.engine();
        let e = Engine {
            ring: &ring,
            ord: &self.order,
            deadline: None,
            field,
        };
        let gens: Vec<Poly> = self.generators.iter().map(|g| e.import(g)).collect();
        let refs: Vec<&Poly> = gens.iter().collect();
        Engine::export(&e.nf(e.import(p), &refs))
    }

    /// Ideal membership. With an incomplete basis only a syntactic match
    /// against the inputs (after ring normalization) counts as a yes.
    pub fn contains(&self, p: &Polynomial) -> Membership {
        let (ring, field) = self.engine();
        let e = Engine {
            ring: &ring,
            ord: &self.order,
            deadline: None,
            field,
        };
        let ip = e.import(p);
        if ip.is_empty() {
            return Membership::Yes;
        }
        if self.complete {
            return if self.reduce(p).is_zero() {
                Membership::Yes
            } else {
                Membership::No
            };
        }
        let target = Engine::export(&e.canonical(ip));
        let hit = self
            .inputs
            .iter()
            .chain(&self.generators)
            .any(|g| Engine::export(&e.canonical(e.import(g))) == target);
        if hit {
            Membership::Yes
        } else {
            Membership::Unknown
        }
    }

    pub fn contains_one(&self) -> Membership {
        self.contains(&Polynomial::one())
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// The Buchberger criterion: every S-polynomial, G-polynomial and
    /// annihilator multiple reduces to zero, and so does every input.
    /// Returns a description of each failure.
    pub fn criterion_violations(&self) -> Vec<String> {
        let (ring, field) = self.engine();
        let e = Engine {
            ring: &ring,
            ord: &self.order,
            deadline: None,
            field,
        };
        let gens: Vec<Poly> = self.generators.iter().map(|g| e.import(g)).collect();
        let refs: Vec<&Poly> = gens.iter().collect();
        let mut bad = Vec::new();
        for (i, f) in gens.iter().enumerate() {
            if let Some(a) = e.annihilated(f) {
                if !e.nf(a, &refs).is_empty() {
                    bad.push(format!("annihilator of generator {i}"));
                }
            }
            for (j, g) in gens.iter().enumerate().skip(i + 1) {
                for (k, s) in e.pair_polys(f, g).into_iter().enumerate() {
                    if !e.nf(s, &refs).is_empty() {
                        bad.push(format!("pair ({i}, {j}) polynomial {k}"));
                    }
                }
            }
        }
        for (i, p) in self.inputs.iter().enumerate() {
            if !e.nf(e.import(p), &refs).is_empty() {
                bad.push(format!("input {i}"));
            }
        }
        bad
    }
}

/// Normal form of `p` modulo `gens` (not necessarily a Gröbner basis).
/// Generators are first scaled to their canonical associates.
pub fn reduce(
    p: &Polynomial,
    gens: &[Polynomial],
    ring: &RingSpec,
    ord: &MonomialOrder,
) -> Polynomial {
    let coeffs = ring.coeffs();
    let e = Engine {
        ring: &coeffs,
        ord,
        deadline: None,
        field: ring.is_field(),
    };
    let gs: Vec<Poly> = gens
        .iter()
        .map(|g| e.canonical(e.import(g)))
        .filter(|g| !g.is_empty())
        .collect();
    let refs: Vec<&Poly> = gs.iter().collect();
    Engine::export(&e.nf(e.import(p), &refs))
}

/// Computes the basis without consulting the memo table.
pub fn groebner_basis_uncached(
    gens: &[Polynomial],
    ring: &RingSpec,
    ord: &MonomialOrder,
    budget: Duration,
) -> GroebnerBasis {
    let coeffs = ring.coeffs();
    let e = Engine {
        ring: &coeffs,
        ord,
        deadline: Instant::now().checked_add(budget),
        field: ring.is_field(),
    };
    let input: Vec<Poly> = gens.iter().map(|g| e.import(g)).collect();
    let raw = e.buchberger(input);
    GroebnerBasis {
        generators: raw.polys.iter().map(Engine::export).collect(),
        ring: ring.clone(),
        order: ord.clone(),
        complete: raw.complete,
        inputs: gens.to_vec(),
        budget,
    }
}

/// Memoized basis computation. The flag is true when the result came from
/// the memo table.
pub fn groebner_basis_memo(
    gens: &[Polynomial],
    ring: &RingSpec,
    ord: &MonomialOrder,
    budget: Duration,
) -> (Arc<GroebnerBasis>, bool) {
    let k = cache::key(gens, ring, ord);
    if let Some(gb) = cache::lookup(&k) {
        if gb.complete || gb.budget >= budget {
            return (gb, true);
        }
    }
    let gb = Arc::new(groebner_basis_uncached(&k.0, ring, ord, budget));
    cache::store(k, gb.clone());
    (gb, false)
}

pub fn groebner_basis(
    gens: &[Polynomial],
    ring: &RingSpec,
    ord: &MonomialOrder,
    budget: Duration,
) -> Arc<GroebnerBasis> {
    groebner_basis_memo(gens, ring, ord, budget).0
}

/// `p ∈ I(gens)` over `ring`, decided with a grevlex basis.
pub fn in_ideal(
    p: &Polynomial,
    gens: &[Polynomial],
    ring: &RingSpec,
    budget: Duration,
) -> Membership {
    groebner_basis(gens, ring, &MonomialOrder::GrevLex, budget).contains(p)
}

/// Ring-normalizes a polynomial: coefficients in `[0, n)` over `Z_n`.
pub fn normalize(p: &Polynomial, ring: &RingSpec) -> Polynomial {
    match ring.modulus() {
        None => p.clone(),
        Some(n) => Polynomial::from_terms(p.terms().map(|(m, c)| {
            let r = num_integer::Integer::mod_floor(c, n);
            (r, m.clone())
        })),
    }
}

/// True if `p` is a unit constant of the ring.
pub fn is_unit_constant(p: &Polynomial, ring: &RingSpec) -> bool {
    if !p.is_constant() || p.is_zero() {
        return false;
    }
    let c = p.constant_term();
    match ring.modulus() {
        None => c == BigInt::one() || c == -BigInt::one(),
        Some(n) => num_integer::Integer::gcd(&c, n).is_one() && !c.is_zero(),
    }
}
