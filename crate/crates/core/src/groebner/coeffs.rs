use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Coefficient arithmetic for `Z` (`modulus = None`) or `Z_n`.
///
/// Over `Z_n` coefficients are kept in `[0, n)`. Leading coefficients of
/// basis elements are normalized to a canonical associate that divides `n`
/// (over `Z`: the positive associate), so division with remainder by a
/// leading coefficient `d` is integer division of the representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Coeffs {
    pub modulus: Option<BigInt>,
}

impl Coeffs {
    pub fn norm(&self, c: BigInt) -> BigInt {
        match &self.modulus {
            Some(n) => c.mod_floor(n),
            None => c,
        }
    }

    /// `c = q*d + r` with `r` in `[0, d)`; `d` must be a canonical leading
    /// coefficient (positive, dividing `n` over `Z_n`).
    pub fn divrem(&self, c: &BigInt, d: &BigInt) -> (BigInt, BigInt) {
        let (q, r) = c.div_mod_floor(d);
        (self.norm(q), r)
    }

    /// A unit `u` such that `u*c` is the canonical associate of `c`.
    pub fn canonical_unit(&self, c: &BigInt) -> BigInt {
        match &self.modulus {
            None => {
                if c.is_negative() {
                    -BigInt::one()
                } else {
                    BigInt::one()
                }
            }
            Some(n) => {
                let g = c.gcd(n);
                let cp = c / &g;
                let m = n / &g;
                let mut u = if m.is_one() {
                    BigInt::one()
                } else {
                    mod_inverse(&cp.mod_floor(&m), &m).expect("coprime by construction")
                };
                // lift u from Z_m to a unit of Z_n
                while !u.gcd(n).is_one() {
                    u += &m;
                }
                u.mod_floor(n)
            }
        }
    }

    /// `n / gcd(c, n)` when it kills `c` without being zero itself.
    pub fn annihilator(&self, c: &BigInt) -> Option<BigInt> {
        let n = self.modulus.as_ref()?;
        let g = c.gcd(n);
        if g.is_one() || g.is_zero() {
            None
        } else {
            Some(n / g)
        }
    }
}

/// Inverse of `a` modulo `n`, if it exists.
pub fn mod_inverse(a: &BigInt, n: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(n);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(n))
    } else {
        None
    }
}

/// Deterministic Miller-Rabin for all inputs below 3.3e24, and a strong
/// probable-prime test with the same bases above that.
pub fn is_prime(n: &BigInt) -> bool {
    let two = BigInt::from(2);
    if n < &two {
        return false;
    }
    const SMALL: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
    for p in SMALL {
        let p = BigInt::from(p);
        if n == &p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let nm1 = n - 1u32;
    let mut d = nm1.clone();
    let mut s = 0;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for a in SMALL {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x.is_one() || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
