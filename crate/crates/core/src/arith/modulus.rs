use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::One;

use super::factor::{factorize, Factorization};
use super::{nat, ArithError, Natural};

/// A modulus `n >= 2` together with its factorization, Carmichael exponent
/// `lambda(n)` and Euler totient `phi(n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Modulus {
    n: Natural,
    factorization: Factorization,
    carmichael: Natural,
    carmichael_factorization: Factorization,
    euler: Natural,
}

impl Modulus {
    /// Factorizes `n` with the default budget.
    pub fn new(n: &Natural) -> Result<Self, ArithError> {
        if *n < nat(2) {
            return Err(ArithError::InvalidModulus(n.clone()));
        }
        Self::from_factorization(factorize(n)?)
    }

    pub fn from_u64(n: u64) -> Result<Self, ArithError> {
        Self::new(&nat(n))
    }

    /// Uses a caller-supplied factorization, bypassing the factoring budget.
    pub fn from_factorization(factorization: Factorization) -> Result<Self, ArithError> {
        let n = factorization.value();
        if n < nat(2) {
            return Err(ArithError::InvalidModulus(n));
        }
        let carmichael_factorization = carmichael_of(&factorization)?;
        let carmichael = carmichael_factorization.value();
        let euler = euler_of(&factorization);
        Ok(Modulus {
            n,
            factorization,
            carmichael,
            carmichael_factorization,
            euler,
        })
    }

    pub fn n(&self) -> &Natural {
        &self.n
    }

    pub fn factorization(&self) -> &Factorization {
        &self.factorization
    }

    pub fn primes(&self) -> impl Iterator<Item = &Natural> {
        self.factorization.primes()
    }

    /// `lambda(n)`, the exponent of the unit group.
    pub fn carmichael(&self) -> &Natural {
        &self.carmichael
    }

    pub fn carmichael_factorization(&self) -> &Factorization {
        &self.carmichael_factorization
    }

    /// `phi(n)`, the order of the unit group.
    pub fn euler(&self) -> &Natural {
        &self.euler
    }

    pub fn is_unit(&self, x: &Natural) -> bool {
        x.gcd(&self.n).is_one()
    }

    pub fn pow(&self, base: &Natural, exp: &Natural) -> Natural {
        base.modpow(exp, &self.n)
    }

    pub fn mul(&self, a: &Natural, b: &Natural) -> Natural {
        (a * b) % &self.n
    }
}

/// Factorization of `lambda(n)` given the factorization of `n`.
pub fn carmichael_of(f: &Factorization) -> Result<Factorization, ArithError> {
    let mut exps: BTreeMap<Natural, u32> = BTreeMap::new();
    let mut absorb = |g: &Factorization| {
        for (q, e) in g.factors() {
            let slot = exps.entry(q.clone()).or_insert(0);
            *slot = (*slot).max(*e);
        }
    };
    for (p, a) in f.factors() {
        let component = if *p == nat(2) {
            match a {
                1 => Factorization::new(vec![])?,
                2 => Factorization::new(vec![(nat(2), 1)])?,
                _ => Factorization::new(vec![(nat(2), a - 2)])?,
            }
        } else {
            let p_minus_one = p - 1u32;
            let base = factorize(&p_minus_one)?;
            if *a > 1 {
                base.mul(&Factorization::new(vec![(p.clone(), a - 1)])?)
            } else {
                base
            }
        };
        absorb(&component);
    }
    Factorization::new(exps.into_iter().collect())
}

/// `phi(n)` from the factorization of `n`.
pub fn euler_of(f: &Factorization) -> Natural {
    f.factors().iter().fold(Natural::one(), |acc, (p, a)| {
        acc * p.pow(a - 1) * (p - 1u32)
    })
}

/// Multiplicative order of `g` modulo `m.n()`, computed by stripping prime
/// factors from `lambda(n)`.
pub fn multiplicative_order(g: &Natural, m: &Modulus) -> Result<Natural, ArithError> {
    if !m.is_unit(g) {
        return Err(ArithError::NotAUnit {
            value: g.clone(),
            modulus: m.n().clone(),
        });
    }
    Ok(order_dividing(g, m.n(), m.carmichael_factorization()))
}

/// Smallest `r` with `g^r = 1 (mod n)`, given the factorization of some
/// multiple of that order. The caller guarantees `g^multiple = 1`.
pub fn order_dividing(g: &Natural, n: &Natural, multiple: &Factorization) -> Natural {
    let mut order = multiple.value();
    for (q, e) in multiple.factors() {
        for _ in 0..*e {
            let candidate = &order / q;
            if g.modpow(&candidate, n).is_one() {
                order = candidate;
            } else {
                break;
            }
        }
    }
    order
}
