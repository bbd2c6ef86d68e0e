//! Simultaneous congruences `x = b_i (mod m_i)` with arbitrary, possibly
//! non-coprime, moduli.
//!
//! Two congruences are compatible iff `gcd(m_1, m_2)` divides `b_1 - b_2`;
//! the combined solution is then unique modulo `lcm(m_1, m_2)`. Longer
//! systems are merged pairwise from left to right.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{mod_inv, signed_mod, Natural};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CongruenceError {
    #[error("congruence modulus must be at least 1")]
    ZeroModulus,
    #[error("a congruence system needs at least one congruence")]
    EmptySystem,
    #[error("congruences {first} and {second} are incompatible")]
    NoSolution { first: usize, second: usize },
}

/// `x = residue (mod modulus)`, with the residue reduced into `[0, modulus)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Congruence {
    #[serde(with = "crate::arith::dec")]
    residue: Natural,
    #[serde(with = "crate::arith::dec")]
    modulus: Natural,
}

impl Congruence {
    pub fn new(residue: Natural, modulus: Natural) -> Result<Self, CongruenceError> {
        if modulus.is_zero() {
            return Err(CongruenceError::ZeroModulus);
        }
        let residue = residue % &modulus;
        Ok(Congruence { residue, modulus })
    }

    pub fn residue(&self) -> &Natural {
        &self.residue
    }

    pub fn modulus(&self) -> &Natural {
        &self.modulus
    }

    pub fn is_satisfied_by(&self, x: &Natural) -> bool {
        x % &self.modulus == self.residue
    }
}

/// Nonempty list of congruences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceSystem {
    items: Vec<Congruence>,
}

impl CongruenceSystem {
    pub fn new(items: Vec<Congruence>) -> Result<Self, CongruenceError> {
        if items.is_empty() {
            return Err(CongruenceError::EmptySystem);
        }
        Ok(CongruenceSystem { items })
    }

    /// `x = residues[i] (mod moduli[i])` for each i.
    pub fn from_pairs<I>(pairs: I) -> Result<Self, CongruenceError>
    where
        I: IntoIterator<Item = (Natural, Natural)>,
    {
        let items = pairs
            .into_iter()
            .map(|(r, m)| Congruence::new(r, m))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(items)
    }

    pub fn items(&self) -> &[Congruence] {
        &self.items
    }
}

/// The unique solution `residue (mod modulus)` of a system; `modulus` is the
/// lcm of the input moduli.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CrtSolution {
    #[serde(with = "crate::arith::dec")]
    pub residue: Natural,
    #[serde(with = "crate::arith::dec")]
    pub modulus: Natural,
}

fn abs_diff(a: &Natural, b: &Natural) -> Natural {
    if a >= b {
        a - b
    } else {
        b - a
    }
}

/// Whether `c1` and `c2` have a common solution.
pub fn solvable_pair(c1: &Congruence, c2: &Congruence) -> bool {
    let g = c1.modulus.gcd(&c2.modulus);
    (abs_diff(&c1.residue, &c2.residue) % g).is_zero()
}

/// Merges two compatible congruences. `None` if incompatible.
fn merge(a: &Congruence, b: &Congruence) -> Option<Congruence> {
    let g = a.modulus.gcd(&b.modulus);
    let diff = BigInt::from(b.residue.clone()) - BigInt::from(a.residue.clone());
    let g_signed = BigInt::from(g.clone());
    if !(&diff % &g_signed).is_zero() {
        return None;
    }
    let reduced_m = &b.modulus / &g;
    let lcm = &a.modulus * &reduced_m;
    if reduced_m.is_one() {
        // b's modulus divides a's; a already pins x modulo the lcm.
        return Some(Congruence {
            residue: a.residue.clone(),
            modulus: lcm,
        });
    }
    let step_modulus = &a.modulus / &g;
    // Solve step_modulus * t = diff / g (mod reduced_m).
    let inv = mod_inv(&(step_modulus % &reduced_m), &reduced_m)
        .expect("m1/g and m2/g are coprime");
    let t = signed_mod(&((diff / g_signed) * BigInt::from(inv)), &reduced_m);
    let residue = (&a.residue + &a.modulus * t) % &lcm;
    Some(Congruence {
        residue,
        modulus: lcm,
    })
}

/// Solves the whole system. On failure, reports the first pair `(i, j)`,
/// `i < j`, of individually incompatible congruences, where `j` is the first
/// item the running merge could not absorb.
pub fn solve_system(sys: &CongruenceSystem) -> Result<CrtSolution, CongruenceError> {
    let mut acc = sys.items[0].clone();
    for (j, item) in sys.items.iter().enumerate().skip(1) {
        match merge(&acc, item) {
            Some(next) => acc = next,
            None => {
                // Pairwise compatibility implies joint solvability over Z, so
                // some earlier item conflicts with this one directly.
                let first = sys.items[..j]
                    .iter()
                    .position(|c| !solvable_pair(c, item))
                    .unwrap_or(0);
                return Err(CongruenceError::NoSolution { first, second: j });
            }
        }
    }
    Ok(CrtSolution {
        residue: acc.residue,
        modulus: acc.modulus,
    })
}

/// `[k mod r_1, ..., k mod r_t]`.
pub fn split_exponent(k: &Natural, orders: &[Natural]) -> Result<Vec<Natural>, CongruenceError> {
    orders
        .iter()
        .map(|r| {
            if r.is_zero() {
                Err(CongruenceError::ZeroModulus)
            } else {
                Ok(k % r)
            }
        })
        .collect()
}
