//! Subgroups of `(Z/nZ)*` generated by explicit elements.
//!
//! Closures are enumerated breadth-first and stored as sorted vectors, so
//! iteration order and every witness derived from them is reproducible.

use std::collections::{HashSet, VecDeque};

use num_integer::Integer;
use num_traits::One;
use thiserror::Error;

use crate::arith::{divisors, factorize, multiplicative_order, ArithError, Modulus, Natural};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("{value} is not a unit modulo {modulus}")]
    NotAUnit { value: Natural, modulus: Natural },
    #[error("subgroup closure exceeds the capacity of {cap} elements")]
    CapacityExceeded { cap: usize },
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// All elements of `<generators>` modulo `modulus`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupClosure {
    modulus: Natural,
    generators: Vec<Natural>,
    elements: Vec<Natural>,
}

impl SubgroupClosure {
    pub fn modulus(&self) -> &Natural {
        &self.modulus
    }

    pub fn generators(&self) -> &[Natural] {
        &self.generators
    }

    /// Sorted ascending.
    pub fn elements(&self) -> &[Natural] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: &Natural) -> bool {
        self.elements.binary_search(x).is_ok()
    }
}

/// Enumerates `<generators>` mod `n`. Fails once more than `cap` elements
/// have been discovered. The empty generator list gives `{1}`.
pub fn close(generators: &[Natural], n: &Natural, cap: usize) -> Result<SubgroupClosure, GroupError> {
    for g in generators {
        if !g.gcd(n).is_one() {
            return Err(GroupError::NotAUnit {
                value: g.clone(),
                modulus: n.clone(),
            });
        }
    }
    let one = Natural::one() % n;
    let mut seen: HashSet<Natural> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(one.clone());
    queue.push_back(one);
    let reduced: Vec<Natural> = generators.iter().map(|g| g % n).collect();
    while let Some(x) = queue.pop_front() {
        for g in &reduced {
            let y = (&x * g) % n;
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return Err(GroupError::CapacityExceeded { cap });
                }
                queue.push_back(y);
            }
        }
    }
    let mut elements: Vec<Natural> = seen.into_iter().collect();
    elements.sort();
    Ok(SubgroupClosure {
        modulus: n.clone(),
        generators: generators.to_vec(),
        elements,
    })
}

/// Outcome of [`independence_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IndependenceVerdict {
    /// No nontrivial power of any generator lies in the span of the others.
    Independent,
    /// `generators[index]^power` lies in the span of the other generators,
    /// with `1 <= power < order(generators[index])`. `power` is the smallest
    /// such exponent over all generators, ties going to the lowest index.
    Violated { index: usize, power: Natural },
    /// Some closure of the other generators exceeded the cap.
    Undecidable { cap: usize },
}

impl IndependenceVerdict {
    pub fn is_independent(&self) -> bool {
        matches!(self, IndependenceVerdict::Independent)
    }
}

/// Checks that `g_i^v` is outside `<g_j : j != i>` for every `i` and every
/// `1 <= v < ord(g_i)`.
///
/// The exponents `v` with `g_i^v` in a subgroup form a subgroup of
/// `Z/ord(g_i)`, so the smallest violating power is a proper divisor of the
/// order; only divisors are tried.
pub fn independence_check(
    generators: &[Natural],
    m: &Modulus,
    cap: usize,
) -> Result<IndependenceVerdict, GroupError> {
    let n = m.n();
    let mut orders = Vec::with_capacity(generators.len());
    for g in generators {
        orders.push(multiplicative_order(g, m).map_err(|_| GroupError::NotAUnit {
            value: g.clone(),
            modulus: n.clone(),
        })?);
    }
    let mut best: Option<(Natural, usize)> = None;
    for i in 0..generators.len() {
        let others: Vec<Natural> = generators
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let span = match close(&others, n, cap) {
            Ok(span) => span,
            Err(GroupError::CapacityExceeded { cap }) => {
                return Ok(IndependenceVerdict::Undecidable { cap })
            }
            Err(e) => return Err(e),
        };
        if orders[i].is_one() {
            continue;
        }
        let order_factors = factorize(&orders[i])?;
        for d in divisors(&order_factors) {
            if d == orders[i] {
                break;
            }
            if let Some((best_power, _)) = &best {
                if d >= *best_power {
                    break;
                }
            }
            if span.contains(&m.pow(&generators[i], &d)) {
                best = Some((d, i));
                break;
            }
        }
    }
    Ok(match best {
        Some((power, index)) => IndependenceVerdict::Violated { index, power },
        None => IndependenceVerdict::Independent,
    })
}
