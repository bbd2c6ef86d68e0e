use std::fmt;

use num_bigint::RandBigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::prime::{is_prime_with_rounds, Primality, DEFAULT_MR_ROUNDS};
use super::{nat, ArithError, Natural};

/// How strongly the primes of a [`Factorization`] are known to be prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Certainty {
    Proven,
    /// At least one prime factor only passed `rounds` Miller-Rabin rounds.
    Probable { rounds: u32 },
}

/// Prime-power decomposition, ascending by prime.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    factors: Vec<(Natural, u32)>,
    certainty: Certainty,
}

impl Factorization {
    /// Builds a factorization from `(prime, exponent)` pairs. Pairs may come
    /// in any order and repeat a prime; the result is normalized. Every prime
    /// is checked.
    pub fn new(pairs: Vec<(Natural, u32)>) -> Result<Self, ArithError> {
        Self::with_rounds(pairs, DEFAULT_MR_ROUNDS)
    }

    pub fn with_rounds(mut pairs: Vec<(Natural, u32)>, rounds: u32) -> Result<Self, ArithError> {
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        let mut factors: Vec<(Natural, u32)> = Vec::with_capacity(pairs.len());
        let mut certainty = Certainty::Proven;
        for (p, e) in pairs {
            if e == 0 {
                return Err(ArithError::InvalidFactorization(format!(
                    "prime {p} has exponent zero"
                )));
            }
            if let Some(last) = factors.last_mut() {
                if last.0 == p {
                    last.1 += e;
                    continue;
                }
            }
            match is_prime_with_rounds(&p, rounds) {
                Primality::Composite => {
                    return Err(ArithError::InvalidFactorization(format!("{p} is not prime")))
                }
                Primality::Prime => {}
                Primality::ProbablePrime { rounds } => certainty = Certainty::Probable { rounds },
            }
            factors.push((p, e));
        }
        Ok(Factorization { factors, certainty })
    }

    /// Like [`Factorization::new`], but also checks the pairs multiply to `n`.
    pub fn of_known(n: &Natural, pairs: Vec<(Natural, u32)>) -> Result<Self, ArithError> {
        let f = Self::new(pairs)?;
        if f.value() != *n {
            return Err(ArithError::InvalidFactorization(format!(
                "factors multiply to {}, not {n}",
                f.value()
            )));
        }
        Ok(f)
    }

    pub fn factors(&self) -> &[(Natural, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = &Natural> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn certainty(&self) -> Certainty {
        self.certainty
    }

    /// The integer this factorization describes.
    pub fn value(&self) -> Natural {
        self.factors
            .iter()
            .fold(Natural::one(), |acc, (p, e)| acc * p.pow(*e))
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Factorization of the product of two factored numbers.
    pub fn mul(&self, other: &Factorization) -> Factorization {
        let mut pairs = self.factors.clone();
        pairs.extend(other.factors.iter().cloned());
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        let mut factors: Vec<(Natural, u32)> = Vec::new();
        for (p, e) in pairs {
            match factors.last_mut() {
                Some(last) if last.0 == p => last.1 += e,
                _ => factors.push((p, e)),
            }
        }
        let certainty = match (self.certainty, other.certainty) {
            (Certainty::Proven, Certainty::Proven) => Certainty::Proven,
            (Certainty::Probable { rounds }, _) | (_, Certainty::Probable { rounds }) => {
                Certainty::Probable { rounds }
            }
        };
        Factorization { factors, certainty }
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Knobs for [`factorize_with`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorConfig {
    /// Trial division runs over all candidates up to this bound.
    pub trial_bound: u64,
    /// Total Pollard-rho iterations allowed across all cofactors.
    pub rho_iterations: u64,
    pub seed: u64,
    pub mr_rounds: u32,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig {
            trial_bound: 1 << 16,
            rho_iterations: 1 << 24,
            seed: 0x5eed,
            mr_rounds: DEFAULT_MR_ROUNDS,
        }
    }
}

/// Factorizes with [`FactorConfig::default`].
pub fn factorize(n: &Natural) -> Result<Factorization, ArithError> {
    factorize_with(n, &FactorConfig::default())
}

/// Trial division up to the configured bound, then Brent's variant of
/// Pollard rho on whatever composite cofactors remain.
pub fn factorize_with(n: &Natural, config: &FactorConfig) -> Result<Factorization, ArithError> {
    if *n < nat(2) {
        return Err(ArithError::InvalidArgument(format!(
            "cannot factor {n}: need n >= 2"
        )));
    }
    let mut pairs: Vec<(Natural, u32)> = Vec::new();
    let mut rest = n.clone();

    let mut strip = |rest: &mut Natural, d: u64| {
        let dn = nat(d);
        let mut e = 0;
        while (&*rest % &dn).is_zero() {
            *rest /= &dn;
            e += 1;
        }
        if e > 0 {
            pairs.push((dn, e));
        }
    };
    strip(&mut rest, 2);
    let mut d = 3u64;
    while d <= config.trial_bound {
        if nat(d) * nat(d) > rest {
            break;
        }
        strip(&mut rest, d);
        d += 2;
    }

    let mut certainty = Certainty::Proven;
    if !rest.is_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let mut budget = config.rho_iterations;
        let mut stack = vec![rest];
        while let Some(m) = stack.pop() {
            let small_enough = nat(config.trial_bound) * nat(config.trial_bound) >= m;
            let verdict = if small_enough {
                // Trial division already removed every factor below the bound.
                Primality::Prime
            } else {
                is_prime_with_rounds(&m, config.mr_rounds)
            };
            match verdict {
                Primality::Prime => pairs.push((m, 1)),
                Primality::ProbablePrime { rounds } => {
                    certainty = Certainty::Probable { rounds };
                    pairs.push((m, 1));
                }
                Primality::Composite => {
                    if let Some(root) = exact_square_root(&m) {
                        stack.push(root.clone());
                        stack.push(root);
                        continue;
                    }
                    match brent_rho(&m, &mut rng, &mut budget) {
                        Some(f) => {
                            let other = &m / &f;
                            stack.push(f);
                            stack.push(other);
                        }
                        None => {
                            return Err(ArithError::BudgetExceeded {
                                n: n.clone(),
                                cofactor: m,
                            })
                        }
                    }
                }
            }
        }
    }

    pairs.sort_by(|a, b| a.0.cmp(&b.0));
    let mut factors: Vec<(Natural, u32)> = Vec::new();
    for (p, e) in pairs {
        match factors.last_mut() {
            Some(last) if last.0 == p => last.1 += e,
            _ => factors.push((p, e)),
        }
    }
    Ok(Factorization { factors, certainty })
}

fn exact_square_root(m: &Natural) -> Option<Natural> {
    let r = m.sqrt();
    (&r * &r == *m).then_some(r)
}

/// Returns a nontrivial factor of the composite `n`, or `None` once the
/// iteration budget runs out.
fn brent_rho(n: &Natural, rng: &mut ChaCha8Rng, budget: &mut u64) -> Option<Natural> {
    if n.is_even() {
        return Some(nat(2));
    }
    let one = Natural::one();
    const BATCH: u64 = 128;
    while *budget > 0 {
        let c = rng.gen_biguint_range(&one, n);
        let mut y = rng.gen_biguint_range(&Natural::zero(), n);
        let f = |x: &Natural| (x * x + &c) % n;
        let mut r: u64 = 1;
        let mut q = Natural::one();
        let mut g = Natural::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                let steps = BATCH.min(r - k);
                for _ in 0..steps {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += steps;
                *budget = budget.saturating_sub(steps);
                if *budget == 0 && g.is_one() {
                    return None;
                }
            }
            r *= 2;
        }
        if g == *n {
            // Batched product collapsed; redo one step at a time.
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if g != *n {
            return Some(g);
        }
        // Unlucky parameters; try another polynomial.
    }
    None
}
