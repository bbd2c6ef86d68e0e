use num_bigint::RandBigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{nat, Natural};

/// Miller-Rabin rounds used above 2^64 unless the caller asks otherwise.
pub const DEFAULT_MR_ROUNDS: u32 = 32;

// Deterministic for every n < 3.3 * 10^24, which covers all of u64.
const FIXED_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Primality {
    Composite,
    /// Proven prime (deterministic witness set).
    Prime,
    /// Passed the given number of random Miller-Rabin rounds.
    ProbablePrime { rounds: u32 },
}

impl Primality {
    pub fn is_prime(self) -> bool {
        !matches!(self, Primality::Composite)
    }
}

pub fn is_prime(n: &Natural) -> bool {
    is_prime_with_rounds(n, DEFAULT_MR_ROUNDS).is_prime()
}

pub fn is_prime_with_rounds(n: &Natural, rounds: u32) -> Primality {
    if *n < nat(2) {
        return Primality::Composite;
    }
    for &p in &FIXED_WITNESSES {
        let p = nat(p);
        if *n == p {
            return Primality::Prime;
        }
        if (n % &p).is_zero() {
            return Primality::Composite;
        }
    }
    let n_minus_one = n - 1u32;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;

    let witness_says_composite = |a: &Natural| -> bool {
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_one {
            return false;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                return false;
            }
        }
        true
    };

    if n.to_u64().is_some() {
        let composite = FIXED_WITNESSES
            .iter()
            .any(|&a| witness_says_composite(&nat(a)));
        return if composite {
            Primality::Composite
        } else {
            Primality::Prime
        };
    }

    // Seed from n itself so the verdict is reproducible.
    let seed = n.iter_u64_digits().fold(0x9e37_79b9_7f4a_7c15u64, |acc, w| {
        acc.rotate_left(17) ^ w
    });
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let low = nat(2);
    let high = n - 1u32;
    for _ in 0..rounds {
        let a = rng.gen_biguint_range(&low, &high);
        if witness_says_composite(&a) {
            return Primality::Composite;
        }
    }
    if n.is_even() {
        return Primality::Composite;
    }
    Primality::ProbablePrime { rounds }
}
