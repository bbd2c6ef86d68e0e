//! Exact modular arithmetic over arbitrary-precision naturals.
//!
//! Everything here is a pure function over immutable values. The heavy
//! lifting (bignum multiplication and reduction) is delegated to
//! [`num_bigint::BigUint`]; factorization, primality and order computation
//! are implemented on top of it.

pub mod dec;
mod factor;
mod modulus;
mod prime;

pub use factor::{factorize, factorize_with, Certainty, FactorConfig, Factorization};
pub use modulus::{carmichael_of, euler_of, multiplicative_order, order_dividing, Modulus};
pub use prime::{is_prime, is_prime_with_rounds, Primality, DEFAULT_MR_ROUNDS};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

/// Arbitrary-precision nonnegative integer. Every N, g_i, beta and exponent
/// in the crate is one of these.
pub type Natural = BigUint;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("invalid modulus {0}: must be at least 2")]
    InvalidModulus(Natural),
    #[error("{value} is not invertible modulo {modulus} (gcd = {gcd})")]
    NotInvertible {
        value: Natural,
        modulus: Natural,
        gcd: Natural,
    },
    #[error("{value} is not a unit modulo {modulus}")]
    NotAUnit { value: Natural, modulus: Natural },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("factorization budget exceeded while factoring {n} (unfactored cofactor {cofactor})")]
    BudgetExceeded { n: Natural, cofactor: Natural },
    #[error("invalid factorization: {0}")]
    InvalidFactorization(String),
}

/// Shorthand for `BigUint::from(x)` in literals.
pub fn nat(x: u64) -> Natural {
    Natural::from(x)
}

/// `base^exp mod m`, in `[0, m)`.
pub fn mod_pow(base: &Natural, exp: &Natural, m: &Natural) -> Result<Natural, ArithError> {
    if *m < nat(2) {
        return Err(ArithError::InvalidModulus(m.clone()));
    }
    Ok(base.modpow(exp, m))
}

/// Inverse of `a` modulo `m`, in `[1, m)`.
pub fn mod_inv(a: &Natural, m: &Natural) -> Result<Natural, ArithError> {
    if *m < nat(2) {
        return Err(ArithError::InvalidModulus(m.clone()));
    }
    let a_red = a % m;
    let ext = BigInt::from(a_red.clone()).extended_gcd(&BigInt::from(m.clone()));
    if !ext.gcd.is_one() {
        return Err(ArithError::NotInvertible {
            value: a.clone(),
            modulus: m.clone(),
            gcd: ext.gcd.magnitude().clone(),
        });
    }
    Ok(signed_mod(&ext.x, m))
}

/// Reduce a signed integer into `[0, m)`.
pub fn signed_mod(x: &BigInt, m: &Natural) -> Natural {
    let m_signed = BigInt::from(m.clone());
    let r = x.mod_floor(&m_signed);
    debug_assert!(r.sign() != Sign::Minus);
    r.magnitude().clone()
}

/// `(gcd(a, b), lcm(a, b))` for positive arguments.
pub fn gcd_lcm(a: &Natural, b: &Natural) -> Result<(Natural, Natural), ArithError> {
    if a.is_zero() || b.is_zero() {
        return Err(ArithError::InvalidArgument(
            "gcd_lcm requires positive arguments".into(),
        ));
    }
    let g = a.gcd(b);
    let l = (a / &g) * b;
    Ok((g, l))
}

/// lcm of a nonempty list of positive naturals.
pub fn lcm_all<'a, I>(values: I) -> Natural
where
    I: IntoIterator<Item = &'a Natural>,
{
    values
        .into_iter()
        .fold(Natural::one(), |acc, v| acc.lcm(v))
}

/// All positive divisors of the number described by `f`, ascending.
pub fn divisors(f: &Factorization) -> Vec<Natural> {
    let mut out = vec![Natural::one()];
    for (p, e) in f.factors() {
        let current = out.clone();
        let mut pk = Natural::one();
        for _ in 0..*e {
            pk *= p;
            out.extend(current.iter().map(|d| d * &pk));
        }
    }
    out.sort();
    out
}
