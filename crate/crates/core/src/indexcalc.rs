//! Index calculus in `(Z/p)*` and a demonstrator showing why it gives no
//! leverage on multi-base problems.
//!
//! Relations `alpha^k = prod p_i^{a_i}` become linear equations
//! `k = sum a_i log p_i (mod n)`. The system is solved modulo each prime
//! power of `n` (elimination mod q, then q-adic lifting) and recombined with
//! the non-coprime CRT.

use num_bigint::{BigInt, RandBigInt};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{factorize, is_prime, mod_inv, nat, order_dividing, signed_mod, Factorization, Natural};
use crate::congruence::{solve_system, CongruenceSystem};
use crate::solvers::{solve_dlp, DlpTask, SolveError};

/// Random exponents tried while collecting relations.
pub const COLLECTION_ATTEMPTS: u64 = 1 << 20;
/// Random shifts tried when looking for a smooth `beta * alpha^delta`.
pub const SMOOTHING_ATTEMPTS: u64 = 1 << 18;
/// Times the relation set is regrown after a rank-deficient solve.
pub const REGROW_ROUNDS: usize = 4;
pub const DEFAULT_SLACK: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndexCalcError {
    #[error("{0} is not prime")]
    NotPrime(Natural),
    #[error("smoothness bound must be at least 2")]
    BoundTooSmall,
    #[error("{0} is not a unit mod p")]
    NotAUnit(Natural),
    #[error("{value} is not in the subgroup generated by {base}")]
    OutsideSubgroup { value: Natural, base: Natural },
    #[error("factor base is empty")]
    EmptyFactorBase,
    #[error("found {found} of {needed} relations in {attempts} attempts")]
    RelationBudget { found: usize, needed: usize, attempts: u64 },
    #[error("no smooth shift of beta in {attempts} attempts")]
    SmoothingBudget { attempts: u64 },
    #[error("relations have deficient rank modulo {prime}")]
    RankDeficient { prime: Natural },
    #[error("solved logarithm of {prime} does not verify")]
    Unverified { prime: Natural },
    #[error("could not factor the group order")]
    Factorization,
    #[error(transparent)]
    Dlp(#[from] SolveError),
}

impl IndexCalcError {
    /// Resource exhaustion, as opposed to bad input.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            IndexCalcError::RelationBudget { .. }
                | IndexCalcError::SmoothingBudget { .. }
                | IndexCalcError::RankDeficient { .. }
        )
    }
}

type Result<T> = std::result::Result<T, IndexCalcError>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorBase {
    #[serde(with = "crate::arith::dec::vec")]
    pub primes: Vec<Natural>,
    #[serde(with = "crate::arith::dec")]
    pub bound: Natural,
}

impl FactorBase {
    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// Keeps the primes lying in the order-`n` subgroup of `(Z/p)*`.
    pub fn restrict_to_subgroup(&self, p: &Natural, n: &Natural) -> FactorBase {
        FactorBase {
            primes: self
                .primes
                .iter()
                .filter(|q| q.modpow(n, p).is_one())
                .cloned()
                .collect(),
            bound: self.bound.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    #[serde(with = "crate::arith::dec")]
    pub k: Natural,
    pub exponents: Vec<u32>,
}

impl Relation {
    pub fn holds(&self, p: &Natural, alpha: &Natural, fb: &FactorBase) -> bool {
        alpha.modpow(&self.k, p) == product(&fb.primes, &self.exponents, p)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationMatrix {
    #[serde(with = "crate::arith::dec")]
    pub p: Natural,
    #[serde(with = "crate::arith::dec")]
    pub alpha: Natural,
    /// Order of alpha.
    #[serde(with = "crate::arith::dec")]
    pub n: Natural,
    pub factor_base: FactorBase,
    pub rows: Vec<Relation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Smoothness {
    Smooth(Vec<u32>),
    NotSmooth { cofactor: Natural },
}

fn product(primes: &[Natural], exponents: &[u32], p: &Natural) -> Natural {
    primes
        .iter()
        .zip(exponents)
        .fold(Natural::one() % p, |acc, (q, e)| acc * q.modpow(&Natural::from(*e), p) % p)
}

/// All primes `q <= bound` with `q < p`.
pub fn build_factor_base(p: &Natural, bound: &Natural) -> Result<FactorBase> {
    if *bound < nat(2) {
        return Err(IndexCalcError::BoundTooSmall);
    }
    if !is_prime(p) || *p < nat(2) {
        return Err(IndexCalcError::NotPrime(p.clone()));
    }
    let limit = bound.min(&(p - 1u32)).to_u64().unwrap_or(u64::MAX);
    let limit = usize::try_from(limit).expect("factor base bound fits in memory");
    let mut sieve = vec![true; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if sieve[i] {
            primes.push(nat(i as u64));
            for j in (i * i..=limit).step_by(i) {
                sieve[j] = false;
            }
        }
    }
    Ok(FactorBase {
        primes,
        bound: bound.clone(),
    })
}

/// Trial division of `x` over the factor base.
pub fn try_smooth(x: &Natural, fb: &FactorBase) -> Smoothness {
    assert!(!x.is_zero(), "smoothness of zero is undefined");
    let mut rest = x.clone();
    let mut exponents = vec![0u32; fb.len()];
    for (e, q) in exponents.iter_mut().zip(&fb.primes) {
        loop {
            let (quot, rem) = rest.div_rem(q);
            if !rem.is_zero() {
                break;
            }
            rest = quot;
            *e += 1;
        }
    }
    if rest.is_one() {
        Smoothness::Smooth(exponents)
    } else {
        Smoothness::NotSmooth { cofactor: rest }
    }
}

fn order_of(p: &Natural, alpha: &Natural) -> Result<(Natural, Factorization)> {
    let alpha = alpha % p;
    if alpha.is_zero() {
        return Err(IndexCalcError::NotAUnit(alpha));
    }
    let group = factorize(&(p - 1u32)).map_err(|_| IndexCalcError::Factorization)?;
    let n = order_dividing(&alpha, p, &group);
    let nf = factorize(&n).map_err(|_| IndexCalcError::Factorization)?;
    Ok((n, nf))
}

/// At least `fb.len() + slack` distinct relations with random `k < n`,
/// sorted by `k`. A subgroup too small to supply that many yields all the
/// relations it has, provided there are at least `fb.len()`. Every
/// factor-base prime must lie in `<alpha>`.
pub fn collect_relations(
    p: &Natural,
    alpha: &Natural,
    fb: &FactorBase,
    slack: usize,
    seed: u64,
) -> Result<RelationMatrix> {
    if !is_prime(p) {
        return Err(IndexCalcError::NotPrime(p.clone()));
    }
    if fb.is_empty() {
        return Err(IndexCalcError::EmptyFactorBase);
    }
    let alpha = alpha % p;
    let (n, _) = order_of(p, &alpha)?;
    if let Some(q) = fb.primes.iter().find(|q| !q.modpow(&n, p).is_one()) {
        return Err(IndexCalcError::OutsideSubgroup {
            value: q.clone(),
            base: alpha,
        });
    }
    let needed = fb.len() + slack;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows: std::collections::BTreeMap<Natural, Vec<u32>> = Default::default();
    let mut attempts = 0;
    // Past this many draws every k < n has almost surely been seen.
    let saturation = n.to_u64().map_or(u64::MAX, |n| n.saturating_mul(32));
    while rows.len() < needed {
        if attempts >= saturation && rows.len() >= fb.len() {
            break;
        }
        if attempts == COLLECTION_ATTEMPTS || attempts >= saturation {
            return Err(IndexCalcError::RelationBudget {
                found: rows.len(),
                needed,
                attempts,
            });
        }
        attempts += 1;
        let k = rng.gen_biguint_below(&n);
        if let Smoothness::Smooth(exponents) = try_smooth(&alpha.modpow(&k, p), fb) {
            rows.entry(k).or_insert(exponents);
        }
    }
    let rows = rows
        .into_iter()
        .map(|(k, exponents)| Relation { k, exponents })
        .collect::<Vec<_>>();
    debug_assert!(rows.iter().all(|r| r.holds(p, &alpha, fb)));
    Ok(RelationMatrix {
        p: p.clone(),
        alpha,
        n,
        factor_base: fb.clone(),
        rows,
    })
}

/// `log_alpha p_i (mod n)` for every factor-base prime, each re-verified.
pub fn solve_base_logs(mat: &RelationMatrix) -> Result<Vec<Natural>> {
    let nf = factorize(&mat.n).map_err(|_| IndexCalcError::Factorization)?;
    let m = mat.factor_base.len();
    let coeffs: Vec<Vec<Natural>> = mat
        .rows
        .iter()
        .map(|r| r.exponents.iter().map(|e| Natural::from(*e)).collect())
        .collect();
    let rhs: Vec<Natural> = mat.rows.iter().map(|r| r.k.clone()).collect();

    let mut per_prime_power = Vec::new();
    for (q, e) in nf.factors() {
        per_prime_power.push((solve_prime_power(&coeffs, &rhs, q, *e)?, q.pow(*e)));
    }
    let mut logs = Vec::with_capacity(m);
    for i in 0..m {
        let system = CongruenceSystem::from_pairs(
            per_prime_power.iter().map(|(x, modulus)| (x[i].clone(), modulus.clone())),
        );
        let log = match system {
            Ok(system) => solve_system(&system).expect("prime powers are coprime").residue,
            // n = 1: everything is trivial.
            Err(_) => Natural::zero(),
        };
        logs.push(log % &mat.n);
    }
    for (q, log) in mat.factor_base.primes.iter().zip(&logs) {
        if mat.alpha.modpow(log, &mat.p) != q % &mat.p {
            return Err(IndexCalcError::Unverified { prime: q.clone() });
        }
    }
    Ok(logs)
}

/// Unique solution of `A x = b (mod q^e)`, lifting one q-adic digit at a
/// time from the solution mod q.
fn solve_prime_power(a: &[Vec<Natural>], b: &[Natural], q: &Natural, e: u32) -> Result<Vec<Natural>> {
    let cols = a.first().map_or(0, Vec::len);
    let modulus = q.pow(e);
    let mut x = vec![Natural::zero(); cols];
    let mut scale = Natural::one();
    for _ in 0..e {
        // Residual (b - A x) / q^j, exact modulo q^(e - j).
        let residual: Vec<Natural> = a
            .iter()
            .zip(b)
            .map(|(row, bi)| {
                let ax: Natural = row.iter().zip(&x).map(|(c, xi)| c * xi).sum();
                let diff = signed_mod(&(BigInt::from(bi.clone()) - BigInt::from(ax)), &modulus);
                debug_assert!((&diff % &scale).is_zero());
                (diff / &scale) % q
            })
            .collect();
        let digit = solve_mod_prime(a, &residual, q)?;
        for (xi, di) in x.iter_mut().zip(digit) {
            *xi += di * &scale;
        }
        scale *= q;
    }
    Ok(x.into_iter().map(|xi| xi % &modulus).collect())
}

/// Gauss-Jordan elimination over `Z/q`. Requires full column rank.
fn solve_mod_prime(a: &[Vec<Natural>], b: &[Natural], q: &Natural) -> Result<Vec<Natural>> {
    let cols = a.first().map_or(0, Vec::len);
    let mut rows: Vec<Vec<Natural>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| row.iter().chain(std::iter::once(bi)).map(|v| v % q).collect())
        .collect();
    let mut pivot_row = 0;
    for col in 0..cols {
        let Some(found) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            return Err(IndexCalcError::RankDeficient { prime: q.clone() });
        };
        rows.swap(pivot_row, found);
        let inv = mod_inv(&rows[pivot_row][col], q).expect("nonzero mod a prime");
        for v in rows[pivot_row].iter_mut() {
            *v = &*v * &inv % q;
        }
        let pivot = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == pivot_row || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot) {
                *v = (&*v + q * q - &factor * pv % q) % q;
            }
        }
        pivot_row += 1;
    }
    Ok(rows[..cols].iter().map(|row| row[cols].clone()).collect())
}

/// Rank of a matrix over `Z/q`.
pub fn rank_mod_prime(matrix: &[Vec<Natural>], q: &Natural) -> usize {
    let mut rows: Vec<Vec<Natural>> = matrix.iter().map(|r| r.iter().map(|v| v % q).collect()).collect();
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(found) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, found);
        let inv = mod_inv(&rows[rank][col], q).expect("nonzero mod a prime");
        let pivot: Vec<Natural> = rows[rank].iter().map(|v| v * &inv % q).collect();
        for row in rows.iter_mut().skip(rank + 1) {
            let factor = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot) {
                *v = (&*v + q * q - &factor * pv % q) % q;
            }
        }
        rank += 1;
    }
    rank
}

/// Outcome of [`dlp_via_index_calculus`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexCalcSolution {
    #[serde(with = "crate::arith::dec")]
    pub log: Natural,
    #[serde(with = "crate::arith::dec")]
    pub order: Natural,
    pub factor_base: FactorBase,
    pub relations: usize,
    #[serde(with = "crate::arith::dec::vec")]
    pub base_logs: Vec<Natural>,
    /// The shift that made `beta * alpha^delta` smooth.
    #[serde(with = "crate::arith::dec")]
    pub delta: Natural,
}

/// `x` with `alpha^x = beta (mod p)`, `0 <= x < ord(alpha)`.
pub fn dlp_via_index_calculus(
    p: &Natural,
    alpha: &Natural,
    beta: &Natural,
    bound: &Natural,
    seed: u64,
) -> Result<IndexCalcSolution> {
    let full = build_factor_base(p, bound)?;
    let alpha = alpha % p;
    let beta = beta % p;
    if beta.is_zero() {
        return Err(IndexCalcError::NotAUnit(beta));
    }
    let (n, _) = order_of(p, &alpha)?;
    if !beta.modpow(&n, p).is_one() {
        return Err(IndexCalcError::OutsideSubgroup { value: beta, base: alpha });
    }
    let fb = full.restrict_to_subgroup(p, &n);
    if fb.is_empty() {
        return Err(IndexCalcError::EmptyFactorBase);
    }

    let mut slack = DEFAULT_SLACK;
    let mut round = 0;
    let (mat, logs) = loop {
        let mat = collect_relations(p, &alpha, &fb, slack, seed.wrapping_add(round as u64))?;
        match solve_base_logs(&mat) {
            Ok(logs) => break (mat, logs),
            Err(IndexCalcError::RankDeficient { .. }) if round < REGROW_ROUNDS => {
                round += 1;
                slack *= 2;
            }
            Err(e) => return Err(e),
        }
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_5eed);
    for _ in 0..SMOOTHING_ATTEMPTS {
        let delta = rng.gen_biguint_below(&n);
        let shifted = &beta * alpha.modpow(&delta, p) % p;
        if let Smoothness::Smooth(b) = try_smooth(&shifted, &fb) {
            let sum: Natural = b.iter().zip(&logs).map(|(bi, li)| li * Natural::from(*bi)).sum();
            let log = signed_mod(&(BigInt::from(sum) - BigInt::from(delta.clone())), &n);
            debug_assert_eq!(alpha.modpow(&log, p), beta);
            return Ok(IndexCalcSolution {
                log,
                order: n,
                factor_base: fb,
                relations: mat.rows.len(),
                base_logs: logs,
                delta,
            });
        }
    }
    Err(IndexCalcError::SmoothingBudget {
        attempts: SMOOTHING_ATTEMPTS,
    })
}

/// Random tasks `alpha^x = beta (mod p)` with `p` a prime in
/// `[min_p, max_p)`, `alpha` a primitive root and `x` uniform.
pub fn random_tasks(count: usize, min_p: u64, max_p: u64, seed: u64) -> Vec<DlpTask> {
    use rand::Rng;
    assert!(5 <= min_p && min_p < max_p, "prime range must contain odd primes");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tasks = Vec::with_capacity(count);
    while tasks.len() < count {
        let p = nat(rng.gen_range(min_p..max_p));
        if !is_prime(&p) {
            continue;
        }
        let group = p.clone() - 1u32;
        let gf = factorize(&group).expect("small group orders factor");
        let alpha = loop {
            let a = rng.gen_biguint_range(&nat(2), &group);
            if gf.primes().all(|q| !a.modpow(&(&group / q), &p).is_one()) {
                break a;
            }
        };
        let x = rng.gen_biguint_below(&group);
        let beta = alpha.modpow(&x, &p);
        tasks.push(DlpTask::new(alpha, beta, p, group));
    }
    tasks
}

/// `rhs = sum coefficients_i * k_i (mod order)`: logarithms to base `alpha`
/// of `beta = prod g_i^{k_i}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogEquation {
    #[serde(with = "crate::arith::dec")]
    pub alpha: Natural,
    #[serde(with = "crate::arith::dec::vec")]
    pub coefficients: Vec<Natural>,
    #[serde(with = "crate::arith::dec")]
    pub rhs: Natural,
}

/// `equation(alpha) = factor * equation(other)` coefficient by coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Proportionality {
    #[serde(with = "crate::arith::dec")]
    pub alpha: Natural,
    #[serde(with = "crate::arith::dec")]
    pub other: Natural,
    /// `log_alpha other`.
    #[serde(with = "crate::arith::dec")]
    pub factor: Natural,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeRank {
    #[serde(with = "crate::arith::dec")]
    pub prime: Natural,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum RankReport {
    Proportional {
        #[serde(with = "crate::arith::dec")]
        order: Natural,
        equations: Vec<LogEquation>,
        /// The first base against each of the others.
        pairs: Vec<Proportionality>,
        /// Rank of the augmented system modulo each prime of the order.
        ranks: Vec<PrimeRank>,
        witness_satisfies: bool,
    },
    /// Bases of different orders yield equations over different moduli.
    OrderMismatch {
        #[serde(with = "crate::arith::dec::vec")]
        alphas: Vec<Natural>,
        #[serde(with = "crate::arith::dec::vec")]
        orders: Vec<Natural>,
    },
}

impl RankReport {
    /// Every pair proportional and rank at most one everywhere.
    pub fn is_rank_one(&self) -> bool {
        match self {
            RankReport::Proportional { pairs, ranks, .. } => {
                pairs.iter().all(|p| p.holds) && ranks.iter().all(|r| r.rank <= 1)
            }
            RankReport::OrderMismatch { .. } => false,
        }
    }
}

fn log_to(p: &Natural, base: &Natural, target: &Natural, order: &Natural) -> Result<Natural> {
    match solve_dlp(&DlpTask::new(base.clone(), target.clone(), p.clone(), order.clone())) {
        Ok(x) => Ok(x),
        Err(SolveError::NotInSubgroup) => Err(IndexCalcError::OutsideSubgroup {
            value: target % p,
            base: base.clone(),
        }),
        Err(e) => Err(e.into()),
    }
}

/// Writes `beta = prod g_i^{k_i}` as one linear equation per base and checks
/// that the equations are scalar multiples of each other.
pub fn mdlp_rank_demo(
    p: &Natural,
    alphas: &[Natural],
    gens: &[Natural],
    witness: &[Natural],
    beta: &Natural,
) -> Result<RankReport> {
    if !is_prime(p) || *p < nat(2) {
        return Err(IndexCalcError::NotPrime(p.clone()));
    }
    assert_eq!(gens.len(), witness.len(), "one exponent per generator");
    let alphas: Vec<Natural> = alphas.iter().map(|a| a % p).collect();
    let orders = alphas
        .iter()
        .map(|a| order_of(p, a).map(|(n, _)| n))
        .collect::<Result<Vec<_>>>()?;
    if orders.iter().any(|r| *r != orders[0]) {
        return Ok(RankReport::OrderMismatch { alphas, orders });
    }
    let r = orders[0].clone();

    let mut equations = Vec::with_capacity(alphas.len());
    for alpha in &alphas {
        let coefficients = gens
            .iter()
            .map(|g| log_to(p, alpha, g, &r))
            .collect::<Result<Vec<_>>>()?;
        let rhs = log_to(p, alpha, beta, &r)?;
        equations.push(LogEquation {
            alpha: alpha.clone(),
            coefficients,
            rhs,
        });
    }

    let first = &equations[0];
    let pairs = equations
        .iter()
        .skip(1)
        .map(|other| {
            let factor = log_to(p, &first.alpha, &other.alpha, &r)?;
            let scaled = |v: &Natural| &factor * v % &r;
            let holds = first
                .coefficients
                .iter()
                .zip(&other.coefficients)
                .all(|(c, c2)| *c == scaled(c2))
                && first.rhs == scaled(&other.rhs);
            Ok(Proportionality {
                alpha: first.alpha.clone(),
                other: other.alpha.clone(),
                factor,
                holds,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let matrix: Vec<Vec<Natural>> = equations
        .iter()
        .map(|eq| eq.coefficients.iter().chain(std::iter::once(&eq.rhs)).cloned().collect())
        .collect();
    let rf = factorize(&r).map_err(|_| IndexCalcError::Factorization)?;
    let ranks = rf
        .primes()
        .map(|q| PrimeRank {
            prime: q.clone(),
            rank: rank_mod_prime(&matrix, q),
        })
        .collect();

    let witness_satisfies = equations.iter().all(|eq| {
        let lhs: Natural = eq.coefficients.iter().zip(witness).map(|(c, k)| c * k).sum();
        lhs % &r == eq.rhs
    });

    Ok(RankReport::Proportional {
        order: r,
        equations,
        pairs,
        ranks,
        witness_satisfies,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(x: u64) -> Natural {
        nat(x)
    }

    fn brute_log(p: u64, alpha: u64, beta: u64) -> Option<u64> {
        let mut acc = 1u64;
        for x in 0..p {
            if acc == beta % p {
                return Some(x);
            }
            acc = acc * alpha % p;
        }
        None
    }

    #[test]
    fn factor_base_examples() {
        assert_eq!(build_factor_base(&n(107), &n(10)).unwrap().primes, vec![n(2), n(3), n(5), n(7)]);
        assert_eq!(build_factor_base(&n(107), &n(2)).unwrap().primes, vec![n(2)]);
        assert_eq!(build_factor_base(&n(107), &n(7)).unwrap().primes, vec![n(2), n(3), n(5), n(7)]);
        // primes at or above p are not units
        assert_eq!(build_factor_base(&n(7), &n(10)).unwrap().primes, vec![n(2), n(3), n(5)]);
        assert_eq!(build_factor_base(&n(107), &n(1)), Err(IndexCalcError::BoundTooSmall));
        assert_eq!(build_factor_base(&n(100), &n(7)), Err(IndexCalcError::NotPrime(n(100))));
    }

    #[test]
    fn smoothness_examples() {
        let fb7 = build_factor_base(&n(107), &n(7)).unwrap();
        let fb5 = build_factor_base(&n(107), &n(5)).unwrap();
        assert_eq!(try_smooth(&n(84), &fb7), Smoothness::Smooth(vec![2, 1, 0, 1]));
        assert_eq!(try_smooth(&n(44), &fb5), Smoothness::NotSmooth { cofactor: n(11) });
        assert_eq!(try_smooth(&n(1), &fb7), Smoothness::Smooth(vec![0; 4]));
    }

    #[test]
    fn relations_verify_and_are_deterministic() {
        let fb = build_factor_base(&n(107), &n(7)).unwrap();
        let mat = collect_relations(&n(107), &n(2), &fb, 3, 42).unwrap();
        assert!(mat.rows.len() >= 7);
        assert_eq!(mat.n, n(106));
        for row in &mat.rows {
            assert!(row.holds(&n(107), &n(2), &fb));
            let direct = n(2).modpow(&row.k, &n(107));
            assert_eq!(try_smooth(&direct, &fb), Smoothness::Smooth(row.exponents.clone()));
        }
        assert!(mat.rows.windows(2).all(|w| w[0].k < w[1].k));
        assert_eq!(mat, collect_relations(&n(107), &n(2), &fb, 3, 42).unwrap());
        let zero = Relation { k: n(0), exponents: vec![0; 4] };
        assert!(zero.holds(&n(107), &n(2), &fb));
    }

    #[test]
    fn base_logs_match_brute_force() {
        let fb = build_factor_base(&n(107), &n(7)).unwrap();
        let mat = collect_relations(&n(107), &n(2), &fb, DEFAULT_SLACK, 7).unwrap();
        let logs = solve_base_logs(&mat).unwrap();
        assert_eq!(logs[0], n(1));
        for (q, l) in fb.primes.iter().zip(&logs) {
            let q = q.to_u64().unwrap();
            assert_eq!(l.to_u64(), brute_log(107, 2, q));
        }
    }

    #[test]
    fn prime_power_orders_are_lifted() {
        // p = 163: p - 1 = 2 * 3^4, so the log system is solved mod 81.
        let p = n(163);
        let alpha = n(2);
        let fb = build_factor_base(&p, &n(11)).unwrap().restrict_to_subgroup(&p, &n(162));
        let mat = collect_relations(&p, &alpha, &fb, DEFAULT_SLACK, 3).unwrap();
        assert_eq!(mat.n, n(162));
        let logs = solve_base_logs(&mat).unwrap();
        for (q, l) in fb.primes.iter().zip(&logs) {
            assert_eq!(l.to_u64(), brute_log(163, 2, q.to_u64().unwrap()));
        }
    }

    #[test]
    fn constructed_targets() {
        let sol = dlp_via_index_calculus(&n(107), &n(2), &n(61), &n(7), 1).unwrap();
        assert_eq!(sol.log, n(10));
        assert_eq!(dlp_via_index_calculus(&n(107), &n(2), &n(2), &n(7), 1).unwrap().log, n(1));
        assert_eq!(dlp_via_index_calculus(&n(107), &n(2), &n(1), &n(7), 1).unwrap().log, n(0));
    }

    #[test]
    fn subgroup_bases() {
        // 4 has order 53 mod 107; 3 is a non-residue, outside <4>.
        let sol = dlp_via_index_calculus(&n(107), &n(4), &n(4).modpow(&n(20), &n(107)), &n(20), 5).unwrap();
        assert_eq!(sol.log, n(20));
        assert!(matches!(
            dlp_via_index_calculus(&n(107), &n(4), &n(2), &n(20), 5),
            Err(IndexCalcError::OutsideSubgroup { .. })
        ));
    }

    #[test]
    fn agrees_with_brute_force_on_small_primes() {
        let mut checked = 0;
        for (p, alpha) in [(101u64, 2u64), (1009, 11), (2003, 5), (10007, 5)] {
            for (i, beta) in [3u64, 17, 50, 99].iter().enumerate() {
                let got = dlp_via_index_calculus(&n(p), &n(alpha), &n(*beta), &n(30), i as u64);
                if let Ok(sol) = got {
                    assert_eq!(sol.log.to_u64(), brute_log(p, alpha, *beta), "p={p} beta={beta}");
                    checked += 1;
                }
            }
        }
        assert!(checked >= 14);
    }

    #[test]
    fn rank_of_small_matrices() {
        let m = |rows: &[&[u64]]| rows.iter().map(|r| r.iter().map(|v| n(*v)).collect()).collect::<Vec<Vec<_>>>();
        assert_eq!(rank_mod_prime(&m(&[&[1, 2], &[2, 4]]), &n(7)), 1);
        assert_eq!(rank_mod_prime(&m(&[&[1, 2], &[2, 5]]), &n(7)), 2);
        assert_eq!(rank_mod_prime(&m(&[&[1, 3], &[1, 5]]), &n(2)), 1);
        assert_eq!(rank_mod_prime(&m(&[&[1, 3], &[1, 5]]), &n(7)), 2);
        assert_eq!(rank_mod_prime(&m(&[&[0, 0], &[0, 0]]), &n(3)), 0);
    }

    /// Rank at least 2 iff some 2x2 minor is nonzero, rank at least 1 iff
    /// some entry is nonzero.
    fn rank_by_minors(matrix: &[Vec<Natural>], q: u64) -> usize {
        let v: Vec<Vec<i128>> = matrix
            .iter()
            .map(|r| r.iter().map(|x| (x % q).to_i128().unwrap()).collect())
            .collect();
        let q = q as i128;
        let cols = v[0].len();
        let mut rank = 0;
        if v.iter().flatten().any(|x| *x != 0) {
            rank = 1;
        }
        for a in 0..v.len() {
            for b in a + 1..v.len() {
                for i in 0..cols {
                    for j in i + 1..cols {
                        if (v[a][i] * v[b][j] - v[a][j] * v[b][i]).rem_euclid(q) != 0 {
                            rank = 2;
                        }
                    }
                }
            }
        }
        rank
    }

    #[test]
    fn rank_demo_proportional_with_power_base() {
        let p = n(107);
        let alphas = [n(2), n(2).modpow(&n(5), &p)];
        let gens = [n(3), n(5)];
        let witness = [n(17), n(40)];
        let beta = n(3).modpow(&n(17), &p) * n(5).modpow(&n(40), &p) % &p;
        let report = mdlp_rank_demo(&p, &alphas, &gens, &witness, &beta).unwrap();
        let RankReport::Proportional { order, equations, pairs, ranks, witness_satisfies } = &report else {
            panic!("orders match");
        };
        assert_eq!(*order, n(106));
        assert_eq!(pairs[0].factor, n(5));
        assert!(pairs[0].holds);
        assert!(*witness_satisfies);
        let matrix: Vec<Vec<Natural>> = equations
            .iter()
            .map(|e| e.coefficients.iter().chain([&e.rhs]).cloned().collect())
            .collect();
        for pr in ranks {
            assert_eq!(pr.rank, 1);
            assert_eq!(pr.rank, rank_by_minors(&matrix, pr.prime.to_u64().unwrap()));
        }
        assert!(report.is_rank_one());
    }

    #[test]
    fn rank_demo_same_base_has_factor_one() {
        let p = n(107);
        let report = mdlp_rank_demo(&p, &[n(2), n(2)], &[n(3)], &[n(4)], &n(81)).unwrap();
        let RankReport::Proportional { pairs, .. } = report else { panic!() };
        assert_eq!(pairs[0].factor, n(1));
    }

    #[test]
    fn rank_demo_order_mismatch() {
        // 2 is primitive mod 107, 4 has order 53.
        let report = mdlp_rank_demo(&n(107), &[n(2), n(4)], &[n(4)], &[n(1)], &n(4)).unwrap();
        assert_eq!(
            report,
            RankReport::OrderMismatch { alphas: vec![n(2), n(4)], orders: vec![n(106), n(53)] }
        );
    }
}
