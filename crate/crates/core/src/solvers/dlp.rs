//! Single discrete logarithms: Pohlig-Hellman over the factorization of the
//! base's order, with baby-step giant-step for each prime digit.

use std::collections::HashMap;

use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{SolveError, SolverConfig};
use crate::arith::{factorize, mod_inv, nat, Factorization, Natural};
use crate::congruence::{solve_system, CongruenceSystem};

/// Find `x` with `base^x = target (mod modulus)`, where `base^order = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DlpTask {
    #[serde(with = "crate::arith::dec")]
    pub base: Natural,
    #[serde(with = "crate::arith::dec")]
    pub target: Natural,
    #[serde(with = "crate::arith::dec")]
    pub modulus: Natural,
    #[serde(with = "crate::arith::dec")]
    pub order: Natural,
}

impl DlpTask {
    pub fn new(base: Natural, target: Natural, modulus: Natural, order: Natural) -> Self {
        DlpTask {
            base,
            target,
            modulus,
            order,
        }
    }
}

/// Solves with the default configuration. The answer lies in
/// `[0, ord(base))`, which is within `[0, order)`.
pub fn solve_dlp(task: &DlpTask) -> Result<Natural, SolveError> {
    if task.modulus < nat(2) || task.order.is_zero() {
        return Err(SolveError::InvalidTask("modulus must be at least 2 and order positive".into()));
    }
    let order_factors = factorize(&task.order).map_err(|_| SolveError::FactorizationUnavailable)?;
    solve_dlp_with(task, &order_factors, &SolverConfig::default()).map(|(x, _)| x)
}

/// Like [`solve_dlp`] with a known factorization of `task.order`. Returns
/// the logarithm and the number of group operations spent.
pub fn solve_dlp_with(
    task: &DlpTask,
    order_factors: &Factorization,
    config: &SolverConfig,
) -> Result<(Natural, u64), SolveError> {
    let n = &task.modulus;
    if *n < nat(2) {
        return Err(SolveError::InvalidTask(format!("modulus {n} < 2")));
    }
    if task.order.is_zero() || order_factors.value() != task.order {
        return Err(SolveError::InvalidTask(
            "order factorization does not match the order".into(),
        ));
    }
    let base = &task.base % n;
    let target = &task.target % n;
    if !base.modpow(&task.order, n).is_one() {
        return Err(SolveError::InvalidTask(format!(
            "base^{} != 1 mod {n}",
            task.order
        )));
    }

    // Exact order of the base, with its factorization.
    let mut exact = task.order.clone();
    let mut exact_factors = Vec::new();
    for (q, e) in order_factors.factors() {
        let mut kept = *e;
        while kept > 0 {
            let candidate = &exact / q;
            if base.modpow(&candidate, n).is_one() {
                exact = candidate;
                kept -= 1;
            } else {
                break;
            }
        }
        if kept > 0 {
            exact_factors.push((q.clone(), kept));
        }
    }
    let mut work = 0u64;
    if !target.modpow(&exact, n).is_one() {
        return Err(SolveError::NotInSubgroup);
    }
    if exact.is_one() {
        // target^1 = 1 was just checked
        return Ok((Natural::zero(), 1));
    }

    let mut congruences = Vec::with_capacity(exact_factors.len());
    for (q, e) in &exact_factors {
        let qe = q.pow(*e);
        let cofactor = &exact / &qe;
        let gq = base.modpow(&cofactor, n);
        let hq = target.modpow(&cofactor, n);
        let gq_inv = mod_inv(&gq, n).map_err(|_| SolveError::InvalidTask("base is not a unit".into()))?;
        let gamma = gq.modpow(&q.pow(e - 1), n);
        let mut x = Natural::zero();
        let mut q_k = Natural::one();
        for k in 0..*e {
            let shifted = (gq_inv.modpow(&x, n) * &hq) % n;
            let hk = shifted.modpow(&q.pow(e - 1 - k), n);
            let d = bsgs(&gamma, &hk, q, n, config, &mut work)?.ok_or(SolveError::NotInSubgroup)?;
            x += d * &q_k;
            q_k *= q;
        }
        congruences.push((x, qe));
    }
    let sys = CongruenceSystem::from_pairs(congruences).expect("prime-power moduli are positive");
    let x = solve_system(&sys)
        .expect("coprime moduli always combine")
        .residue;
    if base.modpow(&x, n) != target {
        return Err(SolveError::NotInSubgroup);
    }
    Ok((x, work))
}

/// Baby-step giant-step for `gamma^d = h` where `gamma` has prime order `q`.
fn bsgs(
    gamma: &Natural,
    h: &Natural,
    q: &Natural,
    n: &Natural,
    config: &SolverConfig,
    work: &mut u64,
) -> Result<Option<Natural>, SolveError> {
    if h.is_one() {
        return Ok(Some(Natural::zero()));
    }
    let root = q.sqrt();
    let m = if &root * &root == *q { root } else { root + 1u32 };
    let steps = m
        .to_u64()
        .filter(|s| *s <= config.bsgs_max_baby)
        .ok_or_else(|| SolveError::BudgetExceeded {
            what: "baby-step table".into(),
            needed: m.clone(),
            budget: config.bsgs_max_baby,
        })?;
    let mut table: HashMap<Natural, u64> = HashMap::with_capacity(steps as usize);
    let mut x = Natural::one();
    for j in 0..steps {
        table.entry(x.clone()).or_insert(j);
        x = (x * gamma) % n;
    }
    let giant = mod_inv(&gamma.modpow(&nat(steps), n), n)
        .map_err(|_| SolveError::InvalidTask("base is not a unit".into()))?;
    let mut y = h.clone();
    *work += steps;
    for i in 0..steps {
        *work += 1;
        if let Some(&j) = table.get(&y) {
            let d = nat(i) * nat(steps) + nat(j);
            if d < *q {
                return Ok(Some(d));
            }
        }
        y = (y * &giant) % n;
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn task(base: u64, target: u64, modulus: u64, order: u64) -> DlpTask {
        DlpTask::new(nat(base), nat(target), nat(modulus), nat(order))
    }

    #[test]
    fn examples() {
        assert_eq!(solve_dlp(&task(2, 23, 35, 12)).unwrap(), nat(7));
        assert_eq!(solve_dlp(&task(13, 13, 35, 4)).unwrap(), nat(1));
        assert_eq!(solve_dlp(&task(13, 19, 35, 4)), Err(SolveError::NotInSubgroup));
        // order 12 is a multiple of ord(13) = 4
        assert_eq!(solve_dlp(&task(13, 27, 35, 12)).unwrap(), nat(3));
    }

    #[test]
    fn invalid_tasks() {
        assert!(matches!(solve_dlp(&task(2, 3, 35, 5)), Err(SolveError::InvalidTask(_))));
        assert!(matches!(solve_dlp(&task(2, 3, 1, 1)), Err(SolveError::InvalidTask(_))));
    }

    #[test]
    fn large_prime_order() {
        // p = 1_000_003, 2 has order p - 1 = 2 * 3 * 166_667
        let p = 1_000_003u64;
        let x = 777_777u64;
        let target = nat(2).modpow(&nat(x), &nat(p));
        let found = solve_dlp(&DlpTask::new(nat(2), target.clone(), nat(p), nat(p - 1))).unwrap();
        assert_eq!(nat(2).modpow(&found, &nat(p)), target);
    }

    #[test]
    fn agrees_with_naive_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut checked = 0;
        while checked < 1000 {
            let n = rng.gen_range(3u64..20_000);
            let base = rng.gen_range(2..n);
            if num_integer::gcd(base, n) != 1 {
                continue;
            }
            // naive order and logarithm table
            let mut powers = vec![1u64 % n];
            let mut x = base % n;
            while x != 1 {
                powers.push(x);
                x = x * base % n;
            }
            let order = powers.len() as u64;
            if order > 10_000 {
                continue;
            }
            let target = if rng.gen_bool(0.8) {
                powers[rng.gen_range(0..powers.len())]
            } else {
                rng.gen_range(1..n)
            };
            let naive = powers.iter().position(|&p| p == target);
            let got = solve_dlp(&task(base, target, n, order));
            match naive {
                Some(x) => assert_eq!(got.unwrap(), nat(x as u64), "{base}^x = {target} mod {n}"),
                None => assert_eq!(got, Err(SolveError::NotInSubgroup)),
            }
            checked += 1;
        }
    }
}
