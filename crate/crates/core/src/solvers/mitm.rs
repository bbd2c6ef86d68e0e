//! Meet in the middle: tabulate the trailing generators, scan the leading
//! ones. The table keeps the smallest suffix per value, so the first prefix
//! that matches yields the lexicographically smallest solution, the same
//! one exhaustive search returns.

use std::collections::HashMap;

use num_traits::{One, ToPrimitive};

use super::{checked, solve_dlp_with, Detail, DlpTask, Method, SolveError, SolverConfig, Solution, Space};
use crate::arith::{mod_inv, nat, Natural};
use crate::instance::Instance;

pub fn solve_mitm(inst: &Instance, config: &SolverConfig) -> Result<Solution, SolveError> {
    mitm_space(&Space::of(inst), config)
}

pub(crate) fn mitm_space(space: &Space<'_>, config: &SolverConfig) -> Result<Solution, SolveError> {
    if space.t() == 1 {
        return single(space, config);
    }
    let radices: Vec<u64> = space
        .orders
        .iter()
        .map(|r| r.to_u64())
        .collect::<Option<_>>()
        .ok_or_else(|| too_big(space, config))?;
    let split = choose_split(&radices, config).ok_or_else(|| too_big(space, config))?;
    let (head, tail) = radices.split_at(split);
    let m = space.m;

    // Table pass. A suffix that alone hits beta pairs with the all-zero
    // prefix, which is the smallest one.
    let mut table: HashMap<Natural, u64> = HashMap::new();
    let mut work = 0u64;
    let mut hit = None;
    walk(tail, &space.gens[split..], Natural::one() % m.n(), m, |index, value| {
        work += 1;
        if *value == space.beta {
            hit = Some((0, index));
            return true;
        }
        table.entry(value.clone()).or_insert(index);
        false
    });

    if hit.is_none() {
        let inverses: Vec<Natural> = space.gens[..split]
            .iter()
            .map(|g| mod_inv(g, m.n()).expect("generators are units"))
            .collect();
        let mut first = true;
        walk(head, &inverses, space.beta.clone(), m, |index, value| {
            if std::mem::take(&mut first) {
                // The zero prefix was covered by the table pass.
                return false;
            }
            work += 1;
            if let Some(&suffix) = table.get(value) {
                hit = Some((index, suffix));
                return true;
            }
            false
        });
    }

    match hit {
        Some((a, b)) => {
            let mut exps = decode(head, a);
            exps.extend(decode(tail, b));
            checked(space, exps.into_iter().map(nat).collect(), Method::Mitm, work, Detail::None)
        }
        None => Err(SolveError::NotFound { method: Method::Mitm }),
    }
}

fn single(space: &Space<'_>, config: &SolverConfig) -> Result<Solution, SolveError> {
    let task = DlpTask::new(
        space.gens[0].clone(),
        space.beta.clone(),
        space.m.n().clone(),
        space.m.carmichael().clone(),
    );
    match solve_dlp_with(&task, space.m.carmichael_factorization(), config) {
        Ok((x, work)) => checked(space, vec![x], Method::Mitm, work, Detail::None),
        Err(SolveError::NotInSubgroup) => Err(SolveError::NotFound { method: Method::Mitm }),
        Err(e) => Err(e),
    }
}

fn too_big(space: &Space<'_>, config: &SolverConfig) -> SolveError {
    SolveError::BudgetExceeded {
        what: "meet-in-the-middle table".into(),
        needed: space.order_product(),
        budget: config.mitm_memory_cap,
    }
}

/// Split point minimizing table plus scan size, with the table under the
/// memory cap and the scan under the exhaustive budget.
fn choose_split(radices: &[u64], config: &SolverConfig) -> Option<usize> {
    let product = |rs: &[u64]| rs.iter().try_fold(1u64, |acc, r| acc.checked_mul(*r));
    (1..radices.len())
        .filter_map(|s| {
            let scan = product(&radices[..s])?;
            let table = product(&radices[s..])?;
            (table <= config.mitm_memory_cap && scan <= config.exhaustive_budget)
                .then_some((table.saturating_add(scan), s))
        })
        .min()
        .map(|(_, s)| s)
}

fn decode(radices: &[u64], mut index: u64) -> Vec<u64> {
    let mut digits = vec![0; radices.len()];
    for (d, r) in digits.iter_mut().zip(radices).rev() {
        *d = index % r;
        index /= r;
    }
    digits
}

/// Visits `start * prod bases_i^{d_i}` over all digit tuples in
/// lexicographic order until `visit` returns true.
fn walk(
    radices: &[u64],
    bases: &[Natural],
    start: Natural,
    m: &crate::arith::Modulus,
    mut visit: impl FnMut(u64, &Natural) -> bool,
) {
    let t = radices.len();
    let total: u64 = radices.iter().product();
    let mut digits = vec![0u64; t];
    let mut prefix = vec![start; t + 1];
    for index in 0..total {
        if visit(index, &prefix[t]) {
            return;
        }
        if index + 1 == total {
            return;
        }
        let mut pos = t - 1;
        while digits[pos] + 1 == radices[pos] {
            digits[pos] = 0;
            pos -= 1;
        }
        digits[pos] += 1;
        prefix[pos + 1] = m.mul(&prefix[pos + 1], &bases[pos]);
        for j in pos + 1..t {
            prefix[j + 1] = prefix[pos + 1].clone();
        }
    }
}
