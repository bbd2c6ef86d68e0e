//! Peel: if the other factors vanish modulo some prime `p | N`, then
//! `beta = g_i^{k_i} (mod p)`, which fixes `k_i` modulo the order of `g_i`
//! mod p. Each lift of that residue leaves a `(t-1)`-generator problem.

use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::mitm::mitm_space;
use super::{solve_dlp_with, Detail, DlpTask, Method, SolveError, SolverConfig, Solution, Space};
use crate::arith::{factorize, mod_inv, order_dividing, Natural};
use crate::congruence::CrtSolution;
use crate::instance::Instance;

/// `k_index = residue.residue (mod residue.modulus)`, read off modulo `prime`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeelStep {
    pub index: usize,
    #[serde(with = "crate::arith::dec")]
    pub prime: Natural,
    pub residue: CrtSolution,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PeelOutcome {
    Solved(Solution),
    /// The budget ran out; these residues were found but not confirmed.
    Partial { steps: Vec<PeelStep> },
}

pub fn attack_peel(inst: &Instance, config: &SolverConfig) -> Result<PeelOutcome, SolveError> {
    let space = Space::of(inst);
    if space.t() < 2 {
        return Err(not_applicable("needs at least two generators"));
    }
    let mut work = 0u64;
    let mut steps = Vec::new();
    let mut starved = false;
    for (index, prime) in candidates(&space) {
        let step = match residue_step(&space, index, &prime, config, &mut work) {
            Ok(Some(step)) => step,
            Ok(None) => continue,
            Err(e) if e.is_budget() => {
                starved = true;
                continue;
            }
            Err(e) => return Err(e),
        };
        match lift(&space, &step, config, &mut work) {
            Lift::Found(exponents) => {
                debug_assert!(space.verify(&exponents));
                return Ok(PeelOutcome::Solved(Solution {
                    exponents,
                    method: Method::PeelRecurse,
                    work,
                    detail: Detail::Peel { steps: vec![step] },
                }));
            }
            Lift::Starved => {
                starved = true;
                steps.push(step);
            }
            Lift::Exhausted => {}
        }
        if work >= config.peel_budget {
            starved = true;
            break;
        }
    }
    if starved {
        Ok(PeelOutcome::Partial { steps })
    } else {
        Err(not_applicable("no generator's contribution can be isolated modulo a prime of N"))
    }
}

fn not_applicable(reason: &str) -> SolveError {
    SolveError::NotApplicable {
        method: Method::PeelRecurse,
        reason: reason.into(),
    }
}

fn candidates(space: &Space<'_>) -> Vec<(usize, Natural)> {
    let primes: Vec<Natural> = space.m.primes().cloned().collect();
    (0..space.t())
        .flat_map(|i| primes.iter().map(move |p| (i, p.clone())))
        .collect()
}

/// Solves `g_i^x = beta (mod p)`. `None` when beta mod p is outside `<g_i>`.
fn residue_step(
    space: &Space<'_>,
    index: usize,
    prime: &Natural,
    config: &SolverConfig,
    work: &mut u64,
) -> Result<Option<PeelStep>, SolveError> {
    if prime == &Natural::from(2u32) {
        // Every unit is 1 mod 2: no information, every k_i is a candidate.
        return Ok(Some(PeelStep {
            index,
            prime: prime.clone(),
            residue: CrtSolution { residue: Natural::zero(), modulus: Natural::one() },
        }));
    }
    let group_order = prime - 1u32;
    let order_factors = factorize(&group_order).map_err(|_| SolveError::FactorizationUnavailable)?;
    let g = &space.gens[index] % prime;
    let s = order_dividing(&g, prime, &order_factors);
    let task = DlpTask::new(g, &space.beta % prime, prime.clone(), group_order);
    match solve_dlp_with(&task, &order_factors, config) {
        Ok((x, spent)) => {
            *work += spent;
            Ok(Some(PeelStep {
                index,
                prime: prime.clone(),
                residue: CrtSolution { residue: x % &s, modulus: s },
            }))
        }
        Err(SolveError::NotInSubgroup) => Ok(None),
        Err(e) => Err(e),
    }
}

enum Lift {
    Found(Vec<Natural>),
    Starved,
    Exhausted,
}

/// Tries `k_i = x + s*j` for each `j` below `r_i / s`, solving the
/// remaining generators for `beta * g_i^{-k_i}` each time. Work is one per
/// lift plus the sub-solve that succeeds; failed sub-solves are not itemized.
fn lift(space: &Space<'_>, step: &PeelStep, config: &SolverConfig, work: &mut u64) -> Lift {
    let m = space.m;
    let i = step.index;
    let (r, s) = (&space.orders[i], &step.residue.modulus);
    // The order of g_i mod p divides r_i; keep the guard for safety.
    if !(r % s).is_zero() {
        return Lift::Exhausted;
    }
    let Some(lifts) = (r / s).to_u64() else {
        return Lift::Starved;
    };
    let g_inv = mod_inv(&space.gens[i], m.n()).expect("generators are units");
    let step_inv = m.pow(&g_inv, s);
    let mut k = step.residue.residue.clone();
    let mut reduced = m.mul(&space.beta, &m.pow(&g_inv, &k));
    let rest = Space {
        m,
        gens: drop_index(&space.gens, i),
        orders: drop_index(&space.orders, i),
        beta: Natural::one(),
    };
    let mut starved = false;
    for _ in 0..lifts {
        if *work >= config.peel_budget {
            return Lift::Starved;
        }
        *work += 1;
        let sub = Space { beta: reduced.clone(), ..rest.clone() };
        let sub_config = SolverConfig {
            peel_budget: config.peel_budget - (*work).min(config.peel_budget),
            ..config.clone()
        };
        match mitm_space(&sub, &sub_config) {
            Ok(sol) => {
                *work += sol.work;
                let mut exponents = sol.exponents;
                exponents.insert(i, k.clone());
                return Lift::Found(exponents);
            }
            Err(e) if e.is_budget() => starved = true,
            Err(_) => {}
        }
        k += s;
        reduced = m.mul(&reduced, &step_inv);
    }
    if starved {
        Lift::Starved
    } else {
        Lift::Exhausted
    }
}

fn drop_index(v: &[Natural], i: usize) -> Vec<Natural> {
    v.iter()
        .enumerate()
        .filter(|(j, _)| *j != i)
        .map(|(_, x)| x.clone())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{nat, Modulus};
    use crate::instance::{theorem2_condition, InstanceOptions};

    fn inst35(k1: u64, k2: u64) -> Instance {
        Instance::from_witness(
            Modulus::from_u64(35).unwrap(),
            vec![nat(13), nat(19)],
            vec![nat(k1), nat(k2)],
            &InstanceOptions::default(),
        )
        .unwrap()
    }

    #[test]
    fn odd_witness_is_not_peelable() {
        // 19^1 and 13^3 are nontrivial modulo both 5 and 7.
        assert!(matches!(
            attack_peel(&inst35(3, 1), &SolverConfig::default()),
            Err(SolveError::NotApplicable { method: Method::PeelRecurse, .. })
        ));
    }

    #[test]
    fn even_second_exponent_peels_first_generator() {
        // 19^2 = 1 (mod 5), so beta = 13^{k_1} (mod 5).
        let PeelOutcome::Solved(sol) = attack_peel(&inst35(1, 2), &SolverConfig::default()).unwrap() else {
            panic!("expected a solution");
        };
        assert_eq!(sol.exponents, vec![nat(1), nat(2)]);
        let Detail::Peel { steps } = &sol.detail else { panic!() };
        assert_eq!(steps[0].index, 0);
        assert_eq!(steps[0].prime, nat(5));
        assert_eq!(steps[0].residue, CrtSolution { residue: nat(1), modulus: nat(4) });
    }

    #[test]
    fn applicability_matches_omitted_product_condition() {
        for k1 in 0..4 {
            for k2 in 0..6 {
                let inst = inst35(k1, k2);
                let cond = theorem2_condition(inst.modulus(), inst.generators(), inst.witness().unwrap());
                match attack_peel(&inst, &SolverConfig::default()) {
                    Ok(PeelOutcome::Solved(sol)) => {
                        assert!(!cond.holds, "({k1}, {k2})");
                        assert_eq!(Some(sol.exponents.as_slice()), inst.witness());
                    }
                    Ok(PeelOutcome::Partial { .. }) => panic!("budget is ample"),
                    Err(_) => assert!(cond.holds, "({k1}, {k2})"),
                }
            }
        }
    }

    #[test]
    fn tiny_budget_reports_partial_progress() {
        let config = SolverConfig { peel_budget: 1, ..SolverConfig::default() };
        match attack_peel(&inst35(1, 2), &config).unwrap() {
            PeelOutcome::Partial { steps } => assert!(!steps.is_empty()),
            PeelOutcome::Solved(_) => panic!("budget should not suffice"),
        }
    }
}
