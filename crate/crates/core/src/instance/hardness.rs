//! Parameter-vetting checks for instance designers. Both checks need the
//! witness exponents; they are not attacks.

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{evaluate, Instance, InstanceError};
use crate::arith::{Modulus, Natural};
use crate::congruence::{solve_system, CongruenceSystem, CrtSolution};

/// Result of the pairwise-order condition.
///
/// `holds` means some pair `(j1, j2)` has `gcd(r_j1, r_j2)` not dividing
/// `k_j1 - k_j2`, so no single `k` with `k = k_i (mod r_i)` exists and the
/// instance does not collapse to one discrete logarithm in base `prod g_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem1Check {
    pub holds: bool,
    /// First pair (lexicographic) witnessing the condition.
    pub pair: Option<(usize, usize)>,
    /// When the condition fails: the common exponent `k mod lcm(r_i)`.
    pub collapse: Option<CrtSolution>,
}

/// Result of the per-prime condition.
///
/// `holds` means that for every index `i` and every prime `p` of `N`, the
/// product of the generator powers omitting `i` is not `1 (mod p)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem2Check {
    pub holds: bool,
    /// First `(i, p)` (index-major) whose omitted product vanishes mod `p`.
    pub violation: Option<Violation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub index: usize,
    #[serde(with = "crate::arith::dec")]
    pub prime: Natural,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// Both conditions hold: the necessary condition for resisting the
    /// hidden-subgroup reductions is met.
    ResistsHspNecessaryCondition,
    CollapseVulnerable,
    PeelVulnerable,
    BothVulnerable,
}

impl Verdict {
    pub fn from_flags(theorem1_ok: bool, theorem2_ok: bool) -> Self {
        match (theorem1_ok, theorem2_ok) {
            (true, true) => Verdict::ResistsHspNecessaryCondition,
            (false, true) => Verdict::CollapseVulnerable,
            (true, false) => Verdict::PeelVulnerable,
            (false, false) => Verdict::BothVulnerable,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::ResistsHspNecessaryCondition => "resists-hsp-necessary-condition",
            Verdict::CollapseVulnerable => "collapse-vulnerable",
            Verdict::PeelVulnerable => "peel-vulnerable",
            Verdict::BothVulnerable => "both-vulnerable",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HardnessReport {
    pub theorem1: Theorem1Check,
    pub theorem2: Theorem2Check,
    pub verdict: Verdict,
}

fn abs_diff(a: &Natural, b: &Natural) -> Natural {
    if a >= b {
        a - b
    } else {
        b - a
    }
}

/// Pairwise gcd test on orders and witness exponents.
pub fn theorem1_condition(orders: &[Natural], witness: &[Natural]) -> Theorem1Check {
    let t = orders.len();
    for j1 in 0..t {
        for j2 in j1 + 1..t {
            let g = orders[j1].gcd(&orders[j2]);
            if !(abs_diff(&witness[j1], &witness[j2]) % g).is_zero() {
                return Theorem1Check {
                    holds: true,
                    pair: Some((j1, j2)),
                    collapse: None,
                };
            }
        }
    }
    let sys = CongruenceSystem::from_pairs(
        witness
            .iter()
            .cloned()
            .zip(orders.iter().cloned()),
    )
    .expect("orders are positive and t >= 1");
    let collapse = solve_system(&sys).ok();
    debug_assert!(collapse.is_some(), "pairwise-compatible systems are solvable");
    Theorem1Check {
        holds: false,
        pair: None,
        collapse,
    }
}

/// Product-omitting-one test modulo each prime of `N`.
pub fn theorem2_condition(m: &Modulus, generators: &[Natural], witness: &[Natural]) -> Theorem2Check {
    let powers: Vec<Natural> = generators
        .iter()
        .zip(witness)
        .map(|(g, k)| m.pow(g, k))
        .collect();
    for i in 0..generators.len() {
        let omitted = powers
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .fold(Natural::one(), |acc, (_, x)| m.mul(&acc, x));
        for p in m.primes() {
            if (&omitted % p).is_one() {
                return Theorem2Check {
                    holds: false,
                    violation: Some(Violation {
                        index: i,
                        prime: p.clone(),
                    }),
                };
            }
        }
    }
    Theorem2Check {
        holds: true,
        violation: None,
    }
}

fn witness_of(inst: &Instance) -> Result<&[Natural], InstanceError> {
    let w = inst.witness().ok_or(InstanceError::WitnessRequired)?;
    debug_assert_eq!(evaluate(inst.modulus(), inst.generators(), w), *inst.beta());
    Ok(w)
}

pub fn theorem1_check(inst: &Instance) -> Result<Theorem1Check, InstanceError> {
    Ok(theorem1_condition(inst.orders(), witness_of(inst)?))
}

pub fn theorem2_check(inst: &Instance) -> Result<Theorem2Check, InstanceError> {
    Ok(theorem2_condition(inst.modulus(), inst.generators(), witness_of(inst)?))
}

pub fn hardness_report(inst: &Instance) -> Result<HardnessReport, InstanceError> {
    let theorem1 = theorem1_check(inst)?;
    let theorem2 = theorem2_check(inst)?;
    let verdict = Verdict::from_flags(theorem1.holds, theorem2.holds);
    Ok(HardnessReport {
        theorem1,
        theorem2,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::nat;
    use crate::instance::InstanceOptions;
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

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
    fn reference_example_collapses() {
        let inst = inst35(3, 1);
        let t1 = theorem1_check(&inst).unwrap();
        assert!(!t1.holds);
        assert_eq!(
            t1.collapse,
            Some(CrtSolution { residue: nat(7), modulus: nat(12) })
        );
        // (13 * 19)^7 = 2^7 = 23 mod 35
        assert_eq!(nat(2).modpow(&nat(7), &nat(35)), *inst.beta());
        let t2 = theorem2_check(&inst).unwrap();
        assert!(t2.holds);
        let report = hardness_report(&inst).unwrap();
        assert_eq!(report.verdict, Verdict::CollapseVulnerable);
    }

    #[test]
    fn theorem1_examples() {
        let orders = [nat(4), nat(6)];
        assert!(!theorem1_condition(&orders, &[nat(5), nat(5)]).holds);
        let c = theorem1_condition(&orders, &[nat(1), nat(0)]);
        assert!(c.holds);
        assert_eq!(c.pair, Some((0, 1)));
        // no common k: confirm by scanning a full period
        assert!((0..12u64).all(|k| k % 4 != 1 || k % 6 != 0));
    }

    #[test]
    fn zero_other_exponents_violate_theorem2() {
        let inst = inst35(3, 0);
        let t2 = theorem2_check(&inst).unwrap();
        assert!(!t2.holds);
        assert_eq!(t2.violation, Some(Violation { index: 0, prime: nat(5) }));
    }

    #[test]
    fn witness_required() {
        let m = Modulus::from_u64(35).unwrap();
        let inst = Instance::from_target(m, vec![nat(13)], nat(13), &InstanceOptions::default())
            .unwrap();
        assert_eq!(hardness_report(&inst), Err(InstanceError::WitnessRequired));
    }

    #[test]
    fn verdict_is_function_of_flags() {
        assert_eq!(Verdict::from_flags(true, true), Verdict::ResistsHspNecessaryCondition);
        assert_eq!(Verdict::from_flags(false, false), Verdict::BothVulnerable);
        assert_eq!(Verdict::from_flags(true, false), Verdict::PeelVulnerable);
        assert_eq!(
            serde_json::to_string(&Verdict::CollapseVulnerable).unwrap(),
            "\"collapse-vulnerable\""
        );
    }

    proptest! {
        #[test]
        fn theorem1_failure_iff_collapse_system_solvable(orders in proptest::collection::vec(1u64..40, 1..5), seed in any::<u64>()) {
            let orders: Vec<Natural> = orders.into_iter().map(nat).collect();
            let witness: Vec<Natural> = orders.iter().enumerate().map(|(i, r)| nat(seed.rotate_left(i as u32 * 7)) % r).collect();
            let check = theorem1_condition(&orders, &witness);
            let sys = CongruenceSystem::from_pairs(witness.iter().cloned().zip(orders.iter().cloned())).unwrap();
            prop_assert_eq!(!check.holds, solve_system(&sys).is_ok());
            // brute force over one period of the lcm
            let l = crate::arith::lcm_all(&orders).to_u64().unwrap();
            let common = (0..l).any(|k| witness.iter().zip(&orders).all(|(w, r)| nat(k) % r == *w));
            prop_assert_eq!(common, !check.holds);
        }
    }
}
