//! Seeded random instance sampling.

use num_bigint::RandBigInt;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::hardness::{theorem1_condition, theorem2_condition};
use super::{evaluate, Independence, Instance, InstanceError, InstanceOptions, Provenance};
use crate::arith::{divisors, factorize, lcm_all, multiplicative_order, nat, Modulus, Natural};

/// What a generated instance must do with respect to one hardness condition.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Requirement {
    #[default]
    Any,
    Hold,
    Violate,
}

impl Requirement {
    fn accepts(self, holds: bool) -> bool {
        match self {
            Requirement::Any => true,
            Requirement::Hold => holds,
            Requirement::Violate => !holds,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Constraints {
    pub theorem1: Requirement,
    pub theorem2: Requirement,
    /// Upper bound on `prod r_i`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_order_product: Option<u64>,
    /// Lower bound on every `r_i`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_order: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenerateParams {
    pub seed: u64,
    /// Bit length of N.
    pub bits: u32,
    pub t: usize,
    pub constraints: Constraints,
    /// Number of candidate generator sets tried before giving up.
    pub max_attempts: u64,
    pub cap: usize,
}

impl GenerateParams {
    pub fn new(seed: u64, bits: u32, t: usize) -> Self {
        GenerateParams {
            seed,
            bits,
            t,
            constraints: Constraints::default(),
            max_attempts: 20_000,
            cap: 1 << 20,
        }
    }

    pub fn with_constraints(mut self, constraints: Constraints) -> Self {
        self.constraints = constraints;
        self
    }
}

const WITNESS_TRIES: usize = 64;

/// Rejection-samples an instance meeting `params.constraints`. Deterministic
/// in `params`.
pub fn generate(params: &GenerateParams) -> Result<Instance, InstanceError> {
    if params.t == 0 {
        return Err(InstanceError::InvalidParameters("t must be at least 1".into()));
    }
    if !(3..=64).contains(&params.bits) {
        return Err(InstanceError::InvalidParameters(format!(
            "bit size {} outside 3..=64",
            params.bits
        )));
    }
    let c = &params.constraints;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let low = Natural::one() << (params.bits - 1);
    let high = Natural::one() << params.bits;
    let opts = InstanceOptions {
        cap: params.cap,
        allow_unverified: false,
    };

    for _ in 0..params.max_attempts {
        let n = rng.gen_biguint_range(&low, &high);
        let Ok(m) = Modulus::new(&n) else { continue };
        let Some(gens) = sample_generators(&m, params.t, c, &mut rng) else {
            continue;
        };
        let orders: Vec<Natural> = gens
            .iter()
            .map(|g| multiplicative_order(g, &m).expect("sampled units"))
            .collect();
        let product: Natural = orders.iter().product();
        if let Some(max) = c.max_order_product {
            if product > nat(max) {
                continue;
            }
        }
        // Independent generators span a direct product of order prod r_i.
        if !(m.euler() % &product).is_zero() {
            continue;
        }
        let zero = vec![Natural::zero(); params.t];
        let base = match Instance::from_witness(m.clone(), gens, zero, &opts) {
            Ok(inst) => inst,
            Err(InstanceError::NotIndependent { .. }) | Err(InstanceError::Undecidable { .. }) => {
                continue
            }
            Err(e) => return Err(e),
        };
        debug_assert_eq!(base.independence(), Independence::Verified);
        for _ in 0..WITNESS_TRIES {
            let witness = sample_witness(&base, c, &mut rng);
            let t1 = theorem1_condition(base.orders(), &witness);
            if !c.theorem1.accepts(t1.holds) {
                continue;
            }
            let t2 = theorem2_condition(base.modulus(), base.generators(), &witness);
            if !c.theorem2.accepts(t2.holds) {
                continue;
            }
            let beta = evaluate(base.modulus(), base.generators(), &witness);
            return Ok(Instance {
                beta,
                witness: Some(witness),
                ..base
            }
            .with_provenance(Provenance {
                seed: params.seed,
                constraints: c.clone(),
            }));
        }
    }
    Err(InstanceError::GenerationFailed {
        attempts: params.max_attempts,
    })
}

/// Random units raised to random divisors of their order, so that small
/// orders show up as often as large ones.
fn sample_generators(
    m: &Modulus,
    t: usize,
    c: &Constraints,
    rng: &mut ChaCha8Rng,
) -> Option<Vec<Natural>> {
    let two = nat(2);
    if *m.n() <= two {
        return None;
    }
    let min_order = nat(c.min_order.unwrap_or(2).max(2));
    let max_order = c.max_order_product.map(nat);
    let mut gens = Vec::with_capacity(t);
    for _ in 0..t {
        let u = (0..16)
            .map(|_| rng.gen_biguint_range(&two, m.n()))
            .find(|u| m.is_unit(u))?;
        let r = multiplicative_order(&u, m).ok()?;
        if r.is_one() {
            return None;
        }
        let rf = factorize(&r).ok()?;
        let allowed: Vec<Natural> = divisors(&rf)
            .into_iter()
            .filter(|d| {
                let ord = &r / d;
                ord >= min_order && max_order.as_ref().is_none_or(|mx| ord <= *mx)
            })
            .collect();
        let d = allowed.choose(rng)?;
        gens.push(m.pow(&u, d));
    }
    Some(gens)
}

fn random_below(bound: &Natural, rng: &mut ChaCha8Rng) -> Natural {
    if bound.is_zero() {
        return Natural::zero();
    }
    rng.gen_biguint_below(bound)
}

/// Draws a witness aimed at the requested constraints; the caller re-checks.
fn sample_witness(inst: &Instance, c: &Constraints, rng: &mut ChaCha8Rng) -> Vec<Natural> {
    let orders = inst.orders();
    let t = orders.len();

    // For an omitted-product violation at (i, p): every other exponent a multiple of
    // the order of its generator mod p makes the omitted product vanish mod p.
    let peel_target = (c.theorem2 == Requirement::Violate).then(|| {
        let i = rng.gen_range(0..t);
        let primes: Vec<&Natural> = inst.modulus().primes().collect();
        let p = primes[rng.gen_range(0..primes.len())].clone();
        let pm = Modulus::new(&p).expect("prime modulus");
        let steps: Vec<Natural> = inst
            .generators()
            .iter()
            .map(|g| multiplicative_order(&(g % &p), &pm).expect("unit mod p"))
            .collect();
        (i, steps)
    });

    if c.theorem1 == Requirement::Violate {
        // Diagonal tuple k_i = K mod r_i.
        let period = lcm_all(orders);
        let k = match &peel_target {
            Some((i, steps)) => {
                let stride = lcm_all(
                    steps
                        .iter()
                        .enumerate()
                        .filter(|(j, _)| j != i)
                        .map(|(_, s)| s),
                );
                let count = (&period + &stride - 1u32) / &stride;
                (random_below(&count, rng) * stride) % &period
            }
            None => random_below(&period, rng),
        };
        return orders.iter().map(|r| &k % r).collect();
    }

    match peel_target {
        Some((i, steps)) => orders
            .iter()
            .enumerate()
            .map(|(j, r)| {
                if j == i {
                    random_below(r, rng)
                } else {
                    let s = &steps[j];
                    random_below(&(r / s), rng) * s
                }
            })
            .collect(),
        None => orders.iter().map(|r| random_below(r, rng)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::hardness::hardness_report;
    use crate::instance::Verdict;

    #[test]
    fn deterministic_for_seed() {
        let p = GenerateParams::new(1, 16, 2);
        let a = generate(&p).unwrap();
        let b = generate(&p).unwrap();
        assert_eq!(a, b);
        assert!(a.verify(a.witness().unwrap()));
        assert_eq!(a.independence(), Independence::Verified);
        let bits = a.n().bits();
        assert_eq!(bits, 16);
    }

    #[test]
    fn constraints_are_honored() {
        for (t1, t2, verdict) in [
            (Requirement::Hold, Requirement::Hold, Verdict::ResistsHspNecessaryCondition),
            (Requirement::Violate, Requirement::Hold, Verdict::CollapseVulnerable),
            (Requirement::Hold, Requirement::Violate, Verdict::PeelVulnerable),
            (Requirement::Violate, Requirement::Violate, Verdict::BothVulnerable),
        ] {
            for seed in 0..5 {
                let params = GenerateParams::new(seed, 16, 2).with_constraints(Constraints {
                    theorem1: t1,
                    theorem2: t2,
                    ..Constraints::default()
                });
                let inst = generate(&params).unwrap();
                assert_eq!(hardness_report(&inst).unwrap().verdict, verdict, "seed {seed}");
            }
        }
    }

    #[test]
    fn order_bounds_are_honored() {
        let c = Constraints {
            max_order_product: Some(10_000),
            min_order: Some(8),
            ..Constraints::default()
        };
        for seed in 0..10 {
            let inst = generate(&GenerateParams::new(seed, 18, 3).with_constraints(c.clone())).unwrap();
            assert!(inst.order_product() <= nat(10_000));
            assert!(inst.orders().iter().all(|r| *r >= nat(8)));
        }
    }

    #[test]
    fn invalid_parameters() {
        assert!(matches!(
            generate(&GenerateParams::new(1, 16, 0)),
            Err(InstanceError::InvalidParameters(_))
        ));
        assert!(matches!(
            generate(&GenerateParams::new(1, 2, 1)),
            Err(InstanceError::InvalidParameters(_))
        ));
        let mut impossible = GenerateParams::new(1, 8, 4);
        impossible.max_attempts = 50;
        impossible.constraints.min_order = Some(100);
        assert_eq!(
            generate(&impossible),
            Err(InstanceError::GenerationFailed { attempts: 50 })
        );
    }
}
