//! The t-MDLP instance: a modulus, independent unit generators with
//! computed orders, a target `beta`, and optionally the witness exponents
//! that produced it.

mod generate;
mod hardness;
mod json;
mod table;

pub use generate::{generate, Constraints, GenerateParams, Requirement};
pub use hardness::{
    hardness_report, theorem1_check, theorem1_condition, theorem2_check, theorem2_condition,
    HardnessReport, Theorem1Check, Theorem2Check, Verdict,
};
pub use json::{from_json, to_json, InstanceDoc, SCHEMA_VERSION};
pub use table::{
    reference_divergences, truth_table, truth_table_flat, Divergence, TruthTable,
    REFERENCE_TABLE_35,
};

use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{multiplicative_order, ArithError, Modulus, Natural};
use crate::group::{independence_check, GroupError, IndependenceVerdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("an instance needs at least one generator")]
    NoGenerators,
    #[error("generator {index} ({value}) is not a unit modulo N")]
    NotAUnit { index: usize, value: Natural },
    #[error("generators are not independent: g[{index}]^{power} lies in the span of the others")]
    NotIndependent { index: usize, power: Natural },
    #[error("independence undecidable: a subgroup closure exceeded {cap} elements")]
    Undecidable { cap: usize },
    #[error("witness has {got} entries, expected {expected}")]
    WitnessLength { expected: usize, got: usize },
    #[error("witness entry {index} is not reduced modulo its order")]
    WitnessOutOfRange { index: usize },
    #[error("witness required for validation")]
    WitnessRequired,
    #[error("verification failed: witness evaluates to {expected}, instance states beta = {found}")]
    BetaMismatch { expected: Natural, found: Natural },
    #[error("order mismatch for generator {index}: computed {computed}, stated {stated}")]
    OrdersMismatch {
        index: usize,
        computed: Natural,
        stated: Natural,
    },
    #[error("instance generation failed after {attempts} attempts")]
    GenerationFailed { attempts: u64 },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("table of {cells} cells exceeds the output budget of {budget}")]
    TableTooLarge { cells: u128, budget: u64 },
    #[error("malformed instance document: {0}")]
    Format(String),
    #[error("unsupported instance schema version {0}")]
    UnsupportedVersion(u32),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Whether the independence condition was established at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "status")]
pub enum Independence {
    Verified,
    UnverifiedAtCap { cap: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceOptions {
    /// Maximum subgroup size enumerated by the independence check.
    pub cap: usize,
    /// Accept instances whose independence could not be decided at `cap`.
    pub allow_unverified: bool,
}

impl Default for InstanceOptions {
    fn default() -> Self {
        InstanceOptions {
            cap: 1 << 20,
            allow_unverified: false,
        }
    }
}

/// Where a generated instance came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub seed: u64,
    pub constraints: Constraints,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    modulus: Modulus,
    generators: Vec<Natural>,
    orders: Vec<Natural>,
    beta: Natural,
    witness: Option<Vec<Natural>>,
    independence: Independence,
    provenance: Option<Provenance>,
}

/// `prod g_i^{k_i} mod N`.
pub fn evaluate(m: &Modulus, generators: &[Natural], exponents: &[Natural]) -> Natural {
    generators
        .iter()
        .zip(exponents)
        .fold(Natural::one() % m.n(), |acc, (g, k)| m.mul(&acc, &m.pow(g, k)))
}

impl Instance {
    /// Builds an instance from generators and witness exponents; beta is
    /// evaluated. Witness entries are reduced modulo the computed orders.
    pub fn from_witness(
        modulus: Modulus,
        generators: Vec<Natural>,
        witness: Vec<Natural>,
        opts: &InstanceOptions,
    ) -> Result<Self, InstanceError> {
        if witness.len() != generators.len() {
            return Err(InstanceError::WitnessLength {
                expected: generators.len(),
                got: witness.len(),
            });
        }
        let (generators, orders, independence) = prepare(&modulus, generators, opts)?;
        let witness: Vec<Natural> = witness.iter().zip(&orders).map(|(k, r)| k % r).collect();
        let beta = evaluate(&modulus, &generators, &witness);
        Ok(Instance {
            modulus,
            generators,
            orders,
            beta,
            witness: Some(witness),
            independence,
            provenance: None,
        })
    }

    /// Builds a witness-free instance for a given target.
    pub fn from_target(
        modulus: Modulus,
        generators: Vec<Natural>,
        beta: Natural,
        opts: &InstanceOptions,
    ) -> Result<Self, InstanceError> {
        let (generators, orders, independence) = prepare(&modulus, generators, opts)?;
        let beta = beta % modulus.n();
        Ok(Instance {
            modulus,
            generators,
            orders,
            beta,
            witness: None,
            independence,
            provenance: None,
        })
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = Some(provenance);
        self
    }

    /// Same generators and modulus, different target, no witness.
    pub fn retarget(&self, beta: Natural) -> Self {
        Instance {
            beta: beta % self.modulus.n(),
            witness: None,
            provenance: None,
            ..self.clone()
        }
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn n(&self) -> &Natural {
        self.modulus.n()
    }

    pub fn t(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Natural] {
        &self.generators
    }

    pub fn orders(&self) -> &[Natural] {
        &self.orders
    }

    pub fn beta(&self) -> &Natural {
        &self.beta
    }

    pub fn witness(&self) -> Option<&[Natural]> {
        self.witness.as_deref()
    }

    pub fn independence(&self) -> Independence {
        self.independence
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    /// Product of the orders: the size of the exponent search space.
    pub fn order_product(&self) -> Natural {
        self.orders.iter().product()
    }

    /// Whether `prod g_i^{k_i mod r_i} = beta (mod N)`.
    pub fn verify(&self, candidate: &[Natural]) -> bool {
        if candidate.len() != self.t() {
            return false;
        }
        let reduced: Vec<Natural> = candidate
            .iter()
            .zip(&self.orders)
            .map(|(k, r)| k % r)
            .collect();
        evaluate(&self.modulus, &self.generators, &reduced) == self.beta
    }
}

type Prepared = (Vec<Natural>, Vec<Natural>, Independence);

fn prepare(
    modulus: &Modulus,
    generators: Vec<Natural>,
    opts: &InstanceOptions,
) -> Result<Prepared, InstanceError> {
    if generators.is_empty() {
        return Err(InstanceError::NoGenerators);
    }
    let generators: Vec<Natural> = generators.into_iter().map(|g| g % modulus.n()).collect();
    let mut orders = Vec::with_capacity(generators.len());
    for (index, g) in generators.iter().enumerate() {
        if !g.gcd(modulus.n()).is_one() {
            return Err(InstanceError::NotAUnit {
                index,
                value: g.clone(),
            });
        }
        orders.push(multiplicative_order(g, modulus)?);
    }
    let independence = match independence_check(&generators, modulus, opts.cap)? {
        IndependenceVerdict::Independent => Independence::Verified,
        IndependenceVerdict::Violated { index, power } => {
            return Err(InstanceError::NotIndependent { index, power })
        }
        IndependenceVerdict::Undecidable { cap } => {
            if !opts.allow_unverified {
                return Err(InstanceError::Undecidable { cap });
            }
            Independence::UnverifiedAtCap { cap }
        }
    };
    Ok((generators, orders, independence))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::nat;

    fn m35() -> Modulus {
        Modulus::from_u64(35).unwrap()
    }

    #[test]
    fn reference_instance() {
        let inst = Instance::from_witness(
            m35(),
            vec![nat(13), nat(19)],
            vec![nat(3), nat(1)],
            &InstanceOptions::default(),
        )
        .unwrap();
        assert_eq!(inst.orders(), &[nat(4), nat(6)]);
        assert_eq!(*inst.beta(), nat(23));
        assert_eq!(inst.independence(), Independence::Verified);
        assert!(inst.verify(&[nat(3), nat(1)]));
        assert!(!inst.verify(&[nat(1), nat(3)]));
        assert!(inst.verify(&[nat(7), nat(13)]));
        assert!(!inst.verify(&[nat(3)]));
    }

    #[test]
    fn zero_witness_gives_identity() {
        let inst = Instance::from_witness(
            m35(),
            vec![nat(13), nat(19)],
            vec![nat(0), nat(0)],
            &InstanceOptions::default(),
        )
        .unwrap();
        assert_eq!(*inst.beta(), nat(1));
    }

    #[test]
    fn dependent_generators_rejected() {
        let err = Instance::from_witness(
            m35(),
            vec![nat(13), nat(29)],
            vec![nat(1), nat(1)],
            &InstanceOptions::default(),
        )
        .unwrap_err();
        assert_eq!(err, InstanceError::NotIndependent { index: 1, power: nat(1) });
    }

    #[test]
    fn construction_errors() {
        let opts = InstanceOptions::default();
        assert_eq!(
            Instance::from_witness(m35(), vec![], vec![], &opts).unwrap_err(),
            InstanceError::NoGenerators
        );
        assert!(matches!(
            Instance::from_witness(m35(), vec![nat(5)], vec![nat(1)], &opts),
            Err(InstanceError::NotAUnit { index: 0, .. })
        ));
        assert!(matches!(
            Instance::from_witness(m35(), vec![nat(13)], vec![], &opts),
            Err(InstanceError::WitnessLength { .. })
        ));
        let tight = InstanceOptions { cap: 3, allow_unverified: false };
        assert_eq!(
            Instance::from_witness(m35(), vec![nat(13), nat(19)], vec![nat(0), nat(0)], &tight)
                .unwrap_err(),
            InstanceError::Undecidable { cap: 3 }
        );
        let loose = InstanceOptions { cap: 3, allow_unverified: true };
        let inst =
            Instance::from_witness(m35(), vec![nat(13), nat(19)], vec![nat(0), nat(0)], &loose)
                .unwrap();
        assert_eq!(inst.independence(), Independence::UnverifiedAtCap { cap: 3 });
    }

    #[test]
    fn witness_is_reduced() {
        let inst = Instance::from_witness(
            m35(),
            vec![nat(13), nat(19)],
            vec![nat(7), nat(13)],
            &InstanceOptions::default(),
        )
        .unwrap();
        assert_eq!(inst.witness().unwrap(), &[nat(3), nat(1)]);
    }
}
