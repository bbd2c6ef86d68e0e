//! Versioned JSON form of an [`Instance`]. All integers that can exceed
//! machine width are decimal strings.
//!
//! ```json
//! {
//!   "version": 1,
//!   "n": "35",
//!   "factors": [["5", 1], ["7", 1]],
//!   "generators": ["13", "19"],
//!   "orders": ["4", "6"],
//!   "beta": "23",
//!   "witness": ["3", "1"],
//!   "provenance": null
//! }
//! ```

use serde::{Deserialize, Serialize};

use super::{evaluate, Instance, InstanceError, InstanceOptions, Provenance};
use crate::arith::{Factorization, Modulus, Natural};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorEntry(#[serde(with = "crate::arith::dec")] pub Natural, pub u32);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDoc {
    pub version: u32,
    #[serde(with = "crate::arith::dec")]
    pub n: Natural,
    pub factors: Vec<FactorEntry>,
    #[serde(with = "crate::arith::dec::vec")]
    pub generators: Vec<Natural>,
    #[serde(with = "crate::arith::dec::vec")]
    pub orders: Vec<Natural>,
    #[serde(with = "crate::arith::dec")]
    pub beta: Natural,
    #[serde(default, with = "crate::arith::dec::opt_vec")]
    pub witness: Option<Vec<Natural>>,
    #[serde(default)]
    pub provenance: Option<Provenance>,
}

impl From<&Instance> for InstanceDoc {
    fn from(inst: &Instance) -> Self {
        InstanceDoc {
            version: SCHEMA_VERSION,
            n: inst.n().clone(),
            factors: inst
                .modulus()
                .factorization()
                .factors()
                .iter()
                .map(|(p, e)| FactorEntry(p.clone(), *e))
                .collect(),
            generators: inst.generators().to_vec(),
            orders: inst.orders().to_vec(),
            beta: inst.beta().clone(),
            witness: inst.witness().map(<[Natural]>::to_vec),
            provenance: inst.provenance().cloned(),
        }
    }
}

impl InstanceDoc {
    /// Rebuilds and re-validates the instance: the factorization must
    /// reconstruct `n`, the stated orders must equal the computed ones, and
    /// a witness (if any) must be reduced and evaluate to `beta`.
    pub fn into_instance(self, opts: &InstanceOptions) -> Result<Instance, InstanceError> {
        if self.version != SCHEMA_VERSION {
            return Err(InstanceError::UnsupportedVersion(self.version));
        }
        let factorization = Factorization::of_known(
            &self.n,
            self.factors.into_iter().map(|FactorEntry(p, e)| (p, e)).collect(),
        )?;
        let modulus = Modulus::from_factorization(factorization)?;
        if let Some(g) = self.generators.iter().find(|g| *g >= &self.n) {
            return Err(InstanceError::Format(format!("generator {g} is not reduced mod n")));
        }
        if self.beta >= self.n {
            return Err(InstanceError::Format("beta is not reduced mod n".into()));
        }
        if self.orders.len() != self.generators.len() {
            return Err(InstanceError::Format(format!(
                "{} orders for {} generators",
                self.orders.len(),
                self.generators.len()
            )));
        }
        let inst = Instance::from_target(modulus, self.generators, self.beta.clone(), opts)?;
        for (index, (computed, stated)) in inst.orders().iter().zip(&self.orders).enumerate() {
            if computed != stated {
                return Err(InstanceError::OrdersMismatch {
                    index,
                    computed: computed.clone(),
                    stated: stated.clone(),
                });
            }
        }
        let mut inst = inst;
        if let Some(w) = self.witness {
            if w.len() != inst.t() {
                return Err(InstanceError::WitnessLength {
                    expected: inst.t(),
                    got: w.len(),
                });
            }
            if let Some(index) = w.iter().zip(inst.orders()).position(|(k, r)| k >= r) {
                return Err(InstanceError::WitnessOutOfRange { index });
            }
            let expected = evaluate(inst.modulus(), inst.generators(), &w);
            if expected != self.beta {
                return Err(InstanceError::BetaMismatch {
                    expected,
                    found: self.beta,
                });
            }
            inst.witness = Some(w);
        }
        inst.provenance = self.provenance;
        Ok(inst)
    }
}

pub fn to_json(inst: &Instance) -> String {
    serde_json::to_string_pretty(&InstanceDoc::from(inst)).expect("instance documents serialize")
}

pub fn from_json(text: &str, opts: &InstanceOptions) -> Result<Instance, InstanceError> {
    let doc: InstanceDoc =
        serde_json::from_str(text).map_err(|e| InstanceError::Format(e.to_string()))?;
    doc.into_instance(opts)
}
