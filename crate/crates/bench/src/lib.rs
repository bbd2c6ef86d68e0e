//! Shared fixtures for the criterion benchmarks.

use mdlp_core::instance::{generate, InstanceError};
use mdlp_core::suites::suite;
use mdlp_core::Instance;

/// The instances of a named suite, generated once.
pub fn suite_instances(name: &str) -> Result<Vec<Instance>, InstanceError> {
    let suite = suite(name).ok_or_else(|| InstanceError::InvalidParameters(format!("unknown suite {name}")))?;
    suite.instances.iter().map(generate).collect()
}

/// Short label for a benchmark id: modulus bits, t and the order product.
pub fn label(inst: &Instance) -> String {
    format!("{}b-t{}-{}", inst.n().bits(), inst.t(), inst.order_product())
}
