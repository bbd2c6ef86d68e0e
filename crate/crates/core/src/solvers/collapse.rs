//! Collapse: treat `G = prod g_i` as a single base. If beta is a power
//! `G^k`, then `k_i = k mod r_i` is a representation.

use super::{checked, solve_dlp_with, Detail, DlpTask, Method, SolveError, SolverConfig, Solution, Space};
use crate::arith::{order_dividing, Natural};
use crate::congruence::split_exponent;
use crate::instance::Instance;

pub fn attack_collapse(inst: &Instance, config: &SolverConfig) -> Result<Solution, SolveError> {
    let space = Space::of(inst);
    let m = inst.modulus();
    let base = inst
        .generators()
        .iter()
        .fold(Natural::from(1u32) % m.n(), |acc, g| m.mul(&acc, g));
    let task = DlpTask::new(base.clone(), inst.beta().clone(), m.n().clone(), m.carmichael().clone());
    let (k, work) = match solve_dlp_with(&task, m.carmichael_factorization(), config) {
        Ok(found) => found,
        Err(SolveError::NotInSubgroup) => {
            return Err(SolveError::NotApplicable {
                method: Method::Collapse,
                reason: "beta is not a power of the product of the generators".into(),
            })
        }
        Err(e) => return Err(e),
    };
    let order = order_dividing(&base, m.n(), m.carmichael_factorization());
    let exponents = split_exponent(&k, inst.orders()).map_err(|e| SolveError::InvalidTask(e.to_string()))?;
    checked(
        &space,
        exponents,
        Method::Collapse,
        work,
        Detail::Collapse { base, order, k },
    )
}
