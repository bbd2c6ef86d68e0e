//! Exponent recovery.
//!
//! Generic searches ([`solve_exhaustive`], [`solve_mitm`]) work on any
//! instance. The reductions ([`attack_collapse`], [`attack_peel`]) apply only
//! when the instance fails one of the hardness conditions, and reduce it to
//! classical Pohlig-Hellman/BSGS discrete logarithms.

mod collapse;
mod dlp;
mod exhaustive;
mod mitm;
mod peel;

pub use collapse::attack_collapse;
pub use dlp::{solve_dlp, solve_dlp_with, DlpTask};
pub use exhaustive::{find_all, solve_exhaustive};
pub use mitm::solve_mitm;
pub use peel::{attack_peel, PeelOutcome, PeelStep};

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{Modulus, Natural};
use crate::instance::{evaluate, Instance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "exhaustive")]
    Exhaustive,
    #[serde(rename = "mitm")]
    Mitm,
    #[serde(rename = "collapse")]
    Collapse,
    #[serde(rename = "peel+recurse")]
    PeelRecurse,
    #[serde(rename = "single-dlp")]
    SingleDlp,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Exhaustive => "exhaustive",
            Method::Mitm => "mitm",
            Method::Collapse => "collapse",
            Method::PeelRecurse => "peel+recurse",
            Method::SingleDlp => "single-dlp",
        })
    }
}

/// Method-specific evidence attached to a [`Solution`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Detail {
    None,
    /// `beta = base^k` with `base = prod g_i` of the given order.
    Collapse {
        #[serde(with = "crate::arith::dec")]
        base: Natural,
        #[serde(with = "crate::arith::dec")]
        order: Natural,
        #[serde(with = "crate::arith::dec")]
        k: Natural,
    },
    Peel { steps: Vec<PeelStep> },
}

/// A recovered exponent tuple. Every `Solution` handed out verifies against
/// its instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solution {
    #[serde(with = "crate::arith::dec::vec")]
    pub exponents: Vec<Natural>,
    pub method: Method,
    /// Group operations performed.
    pub work: u64,
    pub detail: Detail,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("{what} needs {needed}, budget is {budget}")]
    BudgetExceeded {
        what: String,
        needed: Natural,
        budget: u64,
    },
    #[error("{method}: beta is not in the span of the generators")]
    NotFound { method: Method },
    #[error("{method} not applicable: {reason}")]
    NotApplicable { method: Method, reason: String },
    #[error("target is not in the subgroup generated by the base")]
    NotInSubgroup,
    #[error("factorization of the group order is unavailable")]
    FactorizationUnavailable,
    #[error("invalid task: {0}")]
    InvalidTask(String),
    #[error("{method} produced exponents that do not verify")]
    Unsound { method: Method },
    #[error("all methods exhausted: {}", summarize(.diagnostics))]
    AllMethodsExhausted { diagnostics: Vec<Diagnostic> },
}

impl SolveError {
    /// Whether the failure is a resource limit rather than a definitive
    /// answer.
    pub fn is_budget(&self) -> bool {
        match self {
            SolveError::BudgetExceeded { .. } | SolveError::FactorizationUnavailable => true,
            SolveError::AllMethodsExhausted { diagnostics } => {
                diagnostics.iter().any(|d| d.budget)
            }
            _ => false,
        }
    }
}

/// Why one method of the orchestrator failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub method: Method,
    pub message: String,
    pub budget: bool,
}

fn summarize(diagnostics: &[Diagnostic]) -> String {
    diagnostics
        .iter()
        .map(|d| format!("[{}] {}", d.method, d.message))
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverConfig {
    /// Largest search space the exhaustive solver (and the mitm scan) walks.
    pub exhaustive_budget: u64,
    /// Largest table the meet-in-the-middle solver builds.
    pub mitm_memory_cap: u64,
    /// Evaluate diagonal tuples `(k mod r_1, ..., k mod r_t)` last.
    pub skip_diagonal: bool,
    /// Threads for the exhaustive solver. Results do not depend on it.
    pub workers: usize,
    /// Largest baby-step table for one prime digit.
    pub bsgs_max_baby: u64,
    /// Total group operations the peel attack may spend.
    pub peel_budget: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            exhaustive_budget: 1 << 26,
            mitm_memory_cap: 1 << 22,
            skip_diagonal: false,
            workers: 1,
            bsgs_max_baby: 1 << 22,
            peel_budget: 1 << 26,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    Auto,
    Exhaustive,
    Mitm,
    Collapse,
    Peel,
}

/// Outcome of [`solve`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveReport {
    pub solution: Solution,
    /// Work of the successful method. Failed methods report no work.
    pub total_work: u64,
    pub diagnostics: Vec<Diagnostic>,
}

/// The search problem without the instance's bookkeeping; reductions build
/// smaller ones.
#[derive(Debug, Clone)]
pub(crate) struct Space<'a> {
    pub m: &'a Modulus,
    pub gens: Vec<Natural>,
    pub orders: Vec<Natural>,
    pub beta: Natural,
}

impl<'a> Space<'a> {
    pub fn of(inst: &'a Instance) -> Self {
        Space {
            m: inst.modulus(),
            gens: inst.generators().to_vec(),
            orders: inst.orders().to_vec(),
            beta: inst.beta().clone(),
        }
    }

    pub fn t(&self) -> usize {
        self.gens.len()
    }

    pub fn verify(&self, exponents: &[Natural]) -> bool {
        exponents.len() == self.t() && evaluate(self.m, &self.gens, exponents) == self.beta
    }

    pub fn order_product(&self) -> Natural {
        self.orders.iter().product()
    }
}

pub(crate) fn checked(
    space: &Space<'_>,
    exponents: Vec<Natural>,
    method: Method,
    work: u64,
    detail: Detail,
) -> Result<Solution, SolveError> {
    if !space.verify(&exponents) {
        return Err(SolveError::Unsound { method });
    }
    Ok(Solution {
        exponents,
        method,
        work,
        detail,
    })
}

fn single_dlp(inst: &Instance, config: &SolverConfig) -> Result<Solution, SolveError> {
    let space = Space::of(inst);
    let task = DlpTask::new(
        inst.generators()[0].clone(),
        inst.beta().clone(),
        inst.n().clone(),
        inst.modulus().carmichael().clone(),
    );
    match solve_dlp_with(&task, inst.modulus().carmichael_factorization(), config) {
        Ok((x, work)) => checked(&space, vec![x], Method::SingleDlp, work, Detail::None),
        Err(SolveError::NotInSubgroup) => Err(SolveError::NotFound {
            method: Method::SingleDlp,
        }),
        Err(e) => Err(e),
    }
}

fn peel_solution(inst: &Instance, config: &SolverConfig) -> Result<Solution, SolveError> {
    match attack_peel(inst, config)? {
        PeelOutcome::Solved(solution) => Ok(solution),
        PeelOutcome::Partial { steps } => Err(SolveError::BudgetExceeded {
            what: format!("peel attack ({} unconfirmed residues)", steps.len()),
            needed: Natural::from(config.peel_budget) + 1u32,
            budget: config.peel_budget,
        }),
    }
}

/// Runs one strategy. `Auto` tries, in order, a single DLP (t = 1 only),
/// the collapse reduction, the peel reduction, meet-in-the-middle and
/// exhaustive search, and stops at the first success.
pub fn solve(inst: &Instance, strategy: Strategy, config: &SolverConfig) -> Result<SolveReport, SolveError> {
    type Runner = fn(&Instance, &SolverConfig) -> Result<Solution, SolveError>;
    let plan: Vec<(Method, Runner)> = match strategy {
        Strategy::Exhaustive => vec![(Method::Exhaustive, solve_exhaustive)],
        Strategy::Mitm => vec![(Method::Mitm, solve_mitm)],
        Strategy::Collapse => vec![(Method::Collapse, attack_collapse)],
        Strategy::Peel => vec![(Method::PeelRecurse, peel_solution)],
        Strategy::Auto => {
            let mut plan: Vec<(Method, Runner)> = Vec::new();
            if inst.t() == 1 {
                plan.push((Method::SingleDlp, single_dlp));
            }
            plan.extend([
                (Method::Collapse, attack_collapse as Runner),
                (Method::PeelRecurse, peel_solution),
                (Method::Mitm, solve_mitm),
                (Method::Exhaustive, solve_exhaustive),
            ]);
            plan
        }
    };
    let mut diagnostics = Vec::new();
    let mut last_error = None;
    for (method, run) in plan {
        match run(inst, config) {
            Ok(solution) => {
                return Ok(SolveReport {
                    total_work: solution.work,
                    solution,
                    diagnostics,
                });
            }
            Err(e) => {
                diagnostics.push(Diagnostic {
                    method,
                    budget: e.is_budget(),
                    message: e.to_string(),
                });
                last_error = Some(e);
            }
        }
    }
    match (strategy, last_error) {
        // A single explicit method reports its own error.
        (Strategy::Auto, _) | (_, None) => Err(SolveError::AllMethodsExhausted { diagnostics }),
        (_, Some(e)) => Err(e),
    }
}
