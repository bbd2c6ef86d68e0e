//! Construction, validation, solving and attacks for t-multiple discrete
//! logarithm instances: recover `(k_1, ..., k_t)` from
//! `beta = g_1^k_1 * ... * g_t^k_t mod N` for independent units `g_i`.
//!
//! The crate is organized bottom-up:
//!
//! * [`arith`]: bignum modular arithmetic, factoring, multiplicative orders.
//! * [`congruence`]: simultaneous congruences with non-coprime moduli.
//! * [`group`]: subgroup closure, membership and the independence condition.
//! * [`instance`]: the instance type, its JSON form, hardness validators and
//!   the truth-table emitter.
//! * [`solvers`]: exhaustive, meet-in-the-middle, Pohlig-Hellman/BSGS, and the
//!   collapse and peel reductions.
//! * [`indexcalc`]: index calculus over prime fields and the rank
//!   demonstrator for multi-base relations.

pub mod arith;
pub mod congruence;
pub mod group;
pub mod indexcalc;
pub mod instance;
pub mod solvers;
pub mod suites;

pub use arith::{nat, Factorization, Modulus, Natural};
pub use congruence::{Congruence, CongruenceSystem, CrtSolution};
pub use group::{IndependenceVerdict, SubgroupClosure};
pub use instance::{HardnessReport, Instance, Verdict};
pub use solvers::{Method, Solution, Strategy};
