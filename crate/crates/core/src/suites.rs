//! Named benchmark suites: fixed sets of generation parameters and the
//! solver strategies to time on each instance.

use crate::instance::{Constraints, GenerateParams, Requirement};
use crate::solvers::Strategy;

#[derive(Debug, Clone)]
pub struct Suite {
    pub name: &'static str,
    pub description: &'static str,
    pub instances: Vec<GenerateParams>,
    pub strategies: Vec<Strategy>,
}

pub const SUITE_NAMES: &[&str] = &["empty", "smoke", "t2", "mixed", "attacks"];

const GENERIC: &[Strategy] = &[Strategy::Exhaustive, Strategy::Mitm, Strategy::Auto];
const ALL: &[Strategy] = &[
    Strategy::Exhaustive,
    Strategy::Mitm,
    Strategy::Collapse,
    Strategy::Peel,
    Strategy::Auto,
];

fn bounded(max_order_product: u64, min_order: u64) -> Constraints {
    Constraints {
        max_order_product: Some(max_order_product),
        min_order: Some(min_order),
        ..Constraints::default()
    }
}

pub fn suite(name: &str) -> Option<Suite> {
    let (description, instances, strategies): (_, Vec<GenerateParams>, &[Strategy]) = match name {
        "empty" => ("no instances", Vec::new(), GENERIC),
        "smoke" => (
            "four small two-generator instances",
            (0..4)
                .map(|seed| GenerateParams::new(seed, 16, 2).with_constraints(bounded(4096, 4)))
                .collect(),
            GENERIC,
        ),
        "t2" => (
            "two generators of order at least 32, growing moduli",
            (0..12)
                .map(|seed| {
                    GenerateParams::new(seed, 18 + 2 * (seed as u32 % 5), 2)
                        .with_constraints(bounded(1 << 20, 32))
                })
                .collect(),
            GENERIC,
        ),
        "mixed" => (
            "one to three generators, 20 to 28 bit moduli",
            (0..12)
                .map(|seed| {
                    GenerateParams::new(seed, 20 + 4 * (seed as u32 % 3), 1 + seed as usize % 3)
                        .with_constraints(bounded(1 << 18, 4))
                })
                .collect(),
            GENERIC,
        ),
        "attacks" => (
            "instances forced to resist or fail each hardness condition",
            [
                (Requirement::Hold, Requirement::Hold),
                (Requirement::Violate, Requirement::Hold),
                (Requirement::Hold, Requirement::Violate),
                (Requirement::Violate, Requirement::Violate),
            ]
            .into_iter()
            .enumerate()
            .flat_map(|(i, (theorem1, theorem2))| {
                (0..3).map(move |j| {
                    GenerateParams::new((i * 3 + j) as u64, 20, 2).with_constraints(Constraints {
                        theorem1,
                        theorem2,
                        ..bounded(1 << 16, 4)
                    })
                })
            })
            .collect(),
            ALL,
        ),
        _ => return None,
    };
    Some(Suite {
        name: SUITE_NAMES.iter().find(|n| **n == name).expect("listed"),
        description,
        instances,
        strategies: strategies.to_vec(),
    })
}
