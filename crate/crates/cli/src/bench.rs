use std::fmt::Write as _;
use std::time::Instant;

use mdlp_core::instance::{generate, hardness_report};
use mdlp_core::solvers::{solve, SolverConfig};
use mdlp_core::suites::{suite, SUITE_NAMES};
use mdlp_core::Strategy;

use crate::args::BenchArgs;
use crate::report::{Failure, Output, Status};

pub const HEADER: &str = "n_bits,t,method,work_ops,wall_ms,verdict";

fn strategy_name(s: Strategy) -> &'static str {
    match s {
        Strategy::Auto => "auto",
        Strategy::Exhaustive => "exhaustive",
        Strategy::Mitm => "mitm",
        Strategy::Collapse => "collapse",
        Strategy::Peel => "peel",
    }
}

/// One row per (instance, strategy). `work_ops` is empty when the strategy
/// fails; `verdict` is the instance's hardness verdict.
pub fn run(a: &BenchArgs) -> Result<Output, Failure> {
    let suite = suite(&a.suite).ok_or_else(|| {
        Failure::invalid(format!("unknown suite {:?} (known: {})", a.suite, SUITE_NAMES.join(", ")))
    })?;
    let config = SolverConfig::default();
    let mut csv = String::new();
    writeln!(csv, "{HEADER}").unwrap();
    for params in &suite.instances {
        let inst = generate(params).map_err(|e| Failure::new(Status::Budget, e))?;
        let verdict = hardness_report(&inst)
            .map(|r| r.verdict.as_str())
            .expect("generated instances carry a witness");
        for &strategy in &suite.strategies {
            let started = Instant::now();
            let outcome = solve(&inst, strategy, &config);
            let wall_ms = started.elapsed().as_secs_f64() * 1e3;
            let (method, work) = match &outcome {
                Ok(r) if strategy == Strategy::Auto => {
                    (format!("auto:{}", r.solution.method), r.total_work.to_string())
                }
                Ok(r) => (strategy_name(strategy).to_string(), r.total_work.to_string()),
                Err(_) => (strategy_name(strategy).to_string(), String::new()),
            };
            writeln!(
                csv,
                "{},{},{method},{work},{wall_ms:.3},{verdict}",
                inst.n().bits(),
                inst.t()
            )
            .unwrap();
        }
    }
    match &a.out {
        Some(path) => {
            std::fs::write(path, &csv).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))?;
            Ok(Output::raw(String::new()))
        }
        None => Ok(Output::raw(csv)),
    }
}
