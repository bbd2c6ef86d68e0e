use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use mdlp_core::arith::gcd_lcm;
use mdlp_core::indexcalc::{self, IndexCalcError};
use mdlp_core::instance::{
    self, generate, hardness_report, reference_divergences, truth_table, Constraints,
    GenerateParams, InstanceDoc, InstanceError, InstanceOptions,
};
use mdlp_core::solvers::{self, solve_dlp, SolveError, SolverConfig};
use mdlp_core::{HardnessReport, Instance, Natural};
use serde_json::json;

use crate::args::{
    GenArgs, IndexcalcArgs, LoadArgs, RankdemoArgs, SolveArgs, TableArgs, TableFormat, ValidateArgs,
};
use crate::report::{to_value, Failure, Output, Status};

type CmdResult = Result<Output, Failure>;

fn instance_failure(e: InstanceError) -> Failure {
    let status = match e {
        InstanceError::GenerationFailed { .. } | InstanceError::TableTooLarge { .. } => Status::Budget,
        _ => Status::Invalid,
    };
    Failure::new(status, e)
}

pub fn load(args: &LoadArgs) -> Result<Instance, Failure> {
    let text = fs::read_to_string(&args.instance)
        .map_err(|e| Failure::invalid(format!("{}: {e}", args.instance.display())))?;
    let opts = InstanceOptions {
        cap: args.cap,
        allow_unverified: args.allow_unverified,
    };
    instance::from_json(&text, &opts).map_err(instance_failure)
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

/// One line per condition, e.g. `theorem1: FAIL (gcd(4, 6) = 2 divides |3 - 1|)`.
fn summarize(inst: &Instance, report: &HardnessReport) -> Vec<String> {
    let orders = inst.orders();
    let witness = inst.witness().unwrap_or_default();
    let gcd = |i: usize, j: usize| gcd_lcm(&orders[i], &orders[j]).map(|(g, _)| g).expect("orders are positive");
    let diff = |i: usize, j: usize| {
        if witness[i] >= witness[j] {
            format!("|{} - {}|", witness[i], witness[j])
        } else {
            format!("|{} - {}|", witness[j], witness[i])
        }
    };
    let t1 = &report.theorem1;
    let line1 = match (t1.holds, t1.pair) {
        (true, Some((i, j))) => format!(
            "theorem1: PASS (gcd(r{}, r{}) = gcd({}, {}) = {} does not divide {})",
            i + 1,
            j + 1,
            orders[i],
            orders[j],
            gcd(i, j),
            diff(i, j)
        ),
        (true, None) => "theorem1: PASS".to_string(),
        (false, _) if inst.t() >= 2 => {
            let collapse = t1
                .collapse
                .as_ref()
                .map(|c| format!("; every k_i = {} (mod r_i)", c.residue))
                .unwrap_or_default();
            format!(
                "theorem1: FAIL (gcd({}, {}) = {} divides {}{collapse})",
                orders[0],
                orders[1],
                gcd(0, 1),
                diff(0, 1)
            )
        }
        (false, _) => "theorem1: FAIL (a single generator always collapses)".to_string(),
    };
    let t2 = &report.theorem2;
    let line2 = match &t2.violation {
        None => "theorem2: PASS".to_string(),
        Some(v) => format!(
            "theorem2: FAIL (product omitting g{} is 1 mod {})",
            v.index + 1,
            v.prime
        ),
    };
    vec![line1, line2, format!("verdict: {}", report.verdict.as_str())]
}

fn hardness_payload(inst: &Instance) -> Result<serde_json::Value, Failure> {
    let report = hardness_report(inst).map_err(instance_failure)?;
    let summary = summarize(inst, &report);
    Ok(json!({ "hardness": to_value(&report), "summary": summary }))
}

pub fn gen(a: &GenArgs) -> CmdResult {
    let params = GenerateParams {
        max_attempts: a.max_attempts,
        ..GenerateParams::new(a.seed, a.bits, a.t)
    }
    .with_constraints(Constraints {
        theorem1: a.require_theorem1.into(),
        theorem2: a.require_theorem2.into(),
        max_order_product: a.max_order_product,
        min_order: a.min_order,
    });
    let inst = generate(&params).map_err(instance_failure)?;
    if let Some(path) = &a.out {
        write_file(path, &instance::to_json(&inst))?;
    }
    Ok(Output {
        instance: Some(InstanceDoc::from(&inst)),
        result: hardness_payload(&inst)?,
        work: None,
        raw: None,
    })
}

pub fn validate(a: &ValidateArgs) -> CmdResult {
    let inst = load(&a.load)?;
    if inst.witness().is_none() {
        return Err(Failure::invalid(InstanceError::WitnessRequired));
    }
    Ok(Output::json(hardness_payload(&inst)?).with_instance(InstanceDoc::from(&inst)))
}

fn solve_failure(e: SolveError) -> Failure {
    let status = if e.is_budget() {
        Status::Budget
    } else {
        match e {
            SolveError::InvalidTask(_) => Status::Invalid,
            _ => Status::NotFound,
        }
    };
    let payload = match &e {
        SolveError::AllMethodsExhausted { diagnostics } => Some(json!({ "diagnostics": to_value(diagnostics) })),
        _ => None,
    };
    let failure = Failure::new(status, e);
    match payload {
        Some(p) => failure.with_payload(p),
        None => failure,
    }
}

pub fn solve(a: &SolveArgs) -> CmdResult {
    let inst = load(&a.load)?;
    if a.workers == 0 {
        return Err(Failure::invalid("--workers must be at least 1"));
    }
    let d = SolverConfig::default();
    let config = SolverConfig {
        exhaustive_budget: a.exhaustive_budget.unwrap_or(d.exhaustive_budget),
        mitm_memory_cap: a.mitm_memory.unwrap_or(d.mitm_memory_cap),
        skip_diagonal: a.skip_diagonal,
        workers: a.workers,
        bsgs_max_baby: a.bsgs_max_baby.unwrap_or(d.bsgs_max_baby),
        peel_budget: a.peel_budget.unwrap_or(d.peel_budget),
    };
    let report = solvers::solve(&inst, a.strategy.into(), &config).map_err(solve_failure)?;
    let work = report.total_work;
    Ok(Output::json(&report)
        .with_instance(InstanceDoc::from(&inst))
        .with_work(work))
}

pub fn table(a: &TableArgs) -> CmdResult {
    let table = truth_table(&a.n, &a.g1, &a.g2, a.k1_range.clone(), a.k2_range.clone(), a.budget)
        .map_err(instance_failure)?;
    let divergences = reference_divergences(&table);
    let mut out = String::new();
    let join = |cells: Vec<String>, sep: &str| cells.join(sep);
    match a.format {
        TableFormat::Csv => {
            let mut header = vec!["k2\\k1".to_string()];
            header.extend(table.k1.iter().map(u64::to_string));
            writeln!(out, "{}", join(header, ",")).unwrap();
            for (k2, row) in table.k2.iter().zip(&table.rows) {
                let mut cells = vec![k2.to_string()];
                cells.extend(row.iter().map(Natural::to_string));
                writeln!(out, "{}", join(cells, ",")).unwrap();
            }
        }
        TableFormat::Markdown => {
            let mut header = vec!["k2 \\ k1".to_string()];
            header.extend(table.k1.iter().map(u64::to_string));
            writeln!(out, "| {} |", join(header, " | ")).unwrap();
            writeln!(out, "|{}", "---|".repeat(table.k1.len() + 1)).unwrap();
            for (k2, row) in table.k2.iter().zip(&table.rows) {
                let mut cells = vec![k2.to_string()];
                cells.extend(row.iter().map(Natural::to_string));
                writeln!(out, "| {} |", join(cells, " | ")).unwrap();
            }
        }
    }
    if !divergences.is_empty() {
        let prefix = match a.format {
            TableFormat::Csv => "# ",
            TableFormat::Markdown => "",
        };
        if a.format == TableFormat::Markdown {
            out.push('\n');
        }
        writeln!(
            out,
            "{prefix}Note: {} cell(s) differ from the commonly reproduced table for N = 35, g = (13, 19), \
             which assumes 19^4 = 1 (mod 35); the order of 19 is 6.",
            divergences.len()
        )
        .unwrap();
        for d in &divergences {
            writeln!(
                out,
                "{prefix}  (k1 = {}, k2 = {}): reference {}, computed {}",
                d.k1, d.k2, d.reference, d.computed
            )
            .unwrap();
        }
    }
    Ok(Output::raw(out))
}

fn indexcalc_failure(e: IndexCalcError) -> Failure {
    let status = if e.is_budget() {
        Status::Budget
    } else {
        match e {
            IndexCalcError::OutsideSubgroup { .. } => Status::NotFound,
            IndexCalcError::Dlp(ref inner) if inner.is_budget() => Status::Budget,
            _ => Status::Invalid,
        }
    };
    Failure::new(status, e)
}

pub fn indexcalc(a: &IndexcalcArgs) -> CmdResult {
    if let Some(count) = a.cross_check {
        return cross_check(count, &a.bound, a.seed);
    }
    let (p, alpha, beta) = match (&a.p, &a.alpha, &a.beta) {
        (Some(p), Some(alpha), Some(beta)) => (p, alpha, beta),
        _ => return Err(Failure::invalid("--p, --alpha and --beta are required")),
    };
    let sol = indexcalc::dlp_via_index_calculus(p, alpha, beta, &a.bound, a.seed).map_err(indexcalc_failure)?;
    Ok(Output::json(json!({
        "log": sol.log.to_string(),
        "solution": to_value(&sol),
    })))
}

fn cross_check(count: usize, bound: &Natural, seed: u64) -> CmdResult {
    let tasks = indexcalc::random_tasks(count, 1_000, 100_000, seed);
    let mut solved = 0usize;
    let mut agreed = 0usize;
    let mut rows = Vec::with_capacity(count);
    for (i, task) in tasks.iter().enumerate() {
        let oracle = solve_dlp(task).map_err(|e| Failure::new(Status::NotFound, e))?;
        let got = indexcalc::dlp_via_index_calculus(&task.modulus, &task.base, &task.target, bound, seed.wrapping_add(i as u64));
        let (log, agrees) = match &got {
            Ok(sol) => {
                solved += 1;
                let ok = sol.log == oracle;
                agreed += ok as usize;
                (Some(sol.log.to_string()), Some(ok))
            }
            Err(_) => (None, None),
        };
        rows.push(json!({
            "p": task.modulus.to_string(),
            "alpha": task.base.to_string(),
            "beta": task.target.to_string(),
            "bsgs": oracle.to_string(),
            "index_calculus": log,
            "agrees": agrees,
            "error": got.err().map(|e| e.to_string()),
        }));
    }
    let summary = format!(
        "index calculus agrees with BSGS on {agreed}/{solved} solved tasks ({solved}/{count} solved)"
    );
    let payload = json!({
        "tasks": count,
        "solved": solved,
        "agreed": agreed,
        "summary": summary,
        "rows": rows,
    });
    if agreed != solved {
        return Err(Failure::new(Status::NotFound, "index calculus disagrees with BSGS").with_payload(payload));
    }
    Ok(Output::json(payload))
}

pub fn rankdemo(a: &RankdemoArgs) -> CmdResult {
    if a.g.len() != a.k.len() {
        return Err(Failure::invalid("--g and --k need the same number of entries"));
    }
    if a.p < mdlp_core::nat(3) {
        return Err(Failure::invalid("--p must be an odd prime"));
    }
    let beta = match &a.beta {
        Some(b) => b % &a.p,
        None => a
            .g
            .iter()
            .zip(&a.k)
            .fold(Natural::from(1u32), |acc, (g, k)| acc * g.modpow(k, &a.p) % &a.p),
    };
    let report = indexcalc::mdlp_rank_demo(&a.p, &a.alpha, &a.g, &a.k, &beta).map_err(indexcalc_failure)?;
    Ok(Output::json(json!({
        "beta": beta.to_string(),
        "rank_one": report.is_rank_one(),
        "report": to_value(&report),
    })))
}
