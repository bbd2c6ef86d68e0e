//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Run with `cargo test -p mdlp-cli --test acceptance`.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use mdlp_core::arith::{multiplicative_order, nat, Modulus, Natural};
use mdlp_core::congruence::{solve_system, Congruence, CongruenceSystem};
use mdlp_core::indexcalc::{dlp_via_index_calculus, mdlp_rank_demo, random_tasks, RankReport};
use mdlp_core::instance::{
    generate, theorem1_check, Constraints, GenerateParams, Independence, Instance, InstanceOptions,
    Requirement,
};
use mdlp_core::solvers::{
    attack_collapse, find_all, solve, solve_dlp, solve_exhaustive, solve_mitm, Detail, DlpTask,
    SolverConfig, Strategy,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Check);

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn u(x: &Natural) -> u64 {
    u64::try_from(x).expect("fits in u64")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn table_csv(k2_range: &str) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_mdlp"))
        .args(["table", "--n", "35", "--g1", "13", "--g2", "19", "--k1-range", "1..4", "--k2-range", k2_range, "--format", "csv"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || format!("exit status {:?}", out.status.code()))?;
    String::from_utf8(out.stdout).map_err(|e| e.to_string())
}

fn cells(csv: &str) -> Vec<Vec<u64>> {
    csv.lines()
        .skip(1)
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split(',').skip(1).map(|c| c.parse().unwrap()).collect())
        .collect()
}

fn c1_table() -> Check {
    let got = cells(&table_csv("1..3")?);
    let expected = vec![vec![2, 26, 23, 19], vec![3, 4, 17, 11], vec![22, 6, 8, 34]];
    ensure(got == expected, || format!("got {got:?}"))?;
    Ok("12 cells exact".into())
}

fn c2_row_four() -> Check {
    let csv = table_csv("4..4")?;
    let got = cells(&csv);
    ensure(got == vec![vec![33, 9, 12, 16]], || format!("row {got:?}"))?;
    ensure(csv.contains("# Note:") && csv.contains("reference 13, computed 33"), || {
        "divergence footnote missing".into()
    })?;
    Ok("row k2=4 is (33, 9, 12, 16) with footnote".into())
}

fn c3_orders() -> Check {
    let m = Modulus::from_u64(35).unwrap();
    let brute = |g: u64| (1..=35u64).find(|&e| (0..e).fold(1, |acc, _| acc * g % 35) == 1).unwrap();
    for (g, expected) in [(13u64, 4u64), (19, 6)] {
        let got = u(&multiplicative_order(&nat(g), &m).map_err(|e| e.to_string())?);
        ensure(got == expected && got == brute(g), || format!("ord({g}) = {got}"))?;
    }
    Ok("ord(13) = 4, ord(19) = 6".into())
}

fn c4_collapse() -> Check {
    let inst = Instance::from_target(
        Modulus::from_u64(35).unwrap(),
        vec![nat(13), nat(19)],
        nat(23),
        &InstanceOptions::default(),
    )
    .map_err(|e| e.to_string())?;
    let sol = attack_collapse(&inst, &SolverConfig::default()).map_err(|e| e.to_string())?;
    let Detail::Collapse { base, order, k } = &sol.detail else {
        return Err("no collapse detail".into());
    };
    ensure(*base == nat(2) && *order == nat(12) && *k == nat(7), || format!("{base}^{k}, order {order}"))?;
    ensure((0..7).fold(1u64, |a, _| a * 2 % 35) == 23, || "2^7 != 23".into())?;
    ensure(sol.exponents == vec![nat(3), nat(1)] && inst.verify(&sol.exponents), || {
        format!("split {:?}", sol.exponents)
    })?;
    Ok("2^7 = 23 (mod 35), order 12, split (3, 1)".into())
}

fn c5_crt() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut solvable = 0;
    for _ in 0..1000 {
        let (m1, m2) = (rng.gen_range(1..=10_000u64), rng.gen_range(1..=10_000u64));
        let (r1, r2) = (rng.gen_range(0..m1), rng.gen_range(0..m2));
        let sys = CongruenceSystem::new(vec![
            Congruence::new(nat(r1), nat(m1)).unwrap(),
            Congruence::new(nat(r2), nat(m2)).unwrap(),
        ])
        .unwrap();
        let l = lcm(m1, m2);
        // Every x in [0, l) with x = r1 (mod m1).
        let scan: Vec<u64> = (0..l / m1).map(|j| r1 + m1 * j).filter(|x| x % m2 == r2).collect();
        let divides = r1.abs_diff(r2) % gcd(m1, m2) == 0;
        match solve_system(&sys) {
            Ok(s) => {
                solvable += 1;
                ensure(divides && scan == vec![u(&s.residue)] && u(&s.modulus) == l, || {
                    format!("({r1} mod {m1}, {r2} mod {m2}) -> {} vs scan {scan:?}", s.residue)
                })?;
            }
            Err(_) => ensure(!divides && scan.is_empty(), || format!("({r1} mod {m1}, {r2} mod {m2}) rejected"))?,
        }
    }
    Ok(format!("1000/1000 pairs agree ({solvable} solvable)"))
}

fn small_instances(count: usize, max_product: u64, seed_base: u64, bits: u32, t_max: usize) -> Result<Vec<Instance>, String> {
    let mut out = Vec::with_capacity(count);
    let mut seed = seed_base;
    while out.len() < count {
        let t = 2 + (seed as usize % (t_max - 1));
        let params = GenerateParams::new(seed, bits, t).with_constraints(Constraints {
            max_order_product: Some(max_product),
            ..Constraints::default()
        });
        seed += 1;
        match generate(&params) {
            Ok(inst) => out.push(inst),
            Err(e) if seed - seed_base > 4 * count as u64 => return Err(e.to_string()),
            Err(_) => {}
        }
    }
    Ok(out)
}

fn c6_uniqueness() -> Check {
    let config = SolverConfig::default();
    let insts = small_instances(100, 10_000, 600, 16, 3)?;
    let mut subsets = 0;
    for inst in &insts {
        ensure(inst.independence() == Independence::Verified, || "unverified".into())?;
        let witness = inst.witness().unwrap().to_vec();
        let all = find_all(inst, &config).map_err(|e| e.to_string())?;
        ensure(all == vec![witness.clone()], || format!("N = {}: {} representations", inst.n(), all.len()))?;
        for (i, k) in witness.iter().enumerate() {
            if *k == nat(0) {
                continue;
            }
            let others: Vec<Natural> = inst.generators().iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
            let sub = Instance::from_target(inst.modulus().clone(), others, inst.beta().clone(), &InstanceOptions::default())
                .map_err(|e| e.to_string())?;
            let reps = find_all(&sub, &config).map_err(|e| e.to_string())?;
            ensure(reps.is_empty(), || format!("N = {}: beta without g{}", inst.n(), i + 1))?;
            subsets += 1;
        }
    }
    Ok(format!("100 instances, one witness each; {subsets} omitted-generator subsets empty"))
}

fn c7_diagonal() -> Check {
    let insts = small_instances(50, 20_000, 700, 16, 4)?;
    for inst in &insts {
        let r: Vec<u64> = inst.orders().iter().map(u).collect();
        let product: u64 = r.iter().product();
        let images: BTreeSet<Vec<u64>> = (0..product).map(|k| r.iter().map(|ri| k % ri).collect()).collect();
        let l = r.iter().fold(1, |a, b| lcm(a, *b));
        ensure(images.len() as u64 == l, || format!("orders {r:?}: {} diagonal tuples, lcm {l}", images.len()))?;
    }
    Ok("50 instances: diagonal tuple count = lcm(r_i)".into())
}

fn c8_cross_agreement() -> Check {
    let config = SolverConfig::default();
    let insts = small_instances(100, 100_000, 800, 19, 3)?;
    for inst in &insts {
        ensure(*inst.n() < nat(1_000_000), || "N too large".into())?;
        let ex = solve_exhaustive(inst, &config).map_err(|e| e.to_string())?;
        let mi = solve_mitm(inst, &config).map_err(|e| e.to_string())?;
        let au = solve(inst, Strategy::Auto, &config).map_err(|e| e.to_string())?;
        ensure(inst.verify(&ex.exponents) && inst.verify(&mi.exponents) && inst.verify(&au.solution.exponents), || {
            format!("N = {}: unverified tuple", inst.n())
        })?;
        ensure(ex.exponents == mi.exponents, || format!("N = {}: exhaustive != mitm", inst.n()))?;
    }
    Ok("100 instances: all verify, exhaustive = mitm".into())
}

fn c9_index_calculus() -> Check {
    let tasks = random_tasks(50, 1_000, 100_000, 9);
    let mut solved = 0;
    for (i, task) in tasks.iter().enumerate() {
        let oracle = solve_dlp(task).map_err(|e| e.to_string())?;
        if let Ok(sol) = dlp_via_index_calculus(&task.modulus, &task.base, &task.target, &nat(30), i as u64) {
            ensure(sol.log == oracle, || format!("p = {}: {} vs {}", task.modulus, sol.log, oracle))?;
            solved += 1;
        }
    }
    ensure(solved >= 45, || format!("only {solved}/50 solved"))?;
    Ok(format!("{solved}/50 solved, all agree with BSGS"))
}

fn c10_rank_demo() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut done = 0;
    while done < 20 {
        let p: u64 = rng.gen_range(100..10_000);
        if !mdlp_core::arith::is_prime(&nat(p)) {
            continue;
        }
        let alpha = rng.gen_range(2..p - 1);
        let r = u(&multiplicative_order(&nat(alpha), &Modulus::from_u64(p).unwrap()).unwrap());
        if r < 3 {
            continue;
        }
        let e = loop {
            let e = rng.gen_range(1..r);
            if gcd(e, r) == 1 {
                break e;
            }
        };
        let pow = |b: u64, x: u64| nat(b).modpow(&nat(x), &nat(p));
        let other = pow(alpha, e);
        let gens = vec![pow(alpha, rng.gen_range(0..r)), pow(alpha, rng.gen_range(0..r))];
        let witness = vec![nat(rng.gen_range(0..r)), nat(rng.gen_range(0..r))];
        let beta = gens.iter().zip(&witness).fold(nat(1), |acc, (g, k)| acc * g.modpow(k, &nat(p)) % p);
        let report = mdlp_rank_demo(&nat(p), &[nat(alpha), other.clone()], &gens, &witness, &beta).map_err(|e| e.to_string())?;
        let RankReport::Proportional { pairs, witness_satisfies, .. } = &report else {
            return Err(format!("p = {p}: orders reported unequal"));
        };
        let factor = solve_dlp(&DlpTask::new(nat(alpha), other, nat(p), nat(p - 1))).map_err(|e| e.to_string())?;
        ensure(pairs[0].holds && pairs[0].factor == factor && factor == nat(e), || {
            format!("p = {p}: factor {} vs {factor} (e = {e})", pairs[0].factor)
        })?;
        ensure(*witness_satisfies && report.is_rank_one(), || format!("p = {p}: rank"))?;
        done += 1;
    }
    Ok("20 base pairs proportional with factor log_alpha alpha'".into())
}

fn c11_collapse_equivalence() -> Check {
    let config = SolverConfig::default();
    let mut seed = 1100;
    let mut vulnerable = 0;
    let mut n = 0;
    while n < 200 {
        let requirement = match seed % 3 {
            0 => Requirement::Violate,
            1 => Requirement::Hold,
            _ => Requirement::Any,
        };
        let params = GenerateParams::new(seed, 16 + (seed % 5) as u32, 2 + (seed % 2) as usize).with_constraints(Constraints {
            theorem1: requirement,
            max_order_product: Some(100_000),
            ..Constraints::default()
        });
        seed += 1;
        let Ok(inst) = generate(&params) else { continue };
        let t1 = theorem1_check(&inst).map_err(|e| e.to_string())?;
        let attack = attack_collapse(&inst, &config);
        ensure(attack.is_ok() == !t1.holds, || format!("seed {}: attack {:?}, condition holds {}", seed - 1, attack.is_ok(), t1.holds))?;
        vulnerable += attack.is_ok() as usize;
        n += 1;
    }
    Ok(format!("200 instances agree ({vulnerable} collapse)"))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("table reproduction", Duration::from_secs(1), c1_table),
        ("table row-4 divergence", Duration::from_secs(1), c2_row_four),
        ("orders computed", Duration::from_secs(1), c3_orders),
        ("collapse end-to-end", Duration::from_secs(1), c4_collapse),
        ("CRT solvability and uniqueness", Duration::from_secs(30), c5_crt),
        ("uniqueness and non-degeneracy", Duration::from_secs(60), c6_uniqueness),
        ("diagonal count = lcm", Duration::from_secs(30), c7_diagonal),
        ("solver cross-agreement", Duration::from_secs(120), c8_cross_agreement),
        ("index calculus vs BSGS", Duration::from_secs(120), c9_index_calculus),
        ("rank demonstrator", Duration::from_secs(60), c10_rank_demo),
        ("collapse applicability", Duration::from_secs(60), c11_collapse_equivalence),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = run();
        let elapsed = started.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed > *limit => Err(format!("{msg}, but took {elapsed:.2?} > {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(msg) => println!("PASS {:>2} {name}: {msg} ({elapsed:.2?})", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg} ({elapsed:.2?})", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
