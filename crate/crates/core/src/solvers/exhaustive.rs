//! Brute force over the mixed-radix exponent grid, in lexicographic order
//! (first exponent most significant).
//!
//! The grid is cut into fixed-size blocks of consecutive linear indices.
//! Workers take blocks round-robin and the earliest block with a hit wins,
//! so the answer and the work count match a single-threaded scan exactly.

use std::sync::atomic::{AtomicU64, Ordering};

use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use super::{checked, Detail, Method, SolveError, SolverConfig, Solution, Space};
use crate::arith::{nat, Natural};
use crate::instance::Instance;

// Small blocks under test so parallel scans cross many block boundaries.
const BLOCK: u64 = if cfg!(test) { 97 } else { 1 << 14 };

pub fn solve_exhaustive(inst: &Instance, config: &SolverConfig) -> Result<Solution, SolveError> {
    exhaustive_space(&Space::of(inst), config)
}

/// Every exponent tuple that maps to beta, in lexicographic order.
pub fn find_all(inst: &Instance, config: &SolverConfig) -> Result<Vec<Vec<Natural>>, SolveError> {
    let space = Space::of(inst);
    let grid = Grid::new(&space, config)?;
    let mut hits = Vec::new();
    grid.scan(0, grid.total, false, |index| {
        hits.push(grid.decode(index));
        false
    });
    Ok(hits
        .into_iter()
        .map(|d| d.into_iter().map(nat).collect())
        .collect())
}

pub(crate) fn exhaustive_space(space: &Space<'_>, config: &SolverConfig) -> Result<Solution, SolveError> {
    let grid = Grid::new(space, config)?;
    let skip = config.skip_diagonal && space.t() > 1;
    let (hit, mut work) = grid.search(config.workers.max(1), skip);
    let index = match hit {
        Some(index) => Some(grid.decode(index)),
        None if skip => {
            let (diag, diag_work) = grid.diagonal_search();
            work += diag_work;
            diag
        }
        None => None,
    };
    match index {
        Some(digits) => checked(
            space,
            digits.into_iter().map(nat).collect(),
            Method::Exhaustive,
            work,
            Detail::None,
        ),
        None => Err(SolveError::NotFound {
            method: Method::Exhaustive,
        }),
    }
}

struct Grid<'s, 'a> {
    space: &'s Space<'a>,
    radices: Vec<u64>,
    total: u64,
    pair_gcds: Vec<(usize, usize, u64)>,
}

impl<'s, 'a> Grid<'s, 'a> {
    fn new(space: &'s Space<'a>, config: &SolverConfig) -> Result<Self, SolveError> {
        let total = space.order_product();
        let budget_err = || SolveError::BudgetExceeded {
            what: "exhaustive search space".into(),
            needed: total.clone(),
            budget: config.exhaustive_budget,
        };
        let total_u64 = total
            .to_u64()
            .filter(|t| *t <= config.exhaustive_budget)
            .ok_or_else(budget_err)?;
        let radices: Vec<u64> = space.orders.iter().map(|r| r.to_u64().unwrap()).collect();
        let mut pair_gcds = Vec::new();
        for i in 0..radices.len() {
            for j in i + 1..radices.len() {
                let g = radices[i].gcd(&radices[j]);
                if g > 1 {
                    pair_gcds.push((i, j, g));
                }
            }
        }
        Ok(Grid {
            space,
            radices,
            total: total_u64,
            pair_gcds,
        })
    }

    fn decode(&self, mut index: u64) -> Vec<u64> {
        let mut digits = vec![0; self.radices.len()];
        for (d, r) in digits.iter_mut().zip(&self.radices).rev() {
            *d = index % r;
            index /= r;
        }
        digits
    }

    /// `(k mod r_1, ..., k mod r_t)` for some k: pairwise compatible.
    fn is_diagonal(&self, digits: &[u64]) -> bool {
        self.pair_gcds
            .iter()
            .all(|&(i, j, g)| digits[i].abs_diff(digits[j]).is_multiple_of(g))
    }

    /// Scans `[start, end)`, calling `on_hit` for matches until it returns
    /// true. Returns the number of tuples evaluated.
    fn scan(&self, start: u64, end: u64, skip_diagonal: bool, mut on_hit: impl FnMut(u64) -> bool) -> u64 {
        let m = self.space.m;
        let t = self.radices.len();
        if start >= end {
            return 0;
        }
        let mut digits = self.decode(start);
        let mut prefix = Vec::with_capacity(t + 1);
        prefix.push(Natural::one() % m.n());
        for i in 0..t {
            let next = m.mul(&prefix[i], &m.pow(&self.space.gens[i], &nat(digits[i])));
            prefix.push(next);
        }
        let mut evaluated = 0;
        let mut index = start;
        loop {
            if !(skip_diagonal && self.is_diagonal(&digits)) {
                evaluated += 1;
                if prefix[t] == self.space.beta && on_hit(index) {
                    return evaluated;
                }
            }
            index += 1;
            if index >= end {
                return evaluated;
            }
            let mut pos = t - 1;
            while digits[pos] + 1 == self.radices[pos] {
                digits[pos] = 0;
                pos -= 1;
            }
            digits[pos] += 1;
            prefix[pos + 1] = m.mul(&prefix[pos + 1], &self.space.gens[pos]);
            for j in pos + 1..t {
                prefix[j + 1] = prefix[pos + 1].clone();
            }
        }
    }

    /// First hit in lexicographic order and the sequential work count.
    fn search(&self, workers: usize, skip_diagonal: bool) -> (Option<u64>, u64) {
        let blocks = self.total.div_ceil(BLOCK);
        let run_block = |b: u64| {
            let start = b * BLOCK;
            let end = (start + BLOCK).min(self.total);
            let mut hit = None;
            let evaluated = self.scan(start, end, skip_diagonal, |i| {
                hit = Some(i);
                true
            });
            (b, hit, evaluated)
        };

        let mut results: Vec<(u64, Option<u64>, u64)> = if workers <= 1 {
            let mut out = Vec::new();
            for b in 0..blocks {
                let r = run_block(b);
                let done = r.1.is_some();
                out.push(r);
                if done {
                    break;
                }
            }
            out
        } else {
            let best = AtomicU64::new(u64::MAX);
            std::thread::scope(|scope| {
                let handles: Vec<_> = (0..workers as u64)
                    .map(|w| {
                        let best = &best;
                        let run_block = &run_block;
                        scope.spawn(move || {
                            let mut out = Vec::new();
                            let mut b = w;
                            while b < blocks && b <= best.load(Ordering::Acquire) {
                                let r = run_block(b);
                                if r.1.is_some() {
                                    best.fetch_min(b, Ordering::AcqRel);
                                }
                                out.push(r);
                                b += workers as u64;
                            }
                            out
                        })
                    })
                    .collect();
                handles
                    .into_iter()
                    .flat_map(|h| h.join().expect("exhaustive worker panicked"))
                    .collect()
            })
        };

        results.sort_by_key(|r| r.0);
        let mut work = 0;
        for (_, hit, evaluated) in results {
            work += evaluated;
            if hit.is_some() {
                return (hit, work);
            }
        }
        (None, work)
    }

    /// Walks `k = 0, 1, ..., lcm - 1` over the diagonal tuples.
    fn diagonal_search(&self) -> (Option<Vec<u64>>, u64) {
        let period = self.radices.iter().fold(1u64, |acc, r| acc.lcm(r));
        let mut work = 0;
        for k in 0..period {
            let digits: Vec<u64> = self.radices.iter().map(|r| k % r).collect();
            work += 1;
            let exps: Vec<Natural> = digits.iter().map(|d| nat(*d)).collect();
            if crate::instance::evaluate(self.space.m, &self.space.gens, &exps) == self.space.beta {
                return (Some(digits), work);
            }
        }
        (None, work)
    }
}
