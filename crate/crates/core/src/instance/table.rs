//! Truth tables of `g1^k1 * g2^k2 mod N`.

use std::ops::RangeInclusive;

use num_traits::One;
use serde::Serialize;

use super::InstanceError;
use crate::arith::{mod_pow, nat, ArithError, Natural};

/// Rows are indexed by `k2`, columns by `k1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthTable {
    pub n: Natural,
    pub g1: Natural,
    pub g2: Natural,
    pub k1: Vec<u64>,
    pub k2: Vec<u64>,
    pub rows: Vec<Vec<Natural>>,
}

impl TruthTable {
    pub fn cell(&self, k1: u64, k2: u64) -> Option<&Natural> {
        let col = self.k1.iter().position(|&k| k == k1)?;
        let row = self.k2.iter().position(|&k| k == k2)?;
        Some(&self.rows[row][col])
    }
}

/// The widely reproduced table for `N = 35, g1 = 13, g2 = 19`,
/// `k1, k2 in 1..=4`, `REFERENCE_TABLE_35[k2 - 1][k1 - 1]`. Its last row
/// assumes `19^4 = 1 (mod 35)`; the true order of 19 is 6.
pub const REFERENCE_TABLE_35: [[u64; 4]; 4] = [
    [2, 26, 23, 19],
    [3, 4, 17, 11],
    [22, 6, 8, 34],
    [13, 29, 27, 1],
];

/// A computed cell that disagrees with [`REFERENCE_TABLE_35`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Divergence {
    pub k1: u64,
    pub k2: u64,
    pub reference: u64,
    #[serde(with = "crate::arith::dec")]
    pub computed: Natural,
}

fn range_len(r: &RangeInclusive<u64>) -> u128 {
    if r.start() > r.end() {
        0
    } else {
        (*r.end() - *r.start()) as u128 + 1
    }
}

/// Cells are computed with the exponents exactly as given; nothing is
/// reduced modulo an assumed order.
pub fn truth_table(
    n: &Natural,
    g1: &Natural,
    g2: &Natural,
    k1: RangeInclusive<u64>,
    k2: RangeInclusive<u64>,
    budget: u64,
) -> Result<TruthTable, InstanceError> {
    if *n < nat(2) {
        return Err(ArithError::InvalidModulus(n.clone()).into());
    }
    let cells = range_len(&k1) * range_len(&k2);
    if cells > budget as u128 {
        return Err(InstanceError::TableTooLarge { cells, budget });
    }
    let k1: Vec<u64> = k1.collect();
    let k2: Vec<u64> = k2.collect();
    let cols: Vec<Natural> = k1
        .iter()
        .map(|&k| mod_pow(g1, &nat(k), n))
        .collect::<Result<_, _>>()?;
    let rows = k2
        .iter()
        .map(|&k| {
            let h = mod_pow(g2, &nat(k), n)?;
            Ok(cols.iter().map(|c| (c * &h) % n).collect())
        })
        .collect::<Result<Vec<Vec<Natural>>, ArithError>>()?;
    Ok(TruthTable {
        n: n.clone(),
        g1: g1.clone(),
        g2: g2.clone(),
        k1,
        k2,
        rows,
    })
}

/// Cells of `table` that fall inside the reference grid and disagree with
/// it. Empty unless the table is over `N = 35, g = (13, 19)`.
pub fn reference_divergences(table: &TruthTable) -> Vec<Divergence> {
    if table.n != nat(35) || table.g1 != nat(13) || table.g2 != nat(19) {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (row, &k2) in table.k2.iter().enumerate() {
        for (col, &k1) in table.k1.iter().enumerate() {
            if !(1..=4).contains(&k1) || !(1..=4).contains(&k2) {
                continue;
            }
            let reference = REFERENCE_TABLE_35[(k2 - 1) as usize][(k1 - 1) as usize];
            let computed = &table.rows[row][col];
            if *computed != nat(reference) {
                out.push(Divergence {
                    k1,
                    k2,
                    reference,
                    computed: computed.clone(),
                });
            }
        }
    }
    out
}

/// General-t enumeration: every exponent tuple in the product of `ranges`
/// (last coordinate fastest) with its value.
pub fn truth_table_flat(
    n: &Natural,
    generators: &[Natural],
    ranges: &[RangeInclusive<u64>],
    budget: u64,
) -> Result<Vec<(Vec<u64>, Natural)>, InstanceError> {
    if *n < nat(2) {
        return Err(ArithError::InvalidModulus(n.clone()).into());
    }
    if generators.len() != ranges.len() {
        return Err(InstanceError::InvalidParameters(
            "one exponent range per generator".into(),
        ));
    }
    let cells = ranges.iter().map(range_len).product::<u128>();
    if cells > budget as u128 {
        return Err(InstanceError::TableTooLarge { cells, budget });
    }
    let mut out = vec![(Vec::new(), Natural::one() % n)];
    for (g, r) in generators.iter().zip(ranges) {
        let powers: Vec<(u64, Natural)> = r.clone().map(|k| (k, g.modpow(&nat(k), n))).collect();
        out = out
            .into_iter()
            .flat_map(|(ks, v)| {
                powers.iter().map(move |(k, p)| {
                    let mut ks = ks.clone();
                    ks.push(*k);
                    (ks, (&v * p) % n)
                })
            })
            .collect();
    }
    Ok(out)
}
