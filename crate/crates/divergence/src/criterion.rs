use schottky::{Base, SchottkyGroup};
use serde::Serialize;
use symbolic::{reblock, A3Pair, Declared, Evaluate, SequenceSpec, Tail, WordA2};

use crate::error::DivergenceError;

/// Largest prefix, in power blocks, searched for A3 pairs.
pub const MAX_PREFIX_BLOCKS: usize = 1 << 21;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriterionRow {
    pub q: usize,
    /// Sum of d(0, omega_i(0)) over i <= q.
    pub num: f64,
    /// Sum of 2 ln|r_i| over i <= q.
    pub den: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionTable {
    pub n: u64,
    pub rows: Vec<CriterionRow>,
}

/// The first `q` pairs (omega_i, r_i) of the code at cut-off `n`.
pub fn a3_pairs(spec: &SequenceSpec, n: u64, q: usize) -> Result<Vec<A3Pair>, DivergenceError> {
    if n == 0 {
        return Err(DivergenceError::BadCutoff);
    }
    if q == 0 {
        return Ok(Vec::new());
    }
    if !has_large_parabolics(spec, n) {
        return Err(DivergenceError::InsufficientBlocks { wanted: q, achievable: 0 });
    }
    let mut blocks = 2 * q + 8;
    loop {
        let prefix: WordA2 = spec.prefix(blocks);
        let (a3, _) = reblock(&prefix, n)?;
        if a3.len() >= q {
            return Ok(a3.pairs()[..q].to_vec());
        }
        let finite = prefix.len() < blocks;
        if finite || blocks >= MAX_PREFIX_BLOCKS {
            return Err(DivergenceError::InsufficientBlocks { wanted: q, achievable: a3.len() });
        }
        blocks = (blocks * 2).min(MAX_PREFIX_BLOCKS);
    }
}

/// Whether parabolic blocks with |exponent| >= n can recur, as far as the
/// rule tells.
fn has_large_parabolics(spec: &SequenceSpec, n: u64) -> bool {
    match (spec.declared(), spec.tail()) {
        (Some(Declared::Bounded { max_parabolic }), Tail::Blocks) => max_parabolic >= n,
        _ => true,
    }
}

/// Partial sums for each q in `qs` (any order; rows come out sorted).
pub fn criterion_table(
    spec: &SequenceSpec,
    n: u64,
    qs: &[usize],
    group: &SchottkyGroup,
) -> Result<CriterionTable, DivergenceError> {
    let mut qs = qs.to_vec();
    qs.sort_unstable();
    qs.dedup();
    let q_max = qs.last().copied().unwrap_or(0);
    let pairs = a3_pairs(spec, n, q_max)?;
    let mut rows = Vec::with_capacity(qs.len());
    let (mut num, mut den) = (0.0, 0.0);
    let mut next = qs.iter().peekable();
    for (i, pair) in pairs.iter().enumerate() {
        num += pair.omega.evaluate_log(group).base_displacement();
        den += 2.0 * (pair.r.unsigned_abs() as f64).ln();
        while next.peek() == Some(&&(i + 1)) {
            rows.push(CriterionRow { q: i + 1, num, den, ratio: num / den });
            next.next();
        }
    }
    Ok(CriterionTable { n, rows })
}

/// The criterion quotient after q pairs.
pub fn criterion_ratio(
    spec: &SequenceSpec,
    n: u64,
    q: usize,
    group: &SchottkyGroup,
) -> Result<CriterionRow, DivergenceError> {
    if q == 0 {
        return Err(DivergenceError::InsufficientBlocks { wanted: 0, achievable: 0 });
    }
    Ok(criterion_table(spec, n, &[q], group)?.rows[0])
}

/// The first `length` power blocks of the code.
pub fn generate(spec: &SequenceSpec, length: usize) -> WordA2 {
    spec.prefix(length)
}

/// d(0, p^r(0)) for the group's parabolic generator.
pub fn parabolic_distance(group: &SchottkyGroup, r: i64) -> f64 {
    group.power_log(Base::P, r).base_displacement()
}

impl CriterionTable {
    pub fn row(&self, q: usize) -> Option<&CriterionRow> {
        self.rows.iter().find(|r| r.q == q)
    }
}
