use std::collections::BTreeSet;
use std::io::Write;

use hyperbolic::LogMatrix;
use rayon::prelude::*;
use schottky::{geometry_constants, Base, SchottkyGroup};
use serde::Serialize;
use symbolic::{Block, WordA2};

use crate::error::DimensionError;
use crate::shadow::ShadowArc;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoverConfig {
    pub n: u64,
    pub delta: f64,
    /// Members have d(0, gamma 0) below this.
    pub budget: f64,
    /// Shadow constant: arcs have radius c2 e^{-d}.
    pub c2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoverMember {
    pub arc: ShadowArc,
    /// Number of (omega, p^r) pairs.
    pub q: usize,
    pub omega_sum: f64,
    pub log_sum: f64,
    pub ratio: f64,
    #[serde(skip)]
    omegas: Vec<usize>,
    #[serde(skip)]
    rs: Vec<i64>,
}

/// Members per unit annulus, with the number of distinct omega sequences and
/// distinct exponent sequences among them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoverAnnulus {
    pub t: usize,
    pub members: usize,
    pub omegas: usize,
    pub parabolics: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoverFamily {
    pub config: CoverConfig,
    pub members: Vec<CoverMember>,
    pub annuli: Vec<CoverAnnulus>,
    /// Set when nothing within the budget satisfies both inequalities.
    pub empty: bool,
    /// A3 words examined.
    pub visited: usize,
}

/// An omega: h-blocks at both ends, parabolic blocks inside below the cut-off.
#[derive(Debug, Clone)]
struct Omega {
    blocks: Vec<Block>,
    m: LogMatrix,
    d: f64,
}

fn omegas(group: &SchottkyGroup, n: u64, limit: f64, slack: f64) -> Vec<Omega> {
    let mut h = Vec::new();
    for k in 1i64.. {
        let m = group.power_log(Base::H, k);
        if m.base_displacement() > limit + slack {
            break;
        }
        h.push((Block::h(k), m, m.base_displacement()));
        let m = group.power_log(Base::H, -k);
        h.push((Block::h(-k), m, m.base_displacement()));
    }
    let small: Vec<(Block, LogMatrix)> =
        (1..n as i64).flat_map(|k| [k, -k]).map(|k| (Block::p(k), group.power_log(Base::P, k))).collect();
    let mut out = Vec::new();
    let mut stack: Vec<Omega> = h.iter().map(|(b, m, d)| Omega { blocks: vec![*b], m: *m, d: *d }).collect();
    while let Some(w) = stack.pop() {
        for (pb, pm) in &small {
            for (hb, hm, _) in &h {
                let m = w.m.mul(pm).mul(hm);
                let d = m.base_displacement();
                if d < limit + slack {
                    let mut blocks = w.blocks.clone();
                    blocks.push(*pb);
                    blocks.push(*hb);
                    stack.push(Omega { blocks, m, d });
                }
            }
        }
        out.push(w);
    }
    out.sort_by(|a, b| a.d.total_cmp(&b.d).then_with(|| a.blocks.len().cmp(&b.blocks.len())));
    out
}

struct Search<'a> {
    config: CoverConfig,
    omegas: Vec<Omega>,
    /// p^{±k} for N ≤ k < N + cached.len(), by increasing k; larger powers
    /// are computed on demand.
    cached: Vec<(LogMatrix, LogMatrix, f64)>,
    slack: f64,
    group: &'a SchottkyGroup,
}

const CACHED_POWERS: usize = 1 << 14;

#[derive(Clone, Copy)]
struct State {
    m: LogMatrix,
    d: f64,
    omega_sum: f64,
    log_sum: f64,
}

impl Search<'_> {
    fn limit(&self) -> f64 {
        self.config.budget + self.slack
    }

    fn hit(&self, s: &State) -> bool {
        s.omega_sum / s.log_sum <= self.config.delta && 2.0 * self.config.c2 * (-s.d).exp() <= self.config.delta
    }

    /// p^k, p^-k and their common displacement.
    fn p_pair(&self, k: u64) -> (LogMatrix, LogMatrix, f64) {
        match self.cached.get((k - self.config.n) as usize) {
            Some(e) => *e,
            None => {
                let m = self.group.power_log(Base::P, k as i64);
                (m, self.group.power_log(Base::P, -(k as i64)), m.base_displacement())
            }
        }
    }

    /// Either records the word on `path` or extends it by one more pair.
    fn visit(&self, s: State, path: &mut Vec<(usize, i64)>, out: &mut Vec<CoverMember>, visited: &mut usize) {
        *visited += 1;
        if self.hit(&s) {
            if s.d < self.config.budget {
                out.push(self.member(&s, path));
            }
            return;
        }
        self.extend(s, 0..self.omegas.len(), path, out, visited);
    }

    /// Visits gamma omega_i p^{±k} for i in `which`, in order of omega then |k|.
    fn extend(
        &self,
        s: State,
        which: std::ops::Range<usize>,
        path: &mut Vec<(usize, i64)>,
        out: &mut Vec<CoverMember>,
        visited: &mut usize,
    ) {
        let limit = self.limit();
        let floor = s.d + self.p_pair(self.config.n).2 - 2.0 * self.slack;
        for i in which {
            let om = &self.omegas[i];
            if floor + om.d >= limit {
                break;
            }
            let mo = s.m.mul(&om.m);
            let dmo = mo.base_displacement();
            for k in self.config.n.. {
                let (plus, minus, pd) = self.p_pair(k);
                if dmo + pd - self.slack >= limit {
                    break;
                }
                for (r, pm) in [(k as i64, plus), (-(k as i64), minus)] {
                    let m = mo.mul(&pm);
                    let d = m.base_displacement();
                    if d >= limit {
                        continue;
                    }
                    let next =
                        State { m, d, omega_sum: s.omega_sum + om.d, log_sum: s.log_sum + 2.0 * (k as f64).ln() };
                    path.push((i, r));
                    self.visit(next, path, out, visited);
                    path.pop();
                }
            }
        }
    }

    fn member(&self, s: &State, path: &[(usize, i64)]) -> CoverMember {
        let mut blocks = Vec::new();
        for &(i, r) in path {
            blocks.extend_from_slice(&self.omegas[i].blocks);
            blocks.push(Block::p(r));
        }
        let word = WordA2::new(blocks).expect("A3 words alternate");
        CoverMember {
            arc: ShadowArc::from_matrix(word, &s.m, self.config.c2),
            q: path.len(),
            omega_sum: s.omega_sum,
            log_sum: s.log_sum,
            ratio: s.omega_sum / s.log_sum,
            omegas: path.iter().map(|p| p.0).collect(),
            rs: path.iter().map(|p| p.1).collect(),
        }
    }
}

/// A3 words omega_1 p^{r_1} ... omega_q p^{r_q} with d(0, gamma 0) below the
/// budget, taken the first time along each path that both
///   sum d(0, omega_i 0) / sum 2 ln|r_i| ≤ delta   and   2 c2 e^{-d} ≤ delta
/// hold. Taking first hits keeps the family an antichain: no member's arc is
/// nested in another member's through a common prefix.
pub fn cover_family(config: CoverConfig, group: &SchottkyGroup) -> Result<CoverFamily, DimensionError> {
    if config.n < 1 || !(config.delta > 0.0) || !(config.c2 > 0.0) {
        return Err(DimensionError::BadParameter(format!(
            "cover needs N >= 1, delta > 0, c2 > 0; got N = {}, delta = {}, c2 = {}",
            config.n, config.delta, config.c2
        )));
    }
    let slack = geometry_constants(group).c_theta0;
    let limit = config.budget + slack;
    let cached = (config.n..config.n + CACHED_POWERS as u64)
        .map(|k| {
            let m = group.power_log(Base::P, k as i64);
            (m, group.power_log(Base::P, -(k as i64)), m.base_displacement())
        })
        .collect();
    let search = Search { config, omegas: omegas(group, config.n, limit, slack), cached, slack, group };

    // split by the first omega across threads; results are merged in order
    let root = State { m: LogMatrix::identity(), d: 0.0, omega_sum: 0.0, log_sum: 0.0 };
    let parts: Vec<(Vec<CoverMember>, usize)> = (0..search.omegas.len())
        .into_par_iter()
        .map(|i| {
            let mut out = Vec::new();
            let mut visited = 0;
            search.extend(root, i..i + 1, &mut Vec::new(), &mut out, &mut visited);
            (out, visited)
        })
        .collect();
    let mut members = Vec::new();
    let mut visited = 0;
    for (m, v) in parts {
        members.extend(m);
        visited += v;
    }
    Ok(finish(config, members, visited))
}

fn finish(config: CoverConfig, members: Vec<CoverMember>, visited: usize) -> CoverFamily {
    let n_annuli = config.budget.ceil().max(0.0) as usize;
    let mut annuli = Vec::with_capacity(n_annuli);
    for t in 0..n_annuli {
        let inside: Vec<&CoverMember> = members.iter().filter(|m| m.arc.distance.floor() as usize == t).collect();
        let omegas: BTreeSet<&[usize]> = inside.iter().map(|m| m.omegas.as_slice()).collect();
        let parabolics: BTreeSet<&[i64]> = inside.iter().map(|m| m.rs.as_slice()).collect();
        annuli.push(CoverAnnulus { t, members: inside.len(), omegas: omegas.len(), parabolics: parabolics.len() });
    }
    let empty = members.is_empty();
    CoverFamily { config, members, annuli, empty, visited }
}

impl CoverFamily {
    /// Sum of radius^s over the members.
    pub fn power_sum(&self, s: f64) -> f64 {
        self.members.iter().map(|m| m.arc.radius.powf(s)).sum()
    }

    pub fn arcs(&self) -> impl Iterator<Item = &ShadowArc> {
        self.members.iter().map(|m| &m.arc)
    }

    pub fn covers(&self, angle: f64) -> bool {
        self.arcs().any(|a| a.contains(angle))
    }

    pub fn to_json(&self) -> Result<String, DimensionError> {
        serde_json::to_string_pretty(self).map_err(|e| DimensionError::Export(e.to_string()))
    }

    pub fn write_annuli_csv<W: Write>(&self, out: W) -> Result<(), DimensionError> {
        let err = |e: csv::Error| DimensionError::Export(e.to_string());
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["t", "members", "omegas", "parabolics"]).map_err(err)?;
        for a in &self.annuli {
            w.write_record([a.t.to_string(), a.members.to_string(), a.omegas.to_string(), a.parabolics.to_string()])
                .map_err(err)?;
        }
        w.flush().map_err(|e| DimensionError::Export(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use schottky::{build_group, GroupParams};
    use symbolic::{reblock, Evaluate};

    #[test]
    fn members_satisfy_both_inequalities() {
        let g = build_group(GroupParams::default()).unwrap();
        let c = CoverConfig { n: 2, delta: 1.0, budget: 14.0, c2: 1.0 };
        let f = cover_family(c, &g).unwrap();
        assert!(!f.empty);
        for m in &f.members {
            assert!(m.ratio <= c.delta);
            assert!(m.arc.diameter() <= c.delta);
            assert!(m.arc.distance < c.budget);
            // recompute from the word itself
            let (a3, rest) = reblock(&m.arc.word, 2).unwrap();
            assert!(rest.is_empty());
            assert_eq!(a3.len(), m.q);
            let num: f64 = a3.pairs().iter().map(|p| p.omega.evaluate_log(&g).base_displacement()).sum();
            let den: f64 = a3.pairs().iter().map(|p| 2.0 * (p.r.unsigned_abs() as f64).ln()).sum();
            assert!((num / den - m.ratio).abs() < 1e-9);
            assert!((m.arc.word.evaluate_log(&g).base_displacement() - m.arc.distance).abs() < 1e-9);
        }
        let total: usize = f.annuli.iter().map(|a| a.members).sum();
        assert_eq!(total, f.members.len());
    }

    #[test]
    fn antichain() {
        let g = build_group(GroupParams::default()).unwrap();
        let f = cover_family(CoverConfig { n: 2, delta: 1.0, budget: 14.0, c2: 1.0 }, &g).unwrap();
        let words: BTreeSet<String> = f.members.iter().map(|m| m.arc.word.to_string() + " ").collect();
        for w in &words {
            for v in &words {
                assert!(v == w || !v.starts_with(w.as_str()), "{w} is a prefix of {v}");
            }
        }
    }

    #[test]
    fn tiny_budget_is_flagged() {
        let g = build_group(GroupParams::default()).unwrap();
        let f = cover_family(CoverConfig { n: 2, delta: 0.1, budget: 5.0, c2: 1.0 }, &g).unwrap();
        assert!(f.empty);
        assert!(cover_family(CoverConfig { n: 0, delta: 0.1, budget: 5.0, c2: 1.0 }, &g).is_err());
    }
}
