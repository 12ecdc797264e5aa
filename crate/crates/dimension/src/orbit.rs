use std::io::Write;

use hyperbolic::LogMatrix;
use rayon::prelude::*;
use schottky::{geometry_constants, Base, SchottkyGroup};
use serde::Serialize;
use symbolic::Block;

use crate::error::DimensionError;

/// Which words to run over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Alphabet {
    /// All reduced words in h and p.
    Full,
    /// Blocks h^m with m != 0 and p^n with n >= 1.
    Positive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    Trivial,
    Parabolic,
    Full,
    GammaE,
}

impl std::fmt::Display for Source {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Source::Trivial => "trivial",
            Source::Parabolic => "parabolic",
            Source::Full => "full",
            Source::GammaE => "gamma-e",
        })
    }
}

impl std::str::FromStr for Source {
    type Err = DimensionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "trivial" => Ok(Source::Trivial),
            "parabolic" | "p" => Ok(Source::Parabolic),
            "full" => Ok(Source::Full),
            "gamma-e" | "gamma_e" => Ok(Source::GammaE),
            _ => Err(DimensionError::BadParameter(format!("unknown word source '{s}'"))),
        }
    }
}

/// A power block with its matrix and d(0, c(0)).
#[derive(Debug, Clone)]
pub(crate) struct CachedBlock {
    pub block: Block,
    pub m: LogMatrix,
    pub d: f64,
}

/// Depth-first enumeration of block words whose orbit points stay within a
/// distance budget.
///
/// For reduced block words u v the reverse triangle inequality gives
/// d(0, uv0) >= d(0, u0) + d(0, v0) - C(theta_0): the first letter of v and
/// the inverse of the last letter of u have different bases, so their regions
/// are separated by at least theta_0 as seen from 0. Hence every prefix of a
/// word inside the budget R lies inside R + C, which is where the search is
/// cut.
pub(crate) struct Enumerator {
    pub h: Vec<CachedBlock>,
    pub p: Vec<CachedBlock>,
    pub slack: f64,
    pub budget: f64,
}

impl Enumerator {
    pub fn new(group: &SchottkyGroup, alphabet: Alphabet, budget: f64) -> Self {
        let slack = geometry_constants(group).c_theta0;
        let limit = budget + 2.0 * slack;
        let list = |base: Base, both: bool| {
            let mut out = Vec::new();
            for k in 1i64.. {
                let m = group.power_log(base, k);
                let d = m.base_displacement();
                if d > limit {
                    break;
                }
                out.push(CachedBlock { block: Block::new(base, k), m, d });
                if both {
                    let m = group.power_log(base, -k);
                    out.push(CachedBlock { block: Block::new(base, -k), d: m.base_displacement(), m });
                }
            }
            out
        };
        let h = list(Base::H, true);
        let p = list(Base::P, alphabet == Alphabet::Full);
        Self { h, p, slack, budget }
    }

    /// Words explored: d(0, w0) < budget + C.
    pub fn limit(&self) -> f64 {
        self.budget + self.slack
    }

    pub fn blocks_after(&self, last: Option<Base>) -> impl Iterator<Item = &CachedBlock> {
        let (h, p): (&[CachedBlock], &[CachedBlock]) = match last {
            None => (&self.h, &self.p),
            Some(Base::H) => (&[], &self.p),
            Some(Base::P) => (&self.h, &[]),
        };
        h.iter().chain(p.iter())
    }

    /// Visit every explored word below `start`, in block order. The visitor
    /// sees the word, its matrix and d(0, w0).
    pub fn walk<F: FnMut(&[Block], &LogMatrix, f64)>(&self, start: &[Block], m: &LogMatrix, d: f64, visit: &mut F) {
        let mut word = start.to_vec();
        self.walk_inner(&mut word, m, d, visit);
    }

    fn walk_inner<F: FnMut(&[Block], &LogMatrix, f64)>(
        &self,
        word: &mut Vec<Block>,
        m: &LogMatrix,
        d: f64,
        visit: &mut F,
    ) {
        visit(word, m, d);
        let last = word.last().map(|b| b.base);
        let limit = self.limit();
        for c in self.blocks_after(last) {
            // blocks come in order of increasing d(0, c0)
            if d + c.d - self.slack >= limit {
                if last.is_none() {
                    continue;
                }
                break;
            }
            let next = m.mul(&c.m);
            let dn = next.base_displacement();
            if dn >= limit {
                continue;
            }
            word.push(c.block);
            self.walk_inner(word, &next, dn, visit);
            word.pop();
        }
    }

    /// Distances d(0, w0) < budget over all words, the identity included.
    /// Subtrees under each first block run in parallel and are merged in
    /// block order.
    pub fn distances(&self) -> Vec<f64> {
        let firsts: Vec<&CachedBlock> = self.blocks_after(None).filter(|c| c.d < self.limit()).collect();
        let parts: Vec<Vec<f64>> = firsts
            .par_iter()
            .map(|c| {
                let mut out = Vec::new();
                self.walk(&[c.block], &c.m, c.d, &mut |_, _, d| {
                    if d < self.budget {
                        out.push(d);
                    }
                });
                out
            })
            .collect();
        let mut all = vec![0.0];
        for p in parts {
            all.extend(p);
        }
        all
    }
}

/// Orbit distances d(0, gamma 0) < budget for a word source.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitSample {
    pub label: String,
    pub budget: f64,
    /// Sorted.
    pub distances: Vec<f64>,
}

impl OrbitSample {
    pub fn new(label: impl Into<String>, budget: f64, mut distances: Vec<f64>) -> Self {
        distances.retain(|d| *d < budget);
        distances.sort_by(f64::total_cmp);
        Self { label: label.into(), budget, distances }
    }

    pub fn len(&self) -> usize {
        self.distances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.distances.is_empty()
    }

    /// Sum of e^{-s d} over a ≤ d < b.
    pub fn window_sum(&self, s: f64, a: f64, b: f64) -> f64 {
        let lo = self.distances.partition_point(|&d| d < a);
        let hi = self.distances.partition_point(|&d| d < b);
        self.distances[lo..hi].iter().map(|d| (-s * d).exp()).sum()
    }

    /// Number of points with n ≤ d < n + 1 for n = 0..ceil(budget).
    pub fn annulus_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.budget.ceil() as usize];
        for &d in &self.distances {
            counts[d.floor() as usize] += 1;
        }
        counts
    }
}

pub fn orbit_sample(group: &SchottkyGroup, source: Source, budget: f64) -> OrbitSample {
    let distances = match source {
        Source::Trivial => vec![0.0],
        Source::Parabolic => {
            let mut out = vec![0.0];
            for n in 1i64.. {
                let d = group.power_log(Base::P, n).base_displacement();
                if d >= budget {
                    break;
                }
                out.push(d);
                out.push(group.power_log(Base::P, -n).base_displacement());
            }
            out
        }
        Source::Full => Enumerator::new(group, Alphabet::Full, budget).distances(),
        Source::GammaE => Enumerator::new(group, Alphabet::Positive, budget).distances(),
    };
    OrbitSample::new(source.to_string(), budget, distances)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnnulusSum {
    pub n: usize,
    pub count: usize,
    pub sum: f64,
    pub cumulative: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PoincarePartial {
    pub label: String,
    pub s: f64,
    pub budget: f64,
    pub annuli: Vec<AnnulusSum>,
}

impl PoincarePartial {
    pub fn total(&self) -> f64 {
        self.annuli.last().map_or(0.0, |a| a.cumulative)
    }

    /// Cumulative total over the annuli below `r`.
    pub fn total_below(&self, r: f64) -> f64 {
        self.annuli.iter().take_while(|a| ((a.n + 1) as f64) <= r).last().map_or(0.0, |a| a.cumulative)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), DimensionError> {
        let err = |e: csv::Error| DimensionError::Export(e.to_string());
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["n", "count", "sum", "cumulative"]).map_err(err)?;
        for a in &self.annuli {
            w.write_record([
                a.n.to_string(),
                a.count.to_string(),
                format!("{:.12e}", a.sum),
                format!("{:.12e}", a.cumulative),
            ])
            .map_err(err)?;
        }
        w.flush().map_err(|e| DimensionError::Export(e.to_string()))
    }
}

/// Per-annulus sums of e^{-s d(0, gamma 0)} and their running totals.
pub fn poincare_partial(sample: &OrbitSample, s: f64) -> PoincarePartial {
    let n_annuli = sample.budget.ceil() as usize;
    let mut annuli: Vec<AnnulusSum> =
        (0..n_annuli).map(|n| AnnulusSum { n, count: 0, sum: 0.0, cumulative: 0.0 }).collect();
    for &d in &sample.distances {
        let a = &mut annuli[d.floor() as usize];
        a.count += 1;
        a.sum += (-s * d).exp();
    }
    let mut acc = 0.0;
    for a in &mut annuli {
        acc += a.sum;
        a.cumulative = acc;
    }
    PoincarePartial { label: sample.label.clone(), s, budget: sample.budget, annuli }
}

#[cfg(test)]
mod tests {
    use super::*;
    use schottky::{build_group, GroupParams};
    use symbolic::{evaluate_blocks, Evaluate, WordA1};

    fn group() -> SchottkyGroup {
        build_group(GroupParams::default()).unwrap()
    }

    #[test]
    fn parabolic_distances_closed_form() {
        let g = group();
        let s = orbit_sample(&g, Source::Parabolic, 12.0);
        let y0 = g.params().cusp_height;
        let n_max = (y0 * 2.0 * (6.0f64).sinh()).floor() as usize;
        assert_eq!(s.len(), 1 + 2 * n_max);
    }

    #[test]
    fn enumeration_matches_brute_force() {
        // all reduced letter words up to length 7, kept when d < R
        let g = group();
        let r = 7.0;
        let sample = orbit_sample(&g, Source::Full, r);
        let mut brute = vec![0.0];
        let letters = schottky::Letter::ALL;
        let mut frontier: Vec<Vec<schottky::Letter>> = vec![vec![]];
        for _ in 0..9 {
            let mut next = Vec::new();
            for w in &frontier {
                for &l in &letters {
                    if w.last().is_some_and(|&x| x == l.inverse()) {
                        continue;
                    }
                    let mut v = w.clone();
                    v.push(l);
                    let d = WordA1::new(v.clone()).unwrap().evaluate_log(&g).base_displacement();
                    if d < r {
                        brute.push(d);
                    }
                    next.push(v);
                }
            }
            frontier = next;
        }
        brute.sort_by(f64::total_cmp);
        assert_eq!(sample.len(), brute.len());
        for (a, b) in sample.distances.iter().zip(&brute) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn positive_alphabet_words() {
        let g = group();
        let e = Enumerator::new(&g, Alphabet::Positive, 9.0);
        let mut n = 0;
        e.walk(&[], &LogMatrix::identity(), 0.0, &mut |w, m, d| {
            assert!(w.iter().all(|b| b.base == Base::H || b.exp > 0));
            assert!(w.windows(2).all(|p| p[0].base != p[1].base));
            assert!((evaluate_blocks(&g, w).base_displacement() - d).abs() < 1e-9);
            assert!((m.base_displacement() - d).abs() < 1e-12);
            n += 1;
        });
        assert!(n > 10);
    }

    #[test]
    fn partial_sums() {
        let sample = OrbitSample::new("x", 3.0, vec![0.0, 0.5, 1.5, 2.2, 2.9, 3.1]);
        let p = poincare_partial(&sample, 1.0);
        assert_eq!(p.annuli.iter().map(|a| a.count).collect::<Vec<_>>(), vec![2, 1, 2]);
        let want: f64 = [0.0f64, 0.5, 1.5, 2.2, 2.9].iter().map(|d| (-d).exp()).sum();
        assert!((p.total() - want).abs() < 1e-15);
        assert!((p.total_below(2.0) - (1.0 + (-0.5f64).exp() + (-1.5f64).exp())).abs() < 1e-15);
        let mut buf = Vec::new();
        p.write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 4);
    }
}
