use std::collections::HashMap;

use hyperbolic::LogMatrix;
use schottky::{geometry_constants, SchottkyGroup};
use serde::Serialize;
use symbolic::{Block, WordA2};

use crate::error::DimensionError;
use crate::orbit::{Alphabet, Enumerator};
use crate::shadow::d0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TreeConfig {
    /// Vertices z with d(0, z) < depth, and every ancestor likewise.
    pub depth: f64,
    /// Optional cap on the number of blocks.
    pub max_level: Option<usize>,
    /// Ball constant: B_z has radius c3 e^{-d(0, z)}.
    pub c3: f64,
}

impl TreeConfig {
    pub fn new(depth: f64) -> Self {
        Self { depth, max_level: None, c3: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Vertex {
    #[serde(serialize_with = "blocks_as_text")]
    pub word: Vec<Block>,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    pub level: usize,
    pub distance: f64,
    /// n with n ≤ d(0, z) < n + 1.
    pub annulus: usize,
    pub direction: f64,
    pub radius: f64,
    pub measure: f64,
}

fn blocks_as_text<S: serde::Serializer>(w: &[Block], s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(&WordA2::new(w.to_vec()).map_err(serde::ser::Error::custom)?)
}

/// Orbit points of the positive sub-alphabet words, linked into a tree.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CodeTree {
    pub config: TreeConfig,
    /// Vertex 0 is the root, 0 in the disc.
    pub vertices: Vec<Vertex>,
    /// Exponent of the measure currently assigned, if any.
    pub measure_exponent: Option<f64>,
    /// Path crossings found and resolved while building.
    pub crossings: usize,
}

/// Keeps one parent per vertex: the candidate with the longest path back to
/// the root, ties going to the lexicographically smallest key. `parents[v]`
/// lists candidate parents of v, which must all come earlier in the order.
pub fn resolve_crossings<K: Ord>(parents: &[Vec<usize>], keys: &[K]) -> (Vec<Option<usize>>, usize) {
    let mut depth = vec![0usize; parents.len()];
    let mut chosen = vec![None; parents.len()];
    let mut crossings = 0;
    for v in 0..parents.len() {
        if parents[v].len() > 1 {
            crossings += 1;
        }
        let best =
            parents[v].iter().copied().max_by(|&a, &b| depth[a].cmp(&depth[b]).then_with(|| keys[b].cmp(&keys[a])));
        if let Some(p) = best {
            assert!(p < v, "parents must precede their children");
            depth[v] = depth[p] + 1;
        }
        chosen[v] = best;
    }
    (chosen, crossings)
}

/// Enumerates the positive sub-alphabet words, joins every vertex to the
/// vertices one block shorter that reach it, and resolves crossings.
///
/// Distinct reduced words give distinct orbit points, so vertices are keyed
/// by their words and each one is reached from exactly one shorter word; the
/// resolution step is kept for the general construction.
pub fn build_tree(group: &SchottkyGroup, config: TreeConfig) -> Result<CodeTree, DimensionError> {
    if !(config.depth > 0.0) || !(config.c3 > 0.0) {
        return Err(DimensionError::BadParameter(format!("tree depth {} and c3 {}", config.depth, config.c3)));
    }
    let en = Enumerator::new(group, Alphabet::Positive, config.depth);
    let mut raw: Vec<(Vec<Block>, LogMatrix, f64)> = Vec::new();
    let max_level = config.max_level.unwrap_or(usize::MAX);
    // prefix-closed: the walk only descends from words already inside
    walk_closed(&en, &mut Vec::new(), &LogMatrix::identity(), 0.0, config.depth, max_level, &mut raw);
    raw.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| block_order(&a.0, &b.0)));

    let index: HashMap<&[Block], usize> = raw.iter().enumerate().map(|(i, w)| (w.0.as_slice(), i)).collect();
    let parents: Vec<Vec<usize>> =
        raw.iter().map(|(w, _, _)| if w.is_empty() { Vec::new() } else { vec![index[&w[..w.len() - 1]]] }).collect();
    let keys: Vec<Vec<(u8, i64)>> = raw.iter().map(|(w, _, _)| w.iter().map(block_key).collect()).collect();
    let (chosen, crossings) = resolve_crossings(&parents, &keys);

    let mut vertices: Vec<Vertex> = raw
        .iter()
        .zip(&chosen)
        .map(|((w, m, d), &parent)| Vertex {
            word: w.clone(),
            parent,
            children: Vec::new(),
            level: w.len(),
            distance: *d,
            annulus: d.floor() as usize,
            direction: m.base_direction(),
            radius: config.c3 * (-d).exp(),
            measure: f64::NAN,
        })
        .collect();
    for v in 1..vertices.len() {
        if let Some(p) = vertices[v].parent {
            vertices[p].children.push(v);
        }
    }
    Ok(CodeTree { config, vertices, measure_exponent: None, crossings })
}

fn walk_closed(
    en: &Enumerator,
    word: &mut Vec<Block>,
    m: &LogMatrix,
    d: f64,
    depth: f64,
    max_level: usize,
    out: &mut Vec<(Vec<Block>, LogMatrix, f64)>,
) {
    out.push((word.clone(), *m, d));
    if word.len() >= max_level {
        return;
    }
    let last = word.last().map(|b| b.base);
    for c in en.blocks_after(last) {
        if d + c.d - en.slack >= depth || c.d - d >= depth {
            // both lower bounds for d(0, w c 0) grow with d(0, c 0)
            if last.is_none() {
                continue;
            }
            break;
        }
        let next = m.mul(&c.m);
        let dn = next.base_displacement();
        if dn < depth {
            word.push(c.block);
            walk_closed(en, word, &next, dn, depth, max_level, out);
            word.pop();
        }
    }
}

fn block_key(b: &Block) -> (u8, i64) {
    (b.base as u8, b.exp)
}

fn block_order(a: &[Block], b: &[Block]) -> std::cmp::Ordering {
    a.iter().map(block_key).cmp(b.iter().map(block_key))
}

impl CodeTree {
    pub fn root(&self) -> &Vertex {
        &self.vertices[0]
    }

    pub fn leaves(&self) -> impl Iterator<Item = (usize, &Vertex)> {
        self.vertices.iter().enumerate().filter(|(_, v)| v.children.is_empty())
    }

    /// mu(root) = 1 and mu(z') = e^{-s d(0, z')} / sum_{w in T(z)} e^{-s d(0, w)} mu(z).
    pub fn assign_measure(&mut self, s: f64) {
        self.vertices[0].measure = 1.0;
        for v in 0..self.vertices.len() {
            let children = self.vertices[v].children.clone();
            if children.is_empty() {
                continue;
            }
            // weights relative to the parent keep the exponentials at unit scale
            let dz = self.vertices[v].distance;
            let w: Vec<f64> = children.iter().map(|&c| (-s * (self.vertices[c].distance - dz)).exp()).collect();
            let total: f64 = w.iter().sum();
            let mu = self.vertices[v].measure;
            for (&c, wc) in children.iter().zip(&w) {
                self.vertices[c].measure = wc / total * mu;
            }
        }
        self.measure_exponent = Some(s);
    }

    /// Largest |sum of children's measures - measure| / measure over internal vertices.
    pub fn additivity_error(&self) -> f64 {
        self.vertices
            .iter()
            .filter(|v| !v.children.is_empty())
            .map(|v| {
                let sum: f64 = v.children.iter().map(|&c| self.vertices[c].measure).sum();
                (sum - v.measure).abs() / v.measure
            })
            .fold(0.0, f64::max)
    }

    /// Largest edge length d(z, z'), which is the displacement of the block
    /// on the edge; r(B_z) / r(B_z') ≤ e^{that}.
    pub fn max_edge(&self) -> f64 {
        self.vertices
            .iter()
            .filter_map(|v| v.parent.map(|p| (v, &self.vertices[p])))
            .map(|(v, p)| edge_length(p, v))
            .fold(0.0, f64::max)
    }

    /// Largest r(B_z) / r(B_z') over edges.
    pub fn max_radius_ratio(&self) -> f64 {
        self.vertices.iter().filter_map(|v| v.parent.map(|p| self.vertices[p].radius / v.radius)).fold(0.0, f64::max)
    }

    /// The largest ball constant c for which the balls B(xi_z, c e^{-d(0,z)})
    /// of distinct vertices in a common annulus, at mutual distance at least
    /// `q_min`, are pairwise disjoint. None when there are no such pairs.
    pub fn disjointness_constant(&self, q_min: f64) -> Option<f64> {
        let mut by_annulus: HashMap<usize, Vec<&Vertex>> = HashMap::new();
        for v in self.vertices.iter().skip(1) {
            by_annulus.entry(v.annulus).or_default().push(v);
        }
        let mut best: Option<f64> = None;
        for vs in by_annulus.values() {
            for (i, a) in vs.iter().enumerate() {
                for b in &vs[i + 1..] {
                    if pair_distance(a, b) < q_min {
                        continue;
                    }
                    let c = d0(a.direction, b.direction) / ((-a.distance).exp() + (-b.distance).exp());
                    best = Some(best.map_or(c, |x: f64| x.min(c)));
                }
            }
        }
        best
    }

    pub fn to_json(&self) -> Result<String, DimensionError> {
        serde_json::to_string_pretty(self).map_err(|e| DimensionError::Export(e.to_string()))
    }
}

fn point(v: &Vertex) -> hyperbolic::Complex64 {
    hyperbolic::Complex64::from_polar((v.distance / 2.0).tanh(), v.direction)
}

fn pair_distance(a: &Vertex, b: &Vertex) -> f64 {
    hyperbolic::disc_dist(point(a), point(b))
}

fn edge_length(p: &Vertex, v: &Vertex) -> f64 {
    pair_distance(p, v)
}

/// Minimal distance between the orbit points of two distinct letters.
pub fn letter_separation(group: &SchottkyGroup) -> f64 {
    geometry_constants(group).q_min
}

#[cfg(test)]
mod tests {
    use super::*;
    use schottky::{build_group, Base, GroupParams};

    fn group() -> SchottkyGroup {
        build_group(GroupParams::default()).unwrap()
    }

    #[test]
    fn one_level() {
        let g = group();
        let t = build_tree(&g, TreeConfig { depth: 12.0, max_level: Some(1), c3: 1.0 }).unwrap();
        let kids: Vec<Block> = t.root().children.iter().map(|&c| t.vertices[c].word[0]).collect();
        let mut want = Vec::new();
        for k in 1i64..1000 {
            for e in [k, -k] {
                if g.power_log(Base::H, e).base_displacement() < 12.0 {
                    want.push(Block::h(e));
                }
            }
            if g.power_log(Base::P, k).base_displacement() < 12.0 {
                want.push(Block::p(k));
            }
        }
        assert_eq!(kids.len(), want.len());
        for b in want {
            assert!(kids.contains(&b), "{b}");
        }
    }

    #[test]
    fn crossings_keep_the_longest_branch() {
        // 0 -> 1 -> 3 -> 4, 0 -> 2 -> 4, and 5 reached from 1 and 2 equally
        let parents = vec![vec![], vec![0], vec![0], vec![1], vec![3, 2], vec![2, 1]];
        let keys = vec!["", "a", "b", "aa", "aab", "ab"];
        let (chosen, n) = resolve_crossings(&parents, &keys);
        assert_eq!(n, 2);
        assert_eq!(chosen, vec![None, Some(0), Some(0), Some(1), Some(3), Some(1)]);
    }

    #[test]
    fn measure_is_a_probability() {
        let mut t = build_tree(&group(), TreeConfig::new(10.0)).unwrap();
        t.assign_measure(0.45);
        assert_eq!(t.root().measure, 1.0);
        assert!(t.additivity_error() < 1e-12);
        let leaves: f64 = t.leaves().map(|(_, v)| v.measure).sum();
        assert!((leaves - 1.0).abs() < 1e-12);
        assert!(t.vertices.iter().skip(1).all(|v| v.parent.is_some()));
    }
}
