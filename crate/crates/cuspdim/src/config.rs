use std::path::{Path, PathBuf};

use schottky::GroupParams;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;

pub const DEFAULT_CFG: &str = include_str!("../default.cfg");
pub const CONFIG_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub version: u32,

    pub translation_length: f64,
    pub cusp_height: f64,
    pub cusp_angle: f64,
    pub axis_angle: f64,

    pub endpoint_tol: f64,
    pub endpoint_max_blocks: usize,

    pub code_blocks: usize,

    pub cutoffs: Vec<u64>,
    pub q_max: usize,
    pub q_points: usize,
    pub doa_s_min: f64,
    pub doa_r_min: f64,
    pub doa_tail: f64,

    pub horizon: f64,
    pub level: f64,
    pub time_grid: Vec<f64>,

    pub series_budget: f64,
    pub series_exponents: Vec<f64>,
    pub exponent_bracket: [f64; 2],
    pub exponent_threshold: f64,
    pub exponent_tol: f64,

    pub cover_n: u64,
    pub cover_deltas: Vec<f64>,
    pub cover_budget: f64,
    pub cover_c2: f64,
    pub cover_exponents: Vec<f64>,

    pub frostman_s: f64,
    pub tree_depths: [f64; 2],
    pub ball_samples: usize,

    pub box_cells: [u64; 2],
    pub box_scales: usize,

    pub seed: u64,
    pub threads: usize,
    pub output_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self::parse("").expect("default.cfg is valid")
    }
}

fn defaults() -> toml::Table {
    DEFAULT_CFG.parse().expect("default.cfg parses")
}

impl RunConfig {
    /// The defaults with every key of `text` laid over them.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let user: toml::Table = text.parse().map_err(|e: toml::de::Error| CliError::Config {
            field: "<file>".into(),
            reason: e.message().trim().into(),
        })?;
        let mut table = defaults();
        for (k, v) in &user {
            if !table.contains_key(k) {
                return Err(CliError::Config { field: k.clone(), reason: "unknown key".into() });
            }
            table.insert(k.clone(), v.clone());
        }
        let config: RunConfig = match toml::Value::Table(table).try_into() {
            Ok(c) => c,
            Err(e) => {
                // name the first key that fails on its own
                let field = user
                    .iter()
                    .find(|(k, v)| {
                        let mut t = defaults();
                        t.insert((*k).clone(), (*v).clone());
                        toml::Value::Table(t).try_into::<RunConfig>().is_err()
                    })
                    .map_or_else(|| "<file>".to_string(), |(k, _)| k.clone());
                return Err(CliError::Config { field, reason: e.message().trim().to_string() });
            }
        };
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config { field: "--config".into(), reason: format!("{}: {e}", path.display()) })?;
        Self::parse(&text)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |field: &str, reason: String| Err(CliError::Config { field: field.into(), reason });
        if self.version != CONFIG_VERSION {
            return bad("version", format!("expected {CONFIG_VERSION}, got {}", self.version));
        }
        let positive = [
            ("translation_length", self.translation_length),
            ("cusp_height", self.cusp_height),
            ("endpoint_tol", self.endpoint_tol),
            ("horizon", self.horizon),
            ("level", self.level),
            ("series_budget", self.series_budget),
            ("exponent_tol", self.exponent_tol),
            ("cover_budget", self.cover_budget),
            ("cover_c2", self.cover_c2),
            ("doa_tail", self.doa_tail),
        ];
        for (field, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return bad(field, format!("must be positive and finite, got {v}"));
            }
        }
        if !(self.exponent_threshold > 1.0) {
            return bad("exponent_threshold", format!("must exceed 1, got {}", self.exponent_threshold));
        }
        let counts = [
            ("endpoint_max_blocks", self.endpoint_max_blocks),
            ("code_blocks", self.code_blocks),
            ("q_max", self.q_max),
            ("q_points", self.q_points),
            ("ball_samples", self.ball_samples),
            ("box_scales", self.box_scales),
        ];
        for (field, v) in counts {
            if v == 0 {
                return bad(field, "must be at least 1".into());
            }
        }
        if self.cutoffs.is_empty() || self.cutoffs.contains(&0) {
            return bad("cutoffs", "needs at least one cut-off, all positive".into());
        }
        if self.cover_n == 0 {
            return bad("cover_n", "must be at least 1".into());
        }
        if self.cover_deltas.len() < 2 || self.cover_deltas.iter().any(|d| !(*d > 0.0)) {
            return bad("cover_deltas", "needs at least two positive values".into());
        }
        let [lo, hi] = self.exponent_bracket;
        if !(0.0 <= lo && lo < hi) {
            return bad("exponent_bracket", format!("[{lo}, {hi}] is not an interval in [0, inf)"));
        }
        if !(self.frostman_s > 0.0 && self.frostman_s < 1.0) {
            return bad("frostman_s", format!("must lie in (0, 1), got {}", self.frostman_s));
        }
        let [shallow, deep] = self.tree_depths;
        if !(1.0 <= shallow && shallow < deep && deep.is_finite()) {
            return bad("tree_depths", format!("need 1 <= shallow < deep, got [{shallow}, {deep}]"));
        }
        if self.box_cells[0] == 0 || self.box_cells[1] < 10 * self.box_cells[0] {
            return bad("box_cells", "the grid must span at least a decade".into());
        }
        if self.time_grid.is_empty() || self.time_grid.iter().any(|t| !(*t > 0.0 && *t <= self.horizon)) {
            return bad("time_grid", "times must lie in (0, horizon]".into());
        }
        if self.series_exponents.iter().chain(&self.cover_exponents).any(|s| !(*s >= 0.0)) {
            return bad("series_exponents", "exponents must be nonnegative".into());
        }
        Ok(())
    }

    pub fn group_params(&self) -> GroupParams {
        GroupParams {
            translation_length: self.translation_length,
            cusp_height: self.cusp_height,
            cusp_angle: self.cusp_angle,
            axis_angle: self.axis_angle,
        }
    }

    /// The effective configuration as a config file.
    pub fn canonical(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// SHA-256 of the canonical text, in hex. The output directory is left
    /// out: where results go does not change them.
    pub fn hash(&self) -> String {
        let text = RunConfig { output_dir: PathBuf::new(), ..self.clone() }.canonical();
        Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_round_trip() {
        let c = RunConfig::default();
        assert_eq!(c.cutoffs, vec![2, 3]);
        assert_eq!(c.group_params(), GroupParams::default());
        assert_eq!(RunConfig::parse(&c.canonical()).unwrap(), c);
        assert_eq!(c.hash().len(), 64);
    }

    #[test]
    fn overrides_change_the_hash() {
        let c = RunConfig::parse("q_max = 50\n").unwrap();
        assert_eq!(c.q_max, 50);
        assert_ne!(c.hash(), RunConfig::default().hash());
        let moved = RunConfig::parse("output_dir = \"elsewhere\"\n").unwrap();
        assert_eq!(moved.hash(), RunConfig::default().hash());
    }

    #[test]
    fn errors_name_the_field() {
        let field = |text: &str| match RunConfig::parse(text) {
            Err(CliError::Config { field, .. }) => field,
            other => panic!("{other:?}"),
        };
        assert_eq!(field("cover_budget = -1.0"), "cover_budget");
        assert_eq!(field("cover_budget = \"lots\""), "cover_budget");
        assert_eq!(field("colour = 3"), "colour");
        assert_eq!(field("tree_depths = [12.0, 8.0]"), "tree_depths");
        assert_eq!(field("cutoffs = []"), "cutoffs");
    }
}
