use std::collections::BTreeMap;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    SeriesAbscissa,
    BoxCount,
    Frostman,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::SeriesAbscissa => "series-abscissa",
            Method::BoxCount => "box-count",
            Method::Frostman => "frostman",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DimensionEstimate {
    pub method: Method,
    /// Clamped to [0, 1]; the raw number, if different, is in the diagnostics.
    pub value: f64,
    pub uncertainty: f64,
    /// Set when the procedure's own checks failed; the value is then a guess.
    pub flagged: bool,
    pub diagnostics: BTreeMap<String, f64>,
    pub notes: Vec<String>,
}

impl DimensionEstimate {
    pub(crate) fn new(method: Method, raw: f64, uncertainty: f64) -> Self {
        let mut diagnostics = BTreeMap::new();
        let value = raw.clamp(0.0, 1.0);
        if value != raw {
            diagnostics.insert("raw_value".to_string(), raw);
        }
        Self {
            method,
            value,
            uncertainty: uncertainty.max(f64::EPSILON),
            flagged: false,
            diagnostics,
            notes: Vec::new(),
        }
    }

    pub(crate) fn with(mut self, key: &str, value: f64) -> Self {
        self.diagnostics.insert(key.to_string(), value);
        self
    }

    pub(crate) fn note(mut self, text: impl Into<String>) -> Self {
        self.notes.push(text.into());
        self
    }

    pub fn contains(&self, x: f64) -> bool {
        (self.value - x).abs() <= self.uncertainty
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("estimate serializes")
    }
}
