use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{PipelineError, Stage};
use crate::algebraic::BoundConstants;
use crate::embed::GG_MIN_DIMENSION;

/// Ambient dimension and chain exponent used when none is configured.
pub const DEFAULT_DIMENSION: usize = 30;
pub const DEFAULT_EXPONENT_EPSILON: f64 = 0.01;

/// Every tunable of the chain and of the demo stages.
///
/// `exponent_epsilon` (simplex budget `V^{1+ε}`) and `thickness` (the `T`
/// of the embedding and tube) are separate parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub n: usize,
    pub exponent_epsilon: f64,
    pub thickness: f64,
    pub constants: BoundConstants,
    /// Volume at which the intermediate bounds of the chain are evaluated.
    pub reference_volume: f64,
    pub net_epsilon: f64,
    pub domain_radius: f64,
    pub tube_samples: usize,
    pub seed: u64,
    /// Keys set explicitly, which turns their provenance into `Configured`.
    #[serde(skip)]
    pub explicit: BTreeSet<String>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            n: DEFAULT_DIMENSION,
            exponent_epsilon: DEFAULT_EXPONENT_EPSILON,
            thickness: 1.0,
            constants: BoundConstants::default(),
            reference_volume: 1000.0,
            net_epsilon: 0.2,
            domain_radius: 0.8,
            tube_samples: 100_000,
            seed: 0x0b0b_5eed,
            explicit: BTreeSet::new(),
        }
    }
}

const OWN_KEYS: [&str; 8] = [
    "n",
    "exponent_epsilon",
    "thickness",
    "reference_volume",
    "net_epsilon",
    "domain_radius",
    "tube_samples",
    "seed",
];

fn config_error(message: String) -> PipelineError {
    PipelineError::precondition(Stage::Config, message)
}

impl PipelineConfig {
    /// All recognised keys.
    pub fn keys() -> impl Iterator<Item = &'static str> {
        OWN_KEYS.into_iter().chain(BoundConstants::KEYS)
    }

    /// Parses `key = value` lines; `#` starts a comment. Unknown and repeated
    /// keys are errors.
    pub fn parse(text: &str) -> Result<Self, PipelineError> {
        let mut kv = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| config_error(format!("line {}: expected key = value, got {line:?}", lineno + 1)))?;
            let k = k.trim().to_string();
            if kv.insert(k.clone(), v.trim().to_string()).is_some() {
                return Err(config_error(format!("line {}: key {k:?} repeated", lineno + 1)));
            }
        }
        let mut c = Self::default();
        c.apply(&kv)?;
        Ok(c)
    }

    /// Applies overrides and re-validates.
    pub fn apply(&mut self, kv: &BTreeMap<String, String>) -> Result<(), PipelineError> {
        if let Some(k) = kv.keys().find(|k| !Self::keys().any(|known| known == k.as_str())) {
            return Err(config_error(format!(
                "unknown key {k:?}; known keys: {}",
                Self::keys().collect::<Vec<_>>().join(", ")
            )));
        }
        for (k, raw) in kv {
            let bad = |what: &str| config_error(format!("{k}: expected {what}, got {raw:?}"));
            match k.as_str() {
                "n" => self.n = raw.parse().map_err(|_| bad("a positive integer"))?,
                "exponent_epsilon" => self.exponent_epsilon = raw.parse().map_err(|_| bad("a real number"))?,
                "thickness" => self.thickness = raw.parse().map_err(|_| bad("a real number"))?,
                "reference_volume" => self.reference_volume = raw.parse().map_err(|_| bad("a real number"))?,
                "net_epsilon" => self.net_epsilon = raw.parse().map_err(|_| bad("a real number"))?,
                "domain_radius" => self.domain_radius = raw.parse().map_err(|_| bad("a real number"))?,
                "tube_samples" => self.tube_samples = raw.parse().map_err(|_| bad("a positive integer"))?,
                "seed" => self.seed = parse_seed(raw).ok_or_else(|| bad("an unsigned integer"))?,
                _ => {}
            }
        }
        self.constants
            .apply_overrides(kv)
            .map_err(|e| config_error(e.to_string()))?;
        self.explicit.extend(kv.keys().cloned());
        self.validate()
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), PipelineError> {
        self.apply(&BTreeMap::from([(key.to_string(), value.to_string())]))
    }

    pub fn is_explicit(&self, key: &str) -> bool {
        self.explicit.contains(key)
    }

    /// `n/(n−1) − (1+ε)`.
    pub fn exponent_gap(&self) -> f64 {
        let n = self.n as f64;
        n / (n - 1.0) - (1.0 + self.exponent_epsilon)
    }

    pub fn validate(&self) -> Result<(), PipelineError> {
        if self.n < GG_MIN_DIMENSION {
            return Err(config_error(format!("n >= {GG_MIN_DIMENSION} fails: n = {}", self.n)));
        }
        if !(self.exponent_epsilon > 0.0 && self.exponent_epsilon.is_finite()) {
            return Err(config_error(format!(
                "exponent_epsilon > 0 fails: exponent_epsilon = {}",
                self.exponent_epsilon
            )));
        }
        let gap = self.exponent_gap();
        if !(gap > 0.0) {
            return Err(config_error(format!(
                "n/(n-1) - (1 + exponent_epsilon) > 0 fails: {}/{} - (1 + {}) = {gap}",
                self.n,
                self.n - 1,
                self.exponent_epsilon
            )));
        }
        let positive = [
            ("thickness", self.thickness),
            ("net_epsilon", self.net_epsilon),
            ("domain_radius", self.domain_radius),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(config_error(format!("{name} > 0 fails: {name} = {v}")));
            }
        }
        if self.thickness > 1.0 {
            return Err(config_error(format!(
                "thickness <= 1 fails: the embeddings are built with thickness 1, got {}",
                self.thickness
            )));
        }
        if !(self.reference_volume > 1.0 && self.reference_volume.is_finite()) {
            return Err(config_error(format!(
                "reference_volume > 1 fails: reference_volume = {}",
                self.reference_volume
            )));
        }
        if self.tube_samples < crate::embed::MIN_TUBE_SAMPLES {
            return Err(config_error(format!(
                "tube_samples >= {} fails: tube_samples = {}",
                crate::embed::MIN_TUBE_SAMPLES,
                self.tube_samples
            )));
        }
        self.constants.validate().map_err(|e| config_error(e.to_string()))
    }

    /// Canonical `key = value` text; parses back to an equal configuration
    /// up to the explicit-key set.
    pub fn to_text(&self) -> String {
        let c = &self.constants;
        let rows: Vec<(&str, String)> = vec![
            ("n", self.n.to_string()),
            ("exponent_epsilon", fmt(self.exponent_epsilon)),
            ("thickness", fmt(self.thickness)),
            ("reference_volume", fmt(self.reference_volume)),
            ("net_epsilon", fmt(self.net_epsilon)),
            ("domain_radius", fmt(self.domain_radius)),
            ("tube_samples", self.tube_samples.to_string()),
            ("seed", self.seed.to_string()),
            ("c1", fmt(c.c1)),
            ("c2", fmt(c.c2)),
            ("c3", fmt(c.c3)),
            ("c4", fmt(c.c4)),
            ("c5", fmt(c.c5)),
            ("margulis_mu3", fmt(c.margulis_mu3)),
            ("lambda1_floor", fmt(c.lambda1_floor)),
            ("cn", fmt(c.cn)),
            ("c_dn", fmt(c.c_dn)),
            ("symmetry_multiplier", c.symmetry_multiplier.to_string()),
        ];
        rows.into_iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
    }
}

fn fmt(x: f64) -> String {
    format!("{x:?}")
}

fn parse_seed(raw: &str) -> Option<u64> {
    match raw.strip_prefix("0x").or_else(|| raw.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(&hex.replace('_', ""), 16).ok(),
        None => raw.replace('_', "").parse().ok(),
    }
}
