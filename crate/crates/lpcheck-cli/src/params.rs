//! Effective run parameters: defaults, overridden by a flat key=value config
//! file, overridden in turn by command-line flags.

use anyhow::{bail, Context, Result};
use std::fs;
use std::path::PathBuf;

#[derive(Debug, Clone)]
pub struct Params {
    pub seed: u64,
    pub delta: f64,
    pub window: f64,
    pub blocks: i32,
    pub neg_blocks: i32,
    pub trials: usize,
    pub tol: f64,
    pub group: Vec<u32>,
    pub dim: usize,
    pub csv: Option<PathBuf>,
    pub json: Option<PathBuf>,
}

#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub delta: Option<f64>,
    pub window: Option<f64>,
    pub blocks: Option<i32>,
    pub neg_blocks: Option<i32>,
    pub trials: Option<usize>,
    pub tol: Option<f64>,
    pub group: Option<String>,
    pub dim: Option<usize>,
    pub csv: Option<PathBuf>,
    pub json: Option<PathBuf>,
}

impl Overrides {
    fn apply(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "seed" => self.seed = Some(value.parse().context("seed")?),
            "delta" => self.delta = Some(value.parse().context("delta")?),
            "window" => self.window = Some(value.parse().context("window")?),
            "blocks" => self.blocks = Some(value.parse().context("blocks")?),
            "neg_blocks" => self.neg_blocks = Some(value.parse().context("neg_blocks")?),
            "trials" => self.trials = Some(value.parse().context("trials")?),
            "tol" => self.tol = Some(value.parse().context("tol")?),
            "group" => self.group = Some(value.to_string()),
            "dim" => self.dim = Some(value.parse().context("dim")?),
            "csv" => self.csv = Some(PathBuf::from(value)),
            "json" => self.json = Some(PathBuf::from(value)),
            other => bail!("unknown config key `{other}`"),
        }
        Ok(())
    }

    pub fn from_config_file(path: &PathBuf) -> Result<Self> {
        let text = fs::read_to_string(path)
            .with_context(|| format!("reading config file {}", path.display()))?;
        let mut overrides = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .with_context(|| format!("config line {}: expected key=value", lineno + 1))?;
            overrides
                .apply(key.trim(), value.trim())
                .with_context(|| format!("config line {}", lineno + 1))?;
        }
        Ok(overrides)
    }

    fn or(self, fallback: Self) -> Self {
        Self {
            seed: self.seed.or(fallback.seed),
            delta: self.delta.or(fallback.delta),
            window: self.window.or(fallback.window),
            blocks: self.blocks.or(fallback.blocks),
            neg_blocks: self.neg_blocks.or(fallback.neg_blocks),
            trials: self.trials.or(fallback.trials),
            tol: self.tol.or(fallback.tol),
            group: self.group.or(fallback.group),
            dim: self.dim.or(fallback.dim),
            csv: self.csv.or(fallback.csv),
            json: self.json.or(fallback.json),
        }
    }
}

pub fn parse_group(text: &str) -> Result<Vec<u32>> {
    let mut factors = Vec::new();
    for part in text.split(['x', 'X']) {
        let digits = part.trim().trim_start_matches(['Z', 'z']);
        let factor: u32 = digits
            .parse()
            .with_context(|| format!("group factor `{part}` (expected e.g. Z8 or Z4xZ2)"))?;
        factors.push(factor);
    }
    Ok(factors)
}

impl Params {
    pub fn resolve(flags: Overrides, config_file: Option<&PathBuf>) -> Result<Self> {
        let file_overrides = match config_file {
            Some(path) => Overrides::from_config_file(path)?,
            None => Overrides::default(),
        };
        let merged = flags.or(file_overrides);
        let params = Self {
            seed: merged.seed.unwrap_or(7),
            delta: merged.delta.unwrap_or(0.02),
            window: merged.window.unwrap_or(160.0),
            blocks: merged.blocks.unwrap_or(8),
            neg_blocks: merged.neg_blocks.unwrap_or(6),
            trials: merged.trials.unwrap_or(100),
            tol: merged.tol.unwrap_or(1e-3),
            group: parse_group(merged.group.as_deref().unwrap_or("Z8"))?,
            dim: merged.dim.unwrap_or(3),
            csv: merged.csv,
            json: merged.json,
        };
        params.validate()?;
        Ok(params)
    }

    fn validate(&self) -> Result<()> {
        if !(self.delta > 0.0 && self.delta.is_finite()) {
            bail!("delta must be positive and finite, got {}", self.delta);
        }
        if !(self.window > 0.0 && self.window.is_finite()) {
            bail!("window must be positive and finite, got {}", self.window);
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            bail!("tol must be positive and finite, got {}", self.tol);
        }
        if self.blocks < 0 {
            bail!("blocks must be nonnegative, got {}", self.blocks);
        }
        if self.neg_blocks < 0 {
            bail!("neg_blocks must be nonnegative, got {}", self.neg_blocks);
        }
        if self.trials == 0 {
            bail!("trials must be at least 1");
        }
        if self.dim == 0 {
            bail!("dim must be at least 1");
        }
        if self.group.is_empty() || self.group.iter().any(|&f| f == 0) {
            bail!("group factors must all be positive");
        }
        Ok(())
    }
}
