use std::path::PathBuf;

use clap::ValueEnum;
use dkoszul::EvalPoint;

use crate::Flags;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BackendChoice {
    Exact,
    Evaluated,
    Auto,
}

/// Settings after merging the config file with command-line flags.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub backend: BackendChoice,
    pub q0: EvalPoint,
    pub exact_budget: usize,
    pub evaluated_budget: usize,
    pub out: Option<PathBuf>,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            backend: BackendChoice::Auto,
            q0: EvalPoint::default_point(),
            exact_budget: 5,
            evaluated_budget: 8,
            out: None,
            seed: 0,
        }
    }
}

impl RunConfig {
    pub fn resolve(flags: &Flags) -> Result<Self, String> {
        let mut cfg = RunConfig::default();
        if let Some(path) = &flags.config {
            let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            cfg.apply_file(&text)?;
        }
        if let Some(b) = flags.backend {
            cfg.backend = b;
        }
        if let Some(q) = &flags.q0 {
            cfg.q0 = parse_point(q)?;
        }
        if let Some(b) = flags.exact_budget {
            cfg.exact_budget = b;
        }
        if let Some(b) = flags.evaluated_budget {
            cfg.evaluated_budget = b;
        }
        if let Some(o) = &flags.out {
            cfg.out = Some(o.clone());
        }
        if let Some(s) = flags.seed {
            cfg.seed = s;
        }
        if cfg.exact_budget == 0 || cfg.evaluated_budget == 0 {
            return Err("budgets must be at least 1".into());
        }
        Ok(cfg)
    }

    /// `key = value` lines; `#` starts a comment.
    fn apply_file(&mut self, text: &str) -> Result<(), String> {
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key = value", n + 1))?;
            let (key, value) = (key.trim().replace('-', "_"), value.trim());
            let bad = |e: &dyn std::fmt::Display| format!("line {}: {key}: {e}", n + 1);
            match key.as_str() {
                "backend" => self.backend = BackendChoice::from_str(value, true).map_err(|e| bad(&e))?,
                "q0" => self.q0 = parse_point(value)?,
                "exact_budget" => self.exact_budget = value.parse().map_err(|e| bad(&e))?,
                "evaluated_budget" => self.evaluated_budget = value.parse().map_err(|e| bad(&e))?,
                "out" => self.out = Some(PathBuf::from(value)),
                "seed" => self.seed = value.parse().map_err(|e| bad(&e))?,
                _ => return Err(format!("line {}: unknown key {key}", n + 1)),
            }
        }
        Ok(())
    }
}

fn parse_point(s: &str) -> Result<EvalPoint, String> {
    s.parse::<EvalPoint>().map_err(|e| format!("q0: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_flags() {
        let mut cfg = RunConfig::default();
        cfg.apply_file("# run\nbackend = evaluated\nexact-budget=3\nseed = 4 # trailing\n").unwrap();
        assert_eq!(cfg.backend, BackendChoice::Evaluated);
        assert_eq!(cfg.exact_budget, 3);
        assert_eq!(cfg.seed, 4);
        assert!(cfg.apply_file("colour = red").is_err());
        assert!(cfg.apply_file("seed").is_err());
    }
}
