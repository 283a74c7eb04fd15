//! Experiment configuration and the optional `key = value` settings file.

use std::path::PathBuf;
use std::str::FromStr;

use hermite_lf::{Variant, MAX_ORDER};

use crate::experiments::{lookup, Experiment};
use crate::{HarnessError, Result};

/// A fully resolved sweep.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub experiment: &'static Experiment,
    pub variant: Variant,
    pub orders: Vec<usize>,
    pub cfls: Vec<f64>,
    /// `None` uses each order's default resolutions.
    pub resolutions: Option<Vec<usize>>,
    pub final_time: f64,
    pub out: PathBuf,
    /// Seed for randomized data; the catalog experiments are deterministic.
    pub seed: u64,
}

impl ExperimentConfig {
    /// Catalog defaults for `name` (exact or unique prefix).
    pub fn new(name: &str) -> Result<Self> {
        let e = lookup(name)?;
        Ok(ExperimentConfig {
            experiment: e,
            variant: e.default_variant(),
            orders: e.orders.to_vec(),
            cfls: vec![e.cfl],
            resolutions: None,
            final_time: e.final_time,
            out: PathBuf::from("results"),
            seed: 0,
        })
    }

    pub fn resolutions_for(&self, m: usize) -> Vec<usize> {
        self.resolutions
            .clone()
            .unwrap_or_else(|| self.experiment.default_resolutions(m))
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |s: String| Err(HarnessError::Config(s));
        let e = self.experiment;
        if !e.variants.contains(&self.variant) {
            return bad(format!("{} does not support the {} variant", e.name, self.variant.name()));
        }
        if self.orders.is_empty() {
            return bad("empty order list".into());
        }
        if let Some(&m) = self.orders.iter().find(|&&m| m > MAX_ORDER) {
            return bad(format!("order {m} exceeds the maximum {MAX_ORDER}"));
        }
        if self.cfls.is_empty() {
            return bad("empty CFL list".into());
        }
        if let Some(c) = self.cfls.iter().find(|c| !(**c > 0.0 && **c < 1.0)) {
            return bad(format!("CFL constant {c} outside (0, 1)"));
        }
        if let Some(r) = &self.resolutions {
            if r.is_empty() {
                return bad("empty resolution list".into());
            }
            if r.windows(2).any(|w| w[0] >= w[1]) {
                return bad(format!("resolutions must be strictly increasing, got {r:?}"));
            }
            if r[0] < 2 {
                return bad("resolutions need at least 2 cells".into());
            }
        }
        if !(self.final_time.is_finite() && self.final_time > 0.0) {
            return bad(format!("final time must be positive, got {}", self.final_time));
        }
        Ok(())
    }
}

/// Every setting the command line accepts. Values left `None` fall back to
/// a settings file and then to the catalog defaults.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    pub experiment: Option<String>,
    pub m: Option<Vec<usize>>,
    pub cfl: Option<Vec<f64>>,
    pub resolutions: Option<Vec<usize>>,
    pub variant: Option<String>,
    pub final_time: Option<f64>,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub lambda: Option<Vec<f64>>,
    pub scan: Option<bool>,
    pub steps: Option<usize>,
    pub resolution: Option<usize>,
}

/// Comma-separated list; an empty string is an empty list.
pub fn parse_list<T: FromStr>(s: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| {
            x.parse()
                .map_err(|_| HarnessError::Config(format!("cannot parse '{x}' in list '{s}'")))
        })
        .collect()
}

fn parse_one<T: FromStr>(key: &str, s: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| HarnessError::Config(format!("cannot parse {key} = '{s}'")))
}

impl Settings {
    /// `key = value` lines; `#` starts a comment; keys accept `-` or `_`.
    pub fn parse_file(text: &str) -> Result<Settings> {
        let mut s = Settings::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(HarnessError::Config(format!("line {}: expected key = value", n + 1)));
            };
            let key = key.trim().replace('_', "-");
            let value = value.trim();
            match key.as_str() {
                "experiment" => s.experiment = Some(value.to_string()),
                "m" => s.m = Some(parse_list(value)?),
                "cfl" => s.cfl = Some(parse_list(value)?),
                "resolutions" => s.resolutions = Some(parse_list(value)?),
                "variant" => s.variant = Some(value.to_string()),
                "final-time" => s.final_time = Some(parse_one(&key, value)?),
                "out" => s.out = Some(PathBuf::from(value)),
                "seed" => s.seed = Some(parse_one(&key, value)?),
                "lambda" => s.lambda = Some(parse_list(value)?),
                "scan" => s.scan = Some(parse_one(&key, value)?),
                "steps" => s.steps = Some(parse_one(&key, value)?),
                "resolution" => s.resolution = Some(parse_one(&key, value)?),
                _ => return Err(HarnessError::Config(format!("line {}: unknown key '{key}'", n + 1))),
            }
        }
        Ok(s)
    }

    /// Fields set in `top` win.
    pub fn overlay(self, top: Settings) -> Settings {
        Settings {
            experiment: top.experiment.or(self.experiment),
            m: top.m.or(self.m),
            cfl: top.cfl.or(self.cfl),
            resolutions: top.resolutions.or(self.resolutions),
            variant: top.variant.or(self.variant),
            final_time: top.final_time.or(self.final_time),
            out: top.out.or(self.out),
            seed: top.seed.or(self.seed),
            lambda: top.lambda.or(self.lambda),
            scan: top.scan.or(self.scan),
            steps: top.steps.or(self.steps),
            resolution: top.resolution.or(self.resolution),
        }
    }

    pub fn variant(&self) -> Result<Option<Variant>> {
        self.variant
            .as_deref()
            .map(|v| Variant::parse(v).ok_or_else(|| HarnessError::Config(format!("unknown variant '{v}'"))))
            .transpose()
    }

    pub fn experiment_config(&self) -> Result<ExperimentConfig> {
        let name = self
            .experiment
            .as_deref()
            .ok_or_else(|| HarnessError::Config("no experiment given".into()))?;
        let mut c = ExperimentConfig::new(name)?;
        if let Some(v) = self.variant()? {
            c.variant = v;
        }
        if let Some(m) = &self.m {
            c.orders = m.clone();
        }
        if let Some(cfl) = &self.cfl {
            c.cfls = cfl.clone();
        }
        if let Some(r) = &self.resolutions {
            c.resolutions = Some(r.clone());
        }
        if let Some(t) = self.final_time {
            c.final_time = t;
        }
        if let Some(o) = &self.out {
            c.out = o.clone();
        }
        if let Some(s) = self.seed {
            c.seed = s;
        }
        c.validate()?;
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_flags() {
        let file = Settings::parse_file(
            "# sweep\nexperiment = standing-wave\nm = 0, 2\ncfl = 0.5\nfinal_time = 1.5\nresolutions = 10,20,40\n",
        )
        .unwrap();
        let flags = Settings {
            cfl: Some(vec![0.9]),
            ..Settings::default()
        };
        let c = file.overlay(flags).experiment_config().unwrap();
        assert_eq!(c.experiment.name, "standing-wave-1d");
        assert_eq!(c.orders, vec![0, 2]);
        assert_eq!(c.cfls, vec![0.9]);
        assert_eq!(c.final_time, 1.5);
        assert_eq!(c.resolutions_for(0), vec![10, 20, 40]);
    }

    #[test]
    fn invalid_sweeps_are_configuration_errors() {
        let base = || Settings {
            experiment: Some("standing-wave-1d".into()),
            ..Settings::default()
        };
        let cases = [
            Settings { resolutions: Some(vec![]), ..base() },
            Settings { resolutions: Some(vec![20, 10, 40]), ..base() },
            Settings { resolutions: Some(vec![10, 10, 40]), ..base() },
            Settings { final_time: Some(0.0), ..base() },
            Settings { final_time: Some(-1.0), ..base() },
            Settings { cfl: Some(vec![1.2]), ..base() },
            Settings { m: Some(vec![9]), ..base() },
            Settings { variant: Some("bogus".into()), ..base() },
            Settings { experiment: Some("acoustics-2d".into()), variant: Some("modified".into()), ..Settings::default() },
        ];
        for s in cases {
            assert!(matches!(s.experiment_config(), Err(HarnessError::Config(_))), "{s:?}");
        }
    }

    #[test]
    fn empty_list_text_is_empty() {
        assert_eq!(parse_list::<usize>("").unwrap(), Vec::<usize>::new());
        assert_eq!(parse_list::<usize>("10, 20").unwrap(), vec![10, 20]);
        assert!(parse_list::<usize>("10,x").is_err());
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(Settings::parse_file("colour = blue").is_err());
        assert!(Settings::parse_file("just text").is_err());
    }
}
