//! Run configuration: defaults, the flat `key = value` config file, and the
//! flag-override merge. Command-line flags always win over the file.

use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Table,
    Csv,
    Json,
}

impl Format {
    pub fn parse(s: &str) -> Result<Self, String> {
        match s {
            "table" => Ok(Format::Table),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("format must be table, csv or json, got `{other}`")),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Format::Table => "table",
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub mass: f64,
    /// Strictly decreasing after [`RunConfig::validate`].
    pub eps_grid: Vec<f64>,
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    pub test_fn: String,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let quad = kgdist::quad::QuadratureConfig::default();
        RunConfig {
            mass: 1.0,
            eps_grid: vec![0.2, 0.1, 0.05, 0.02, 0.01, 0.005],
            abs_tol: quad.abs_tol,
            rel_tol: quad.rel_tol,
            max_subdivisions: quad.max_subdivisions,
            test_fn: "gaussian:1".to_string(),
            format: Format::Table,
            out: None,
        }
    }
}

impl RunConfig {
    /// Applies one `key = value` pair from the config file.
    fn apply(&mut self, key: &str, value: &str) -> Result<(), String> {
        match key {
            "mass" => self.mass = parse_num(key, value)?,
            "eps" => {
                self.eps_grid = value
                    .split([',', ' '])
                    .filter(|s| !s.is_empty())
                    .map(|s| parse_num(key, s))
                    .collect::<Result<_, _>>()?;
            }
            "abs_tol" => self.abs_tol = parse_num(key, value)?,
            "rel_tol" => self.rel_tol = parse_num(key, value)?,
            "max_subdivisions" => {
                self.max_subdivisions = value
                    .parse()
                    .map_err(|_| format!("max_subdivisions: bad value `{value}`"))?;
            }
            "test_fn" => self.test_fn = value.to_string(),
            "format" => self.format = Format::parse(value)?,
            "out" => self.out = Some(PathBuf::from(value)),
            other => return Err(format!("unknown config key `{other}`")),
        }
        Ok(())
    }

    pub fn load_file(&mut self, path: &Path) -> Result<(), String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config `{}`: {e}", path.display()))?;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("config line {}: expected `key = value`", lineno + 1))?;
            self.apply(key.trim(), value.trim())?;
        }
        Ok(())
    }

    /// Final sanity pass; also sorts the ε grid into the strictly decreasing
    /// order the sweep machinery expects.
    pub fn validate(&mut self) -> Result<(), String> {
        if !(self.mass > 0.0 && self.mass.is_finite()) {
            return Err("mass must be positive".to_string());
        }
        if self.eps_grid.is_empty() {
            return Err("eps: at least one grid point is required".to_string());
        }
        if self.eps_grid.iter().any(|&e| !(e > 0.0 && e.is_finite())) {
            return Err("eps must be positive".to_string());
        }
        self.eps_grid.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
        self.eps_grid.dedup();
        if !(self.abs_tol > 0.0 && self.abs_tol.is_finite()) {
            return Err("abs_tol must be positive".to_string());
        }
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err("rel_tol must be positive".to_string());
        }
        if self.max_subdivisions == 0 {
            return Err("max_subdivisions must be at least 1".to_string());
        }
        Ok(())
    }

    pub fn quad(&self) -> kgdist::quad::QuadratureConfig {
        kgdist::quad::QuadratureConfig {
            abs_tol: self.abs_tol,
            rel_tol: self.rel_tol,
            max_subdivisions: self.max_subdivisions,
            split_scale: None,
        }
    }

    pub fn echo(&self) -> crate::report::ConfigEcho {
        crate::report::ConfigEcho {
            mass: self.mass,
            eps_grid: self.eps_grid.clone(),
            abs_tol: self.abs_tol,
            rel_tol: self.rel_tol,
            max_subdivisions: self.max_subdivisions,
            test_function: self.test_fn.clone(),
            format: self.format.name().to_string(),
            out: self.out.as_ref().map(|p| p.display().to_string()),
        }
    }
}

fn parse_num(key: &str, value: &str) -> Result<f64, String> {
    value
        .parse()
        .map_err(|_| format!("{key}: bad numeric value `{value}`"))
}
