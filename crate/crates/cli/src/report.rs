//! Report model shared by every subcommand, plus the table/CSV/JSON
//! renderers. Field order in the serde structs is the JSON key order, so
//! output is byte-stable across runs.

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    pub mass: f64,
    pub eps_grid: Vec<f64>,
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    pub test_function: String,
    pub format: String,
    pub out: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRow {
    pub name: String,
    /// `None` for grid-wide checks (e.g. the ε-independence spread).
    pub epsilon: Option<f64>,
    pub mass: f64,
    pub computed: f64,
    pub expected: f64,
    pub paper_printed: Option<f64>,
    pub abs_error_estimate: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub epsilon: f64,
    pub pairing_value: f64,
    pub target: f64,
    pub deviation: f64,
    pub abs_error_estimate: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepBlock {
    pub test_function: String,
    pub rows: Vec<SweepRow>,
    pub fitted_order: Option<f64>,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub config: ConfigEcho,
    pub checks: Vec<CheckRow>,
    pub sweeps: Vec<SweepBlock>,
    pub verdict: String,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed) && self.sweeps.iter().all(|s| s.passed)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report is always serializable");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        if !self.checks.is_empty() {
            out.push_str("name,epsilon,mass,computed,expected,paper_printed,abs_error_estimate,passed\n");
            for c in &self.checks {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{}\n",
                    c.name,
                    c.epsilon.map(sci).unwrap_or_default(),
                    sci(c.mass),
                    sci(c.computed),
                    sci(c.expected),
                    c.paper_printed.map(sci).unwrap_or_default(),
                    sci(c.abs_error_estimate),
                    c.passed
                ));
            }
        }
        for s in &self.sweeps {
            if !out.is_empty() {
                out.push('\n');
            }
            out.push_str(&sweep_csv(s));
        }
        out
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        if !self.checks.is_empty() {
            out.push_str(&format!(
                "{:<32} {:>10} {:>24} {:>24} {:>12} {:>6}\n",
                "check", "eps", "computed", "expected", "est. error", "pass"
            ));
            for c in &self.checks {
                out.push_str(&format!(
                    "{:<32} {:>10} {:>24.16e} {:>24.16e} {:>12.3e} {:>6}\n",
                    c.name,
                    c.epsilon.map(|e| format!("{e}")).unwrap_or_else(|| "-".into()),
                    c.computed,
                    c.expected,
                    c.abs_error_estimate,
                    if c.passed { "ok" } else { "FAIL" }
                ));
            }
        }
        for s in &self.sweeps {
            if !out.is_empty() {
                out.push('\n');
            }
            out.push_str(&format!("delta-defect sweep: {}\n", s.test_function));
            out.push_str(&format!(
                "{:>10} {:>24} {:>24} {:>12} {:>12}\n",
                "eps", "pairing", "target", "deviation", "est. error"
            ));
            for r in &s.rows {
                out.push_str(&format!(
                    "{:>10} {:>24.16e} {:>24.16e} {:>12.3e} {:>12.3e}\n",
                    r.epsilon, r.pairing_value, r.target, r.deviation, r.abs_error_estimate
                ));
            }
            match s.fitted_order {
                Some(o) => out.push_str(&format!("fitted order: {o:.3}\n")),
                None => out.push_str("fitted order: not available (too few points)\n"),
            }
            out.push_str(&format!("sweep: {}\n", if s.passed { "ok" } else { "FAIL" }));
        }
        out.push_str(&format!("verdict: {}\n", self.verdict));
        out
    }
}

/// Scientific notation with 17 significant digits, enough to round-trip f64.
fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

/// Sweep series: one row per ε in the pinned column order, plus a footer
/// carrying the fitted order.
pub fn sweep_csv(s: &SweepBlock) -> String {
    let mut out = String::from("epsilon,pairing_value,target,deviation,abs_error_estimate\n");
    for r in &s.rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            sci(r.epsilon),
            sci(r.pairing_value),
            sci(r.target),
            sci(r.deviation),
            sci(r.abs_error_estimate)
        ));
    }
    out.push_str(&format!(
        "fitted_order,{},,,\n",
        s.fitted_order.map(sci).unwrap_or_default()
    ));
    out
}
