//! Tables of sampled frames as CSV or JSON.

use frenet_core::FrenetSample;
use serde_json::{json, Value};

pub const FRAME_COLUMNS: [&str; 18] = [
    "t", "s", "x", "y", "z", "Tx", "Ty", "Tz", "Nx", "Ny", "Nz", "Bx", "By", "Bz", "kappa", "tau", "f", "Gamma",
];

pub const UNITS: &str =
    "units: t (parameter), s (length), x y z (length), T N B (unit), kappa tau (1/length), f Gamma (dimensionless)";

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub comments: Vec<String>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

pub fn frame_row(s: &FrenetSample) -> Vec<f64> {
    let mut row = vec![s.t, s.s];
    for v in [s.position, s.tangent, s.normal, s.binormal] {
        row.extend([v.x, v.y, v.z]);
    }
    row.extend([s.kappa, s.tau, s.f, s.gamma_g]);
    row
}

impl Table {
    pub fn frames(comments: Vec<String>, samples: impl IntoIterator<Item = FrenetSample>) -> Self {
        Self {
            comments,
            columns: FRAME_COLUMNS.to_vec(),
            rows: samples.into_iter().map(|s| frame_row(&s)).collect(),
        }
    }

    /// Shortest round-trip decimals; comment lines start with `#`.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            out.push_str("# ");
            out.push_str(c);
            out.push('\n');
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:?}")).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let v: Value = json!({
            "comments": self.comments,
            "columns": self.columns,
            "rows": self.rows,
        });
        let mut s = serde_json::to_string_pretty(&v).expect("table serializes");
        s.push('\n');
        s
    }
}
