use std::fmt::Write as _;
use std::io;
use std::path::Path;

use super::{SweepRow, SweepSpec, Target};

pub const TOOL: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));

/// Comment lines, one header row, and rows of numbers. Same spec, same bytes.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub comments: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

/// 17 significant digits.
pub fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

impl CsvTable {
    pub fn from_sweep(spec: &SweepSpec, rows: &[SweepRow]) -> Self {
        let family = matches!(spec.target, Target::Family(_));
        let mut columns = vec![spec.param.clone()];
        if family {
            columns.push("c_closed".into());
        }
        if !spec.closed_only {
            columns.extend(["c_spectral", "i_f", "i_w", "used_dim"].map(String::from));
        }
        let mut unconverged = 0;
        let body = rows
            .iter()
            .map(|r| {
                let mut row = vec![r.param];
                if family {
                    row.push(r.c_closed.unwrap_or(f64::NAN));
                }
                if let Some(s) = &r.spectral {
                    if s.converged == Some(false) {
                        unconverged += 1;
                    }
                    row.extend([s.c, s.i_f, s.i_w, s.truncation_dim.unwrap_or(0) as f64]);
                }
                row
            })
            .collect();
        let f = &spec.fock;
        let g = &spec.grid;
        let mut comments = vec![
            format!("tool: {TOOL}"),
            format!("target: {}", spec.target.describe()),
            format!(
                "sweep: {} from {} to {} count {}",
                spec.param,
                format_value(g.start()),
                format_value(g.stop()),
                g.count()
            ),
        ];
        if !spec.closed_only {
            comments.push(format!(
                "fock: dim={} max_dim={} growth={} conv_tol={:e}",
                f.dim, f.max_dim, f.growth, f.conv_tol
            ));
            comments.push(format!("unconverged_points: {unconverged}"));
        }
        Self {
            comments,
            columns,
            rows: body,
        }
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            let _ = writeln!(out, "# {c}");
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&v| format_value(v)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn write_to(&self, path: &Path) -> io::Result<()> {
        std::fs::write(path, self.render())
    }
}
