use super::TheoremReport;

/// Bumped whenever the column set or order changes.
pub const CSV_SCHEMA: u32 = 1;

const COLUMNS: [&str; 11] = ["theorem", "shape", "n", "p", "beta", "rho", "lhs", "rhs", "slack", "constant", "status"];

/// Comment line with the schema version followed by the column names.
pub fn csv_header() -> String {
    format!("# robin-bounds theorem report, schema v{CSV_SCHEMA}\n{}", COLUMNS.join(","))
}

/// Twelve significant digits in scientific notation; `nan`/`inf` spelled
/// out.
pub fn fmt_sig(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.11e}")
    }
}

fn quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl TheoremReport {
    pub fn csv_row(&self) -> String {
        [
            self.theorem_id.as_str().to_string(),
            quote(&self.shape),
            self.n.to_string(),
            fmt_sig(self.p),
            fmt_sig(self.beta),
            fmt_sig(self.rho),
            fmt_sig(self.lhs),
            fmt_sig(self.rhs),
            fmt_sig(self.slack),
            fmt_sig(self.constant_used),
            self.status.as_str().to_string(),
        ]
        .join(",")
    }
}
