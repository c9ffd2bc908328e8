use crate::config::{Check, NamedShape, RunConfig};
use anyhow::{Context, Result};
use rayon::prelude::*;
use robin_bounds::bounds::{
    bernoulli_check, check_erosion_lemma, check_faber_krahn, check_fuglede_lemma, check_proof_chain,
    check_radial_suite, check_t1, check_t2, check_t3, check_weak_remark, fmt_sig, BoundsError, Case, Status,
    TheoremReport, DEFAULT_DELTA0_FRACTION,
};
use robin_bounds::geom::asymmetry_report;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::Path;

pub const ROWS_SCHEMA: u32 = 1;

const COLUMNS: [&str; 17] = [
    "shape",
    "check",
    "n",
    "p",
    "beta",
    "rho",
    "area",
    "deficit",
    "lambda_ball",
    "lambda_oracle",
    "transplant_quotient",
    "constant",
    "lhs",
    "rhs",
    "slack",
    "status",
    "note",
];

/// One line of the sweep. Numbers are rounded to 12 significant digits;
/// quantities that do not apply to the check are absent.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResultRow {
    pub shape: String,
    pub check: String,
    pub n: usize,
    pub p: Option<f64>,
    pub beta: Option<f64>,
    pub rho: Option<f64>,
    pub area: Option<f64>,
    pub deficit: Option<f64>,
    pub lambda_ball: Option<f64>,
    pub lambda_oracle: Option<f64>,
    pub transplant_quotient: Option<f64>,
    pub constant: Option<f64>,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    pub slack: Option<f64>,
    pub status: Status,
    pub note: String,
    pub details: BTreeMap<String, f64>,
}

fn r12(x: f64) -> Option<f64> {
    x.is_finite().then(|| fmt_sig(x).parse().expect("formatted float parses"))
}

impl ResultRow {
    fn from_report(rep: &TheoremReport, area: Option<f64>) -> Self {
        let d = |k: &str| rep.details.get(k).copied().and_then(r12);
        Self {
            shape: rep.shape.clone(),
            check: rep.theorem_id.as_str().to_string(),
            n: rep.n,
            p: r12(rep.p),
            beta: r12(rep.beta),
            rho: r12(rep.rho),
            area: area.and_then(r12),
            deficit: d("deficit"),
            lambda_ball: d("lambda_ball"),
            lambda_oracle: d("lambda_oracle"),
            transplant_quotient: d("transplant_quotient"),
            constant: r12(rep.constant_used),
            lhs: r12(rep.lhs),
            rhs: r12(rep.rhs),
            slack: r12(rep.slack),
            status: rep.status,
            note: if rep.status == Status::Skipped && rep.details.get("applicable") == Some(&0.0) {
                "precondition alpha < 1/2 fails".to_string()
            } else {
                rep.constant_formula.clone()
            },
            details: rep.details.iter().filter_map(|(k, v)| r12(*v).map(|v| (k.clone(), v))).collect(),
        }
    }

    fn skipped(shape: &str, check: &str, p: f64, beta: f64, why: &str) -> Self {
        Self {
            shape: shape.to_string(),
            check: check.to_string(),
            n: 2,
            p: r12(p),
            beta: r12(beta),
            rho: None,
            area: None,
            deficit: None,
            lambda_ball: None,
            lambda_oracle: None,
            transplant_quotient: None,
            constant: None,
            lhs: None,
            rhs: None,
            slack: None,
            status: Status::Skipped,
            note: why.to_string(),
            details: BTreeMap::new(),
        }
    }

    pub fn csv_row(&self) -> String {
        let num = |x: Option<f64>| x.map(fmt_sig).unwrap_or_default();
        [
            quote(&self.shape),
            self.check.clone(),
            self.n.to_string(),
            num(self.p),
            num(self.beta),
            num(self.rho),
            num(self.area),
            num(self.deficit),
            num(self.lambda_ball),
            num(self.lambda_oracle),
            num(self.transplant_quotient),
            num(self.constant),
            num(self.lhs),
            num(self.rhs),
            num(self.slack),
            self.status.as_str().to_string(),
            quote(&self.note),
        ]
        .join(",")
    }
}

fn quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn csv(rows: &[ResultRow]) -> String {
    let mut out = format!("# robin-bounds sweep rows, schema v{ROWS_SCHEMA}\n{}\n", COLUMNS.join(","));
    for r in rows {
        let _ = writeln!(out, "{}", r.csv_row());
    }
    out
}

enum Job<'a> {
    /// Everything depending on `(shape, p, beta)`.
    Case { shape: &'a NamedShape, p: f64, beta: f64 },
    /// Shape-only lemmas.
    Shape { shape: &'a NamedShape },
    /// Radial identities on the disk of perimeter `2 pi`.
    Radial { p: f64, beta: f64 },
    Bernoulli,
}

struct Ctx<'a> {
    cfg: &'a RunConfig,
    cache: Option<&'a Path>,
}

impl Ctx<'_> {
    fn wants(&self, c: Check) -> bool {
        self.cfg.checks.contains(&c)
    }

    fn run(&self, job: &Job) -> Vec<ResultRow> {
        match *job {
            Job::Case { shape, p, beta } => self.case_rows(shape, p, beta),
            Job::Shape { shape } => {
                let area = Some(shape.poly.area());
                let mut rows = vec![ResultRow::from_report(&check_erosion_lemma(&shape.id, &shape.poly), area)];
                match check_fuglede_lemma(&shape.id, &shape.poly) {
                    Ok(r) => rows.push(ResultRow::from_report(&r, area)),
                    Err(e) => rows.push(ResultRow::skipped(&shape.id, "fuglede_lemma", f64::NAN, f64::NAN, &e.to_string())),
                }
                rows
            }
            Job::Radial { p, beta } => match check_radial_suite(p, beta, 2.0 * PI) {
                Ok(reps) => reps.iter().map(|r| ResultRow::from_report(r, Some(PI))).collect(),
                Err(e) => vec![ResultRow::skipped("ball", "radial_suite", p, beta, &e.to_string())],
            },
            Job::Bernoulli => [2, 3].iter().map(|&n| ResultRow::from_report(&bernoulli_check(n, 1000), None)).collect(),
        }
    }

    fn case_rows(&self, shape: &NamedShape, p: f64, beta: f64) -> Vec<ResultRow> {
        type CheckFn<'c> = Box<dyn Fn(&Case) -> Result<TheoremReport, BoundsError> + 'c>;
        let delta0 = self.cfg.tolerances.delta0_fraction.unwrap_or(DEFAULT_DELTA0_FRACTION);
        let mut wanted: Vec<(&str, CheckFn)> = Vec::new();
        if beta > 0.0 && self.wants(Check::T1) {
            wanted.push(("T1", Box::new(check_t1)));
        }
        if beta < 0.0 && self.wants(Check::T2) {
            wanted.push(("T2", Box::new(check_t2)));
        }
        if beta < 0.0 && self.wants(Check::T3) {
            wanted.push(("T3", Box::new(move |c: &Case| check_t3(c, Some(delta0 * c.lambda_ball().abs())))));
        }
        if beta < 0.0 && self.wants(Check::WeakRemark) {
            wanted.push(("weak_remark", Box::new(check_weak_remark)));
        }
        if beta != 0.0 && self.wants(Check::Lemmas) {
            wanted.push(("faber_krahn", Box::new(check_faber_krahn)));
            wanted.push(("proof_chain", Box::new(check_proof_chain)));
        }
        if wanted.is_empty() {
            return Vec::new();
        }
        let case = match Case::prepare_cached(&shape.id, &shape.poly, p, beta, self.cfg.fem_level, self.cache) {
            Ok(c) => c,
            Err(e) => {
                let why = e.to_string();
                return wanted.iter().map(|(name, _)| ResultRow::skipped(&shape.id, name, p, beta, &why)).collect();
            }
        };
        wanted
            .iter()
            .map(|(name, f)| match f(&case) {
                Ok(rep) => ResultRow::from_report(&rep, Some(case.area)),
                Err(e) => ResultRow::skipped(&shape.id, name, p, beta, &e.to_string()),
            })
            .collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Range {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

fn range(vals: impl IntoIterator<Item = f64>) -> Option<Range> {
    let v: Vec<f64> = vals.into_iter().filter(|x| x.is_finite()).collect();
    if v.is_empty() {
        return None;
    }
    let min = v.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    Some(Range { min: r12(min)?, max: r12(max)?, count: v.len() })
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub schema: u32,
    pub rows: usize,
    pub status_counts: BTreeMap<String, usize>,
    pub violations: Vec<String>,
    /// Corpus statistics standing in for constants that are only known
    /// to exist.
    pub empirical: BTreeMap<String, Range>,
}

fn summarize(rows: &[ResultRow], shapes: &[NamedShape]) -> Summary {
    let mut status_counts = BTreeMap::new();
    for r in rows {
        *status_counts.entry(r.status.as_str().to_string()).or_insert(0) += 1;
    }
    let violations = rows
        .iter()
        .filter(|r| r.status.is_violation())
        .map(|r| {
            let num = |x: Option<f64>| x.map(fmt_sig).unwrap_or_else(|| "-".into());
            format!("{} {} p={} beta={}", r.shape, r.check, num(r.p), num(r.beta))
        })
        .collect();
    let detail = |check: &str, key: &str| -> Vec<f64> {
        rows.iter().filter(|r| r.check == check).filter_map(|r| r.details.get(key).copied()).collect()
    };
    let mut empirical = BTreeMap::new();
    let mut put = |k: &str, r: Option<Range>| {
        if let Some(r) = r {
            empirical.insert(k.to_string(), r);
        }
    };
    put(
        "hausdorff_star_over_sharp",
        range(shapes.iter().map(|s| {
            let a = asymmetry_report(&s.poly);
            a.hausdorff_star / a.hausdorff_sharp
        })),
    );
    put(
        "deficit_m_over_g",
        range(rows.iter().filter(|r| r.check == "fuglede_lemma").filter_map(|r| r.constant)),
    );
    put("t3_gap_over_g", range(detail("T3", "gap_over_g")));
    put("weak_remark_gamma", range(detail("weak_remark", "gamma_implied")));
    put("weak_remark_c_n", range(detail("weak_remark", "c_n_implied")));
    put("t1_constant", range(rows.iter().filter(|r| r.check == "T1").filter_map(|r| r.constant)));
    put("t2_constant", range(rows.iter().filter(|r| r.check == "T2").filter_map(|r| r.constant)));
    Summary { schema: ROWS_SCHEMA, rows: rows.len(), status_counts, violations, empirical }
}

pub struct RunOutput {
    pub rows: Vec<ResultRow>,
    pub summary: Summary,
}

/// Run the sweep and write `rows.csv`, `report.json` and `summary.json`
/// into the configured output directory.
pub fn run(cfg: &RunConfig, cache: Option<&Path>) -> Result<RunOutput> {
    let shapes = cfg.shapes()?;
    let mut jobs = Vec::new();
    for s in &shapes {
        for &p in &cfg.p_grid {
            for &beta in &cfg.beta_grid {
                jobs.push(Job::Case { shape: s, p, beta });
            }
        }
        if cfg.checks.contains(&Check::Lemmas) {
            jobs.push(Job::Shape { shape: s });
        }
    }
    if cfg.checks.contains(&Check::RadialSuite) {
        for &p in &cfg.p_grid {
            for &beta in &cfg.beta_grid {
                if beta != 0.0 {
                    jobs.push(Job::Radial { p, beta });
                }
            }
        }
    }
    if cfg.checks.contains(&Check::Lemmas) {
        jobs.push(Job::Bernoulli);
    }
    let ctx = Ctx { cfg, cache };
    // collect keeps job order, so the output does not depend on scheduling
    let rows: Vec<ResultRow> = jobs.par_iter().map(|j| ctx.run(j)).collect::<Vec<_>>().concat();
    let summary = summarize(&rows, &shapes);

    let out = &cfg.output;
    std::fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let write = |name: &str, text: String| {
        let path = out.join(name);
        std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))
    };
    write("rows.csv", csv(&rows))?;
    write("report.json", serde_json::to_string_pretty(&ReportFile { schema: ROWS_SCHEMA, rows: rows.clone() })? + "\n")?;
    write("summary.json", serde_json::to_string_pretty(&summary)? + "\n")?;
    Ok(RunOutput { rows, summary })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportFile {
    pub schema: u32,
    pub rows: Vec<ResultRow>,
}
