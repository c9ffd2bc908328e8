use anyhow::{bail, Context, Result};
use robin_bounds::geom::{ConvexPolygon, PolygonFile};
use robin_bounds::shapes::generate_shape;
use serde::Deserialize;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Deserialize)]
pub enum Check {
    T1,
    T2,
    T3,
    #[serde(rename = "weak_remark")]
    WeakRemark,
    #[serde(rename = "lemmas")]
    Lemmas,
    #[serde(rename = "radial_suite")]
    RadialSuite,
}

/// A named generator (`regular:6`), a polygon file path, or either in
/// object form with an explicit name and seed.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ShapeEntry {
    Plain(String),
    Spec {
        spec: String,
        #[serde(default)]
        seed: Option<u64>,
        #[serde(default)]
        name: Option<String>,
    },
    File {
        file: PathBuf,
        #[serde(default)]
        name: Option<String>,
    },
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    /// Smallness threshold of the Hausdorff bound as a fraction of
    /// `|lambda(Omega*)|`.
    pub delta0_fraction: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub shapes: Vec<ShapeEntry>,
    pub p_grid: Vec<f64>,
    pub beta_grid: Vec<f64>,
    #[serde(default = "default_level")]
    pub fem_level: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default = "default_output")]
    pub output: PathBuf,
    pub checks: Vec<Check>,
}

fn default_level() -> usize {
    3
}

fn default_output() -> PathBuf {
    PathBuf::from("robin-bounds-out")
}

const GENERATORS: [&str; 3] = ["regular:", "rect:", "random:"];

/// A shape ready for the sweep.
#[derive(Debug, Clone)]
pub struct NamedShape {
    pub id: String,
    pub poly: ConvexPolygon,
}

impl RunConfig {
    /// Parse and validate; relative paths resolve against the config's
    /// directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        let mut cfg: RunConfig =
            serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))?;
        let base = path.parent().unwrap_or(Path::new("."));
        for s in &mut cfg.shapes {
            match s {
                ShapeEntry::File { file, .. } if file.is_relative() => *file = base.join(&*file),
                ShapeEntry::Plain(p) if !is_generator(p) && Path::new(p).is_relative() => {
                    *p = base.join(&*p).to_string_lossy().into_owned()
                }
                _ => {}
            }
        }
        if cfg.output.is_relative() {
            cfg.output = base.join(&cfg.output);
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.shapes.is_empty() {
            bail!("config lists no shapes");
        }
        if self.checks.is_empty() {
            bail!("config lists no checks");
        }
        if self.p_grid.is_empty() || self.beta_grid.is_empty() {
            bail!("p_grid and beta_grid must be non-empty");
        }
        if let Some(p) = self.p_grid.iter().find(|p| !(p.is_finite() && **p > 1.0)) {
            bail!("p_grid entry {p} is outside (1, inf)");
        }
        let signed = self.checks.iter().any(|c| matches!(c, Check::T1 | Check::T2 | Check::T3 | Check::WeakRemark));
        if let Some(b) = self.beta_grid.iter().find(|b| !b.is_finite() || (signed && **b == 0.0)) {
            bail!("beta_grid entry {b} is not allowed (must be finite and nonzero)");
        }
        if !(1..=6).contains(&self.fem_level) {
            bail!("fem_level {} is outside 1..=6", self.fem_level);
        }
        if let Some(f) = self.tolerances.delta0_fraction {
            if !(f.is_finite() && f > 0.0) {
                bail!("delta0_fraction must be positive");
            }
        }
        Ok(())
    }

    /// Build every polygon, failing on the first unreadable one.
    pub fn shapes(&self) -> Result<Vec<NamedShape>> {
        self.shapes.iter().map(|s| self.build(s)).collect()
    }

    fn build(&self, entry: &ShapeEntry) -> Result<NamedShape> {
        match entry {
            ShapeEntry::Plain(s) if is_generator(s) => generated(s, self.seed, None),
            ShapeEntry::Plain(s) => from_file(Path::new(s), None),
            ShapeEntry::Spec { spec, seed, name } => generated(spec, seed.unwrap_or(self.seed), name.clone()),
            ShapeEntry::File { file, name } => from_file(file, name.clone()),
        }
    }
}

fn is_generator(s: &str) -> bool {
    GENERATORS.iter().any(|g| s.starts_with(g))
}

fn generated(spec: &str, seed: u64, name: Option<String>) -> Result<NamedShape> {
    let poly = generate_shape(spec, seed).with_context(|| format!("shape `{spec}`"))?;
    let id = name.unwrap_or_else(|| if spec.starts_with("random:") && spec.matches(':').count() == 1 {
        format!("{spec}:{seed}")
    } else {
        spec.to_string()
    });
    Ok(NamedShape { id, poly })
}

/// Read a polygon file; JSON errors carry line and column.
pub fn from_file(path: &Path, name: Option<String>) -> Result<NamedShape> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading polygon file {}", path.display()))?;
    let file: PolygonFile =
        serde_json::from_str(&text).with_context(|| format!("parsing polygon file {}", path.display()))?;
    let poly = ConvexPolygon::from_file(&file).with_context(|| format!("invalid polygon in {}", path.display()))?;
    let id = name
        .or_else(|| (!file.name.is_empty()).then(|| file.name.clone()))
        .unwrap_or_else(|| path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default());
    Ok(NamedShape { id, poly })
}
