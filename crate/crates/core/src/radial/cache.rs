//! JSON cache of solved eigenpairs keyed by `(n, p, beta, R)` at 12
//! significant digits.

use super::{dirichlet_radial, solve_radial, RadialEigenpair, RadialError};
use std::path::Path;

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "ROBIN_BOUNDS_CACHE";

/// File stem for a solve; `beta = None` denotes the Dirichlet pair.
pub fn cache_key(n: usize, p: f64, beta: Option<f64>, radius: f64) -> String {
    let b = match beta {
        Some(b) => format!("{b:.11e}"),
        None => "dirichlet".to_string(),
    };
    format!("radial_n{n}_p{p:.11e}_b{b}_R{radius:.11e}")
}

/// Load from `dir` when present, else solve and store. Cache I/O failures
/// fall back to solving.
pub fn solve_cached(
    dir: Option<&Path>,
    n: usize,
    p: f64,
    beta: Option<f64>,
    radius: f64,
) -> Result<RadialEigenpair, RadialError> {
    let solve = || match beta {
        Some(b) => solve_radial(n, p, b, radius),
        None => dirichlet_radial(n, p, radius),
    };
    let Some(dir) = dir else {
        return solve();
    };
    let path = dir.join(format!("{}.json", cache_key(n, p, beta, radius)));
    if let Ok(text) = std::fs::read_to_string(&path) {
        if let Ok(pair) = serde_json::from_str::<RadialEigenpair>(&text) {
            return Ok(pair);
        }
    }
    let pair = solve()?;
    if std::fs::create_dir_all(dir).is_ok() {
        if let Ok(text) = serde_json::to_string(&pair) {
            // write then rename so concurrent readers never see a partial file
            let tmp = path.with_extension(format!("tmp{}", std::process::id()));
            if std::fs::write(&tmp, text).is_ok() {
                let _ = std::fs::rename(&tmp, &path);
            }
        }
    }
    Ok(pair)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_rounds_to_twelve_digits() {
        assert_eq!(cache_key(2, 2.0, Some(1.0), 1.0), cache_key(2, 2.0 + 1e-14, Some(1.0), 1.0));
        assert_ne!(cache_key(2, 2.0, Some(1.0), 1.0), cache_key(2, 2.0, None, 1.0));
    }

    #[test]
    fn round_trip_through_disk() {
        let dir = std::env::temp_dir().join(format!("rb_cache_test_{}", std::process::id()));
        let a = solve_cached(Some(&dir), 2, 2.0, Some(1.0), 1.0).unwrap();
        let b = solve_cached(Some(&dir), 2, 2.0, Some(1.0), 1.0).unwrap();
        assert_eq!(a, b);
        let _ = std::fs::remove_dir_all(&dir);
    }
}
