use super::TransplantError;
use crate::radial::{Boundary, LevelSpeed, RadialEigenpair};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    PositiveBeta,
    NegativeBeta,
}

impl Branch {
    pub fn of(pair: &RadialEigenpair) -> Result<Self, TransplantError> {
        match pair.boundary {
            Boundary::Robin { beta } if beta > 0.0 => Ok(Self::PositiveBeta),
            Boundary::Robin { beta } if beta < 0.0 => Ok(Self::NegativeBeta),
            _ => Err(TransplantError::UnsupportedPair),
        }
    }
}

/// The increasing map `G` from boundary distance to the level coordinate.
///
/// The level coordinate is `t` itself on the positive branch
/// (`G^{-1}(t) = int_{v_m}^t ds / g(s)`, `G(0) = v_m`) and `v_M - t` on the
/// negative branch (`G^{-1}(l) = int_0^l ds / g(v_M - s)`, `G(0) = 0`).
/// In both cases the transplanted function is `u = v(R - d)`.
#[derive(Debug, Clone)]
pub struct TransplantMap {
    speed: LevelSpeed,
    branch: Branch,
    /// Boundary distance of each tabulated level.
    cum: Vec<f64>,
}

/// Tabulate `G^{-1}` by cell-wise quadrature of `1 / g`.
pub fn build_g(speed: LevelSpeed, branch: Branch) -> Result<TransplantMap, TransplantError> {
    if speed.increasing() != (branch == Branch::NegativeBeta) {
        return Err(TransplantError::UnsupportedPair);
    }
    let lv = speed.levels();
    let m = lv.len();
    let mut cum = vec![0.0; m];
    match branch {
        Branch::PositiveBeta => {
            for i in 1..m {
                cum[i] = cum[i - 1] + speed.travel_panel(lv[i - 1], lv[i]);
            }
        }
        Branch::NegativeBeta => {
            for i in (0..m - 1).rev() {
                cum[i] = cum[i + 1] + speed.travel_panel(lv[i], lv[i + 1]);
            }
        }
    }
    Ok(TransplantMap { speed, branch, cum })
}

impl TransplantMap {
    pub fn branch(&self) -> Branch {
        self.branch
    }

    pub fn speed(&self) -> &LevelSpeed {
        &self.speed
    }

    /// Value of `u` on the polygon boundary.
    pub fn boundary_level(&self) -> f64 {
        self.speed.boundary_level()
    }

    /// Largest distance reached by the ball profile (ideally `R`).
    pub fn max_distance(&self) -> f64 {
        match self.branch {
            Branch::PositiveBeta => *self.cum.last().unwrap(),
            Branch::NegativeBeta => self.cum[0],
        }
    }

    fn cell(&self, t: f64) -> usize {
        let lv = self.speed.levels();
        lv.partition_point(|&x| x <= t).clamp(1, lv.len() - 1) - 1
    }

    /// Boundary distance at which `u = t`.
    pub fn distance_of_level(&self, t: f64) -> f64 {
        let lv = self.speed.levels();
        let t = t.clamp(self.speed.v_min(), self.speed.v_max());
        let i = self.cell(t);
        match self.branch {
            Branch::PositiveBeta => self.cum[i] + self.speed.travel_panel(lv[i], t),
            Branch::NegativeBeta => self.cum[i + 1] + self.speed.travel_panel(t, lv[i + 1]),
        }
    }

    /// `u` at boundary distance `d`, clamped to `[0, max_distance]`.
    pub fn level_of_distance(&self, d: f64) -> f64 {
        let d = d.clamp(0.0, self.max_distance());
        let lv = self.speed.levels();
        let m = lv.len();
        // cell containing d: cum is increasing (positive) or decreasing
        let i = match self.branch {
            Branch::PositiveBeta => self.cum.partition_point(|&c| c <= d).clamp(1, m - 1) - 1,
            Branch::NegativeBeta => self.cum.partition_point(|&c| c > d).clamp(1, m - 1) - 1,
        };
        let (mut lo, mut hi) = (lv[i], lv[i + 1]);
        let increasing = self.branch == Branch::PositiveBeta;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let beyond = self.distance_of_level(mid) > d;
            if beyond == increasing {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// `G(d)` in the level coordinate.
    pub fn g(&self, d: f64) -> f64 {
        let t = self.level_of_distance(d);
        match self.branch {
            Branch::PositiveBeta => t,
            Branch::NegativeBeta => self.speed.v_max() - t,
        }
    }

    /// `G^{-1}` of a level coordinate.
    pub fn g_inverse(&self, l: f64) -> f64 {
        match self.branch {
            Branch::PositiveBeta => self.distance_of_level(l),
            Branch::NegativeBeta => self.distance_of_level(self.speed.v_max() - l),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial::{level_speed, solve_radial};

    fn map(p: f64, beta: f64) -> (RadialEigenpair, TransplantMap) {
        let pair = solve_radial(2, p, beta, 1.0).unwrap();
        let sp = level_speed(&pair).unwrap();
        let m = build_g(sp, Branch::of(&pair).unwrap()).unwrap();
        (pair, m)
    }

    #[test]
    fn g_starts_at_boundary_value() {
        let (pair, m) = map(2.0, 1.0);
        assert!((m.g(0.0) - pair.v_min).abs() < 1e-14);
        let (_, m) = map(2.0, -1.0);
        assert!(m.g(0.0).abs() < 1e-14);
    }

    #[test]
    fn round_trips() {
        for &(p, beta) in &[(2.0, 1.0), (1.5, -1.0), (3.0, -2.0), (3.0, 0.7)] {
            let (pair, m) = map(p, beta);
            assert!((m.max_distance() - 1.0).abs() < 1e-6);
            for k in 1..40 {
                let d = k as f64 / 40.0;
                let l = m.g(d);
                assert!((m.g_inverse(l) - d).abs() < 1e-8, "{p} {beta} {d}");
                // against the radial profile
                let v = pair.profile().eval(1.0 - d);
                assert!((m.level_of_distance(d) - v).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn branch_mismatch_rejected() {
        let pair = solve_radial(2, 2.0, 1.0, 1.0).unwrap();
        let sp = level_speed(&pair).unwrap();
        assert!(build_g(sp, Branch::NegativeBeta).is_err());
        let d = crate::radial::dirichlet_radial(2, 2.0, 1.0).unwrap();
        assert!(Branch::of(&d).is_err());
    }
}
