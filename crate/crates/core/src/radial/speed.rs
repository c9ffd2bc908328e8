use super::{RadialEigenpair, RadialError};
use crate::numerics::conjugate;
use crate::numerics::interp::Pchip;
use crate::numerics::quad::gk15;

/// The speed `g(t) = |v'|` on the level set `{v = t}` of a monotone profile.
///
/// `g` vanishes like `|t - t_c|^{1/p}` at the centre level `t_c = v(0)`, so
/// the table stores `h(t) = g(t) / |t - t_c|^{1/p}`, which is smooth and
/// positive, and interpolates it monotonically.
#[derive(Debug, Clone)]
pub struct LevelSpeed {
    levels: Vec<f64>,
    speeds: Vec<f64>,
    radii: Vec<f64>,
    h: Pchip,
    center_level: f64,
    p: f64,
    radius: f64,
    /// True when `v` increases with `r` (negative Robin parameter).
    increasing: bool,
}

/// Tabulate the level speed of a radial eigenpair.
pub fn level_speed(pair: &RadialEigenpair) -> Result<LevelSpeed, RadialError> {
    let m = pair.grid.len();
    let increasing = pair.lambda < 0.0;
    for i in 1..m {
        let ok = if increasing { pair.excess[i] > pair.excess[i - 1] } else { pair.excess[i] < pair.excess[i - 1] };
        if !ok {
            return Err(RadialError::NonMonotone { radius: pair.grid[i] });
        }
    }
    let p = pair.p;
    let n = pair.dim as f64;
    let center = pair.center_value();
    // series limit of h at the centre level
    let k = (pair.lambda.abs() / n).powf(1.0 / (p - 1.0));
    let a = (p - 1.0) / p * k;
    let h0 = k * a.powf(-1.0 / p);
    let mut rows: Vec<(f64, f64, f64, f64)> = (0..m)
        .map(|i| {
            let g = pair.derivs[i].abs();
            let z = pair.excess[i].abs();
            let h = if i == 0 { h0 } else { g / z.powf(1.0 / p) };
            (center + pair.excess[i], h, g, pair.grid[i])
        })
        .collect();
    if !increasing {
        rows.reverse();
    }
    let levels: Vec<f64> = rows.iter().map(|r| r.0).collect();
    let hs: Vec<f64> = rows.iter().map(|r| r.1).collect();
    Ok(LevelSpeed {
        h: Pchip::new(levels.clone(), hs),
        speeds: rows.iter().map(|r| r.2).collect(),
        radii: rows.iter().map(|r| r.3).collect(),
        levels,
        center_level: center,
        p,
        radius: pair.radius,
        increasing,
    })
}

impl LevelSpeed {
    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    /// Speeds at the tabulated levels.
    pub fn speeds(&self) -> &[f64] {
        &self.speeds
    }

    /// Radius of each tabulated level.
    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn v_min(&self) -> f64 {
        self.levels[0]
    }

    pub fn v_max(&self) -> f64 {
        *self.levels.last().unwrap()
    }

    pub fn center_level(&self) -> f64 {
        self.center_level
    }

    /// Level on the sphere `|x| = R`.
    pub fn boundary_level(&self) -> f64 {
        if self.increasing {
            self.v_max()
        } else {
            self.v_min()
        }
    }

    pub fn increasing(&self) -> bool {
        self.increasing
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Regularised speed `g(t) / |t - t_c|^{1/p}`.
    pub fn reduced(&self, t: f64) -> f64 {
        self.h.eval(t)
    }

    /// `g(t)`.
    pub fn speed(&self, t: f64) -> f64 {
        self.h.eval(t) * (t - self.center_level).abs().powf(1.0 / self.p)
    }

    /// Exponent `m = 2p'` of the substitution `|t - t_c| = s^m`, which turns
    /// `dt / g` into `m s / h(t) ds`, smooth up to the centre level.
    pub fn exponent(&self) -> f64 {
        2.0 * conjugate(self.p)
    }

    /// Level `t` for the substituted variable `s`.
    pub fn level_of(&self, s: f64) -> f64 {
        let d = s.powf(self.exponent());
        if self.increasing {
            self.center_level + d
        } else {
            self.center_level - d
        }
    }

    /// Substituted variable `s = |t - t_c|^{1/m}`.
    pub fn sigma(&self, t: f64) -> f64 {
        (t - self.center_level).abs().powf(1.0 / self.exponent())
    }

    /// `int_a^b dt / g(t)` for levels `a <= b` in range, by one Kronrod
    /// panel in the substituted variable. Accurate when `[a, b]` lies in one
    /// table cell.
    pub fn travel_panel(&self, a: f64, b: f64) -> f64 {
        let m = self.exponent();
        let (sa, sb) = (self.sigma(a), self.sigma(b));
        let (lo, hi) = if sa <= sb { (sa, sb) } else { (sb, sa) };
        let mut f = |s: f64| m * s / self.h.eval(self.level_of(s));
        gk15(&mut f, lo, hi).0
    }

    /// `int_a^b dt / g(t)` for `a <= b`, split at table levels.
    pub fn travel(&self, a: f64, b: f64) -> f64 {
        if b == a {
            return 0.0;
        }
        if b < a {
            return -self.travel(b, a);
        }
        let i0 = self.levels.partition_point(|&t| t <= a);
        let i1 = self.levels.partition_point(|&t| t < b);
        let mut knots = vec![a];
        knots.extend_from_slice(&self.levels[i0..i1]);
        knots.push(b);
        knots.windows(2).map(|w| self.travel_panel(w[0], w[1])).sum()
    }

    /// Radius of the level `t`, recovered by integrating `dr = dt / g`
    /// from the boundary level.
    pub fn radius_of_level(&self, t: f64) -> f64 {
        if self.increasing {
            self.radius - self.travel(t, self.v_max())
        } else {
            self.radius - self.travel(self.v_min(), t)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::solve_radial;
    use super::*;

    #[test]
    fn round_trip_radius() {
        for &(p, beta) in &[(2.0, 1.0), (1.5, -1.0), (3.0, 2.0), (2.0, -5.0)] {
            let pair = solve_radial(2, p, beta, 1.0).unwrap();
            let sp = level_speed(&pair).unwrap();
            let total = sp.travel(sp.v_min(), sp.v_max());
            assert!((total - 1.0).abs() < 1e-6, "{p} {beta} {total}");
            for (i, &t) in sp.levels().iter().enumerate().step_by(97) {
                assert!((sp.radius_of_level(t) - sp.radii()[i]).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn endpoint_behaviour() {
        let pair = solve_radial(2, 2.0, 1.0, 1.0).unwrap();
        let sp = level_speed(&pair).unwrap();
        assert_eq!(sp.speed(sp.v_max()), 0.0);
        // Robin condition at p = 2: |v'(R)| = beta v(R)
        let t = sp.v_min();
        assert!((sp.speed(t) - pair.v_min).abs() < 1e-9);
    }

    #[test]
    fn constant_profile_rejected() {
        let pair = solve_radial(2, 2.0, 0.0, 1.0).unwrap();
        assert!(level_speed(&pair).is_err());
    }
}
