use super::{solve_radial, Boundary, RadialEigenpair, RadialError};
use crate::numerics::phi;
use crate::numerics::quad::gk15;
use serde::Serialize;
use std::f64::consts::PI;

/// `C = v_*^p |B| / ||v||_p^p`, where `v_*` is the maximum of `v` for a
/// positive Robin parameter (and for the Dirichlet pair) and the minimum of
/// `v` for a negative one. Invariant under `v -> c v`.
pub fn constant_c(pair: &RadialEigenpair) -> f64 {
    let ext = match pair.boundary {
        Boundary::Robin { beta } if beta < 0.0 => pair.v_min,
        Boundary::Robin { beta } if beta == 0.0 => return 1.0,
        _ => pair.v_max,
    };
    ext.powf(pair.p) * pair.ball_volume() / pair.lp_norm_p
}

/// For `0 < r < R`, the restriction of `v` to `B_r` is the first Robin
/// eigenfunction there with parameter
/// `gamma = -|v'(r)|^{p-2} v'(r) / v(r)^{p-1}`. Returns `gamma` and the
/// eigenvalue of `B_r` re-solved independently with that parameter.
pub fn cut_parameter(pair: &RadialEigenpair, r: f64) -> Result<(f64, f64), RadialError> {
    if !(r > 0.0 && r < pair.radius) {
        return Err(RadialError::InvalidArgument(format!("cut radius {r} outside (0, {})", pair.radius)));
    }
    let v = pair.profile().eval(r);
    let w = pair.flux_profile().eval(r);
    let gamma = -w / phi(v, pair.p);
    let inner = solve_radial(pair.dim, pair.p, gamma, r)?;
    Ok((gamma, inner.lambda))
}

#[derive(Debug, Clone, Serialize)]
pub struct MonotonicityReport {
    pub beta1: f64,
    pub beta2: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    pub norm1: f64,
    pub norm2: f64,
    pub pointwise: bool,
    pub eigenvalue_order: bool,
    pub norm_order: bool,
    /// First grid index with `v_1(r_i) < v_2(r_i) - 1e-10`, with its radius.
    pub first_violation: Option<(usize, f64)>,
    /// `max_i (v_2(r_i) - v_1(r_i))`, clipped below at zero.
    pub max_violation: f64,
}

impl MonotonicityReport {
    pub fn holds(&self) -> bool {
        self.pointwise && self.eigenvalue_order && self.norm_order
    }
}

/// Compare the profiles for `beta1 <= beta2` on the shared grid: the
/// smaller parameter gives the larger eigenfunction, the smaller eigenvalue
/// and the larger `L^p` norm.
pub fn monotonicity_check(
    n: usize,
    p: f64,
    beta1: f64,
    beta2: f64,
    radius: f64,
) -> Result<MonotonicityReport, RadialError> {
    if beta1 > beta2 {
        return Err(RadialError::InvalidArgument(format!("beta1 = {beta1} > beta2 = {beta2}")));
    }
    let a = solve_radial(n, p, beta1, radius)?;
    let b = if beta1 == beta2 { a.clone() } else { solve_radial(n, p, beta2, radius)? };
    let mut first = None;
    let mut worst: f64 = 0.0;
    for i in 0..a.grid.len() {
        let d = b.values[i] - a.values[i];
        worst = worst.max(d);
        if d > 1e-10 && first.is_none() {
            first = Some((i, a.grid[i]));
        }
    }
    let (n1, n2) = (a.lp_norm_p.powf(1.0 / p), b.lp_norm_p.powf(1.0 / p));
    let strict = beta1 < beta2;
    Ok(MonotonicityReport {
        beta1,
        beta2,
        lambda1: a.lambda,
        lambda2: b.lambda,
        norm1: n1,
        norm2: n2,
        pointwise: first.is_none(),
        eigenvalue_order: if strict { a.lambda < b.lambda } else { a.lambda == b.lambda },
        norm_order: n1 >= n2 * (1.0 - 1e-12),
        first_violation: first,
        max_violation: worst,
    })
}

/// Weak-form residuals against `k` radial test functions
/// `psi_j(r) = cos(c_j pi r / R)`, with `c_j = j` (Robin) or `j + 1/2`
/// (Dirichlet, so that `psi_j(R) = 0`). Each residual is divided by
/// `int r^{n-1} |phi_p(v) psi_j|`, making it comparable to `|lambda|`.
/// Returns the largest one.
pub fn weak_residual(pair: &RadialEigenpair, k: usize) -> f64 {
    let v = pair.profile();
    let w = pair.flux_profile();
    let n = pair.dim as i32;
    let p = pair.p;
    let big_r = pair.radius;
    let mut worst: f64 = 0.0;
    for j in 0..k {
        let c = match pair.boundary {
            Boundary::Robin { .. } => j as f64,
            Boundary::Dirichlet => j as f64 + 0.5,
        } * PI
            / big_r;
        let (mut res, mut scale) = (0.0, 0.0);
        for cell in pair.grid.windows(2) {
            let mut f = |r: f64| {
                let rn = r.powi(n - 1);
                rn * (w.eval(r) * (-c * (c * r).sin()) - pair.lambda * phi(v.eval(r), p) * (c * r).cos())
            };
            res += gk15(&mut f, cell[0], cell[1]).0;
            let mut g = |r: f64| r.powi(n - 1) * (phi(v.eval(r), p) * (c * r).cos()).abs();
            scale += gk15(&mut g, cell[0], cell[1]).0;
        }
        if let Boundary::Robin { beta } = pair.boundary {
            res += beta * big_r.powi(n - 1) * phi(pair.boundary_value(), p) * (c * big_r).cos();
        }
        worst = worst.max(res.abs() / scale);
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::super::dirichlet_radial;
    use super::*;

    #[test]
    fn constant_is_one_in_neumann_limit() {
        assert_eq!(constant_c(&solve_radial(2, 2.0, 0.0, 1.0).unwrap()), 1.0);
        let c = constant_c(&solve_radial(3, 1.7, 1e-7, 1.0).unwrap());
        assert!((c - 1.0).abs() < 1e-6);
    }

    #[test]
    fn constant_ordering_in_beta() {
        let c = |b: f64| constant_c(&solve_radial(2, 2.0, b, 1.0).unwrap());
        assert!(c(10.0) >= c(0.1));
        assert!(c(-1.0) >= c(-10.0));
        let cd = constant_c(&dirichlet_radial(2, 2.0, 1.0).unwrap());
        assert!(c(10.0) <= cd);
    }

    #[test]
    fn weak_residuals_small() {
        for pair in [
            solve_radial(2, 2.0, 1.0, 1.0).unwrap(),
            solve_radial(2, 1.5, -1.0, 1.0).unwrap(),
            solve_radial(3, 3.0, 2.0, 0.7).unwrap(),
            dirichlet_radial(2, 2.0, 1.0).unwrap(),
        ] {
            let r = weak_residual(&pair, 20);
            assert!(r < 1e-7 * pair.lambda.abs(), "{} {}", pair.p, r);
        }
    }

    #[test]
    fn cut_rejects_bad_radius() {
        let pair = solve_radial(2, 2.0, 1.0, 1.0).unwrap();
        assert!(cut_parameter(&pair, 0.0).is_err());
        assert!(cut_parameter(&pair, 1.0).is_err());
    }

    #[test]
    fn cut_near_boundary_recovers_beta() {
        let pair = solve_radial(2, 2.0, 1.0, 1.0).unwrap();
        let (g, l) = cut_parameter(&pair, 0.999_999).unwrap();
        assert!((g - 1.0).abs() < 1e-4);
        assert!((l - pair.lambda).abs() < 1e-6 * pair.lambda);
    }

    #[test]
    fn identical_parameters_are_equal() {
        let r = monotonicity_check(2, 2.0, 1.0, 1.0, 1.0).unwrap();
        assert!(r.holds());
        assert_eq!(r.max_violation, 0.0);
    }
}
