use super::{Boundary, RadialEigenpair, RadialError};
use crate::numerics::ode::{Advance, Dp45};
use crate::numerics::{conjugate, phi, rel_diff, unit_ball_volume};
use std::f64::consts::PI;

/// Number of output radii.
pub const GRID_POINTS: usize = 2048;

const RTOL: f64 = 1e-12;
const EPS_REL: f64 = 1e-6;

/// Output radii `R (s/2 + sin(pi s / 2) / 2)`, denser towards `r = R`.
pub fn radial_grid(radius: f64) -> Vec<f64> {
    let m = GRID_POINTS - 1;
    (0..GRID_POINTS)
        .map(|i| {
            if i == m {
                return radius;
            }
            let s = i as f64 / m as f64;
            radius * (0.5 * s + 0.5 * (0.5 * PI * s).sin())
        })
        .collect()
}

type State = [f64; 4];

fn rhs(n: usize, p: f64, lambda: f64) -> impl Fn(f64, &State) -> State {
    let nm1 = n as f64 - 1.0;
    let q = conjugate(p);
    move |r: f64, y: &State| {
        let v = 1.0 + y[0];
        let dv = phi(y[1], q);
        let rn = r.powi(n as i32 - 1);
        [dv, -lambda * phi(v, p) - nm1 * y[1] / r, rn * v.abs().powf(p), rn * dv.abs().powf(p)]
    }
}

/// Leading-order series at `r = eps`.
fn series_start(n: usize, p: f64, lambda: f64, eps: f64) -> State {
    let nf = n as f64;
    let q = conjugate(p);
    let k = (lambda.abs() / nf).powf(1.0 / (p - 1.0));
    let z = -lambda.signum() * (p - 1.0) / p * k * eps.powf(q);
    let w = -lambda * eps / nf;
    let e = (lambda.abs() / nf).powf(q) * eps.powf(nf + q) / (nf + q);
    [z, w, eps.powi(n as i32) / nf, e]
}

fn solver(radius: f64) -> Dp45 {
    // every component keeps one sign on the relevant range, so pure
    // relative control is adequate
    Dp45::with_atol(RTOL, vec![1e-300], EPS_REL * radius)
}

enum Shot {
    Reached(State),
    Crossed,
}

fn shoot(n: usize, p: f64, lambda: f64, radius: f64, eps: f64) -> Result<Shot, RadialError> {
    let f = rhs(n, p, lambda);
    let y0 = series_start(n, p, lambda, eps);
    let mut ode = solver(radius);
    let stop = |y: &State| 1.0 + y[0] <= 0.0;
    match ode.advance(&f, eps, y0, radius, &stop) {
        Ok(Advance::Reached(y)) => Ok(Shot::Reached(y)),
        Ok(Advance::Stopped { .. }) => Ok(Shot::Crossed),
        Err(e) => Err(RadialError::Ode { radius: ode_radius(&e), source: e }),
    }
}

fn ode_radius(e: &crate::numerics::ode::OdeError) -> f64 {
    use crate::numerics::ode::OdeError::*;
    match *e {
        StepUnderflow { t } | NonFinite { t } | TooManySteps { t } => t,
    }
}

/// Sign-bisection of a residual that is decreasing in `lambda`.
fn bisect_decreasing(
    f: impl Fn(f64) -> Result<f64, RadialError>,
    mut lo: f64,
    mut hi: f64,
) -> Result<(f64, f64), RadialError> {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || (hi - lo) <= 4e-16 * lo.abs().max(hi.abs()) {
            break;
        }
        if f(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo, hi))
}

fn robin_residual(n: usize, p: f64, beta: f64, lambda: f64, radius: f64) -> Result<f64, RadialError> {
    Ok(match shoot(n, p, lambda, radius, EPS_REL * radius)? {
        Shot::Reached(y) => y[1] + beta * phi(1.0 + y[0], p),
        Shot::Crossed => -1.0,
    })
}

fn dirichlet_residual(n: usize, p: f64, lambda: f64, radius: f64) -> Result<f64, RadialError> {
    Ok(match shoot(n, p, lambda, radius, EPS_REL * radius)? {
        Shot::Reached(y) => 1.0 + y[0],
        Shot::Crossed => -1.0,
    })
}

fn validate(n: usize, p: f64, radius: f64) -> Result<(), RadialError> {
    if n < 2 {
        return Err(RadialError::InvalidArgument(format!("dimension {n} < 2")));
    }
    if !(p > 1.0 && p.is_finite()) {
        return Err(RadialError::InvalidArgument(format!("p = {p} must exceed 1")));
    }
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(RadialError::InvalidArgument(format!("radius = {radius} must be positive")));
    }
    Ok(())
}

fn dirichlet_lambda(n: usize, p: f64, radius: f64) -> Result<f64, RadialError> {
    let mut hi = radius.powf(-p);
    let mut tries = 0;
    while dirichlet_residual(n, p, hi, radius)? > 0.0 {
        hi *= 2.0;
        tries += 1;
        if tries > 200 {
            return Err(RadialError::BracketNotFound { lo: 0.0, hi });
        }
    }
    let (lo, _) = bisect_decreasing(|l| dirichlet_residual(n, p, l, radius), 0.0, hi)?;
    // the lower end keeps v(R) >= 0
    Ok(lo)
}

/// First Robin eigenpair of `-Delta_p` on `B_R` in `R^n`. `beta = 0` gives
/// the Neumann pair `lambda = 0`, `v = 1`.
pub fn solve_radial(n: usize, p: f64, beta: f64, radius: f64) -> Result<RadialEigenpair, RadialError> {
    validate(n, p, radius)?;
    if !beta.is_finite() {
        return Err(RadialError::InvalidArgument(format!("beta = {beta}")));
    }
    let nf = n as f64;
    let lambda = if beta == 0.0 {
        return Ok(constant_pair(n, p, radius));
    } else if beta > 0.0 {
        let mut hi = dirichlet_lambda(n, p, radius)? * (1.0 + 1e-6);
        let mut tries = 0;
        while robin_residual(n, p, beta, hi, radius)? > 0.0 {
            hi *= 2.0;
            tries += 1;
            if tries > 100 {
                return Err(RadialError::BracketNotFound { lo: 0.0, hi });
            }
        }
        let (lo, hi) = bisect_decreasing(|l| robin_residual(n, p, beta, l, radius), 0.0, hi)?;
        0.5 * (lo + hi)
    } else {
        let top = beta * nf / radius;
        let mut k = 2.0;
        while robin_residual(n, p, beta, k * top, radius)? <= 0.0 {
            k *= 2.0;
            if k > 1e12 {
                return Err(RadialError::BracketNotFound { lo: k * top, hi: top });
            }
        }
        let (lo, hi) = bisect_decreasing(|l| robin_residual(n, p, beta, l, radius), k * top, top)?;
        0.5 * (lo + hi)
    };
    assemble(n, p, Boundary::Robin { beta }, lambda, radius)
}

/// First Dirichlet eigenpair of `-Delta_p` on `B_R`, normalised `v(0) = 1`.
pub fn dirichlet_radial(n: usize, p: f64, radius: f64) -> Result<RadialEigenpair, RadialError> {
    validate(n, p, radius)?;
    let lambda = dirichlet_lambda(n, p, radius)?;
    assemble(n, p, Boundary::Dirichlet, lambda, radius)
}

fn constant_pair(n: usize, p: f64, radius: f64) -> RadialEigenpair {
    let grid = radial_grid(radius);
    let m = grid.len();
    let vol = unit_ball_volume(n) * radius.powi(n as i32);
    RadialEigenpair {
        dim: n,
        p,
        boundary: Boundary::Robin { beta: 0.0 },
        radius,
        lambda: 0.0,
        grid,
        values: vec![1.0; m],
        excess: vec![0.0; m],
        derivs: vec![0.0; m],
        fluxes: vec![0.0; m],
        v_min: 1.0,
        v_max: 1.0,
        lp_norm_p: vol,
        grad_norm_p: 0.0,
        linf: 1.0,
        boundary_residual: 0.0,
        start_sensitivity: 0.0,
    }
}

fn integrate_grid(n: usize, p: f64, lambda: f64, grid: &[f64], eps: f64) -> Result<Vec<State>, RadialError> {
    let f = rhs(n, p, lambda);
    let mut ode = solver(*grid.last().unwrap());
    let mut out = Vec::with_capacity(grid.len());
    out.push([0.0, 0.0, 0.0, 0.0]);
    let mut r = eps;
    let mut y = series_start(n, p, lambda, eps);
    for &target in &grid[1..] {
        if target <= r {
            // a grid point inside the series region
            out.push(series_start(n, p, lambda, target));
            continue;
        }
        match ode.advance(&f, r, y, target, &|_| false) {
            Ok(Advance::Reached(yy)) => y = yy,
            Ok(Advance::Stopped { .. }) => unreachable!(),
            Err(e) => return Err(RadialError::Ode { radius: ode_radius(&e), source: e }),
        }
        r = target;
        out.push(y);
    }
    Ok(out)
}

fn assemble(n: usize, p: f64, boundary: Boundary, lambda: f64, radius: f64) -> Result<RadialEigenpair, RadialError> {
    let grid = radial_grid(radius);
    let eps = EPS_REL * radius;
    let states = integrate_grid(n, p, lambda, &grid, eps)?;
    let q = conjugate(p);
    let mut excess: Vec<f64> = states.iter().map(|y| y[0]).collect();
    let mut values: Vec<f64> = excess.iter().map(|z| 1.0 + z).collect();
    if boundary == Boundary::Dirichlet {
        let last = values.len() - 1;
        values[last] = 0.0;
        excess[last] = -1.0;
    }
    let fluxes: Vec<f64> = states.iter().map(|y| y[1]).collect();
    let derivs: Vec<f64> = fluxes.iter().map(|&w| phi(w, q)).collect();
    let last = states.last().unwrap();
    let sphere = n as f64 * unit_ball_volume(n);
    let (v_min, v_max) = values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
    let (vr, wr) = (1.0 + last[0], last[1]);
    let boundary_residual = match boundary {
        Boundary::Robin { beta } => {
            let bt = beta * phi(vr, p);
            (wr + bt).abs() / (wr.abs() + bt.abs()).max(f64::MIN_POSITIVE)
        }
        Boundary::Dirichlet => vr.abs(),
    };
    let start_sensitivity = match shoot(n, p, lambda, radius, 2.0 * eps)? {
        Shot::Reached(y) => rel_diff(1.0 + y[0], vr).max(rel_diff(y[1], wr)),
        Shot::Crossed => rel_diff(0.0, vr),
    };
    Ok(RadialEigenpair {
        dim: n,
        p,
        boundary,
        radius,
        lambda,
        grid,
        values,
        excess,
        derivs,
        fluxes,
        v_min,
        v_max,
        lp_norm_p: sphere * last[2],
        grad_norm_p: sphere * last[3],
        linf: v_max,
        boundary_residual,
        start_sensitivity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neumann_case() {
        let pair = solve_radial(2, 2.0, 0.0, 1.0).unwrap();
        assert_eq!(pair.lambda, 0.0);
        assert!(pair.values.iter().all(|&v| v == 1.0));
        assert!((pair.lp_norm_p - PI).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(solve_radial(1, 2.0, 1.0, 1.0).is_err());
        assert!(solve_radial(2, 1.0, 1.0, 1.0).is_err());
        assert!(solve_radial(2, 2.0, 1.0, 0.0).is_err());
        assert!(solve_radial(2, 2.0, f64::NAN, 1.0).is_err());
    }

    #[test]
    fn grid_shape() {
        let g = radial_grid(2.0);
        assert_eq!(g.len(), GRID_POINTS);
        assert_eq!(g[0], 0.0);
        assert_eq!(*g.last().unwrap(), 2.0);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        // spacing shrinks towards the boundary
        assert!(g[1] - g[0] > g[GRID_POINTS - 1] - g[GRID_POINTS - 2]);
    }

    #[test]
    fn signs_and_monotonicity() {
        for &p in &[1.5, 2.0, 3.0] {
            let pos = solve_radial(2, p, 1.0, 1.0).unwrap();
            assert!(pos.lambda > 0.0);
            assert!(pos.values.windows(2).all(|w| w[1] < w[0]));
            assert_eq!(pos.v_max, pos.values[0]);
            assert!(pos.boundary_residual < 1e-9, "{}", pos.boundary_residual);
            let neg = solve_radial(3, p, -1.0, 1.0).unwrap();
            assert!(neg.lambda < 0.0 && neg.lambda <= -3.0);
            assert!(neg.values.windows(2).all(|w| w[1] > w[0]));
            assert!(neg.boundary_residual < 1e-9);
            let d = dirichlet_radial(2, p, 1.0).unwrap();
            assert!(pos.lambda < d.lambda);
        }
    }

    #[test]
    fn rayleigh_quotient_reproduces_lambda() {
        for &(p, beta) in &[(1.5, 1.0), (2.0, -2.0), (3.0, 0.5), (2.5, -1.0)] {
            let pair = solve_radial(2, p, beta, 1.3).unwrap();
            assert!(rel_diff(pair.rayleigh_quotient(), pair.lambda) < 1e-9, "{p} {beta}");
        }
    }

    #[test]
    fn small_beta_neumann_limit() {
        let pair = solve_radial(2, 2.0, 1e-6, 1.0).unwrap();
        assert!(rel_diff(pair.lambda, 2e-6) < 1e-5, "{}", pair.lambda);
        assert!(1.0 - pair.v_min < 1e-6);
    }
}
