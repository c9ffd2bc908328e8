//! Bessel functions by direct power series, and the Robin/Dirichlet roots on
//! the unit disk and unit ball that follow from them.
//!
//! The series are summed until terms fall below 1e-18 of the running sum.
//! For the alternating `J` series this is accurate for |x| up to about 10;
//! the `I` series has positive terms and is fine well beyond x = 30.

use crate::bisect;

fn series(x: f64, order: u32, alternating: bool) -> f64 {
    let q = 0.25 * x * x;
    // leading term (x/2)^order / order!
    let mut term = 1.0;
    for k in 1..=order {
        term *= 0.5 * x / k as f64;
    }
    let mut sum = term;
    for k in 1..500u32 {
        term *= q / (k as f64 * (k + order) as f64);
        if alternating {
            term = -term;
        }
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

pub fn j0(x: f64) -> f64 {
    series(x, 0, true)
}

pub fn j1(x: f64) -> f64 {
    series(x, 1, true)
}

pub fn i0(x: f64) -> f64 {
    series(x, 0, false)
}

pub fn i1(x: f64) -> f64 {
    series(x, 1, false)
}

/// First positive zero of `J0` (≈ 2.404825557695773).
pub fn j0_first_zero() -> f64 {
    bisect(2.0, 3.0, j0)
}

/// First Robin eigenvalue of the Laplacian on the unit disk.
///
/// For `beta > 0` this is `k^2` with `k J1(k) = beta J0(k)`, `k < j_{0,1}`;
/// for `beta < 0` it is `-k^2` with `k I1(k) = |beta| I0(k)`.
pub fn robin_disk_lambda(beta: f64) -> f64 {
    if beta > 0.0 {
        let k = bisect(1e-12, j0_first_zero() - 1e-14, |k| k * j1(k) - beta * j0(k));
        k * k
    } else if beta < 0.0 {
        let b = beta.abs();
        let mut hi = b + 1.0;
        while hi * i1(hi) - b * i0(hi) < 0.0 {
            hi *= 2.0;
        }
        let k = bisect(1e-12, hi, |k| k * i1(k) - b * i0(k));
        -k * k
    } else {
        0.0
    }
}

/// Radial eigenprofile `v(r)` on the unit disk with `v(0) = 1`, for the
/// eigenvalue `lambda` (either sign), together with `v'(r)`.
pub fn disk_profile(lambda: f64, r: f64) -> (f64, f64) {
    if lambda > 0.0 {
        let k = lambda.sqrt();
        (j0(k * r), -k * j1(k * r))
    } else if lambda < 0.0 {
        let k = (-lambda).sqrt();
        (i0(k * r), k * i1(k * r))
    } else {
        (1.0, 0.0)
    }
}

/// First Robin eigenvalue of the Laplacian on the unit ball in R^3.
///
/// The profile is `sin(kr)/(kr)`; the Robin condition reduces to
/// `k cot k = 1 - beta` (and `k coth k = 1 - beta` for `beta < 0`).
pub fn robin_ball3_lambda(beta: f64) -> f64 {
    if beta > 0.0 {
        let k = bisect(1e-9, std::f64::consts::PI - 1e-12, |k| {
            k * k.cos() - (1.0 - beta) * k.sin()
        });
        k * k
    } else if beta < 0.0 {
        let target = 1.0 - beta;
        let mut hi = target + 1.0;
        while hi / hi.tanh() < target {
            hi *= 2.0;
        }
        let k = bisect(1e-9, hi, |k| k / k.tanh() - target);
        -k * k
    } else {
        0.0
    }
}
