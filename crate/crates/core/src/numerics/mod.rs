//! Small numerical kernels shared by the solvers.

pub mod interp;
pub mod ode;
pub mod optim;
pub mod quad;

/// `|x|^{q-2} x`, the duality map of exponent `q`.
#[inline]
pub fn phi(x: f64, q: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x.signum() * x.abs().powf(q - 1.0)
    }
}

/// Conjugate exponent `p / (p - 1)`.
#[inline]
pub fn conjugate(p: f64) -> f64 {
    p / (p - 1.0)
}

/// Volume of the unit ball in `R^n`.
pub fn unit_ball_volume(n: usize) -> f64 {
    // omega_0 = 1, omega_1 = 2, omega_n = 2 pi / n * omega_{n-2}
    let mut w = if n % 2 == 0 { 1.0 } else { 2.0 };
    let mut k = if n % 2 == 0 { 2 } else { 3 };
    while k <= n {
        w *= 2.0 * std::f64::consts::PI / k as f64;
        k += 2;
    }
    w
}

/// Relative difference `|a - b| / max(|a|, |b|)`, zero when both vanish.
pub fn rel_diff(a: f64, b: f64) -> f64 {
    let s = a.abs().max(b.abs());
    if s == 0.0 {
        0.0
    } else {
        (a - b).abs() / s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn ball_volumes() {
        assert!((unit_ball_volume(2) - PI).abs() < 1e-15);
        assert!((unit_ball_volume(3) - 4.0 * PI / 3.0).abs() < 1e-15);
        assert!((unit_ball_volume(4) - PI * PI / 2.0).abs() < 1e-14);
        assert!((unit_ball_volume(1) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn duality_map_inverts() {
        for &p in &[1.5, 2.0, 3.0] {
            for &x in &[-2.0, -0.3, 0.0, 0.7, 5.0] {
                let y = phi(phi(x, p), conjugate(p));
                assert!((y - x).abs() < 1e-13 * (1.0 + x.abs()));
            }
        }
    }
}
