//! Reference oracles for the robin-bounds test suites.
//!
//! Everything here is deliberately written without touching the main crate:
//! power series instead of ODE shooting, Monte-Carlo instead of shoelace,
//! point clouds instead of support functions. Tests compare the two routes.

pub mod bessel;
pub mod geometry;
pub mod quadrature;

/// Plain bisection on a sign change of `f` in `[lo, hi]`.
pub fn bisect(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    let mut flo = f(lo);
    assert!(
        flo * f(hi) <= 0.0,
        "bisect: no sign change on [{lo}, {hi}]"
    );
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Inverse of `f(t) = sqrt(t ln(1/t))` on `(0, 1/e)` evaluated at `y`,
/// by Newton iteration in the variable `x = ln(1/t)`.
///
/// Solves `x e^{-x} = y^2` on the branch `x > 1`.
pub fn inverse_sqrt_t_log(y: f64) -> f64 {
    let c = y * y;
    assert!(c > 0.0 && c < (-1.0f64).exp(), "outside the invertible range");
    // h(x) = ln x - x - ln c, decreasing for x > 1.
    let mut x = (1.0 / c).ln().max(1.5);
    for _ in 0..100 {
        let h = x.ln() - x - c.ln();
        let dh = 1.0 / x - 1.0;
        let step = h / dh;
        let mut next = x - step;
        if next <= 1.0 {
            next = 0.5 * (x + 1.0);
        }
        if (next - x).abs() <= 1e-15 * x {
            x = next;
            break;
        }
        x = next;
    }
    (-x).exp()
}
