//! Derivative-free minimisers and a bracketed root finder.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for a minimiser of a unimodal `f` on `[a, b]`.
/// Returns `(x, f(x))`.
pub fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    let fx = f(x);
    // the midpoint can be worse than the best probe on kinked functions
    [(x, fx), (c, fc), (d, fd)]
        .into_iter()
        .min_by(|p, q| p.1.partial_cmp(&q.1).unwrap())
        .unwrap()
}

/// Bisection for a sign change of `f` on `[lo, hi]`; `f(lo)` and `f(hi)`
/// must have opposite signs. Stops when the bracket is below `tol`
/// (relative to its magnitude) or after 200 halvings.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let flo = f(lo);
    let pos_lo = flo > 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo.min(hi) || mid >= lo.max(hi) {
            break;
        }
        if (f(mid) > 0.0) == pos_lo {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo).abs() <= tol * lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE) {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Nelder–Mead simplex in two dimensions. Returns `(x, f(x))`.
pub fn nelder_mead_2d(
    f: impl Fn([f64; 2]) -> f64,
    x0: [f64; 2],
    step: f64,
    tol: f64,
    max_iter: usize,
) -> ([f64; 2], f64) {
    let mut s = [x0, [x0[0] + step, x0[1]], [x0[0], x0[1] + step]];
    let mut fs = [f(s[0]), f(s[1]), f(s[2])];
    for _ in 0..max_iter {
        let mut idx = [0usize, 1, 2];
        idx.sort_by(|&i, &j| fs[i].partial_cmp(&fs[j]).unwrap());
        s = [s[idx[0]], s[idx[1]], s[idx[2]]];
        fs = [fs[idx[0]], fs[idx[1]], fs[idx[2]]];
        let size = (0..2)
            .map(|k| (s[1][k] - s[0][k]).abs().max((s[2][k] - s[0][k]).abs()))
            .fold(0.0, f64::max);
        if size < tol && (fs[2] - fs[0]).abs() <= tol * (1.0 + fs[0].abs()) {
            break;
        }
        let c = [(s[0][0] + s[1][0]) / 2.0, (s[0][1] + s[1][1]) / 2.0];
        let at = |t: f64| [c[0] + t * (s[2][0] - c[0]), c[1] + t * (s[2][1] - c[1])];
        let xr = at(-1.0);
        let fr = f(xr);
        if fr < fs[0] {
            let xe = at(-2.0);
            let fe = f(xe);
            if fe < fr {
                s[2] = xe;
                fs[2] = fe;
            } else {
                s[2] = xr;
                fs[2] = fr;
            }
        } else if fr < fs[1] {
            s[2] = xr;
            fs[2] = fr;
        } else {
            let (xc, fc) = if fr < fs[2] {
                let x = at(-0.5);
                (x, f(x))
            } else {
                let x = at(0.5);
                (x, f(x))
            };
            if fc < fs[2].min(fr) {
                s[2] = xc;
                fs[2] = fc;
            } else {
                for i in 1..3 {
                    s[i] = [(s[0][0] + s[i][0]) / 2.0, (s[0][1] + s[i][1]) / 2.0];
                    fs[i] = f(s[i]);
                }
            }
        }
    }
    let best = (0..3).min_by(|&i, &j| fs[i].partial_cmp(&fs[j]).unwrap()).unwrap();
    (s[best], fs[best])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_on_kink() {
        let (x, fx) = golden_min(|x| (x - 0.3).abs(), -1.0, 2.0, 1e-12);
        assert!((x - 0.3).abs() < 1e-11 && fx < 1e-11);
    }

    #[test]
    fn bisect_sqrt2() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-15);
        assert!((r - 2f64.sqrt()).abs() < 1e-14);
        let r = bisect(|x| 2.0 - x * x, 0.0, 2.0, 1e-15);
        assert!((r - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn nelder_mead_quadratic() {
        let (x, _) = nelder_mead_2d(|p| (p[0] - 1.0).powi(2) + 3.0 * (p[1] + 2.0).powi(2), [0.0, 0.0], 0.5, 1e-12, 2000);
        assert!((x[0] - 1.0).abs() < 1e-6 && (x[1] + 2.0).abs() < 1e-6);
    }
}
