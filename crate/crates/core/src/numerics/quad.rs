//! Adaptive Gauss–Kronrod (7/15) quadrature.

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// One 15-point Kronrod panel; returns (integral, error estimate).
pub fn gk15(f: &mut impl FnMut(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        kron += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    (kron * h, ((kron - gauss) * h).abs())
}

/// Adaptive bisection of Kronrod panels until the summed error estimate is
/// below `max(abs_tol, rel_tol * |I|)` or `max_panels` is reached.
///
/// Returns (integral, estimated error).
pub fn integrate(
    mut f: impl FnMut(f64) -> f64,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> (f64, f64) {
    if a == b {
        return (0.0, 0.0);
    }
    let max_panels = 2000;
    let (i0, e0) = gk15(&mut f, a, b);
    let mut panels: Vec<(f64, f64, f64, f64)> = vec![(a, b, i0, e0)];
    let mut total = i0;
    let mut err = e0;
    while err > abs_tol.max(rel_tol * total.abs()) && panels.len() < max_panels {
        // split the worst panel
        let (idx, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.partial_cmp(&y.1 .3).unwrap())
            .unwrap();
        let (pa, pb, pi, pe) = panels.swap_remove(idx);
        let m = 0.5 * (pa + pb);
        if m <= pa || m >= pb {
            panels.push((pa, pb, pi, pe));
            break;
        }
        let (l, le) = gk15(&mut f, pa, m);
        let (r, re) = gk15(&mut f, m, pb);
        total += l + r - pi;
        err += le + re - pe;
        panels.push((pa, m, l, le));
        panels.push((m, pb, r, re));
    }
    // re-sum to shed accumulated cancellation
    let total: f64 = panels.iter().map(|p| p.2).sum();
    let err: f64 = panels.iter().map(|p| p.3).sum();
    (total, err)
}

/// Integrate over `[a, b]` split at the given interior breakpoints.
pub fn integrate_pieces(
    mut f: impl FnMut(f64) -> f64,
    a: f64,
    b: f64,
    breaks: &[f64],
    abs_tol: f64,
    rel_tol: f64,
) -> f64 {
    let mut knots: Vec<f64> = std::iter::once(a)
        .chain(breaks.iter().copied().filter(|&t| t > a.min(b) && t < a.max(b)))
        .chain(std::iter::once(b))
        .collect();
    if a < b {
        knots.sort_by(|x, y| x.partial_cmp(y).unwrap());
    } else {
        knots.sort_by(|x, y| y.partial_cmp(x).unwrap());
    }
    knots.dedup();
    let pieces = (knots.len() - 1).max(1) as f64;
    knots
        .windows(2)
        .map(|w| integrate(&mut f, w[0], w[1], abs_tol / pieces, rel_tol).0)
        .sum()
}
