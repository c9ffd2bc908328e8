//! Piecewise cubic interpolation on sorted abscissae.

/// Index `i` with `x[i] <= t <= x[i+1]`, clamped to the table.
fn locate(x: &[f64], t: f64) -> usize {
    let n = x.len();
    if t <= x[0] {
        return 0;
    }
    if t >= x[n - 1] {
        return n - 2;
    }
    match x.binary_search_by(|v| v.partial_cmp(&t).unwrap()) {
        Ok(i) => i.min(n - 2),
        Err(i) => i - 1,
    }
}

fn hermite(x0: f64, x1: f64, y0: f64, y1: f64, d0: f64, d1: f64, t: f64) -> f64 {
    let h = x1 - x0;
    let s = (t - x0) / h;
    let s2 = s * s;
    let s3 = s2 * s;
    let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
    let h10 = s3 - 2.0 * s2 + s;
    let h01 = -2.0 * s3 + 3.0 * s2;
    let h11 = s3 - s2;
    h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1
}

fn hermite_deriv(x0: f64, x1: f64, y0: f64, y1: f64, d0: f64, d1: f64, t: f64) -> f64 {
    let h = x1 - x0;
    let s = (t - x0) / h;
    let s2 = s * s;
    ((6.0 * s2 - 6.0 * s) * (y0 - y1)) / h
        + (3.0 * s2 - 4.0 * s + 1.0) * d0
        + (3.0 * s2 - 2.0 * s) * d1
}

/// Cubic Hermite interpolant with prescribed nodal slopes.
#[derive(Debug, Clone)]
pub struct Hermite {
    x: Vec<f64>,
    y: Vec<f64>,
    d: Vec<f64>,
}

impl Hermite {
    /// `x` must be strictly increasing with at least two entries.
    pub fn new(x: Vec<f64>, y: Vec<f64>, d: Vec<f64>) -> Self {
        assert!(x.len() >= 2 && x.len() == y.len() && y.len() == d.len());
        debug_assert!(x.windows(2).all(|w| w[0] < w[1]));
        Self { x, y, d }
    }

    pub fn eval(&self, t: f64) -> f64 {
        let i = locate(&self.x, t);
        hermite(self.x[i], self.x[i + 1], self.y[i], self.y[i + 1], self.d[i], self.d[i + 1], t)
    }

    pub fn deriv(&self, t: f64) -> f64 {
        let i = locate(&self.x, t);
        hermite_deriv(self.x[i], self.x[i + 1], self.y[i], self.y[i + 1], self.d[i], self.d[i + 1], t)
    }

    pub fn knots(&self) -> &[f64] {
        &self.x
    }
}

/// Fritsch–Carlson monotone cubic (PCHIP). Preserves monotonicity of the data
/// on each interval, so a positive table never interpolates to a negative
/// value.
#[derive(Debug, Clone)]
pub struct Pchip(Hermite);

impl Pchip {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Self {
        let n = x.len();
        assert!(n >= 2 && n == y.len());
        let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
        let delta: Vec<f64> = (0..n - 1).map(|i| (y[i + 1] - y[i]) / h[i]).collect();
        let mut d = vec![0.0; n];
        if n == 2 {
            d[0] = delta[0];
            d[1] = delta[0];
            return Self(Hermite::new(x, y, d));
        }
        for i in 1..n - 1 {
            if delta[i - 1] * delta[i] > 0.0 {
                let w1 = 2.0 * h[i] + h[i - 1];
                let w2 = h[i] + 2.0 * h[i - 1];
                d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
            }
        }
        d[0] = end_slope(h[0], h[1], delta[0], delta[1]);
        d[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
        Self(Hermite::new(x, y, d))
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.0.eval(t)
    }

    pub fn knots(&self) -> &[f64] {
        self.0.knots()
    }
}

// one-sided three-point end slope, limited as in the usual PCHIP recipe
fn end_slope(h0: f64, h1: f64, d0: f64, d1: f64) -> f64 {
    let d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if d.signum() != d0.signum() {
        0.0
    } else if d0.signum() != d1.signum() && d.abs() > 3.0 * d0.abs() {
        3.0 * d0
    } else {
        d
    }
}
