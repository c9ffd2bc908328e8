//! Dormand–Prince 5(4) integrator with adaptive steps.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OdeError {
    #[error("step size underflow at t = {t}")]
    StepUnderflow { t: f64 },
    #[error("non-finite state at t = {t}")]
    NonFinite { t: f64 },
    #[error("too many steps (reached t = {t})")]
    TooManySteps { t: f64 },
}

/// Result of [`Dp45::advance`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Advance<const N: usize> {
    Reached([f64; N]),
    /// The stop predicate fired after the step ending at `t`.
    Stopped { t: f64, y: [f64; N] },
}

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Integrator state: tolerances and the step size carried between calls.
#[derive(Debug, Clone)]
pub struct Dp45 {
    pub rtol: f64,
    /// Absolute tolerance per component; the last entry repeats.
    pub atol: Vec<f64>,
    pub h: f64,
    pub max_steps: usize,
}

impl Dp45 {
    pub fn new(rtol: f64, atol: f64, h0: f64) -> Self {
        Self { rtol, atol: vec![atol], h: h0, max_steps: 1_000_000 }
    }

    pub fn with_atol(rtol: f64, atol: Vec<f64>, h0: f64) -> Self {
        assert!(!atol.is_empty());
        Self { rtol, atol, h: h0, max_steps: 1_000_000 }
    }

    /// Integrate `y' = f(t, y)` from `t0` to `t1 > t0`. After each accepted
    /// step `stop(y)` is consulted; if it returns true integration ends early.
    pub fn advance<const N: usize>(
        &mut self,
        f: &impl Fn(f64, &[f64; N]) -> [f64; N],
        t0: f64,
        y0: [f64; N],
        t1: f64,
        stop: &impl Fn(&[f64; N]) -> bool,
    ) -> Result<Advance<N>, OdeError> {
        let mut t = t0;
        let mut y = y0;
        let span = t1 - t0;
        if span <= 0.0 {
            return Ok(Advance::Reached(y));
        }
        let mut steps = 0;
        let mut k = [[0.0; N]; 7];
        k[0] = f(t, &y);
        loop {
            let last = t + self.h >= t1;
            let h = if last { t1 - t } else { self.h };
            for s in 1..7 {
                let mut ys = y;
                for j in 0..s {
                    if A[s][j] != 0.0 {
                        for i in 0..N {
                            ys[i] += h * A[s][j] * k[j][i];
                        }
                    }
                }
                k[s] = f(t + C[s] * h, &ys);
            }
            let mut ynew = y;
            let mut err: f64 = 0.0;
            for i in 0..N {
                let mut inc = 0.0;
                let mut e = 0.0;
                for s in 0..7 {
                    inc += B[s] * k[s][i];
                    e += E[s] * k[s][i];
                }
                ynew[i] += h * inc;
                let sc = self.atol[i.min(self.atol.len() - 1)] + self.rtol * y[i].abs().max(ynew[i].abs());
                err = err.max((h * e / sc).abs());
            }
            if !err.is_finite() || ynew.iter().any(|v| !v.is_finite()) {
                if h < 1e-14 * span.max(t.abs()) {
                    return Err(OdeError::NonFinite { t });
                }
                self.h = 0.25 * h;
                continue;
            }
            if err <= 1.0 {
                t = if last { t1 } else { t + h };
                y = ynew;
                // FSAL: last stage is f at the new point
                k[0] = k[6];
                let grow = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).min(5.0) };
                if !last {
                    self.h = h * grow;
                } else {
                    self.h = self.h.max(h);
                }
                if stop(&y) {
                    return Ok(Advance::Stopped { t, y });
                }
                if last {
                    return Ok(Advance::Reached(y));
                }
            } else {
                self.h = h * (0.9 * err.powf(-0.2)).max(0.1);
                if self.h < 1e-15 * span.max(t.abs()) {
                    return Err(OdeError::StepUnderflow { t });
                }
            }
            steps += 1;
            if steps > self.max_steps {
                return Err(OdeError::TooManySteps { t });
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_oscillator() {
        let mut ode = Dp45::new(1e-12, 1e-14, 1e-3);
        let f = |_t: f64, y: &[f64; 2]| [y[1], -y[0]];
        let r = ode.advance(&f, 0.0, [0.0, 1.0], 10.0, &|_| false).unwrap();
        match r {
            Advance::Reached(y) => {
                assert!((y[0] - 10f64.sin()).abs() < 1e-10);
                assert!((y[1] - 10f64.cos()).abs() < 1e-10);
            }
            _ => panic!(),
        }
    }

    #[test]
    fn stop_predicate_fires() {
        let mut ode = Dp45::new(1e-10, 1e-12, 1e-3);
        let f = |_t: f64, _y: &[f64; 1]| [-1.0];
        let r = ode.advance(&f, 0.0, [1.0], 5.0, &|y| y[0] <= 0.0).unwrap();
        match r {
            Advance::Stopped { t, y } => {
                assert!(t >= 1.0 && y[0] <= 0.0);
            }
            _ => panic!(),
        }
    }

    #[test]
    fn piecewise_calls_match_single_call() {
        let f = |t: f64, y: &[f64; 1]| [t.cos() * y[0]];
        let mut a = Dp45::new(1e-12, 1e-14, 1e-3);
        let Advance::Reached(y1) = a.advance(&f, 0.0, [1.0], 3.0, &|_| false).unwrap() else { panic!() };
        let mut b = Dp45::new(1e-12, 1e-14, 1e-3);
        let mut y = [1.0];
        for i in 0..30 {
            let Advance::Reached(yy) =
                b.advance(&f, i as f64 * 0.1, y, (i + 1) as f64 * 0.1, &|_| false).unwrap()
            else {
                panic!()
            };
            y = yy;
        }
        let exact = 3f64.sin().exp();
        assert!((y1[0] - exact).abs() < 1e-10);
        assert!((y[0] - exact).abs() < 1e-10);
    }
}
