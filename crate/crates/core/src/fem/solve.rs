use super::assemble::{assemble, Forms};
use super::{triangulate, FemError, Mesh};
use crate::geom::ConvexPolygon;
use faer::linalg::solvers::Solve;
use faer::sparse::linalg::solvers::{Llt, SymbolicLlt};
use faer::Mat;
use serde::{Deserialize, Serialize};

const RESIDUAL_TOL: f64 = 1e-10;
const MAX_ITER: usize = 2000;

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct RichardsonEstimate {
    /// Eigenvalues on the coarse and fine meshes.
    pub coarse: f64,
    pub fine: f64,
    /// `fine + (fine - coarse) / 3`, the `h^2` extrapolation.
    pub value: f64,
    /// `|fine - coarse|`, deliberately wider than the correction itself.
    pub error_bar: f64,
}

impl RichardsonEstimate {
    pub fn new(coarse: f64, fine: f64) -> Self {
        Self { coarse, fine, value: fine + (fine - coarse) / 3.0, error_bar: (fine - coarse).abs() }
    }

    pub fn lower(&self) -> f64 {
        self.value - self.error_bar
    }

    pub fn upper(&self) -> f64 {
        self.value + self.error_bar
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiscreteEigenpair {
    pub mesh: Mesh,
    pub p: f64,
    pub beta: f64,
    pub lambda_h: f64,
    /// Nodal values, normalized to unit `L^p` norm and nonnegative sum.
    pub values: Vec<f64>,
    pub residual: f64,
    pub richardson_estimate: Option<RichardsonEstimate>,
    pub iterations: usize,
    /// Quotient after each iteration.
    pub history: Vec<f64>,
    /// Line search gave up before convergence (general `p` only).
    pub stalled: bool,
}

impl DiscreteEigenpair {
    /// All nodal values share the sign of the largest one, up to `1e-10`.
    pub fn has_constant_sign(&self) -> bool {
        let max = self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        self.values.iter().all(|&v| v >= -1e-10 * max)
    }
}

fn solve_with(f: &super::assemble::Combo, llt: &Llt<usize, f64>, forms: &Forms, x: &[f64]) -> Vec<f64> {
    let rhs = forms.apply(*f, x);
    let mut b = Mat::from_fn(rhs.len(), 1, |i, _| rhs[i]);
    llt.solve_in_place(b.as_mut());
    (0..rhs.len()).map(|i| b[(i, 0)]).collect()
}

/// A shift `sigma < lambda_1` and the Cholesky factor of `K + beta B - sigma M`.
pub(crate) fn certified_shift(
    forms: &Forms,
    sym: &SymbolicLlt<usize>,
    beta: f64,
    mesh: &Mesh,
) -> Result<(f64, Llt<usize, f64>), FemError> {
    let mut sigma = (-1.0f64).min(beta * mesh.boundary_length() / mesh.area() - 1.0);
    for _ in 0..80 {
        if let Some(f) = forms.cholesky(sym, [1.0, -sigma, beta]) {
            return Ok((sigma, f));
        }
        sigma -= 2.0 * (sigma.abs() + 1.0);
    }
    Err(FemError::Factorization("no certified shift found".into()))
}

/// Smallest eigenvalue of `(K + beta B) x = lambda M x` on P1 elements.
///
/// The shift `sigma` is accepted only once `A - sigma M` admits a Cholesky
/// factorization, which certifies `sigma < lambda_1`. It starts at
/// `min(-1, beta P / |Omega| - 1)` and is pulled towards the running Ritz
/// value whenever a closer certified shift is found.
pub fn solve_p2(mesh: &Mesh, beta: f64) -> Result<DiscreteEigenpair, FemError> {
    if !beta.is_finite() {
        return Err(FemError::InvalidArgument("beta must be finite".into()));
    }
    let forms = assemble(mesh);
    let sym = forms.symbolic()?;
    let a: [f64; 3] = [1.0, 0.0, beta];
    let shifted = |s: f64| [1.0, -s, beta];
    let (mut sigma, mut llt) = certified_shift(&forms, &sym, beta, mesh)?;

    let n = forms.n;
    let mass = [0.0, 1.0, 0.0];
    let mut x = vec![1.0; n];
    let mut history = Vec::new();
    let mut residual = f64::INFINITY;
    let mut theta = 0.0;
    let mut iterations = 0;
    while iterations < MAX_ITER {
        iterations += 1;
        let y = solve_with(&mass, &llt, &forms, &x);
        let nrm = forms.form(mass, &y, &y).sqrt();
        x = y.iter().map(|v| v / nrm).collect();
        let ax = forms.apply(a, &x);
        let mx = forms.apply(mass, &x);
        theta = ax.iter().zip(&x).map(|(u, v)| u * v).sum();
        let r: f64 = ax.iter().zip(&mx).map(|(u, v)| (u - theta * v).powi(2)).sum::<f64>().sqrt();
        let scale = ax.iter().map(|u| u * u).sum::<f64>().sqrt() + (theta.abs() + sigma.abs()) * mx.iter().map(|u| u * u).sum::<f64>().sqrt();
        residual = r / scale.max(f64::MIN_POSITIVE);
        history.push(theta);
        if residual < RESIDUAL_TOL {
            break;
        }
        if iterations % 4 == 0 {
            let trial = theta - 0.05 * (theta - sigma);
            if trial > sigma {
                if let Some(f) = forms.cholesky(&sym, shifted(trial)) {
                    sigma = trial;
                    llt = f;
                }
            }
        }
    }
    if residual >= RESIDUAL_TOL {
        return Err(FemError::Stagnation { history });
    }
    if x.iter().sum::<f64>() < 0.0 {
        x.iter_mut().for_each(|v| *v = -*v);
    }
    Ok(DiscreteEigenpair {
        mesh: mesh.clone(),
        p: 2.0,
        beta,
        lambda_h: theta,
        values: x,
        residual,
        richardson_estimate: None,
        iterations,
        history,
        stalled: false,
    })
}

/// Solve on levels `level - 1` and `level` and attach the extrapolation to
/// the fine pair.
pub fn solve_p2_richardson(poly: &ConvexPolygon, beta: f64, level: usize) -> Result<DiscreteEigenpair, FemError> {
    if level == 0 {
        return Err(FemError::InvalidArgument("Richardson needs level >= 1".into()));
    }
    let coarse = solve_p2(&triangulate(poly, level - 1), beta)?;
    let mut fine = solve_p2(&triangulate(poly, level), beta)?;
    fine.richardson_estimate = Some(RichardsonEstimate::new(coarse.lambda_h, fine.lambda_h));
    Ok(fine)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neumann_is_zero() {
        let mesh = triangulate(&ConvexPolygon::regular(5, 1.0).unwrap(), 2);
        let e = solve_p2(&mesh, 0.0).unwrap();
        assert!(e.lambda_h.abs() < 1e-10);
        let (lo, hi) = e.values.iter().fold((f64::MAX, f64::MIN), |(a, b), &v| (a.min(v), b.max(v)));
        assert!(hi - lo < 1e-8 * hi);
    }

    #[test]
    fn square_dirichlet_like_ordering() {
        let sq = ConvexPolygon::rectangle(1.0, 1.0).unwrap();
        let mesh = triangulate(&sq, 3);
        let lo = solve_p2(&mesh, 1.0).unwrap();
        let hi = solve_p2(&mesh, 2.0).unwrap();
        let neg = solve_p2(&mesh, -1.0).unwrap();
        assert!(neg.lambda_h < 0.0 && 0.0 < lo.lambda_h && lo.lambda_h < hi.lambda_h);
        assert!(neg.residual < 1e-10 && neg.has_constant_sign() && lo.has_constant_sign());
        // constant test function bounds for beta < 0
        assert!(neg.lambda_h <= -4.0 + 1e-12);
    }

    #[test]
    fn strongly_negative_beta_needs_lower_shift() {
        let sq = ConvexPolygon::rectangle(1.0, 1.0).unwrap();
        let e = solve_p2(&triangulate(&sq, 4), -20.0).unwrap();
        assert!(e.lambda_h < -80.0 && e.has_constant_sign(), "{} {}", e.lambda_h, e.has_constant_sign());
    }
}
