use super::assemble::assemble;
use super::solve::certified_shift;
use super::{DiscreteEigenpair, FemError, Mesh};
use faer::linalg::solvers::Solve;
use faer::Mat;

// degree-5 rule on the reference triangle (barycentric, weights sum to 1)
const TRI_RULE: [([f64; 3], f64); 7] = {
    const A1: f64 = 0.059_715_871_789_769_82;
    const B1: f64 = 0.470_142_064_105_115_1;
    const A2: f64 = 0.797_426_985_353_087_3;
    const B2: f64 = 0.101_286_507_323_456_35;
    const W1: f64 = 0.132_394_152_788_506_18;
    const W2: f64 = 0.125_939_180_544_827_15;
    [
        ([1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0], 0.225),
        ([A1, B1, B1], W1),
        ([B1, A1, B1], W1),
        ([B1, B1, A1], W1),
        ([A2, B2, B2], W2),
        ([B2, A2, B2], W2),
        ([B2, B2, A2], W2),
    ]
};

// 3-point Gauss-Legendre on [0, 1]
const EDGE_RULE: [(f64, f64); 3] = [
    (0.112_701_665_379_258_31, 5.0 / 18.0),
    (0.5, 8.0 / 18.0),
    (0.887_298_334_620_741_7, 5.0 / 18.0),
];

/// Pieces of the discrete quotient and their gradients.
struct Eval {
    energy: f64,
    boundary: f64,
    mass: f64,
    d_num: Vec<f64>,
    d_mass: Vec<f64>,
}

fn evaluate(mesh: &Mesh, grads: &[[[f64; 2]; 3]], areas: &[f64], lens: &[f64], p: f64, beta: f64, x: &[f64], want_grad: bool) -> Eval {
    let n = x.len();
    let (mut d_num, mut d_mass) = if want_grad { (vec![0.0; n], vec![0.0; n]) } else { (vec![], vec![]) };
    let (mut energy, mut boundary, mut mass) = (0.0, 0.0, 0.0);
    for (t, tri) in mesh.triangles.iter().enumerate() {
        let g = &grads[t];
        let u = [x[tri[0]], x[tri[1]], x[tri[2]]];
        let gx = u[0] * g[0][0] + u[1] * g[1][0] + u[2] * g[2][0];
        let gy = u[0] * g[0][1] + u[1] * g[1][1] + u[2] * g[2][1];
        let gn = gx.hypot(gy);
        energy += gn.powf(p) * areas[t];
        if want_grad && gn > 0.0 {
            let c = p * gn.powf(p - 2.0) * areas[t];
            for a in 0..3 {
                d_num[tri[a]] += c * (gx * g[a][0] + gy * g[a][1]);
            }
        }
        for &(bary, w) in &TRI_RULE {
            let uq = bary[0] * u[0] + bary[1] * u[1] + bary[2] * u[2];
            mass += w * areas[t] * uq.abs().powf(p);
            if want_grad {
                let c = w * areas[t] * p * uq.abs().powf(p - 1.0) * uq.signum();
                for a in 0..3 {
                    d_mass[tri[a]] += c * bary[a];
                }
            }
        }
    }
    for (e, edge) in mesh.boundary_edges.iter().enumerate() {
        let (u0, u1) = (x[edge[0]], x[edge[1]]);
        for &(s, w) in &EDGE_RULE {
            let uq = (1.0 - s) * u0 + s * u1;
            boundary += beta * w * lens[e] * uq.abs().powf(p);
            if want_grad {
                let c = beta * w * lens[e] * p * uq.abs().powf(p - 1.0) * uq.signum();
                d_num[edge[0]] += c * (1.0 - s);
                d_num[edge[1]] += c * s;
            }
        }
    }
    Eval { energy, boundary, mass, d_num, d_mass }
}

struct Geometry {
    grads: Vec<[[f64; 2]; 3]>,
    areas: Vec<f64>,
    lens: Vec<f64>,
}

impl Geometry {
    fn new(mesh: &Mesh) -> Self {
        Self {
            grads: (0..mesh.triangles.len()).map(|t| mesh.hat_gradients(t)).collect(),
            areas: (0..mesh.triangles.len()).map(|t| mesh.triangle_area(t)).collect(),
            lens: (0..mesh.boundary_edges.len()).map(|e| mesh.edge_length(e)).collect(),
        }
    }
}

/// `(int |grad u|^p + beta int_{dOmega} |u|^p) / int |u|^p` for the P1
/// function with nodal values `x`. Gradient terms are exact; the `|u|^p`
/// integrals use a degree-5 rule on triangles and 3-point Gauss on edges,
/// so the value is exact at `p = 2`.
pub fn discrete_quotient(mesh: &Mesh, p: f64, beta: f64, x: &[f64]) -> f64 {
    let g = Geometry::new(mesh);
    let e = evaluate(mesh, &g.grads, &g.areas, &g.lens, p, beta, x, false);
    (e.energy + e.boundary) / e.mass
}

/// Preconditioned Polak-Ribiere descent on the discrete quotient, started
/// from a constant. The returned value never exceeds any earlier iterate.
pub fn minimize_rayleigh_p(mesh: &Mesh, p: f64, beta: f64, iterations: usize) -> Result<DiscreteEigenpair, FemError> {
    if !(p > 1.0 && p.is_finite()) || !beta.is_finite() {
        return Err(FemError::InvalidArgument(format!("need p > 1 and finite beta, got p = {p}, beta = {beta}")));
    }
    let geo = Geometry::new(mesh);
    let eval = |x: &[f64], grad: bool| evaluate(mesh, &geo.grads, &geo.areas, &geo.lens, p, beta, x, grad);
    let forms = assemble(mesh);
    let sym = forms.symbolic()?;
    let (_, precond) = certified_shift(&forms, &sym, beta, mesh)?;
    let apply_precond = |g: &[f64]| -> Vec<f64> {
        let mut b = Mat::from_fn(g.len(), 1, |i, _| g[i]);
        precond.solve_in_place(b.as_mut());
        (0..g.len()).map(|i| b[(i, 0)]).collect()
    };
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(u, v)| u * v).sum::<f64>();

    let n = mesh.node_count();
    let mut x = vec![1.0; n];
    let m0 = eval(&x, false).mass;
    x.iter_mut().for_each(|v| *v /= m0.powf(1.0 / p));

    let gradient = |e: &Eval| -> (f64, Vec<f64>) {
        let j = (e.energy + e.boundary) / e.mass;
        let g = e.d_num.iter().zip(&e.d_mass).map(|(a, b)| (a - j * b) / e.mass).collect();
        (j, g)
    };
    let mut cur = eval(&x, true);
    let (mut j, mut g) = gradient(&cur);
    let mut z = apply_precond(&g);
    let mut d: Vec<f64> = z.iter().map(|v| -v).collect();
    let mut history = vec![j];
    let mut alpha = 1.0f64;
    let mut stalled = false;
    let mut quiet = 0;
    let mut it = 0;
    while it < iterations {
        it += 1;
        let mut slope = dot(&g, &d);
        if slope >= 0.0 {
            d = z.iter().map(|v| -v).collect();
            slope = dot(&g, &d);
        }
        if slope >= 0.0 {
            break;
        }
        // backtracking with Armijo
        let mut step = (2.0 * alpha).min(1e3);
        let mut accepted = None;
        for _ in 0..80 {
            let trial: Vec<f64> = x.iter().zip(&d).map(|(a, b)| a + step * b).collect();
            let e = eval(&trial, true);
            let jt = (e.energy + e.boundary) / e.mass;
            if jt.is_finite() && jt <= j + 1e-4 * step * slope {
                accepted = Some((trial, e));
                break;
            }
            step *= 0.5;
        }
        let Some((mut trial, mut e)) = accepted else {
            // no descent left: fine if the quotient had already settled
            let k = history.len();
            stalled = k < 3 || (history[k - 3] - j).abs() > 1e-12 * j.abs().max(1e-300);
            break;
        };
        // parabolic refinement through j, slope and the accepted point
        let js = (e.energy + e.boundary) / e.mass;
        let curv = (js - j - slope * step) / (step * step);
        if curv > 0.0 {
            let t = -slope / (2.0 * curv);
            let cand: Vec<f64> = x.iter().zip(&d).map(|(a, b)| a + t * b).collect();
            let ec = eval(&cand, true);
            if (ec.energy + ec.boundary) / ec.mass < js {
                trial = cand;
                e = ec;
                step = t;
            }
        }
        alpha = step;
        let scale = e.mass.powf(1.0 / p);
        x = trial.into_iter().map(|v| v / scale).collect();
        d.iter_mut().for_each(|v| *v /= scale);
        cur = eval(&x, true);
        let (jn, gn) = gradient(&cur);
        let zn = apply_precond(&gn);
        let beta_pr = (dot(&zn, &gn) - dot(&zn, &g)) / dot(&z, &g);
        let beta_pr = if beta_pr.is_finite() { beta_pr.max(0.0) } else { 0.0 };
        d = zn.iter().zip(&d).map(|(a, b)| -a + beta_pr * b).collect();
        let decrease = j - jn;
        j = jn.min(j);
        g = gn;
        z = zn;
        history.push(j);
        quiet = if decrease <= 1e-15 * j.abs().max(1e-300) { quiet + 1 } else { 0 };
        if quiet >= 3 {
            break;
        }
    }
    let _ = cur;
    if x.iter().sum::<f64>() < 0.0 {
        x.iter_mut().for_each(|v| *v = -*v);
    }
    let residual = dot(&g, &z).abs().sqrt() / j.abs().max(1e-300);
    Ok(DiscreteEigenpair {
        mesh: mesh.clone(),
        p,
        beta,
        lambda_h: j,
        values: x,
        residual,
        richardson_estimate: None,
        iterations: it,
        history,
        stalled,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fem::{solve_p2, triangulate};
    use crate::geom::ConvexPolygon;

    #[test]
    fn p2_agrees_with_eigensolver() {
        let mesh = triangulate(&ConvexPolygon::regular(6, 1.0).unwrap(), 3);
        for &beta in &[1.0, -1.0] {
            let exact = solve_p2(&mesh, beta).unwrap();
            let r = minimize_rayleigh_p(&mesh, 2.0, beta, 500).unwrap();
            assert!((r.lambda_h - exact.lambda_h).abs() < 1e-6 * exact.lambda_h.abs(), "{} {}", r.lambda_h, exact.lambda_h);
            assert!(r.history.windows(2).all(|w| w[1] <= w[0]));
            assert!(r.has_constant_sign());
        }
    }

    #[test]
    fn quotient_of_constant() {
        let poly = ConvexPolygon::rectangle(2.0, 1.0).unwrap();
        let mesh = triangulate(&poly, 1);
        let q = discrete_quotient(&mesh, 3.0, 0.5, &vec![2.0; mesh.node_count()]);
        assert!((q - 0.5 * 6.0 / 2.0).abs() < 1e-12);
    }
}
