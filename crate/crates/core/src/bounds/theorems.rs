use super::{fuglede_g, BoundsError, Case, Status, TheoremId, TheoremReport};
use crate::geom::{asymmetry_report, erosion_profile, hausdorff_at, ConvexPolygon};
use crate::numerics::rel_diff;
use crate::radial::{constant_c, cut_parameter, dirichlet_radial, monotonicity_check, solve_radial};
use std::collections::BTreeMap;
use std::f64::consts::PI;

/// Default smallness threshold for the Hausdorff bound, as a fraction of
/// `|lambda(Omega*)|`.
pub const DEFAULT_DELTA0_FRACTION: f64 = 0.5;
const ROUNDING: f64 = 1e-12;

struct Builder {
    id: TheoremId,
    shape: String,
    p: f64,
    beta: f64,
    rho: f64,
    details: BTreeMap<String, f64>,
}

impl Builder {
    fn new(id: TheoremId, shape: &str, p: f64, beta: f64, rho: f64) -> Self {
        Self { id, shape: shape.to_string(), p, beta, rho, details: BTreeMap::new() }
    }

    fn of(id: TheoremId, case: &Case) -> Self {
        Self::new(id, &case.shape, case.p, case.beta, case.perimeter)
    }

    fn put(&mut self, key: &str, v: f64) -> &mut Self {
        self.details.insert(key.to_string(), v);
        self
    }

    fn flag(&mut self, key: &str, v: bool) -> &mut Self {
        self.put(key, if v { 1.0 } else { 0.0 })
    }

    #[allow(clippy::too_many_arguments)]
    fn finish(self, lhs: f64, rhs: f64, slack: f64, constant: f64, formula: &str, status: Status) -> TheoremReport {
        TheoremReport {
            theorem_id: self.id,
            shape: self.shape,
            n: 2,
            p: self.p,
            beta: self.beta,
            rho: self.rho,
            lhs,
            rhs,
            slack,
            constant_used: constant,
            constant_formula: formula.to_string(),
            status,
            details: self.details,
        }
    }
}

fn need_sign(case: &Case, positive: bool) -> Result<(), BoundsError> {
    if (positive && case.beta > 0.0) || (!positive && case.beta < 0.0) {
        Ok(())
    } else {
        Err(BoundsError::Domain(format!("beta = {} has the wrong sign for this check", case.beta)))
    }
}

fn oracle_details(b: &mut Builder, case: &Case) {
    b.put("deficit", case.deficit)
        .put("lambda_ball", case.lambda_ball())
        .put("lambda_oracle", case.oracle.upper)
        .put("lambda_upper", case.lambda_upper())
        .put("lambda_estimate", case.oracle.estimate)
        .put("oracle_level", case.oracle.level as f64)
        .flag("oracle_stalled", case.oracle.stalled);
    if let Some(bar) = case.oracle.error_bar {
        b.put("oracle_error_bar", bar);
    }
    if let Some(q) = &case.transplant {
        b.put("transplant_quotient", q.quotient);
    }
}

/// Upper bound on the relative gap for a positive parameter:
/// `(lambda - lambda*) / lambda <= C (1 - |Omega| / |Omega*|)` with
/// `C = v_max^p |Omega*| / ||v||_p^p`. The left side is evaluated at an upper
/// bound of `lambda` (mesh or transplant), which can only enlarge it.
pub fn check_t1(case: &Case) -> Result<TheoremReport, BoundsError> {
    need_sign(case, true)?;
    let star = case.lambda_ball();
    let c = constant_c(&case.pair);
    let rhs = c * case.deficit;
    let lhs_of = |l: f64| (l - star) / l;
    let lhs = lhs_of(case.lambda_upper());
    let slack = rhs - lhs;
    let trivial = case.deficit >= 1.0 / c;
    let cap = constant_c(&dirichlet_radial(2, case.p, case.pair.radius)?);

    let mut b = Builder::of(TheoremId::T1, case);
    oracle_details(&mut b, case);
    b.flag("trivial_regime", trivial).put("c_uniform_cap", cap).flag("cap_holds", c <= cap * (1.0 + 1e-9));
    if let Some(q) = &case.transplant {
        b.put("lhs_transplant", lhs_of(q.quotient)).put("slack_transplant", rhs - lhs_of(q.quotient));
    }
    let status = if trivial && lhs <= 1.0 {
        Status::Trivial
    } else if slack >= -ROUNDING {
        if case.oracle.two_sided() {
            Status::Holds
        } else {
            Status::OneSided
        }
    } else {
        match case.oracle.lower() {
            Some(lo) if lo > 0.0 && rhs - lhs_of(lo) >= -ROUNDING => Status::HoldsWithOracleErrorBar,
            _ => Status::Violated,
        }
    };
    Ok(b.finish(lhs, rhs, slack, c, "v_max^p |B| / ||v||_p^p", status))
}

/// Lower bound for a negative parameter:
/// `(lambda* - lambda) / |lambda| >= C (1 - |Omega| / |Omega*|)` with
/// `C = v_min^p |Omega*| / ||v||_p^p`. The intermediate form
/// `>= v_min^p / ||v||_p^p (|Omega*| - |Omega|)` is re-derived from the
/// transplanted quotient, which is an independent upper bound of `lambda`.
pub fn check_t2(case: &Case) -> Result<TheoremReport, BoundsError> {
    need_sign(case, false)?;
    let star = case.lambda_ball();
    let c = constant_c(&case.pair);
    let rhs = c * case.deficit;
    let lhs_of = |l: f64| (star - l) / l.abs();
    let lhs = lhs_of(case.lambda_upper());
    let slack = lhs - rhs;
    let k = case.pair.v_min.powf(case.p) / case.pair.lp_norm_p;
    let ultima = k * case.deficit_m();

    let mut b = Builder::of(TheoremId::T2, case);
    oracle_details(&mut b, case);
    b.put("ultima_rhs", ultima);
    if let Some(q) = &case.transplant {
        let lt = lhs_of(q.quotient);
        b.put("ultima_lhs_transplant", lt).put("ultima_slack_transplant", lt - ultima);
    }
    if let Some(ch) = &case.chain {
        b.put("quotient_bound_slack", ch.quotient_bound_slack);
    }
    let status = if slack >= -ROUNDING {
        if case.oracle.two_sided() {
            Status::Holds
        } else {
            Status::OneSided
        }
    } else {
        match case.oracle.lower() {
            Some(lo) if lo < 0.0 && lhs_of(lo) - rhs >= -ROUNDING => Status::HoldsWithOracleErrorBar,
            _ => Status::Violated,
        }
    };
    Ok(b.finish(lhs, rhs, slack, c, "v_min^p |B| / ||v||_p^p", status))
}

/// The chain behind the Hausdorff-asymmetry bound:
/// `gap >= |lambda| K M >= |beta| P/|Omega| K M >= |beta| 4 pi / rho K M`
/// with `K = v_min^p / ||v||_p^p` and `M = |Omega*| - |Omega|`, plus the
/// recorded ratios `M / g(A_H*)` and `gap / g(A_H*)`.
pub fn check_t3(case: &Case, delta0: Option<f64>) -> Result<TheoremReport, BoundsError> {
    need_sign(case, false)?;
    let star = case.lambda_ball();
    let delta0 = delta0.unwrap_or(DEFAULT_DELTA0_FRACTION * star.abs());
    let lam = case.lambda_upper();
    let k = case.pair.v_min.powf(case.p) / case.pair.lp_norm_p;
    let m = case.deficit_m();
    let beta = case.beta.abs();
    let links = |l: f64| {
        let gap = star - l;
        let l1 = l.abs() * k * m;
        let l2 = beta * case.perimeter / case.area * k * m;
        let l3 = beta * 4.0 * PI / case.perimeter * k * m;
        (gap, l1, l2, l3)
    };
    let (gap, l1, l2, l3) = links(lam);
    let scale = star.abs().max(1.0);
    let slack_of = |(g, a, b, c): (f64, f64, f64, f64)| (g - a).min(a - b).min(b - c) / scale;
    let slack = slack_of((gap, l1, l2, l3));
    let a_h = asymmetry_report(&case.poly).hausdorff_star;
    let g = fuglede_g(2, a_h)?;

    let mut b = Builder::of(TheoremId::T3, case);
    oracle_details(&mut b, case);
    b.put("gap", gap)
        .put("link1", l1)
        .put("link2", l2)
        .put("link3", l3)
        .put("delta0", delta0)
        .flag("outside_smallness_regime", gap > delta0)
        .put("hausdorff_star", a_h)
        .put("g_hausdorff", g);
    if g > 0.0 {
        b.put("m_over_g", m / g).put("gap_over_g", gap / g);
    }
    let status = if slack >= -ROUNDING {
        if case.oracle.two_sided() {
            Status::Holds
        } else {
            Status::OneSided
        }
    } else {
        match case.oracle.lower() {
            Some(lo) if lo < 0.0 && slack_of(links(lo)) >= -ROUNDING => Status::HoldsWithOracleErrorBar,
            _ => Status::Violated,
        }
    };
    Ok(b.finish(gap, l3, slack, k * m, "v_min^p / ||v||_p^p (|Omega*| - |Omega|)", status))
}

/// The deficit chain through the Fraenkel asymmetry. The quantitative
/// isoperimetric constant is not explicit, so the value implied by the
/// shape, `gamma = (P / P# - 1) / alpha^2`, is used to instantiate
/// `1 - |Omega|/|Omega*| >= gamma/(1 + 4 gamma) alpha^2`; the Hausdorff
/// form is logged.
pub fn check_weak_remark(case: &Case) -> Result<TheoremReport, BoundsError> {
    need_sign(case, false)?;
    let rep = asymmetry_report(&case.poly);
    let alpha = rep.fraenkel;
    let applicable = alpha < 0.5;
    let r_sharp = (case.area / PI).sqrt();
    let p_sharp = 2.0 * PI * r_sharp;
    let gamma = if alpha > 0.0 { (case.perimeter / p_sharp - 1.0) / (alpha * alpha) } else { 0.0 };
    let c_n = gamma / (1.0 + 4.0 * gamma);
    let lhs = case.deficit;
    // 1 - 1/(1 + gamma a^2)^2 >= gamma a^2 / (1 + gamma a^2) >= c_n a^2
    let step1 = 1.0 - 1.0 / (1.0 + gamma * alpha * alpha).powi(2);
    let step2 = gamma * alpha * alpha / (1.0 + gamma * alpha * alpha);
    let rhs = c_n * alpha * alpha;
    let identity_error = (lhs - step1).abs();
    let slack = (step1 - step2).min(step2 - rhs).min(lhs - rhs);
    let dh = hausdorff_at(&case.poly, rep.center_fraenkel, r_sharp);
    let diam_sum = case.poly.diameter() + 2.0 * r_sharp;
    let form = (dh / diam_sum).powi(4);

    let mut b = Builder::of(TheoremId::WeakRemark, case);
    oracle_details(&mut b, case);
    b.put("alpha", alpha)
        .put("deficit_over_alpha_sq", if alpha > 0.0 { lhs / (alpha * alpha) } else { 0.0 })
        .put("gamma_implied", gamma)
        .put("c_n_implied", c_n)
        .put("identity_error", identity_error)
        .put("hausdorff_sharp_fraenkel", dh)
        .put("diam_sum", diam_sum)
        .put("hausdorff_form", form)
        .flag("applicable", applicable);
    if alpha > 0.0 {
        b.put("trombetti_ratio", dh / (diam_sum * (alpha).sqrt()));
    }
    let gap_ratio = (case.lambda_ball() - case.lambda_upper()) / case.lambda_upper().abs();
    b.put("gap_ratio", gap_ratio);
    if form > 0.0 {
        b.put("gap_ratio_over_form", gap_ratio / (constant_c(&case.pair) * c_n * form));
    }
    let status = if !applicable {
        Status::Skipped
    } else if slack >= -ROUNDING && identity_error <= 1e-9 {
        Status::Holds
    } else {
        Status::Violated
    };
    Ok(b.finish(lhs, rhs, slack, c_n, "gamma/(1 + 4 gamma), gamma implied by the shape", status))
}

/// `M(Omega) = |Omega*| - |Omega|` against `g(A_H*(Omega))`; the lemma's
/// constant is unknown, so the ratio is recorded and only positivity is
/// required.
pub fn check_fuglede_lemma(shape: &str, poly: &ConvexPolygon) -> Result<TheoremReport, BoundsError> {
    let per = poly.perimeter();
    let m = (per * per / (4.0 * PI) - poly.area()).max(0.0);
    let a_h = asymmetry_report(poly).hausdorff_star;
    let g = fuglede_g(2, a_h)?;
    let ratio = if g > 0.0 { m / g } else { 0.0 };
    let mut b = Builder::new(TheoremId::FugledeLemma, shape, f64::NAN, f64::NAN, per);
    b.put("hausdorff_star", a_h).put("deficit_m", m).put("g_hausdorff", g);
    let ok = (g == 0.0) || m > 0.0;
    let status = if ok { Status::Holds } else { Status::Violated };
    Ok(b.finish(m, g, m - ratio * g, ratio, "M / g(A_H*), empirical", status))
}

/// Ordering of the polygon eigenvalue against the perimeter-matched disk:
/// `lambda >= lambda*` for positive and `lambda <= lambda*` for negative
/// parameters.
pub fn check_faber_krahn(case: &Case) -> Result<TheoremReport, BoundsError> {
    if case.beta == 0.0 {
        return Err(BoundsError::Domain("beta = 0 has no ordering".into()));
    }
    let star = case.lambda_ball();
    let o = &case.oracle;
    let upper = case.lambda_upper();
    let mut b = Builder::of(TheoremId::FaberKrahn, case);
    oracle_details(&mut b, case);
    let bar = o.error_bar.unwrap_or(0.0);
    let (lhs, rhs, slack, status) = if case.beta > 0.0 {
        let slack = o.estimate - star;
        let status = if upper < star - 1e-12 * star.abs() {
            Status::Violated
        } else if !o.two_sided() {
            Status::OneSided
        } else if slack >= -bar {
            Status::HoldsWithOracleErrorBar
        } else {
            Status::Violated
        };
        (o.estimate, star, slack, status)
    } else {
        let slack = star - upper;
        let status = if slack >= -ROUNDING * star.abs() {
            Status::Holds
        } else if o.two_sided() && star - o.estimate >= -bar {
            Status::HoldsWithOracleErrorBar
        } else {
            Status::Violated
        };
        (upper, star, slack, status)
    };
    Ok(b.finish(lhs, rhs, slack, 1.0, "", status))
}

/// Slacks of the level-by-level comparisons behind the transplant bounds.
pub fn check_proof_chain(case: &Case) -> Result<TheoremReport, BoundsError> {
    let mut b = Builder::of(TheoremId::ProofChain, case);
    let Some(ch) = &case.chain else {
        return Ok(b.finish(f64::NAN, 0.0, f64::NAN, f64::NAN, "", Status::Skipped));
    };
    b.put("perimeter_slack", ch.min_perimeter_slack)
        .put("monotone_slack", ch.monotone_slack)
        .put("energy_slack", ch.energy_slack)
        .put("mass_slack", ch.mass_slack)
        .put("quotient_bound_slack", ch.quotient_bound_slack)
        .flag("truncated", ch.quotient.truncated)
        .put("transplant_quotient", ch.quotient.quotient);
    let slack = ch
        .min_perimeter_slack
        .min(ch.monotone_slack)
        .min(ch.energy_slack)
        .min(ch.mass_slack)
        .min(ch.quotient_bound_slack);
    let status = if ch.holds { Status::Holds } else { Status::Violated };
    Ok(b.finish(slack, 0.0, slack, f64::NAN, "", status))
}

/// `-dP(Omega_t)/dt >= 2 pi` along the whole erosion of `poly`.
pub fn check_erosion_lemma(shape: &str, poly: &ConvexPolygon) -> TheoremReport {
    let prof = erosion_profile(poly);
    let rate = prof.segments().iter().map(|s| s.kappa).fold(f64::INFINITY, f64::min);
    let slack = rate - 2.0 * PI;
    let mut b = Builder::new(TheoremId::ErosionLemma, shape, f64::NAN, f64::NAN, poly.perimeter());
    b.put("segments", prof.segments().len() as f64).put("inradius", prof.inradius());
    let status = if slack >= -ROUNDING * 2.0 * PI { Status::Holds } else { Status::Violated };
    b.finish(rate, 2.0 * PI, slack, f64::NAN, "", status)
}

/// `(1 + x)^{n/(n-1)} >= 1 + n x / (n-1)` on `samples` points of `[0, 10]`.
pub fn bernoulli_check(n: usize, samples: usize) -> TheoremReport {
    let r = n as f64 / (n as f64 - 1.0);
    let slack = (0..=samples)
        .map(|i| 10.0 * i as f64 / samples.max(1) as f64)
        .map(|x| (1.0 + x).powf(r) - (1.0 + r * x))
        .fold(f64::INFINITY, f64::min);
    let mut b = Builder::new(TheoremId::Bernoulli, "-", f64::NAN, f64::NAN, f64::NAN);
    b.put("exponent", r).put("samples", samples as f64);
    let status = if slack >= -ROUNDING { Status::Holds } else { Status::Violated };
    let mut rep = b.finish(slack, 0.0, slack, r, "", status);
    rep.n = n;
    rep
}

/// Radial identities on the disk of perimeter `rho`: the cut lemma, the
/// pointwise ordering of eigenfunctions in `beta` and the scaling law.
pub fn check_radial_suite(p: f64, beta: f64, rho: f64) -> Result<Vec<TheoremReport>, BoundsError> {
    let r = rho / (2.0 * PI);
    let pair = solve_radial(2, p, beta, r)?;
    let mut out = Vec::new();

    let mut worst: f64 = 0.0;
    let mut b = Builder::new(TheoremId::CutLemma, "ball", p, beta, rho);
    for frac in [0.3, 0.5, 0.9] {
        let (gamma, lam) = cut_parameter(&pair, frac * r)?;
        let d = rel_diff(lam, pair.lambda);
        b.put(&format!("gamma_{frac}"), gamma).put(&format!("rel_err_{frac}"), d);
        worst = worst.max(d);
    }
    let st = if worst <= 1e-6 { Status::Holds } else { Status::Violated };
    out.push(b.finish(worst, 1e-6, 1e-6 - worst, f64::NAN, "", st));

    let (b1, b2) = if beta > 0.0 { (beta, 2.0 * beta) } else { (2.0 * beta, beta) };
    let mono = monotonicity_check(2, p, b1, b2, r)?;
    let mut b = Builder::new(TheoremId::EigenfunctionMonotonicity, "ball", p, beta, rho);
    b.put("beta1", b1).put("beta2", b2).put("lambda1", mono.lambda1).put("lambda2", mono.lambda2);
    let st = if mono.holds() { Status::Holds } else { Status::Violated };
    out.push(b.finish(mono.max_violation, 1e-10, 1e-10 - mono.max_violation, f64::NAN, "", st));

    let t = 2.0;
    let lhs = solve_radial(2, p, beta, t * r)?.lambda;
    let rhs = t.powf(-p) * solve_radial(2, p, t.powf(p - 1.0) * beta, r)?.lambda;
    let d = rel_diff(lhs, rhs);
    let b = Builder::new(TheoremId::Scaling, "ball", p, beta, rho);
    let st = if d <= 1e-8 { Status::Holds } else { Status::Violated };
    out.push(b.finish(lhs, rhs, 1e-8 - d, t, "t^{-p} lambda(B, t^{p-1} beta)", st));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square(p: f64, beta: f64) -> Case {
        let sq = ConvexPolygon::rectangle(1.0, 1.0).unwrap().with_perimeter(2.0 * PI);
        Case::prepare("square", &sq, p, beta, 3).unwrap()
    }

    #[test]
    fn t1_on_square() {
        let c = square(2.0, 1.0);
        assert!((c.deficit - (1.0 - PI / 4.0)).abs() < 1e-12);
        let r = check_t1(&c).unwrap();
        assert!(!r.status.is_violation(), "{r:?}");
        assert!(r.lhs <= 1.0 && r.details["cap_holds"] == 1.0);
        let fk = check_faber_krahn(&c).unwrap();
        assert!(!fk.status.is_violation());
    }

    #[test]
    fn t2_t3_on_square() {
        let c = square(2.0, -1.0);
        let r = check_t2(&c).unwrap();
        assert_eq!(r.status, Status::Holds, "{r:?}");
        assert!(r.slack > 0.0);
        assert!(r.details["ultima_slack_transplant"] >= 0.0);
        let t3 = check_t3(&c, None).unwrap();
        assert_eq!(t3.status, Status::Holds, "{t3:?}");
        assert_eq!(check_faber_krahn(&c).unwrap().status, Status::Holds);
        let w = check_weak_remark(&c).unwrap();
        assert!((w.details["alpha"] - 0.1812).abs() < 1e-3);
        assert!((w.details["deficit_over_alpha_sq"] - 6.55).abs() < 0.02);
        assert_eq!(w.status, Status::Holds);
    }

    #[test]
    fn wrong_sign_is_an_error() {
        let c = square(2.0, 1.0);
        assert!(check_t2(&c).is_err());
        assert!(check_t3(&c, None).is_err());
    }

    #[test]
    fn small_lemmas() {
        assert_eq!(bernoulli_check(2, 100).status, Status::Holds);
        assert_eq!(bernoulli_check(3, 100).status, Status::Holds);
        let sq = ConvexPolygon::rectangle(1.0, 1.0).unwrap();
        let e = check_erosion_lemma("square", &sq);
        assert!((e.lhs - 8.0).abs() < 1e-12 && e.status == Status::Holds);
        let f = check_fuglede_lemma("square", &sq).unwrap();
        assert!(f.constant_used > 0.0);
    }

    #[test]
    fn radial_suite_holds() {
        for r in check_radial_suite(2.0, -1.0, 2.0 * PI).unwrap() {
            assert_eq!(r.status, Status::Holds, "{r:?}");
        }
    }
}
