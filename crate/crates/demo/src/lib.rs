//! Browser bindings: a radial solve, a shape analysis and a bound check.
//! The `*_report` functions are plain Rust so they can be tested natively.

use robin_bounds::bounds::{check_t1, check_t2, Case};
use robin_bounds::geom::{asymmetry_report, erosion_profile, ConvexPolygon, Point};
use robin_bounds::radial::{constant_c, solve_radial};
use robin_bounds::shapes::generate_shape;
use serde::Serialize;
use std::f64::consts::PI;
use wasm_bindgen::prelude::*;

const PROFILE_SAMPLES: usize = 128;
const EROSION_LAYERS: usize = 6;
/// Coarse mesh: keeps the check interactive in the browser.
const DEMO_LEVEL: usize = 2;

#[derive(Debug, Serialize)]
pub struct RadialView {
    pub lambda: f64,
    pub constant_c: f64,
    pub v_min: f64,
    pub v_max: f64,
    pub r: Vec<f64>,
    pub v: Vec<f64>,
}

#[derive(Debug, Serialize)]
pub struct ShapeView {
    pub vertices: Vec<Point>,
    pub area: f64,
    pub perimeter: f64,
    pub inradius: f64,
    pub deficit_m: f64,
    pub hausdorff_star: f64,
    pub fraenkel: f64,
    pub center_star: Point,
    /// Radius of the perimeter-matched disk.
    pub radius_star: f64,
    /// Inner parallel bodies at evenly spaced depths.
    pub layers: Vec<Vec<Point>>,
    pub min_perimeter_rate: f64,
}

#[derive(Debug, Serialize)]
pub struct CheckView {
    pub theorem: String,
    pub lambda_ball: f64,
    pub lambda_mesh: f64,
    pub lambda_upper: f64,
    pub transplant_quotient: Option<f64>,
    pub deficit: f64,
    pub constant: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub status: String,
}

pub fn radial_report(p: f64, beta: f64, radius: f64) -> Result<RadialView, String> {
    let pair = solve_radial(2, p, beta, radius).map_err(|e| e.to_string())?;
    let step = (pair.grid.len() / PROFILE_SAMPLES).max(1);
    let idx: Vec<usize> = (0..pair.grid.len()).step_by(step).chain([pair.grid.len() - 1]).collect();
    Ok(RadialView {
        lambda: pair.lambda,
        constant_c: constant_c(&pair),
        v_min: pair.v_min,
        v_max: pair.v_max,
        r: idx.iter().map(|&i| pair.grid[i]).collect(),
        v: idx.iter().map(|&i| pair.values[i]).collect(),
    })
}

fn shape(spec: &str, seed: u64) -> Result<ConvexPolygon, String> {
    generate_shape(spec, seed).map_err(|e| e.to_string())
}

pub fn shape_report(spec: &str, seed: u64) -> Result<ShapeView, String> {
    let poly = shape(spec, seed)?;
    let prof = erosion_profile(&poly);
    let a = asymmetry_report(&poly);
    let layers = (1..EROSION_LAYERS)
        .filter_map(|k| prof.erode(prof.inradius() * k as f64 / EROSION_LAYERS as f64).ok())
        .map(|q| q.vertices().to_vec())
        .collect();
    Ok(ShapeView {
        vertices: poly.vertices().to_vec(),
        area: poly.area(),
        perimeter: poly.perimeter(),
        inradius: prof.inradius(),
        deficit_m: a.deficit_m,
        hausdorff_star: a.hausdorff_star,
        fraenkel: a.fraenkel,
        center_star: a.center_star,
        radius_star: poly.perimeter() / (2.0 * PI),
        layers,
        min_perimeter_rate: prof.segments().iter().map(|s| s.kappa).fold(f64::INFINITY, f64::min),
    })
}

pub fn check_report(spec: &str, seed: u64, p: f64, beta: f64) -> Result<CheckView, String> {
    if beta == 0.0 {
        return Err("beta must be nonzero".into());
    }
    let poly = shape(spec, seed)?;
    let case = Case::prepare(spec, &poly, p, beta, DEMO_LEVEL).map_err(|e| e.to_string())?;
    let rep = if beta > 0.0 { check_t1(&case) } else { check_t2(&case) }.map_err(|e| e.to_string())?;
    Ok(CheckView {
        theorem: rep.theorem_id.as_str().to_string(),
        lambda_ball: case.lambda_ball(),
        lambda_mesh: case.oracle.upper,
        lambda_upper: case.lambda_upper(),
        transplant_quotient: case.transplant.as_ref().map(|q| q.quotient),
        deficit: case.deficit,
        constant: rep.constant_used,
        lhs: rep.lhs,
        rhs: rep.rhs,
        slack: rep.slack,
        status: rep.status.as_str().to_string(),
    })
}

fn to_js<T: Serialize>(r: Result<T, String>) -> Result<JsValue, JsError> {
    let v = r.map_err(|e| JsError::new(&e))?;
    serde_wasm_bindgen::to_value(&v).map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
pub fn radial(p: f64, beta: f64, radius: f64) -> Result<JsValue, JsError> {
    to_js(radial_report(p, beta, radius))
}

#[wasm_bindgen(js_name = analyseShape)]
pub fn analyse_shape(spec: &str, seed: u32) -> Result<JsValue, JsError> {
    to_js(shape_report(spec, seed as u64))
}

#[wasm_bindgen(js_name = checkBound)]
pub fn check_bound(spec: &str, seed: u32, p: f64, beta: f64) -> Result<JsValue, JsError> {
    to_js(check_report(spec, seed as u64, p, beta))
}
