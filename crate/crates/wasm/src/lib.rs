//! Browser bindings: moments of a drawn polygon, reconstruction from moments,
//! and the similar-triangles construction.
//!
//! Points cross the boundary as flat `[x0, y0, x1, y1, ...]` arrays and results
//! come back as JSON strings.

use polymoment::inverse::reconstruct_real;
use polymoment::moments::{moment_table, MomentTable};
use polymoment::numeric::{format_rational, rational_from_f64};
use polymoment::triangle::similarity_theorem;
use polymoment::{ApproxComplex, ExactComplex, Scalar, VertexConfig};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn points(xy: &[f64]) -> Result<Vec<ExactComplex>, String> {
    if xy.len() % 2 != 0 {
        return Err("coordinates must come in (x, y) pairs".into());
    }
    xy.chunks(2)
        .map(|p| match (rational_from_f64(p[0]), rational_from_f64(p[1])) {
            (Some(x), Some(y)) => Ok(ExactComplex::new(x, y)),
            _ => Err("non-finite coordinate".to_string()),
        })
        .collect()
}

fn float_pair(v: &ApproxComplex) -> Value {
    json!([v.re, v.im])
}

/// Exact `ν_2..ν_kmax` of the polygon, as floats and as `"p/q"` strings.
pub fn moments_json(xy: &[f64], kmax: usize) -> Result<String, String> {
    let config = VertexConfig::real(points(xy)?).map_err(|e| e.to_string())?;
    let table = moment_table(&config, kmax.max(2)).map_err(|e| e.to_string())?;
    let nu: Vec<Value> = table.nu_values().iter().map(|v| float_pair(&v.to_approx())).collect();
    let exact: Vec<Value> = table.nu_values().iter().map(|v| json!([format_rational(&v.re), format_rational(&v.im)])).collect();
    Ok(json!({ "n": config.n(), "kmax": table.kmax(), "nu": nu, "exact": exact }).to_string())
}

/// Rebuilds an `n`-gon from `ν_2..ν_{2n-1}` given as flat `[re, im, ...]`.
pub fn reconstruct_json(nu: &[f64], n: usize, tol: f64) -> Result<String, String> {
    if nu.len() != 2 * (2 * n - 2) {
        return Err(format!("{n} vertices need {} moments", 2 * n - 2));
    }
    let values: Vec<ApproxComplex> = nu.chunks(2).map(|p| ApproxComplex::new(p[0], p[1])).collect();
    let table = MomentTable::harmonic_only(2 * n - 1, values).map_err(|e| e.to_string())?;
    let rec = reconstruct_real(&table, n, tol).map_err(|e| e.to_string())?;
    let vertices: Vec<Value> = rec.config.z().iter().map(float_pair).collect();
    Ok(json!({ "vertices": vertices, "residual": rec.mismatch }).to_string())
}

/// The points `C_τ` of the three similar triangles and the vectors `A_{τ(3)} C_τ`, with their exact sum.
pub fn similar_triangles_json(xy: &[f64]) -> Result<String, String> {
    let a: [ExactComplex; 3] = points(xy)?.try_into().map_err(|_| "expected three points".to_string())?;
    let report = similarity_theorem(&a).map_err(|e| e.to_string())?;
    let bases = [&a[2], &a[0], &a[1]];
    let tips: Vec<Value> = bases
        .iter()
        .zip(&report.vectors)
        .map(|(b, v)| float_pair(&((*b).clone() + v.clone()).to_approx()))
        .collect();
    let from: Vec<Value> = bases.iter().map(|b| float_pair(&b.to_approx())).collect();
    Ok(json!({
        "from": from,
        "to": tips,
        "sum": [format_rational(&report.sum.re), format_rational(&report.sum.im)],
    })
    .to_string())
}

fn js<T>(r: Result<T, String>) -> Result<T, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn moments(xy: &[f64], kmax: usize) -> Result<String, JsError> {
    js(moments_json(xy, kmax))
}

#[wasm_bindgen]
pub fn reconstruct(nu: &[f64], n: usize, tol: f64) -> Result<String, JsError> {
    js(reconstruct_json(nu, n, tol))
}

#[wasm_bindgen]
pub fn similar_triangles(xy: &[f64]) -> Result<String, JsError> {
    js(similar_triangles_json(xy))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_round_trip() {
        let sq = [0.0, 0.0, 2.0, 0.0, 2.0, 2.0, 0.0, 2.0];
        let m: Value = serde_json::from_str(&moments_json(&sq, 7).unwrap()).unwrap();
        assert_eq!(m["exact"][0], json!(["4", "0"]));
        let flat: Vec<f64> = m["nu"].as_array().unwrap().iter().flat_map(|p| [p[0].as_f64().unwrap(), p[1].as_f64().unwrap()]).collect();
        let rec: Value = serde_json::from_str(&reconstruct_json(&flat, 4, 1e-8).unwrap()).unwrap();
        assert_eq!(rec["vertices"].as_array().unwrap().len(), 4);
        assert!(rec["residual"].as_f64().unwrap() <= 1e-10);
    }

    #[test]
    fn similar_triangles_sum_to_zero() {
        let out: Value = serde_json::from_str(&similar_triangles_json(&[0.0, 0.0, 3.0, 0.5, 1.0, 2.0]).unwrap()).unwrap();
        assert_eq!(out["sum"], json!(["0", "0"]));
        assert!(similar_triangles_json(&[0.0, 0.0, 0.0, 0.0, 1.0, 1.0]).is_err());
    }
}
