//! WebAssembly bindings for the browser demo. Each export takes the sample
//! text and α as typed on the page and returns a JSON string.

use wasm_bindgen::prelude::*;

pub mod view;

fn to_js(r: Result<String, String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

/// Location, estimates from every method, and the tie interval if any.
#[wasm_bindgen]
pub fn estimate(data: &str, alpha: &str) -> Result<String, JsError> {
    to_js(view::estimate(data, alpha))
}

/// The log-moment balance sampled across the tie interval.
#[wasm_bindgen]
pub fn balance_curve(data: &str, alpha: &str, points: usize) -> Result<String, JsError> {
    to_js(view::balance_curve(data, alpha, points))
}

/// The perturbed loss over `[x_(1), x_(n)]` and its minimizer for one ε.
#[wasm_bindgen]
pub fn loss_curve(data: &str, alpha: &str, eps: f64, points: usize) -> Result<String, JsError> {
    to_js(view::loss_curve(data, alpha, eps, points))
}

/// Minimizers over a decade schedule and their distance to the limit.
#[wasm_bindgen]
pub fn sweep(data: &str, alpha: &str) -> Result<String, JsError> {
    to_js(view::sweep(data, alpha))
}
