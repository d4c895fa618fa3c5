//! Browser bindings. Every export takes plain numbers or a JSON domain
//! description and returns a JSON string; the logic lives in [`api`] so it
//! can be tested natively.

use wasm_bindgen::prelude::*;

pub mod api;

fn js(r: Result<String, String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

/// Samples of the Delaunay generating curve through its crest.
#[wasm_bindgen]
pub fn delaunay_profile(n: usize, big_h: f64, t: f64, samples: usize) -> Result<String, JsError> {
    js(api::delaunay_profile(n, big_h, t, samples))
}

/// Optimal candidate of a domain such as
/// `{"family":"cylinder","parameters":{"l":1,"r":1},"n":3}`.
#[wasm_bindgen]
pub fn cheeger_optimum(domain: &str) -> Result<String, JsError> {
    js(api::cheeger_optimum(domain))
}

/// The best candidate with mean curvature `big_h`, with its ratio.
#[wasm_bindgen]
pub fn candidate_at(domain: &str, big_h: f64) -> Result<String, JsError> {
    js(api::candidate_at(domain, big_h))
}
