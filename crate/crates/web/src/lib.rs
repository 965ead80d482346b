//! WebAssembly bindings for the demo page in `www/`. Every function returns
//! a ready-to-insert SVG or JSON string so the page needs no plotting code.

use powergin::harness::svg;
use powergin::kernels::{twisted_circular_density, PowerGinKernel};
use powergin::latent::{expand_vandermonde_power_guarded, latent_distribution};
use powergin::samplers::{sample_ginibre_guarded, RadialPotential, RngStream};
use powergin::Complex64;
use wasm_bindgen::prelude::*;

/// Largest matrix the page may diagonalize.
pub const MAX_N: usize = 400;

fn err(e: impl std::fmt::Display) -> JsValue {
    JsValue::from_str(&e.to_string())
}

/// Scatter of one `Gin(n)` spectrum raised to the powers `1..=max_power`.
#[wasm_bindgen]
pub fn power_scatter(n: usize, max_power: usize, seed: u64) -> Result<String, JsValue> {
    power_scatter_impl(n, max_power, seed).map_err(err)
}

pub fn power_scatter_impl(n: usize, max_power: usize, seed: u64) -> Result<String, String> {
    if !(1..=4).contains(&max_power) {
        return Err("power must be between 1 and 4".into());
    }
    let s = sample_ginibre_guarded(n, MAX_N, &mut RngStream::new(seed)).map_err(|e| e.to_string())?;
    let panels: Vec<(String, Vec<Complex64>)> = (1..=max_power).map(|m| (format!("M = {m}"), s.powers(m as u32))).collect();
    Ok(svg::scatter_panels(&panels, 1.2))
}

/// Radial profile of the one-point density of block `k` of `Gin(n)^m`
/// against the twisted circular law.
#[wasm_bindgen]
pub fn block_density(n: usize, m: usize, k: usize) -> Result<String, JsValue> {
    block_density_impl(n, m, k).map_err(err)
}

pub fn block_density_impl(n: usize, m: usize, k: usize) -> Result<String, String> {
    let kern = PowerGinKernel::new(n, m, k).map_err(|e| e.to_string())?;
    if kern.c_k == 0 {
        return Err(format!("block k={k} is empty for N={n}, M={m}"));
    }
    let mut block = Vec::new();
    let mut law = Vec::new();
    for i in 1..=240 {
        let r = i as f64 * 1.2 / 240.0;
        let z = Complex64::new(r, 0.0);
        // radial densities 2 pi r rho(r) stay bounded at the origin
        block.push((r, 2.0 * std::f64::consts::PI * r * kern.mean_density(z).map_err(|e| e.to_string())?));
        law.push((r, 2.0 * std::f64::consts::PI * r * twisted_circular_density(m, z)));
    }
    let y_max = block.iter().chain(&law).map(|p| p.1).filter(|y| y.is_finite()).fold(0.0, f64::max) * 1.05;
    let curves = vec![(format!("block k={k}, N={n}"), block), ("twisted law".to_string(), law)];
    Ok(svg::line_plot(&format!("radial density, M = {m}"), &curves, 1.2, y_max.max(1e-9)))
}

/// JSON `{N, p, log_z, entries: [{u, K, probability}]}` for the latent
/// variable of the `beta = 2p` ensemble with `V(t) = t`.
#[wasm_bindgen]
pub fn latent_table(n: usize, p: u32) -> Result<String, JsValue> {
    latent_table_impl(n, p).map_err(err)
}

pub fn latent_table_impl(n: usize, p: u32) -> Result<String, String> {
    if n > 4 || p > 4 {
        return Err("the page limits N and p to 4".into());
    }
    let table = expand_vandermonde_power_guarded(n, p, (4, 4)).map_err(|e| e.to_string())?;
    let dist = latent_distribution(&table, &RadialPotential::quadratic()).map_err(|e| e.to_string())?;
    let entries: Vec<serde_json::Value> = table
        .entries
        .iter()
        .zip(&dist.probabilities)
        .map(|((u, k), pr)| serde_json::json!({"u": u, "K": k.to_string(), "probability": pr}))
        .collect();
    Ok(serde_json::json!({"N": n, "p": p, "log_z": dist.log_z, "entries": entries}).to_string())
}
