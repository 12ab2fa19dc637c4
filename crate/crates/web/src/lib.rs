//! Browser bindings: normal forms, filtration degrees with the graded ring, and
//! stable-isomorphism certificates. Each entry point takes the config text.

use wasm_bindgen::prelude::*;

use danielewski::stable_iso::{build_iso_certificate, chain_reduce, cofactors_for, verify_certificate_text};
use danielewski::{parse_ring_config, Filtration, Ring, RingConfig, WeightVector};

fn config(text: &str) -> Result<RingConfig, String> {
    parse_ring_config(text).map_err(|e| format!("config: {e}"))
}

fn ring(text: &str) -> Result<Ring, String> {
    Ring::new(&config(text)?).map_err(|e| format!("config: {e}"))
}

fn weights(text: &str) -> Result<WeightVector, String> {
    let (t, v) = text.split_once(';').ok_or("weights: expected e1,...,em;ev")?;
    let num = |x: &str| x.trim().parse::<i64>().map_err(|_| format!("weights: `{}` is not an integer", x.trim()));
    let tw = t.split(',').filter(|x| !x.trim().is_empty()).map(num).collect::<Result<Vec<_>, _>>()?;
    Ok(WeightVector::new(tw, num(v)?))
}

/// Normal form of `expr` followed by its Laurent image, one per line.
pub fn normalize_text(config_text: &str, expr: &str) -> Result<String, String> {
    let ring = ring(config_text)?;
    let x = ring.parse(expr).map_err(|e| format!("expr: {e}"))?;
    Ok(format!("{x}\n{}", danielewski::print_poly(&x.laurent())))
}

/// Filtration degree of `expr`, the graded ring and the leading form of `expr`.
pub fn degree_text(config_text: &str, weights_text: &str, expr: &str) -> Result<String, String> {
    let ring = ring(config_text)?;
    let f = Filtration::new(&ring, weights(weights_text)?).map_err(|e| e.to_string())?;
    let x = ring.parse(expr).map_err(|e| format!("expr: {e}"))?;
    let d = f.filt_degree(&x).map_err(|e| e.to_string())?;
    let mut out = format!("deg = {d}\nell = {}\n", f.ell());
    match f.build_gr() {
        Ok(gr) => {
            let lf = gr.leading_form(&x).map_err(|e| e.to_string())?;
            out.push_str(&format!("gr = {}\nrho = {lf}", gr.ring()));
        }
        Err(e) => out.push_str(&format!("gr: {e}")),
    }
    Ok(out)
}

/// A certificate from the config's exponents to `target` (empty for one link), re-verified
/// from its own text before it is returned.
pub fn certificate_text(config_text: &str, target: &str) -> Result<String, String> {
    let cfg = config(config_text)?;
    let ring = Ring::new(&cfg).map_err(|e| format!("config: {e}"))?;
    let pair = cofactors_for(&cfg).map_err(|e| e.to_string())?;
    let cert = if target.trim().is_empty() {
        build_iso_certificate(&ring, &pair)
    } else {
        let s = target
            .split(',')
            .map(|x| x.trim().parse::<u32>().map_err(|_| format!("target: `{}` is not a positive integer", x.trim())))
            .collect::<Result<Vec<_>, _>>()?;
        chain_reduce(&ring, &pair, &s)
    }
    .map_err(|e| e.to_string())?;
    let text = cert.to_text();
    let report = verify_certificate_text(&text).map_err(|e| e.to_string())?;
    let status = if report.passed() { "VERIFIED" } else { "FAILED" };
    Ok(format!("{text}# {status}\n"))
}

#[wasm_bindgen]
pub fn normalize(config_text: &str, expr: &str) -> Result<String, JsError> {
    normalize_text(config_text, expr).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn degree(config_text: &str, weights_text: &str, expr: &str) -> Result<String, JsError> {
    degree_text(config_text, weights_text, expr).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn certificate(config_text: &str, target: &str) -> Result<String, JsError> {
    certificate_text(config_text, target).map_err(|e| JsError::new(&e))
}
