//! Browser bindings: certified zeros of one family member, the transfer
//! identity residuals at a point pair, and the scaled extremal zero ratios.
//! Every export returns a JSON string; errors come back as plain messages.

use wasm_bindgen::prelude::*;

use darcais::exact::{parse_ratio, round_decimal, to_f64};
use darcais::families::{compute_family, parse_family};
use darcais::rootloc::{default_width, extremal_zeros, ratio_row as row};
use darcais::transfer::lemma_residual;
use darcais::{compute_p, compute_q, ArithmeticFunctionSpec};

/// Largest member the page will build; keeps a click under a few seconds.
pub const MAX_N: usize = 60;

fn check_n(n: usize) -> Result<(), String> {
    if n == 0 || n > MAX_N {
        return Err(format!("n must be between 1 and {MAX_N}"));
    }
    Ok(())
}

fn to_text(v: serde_json::Value) -> String {
    v.to_string()
}

/// `family` is `P:<g>`, `Q:<g>`, `P:<g>/<h>` or a bare `<g>`.
#[wasm_bindgen]
pub fn zeros(family: &str, n: usize) -> Result<String, String> {
    check_n(n)?;
    let (g, h) = parse_family(family).map_err(|e| e.to_string())?;
    let fam = compute_family(&g, &h, n).map_err(|e| e.to_string())?;
    let report = extremal_zeros(&fam, n, &default_width()).map_err(|e| e.to_string())?;
    Ok(to_text(report.to_json(8)))
}

/// Residuals of the three forms of the transfer identity; all are `"0/1"`
/// when it holds. `x` and `y` are rationals such as `-3/4` or `2.5`.
#[wasm_bindgen]
pub fn lemma(g: &str, h: &str, n: usize, x: &str, y: &str) -> Result<String, String> {
    check_n(n)?;
    let g: ArithmeticFunctionSpec = g.parse().map_err(|e: darcais::Error| e.to_string())?;
    let h: ArithmeticFunctionSpec = h.parse().map_err(|e: darcais::Error| e.to_string())?;
    let x = parse_ratio(x).map_err(|e| e.to_string())?;
    let y = parse_ratio(y).map_err(|e| e.to_string())?;
    let t = lemma_residual(&g, &h, n, &x, &y).map_err(|e| e.to_string())?;
    let fmt = darcais::exact::format_ratio;
    Ok(to_text(serde_json::json!({
        "g": g.to_string(),
        "h": h.to_string(),
        "n": n,
        "x": fmt(&x),
        "y": fmt(&y),
        "residual": fmt(&t.residual),
        "residual_alt": fmt(&t.residual_alt),
        "residual_scaled": fmt(&t.residual_scaled),
        "holds": t.holds(),
    })))
}

/// Extremal zeros of `Q_n^g / z` and `P_n^g / z` with the ratios
/// `alpha~ / ((n - 1) alpha)` and `beta~ / ((n - 1) beta)`.
#[wasm_bindgen]
pub fn ratio_row(g: &str, n: usize) -> Result<String, String> {
    check_n(n)?;
    if n < 2 {
        return Err("ratios need n >= 2".into());
    }
    let g: ArithmeticFunctionSpec = g.parse().map_err(|e: darcais::Error| e.to_string())?;
    let q = compute_q(&g, n).map_err(|e| e.to_string())?;
    let p = compute_p(&g, n).map_err(|e| e.to_string())?;
    let r = row(&q, &p, n, &default_width()).map_err(|e| e.to_string())?;
    let cell = |v| serde_json::json!({ "value": to_f64(v), "text": round_decimal(v, 6) });
    Ok(to_text(serde_json::json!({
        "g": g.to_string(),
        "n": n,
        "alpha": cell(&r.alpha_q),
        "beta": cell(&r.beta_q),
        "alpha_tilde": cell(&r.alpha_p),
        "beta_tilde": cell(&r.beta_p),
        "ratio_alpha": cell(&r.ratio_alpha),
        "ratio_beta": cell(&r.ratio_beta),
    })))
}
