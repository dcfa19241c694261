//! Browser front end: the bi-transvectant calculator, the schedule table
//! and single-`b` verification, exported through `wasm-bindgen`.
//!
//! The plain functions return `Result<String, String>` so they can be
//! tested natively; the exported wrappers turn errors into JS exceptions.

use trigonal::formio::{parse_biform, print_biform, schedule_json, ReportJson};
use trigonal::{bi_transvect, schedule_for, verify, GenericOptions, Mode, TransvectantSpec};
use wasm_bindgen::prelude::*;

/// Largest `b` accepted for generic mode; beyond this a browser tab stalls.
pub const GENERIC_LIMIT: i64 = 41;
/// Largest `b` for witness mode.
pub const WITNESS_LIMIT: i64 = 201;
/// Longest schedule table served.
pub const TABLE_LIMIT: i64 = 1001;

fn bidegree_hint(text: &str) -> Option<(usize, usize)> {
    // "0" has no bidegree of its own; the calculator reads it as a constant.
    (text.trim() == "0").then_some((0, 0))
}

/// `T^(r,s)(lhs, rhs)` printed canonically.
pub fn transvect_text(r: usize, s: usize, lhs: &str, rhs: &str) -> Result<String, String> {
    let p = parse_biform(lhs, bidegree_hint(lhs)).map_err(|e| format!("left form: {e}"))?;
    let q = parse_biform(rhs, bidegree_hint(rhs)).map_err(|e| format!("right form: {e}"))?;
    let spec =
        TransvectantSpec::new(r, s, p.bidegree(), q.bidegree()).map_err(|e| e.to_string())?;
    let t = bi_transvect(&p, &q, &spec).map_err(|e| e.to_string())?;
    let (a, b) = t.bidegree();
    Ok(format!("{}\t({a}, {b})", print_biform(&t)))
}

/// Schedule rows for the odd `b` in `[from, to]`, as a JSON array.
pub fn schedule_rows(from: i64, to: i64) -> Result<String, String> {
    if from > to {
        return Err(format!("empty range {from}..{to}"));
    }
    if to > TABLE_LIMIT {
        return Err(format!("the table stops at b = {TABLE_LIMIT}"));
    }
    let rows = (from.max(5)..=to)
        .filter(|b| b % 2 == 1)
        .map(|b| schedule_for(b).map(|s| schedule_json(&s)))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    Ok(serde_json::Value::Array(rows).to_string())
}

/// One verification report as a JSON object.
pub fn verify_report(b: i64, mode: &str, seed: u64) -> Result<String, String> {
    let mode = Mode::parse(mode).ok_or_else(|| format!("unknown mode {mode:?}"))?;
    let limit = if mode == Mode::Witness {
        WITNESS_LIMIT
    } else {
        GENERIC_LIMIT
    };
    if b > limit {
        return Err(format!(
            "b = {b} is too large for {} mode in the browser (limit {limit})",
            mode.as_str()
        ));
    }
    let opts = GenericOptions {
        seed,
        ..GenericOptions::default()
    };
    let rep = verify(b, mode, &opts).map_err(|e| e.to_string())?;
    Ok(ReportJson::from_report(&rep).to_line())
}

#[wasm_bindgen]
pub fn transvect(r: usize, s: usize, lhs: &str, rhs: &str) -> Result<String, JsValue> {
    transvect_text(r, s, lhs, rhs).map_err(|e| JsValue::from_str(&e))
}

// 32-bit parameters below so JavaScript can pass plain numbers (64-bit
// integers would cross the boundary as BigInt).

#[wasm_bindgen]
pub fn schedule(from: i32, to: i32) -> Result<String, JsValue> {
    schedule_rows(from.into(), to.into()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = verifyB)]
pub fn verify_b(b: i32, mode: &str, seed: u32) -> Result<String, JsValue> {
    verify_report(b.into(), mode, seed.into()).map_err(|e| JsValue::from_str(&e))
}
