//! Browser bindings: three operations, each taking plain strings and returning
//! a JSON document whose numbers are all decimal strings (JavaScript numbers
//! lose precision past 2^53).
//!
//! The `*_json` functions are the native entry points; the `#[wasm_bindgen]`
//! wrappers only turn their errors into JS exceptions.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Pow, Zero};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use kummer_lpoly::cyclo::{identity_report, CheckStatus};
use kummer_lpoly::frobenius::{analyze, CurveParams, FrobeniusData, TraceProfile};
use kummer_lpoly::gf::FieldSpec;
use kummer_lpoly::lfunc::{lpoly_from_profile, LPoly};
use kummer_lpoly::oracle::{count_points_naive, OracleBudget};
use kummer_lpoly::parse::{parse_field_order, ElemSpec};
use kummer_lpoly::Error;

/// Fields the browser may enumerate for the point-count check.
const DEMO_ORACLE_CAP: u64 = 1 << 18;

type Result<T> = std::result::Result<T, String>;

fn err(e: Error) -> String {
    e.to_string()
}

fn opt(s: &str) -> Option<&str> {
    let s = s.trim();
    (!s.is_empty()).then_some(s)
}

fn field(q: &str, modulus: &str) -> Result<Arc<FieldSpec>> {
    let (p, e) = parse_field_order(q).map_err(err)?;
    let modulus = opt(modulus)
        .map(|m| {
            m.trim_start_matches('[')
                .trim_end_matches(']')
                .split(',')
                .map(|c| c.trim().parse::<u64>().map_err(|_| format!("cannot parse modulus '{m}'")))
                .collect::<Result<Vec<_>>>()
        })
        .transpose()?;
    FieldSpec::new(p, e, modulus.as_deref()).map_err(err)
}

fn char_base(s: &str) -> Result<Option<ElemSpec>> {
    opt(s).map(|s| s.parse().map_err(err)).transpose()
}

fn curve(ell: u32, q: &str, modulus: &str, a: &str, b: &str) -> Result<CurveParams> {
    let base = field(q, modulus)?;
    let a = a.parse::<ElemSpec>().map_err(err)?.resolve(&base).map_err(err)?;
    let b = b.parse::<ElemSpec>().map_err(err)?.resolve(&base).map_err(err)?;
    CurveParams::new(ell as u64, base, a, b).map_err(err)
}

fn profile(c: &CurveParams, base: &str) -> Result<Option<TraceProfile>> {
    if c.genus == 0 {
        return Ok(None);
    }
    analyze(c, char_base(base)?.as_ref()).map(Some).map_err(err)
}

fn strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

/// L-polynomial, class number and Frobenius data of `y^l = x^2 + ax + b`.
pub fn lpoly_json(ell: u32, q: &str, modulus: &str, a: &str, b: &str, base: &str) -> Result<String> {
    let c = curve(ell, q, modulus, a, b)?;
    let p = profile(&c, base)?;
    let l = match &p {
        Some(p) => lpoly_from_profile(p, &c).map_err(err)?,
        None => LPoly::trivial(c.q()),
    };
    let doc = json!({
        "genus": c.genus.to_string(),
        "q": c.q().to_string(),
        "m": p.as_ref().map(|p| p.m.to_string()),
        "n": p.as_ref().map(|p| p.n.to_string()),
        "kappa_square": p.as_ref().map(|p| p.kappa_square),
        "jacobi": p.as_ref().and_then(|p| p.jacobi.as_ref()).map(|j| j.to_string()),
        "s": p.as_ref().map(|p| strings(&p.s)),
        "coeffs": strings(&l.coeffs),
        "lpoly": l.to_string(),
        "class_number": l.class_number.to_string(),
    });
    Ok(doc.to_string())
}

/// `N_t` for `t = 1..=t_max` from the formula, with brute-force counts beside
/// them where `q^t` is small enough to enumerate in the browser.
pub fn points_json(ell: u32, q: &str, modulus: &str, a: &str, b: &str, base: &str, t_max: u32) -> Result<String> {
    if t_max == 0 || t_max > 64 {
        return Err("t_max must lie in 1..=64".into());
    }
    let c = curve(ell, q, modulus, a, b)?;
    let p = profile(&c, base)?;
    let budget = OracleBudget::new(DEMO_ORACLE_CAP, DEMO_ORACLE_CAP).map_err(err)?;
    let qb = BigInt::from(c.q());
    let mut rows = Vec::new();
    for t in 1..=t_max as u64 {
        let a_t = match &p {
            Some(p) => p.trace(t).map_err(err)?,
            None => BigInt::zero(),
        };
        let n: BigInt = qb.clone().pow(t) + 1u32 - &a_t;
        let oracle = match count_points_naive(&c, t, &budget) {
            Ok(v) => Some(v),
            Err(Error::BudgetExceeded(_)) => None,
            Err(e) => return Err(err(e)),
        };
        let agrees = oracle.as_ref().map(|o| *o == n);
        rows.push(json!({
            "t": t.to_string(),
            "trace": a_t.to_string(),
            "count": n.to_string(),
            "oracle": oracle.map(|o| o.to_string()),
            "agrees": agrees,
        }));
    }
    Ok(json!({ "q": c.q().to_string(), "rows": rows }).to_string())
}

/// The Jacobi sum over `F_{q^m}` and the identities it satisfies.
pub fn jacobi_json(ell: u32, q: &str, modulus: &str, base: &str) -> Result<String> {
    let f = field(q, modulus)?;
    let data = FrobeniusData::new(f.clone(), ell as u64, char_base(base)?.as_ref()).map_err(err)?;
    let Some(j) = data.jacobi().map_err(err)? else {
        let half = BigInt::from(f.order()).pow((data.m() / 2) as u32);
        return Ok(json!({
            "m": data.m().to_string(),
            "jacobi": null,
            "note": format!("m is even: J = {half} or -{half}, and the closed forms need neither"),
        })
        .to_string());
    };
    let order = data.extension_field().expect("odd m").order();
    let report = identity_report(&j, order, ell as u64);
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| {
            let status = match c.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "fail",
                CheckStatus::Skipped => "skipped",
            };
            json!({ "name": c.name, "status": status, "detail": c.detail })
        })
        .collect();
    Ok(json!({
        "m": data.m().to_string(),
        "field_order": order.to_string(),
        "jacobi": j.to_string(),
        "coeffs": strings(&j.slots()),
        "checks": checks,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn lpoly(ell: u32, q: &str, modulus: &str, a: &str, b: &str, char_base: &str) -> std::result::Result<String, JsError> {
    lpoly_json(ell, q, modulus, a, b, char_base).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn points(
    ell: u32,
    q: &str,
    modulus: &str,
    a: &str,
    b: &str,
    char_base: &str,
    t_max: u32,
) -> std::result::Result<String, JsError> {
    points_json(ell, q, modulus, a, b, char_base, t_max).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn jacobi(ell: u32, q: &str, modulus: &str, char_base: &str) -> std::result::Result<String, JsError> {
    jacobi_json(ell, q, modulus, char_base).map_err(|e| JsError::new(&e))
}
