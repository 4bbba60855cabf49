//! Text, CSV and JSON renderings. Big integers are always decimal strings.

use std::fmt::Write;

use dualfunc_core::census::formula;
use dualfunc_core::census::{CensusMode, CensusReport, IdentityCheck, Stabilizer};
use dualfunc_core::{Poly, Result};
use num_bigint::BigUint;
use serde_json::{json, Map, Value};

fn opt_str(v: &Option<BigUint>) -> Value {
    v.as_ref().map_or(Value::Null, |b| Value::String(b.to_string()))
}

fn opt_bool(v: Option<bool>) -> Value {
    v.map_or(Value::Null, Value::Bool)
}

fn cell(v: &Option<BigUint>) -> String {
    v.as_ref().map_or_else(|| "-".into(), BigUint::to_string)
}

fn bool_cell(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "true",
        Some(false) => "false",
        None => "n/a",
    }
}

fn mode_name(mode: CensusMode) -> &'static str {
    match mode {
        CensusMode::Count => "count",
        CensusMode::Predict => "predict",
    }
}

fn identities_json(checks: &[IdentityCheck]) -> Value {
    let mut map = Map::new();
    for c in checks {
        map.insert(c.name.into(), opt_bool(c.holds));
    }
    Value::Object(map)
}

/// Flat object: parameters, then one `{counted, predicted, match}` object
/// per quantity, then the identity checks.
pub fn census_json(r: &CensusReport) -> Value {
    let mut map = Map::new();
    map.insert("p".into(), json!(r.p));
    map.insert("n".into(), json!(r.n));
    map.insert("m".into(), json!(r.m));
    map.insert("mode".into(), json!(mode_name(r.mode)));
    for e in &r.entries {
        map.insert(
            e.quantity.key().into(),
            json!({
                "counted": opt_str(&e.counted),
                "predicted": opt_str(&e.predicted),
                "match": opt_bool(e.matches()),
            }),
        );
    }
    map.insert("identities".into(), identities_json(&r.identities));
    map.insert("formula_identities".into(), identities_json(&r.formula_identities));
    Value::Object(map)
}

pub fn census_csv(r: &CensusReport) -> String {
    let mut out = String::from("quantity,counted,predicted,match\n");
    for e in &r.entries {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            e.quantity.key(),
            cell(&e.counted),
            cell(&e.predicted),
            bool_cell(e.matches())
        );
    }
    out
}

pub fn census_text(r: &CensusReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "census of Z_{}[α] (p = {}, n = {}), mode {}", r.m, r.p, r.n, mode_name(r.mode));
    let rows: Vec<[String; 4]> = r
        .entries
        .iter()
        .map(|e| {
            [
                e.quantity.key().to_string(),
                cell(&e.counted),
                cell(&e.predicted),
                bool_cell(e.matches()).to_string(),
            ]
        })
        .collect();
    let header = ["quantity", "counted", "predicted", "match"].map(String::from);
    let mut widths = [0usize; 3];
    for row in std::iter::once(&header).chain(&rows) {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    for row in std::iter::once(&header).chain(&rows) {
        let _ = writeln!(
            out,
            "{:<w0$}  {:>w1$}  {:>w2$}  {}",
            row[0],
            row[1],
            row[2],
            row[3],
            w0 = widths[0],
            w1 = widths[1],
            w2 = widths[2]
        );
    }
    out.push_str("identities\n");
    for c in &r.identities {
        let _ = writeln!(out, "  {}: {}", c.name, bool_cell(c.holds));
    }
    out
}

/// The maps `x + h`, as printed polynomials, with their orders.
fn stabilizer_maps(s: &Stabilizer) -> Vec<(String, usize)> {
    let x = Poly::x(s.p.pow(s.n));
    s.representatives
        .iter()
        .zip(s.element_orders())
        .map(|(h, order)| (x.add(h).expect("same modulus").to_string(), order))
        .collect()
}

pub fn stabilizer_json(s: &Stabilizer) -> Value {
    let elements: Vec<Value> =
        stabilizer_maps(s).into_iter().map(|(g, order)| json!({ "map": g, "order": order })).collect();
    json!({
        "p": s.p,
        "n": s.n,
        "count": s.count().to_string(),
        "candidates": s.candidates,
        "elements": elements,
    })
}

pub fn stabilizer_text(s: &Stabilizer) -> String {
    let mut out = String::new();
    let m = s.p.pow(s.n);
    let _ = writeln!(out, "|St| = {} on Z_{m}[α] ({} candidates)", s.count(), s.candidates);
    for (g, order) in stabilizer_maps(s) {
        let _ = writeln!(out, "order {order}  {g}");
    }
    out
}

/// One row of the prediction table; `None` cells are printed as `n/a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub p: u64,
    pub n: u32,
    pub functions: Option<BigUint>,
    pub permutations: Option<BigUint>,
    pub stabilizer: Option<BigUint>,
}

pub fn table_row(p: u64, n: u32) -> Result<TableRow> {
    Ok(TableRow {
        p,
        n,
        functions: formula::count_functions_dual(p, n)?,
        permutations: formula::count_perms_dual(p, n)?,
        stabilizer: formula::count_stabilizer(p, n)?,
    })
}

fn na(v: &Option<BigUint>) -> String {
    v.as_ref().map_or_else(|| "n/a".into(), BigUint::to_string)
}

pub fn table_csv(rows: &[TableRow]) -> String {
    let mut out = String::from("p,n,F_dual,P_dual,Stab\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.p,
            r.n,
            na(&r.functions),
            na(&r.permutations),
            na(&r.stabilizer)
        );
    }
    out
}

pub fn table_json(rows: &[TableRow]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| {
                json!({
                    "p": r.p,
                    "n": r.n,
                    "F_dual": na(&r.functions),
                    "P_dual": na(&r.permutations),
                    "Stab": na(&r.stabilizer),
                })
            })
            .collect(),
    )
}
