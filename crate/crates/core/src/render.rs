//! Text, JSON and CSV renderings of character tables and cyclotomic values.
//!
//! A cyclotomic value is rendered as `{"order": N, "coeffs": [...], "approx":
//! [re, im]}`. `approx` carries 12 significant digits and is ignored on input.

use num_bigint::BigInt;
use serde_json::{json, Value};
use thiserror::Error;

use crate::cyclotomic::{Cyclotomic, CyclotomicError};
use crate::gl2::{CharTable, Gl2Class, Gl2Error, Gl2Irrep, GroupParams};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("malformed cyclotomic value: {0}")]
    BadValue(String),
    #[error("malformed csv: {0}")]
    Csv(String),
    #[error(transparent)]
    Gl2(#[from] Gl2Error),
    #[error(transparent)]
    Cyclotomic(#[from] CyclotomicError),
}

/// `x` rounded to 12 significant digits, with `-0` mapped to `0`.
pub fn round12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return 0.0;
    }
    format!("{x:.11e}").parse::<f64>().expect("float formatting round-trips") + 0.0
}

pub fn cyclotomic_json(c: &Cyclotomic) -> Value {
    let z = c.to_complex();
    let coeffs: Vec<Value> = c
        .coeffs()
        .iter()
        .map(|b| match i64::try_from(b) {
            Ok(v) => json!(v),
            Err(_) => json!(b.to_string()),
        })
        .collect();
    json!({"order": c.order(), "coeffs": coeffs, "approx": [round12(z.re), round12(z.im)]})
}

/// Inverse of [`cyclotomic_json`]; integer coefficients may also be strings.
pub fn cyclotomic_from_json(v: &Value) -> Result<Cyclotomic, RenderError> {
    let bad = || RenderError::BadValue(v.to_string());
    let order = v.get("order").and_then(Value::as_u64).ok_or_else(bad)?;
    let coeffs = v
        .get("coeffs")
        .and_then(Value::as_array)
        .ok_or_else(bad)?
        .iter()
        .map(|c| match c {
            Value::Number(n) => n.as_i64().map(BigInt::from),
            Value::String(s) => s.parse::<BigInt>().ok(),
            _ => None,
        })
        .collect::<Option<Vec<BigInt>>>()
        .ok_or_else(bad)?;
    Ok(Cyclotomic::from_coeffs(order, coeffs)?)
}

fn class_kind(c: &Gl2Class) -> &'static str {
    match c {
        Gl2Class::C1(_) => "central",
        Gl2Class::C2(_) => "unipotent-times-central",
        Gl2Class::C3(..) => "split",
        Gl2Class::C4(_) => "elliptic",
    }
}

pub fn classes_json(g: &GroupParams) -> Value {
    json!({
        "q": g.q,
        "group_order": g.group_order(),
        "classes": g.classes().iter().map(|c| json!({"label": c.to_string(), "size": c.size(g), "kind": class_kind(c)})).collect::<Vec<_>>(),
    })
}

fn csv_string(rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8")
}

pub fn classes_csv(g: &GroupParams) -> String {
    let header = vec!["label".into(), "size".into(), "kind".into()];
    let rows = g.classes().into_iter().map(|c| vec![c.to_string(), c.size(g).to_string(), class_kind(&c).into()]);
    csv_string(std::iter::once(header).chain(rows))
}

pub fn classes_text(g: &GroupParams) -> String {
    let mut out = format!("GL2({}): {} classes, order {}\n", g.q, g.classes().len(), g.group_order());
    for c in g.classes() {
        out.push_str(&format!("{:<10} size {:>8}  {}\n", c.to_string(), c.size(g), class_kind(&c)));
    }
    out
}

pub fn irreps_json(g: &GroupParams) -> Value {
    json!({
        "q": g.q,
        "irreps": g.irreps().iter().map(|p| json!({"label": p.to_string(), "family": format!("{:?}", p.family()), "dim": p.dim(g)})).collect::<Vec<_>>(),
    })
}

pub fn irreps_csv(g: &GroupParams) -> String {
    let header = vec!["label".into(), "family".into(), "dim".into()];
    let rows = g.irreps().into_iter().map(|p| vec![p.to_string(), format!("{:?}", p.family()), p.dim(g).to_string()]);
    csv_string(std::iter::once(header).chain(rows))
}

pub fn irreps_text(g: &GroupParams) -> String {
    let mut out = format!("GL2({}): {} irreps\n", g.q, g.irreps().len());
    for p in g.irreps() {
        out.push_str(&format!("{:<10} {:?}  dim {}\n", p.to_string(), p.family(), p.dim(g)));
    }
    out
}

pub fn chartable_json(t: &CharTable) -> Value {
    let g = t.params();
    let n = t.irreps().len();
    let m = t.classes().len();
    json!({
        "q": g.q,
        "classes": t.classes().iter().map(|c| json!({"label": c.to_string(), "size": c.size(g)})).collect::<Vec<_>>(),
        "irreps": t.irreps().iter().map(|p| json!({"label": p.to_string(), "dim": p.dim(g)})).collect::<Vec<_>>(),
        "values": (0..n).map(|i| (0..m).map(|j| cyclotomic_json(t.value(i, j))).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

/// Header `irrep,<class>...`; one row per irrep, each cell a JSON value.
pub fn chartable_csv(t: &CharTable) -> String {
    let mut header = vec!["irrep".to_string()];
    header.extend(t.classes().iter().map(ToString::to_string));
    let rows = t.irreps().iter().enumerate().map(|(i, p)| {
        let mut row = vec![p.to_string()];
        row.extend((0..t.classes().len()).map(|j| cyclotomic_json(t.value(i, j)).to_string()));
        row
    });
    csv_string(std::iter::once(header).chain(rows))
}

pub fn chartable_text(t: &CharTable) -> String {
    let g = t.params();
    let mut out = format!("GL2({}) character table, zeta of order {}\n", g.q, g.rs);
    for (i, p) in t.irreps().iter().enumerate() {
        out.push_str(&format!("{p}\n"));
        for (j, c) in t.classes().iter().enumerate() {
            out.push_str(&format!("  {:<10} {}\n", c.to_string(), t.value(i, j)));
        }
    }
    out
}

/// A character table read back from [`chartable_csv`].
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedTable {
    pub classes: Vec<Gl2Class>,
    pub irreps: Vec<Gl2Irrep>,
    pub values: Vec<Vec<Cyclotomic>>,
}

pub fn parse_chartable_csv(text: &str, g: &GroupParams) -> Result<ParsedTable, RenderError> {
    let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
    let header = r.headers().map_err(|e| RenderError::Csv(e.to_string()))?.clone();
    if header.get(0) != Some("irrep") {
        return Err(RenderError::Csv("first column must be `irrep`".into()));
    }
    let classes = header.iter().skip(1).map(|s| Gl2Class::parse(s, g)).collect::<Result<Vec<_>, _>>()?;
    let mut irreps = Vec::new();
    let mut values = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(|e| RenderError::Csv(e.to_string()))?;
        if rec.len() != classes.len() + 1 {
            return Err(RenderError::Csv(format!("row has {} fields, expected {}", rec.len(), classes.len() + 1)));
        }
        irreps.push(Gl2Irrep::parse(&rec[0], g)?);
        let row = rec
            .iter()
            .skip(1)
            .map(|cell| {
                let v: Value = serde_json::from_str(cell).map_err(|e| RenderError::BadValue(e.to_string()))?;
                cyclotomic_from_json(&v)
            })
            .collect::<Result<Vec<_>, _>>()?;
        values.push(row);
    }
    Ok(ParsedTable { classes, irreps, values })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_round_trip() {
        let c = Cyclotomic::root(8, 3).unwrap() + Cyclotomic::from_int(8, -2).unwrap();
        let v = cyclotomic_json(&c);
        assert_eq!(cyclotomic_from_json(&v).unwrap(), c);
        assert_eq!(v["order"], 8);
        assert!(cyclotomic_from_json(&json!({"order": 8})).is_err());
        assert_eq!(round12(-0.0), 0.0);
        assert_eq!(round12(1.0 / 3.0), 0.333333333333);
    }

    #[test]
    fn csv_round_trip() {
        for q in [2, 5] {
            let g = GroupParams::new(q).unwrap();
            let t = CharTable::new(g);
            let parsed = parse_chartable_csv(&chartable_csv(&t), &g).unwrap();
            assert_eq!(parsed.classes, t.classes());
            assert_eq!(parsed.irreps, t.irreps());
            for (i, row) in parsed.values.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    assert_eq!(v, t.value(i, j));
                }
            }
        }
        let g = GroupParams::new(3).unwrap();
        assert!(parse_chartable_csv("irrep,c9:0\n", &g).is_err());
        assert!(parse_chartable_csv("label\n", &g).is_err());
    }
}
