//! Wire schemas and JSON glue for the command-line surface. Rationals
//! are `"p/q"` strings everywhere; truncated enumerations carry a
//! top-level `complete` flag so no silent approximation crosses the tool
//! boundary.

use lctpoly_core::affine::{AffineFn, PLFunction};
use lctpoly_core::coeffsets::{DecompWitness, Decomposition, DerivedResult, InverseMember};
use lctpoly_core::exactgeom::{HPolytope, QVector, VRep};
use lctpoly_core::lctcore::{FacetLabel, SegmentLct, Threshold};
use lctpoly_core::rational::{parse_rat, rat_to_string, Interval, Rat};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::CliError;

/// Bare affine function on the wire: the interval travels separately.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FnWire {
    pub slope: String,
    pub intercept: String,
}

impl FnWire {
    pub fn to_affine(&self, domain: &Interval) -> Result<AffineFn, CliError> {
        Ok(AffineFn::new(
            parse_rat(&self.slope).map_err(CliError::schema)?,
            parse_rat(&self.intercept).map_err(CliError::schema)?,
            domain.clone(),
        ))
    }
}

pub fn parse_rat_arg(s: &str) -> Result<Rat, CliError> {
    parse_rat(s).map_err(CliError::schema)
}

/// Comma-separated rationals, e.g. `"1,0"` or `"1/2,3"`.
pub fn parse_vector_arg(s: &str) -> Result<QVector, CliError> {
    let coords: Result<Vec<Rat>, _> = s.split(',').map(|p| parse_rat(p.trim())).collect();
    Ok(QVector::new(coords.map_err(CliError::schema)?))
}

pub fn parse_vec_strings(raw: &[String]) -> Result<QVector, CliError> {
    let coords: Result<Vec<Rat>, _> = raw.iter().map(|p| parse_rat(p)).collect();
    Ok(QVector::new(coords.map_err(CliError::schema)?))
}

pub fn vector_json(v: &QVector) -> Value {
    Value::Array(
        v.coords()
            .iter()
            .map(|c| Value::String(rat_to_string(c)))
            .collect(),
    )
}

pub fn interval_json(i: &Interval) -> Value {
    json!([rat_to_string(&i.lo), rat_to_string(&i.hi)])
}

pub fn affine_json(f: &AffineFn) -> Value {
    json!({
        "slope": rat_to_string(&f.slope),
        "intercept": rat_to_string(&f.intercept),
    })
}

pub fn affine_with_domain_json(f: &AffineFn) -> Value {
    json!({
        "slope": rat_to_string(&f.slope),
        "intercept": rat_to_string(&f.intercept),
        "on": interval_json(&f.domain),
    })
}

pub fn plfunction_json(pl: &PLFunction) -> Value {
    json!({
        "breakpoints": pl.breakpoints().iter().map(rat_to_string).collect::<Vec<_>>(),
        "pieces": pl.pieces().iter().map(affine_with_domain_json).collect::<Vec<_>>(),
    })
}

pub fn threshold_json(t: &Threshold) -> Value {
    match t {
        Threshold::Finite(v) => Value::String(rat_to_string(v)),
        Threshold::Infinite => Value::String("infinity".into()),
    }
}

pub fn polytope_json(p: &HPolytope) -> Value {
    serde_json::to_value(p).expect("polytope serialization is total")
}

pub fn vrep_json(dim: usize, v: &VRep) -> Value {
    json!({
        "dim": dim,
        "vertices": v.vertices.iter().map(vector_json).collect::<Vec<_>>(),
        "rays": v.rays.iter().map(vector_json).collect::<Vec<_>>(),
        "bounded": v.is_bounded(),
    })
}

pub fn facets_json(labels: &[FacetLabel]) -> Value {
    json!({
        "facets": labels
            .iter()
            .map(|l| {
                json!({
                    "normal": vector_json(l.facet.normal()),
                    "bound": rat_to_string(l.facet.bound()),
                    "is_lct_facet": l.is_lct_facet,
                })
            })
            .collect::<Vec<_>>(),
    })
}

pub fn witness_json(w: &DecompWitness) -> Value {
    json!({
        "m": w.m,
        "terms": w
            .terms
            .iter()
            .map(|(n, f)| json!([n, affine_json(f)]))
            .collect::<Vec<_>>(),
        "interval": interval_json(&w.interval),
    })
}

pub fn derived_json(r: &DerivedResult) -> Value {
    json!({
        "members": r
            .members
            .iter()
            .map(|m| {
                json!({
                    "slope": rat_to_string(&m.func.slope),
                    "intercept": rat_to_string(&m.func.intercept),
                    "witness": witness_json(&m.witness),
                })
            })
            .collect::<Vec<_>>(),
        "m_cap": r.m_cap,
        "complete": r.complete,
    })
}

pub fn inverse_json(members: &[InverseMember]) -> Value {
    json!({
        "members": members
            .iter()
            .map(|m| {
                json!({
                    "slope": rat_to_string(&m.func.slope),
                    "intercept": rat_to_string(&m.func.intercept),
                    "target": affine_json(&m.target),
                    "witness": witness_json(&m.witness),
                })
            })
            .collect::<Vec<_>>(),
    })
}

pub fn decompositions_json(k: &Rat, decs: &[Decomposition], complete: bool) -> Value {
    json!({
        "k": rat_to_string(k),
        "count": decs.len(),
        "decompositions": decs
            .iter()
            .map(|d| {
                Value::Array(
                    d.value_multiset()
                        .iter()
                        .map(affine_json)
                        .collect(),
                )
            })
            .collect::<Vec<_>>(),
        "complete": complete,
    })
}

pub fn segment_json(seg: &SegmentLct) -> Value {
    json!({
        "zeta": plfunction_json(&seg.zeta),
        "places": seg
            .places
            .iter()
            .map(|(on, labels)| {
                json!({
                    "on": interval_json(on),
                    "rows": labels.iter().cloned().collect::<Vec<_>>(),
                })
            })
            .collect::<Vec<_>>(),
    })
}

/// Flattens a JSON value into deterministic `path: value` lines for the
/// table output format.
pub fn to_table(value: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(map) => {
                for (k, val) in map {
                    let path = if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{prefix}.{k}")
                    };
                    walk(&path, val, out);
                }
            }
            Value::Array(items) => {
                if items.iter().all(|i| i.is_string() || i.is_number()) {
                    let row: Vec<String> = items
                        .iter()
                        .map(|i| match i {
                            Value::String(s) => s.clone(),
                            other => other.to_string(),
                        })
                        .collect();
                    out.push_str(&format!("{prefix}: [{}]\n", row.join(", ")));
                } else {
                    for (idx, item) in items.iter().enumerate() {
                        walk(&format!("{prefix}[{idx}]"), item, out);
                    }
                }
            }
            Value::String(s) => out.push_str(&format!("{prefix}: {s}\n")),
            other => out.push_str(&format!("{prefix}: {other}\n")),
        }
    }
    let mut out = String::new();
    walk("", value, &mut out);
    out
}
