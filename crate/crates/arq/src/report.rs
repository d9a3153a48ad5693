//! JSON reports. Every command emits one [`Envelope`]; the published schema
//! lives in `report.schema.json` next to this crate's manifest.

use std::collections::BTreeMap;
use std::fmt::Write;

use arq_core::ar::Certificate;
use arq_core::ext::{ExtClass, ShortExact};
use arq_core::{Matrix, Morphism, Rep};
use serde::Serialize;
use serde_json::Value;

/// The schema every report validates against.
pub const SCHEMA: &str = include_str!("../report.schema.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Negative,
    Undetermined,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Negative => 1,
            Status::Undetermined => 3,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Envelope {
    pub command: String,
    pub status: Status,
    pub result: Value,
}

fn rows(m: &Matrix) -> Vec<Vec<u32>> {
    (0..m.rows()).map(|r| m.row(r).to_vec()).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct RepJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub quiver: String,
    pub prime: u32,
    pub dims: BTreeMap<String, usize>,
    /// arrow name to a `dim target x dim source` matrix of residues
    pub mats: BTreeMap<String, Vec<Vec<u32>>>,
}

impl RepJson {
    pub fn new(m: &Rep, name: Option<&str>) -> Self {
        let q = m.quiver();
        RepJson {
            name: name.map(str::to_string),
            quiver: q.name().to_string(),
            prime: m.field().p(),
            dims: q.vertices().iter().cloned().zip(m.dims().iter().copied()).collect(),
            mats: q.arrows().iter().zip(m.mats()).map(|(a, mat)| (a.name.clone(), rows(mat))).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MorphismJson {
    /// vertex name to a `dim target x dim source` matrix
    pub comps: BTreeMap<String, Vec<Vec<u32>>>,
}

impl MorphismJson {
    pub fn new(f: &Morphism) -> Self {
        let q = f.src().quiver();
        MorphismJson { comps: q.vertices().iter().cloned().zip(f.comps().iter().map(rows)).collect() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Realization {
    pub left: RepJson,
    pub middle: RepJson,
    pub right: RepJson,
    pub i: MorphismJson,
    pub p: MorphismJson,
}

#[derive(Clone, Debug, Serialize)]
pub struct SequenceJson {
    /// coordinates in the chosen basis of `Ext^1(right, left)`
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub space_dim: Option<usize>,
    pub realization: Realization,
}

impl SequenceJson {
    pub fn new(s: &ShortExact, class: Option<(&ExtClass, usize)>) -> Self {
        SequenceJson {
            class: class.map(|(c, _)| c.coords.clone()),
            space_dim: class.map(|(_, d)| d),
            realization: Realization {
                left: RepJson::new(s.left(), None),
                middle: RepJson::new(s.middle(), None),
                right: RepJson::new(s.right(), None),
                i: MorphismJson::new(s.i()),
                p: MorphismJson::new(s.p()),
            },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessJson {
    /// `right`: a non-retraction into the right term that does not factor;
    /// `left`: a non-section out of the left term that does not factor
    pub side: &'static str,
    pub test: usize,
    pub morphism: MorphismJson,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateJson {
    pub verdict: &'static str,
    pub flags: BTreeMap<&'static str, bool>,
    pub tested: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
    pub witnesses: Vec<WitnessJson>,
}

impl CertificateJson {
    pub fn new(c: &Certificate) -> Self {
        let flags = BTreeMap::from([
            ("non_split", c.non_split),
            ("end_left_local", c.end_x_local),
            ("end_right_local", c.end_z_local),
            ("right_minimal", c.right_minimal),
            ("left_minimal", c.left_minimal),
        ]);
        let witness = |side, w: &arq_core::ar::Witness| WitnessJson { side, test: w.test, morphism: MorphismJson::new(&w.morphism) };
        let witnesses = c
            .right_failures
            .iter()
            .map(|w| witness("right", w))
            .chain(c.left_failures.iter().map(|w| witness("left", w)))
            .collect();
        CertificateJson {
            verdict: if c.is_valid() { "valid" } else { "invalid" },
            flags,
            tested: c.tested,
            failure: c.failure(),
            witnesses,
        }
    }
}

pub fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report types serialize")
}

/// Pretty JSON with a trailing newline. Object keys come out sorted, so
/// equal reports give identical bytes.
pub fn to_json(e: &Envelope) -> String {
    let mut s = serde_json::to_string_pretty(e).expect("report types serialize");
    s.push('\n');
    s
}

/// Human rendering of the same data: one `key: value` per line, nested
/// values indented, matrices inline.
pub fn to_text(e: &Envelope) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "command: {}", e.command);
    let _ = writeln!(out, "status: {}", to_value(&e.status).as_str().unwrap_or_default());
    text_value(&mut out, &e.result, 0);
    out
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(xs) => xs.iter().all(|x| !x.is_object() && is_flat(x)),
        Value::Object(_) => false,
        _ => true,
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(xs) => format!("[{}]", xs.iter().map(scalar).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

fn text_value(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                if is_flat(x) {
                    let _ = writeln!(out, "{pad}{k}: {}", scalar(x));
                } else {
                    let _ = writeln!(out, "{pad}{k}:");
                    text_value(out, x, indent + 1);
                }
            }
        }
        Value::Array(xs) => {
            for (k, x) in xs.iter().enumerate() {
                if is_flat(x) {
                    let _ = writeln!(out, "{pad}- {}", scalar(x));
                } else {
                    let _ = writeln!(out, "{pad}- [{k}]");
                    text_value(out, x, indent + 1);
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn text_rendering_nests() {
        let e = Envelope {
            command: "hom".into(),
            status: Status::Ok,
            result: json!({"dim": 1, "basis": [{"comps": {"1": [[1]]}}]}),
        };
        let t = to_text(&e);
        assert!(t.contains("status: ok"));
        assert!(t.contains("dim: 1"));
        assert!(t.contains("      1: [[1]]"), "{t}");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(Status::Negative.exit_code(), 1);
        assert_eq!(Status::Undetermined.exit_code(), 3);
    }
}
