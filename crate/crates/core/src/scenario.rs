//! JSON scenario documents.
//!
//! ```json
//! {
//!   "network": {"edge_list": "advice.edges", "krackhardt_weights": true},
//!   "s": {"default": 0.2, "overrides": {"20": 0.75}},
//!   "beta": 0.06,
//!   "gamma": 0.06
//! }
//! ```
//!
//! `network` is one of
//! - inline: `{"n": 3, "edges": [[0, 1, 0.2], ...]}`
//! - a file: `{"edge_list": "path"}`, resolved against the document's folder
//! - `{"builtin": "krackhardt"}` for the bundled advice network
//!
//! Any of these may add `"krackhardt_weights": true` to reweight present edges.
//! `s` is either a full array or a default with 0-based index overrides.

use std::path::{Path, PathBuf};

use serde_json::{Map, Value};

use crate::dynamics::{BiasParams, Scenario};
use crate::error::{Error, Result};
use crate::krackhardt;
use crate::network::SocialNetwork;

fn field_err(field: &str, msg: impl std::fmt::Display) -> Error {
    Error::InvalidScenario(format!("field `{field}`: {msg}"))
}

fn number(obj: &Map<String, Value>, field: &str) -> Result<f64> {
    match obj.get(field) {
        Some(v) => v
            .as_f64()
            .ok_or_else(|| field_err(field, format!("expected a number, got {v}"))),
        None => Err(field_err(field, "missing")),
    }
}

fn resolve_network(v: &Value, base: &Path) -> Result<SocialNetwork> {
    let obj = v
        .as_object()
        .ok_or_else(|| field_err("network", "expected an object"))?;
    let reweight = match obj.get("krackhardt_weights") {
        None => false,
        Some(Value::Bool(b)) => *b,
        Some(other) => {
            return Err(field_err(
                "network.krackhardt_weights",
                format!("expected a boolean, got {other}"),
            ))
        }
    };
    let net = if let Some(name) = obj.get("builtin") {
        match name.as_str() {
            Some("krackhardt") => krackhardt::network()?,
            _ => return Err(field_err("network.builtin", format!("unknown builtin {name}"))),
        }
    } else if let Some(path) = obj.get("edge_list") {
        let rel = path
            .as_str()
            .ok_or_else(|| field_err("network.edge_list", "expected a path string"))?;
        let full = base.join(rel);
        let text = read(&full)?;
        SocialNetwork::load_edge_list(&text)
            .map_err(|e| field_err("network.edge_list", format!("{}: {e}", full.display())))?
    } else if obj.contains_key("n") {
        let mut inline = obj.clone();
        inline.remove("krackhardt_weights");
        SocialNetwork::from_json_value(&Value::Object(inline)).map_err(|e| field_err("network", e))?
    } else {
        return Err(field_err(
            "network",
            "expected one of `n`/`edges`, `edge_list` or `builtin`",
        ));
    };
    Ok(if reweight { net.krackhardt_weights() } else { net })
}

fn resolve_opinions(v: &Value, n: usize) -> Result<Vec<f64>> {
    match v {
        Value::Array(items) => items
            .iter()
            .enumerate()
            .map(|(i, x)| {
                x.as_f64()
                    .ok_or_else(|| field_err(&format!("s[{i}]"), format!("expected a number, got {x}")))
            })
            .collect(),
        Value::Object(obj) => {
            let default = number(obj, "default").map_err(|e| field_err("s", e))?;
            let mut s = vec![default; n];
            if let Some(ov) = obj.get("overrides") {
                let ov = ov
                    .as_object()
                    .ok_or_else(|| field_err("s.overrides", "expected an object"))?;
                for (key, val) in ov {
                    let field = format!("s.overrides.{key}");
                    let idx: usize = key.parse().map_err(|_| field_err(&field, "key is not a node index"))?;
                    if idx >= n {
                        return Err(field_err(&field, format!("index out of range for n = {n}")));
                    }
                    s[idx] = val
                        .as_f64()
                        .ok_or_else(|| field_err(&field, format!("expected a number, got {val}")))?;
                }
            }
            Ok(s)
        }
        other => Err(field_err("s", format!("expected an array or an object, got {other}"))),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Build a scenario from document text. Relative paths resolve against `base`.
pub fn parse_scenario(text: &str, base: &Path) -> Result<Scenario> {
    let doc: Value = serde_json::from_str(text)?;
    let obj = doc
        .as_object()
        .ok_or_else(|| Error::InvalidScenario("document must be a JSON object".into()))?;
    let net = resolve_network(obj.get("network").ok_or_else(|| field_err("network", "missing"))?, base)?;
    let s = resolve_opinions(obj.get("s").ok_or_else(|| field_err("s", "missing"))?, net.n())?;
    let bias = BiasParams::new(number(obj, "beta")?, number(obj, "gamma")?);
    Scenario::new(net, s, bias)
}

pub fn load_scenario(path: impl AsRef<Path>) -> Result<Scenario> {
    let path = path.as_ref();
    let base: PathBuf = path.parent().map(Path::to_path_buf).unwrap_or_default();
    parse_scenario(&read(path)?, &base)
}
