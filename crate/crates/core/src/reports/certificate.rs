//! Certificate documents. See `docs/certificate.md` for the schema.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::group::GroupSpec;

pub const CERTIFICATE_SCHEMA: &str = "gammalab-certificate/1";
pub const EVIDENCE_SCHEMA: &str = "gammalab-evidence/1";

/// Effective per-task settings after CLI, task and file-level overrides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    pub budget: u64,
    pub seed: u64,
    pub limit: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub schema: String,
    pub producer: String,
    pub task: String,
    pub kind: String,
    pub group: GroupSpec,
    /// The task as configured, so the run can be replayed.
    pub input: Value,
    pub settings: Settings,
    pub outcome: String,
    pub payload: Value,
    pub stats: Value,
}

impl Certificate {
    pub fn to_pretty(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let v: Value =
            serde_json::from_str(text).map_err(|e| Error::Certificate(format!("not JSON: {e}")))?;
        match v.get("schema").and_then(Value::as_str) {
            Some(CERTIFICATE_SCHEMA) => {}
            Some(other) => {
                return Err(Error::Certificate(format!("unknown schema {other:?}")));
            }
            None => return Err(Error::Certificate("missing schema field".into())),
        }
        serde_json::from_value(v).map_err(|e| Error::Certificate(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Certificate(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }
}

pub fn producer() -> String {
    format!("gammalab {}", env!("CARGO_PKG_VERSION"))
}

/// Path and values of the first place two JSON documents differ.
pub fn first_difference(a: &Value, b: &Value) -> Option<String> {
    fn walk(a: &Value, b: &Value, path: &mut String) -> Option<String> {
        match (a, b) {
            (Value::Object(x), Value::Object(y)) => {
                let mut keys: Vec<&String> = x.keys().chain(y.keys()).collect();
                keys.sort();
                keys.dedup();
                for k in keys {
                    let len = path.len();
                    path.push('.');
                    path.push_str(k);
                    let found = match (x.get(k), y.get(k)) {
                        (Some(p), Some(q)) => walk(p, q, path),
                        (p, q) => Some(format!("{path}: {} vs {}", show(p), show(q))),
                    };
                    if found.is_some() {
                        return found;
                    }
                    path.truncate(len);
                }
                None
            }
            (Value::Array(x), Value::Array(y)) => {
                for (i, (p, q)) in x.iter().zip(y).enumerate() {
                    let len = path.len();
                    path.push_str(&format!("[{i}]"));
                    if let Some(d) = walk(p, q, path) {
                        return Some(d);
                    }
                    path.truncate(len);
                }
                (x.len() != y.len())
                    .then(|| format!("{path}: length {} vs {}", x.len(), y.len()))
            }
            _ if a == b => None,
            _ => Some(format!("{path}: {a} vs {b}")),
        }
    }
    fn show(v: Option<&Value>) -> String {
        v.map_or_else(|| "absent".to_string(), Value::to_string)
    }
    walk(a, b, &mut String::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample() -> Certificate {
        Certificate {
            schema: CERTIFICATE_SCHEMA.into(),
            producer: producer(),
            task: "t".into(),
            kind: "search".into(),
            group: GroupSpec::FreeAbelian { rank: 1 },
            input: json!({}),
            settings: Settings {
                budget: 10,
                seed: 0,
                limit: 5,
            },
            outcome: "witness".into(),
            payload: json!({ "b": 1, "a": [1, 2] }),
            stats: json!({}),
        }
    }

    #[test]
    fn round_trip_and_stable_key_order() {
        let c = sample();
        let text = c.to_pretty().unwrap();
        assert!(text.find("\"a\"").unwrap() < text.find("\"b\"").unwrap());
        assert_eq!(Certificate::parse(&text).unwrap(), c);
    }

    #[test]
    fn unknown_schema_is_rejected() {
        let text = sample().to_pretty().unwrap().replace(CERTIFICATE_SCHEMA, "other/9");
        assert!(matches!(Certificate::parse(&text), Err(Error::Certificate(m)) if m.contains("other/9")));
        assert!(Certificate::parse("{}").is_err());
        assert!(Certificate::parse("nope").is_err());
    }

    #[test]
    fn differences_are_located() {
        let a = json!({ "x": { "colors": [0, 1, 0] }, "y": 1 });
        let b = json!({ "x": { "colors": [0, 0, 0] }, "y": 1 });
        assert_eq!(first_difference(&a, &b).unwrap(), ".x.colors[1]: 1 vs 0");
        assert_eq!(first_difference(&a, &a), None);
        let c = json!({ "x": { "colors": [0, 1] }, "y": 1 });
        assert_eq!(first_difference(&a, &c).unwrap(), ".x.colors: length 3 vs 2");
    }
}
