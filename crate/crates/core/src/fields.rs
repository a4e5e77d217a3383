//! Forward-compatible reading: unknown object keys are collected as warnings
//! instead of being rejected.

use serde_json::Value;

/// Appends `path.key` for every key of `v` not in `known`.
pub(crate) fn unknown_keys(v: &Value, known: &[&str], path: &str, out: &mut Vec<String>) {
    if let Value::Object(map) = v {
        for k in map.keys() {
            if !known.contains(&k.as_str()) {
                out.push(if path.is_empty() {
                    k.clone()
                } else {
                    format!("{path}.{k}")
                });
            }
        }
    }
}

pub(crate) fn get<'a>(v: &'a Value, key: &str) -> Option<&'a Value> {
    v.as_object().and_then(|m| m.get(key))
}
