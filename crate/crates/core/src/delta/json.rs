//! JSON exchange format:
//!
//! ```json
//! {"simplices": {"0": ["x0"], "1": ["x1"]}, "faces": {"x1": ["x0", "x0"]}}
//! ```
//!
//! Faces are listed in `∂₀ … ∂ₙ` order. Vertices may be omitted from
//! `"faces"` or given an empty list.

use serde_json::{Map, Value};

use crate::error::{Error, Result};

use super::DeltaSet;

pub fn parse(text: &str) -> Result<DeltaSet> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))?;
    from_value(&value)
}

pub fn from_value(value: &Value) -> Result<DeltaSet> {
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Parse("expected a JSON object".into()))?;
    let simplices = obj
        .get("simplices")
        .and_then(Value::as_object)
        .ok_or_else(|| Error::Parse("missing object \"simplices\"".into()))?;
    let empty = Map::new();
    let faces = match obj.get("faces") {
        None => &empty,
        Some(v) => v
            .as_object()
            .ok_or_else(|| Error::Parse("\"faces\" must be an object".into()))?,
    };

    let mut by_dim: Vec<(usize, Vec<String>)> = Vec::new();
    for (key, list) in simplices {
        let dim: usize = key.parse().map_err(|_| {
            Error::Parse(format!(
                "dimension key `{key}` is not a nonnegative integer"
            ))
        })?;
        let list = list.as_array().ok_or_else(|| {
            Error::Parse(format!("simplices of dimension {dim} must be an array"))
        })?;
        let labels = list
            .iter()
            .map(|v| {
                v.as_str().map(str::to_string).ok_or_else(|| {
                    Error::Parse(format!("label in dimension {dim} is not a string"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        by_dim.push((dim, labels));
    }
    by_dim.sort_by_key(|(d, _)| *d);
    if by_dim.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(Error::Parse("dimension listed twice".into()));
    }

    let mut builder = DeltaSet::builder();
    let mut known = std::collections::HashSet::new();
    for (dim, labels) in &by_dim {
        for label in labels {
            known.insert(label.as_str());
            let face_labels: Vec<String> = match faces.get(label) {
                None if *dim == 0 => Vec::new(),
                None => {
                    return Err(Error::Malformed {
                        label: label.clone(),
                        reason: "no faces listed".into(),
                    })
                }
                Some(v) => v
                    .as_array()
                    .ok_or_else(|| Error::Malformed {
                        label: label.clone(),
                        reason: "faces must be an array".into(),
                    })?
                    .iter()
                    .map(|f| {
                        f.as_str()
                            .map(str::to_string)
                            .ok_or_else(|| Error::Malformed {
                                label: label.clone(),
                                reason: "face labels must be strings".into(),
                            })
                    })
                    .collect::<Result<_>>()?,
            };
            let expected = if *dim == 0 { 0 } else { dim + 1 };
            if face_labels.len() != expected {
                return Err(Error::Malformed {
                    label: label.clone(),
                    reason: format!(
                        "{dim}-simplex needs {expected} faces, found {}",
                        face_labels.len()
                    ),
                });
            }
            builder.push(*dim, label.clone(), face_labels);
        }
    }
    if let Some(stray) = faces.keys().find(|k| !known.contains(k.as_str())) {
        return Err(Error::Malformed {
            label: stray.clone(),
            reason: "faces given for an unlisted simplex".into(),
        });
    }
    builder.build()
}

pub fn to_value(x: &DeltaSet) -> Value {
    let mut simplices = Map::new();
    let mut faces = Map::new();
    for (n, labels) in x.counts().iter().enumerate().map(|(n, _)| (n, x.labels(n))) {
        simplices.insert(n.to_string(), Value::from(labels.to_vec()));
        if n == 0 {
            continue;
        }
        for (k, label) in labels.iter().enumerate() {
            let f: Vec<Value> = x
                .face_indices(super::SimplexRef::new(n, k))
                .iter()
                .map(|&j| Value::from(x.labels(n - 1)[j].clone()))
                .collect();
            faces.insert(label.clone(), Value::Array(f));
        }
    }
    let mut root = Map::new();
    root.insert("simplices".into(), Value::Object(simplices));
    root.insert("faces".into(), Value::Object(faces));
    Value::Object(root)
}

pub fn to_string(x: &DeltaSet) -> String {
    serde_json::to_string_pretty(&to_value(x)).expect("JSON values always serialize")
}
