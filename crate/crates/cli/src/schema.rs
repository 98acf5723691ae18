//! Validation of output documents against the shipped JSON Schema.
//!
//! Supports the keywords the schema uses: `type`, `properties`, `required`,
//! `additionalProperties`, `items`, `enum`, `const`, `minimum`, `oneOf`,
//! `anyOf` and local `$ref`s into `#/definitions`. Unknown keywords are
//! rejected so the schema cannot silently rely on unchecked constraints.

use serde_json::Value;

pub const SCHEMA: &str = include_str!("../schema/mvkit-1.schema.json");

const ANNOTATIONS: [&str; 4] = ["$schema", "$id", "title", "definitions"];

pub fn schema() -> Value {
    serde_json::from_str(SCHEMA).expect("shipped schema is valid JSON")
}

/// Validates `doc` against the shipped schema; returns every violation with
/// its JSON pointer.
pub fn validate(doc: &Value) -> Result<(), Vec<String>> {
    let root = schema();
    validate_with(&root, doc)
}

pub fn validate_with(root: &Value, doc: &Value) -> Result<(), Vec<String>> {
    let mut errors = Vec::new();
    check(root, root, doc, "", &mut errors);
    if errors.is_empty() {
        Ok(())
    } else {
        Err(errors)
    }
}

fn resolve<'a>(root: &'a Value, reference: &str) -> Option<&'a Value> {
    root.pointer(reference.strip_prefix('#')?)
}

fn type_matches(name: &str, v: &Value) -> bool {
    match name {
        "object" => v.is_object(),
        "array" => v.is_array(),
        "string" => v.is_string(),
        "boolean" => v.is_boolean(),
        "null" => v.is_null(),
        "number" => v.is_number(),
        "integer" => v.is_i64() || v.is_u64(),
        _ => false,
    }
}

fn check(root: &Value, schema: &Value, v: &Value, path: &str, errors: &mut Vec<String>) {
    let Some(schema) = schema.as_object() else {
        errors.push(format!("{path}: schema node is not an object"));
        return;
    };
    for (key, arg) in schema {
        match key.as_str() {
            "$ref" => match arg.as_str().and_then(|r| resolve(root, r)) {
                Some(target) => check(root, target, v, path, errors),
                None => errors.push(format!("{path}: unresolved reference {arg}")),
            },
            "type" => {
                let ok = match arg {
                    Value::String(t) => type_matches(t, v),
                    Value::Array(ts) => ts.iter().filter_map(Value::as_str).any(|t| type_matches(t, v)),
                    _ => false,
                };
                if !ok {
                    errors.push(format!("{path}: expected type {arg}, found {v}"));
                }
            }
            "const" => {
                if !json_eq(arg, v) {
                    errors.push(format!("{path}: expected {arg}, found {v}"));
                }
            }
            "enum" => {
                let options = arg.as_array().map(Vec::as_slice).unwrap_or_default();
                if !options.iter().any(|o| json_eq(o, v)) {
                    errors.push(format!("{path}: {v} is not one of {arg}"));
                }
            }
            "minimum" => {
                if let (Some(min), Some(x)) = (arg.as_f64(), v.as_f64()) {
                    if x < min {
                        errors.push(format!("{path}: {v} is below the minimum {arg}"));
                    }
                }
            }
            "required" => {
                if let Some(obj) = v.as_object() {
                    for name in arg.as_array().into_iter().flatten().filter_map(Value::as_str) {
                        if !obj.contains_key(name) {
                            errors.push(format!("{path}: missing property {name:?}"));
                        }
                    }
                }
            }
            "properties" => {
                if let (Some(props), Some(obj)) = (arg.as_object(), v.as_object()) {
                    for (name, sub) in props {
                        if let Some(x) = obj.get(name) {
                            check(root, sub, x, &format!("{path}/{name}"), errors);
                        }
                    }
                }
            }
            "additionalProperties" => {
                let Some(obj) = v.as_object() else { continue };
                let declared = schema.get("properties").and_then(Value::as_object);
                for (name, x) in obj {
                    if declared.is_some_and(|p| p.contains_key(name)) {
                        continue;
                    }
                    match arg {
                        Value::Bool(false) => errors.push(format!("{path}: unexpected property {name:?}")),
                        Value::Bool(true) => {}
                        sub => check(root, sub, x, &format!("{path}/{name}"), errors),
                    }
                }
            }
            "items" => {
                if let Some(xs) = v.as_array() {
                    for (i, x) in xs.iter().enumerate() {
                        check(root, arg, x, &format!("{path}/{i}"), errors);
                    }
                }
            }
            "oneOf" | "anyOf" => {
                let branches = arg.as_array().map(Vec::as_slice).unwrap_or_default();
                let passing = branches
                    .iter()
                    .filter(|b| validate_with_root(root, b, v, path))
                    .count();
                let ok = if key == "oneOf" { passing == 1 } else { passing >= 1 };
                if !ok {
                    errors.push(format!("{path}: {passing} of {} {key} branches match", branches.len()));
                }
            }
            k if ANNOTATIONS.contains(&k) => {}
            k => errors.push(format!("{path}: unsupported schema keyword {k:?}")),
        }
    }
}

fn validate_with_root(root: &Value, schema: &Value, v: &Value, path: &str) -> bool {
    let mut errors = Vec::new();
    check(root, schema, v, path, &mut errors);
    errors.is_empty()
}

/// Equality with numbers compared by value, so 1 and 1.0 agree.
fn json_eq(a: &Value, b: &Value) -> bool {
    match (a, b) {
        (Value::Number(x), Value::Number(y)) => x.as_f64() == y.as_f64(),
        _ => a == b,
    }
}
