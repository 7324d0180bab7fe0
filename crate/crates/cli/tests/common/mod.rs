#![allow(dead_code)]

use serde_json::Value;
use strebel_cli::run_args;

/// Runs the command in-process and returns its output.
pub fn run(args: &[&str]) -> String {
    let mut full = vec!["strebel"];
    full.extend_from_slice(args);
    run_args(full).unwrap_or_else(|e| panic!("{args:?}: {e}")).body
}

pub fn run_json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend_from_slice(&["--format", "json"]);
    serde_json::from_str(&run(&full)).expect("valid JSON")
}

/// Minimal structural schema for command output.
pub enum Schema {
    Number,
    Str,
    Bool,
    Complex,
    Array(Box<Schema>),
    /// Fixed-length array.
    Tuple(Vec<Schema>),
    /// Required fields; other fields are rejected.
    Object(Vec<(&'static str, Schema)>),
    Nullable(Box<Schema>),
}

pub fn validate(value: &Value, schema: &Schema) -> Result<(), String> {
    validate_at(value, schema, "$")
}

fn validate_at(value: &Value, schema: &Schema, path: &str) -> Result<(), String> {
    let fail = |what: &str| Err(format!("{path}: expected {what}, got {value}"));
    match schema {
        Schema::Number => {
            if value.is_number() {
                Ok(())
            } else {
                fail("number")
            }
        }
        Schema::Str => {
            if value.is_string() {
                Ok(())
            } else {
                fail("string")
            }
        }
        Schema::Bool => {
            if value.is_boolean() {
                Ok(())
            } else {
                fail("boolean")
            }
        }
        Schema::Complex => validate_at(
            value,
            &Schema::Object(vec![("re", Schema::Number), ("im", Schema::Number)]),
            path,
        ),
        Schema::Nullable(inner) => {
            if value.is_null() {
                Ok(())
            } else {
                validate_at(value, inner, path)
            }
        }
        Schema::Array(item) => match value.as_array() {
            Some(items) => items
                .iter()
                .enumerate()
                .try_for_each(|(i, v)| validate_at(v, item, &format!("{path}[{i}]"))),
            None => fail("array"),
        },
        Schema::Tuple(items) => match value.as_array() {
            Some(values) if values.len() == items.len() => values
                .iter()
                .zip(items)
                .enumerate()
                .try_for_each(|(i, (v, s))| validate_at(v, s, &format!("{path}[{i}]"))),
            _ => fail(&format!("array of length {}", items.len())),
        },
        Schema::Object(fields) => {
            let map = match value.as_object() {
                Some(m) => m,
                None => return fail("object"),
            };
            for (name, s) in fields {
                match map.get(*name) {
                    Some(v) => validate_at(v, s, &format!("{path}.{name}"))?,
                    None => return Err(format!("{path}: missing field {name}")),
                }
            }
            for key in map.keys() {
                if !fields.iter().any(|(n, _)| n == key) {
                    return Err(format!("{path}: unexpected field {key}"));
                }
            }
            Ok(())
        }
    }
}

pub fn sphere_point() -> Schema {
    Schema::Object(vec![
        ("re", Schema::Number),
        ("im", Schema::Number),
        ("at_infinity", Schema::Bool),
    ])
}

pub fn word_schema() -> Schema {
    Schema::Object(vec![
        ("q", Schema::Str),
        ("start", Schema::Tuple(vec![Schema::Str, Schema::Str])),
        ("direction", Schema::Str),
        ("edge_sequence", Schema::Array(Box::new(Schema::Str))),
        ("pairs", Schema::Array(Box::new(Schema::Tuple(vec![Schema::Str, Schema::Str])))),
        ("raw_factors", Schema::Array(Box::new(Schema::Str))),
        ("raw_word", Schema::Str),
        ("expanded_word", Schema::Str),
        ("canonical_class", Schema::Str),
        ("separation", Schema::Str),
    ])
}

pub fn trace_schema() -> Schema {
    let points = || Schema::Array(Box::new(sphere_point()));
    Schema::Object(vec![
        ("q", Schema::Str),
        ("mu", Schema::Complex),
        ("start", Schema::Tuple(vec![Schema::Str, Schema::Str])),
        ("closed", Schema::Bool),
        ("closure_residual", Schema::Number),
        ("early_closure", Schema::Bool),
        ("omega_length", Schema::Number),
        ("max_arg_deviation", Schema::Number),
        ("points", points()),
        (
            "critical_graph",
            Schema::Array(Box::new(Schema::Object(vec![
                ("through", Schema::Str),
                ("endpoints", Schema::Tuple(vec![Schema::Str, Schema::Str])),
                ("points", points()),
            ]))),
        ),
        (
            "pillowcase_edges",
            Schema::Array(Box::new(Schema::Object(vec![("color", Schema::Str), ("points", points())]))),
        ),
    ])
}

pub fn enumerate_schema() -> Schema {
    Schema::Object(vec![
        ("max_den", Schema::Number),
        (
            "rows",
            Schema::Array(Box::new(Schema::Object(vec![
                ("q", Schema::Str),
                ("canonical_class", Schema::Str),
                ("separation", Schema::Str),
                ("word_length", Schema::Number),
            ]))),
        ),
    ])
}
