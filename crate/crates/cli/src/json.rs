//! Deterministic report serialization: JSON with fixed field order and
//! reals printed at 12 significant digits.
//!
//! Identical inputs must produce byte-identical documents, so floats never
//! go through shortest-roundtrip formatting and object fields keep their
//! insertion order. Rationals are emitted as separate numerator/denominator
//! integers next to their decimal rendering.

use graph_energy_core::geometry::{rational_to_f64, Rational};

#[derive(Debug, Clone)]
pub enum Json {
    Null,
    Bool(bool),
    Int(i64),
    UInt(u64),
    Real(f64),
    Str(String),
    Array(Vec<Json>),
    Object(Vec<(String, Json)>),
}

impl Json {
    pub fn object() -> Self {
        Json::Object(Vec::new())
    }

    pub fn field(mut self, key: &str, value: Json) -> Self {
        match &mut self {
            Json::Object(fields) => fields.push((key.to_owned(), value)),
            _ => panic!("field() on a non-object"),
        }
        self
    }

    pub fn string(s: impl Into<String>) -> Self {
        Json::Str(s.into())
    }

    pub fn rational(r: Rational) -> Self {
        Json::object()
            .field("num", Json::Int(*r.numer()))
            .field("den", Json::Int(*r.denom()))
            .field("decimal", Json::Real(rational_to_f64(r)))
    }

    pub fn reals(values: impl IntoIterator<Item = f64>) -> Self {
        Json::Array(values.into_iter().map(Json::Real).collect())
    }

    pub fn to_pretty_string(&self) -> String {
        let mut out = String::new();
        self.write(&mut out, 0);
        out.push('\n');
        out
    }

    fn write(&self, out: &mut String, level: usize) {
        match self {
            Json::Null => out.push_str("null"),
            Json::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            Json::Int(i) => out.push_str(&i.to_string()),
            Json::UInt(u) => out.push_str(&u.to_string()),
            Json::Real(x) => out.push_str(&format_real(*x)),
            Json::Str(s) => write_escaped(out, s),
            Json::Array(items) => {
                if items.is_empty() {
                    out.push_str("[]");
                    return;
                }
                out.push('[');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    newline_indent(out, level + 1);
                    item.write(out, level + 1);
                }
                newline_indent(out, level);
                out.push(']');
            }
            Json::Object(fields) => {
                if fields.is_empty() {
                    out.push_str("{}");
                    return;
                }
                out.push('{');
                for (i, (key, value)) in fields.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    newline_indent(out, level + 1);
                    write_escaped(out, key);
                    out.push_str(": ");
                    value.write(out, level + 1);
                }
                newline_indent(out, level);
                out.push('}');
            }
        }
    }
}

/// 12 significant digits in scientific notation; any tie to the platform's
/// shortest-float formatting would break byte determinism of reports.
fn format_real(x: f64) -> String {
    if !x.is_finite() {
        return "null".to_owned();
    }
    let normalized = if x == 0.0 { 0.0 } else { x };
    format!("{normalized:.11e}")
}

fn newline_indent(out: &mut String, level: usize) {
    out.push('\n');
    for _ in 0..level {
        out.push_str("  ");
    }
}

fn write_escaped(out: &mut String, s: &str) {
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                out.push_str(&format!("\\u{:04x}", c as u32));
            }
            c => out.push(c),
        }
    }
    out.push('"');
}
