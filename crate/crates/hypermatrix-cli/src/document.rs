//! The on-disk hypermatrix document: a self-describing JSON object
//!
//! ```json
//! {
//!   "order": 3,
//!   "dims": [2, 2, 2],
//!   "scalar_kind": "real",
//!   "entries": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.0, 1.0]]]
//! }
//! ```
//!
//! The nesting depth of `entries` equals `order` and every level's length
//! matches the corresponding dimension. Innermost values are encoded per
//! scalar kind: rationals as `"p/q"` text, reals as JSON numbers
//! (round-trip-exact shortest decimal), complex values as `{"re", "im"}`
//! records, and expressions as their canonical text rendering. One format
//! for all kinds keeps every subcommand composable with every generator.

use std::str::FromStr;

use hypermatrix::{Complex64, Expr, Hypermatrix, Rational, Scalar, Shape};
use serde_json::{json, Value};

use crate::CliError;

/// The four scalar encodings a document can carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ScalarKind {
    Rational,
    Real,
    Complex,
    Expression,
}

impl ScalarKind {
    pub fn name(self) -> &'static str {
        match self {
            ScalarKind::Rational => "rational",
            ScalarKind::Real => "real",
            ScalarKind::Complex => "complex",
            ScalarKind::Expression => "expression",
        }
    }

    fn from_name(name: &str) -> Option<Self> {
        match name {
            "rational" => Some(ScalarKind::Rational),
            "real" => Some(ScalarKind::Real),
            "complex" => Some(ScalarKind::Complex),
            "expression" => Some(ScalarKind::Expression),
            _ => None,
        }
    }
}

/// A hypermatrix of any supported scalar kind.
#[derive(Debug, Clone, PartialEq)]
pub enum HmValue {
    Rational(Hypermatrix<Rational>),
    Real(Hypermatrix<f64>),
    Complex(Hypermatrix<Complex64>),
    Expression(Hypermatrix<Expr>),
}

impl HmValue {
    pub fn kind(&self) -> ScalarKind {
        match self {
            HmValue::Rational(_) => ScalarKind::Rational,
            HmValue::Real(_) => ScalarKind::Real,
            HmValue::Complex(_) => ScalarKind::Complex,
            HmValue::Expression(_) => ScalarKind::Expression,
        }
    }

    pub fn shape(&self) -> &Shape {
        match self {
            HmValue::Rational(h) => h.shape(),
            HmValue::Real(h) => h.shape(),
            HmValue::Complex(h) => h.shape(),
            HmValue::Expression(h) => h.shape(),
        }
    }
}

fn encode_rational(r: &Rational) -> Value {
    if r.is_integer() {
        Value::String(r.numer().to_string())
    } else {
        Value::String(format!("{}/{}", r.numer(), r.denom()))
    }
}

fn encode_real(x: f64) -> Result<Value, CliError> {
    serde_json::Number::from_f64(x)
        .map(Value::Number)
        .ok_or_else(|| CliError::failure(format!("cannot serialize non-finite value {x}")))
}

fn encode_complex(z: &Complex64) -> Result<Value, CliError> {
    Ok(json!({ "re": encode_real(z.re)?, "im": encode_real(z.im)? }))
}

fn encode_entries(value: &HmValue) -> Result<Vec<Value>, CliError> {
    match value {
        HmValue::Rational(h) => Ok(h.entries().iter().map(encode_rational).collect()),
        HmValue::Real(h) => h.entries().iter().map(|&x| encode_real(x)).collect(),
        HmValue::Complex(h) => h.entries().iter().map(encode_complex).collect(),
        HmValue::Expression(h) => Ok(h
            .entries()
            .iter()
            .map(|e| Value::String(e.to_string()))
            .collect()),
    }
}

fn nest(dims: &[usize], entries: &[Value]) -> Value {
    if dims.len() == 1 {
        return Value::Array(entries.to_vec());
    }
    let block = entries.len() / dims[0];
    Value::Array(
        (0..dims[0])
            .map(|i| nest(&dims[1..], &entries[i * block..(i + 1) * block]))
            .collect(),
    )
}

/// Renders a document to its canonical JSON text (deterministic bytes:
/// sorted keys, shortest round-trip floats).
pub fn render(value: &HmValue) -> Result<String, CliError> {
    let dims = value.shape().dims();
    let entries = encode_entries(value)?;
    let doc = json!({
        "order": dims.len(),
        "dims": dims,
        "scalar_kind": value.kind().name(),
        "entries": nest(dims, &entries),
    });
    let mut text = serde_json::to_string_pretty(&doc)
        .map_err(|e| CliError::failure(format!("cannot serialize document: {e}")))?;
    text.push('\n');
    Ok(text)
}

fn malformed(msg: impl Into<String>) -> CliError {
    CliError::malformed(msg.into())
}

fn flatten<'v>(dims: &[usize], value: &'v Value, out: &mut Vec<&'v Value>) -> Result<(), CliError> {
    let Value::Array(items) = value else {
        return Err(malformed(format!(
            "expected a nesting level of length {}, found {value}",
            dims[0]
        )));
    };
    if items.len() != dims[0] {
        return Err(malformed(format!(
            "nesting level has length {}, expected {}",
            items.len(),
            dims[0]
        )));
    }
    if dims.len() == 1 {
        out.extend(items.iter());
        return Ok(());
    }
    for item in items {
        flatten(&dims[1..], item, out)?;
    }
    Ok(())
}

fn decode_rational(v: &Value) -> Result<Rational, CliError> {
    let Value::String(text) = v else {
        return Err(malformed(format!(
            "rational entries must be strings, found {v}"
        )));
    };
    Rational::from_str(text).map_err(|e| malformed(format!("bad rational {text:?}: {e}")))
}

fn decode_real(v: &Value) -> Result<f64, CliError> {
    v.as_f64()
        .ok_or_else(|| malformed(format!("real entries must be numbers, found {v}")))
}

fn decode_complex(v: &Value) -> Result<Complex64, CliError> {
    let Value::Object(fields) = v else {
        return Err(malformed(format!(
            "complex entries must be {{\"re\", \"im\"}} records, found {v}"
        )));
    };
    let field = |name: &str| {
        fields
            .get(name)
            .and_then(Value::as_f64)
            .ok_or_else(|| malformed(format!("complex entry is missing a numeric {name:?} field")))
    };
    Ok(Complex64::new(field("re")?, field("im")?))
}

fn decode_expression(v: &Value) -> Result<Expr, CliError> {
    let Value::String(text) = v else {
        return Err(malformed(format!(
            "expression entries must be strings, found {v}"
        )));
    };
    Expr::from_str(text).map_err(|e| malformed(format!("bad expression {text:?}: {e}")))
}

fn decode_hypermatrix<S: Scalar>(
    shape: Shape,
    raw: &[&Value],
    decode: impl Fn(&Value) -> Result<S, CliError>,
) -> Result<Hypermatrix<S>, CliError> {
    let mut entries = Vec::with_capacity(raw.len());
    for v in raw {
        entries.push(decode(v)?);
    }
    Hypermatrix::from_entries(shape, entries)
        .map_err(|e| malformed(format!("entry count does not match dims: {e}")))
}

/// Parses a document from JSON text, validating order, dims, nesting and
/// every entry.
pub fn parse(text: &str) -> Result<HmValue, CliError> {
    let root: Value =
        serde_json::from_str(text).map_err(|e| malformed(format!("invalid JSON: {e}")))?;
    let Value::Object(fields) = root else {
        return Err(malformed("document root must be a JSON object"));
    };
    let order = fields
        .get("order")
        .and_then(Value::as_u64)
        .ok_or_else(|| malformed("missing or non-integer \"order\" field"))?;
    let dims: Vec<usize> = match fields.get("dims") {
        Some(Value::Array(items)) => items
            .iter()
            .map(|v| {
                v.as_u64()
                    .map(|d| d as usize)
                    .ok_or_else(|| malformed(format!("bad dimension {v}")))
            })
            .collect::<Result<_, _>>()?,
        _ => return Err(malformed("missing or non-array \"dims\" field")),
    };
    if dims.len() as u64 != order {
        return Err(malformed(format!(
            "order {order} does not match {} dims",
            dims.len()
        )));
    }
    let shape = Shape::new(dims.clone()).map_err(|e| malformed(e.to_string()))?;
    let kind = fields
        .get("scalar_kind")
        .and_then(Value::as_str)
        .and_then(ScalarKind::from_name)
        .ok_or_else(|| {
            malformed("missing or unknown \"scalar_kind\" (rational|real|complex|expression)")
        })?;
    let entries = fields
        .get("entries")
        .ok_or_else(|| malformed("missing \"entries\" field"))?;
    let mut raw = Vec::with_capacity(shape.count());
    flatten(&dims, entries, &mut raw)?;

    Ok(match kind {
        ScalarKind::Rational => {
            HmValue::Rational(decode_hypermatrix(shape, &raw, decode_rational)?)
        }
        ScalarKind::Real => HmValue::Real(decode_hypermatrix(shape, &raw, decode_real)?),
        ScalarKind::Complex => HmValue::Complex(decode_hypermatrix(shape, &raw, decode_complex)?),
        ScalarKind::Expression => {
            HmValue::Expression(decode_hypermatrix(shape, &raw, decode_expression)?)
        }
    })
}

/// Renders a flat scalar list (the vectorization) as a JSON array using
/// the same per-kind entry encoding as full documents.
pub fn render_vector(value: &HmValue) -> Result<String, CliError> {
    let entries = encode_entries(value)?;
    let doc = json!({
        "scalar_kind": value.kind().name(),
        "length": entries.len(),
        "values": Value::Array(entries),
    });
    let mut text = serde_json::to_string_pretty(&doc)
        .map_err(|e| CliError::failure(format!("cannot serialize vector: {e}")))?;
    text.push('\n');
    Ok(text)
}

/// Parses a scalar literal in the kind's entry syntax (used by `scale --by`).
pub fn parse_scalar_text(kind: ScalarKind, text: &str) -> Result<ScalarLiteral, CliError> {
    let fail =
        |e: String| CliError::failure(format!("cannot parse {text:?} as {}: {e}", kind.name()));
    Ok(match kind {
        ScalarKind::Rational => {
            ScalarLiteral::Rational(Rational::from_str(text).map_err(|e| fail(e.to_string()))?)
        }
        ScalarKind::Real => {
            ScalarLiteral::Real(f64::from_str(text).map_err(|e| fail(e.to_string()))?)
        }
        ScalarKind::Complex => {
            ScalarLiteral::Complex(Complex64::from_str(text).map_err(|e| fail(e.to_string()))?)
        }
        ScalarKind::Expression => {
            ScalarLiteral::Expression(Expr::from_str(text).map_err(|e| fail(e.to_string()))?)
        }
    })
}

/// A scalar parsed from command-line text.
pub enum ScalarLiteral {
    Rational(Rational),
    Real(f64),
    Complex(Complex64),
    Expression(Expr),
}
