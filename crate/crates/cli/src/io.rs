//! JSON encodings of vertex configurations, moment tables and scalars.
//!
//! Exact numbers are strings `"p/q"`, floats are JSON numbers; a document must
//! use one encoding throughout.

use polymoment::numeric::{format_rational, parse_rational, rational_from_f64};
use polymoment::{ApproxComplex, ExactComplex, Mode, Rational, Scalar, VertexConfig};
use serde_json::{json, Value};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Encoding {
    Exact,
    Float,
}

/// One parsed real number, remembering how it was written.
#[derive(Clone, Debug, PartialEq)]
enum Num {
    Exact(Rational),
    Float(f64),
}

fn schema(msg: impl Into<String>) -> CliError {
    CliError::input(msg)
}

fn parse_num(v: &Value) -> Result<Num, CliError> {
    match v {
        Value::String(s) => parse_rational(s).map(Num::Exact).ok_or_else(|| schema(format!("bad rational {s:?}"))),
        Value::Number(n) => n.as_f64().map(Num::Float).ok_or_else(|| schema(format!("bad number {n}"))),
        other => Err(schema(format!("expected a number or \"p/q\" string, found {other}"))),
    }
}

/// A complex number written as `[re, im]`.
#[derive(Clone, Debug, PartialEq)]
pub struct RawComplex(Num, Num);

fn parse_complex(v: &Value) -> Result<RawComplex, CliError> {
    match v.as_array().map(Vec::as_slice) {
        Some([re, im]) => Ok(RawComplex(parse_num(re)?, parse_num(im)?)),
        _ => Err(schema(format!("expected [re, im], found {v}"))),
    }
}

fn encoding_of(values: &[&RawComplex]) -> Result<Encoding, CliError> {
    let mut exact = 0;
    let mut float = 0;
    for RawComplex(a, b) in values {
        for x in [a, b] {
            match x {
                Num::Exact(_) => exact += 1,
                Num::Float(_) => float += 1,
            }
        }
    }
    match (exact, float) {
        (_, 0) => Ok(Encoding::Exact),
        (0, _) => Ok(Encoding::Float),
        _ => Err(schema("mixed exact and float number encodings")),
    }
}

impl RawComplex {
    fn exact(&self) -> Result<ExactComplex, CliError> {
        let part = |x: &Num| match x {
            Num::Exact(r) => Ok(r.clone()),
            Num::Float(f) => rational_from_f64(*f).ok_or_else(|| schema("non-finite number")),
        };
        Ok(ExactComplex::new(part(&self.0)?, part(&self.1)?))
    }

    fn float(&self) -> ApproxComplex {
        let part = |x: &Num| match x {
            Num::Exact(r) => polymoment::numeric::RealScalar::to_f64(r),
            Num::Float(f) => *f,
        };
        ApproxComplex::new(part(&self.0), part(&self.1))
    }
}

/// Converts parsed numbers into the working scalar type.
pub trait FromRaw: Scalar {
    fn from_raw(raw: &RawComplex) -> Result<Self, CliError>;
}

impl FromRaw for ExactComplex {
    fn from_raw(raw: &RawComplex) -> Result<Self, CliError> {
        raw.exact()
    }
}

impl FromRaw for ApproxComplex {
    fn from_raw(raw: &RawComplex) -> Result<Self, CliError> {
        Ok(raw.float())
    }
}

/// Scalars that can be written back as JSON.
pub trait Encode {
    fn encode(&self) -> Value;
}

impl Encode for ExactComplex {
    fn encode(&self) -> Value {
        json!([format_rational(&self.re), format_rational(&self.im)])
    }
}

impl Encode for ApproxComplex {
    fn encode(&self) -> Value {
        json!([self.re, self.im])
    }
}

pub fn encode_all<T: Encode>(values: &[T]) -> Value {
    Value::Array(values.iter().map(Encode::encode).collect())
}

fn field<'a>(doc: &'a Value, name: &str) -> Result<&'a Value, CliError> {
    doc.get(name).ok_or_else(|| schema(format!("missing field {name:?}")))
}

fn usize_field(doc: &Value, name: &str) -> Result<usize, CliError> {
    field(doc, name)?
        .as_u64()
        .map(|v| v as usize)
        .ok_or_else(|| schema(format!("field {name:?} must be a non-negative integer")))
}

/// A vertex configuration as read from JSON, before choosing the scalar type.
#[derive(Clone, Debug, PartialEq)]
pub struct RawConfig {
    pub mode: Mode,
    pub z: Vec<RawComplex>,
    pub zbar: Option<Vec<RawComplex>>,
    pub encoding: Encoding,
}

pub fn parse_config(doc: &Value) -> Result<RawConfig, CliError> {
    let n = usize_field(doc, "n")?;
    let mode = match field(doc, "mode")?.as_str() {
        Some("real") => Mode::Real,
        Some("complexified") => Mode::Complexified,
        _ => return Err(schema("mode must be \"real\" or \"complexified\"")),
    };
    let vertices = field(doc, "vertices")?.as_array().ok_or_else(|| schema("vertices must be an array"))?;
    if vertices.len() != n {
        return Err(schema(format!("n = {n} but {} vertices given", vertices.len())));
    }
    let mut z = Vec::with_capacity(n);
    let mut zbar = Vec::with_capacity(n);
    for (j, v) in vertices.iter().enumerate() {
        z.push(parse_complex(field(v, "z")?)?);
        match (mode, v.get("zbar")) {
            (Mode::Real, Some(_)) => return Err(schema(format!("vertex {j}: zbar is not allowed in real mode"))),
            (Mode::Complexified, None) => return Err(schema(format!("vertex {j}: zbar is required in complexified mode"))),
            (Mode::Complexified, Some(w)) => zbar.push(parse_complex(w)?),
            (Mode::Real, None) => {}
        }
    }
    let all: Vec<&RawComplex> = z.iter().chain(&zbar).collect();
    let encoding = encoding_of(&all)?;
    let zbar = (mode == Mode::Complexified).then_some(zbar);
    Ok(RawConfig { mode, z, zbar, encoding })
}

impl RawConfig {
    pub fn build<T: FromRaw>(&self) -> Result<VertexConfig<T>, CliError> {
        let z = self.z.iter().map(T::from_raw).collect::<Result<Vec<T>, _>>()?;
        let built = match &self.zbar {
            None => VertexConfig::real(z),
            Some(w) => VertexConfig::complexified(z, w.iter().map(T::from_raw).collect::<Result<Vec<T>, _>>()?),
        };
        built.map_err(CliError::from)
    }
}

pub fn config_json<T: Encode + Scalar>(config: &VertexConfig<T>) -> Value {
    let vertices: Vec<Value> = (0..config.n())
        .map(|j| match config.mode() {
            Mode::Real => json!({ "z": config.z()[j].encode() }),
            Mode::Complexified => json!({ "z": config.z()[j].encode(), "zbar": config.zbar()[j].encode() }),
        })
        .collect();
    let mode = match config.mode() {
        Mode::Real => "real",
        Mode::Complexified => "complexified",
    };
    json!({ "n": config.n(), "mode": mode, "vertices": vertices })
}

/// A moment table `{"n", "kmax", "nu": [...], "nubar"?: [...]}` with `ν_2` first.
#[derive(Clone, Debug, PartialEq)]
pub struct RawTable {
    pub n: usize,
    pub kmax: usize,
    pub nu: Vec<RawComplex>,
    pub encoding: Encoding,
}

pub fn parse_table(doc: &Value) -> Result<RawTable, CliError> {
    let n = usize_field(doc, "n")?;
    let kmax = usize_field(doc, "kmax")?;
    if kmax < 2 {
        return Err(schema("kmax must be at least 2"));
    }
    let nu = field(doc, "nu")?
        .as_array()
        .ok_or_else(|| schema("nu must be an array"))?
        .iter()
        .map(parse_complex)
        .collect::<Result<Vec<_>, _>>()?;
    if nu.len() != kmax - 1 {
        return Err(schema(format!("kmax = {kmax} needs {} nu values, found {}", kmax - 1, nu.len())));
    }
    let encoding = encoding_of(&nu.iter().collect::<Vec<_>>())?;
    Ok(RawTable { n, kmax, nu, encoding })
}

impl RawTable {
    pub fn values<T: FromRaw>(&self) -> Result<Vec<T>, CliError> {
        self.nu.iter().map(T::from_raw).collect()
    }
}
