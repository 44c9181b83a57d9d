//! Library side of the `polymoment` command: JSON plumbing, commands and
//! verification suites.

pub mod io;
pub mod svg;
pub mod verify;

use std::fmt;

use polymoment::inverse::reconstruct_real;
use polymoment::moments::{adjoint_numerator, moment_table, q_coefficients, MomentTable, QSignVariant};
use polymoment::{ApproxComplex, Error, ExactComplex, Scalar, VertexConfig};
use serde_json::{json, Value};

use io::{encode_all, Encode, Encoding, FromRaw, RawConfig, RawTable};

/// Exit status and machine-readable error.
#[derive(Clone, Debug, PartialEq)]
pub struct CliError {
    pub exit: u8,
    pub kind: String,
    pub message: String,
    /// Extra report written to the normal output before exiting.
    pub report: Option<Value>,
}

pub const EXIT_FAILED: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_NUMERIC: u8 = 3;

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        Self { exit: EXIT_INPUT, kind: "InputError".into(), message: message.into(), report: None }
    }

    pub fn to_json(&self) -> Value {
        json!({ "error": self.exit, "kind": self.kind, "message": self.message })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let exit = match e {
            Error::NoMatchingOrder { .. } | Error::RecurrenceViolation { .. } | Error::RootMismatch { .. } => EXIT_FAILED,
            Error::InvalidConfig(_)
            | Error::NotConjugate(_)
            | Error::InvalidCycle(_)
            | Error::InvalidTriangulation(_)
            | Error::DimensionMismatch(_)
            | Error::InsufficientMoments { .. }
            | Error::ModeError
            | Error::DegenerateTriangle => EXIT_INPUT,
            _ => EXIT_NUMERIC,
        };
        let kind = format!("{e:?}").split(['(', ' ', '{']).next().unwrap_or("Error").to_string();
        Self { exit, kind, message: e.to_string(), report: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NumberMode {
    Exact,
    Float,
}

fn check_encoding(mode: NumberMode, enc: Encoding) -> Result<(), CliError> {
    if mode == NumberMode::Exact && enc == Encoding::Float {
        return Err(CliError::input("exact mode needs \"p/q\" string inputs"));
    }
    Ok(())
}

fn compute_typed<T: FromRaw + Encode>(raw: &RawConfig, kmax: usize) -> Result<Value, CliError> {
    let config: VertexConfig<T> = raw.build()?;
    let table = moment_table(&config, kmax)?;
    let adjoint = adjoint_numerator(&config)?;
    let q = q_coefficients(&config)?;
    let variant = match q.variant {
        QSignVariant::Plain => "plain",
        QSignVariant::Alternating => "alternating",
    };
    let mut adj = adjoint.poly.coeffs().to_vec();
    adj.resize(config.n() - 2, T::zero());
    Ok(json!({
        "n": config.n(),
        "kmax": kmax,
        "nu": encode_all(table.nu_values()),
        "nubar": encode_all(table.nubar_values()),
        "adjoint": encode_all(&adj),
        "q": encode_all(&q.q),
        "q_variant": variant,
    }))
}

/// Moment table, adjoint numerator coefficients and `Q_m` for one configuration.
pub fn compute(doc: &Value, n: Option<usize>, kmax: Option<usize>, mode: NumberMode) -> Result<Value, CliError> {
    let raw = io::parse_config(doc)?;
    check_encoding(mode, raw.encoding)?;
    if let Some(n) = n.filter(|&n| n != raw.z.len()) {
        return Err(CliError::input(format!("--n {n} does not match the {} input vertices", raw.z.len())));
    }
    let kmax = kmax.unwrap_or(2 * raw.z.len() - 1);
    if kmax < 2 {
        return Err(CliError::input("kmax must be at least 2"));
    }
    match mode {
        NumberMode::Exact => compute_typed::<ExactComplex>(&raw, kmax),
        NumberMode::Float => compute_typed::<ApproxComplex>(&raw, kmax),
    }
}

/// A reconstructed polygon with its relative moment residual, plus its vertices for plotting.
pub struct Reconstructed {
    pub json: Value,
    pub points: Vec<(f64, f64)>,
}

fn reconstruct_typed<T: FromRaw>(raw: &RawTable, n: usize, tol: f64) -> Result<Reconstructed, CliError> {
    let table = MomentTable::harmonic_only(raw.kmax, raw.values::<T>()?)?;
    match reconstruct_real(&table, n, tol) {
        Ok(rec) => {
            let points: Vec<(f64, f64)> = rec.config.z().iter().map(|v| (v.re, v.im)).collect();
            let vertices: Vec<Value> = rec.config.z().iter().map(|v| json!({ "z": v.encode() })).collect();
            Ok(Reconstructed {
                json: json!({ "n": n, "mode": "real", "vertices": vertices, "residual": rec.mismatch }),
                points,
            })
        }
        Err(Error::NoMatchingOrder { best }) => {
            let mut err = CliError::from(Error::NoMatchingOrder { best });
            err.report = Some(json!({ "n": n, "realizable": false, "residual": best, "tol": tol }));
            Err(err)
        }
        Err(e) => Err(e.into()),
    }
}

/// Real polygon from `ν_2..ν_{2n-1}`; exit 1 if no ordering matches, 3 if the Toeplitz matrix is singular.
pub fn reconstruct(doc: &Value, n: Option<usize>, mode: NumberMode, tol: f64) -> Result<Reconstructed, CliError> {
    let raw = io::parse_table(doc)?;
    check_encoding(mode, raw.encoding)?;
    let n = n.unwrap_or(raw.n);
    if n != raw.n {
        return Err(CliError::input(format!("--n {n} does not match the table's n = {}", raw.n)));
    }
    if n < 3 || raw.kmax < 2 * n - 1 {
        return Err(CliError::input(format!("reconstruction of {n} vertices needs kmax >= {}", 2 * n.max(3) - 1)));
    }
    match mode {
        NumberMode::Exact => reconstruct_typed::<ExactComplex>(&raw, n, tol),
        NumberMode::Float => reconstruct_typed::<ApproxComplex>(&raw, n, tol),
    }
}

/// Plot data for a configuration (real parts of `z`).
pub fn config_points<T: Scalar>(config: &VertexConfig<T>) -> Vec<(f64, f64)> {
    config.z().iter().map(|v| {
        let a = v.to_approx();
        (a.re, a.im)
    }).collect()
}
