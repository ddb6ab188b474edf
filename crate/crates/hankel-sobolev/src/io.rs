//! JSON file formats and report serialization.
//!
//! Exact-path files carry rationals as integers or `"p/q"` strings, never
//! floats; floating-point files are tagged `{"float": true}` so the two can
//! never be confused. Matrix files come in three forms:
//!
//! ```text
//! {"n": 2, "window": 2, "entries": [[1, "1/2"], ["1/2", "1/3"]]}
//! {"hankel": [1, "1/2", "1/3"]}                  // (i,j) entry r_{i+j}
//! {"hessenberg": [[0, 1], [0, 0, 1], [0, 0, 0]]} // lower band rows only
//! ```
//!
//! Layer files are `{"index": d, "layers": [{"hankel": [...]}, ...]}` and
//! measure files are `{"levels": [...]}` with levels `{"discrete": {...}}`,
//! `{"uniform": {...}}`, `{"moments": [...]}`, or `"zero"`.

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::decomposition::{Detected, FloatLayers, HankelLayers, IndexReport};
use crate::error::{Error, Result};
use crate::favard::{FavardCase, FavardVerdict};
use crate::hessenberg::PolySequence;
use crate::matrix::{HankelSeq, HessenbergTrunc, TruncatedMatrix};
use crate::measures::{HankelClass, MeasureSpec, MeasureVector, RecoveredDiscreteMeasure};
use crate::scalar::ExactScalar;

/// A parsed matrix file: exact-rational or tagged floating-point.
#[derive(Clone, Debug)]
pub enum MatrixInput {
    Exact(TruncatedMatrix<ExactScalar>),
    Float(TruncatedMatrix<f64>),
}

impl MatrixInput {
    pub fn is_float(&self) -> bool {
        matches!(self, MatrixInput::Float(_))
    }

    pub fn window(&self) -> usize {
        match self {
            MatrixInput::Exact(m) => m.window(),
            MatrixInput::Float(m) => m.window(),
        }
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

fn parse_root(text: &str) -> Result<Map<String, Value>> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| bad(format!("malformed JSON: {e}")))?;
    match value {
        Value::Object(map) => Ok(map),
        _ => Err(bad("expected a JSON object at the top level")),
    }
}

fn is_float_file(map: &Map<String, Value>) -> Result<bool> {
    match map.get("float") {
        None => Ok(false),
        Some(Value::Bool(b)) => Ok(*b),
        Some(_) => Err(bad("\"float\" must be a boolean")),
    }
}

fn exact_scalar(value: &Value) -> Result<ExactScalar> {
    match value {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(ExactScalar::from_int(i))
            } else if let Some(u) = n.as_u64() {
                ExactScalar::from_big(u.into(), 1.into())
            } else {
                Err(bad(format!(
                    "decimal {n} is not exact; write it as a \"p/q\" string"
                )))
            }
        }
        Value::String(s) => s.parse(),
        other => Err(bad(format!("expected a rational, found {other}"))),
    }
}

fn float_scalar(value: &Value) -> Result<f64> {
    match value {
        Value::Number(n) => n
            .as_f64()
            .ok_or_else(|| bad(format!("{n} is not representable as f64"))),
        Value::String(s) => Ok(s.parse::<ExactScalar>()?.to_f64()),
        other => Err(bad(format!("expected a number, found {other}"))),
    }
}

fn scalar_value(x: &ExactScalar) -> Value {
    if x.is_integer() {
        if let Ok(i) = i64::try_from(x.numer().clone()) {
            return json!(i);
        }
    }
    Value::String(x.to_string())
}

fn array<'v>(value: &'v Value, what: &str) -> Result<&'v Vec<Value>> {
    value
        .as_array()
        .ok_or_else(|| bad(format!("{what} must be an array")))
}

fn window_override(map: &Map<String, Value>, n: usize) -> Result<usize> {
    match map.get("window") {
        None => Ok(n),
        Some(v) => {
            let w = v
                .as_u64()
                .ok_or_else(|| bad("\"window\" must be a positive integer"))?
                as usize;
            if w < 1 || w > n {
                return Err(bad(format!("window {w} outside 1..={n}")));
            }
            Ok(w)
        }
    }
}

fn parse_scalar_grid<S>(
    rows: &[Value],
    parse: impl Fn(&Value) -> Result<S>,
) -> Result<Vec<Vec<S>>> {
    rows.iter()
        .map(|row| array(row, "matrix row")?.iter().map(&parse).collect())
        .collect()
}

fn matrix_from_map<S: crate::matrix::Coeff>(
    map: &Map<String, Value>,
    parse: &impl Fn(&Value) -> Result<S>,
) -> Result<TruncatedMatrix<S>> {
    if let Some(entries) = map.get("entries") {
        let rows = parse_scalar_grid(array(entries, "\"entries\"")?, parse)?;
        let n = rows.len();
        if let Some(stated) = map.get("n").and_then(Value::as_u64) {
            if stated as usize != n {
                return Err(bad(format!("\"n\" is {stated} but there are {n} rows")));
            }
        }
        let m = TruncatedMatrix::from_rows(rows)?;
        let w = window_override(map, n)?;
        m.with_window(w)
    } else if let Some(hankel) = map.get("hankel") {
        let moments: Vec<S> = array(hankel, "\"hankel\"")?.iter().map(parse).collect::<Result<_>>()?;
        if moments.is_empty() {
            return Err(bad("\"hankel\" needs at least one moment"));
        }
        let n = moments.len().div_ceil(2);
        let m = TruncatedMatrix::from_fn(n, |i, j| moments[i + j].clone());
        let w = window_override(map, n)?;
        m.with_window(w)
    } else if let Some(band) = map.get("hessenberg") {
        let rows = parse_scalar_grid(array(band, "\"hessenberg\"")?, parse)?;
        let n = rows.len();
        if n == 0 {
            return Err(bad("\"hessenberg\" needs at least one row"));
        }
        let mut m = TruncatedMatrix::zeros(n);
        for (i, row) in rows.into_iter().enumerate() {
            let expected = (i + 2).min(n);
            if row.len() != expected {
                return Err(bad(format!(
                    "hessenberg band row {i} must have {expected} entries, found {}",
                    row.len()
                )));
            }
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        let w = window_override(map, n)?;
        m.with_window(w)
    } else {
        Err(bad(
            "matrix file needs \"entries\", \"hankel\", or \"hessenberg\"",
        ))
    }
}

/// Parses a matrix file in any of its three forms, exact or float-tagged.
pub fn parse_matrix(text: &str) -> Result<MatrixInput> {
    let map = parse_root(text)?;
    if is_float_file(&map)? {
        Ok(MatrixInput::Float(matrix_from_map(&map, &float_scalar)?))
    } else {
        Ok(MatrixInput::Exact(matrix_from_map(&map, &exact_scalar)?))
    }
}

/// Parses a Hankel moment file `{"hankel": [...]}` (exact path).
pub fn parse_hankel(text: &str) -> Result<HankelSeq> {
    let map = parse_root(text)?;
    if is_float_file(&map)? {
        return Err(bad(
            "this operation runs in exact arithmetic; float input is not accepted",
        ));
    }
    let hankel = map
        .get("hankel")
        .ok_or_else(|| bad("expected a {\"hankel\": [...]} file"))?;
    let moments: Vec<ExactScalar> = array(hankel, "\"hankel\"")?
        .iter()
        .map(exact_scalar)
        .collect::<Result<_>>()?;
    Ok(HankelSeq::new(moments))
}

/// Parses a float-tagged Hankel moment file into raw moments.
pub fn parse_hankel_f64(text: &str) -> Result<Vec<f64>> {
    let map = parse_root(text)?;
    let hankel = map
        .get("hankel")
        .ok_or_else(|| bad("expected a {\"hankel\": [...]} file"))?;
    array(hankel, "\"hankel\"")?.iter().map(float_scalar).collect()
}

/// Is this file float-tagged? (Cheap peek used for dispatch.)
pub fn peek_float(text: &str) -> Result<bool> {
    is_float_file(&parse_root(text)?)
}

/// Parses a layer file `{"index": d, "layers": [{"hankel": [...]}, ...]}`.
pub fn parse_layers(text: &str) -> Result<HankelLayers> {
    let map = parse_root(text)?;
    if is_float_file(&map)? {
        return Err(bad(
            "layer composition runs in exact arithmetic; float input is not accepted",
        ));
    }
    let layers_value = map
        .get("layers")
        .ok_or_else(|| bad("layer file needs \"layers\""))?;
    let mut layers = Vec::new();
    for (k, layer) in array(layers_value, "\"layers\"")?.iter().enumerate() {
        let obj = layer
            .as_object()
            .and_then(|o| o.get("hankel"))
            .ok_or_else(|| bad(format!("layer {k} must be {{\"hankel\": [...]}}")))?;
        let moments: Vec<ExactScalar> = array(obj, "\"hankel\"")?
            .iter()
            .map(exact_scalar)
            .collect::<Result<_>>()?;
        layers.push(HankelSeq::new(moments));
    }
    let stack = HankelLayers::new(layers)?;
    if let Some(stated) = map.get("index").and_then(Value::as_u64) {
        if stated as usize != stack.index() {
            return Err(bad(format!(
                "\"index\" is {stated} but {} layers imply index {}",
                stack.index() + 1,
                stack.index()
            )));
        }
    }
    Ok(stack)
}

/// Parses a measure-vector file `{"levels": [...]}`.
pub fn parse_measures(text: &str) -> Result<MeasureVector> {
    let map = parse_root(text)?;
    let levels_value = map
        .get("levels")
        .ok_or_else(|| bad("measure file needs \"levels\""))?;
    let mut levels = Vec::new();
    for (k, level) in array(levels_value, "\"levels\"")?.iter().enumerate() {
        levels.push(parse_measure_level(level).map_err(|e| match e {
            Error::InvalidInput(msg) => bad(format!("level {k}: {msg}")),
            other => other,
        })?);
    }
    MeasureVector::new(levels)
}

fn parse_measure_level(level: &Value) -> Result<MeasureSpec> {
    if let Value::String(s) = level {
        if s == "zero" {
            return Ok(MeasureSpec::zero());
        }
        return Err(bad(format!("unknown measure keyword {s:?}")));
    }
    let obj = level
        .as_object()
        .ok_or_else(|| bad("each level must be an object or \"zero\""))?;
    if let Some(d) = obj.get("discrete") {
        let d = d
            .as_object()
            .ok_or_else(|| bad("\"discrete\" must be an object"))?;
        let points: Vec<ExactScalar> = array(
            d.get("points").ok_or_else(|| bad("discrete needs \"points\""))?,
            "\"points\"",
        )?
        .iter()
        .map(exact_scalar)
        .collect::<Result<_>>()?;
        let weights: Vec<ExactScalar> = array(
            d.get("weights").ok_or_else(|| bad("discrete needs \"weights\""))?,
            "\"weights\"",
        )?
        .iter()
        .map(exact_scalar)
        .collect::<Result<_>>()?;
        MeasureSpec::discrete(points, weights)
    } else if let Some(u) = obj.get("uniform") {
        let u = u
            .as_object()
            .ok_or_else(|| bad("\"uniform\" must be an object"))?;
        let field = |name: &str| -> Result<ExactScalar> {
            exact_scalar(u.get(name).ok_or_else(|| bad(format!("uniform needs \"{name}\"")))?)
        };
        MeasureSpec::uniform(field("a")?, field("b")?, field("mass")?)
    } else if let Some(m) = obj.get("moments") {
        let moments: Vec<ExactScalar> = array(m, "\"moments\"")?
            .iter()
            .map(exact_scalar)
            .collect::<Result<_>>()?;
        Ok(MeasureSpec::moment_seq(moments))
    } else {
        Err(bad(
            "level must be {\"discrete\"}, {\"uniform\"}, {\"moments\"}, or \"zero\"",
        ))
    }
}

fn to_pretty(value: &impl Serialize) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report serialization is infallible");
    text.push('\n');
    text
}

#[derive(Serialize)]
struct MatrixFile {
    n: usize,
    window: usize,
    entries: Vec<Vec<Value>>,
}

#[derive(Serialize)]
struct FloatMatrixFile {
    float: bool,
    n: usize,
    window: usize,
    entries: Vec<Vec<f64>>,
}

/// Full-form matrix JSON, exact rationals.
pub fn matrix_json(m: &TruncatedMatrix<ExactScalar>) -> String {
    let n = m.window();
    to_pretty(&MatrixFile {
        n,
        window: n,
        entries: (0..n)
            .map(|i| (0..n).map(|j| scalar_value(m.at(i, j))).collect())
            .collect(),
    })
}

/// Full-form matrix JSON, float-tagged.
pub fn matrix_json_f64(m: &TruncatedMatrix<f64>) -> String {
    let n = m.window();
    to_pretty(&FloatMatrixFile {
        float: true,
        n,
        window: n,
        entries: (0..n).map(|i| (0..n).map(|j| *m.at(i, j)).collect()).collect(),
    })
}

/// Hankel shorthand JSON.
pub fn hankel_json(h: &HankelSeq) -> String {
    to_pretty(&json!({ "hankel": h.moments().iter().map(scalar_value).collect::<Vec<_>>() }))
}

/// Lower-band shorthand JSON for a Hessenberg truncation.
pub fn hessenberg_band_json(g: &HessenbergTrunc<ExactScalar>) -> String {
    let n = g.window();
    let rows: Vec<Vec<Value>> = (0..n)
        .map(|i| (0..(i + 2).min(n)).map(|j| scalar_value(g.at(i, j))).collect())
        .collect();
    to_pretty(&json!({ "hessenberg": rows }))
}

#[derive(Serialize)]
struct LayersFile {
    index: usize,
    layers: Vec<Value>,
}

/// Layer-stack JSON, exact rationals.
pub fn layers_json(layers: &HankelLayers) -> String {
    to_pretty(&LayersFile {
        index: layers.index(),
        layers: layers
            .layers()
            .iter()
            .map(|l| json!({ "hankel": l.moments().iter().map(scalar_value).collect::<Vec<_>>() }))
            .collect(),
    })
}

#[derive(Serialize)]
struct FloatLayersFile {
    float: bool,
    index: usize,
    surviving_window: usize,
    layers: Vec<Value>,
}

/// Layer-stack JSON from the floating-point path.
pub fn layers_json_f64(layers: &FloatLayers) -> String {
    to_pretty(&FloatLayersFile {
        float: true,
        index: layers.layers.len() - 1,
        surviving_window: layers.surviving_window,
        layers: layers
            .layers
            .iter()
            .map(|l| json!({ "hankel": l }))
            .collect(),
    })
}

/// Measure-vector JSON.
pub fn measures_json(mus: &MeasureVector) -> String {
    let levels: Vec<Value> = mus
        .levels()
        .iter()
        .map(|mu| match mu {
            MeasureSpec::Discrete { points, weights } => json!({
                "discrete": {
                    "points": points.iter().map(scalar_value).collect::<Vec<_>>(),
                    "weights": weights.iter().map(scalar_value).collect::<Vec<_>>(),
                }
            }),
            MeasureSpec::UniformInterval { a, b, mass } => json!({
                "uniform": {
                    "a": scalar_value(a),
                    "b": scalar_value(b),
                    "mass": scalar_value(mass),
                }
            }),
            MeasureSpec::MomentSeq(ms) if mu.is_zero() && ms.is_empty() => json!("zero"),
            MeasureSpec::MomentSeq(ms) => json!({
                "moments": ms.iter().map(scalar_value).collect::<Vec<_>>()
            }),
        })
        .collect();
    to_pretty(&json!({ "levels": levels }))
}

#[derive(Serialize)]
struct PolysFile {
    t00: Value,
    rows: Vec<Vec<Value>>,
}

/// Coefficient rows of a generated polynomial sequence, exact rationals.
pub fn polys_json(seq: &PolySequence<ExactScalar>) -> String {
    to_pretty(&PolysFile {
        t00: scalar_value(seq.t00()),
        rows: (0..seq.len())
            .map(|n| seq.coefficients(n).iter().map(scalar_value).collect())
            .collect(),
    })
}

#[derive(Serialize)]
struct FloatPolysFile {
    float: bool,
    t00: f64,
    rows: Vec<Vec<f64>>,
}

/// Coefficient rows from the floating-point path.
pub fn polys_json_f64(seq: &PolySequence<f64>) -> String {
    to_pretty(&FloatPolysFile {
        float: true,
        t00: *seq.t00(),
        rows: (0..seq.len()).map(|n| seq.coefficients(n)).collect(),
    })
}

#[derive(Serialize)]
struct IndexReportFile {
    detected: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    d: Option<usize>,
    window_used: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<(usize, usize)>,
}

/// Detection report JSON.
pub fn index_report_json(report: &IndexReport) -> String {
    to_pretty(&index_report_file(report))
}

fn index_report_file(report: &IndexReport) -> IndexReportFile {
    IndexReportFile {
        detected: match report.detected {
            Detected::Index(_) => "index",
            Detected::InfiniteWithinWindow => "infinite_within_window",
        },
        d: report.index(),
        window_used: report.window_used,
        witness: report.witness,
    }
}

#[derive(Serialize)]
struct ClassReportFile {
    verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    upto: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    first_violation: Option<usize>,
}

fn class_report_file(class: &HankelClass) -> ClassReportFile {
    let (verdict, upto, order, first_violation) = match class {
        HankelClass::PositiveDefiniteUpTo(n) => ("PositiveDefiniteUpTo", Some(*n), None, None),
        HankelClass::FiniteOrder(k) => ("FiniteOrder", None, Some(*k), None),
        HankelClass::Zero => ("Zero", None, None, None),
        HankelClass::NotMomentMatrix { first_violation } => {
            ("NotMomentMatrix", None, None, Some(*first_violation))
        }
    };
    ClassReportFile {
        verdict,
        upto,
        order,
        first_violation,
    }
}

/// Classification report JSON.
pub fn classify_json(class: &HankelClass, examined: usize) -> String {
    #[derive(Serialize)]
    struct Out {
        examined: usize,
        verdict: &'static str,
        #[serde(skip_serializing_if = "Option::is_none")]
        upto: Option<usize>,
        #[serde(skip_serializing_if = "Option::is_none")]
        order: Option<usize>,
        #[serde(skip_serializing_if = "Option::is_none")]
        first_violation: Option<usize>,
    }
    let c = class_report_file(class);
    to_pretty(&Out {
        examined,
        verdict: c.verdict,
        upto: c.upto,
        order: c.order,
        first_violation: c.first_violation,
    })
}

#[derive(Serialize)]
struct RecoverFile {
    float: bool,
    discrete: Value,
}

/// Recovered-measure report JSON (floating-point path).
pub fn recovered_json(rec: &RecoveredDiscreteMeasure) -> String {
    to_pretty(&RecoverFile {
        float: true,
        discrete: json!({ "points": rec.atoms, "weights": rec.weights }),
    })
}

#[derive(Serialize)]
struct FavardFile {
    case: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    index: Option<usize>,
    window: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    theorem: Option<&'static str>,
    levels: Vec<Value>,
    detection: IndexReportFile,
}

/// Favard verdict report JSON.
pub fn favard_json(v: &FavardVerdict) -> String {
    let case = match v.case {
        FavardCase::Classical => "Classical",
        FavardCase::Continuous => "Continuous",
        FavardCase::Discrete => "Discrete",
        FavardCase::DiscreteContinuous => "DiscreteContinuous",
        FavardCase::MixedOther => "MixedOther",
        FavardCase::NoRepresentationWithinWindow => "NoRepresentationWithinWindow",
    };
    to_pretty(&FavardFile {
        case,
        index: v.index.index(),
        window: v.window,
        theorem: v.case.theorem(),
        levels: v
            .level_classes
            .iter()
            .enumerate()
            .map(|(level, class)| {
                let mut obj = serde_json::to_value(class_report_file(class))
                    .expect("serializable")
                    .as_object()
                    .cloned()
                    .expect("object");
                obj.insert("level".into(), json!(level));
                Value::Object(obj)
            })
            .collect(),
        detection: index_report_file(&v.index),
    })
}

#[derive(Serialize)]
struct ErrorFile<'a> {
    error: ErrorBody<'a>,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    code: &'static str,
    message: &'a str,
}

/// Structured error object for CLI reports.
pub fn error_json(err: &Error) -> String {
    let message = err.to_string();
    to_pretty(&ErrorFile {
        error: ErrorBody {
            code: err.code(),
            message: &message,
        },
    })
}
