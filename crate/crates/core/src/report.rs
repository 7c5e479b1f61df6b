//! CSV and JSON output for experiment results.
//!
//! Trial CSV columns, in order:
//! `trial_index,n,s,c,model,rainbow_connected,union_connected,union_diameter,max_layer_degree,witness_u,witness_v,elapsed_ms`.
//! An infinite union diameter is written as `-1`; absent witnesses and the
//! uniform model's layer degree are empty cells. Reals use the shortest
//! decimal form that parses back to the same `f64`.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Model;
use crate::harness::{ThresholdEstimate, TrialRecord};

pub const TRIAL_COLUMNS: [&str; 12] = [
    "trial_index",
    "n",
    "s",
    "c",
    "model",
    "rainbow_connected",
    "union_connected",
    "union_diameter",
    "max_layer_degree",
    "witness_u",
    "witness_v",
    "elapsed_ms",
];

pub const CURVE_COLUMNS: [&str; 10] = [
    "n",
    "model",
    "density",
    "s",
    "trials",
    "successes",
    "fraction",
    "wilson_low",
    "wilson_high",
    "s_star",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::Domain(format!("unknown format {other:?}"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

/// What to write.
#[derive(Clone, Copy, Debug)]
pub enum Results<'a> {
    Records(&'a [TrialRecord]),
    Estimates(&'a [ThresholdEstimate]),
}

/// Writes results to `path` in the requested format.
pub fn emit_results(results: Results<'_>, path: impl AsRef<Path>, format: Format) -> Result<()> {
    let path = path.as_ref();
    let bytes = render_results(results, format)?;
    std::fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

/// The bytes [`emit_results`] would write.
pub fn render_results(results: Results<'_>, format: Format) -> Result<Vec<u8>> {
    match (results, format) {
        (Results::Records(r), Format::Csv) => records_csv(r),
        (Results::Estimates(e), Format::Csv) => curves_csv(e),
        (Results::Records(r), Format::Json) => to_json(r),
        (Results::Estimates(e), Format::Json) => to_json(e),
    }
}

fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<Vec<u8>> {
    let mut out = serde_json::to_vec_pretty(value).map_err(|e| Error::Serialization {
        path: "<json>".into(),
        message: e.to_string(),
    })?;
    out.push(b'\n');
    Ok(out)
}

fn csv_error(e: csv::Error) -> Error {
    Error::Serialization {
        path: "<csv>".into(),
        message: e.to_string(),
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn records_csv(records: &[TrialRecord]) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(TRIAL_COLUMNS).map_err(csv_error)?;
    for r in records {
        w.write_record([
            r.trial_index.to_string(),
            r.n.to_string(),
            r.s.to_string(),
            r.c.to_string(),
            r.model.to_string(),
            r.rainbow_connected.to_string(),
            r.union_connected.to_string(),
            r.union_diameter
                .map_or_else(|| "-1".to_string(), |d| d.to_string()),
            opt(r.max_layer_degree),
            opt(r.witness_pair.map(|w| w.0)),
            opt(r.witness_pair.map(|w| w.1)),
            r.elapsed_ms.to_string(),
        ])
        .map_err(csv_error)?;
    }
    w.into_inner().map_err(|e| csv_error(e.into_error().into()))
}

fn curves_csv(estimates: &[ThresholdEstimate]) -> Result<Vec<u8>> {
    use crate::harness::Density;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CURVE_COLUMNS).map_err(csv_error)?;
    for e in estimates {
        let density = match e.density {
            Density::Constant(c) => format!("c={c}"),
            Density::Probability(p) => format!("p={p}"),
        };
        for pt in &e.curve {
            w.write_record([
                e.n.to_string(),
                e.model.to_string(),
                density.clone(),
                pt.s.to_string(),
                pt.estimate.trials.to_string(),
                pt.estimate.successes.to_string(),
                pt.estimate.fraction.to_string(),
                pt.estimate.wilson_95.0.to_string(),
                pt.estimate.wilson_95.1.to_string(),
                opt(e.s_star),
            ])
            .map_err(csv_error)?;
        }
    }
    w.into_inner().map_err(|e| csv_error(e.into_error().into()))
}

/// Reads a trial CSV written by [`emit_results`].
pub fn read_records_csv(path: impl AsRef<Path>) -> Result<Vec<TrialRecord>> {
    let path = path.as_ref();
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    parse_records_csv(&bytes).map_err(|message| Error::Serialization {
        path: path.into(),
        message,
    })
}

fn parse_records_csv(bytes: &[u8]) -> std::result::Result<Vec<TrialRecord>, String> {
    let mut rdr = csv::Reader::from_reader(bytes);
    let headers = rdr.headers().map_err(|e| e.to_string())?.clone();
    if headers.iter().ne(TRIAL_COLUMNS) {
        return Err(format!("unexpected header {headers:?}"));
    }
    let mut out = Vec::new();
    for row in rdr.records() {
        let row = row.map_err(|e| e.to_string())?;
        let field = |i: usize| row.get(i).unwrap_or("");
        fn num<T: FromStr>(s: &str, name: &str) -> std::result::Result<T, String> {
            s.parse().map_err(|_| format!("bad {name}: {s:?}"))
        }
        fn opt_num<T: FromStr>(s: &str, name: &str) -> std::result::Result<Option<T>, String> {
            if s.is_empty() {
                Ok(None)
            } else {
                num(s, name).map(Some)
            }
        }
        let diameter: i64 = num(field(7), "union_diameter")?;
        let wu: Option<usize> = opt_num(field(9), "witness_u")?;
        let wv: Option<usize> = opt_num(field(10), "witness_v")?;
        out.push(TrialRecord {
            trial_index: num(field(0), "trial_index")?,
            n: num(field(1), "n")?,
            s: num(field(2), "s")?,
            c: num(field(3), "c")?,
            model: field(4).parse::<Model>().map_err(|e| e.to_string())?,
            rainbow_connected: num(field(5), "rainbow_connected")?,
            union_connected: num(field(6), "union_connected")?,
            union_diameter: usize::try_from(diameter).ok(),
            max_layer_degree: opt_num(field(8), "max_layer_degree")?,
            witness_pair: wu.zip(wv),
            elapsed_ms: num(field(11), "elapsed_ms")?,
        });
    }
    Ok(out)
}

/// Reads any JSON document written by [`emit_results`].
pub fn read_json<T: DeserializeOwned>(path: impl AsRef<Path>) -> Result<T> {
    let path = path.as_ref();
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_slice(&bytes).map_err(|e| Error::Serialization {
        path: path.into(),
        message: e.to_string(),
    })
}
