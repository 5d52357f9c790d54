use std::io::Write;
use std::path::Path;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Map, Value};

use hultman::{HultmanTable, IntPolynomial, PgPolynomial, PnFamily};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }

    pub fn from_passed(passed: bool) -> Self {
        if passed {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// Rows for CSV output: a header plus string records.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CsvTable {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new(header: Vec<&'static str>) -> Self {
        CsvTable {
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

/// What every subcommand produces.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub command: String,
    pub params: Map<String, Value>,
    pub status: Status,
    pub payload: Value,
    pub csv: CsvTable,
    pub elapsed_ms: u128,
}

impl RunReport {
    pub fn to_json(&self) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "params": self.params,
            "status": self.status,
            "payload": self.payload,
            "elapsed_ms": self.elapsed_ms as u64,
        })
    }

    pub fn render(&self, format: Format) -> Result<String, csv::Error> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(&self.to_json())
                .expect("reports are plain JSON values")
                + "\n"),
            Format::Csv => {
                let mut w = csv::WriterBuilder::new()
                    .terminator(csv::Terminator::Any(b'\n'))
                    .from_writer(Vec::new());
                w.write_record(&self.csv.header)?;
                for row in &self.csv.rows {
                    w.write_record(row)?;
                }
                let bytes = w.into_inner().map_err(|e| e.into_error())?;
                Ok(String::from_utf8(bytes).expect("records are UTF-8"))
            }
        }
    }

    pub fn emit(&self, format: Format, out: Option<&Path>) -> std::io::Result<()> {
        let text = self.render(format).map_err(std::io::Error::other)?;
        match out {
            Some(path) => std::fs::write(path, text),
            None => std::io::stdout().write_all(text.as_bytes()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

pub fn big(v: &BigInt) -> Value {
    Value::String(v.to_string())
}

/// Dense ascending coefficients as decimal strings.
pub fn coeffs(p: &IntPolynomial) -> Value {
    Value::Array(p.coeffs().iter().map(big).collect())
}

pub fn table_payload(t: &HultmanTable) -> Value {
    let rows: Vec<Value> = (0..=t.n_max())
        .map(|n| json!({ "n": n, "H": t.dense_row(n).iter().map(big).collect::<Vec<_>>() }))
        .collect();
    json!({ "source": t.source(), "n_max": t.n_max(), "rows": rows })
}

pub fn table_csv(t: &HultmanTable) -> CsvTable {
    let mut csv = CsvTable::new(vec!["n", "k", "H"]);
    for n in 0..=t.n_max() {
        for (i, h) in t.dense_row(n).iter().enumerate() {
            csv.push(vec![n.to_string(), (i + 1).to_string(), h.to_string()]);
        }
    }
    csv
}

pub fn pn_payload(f: &PnFamily) -> Value {
    let polys: Vec<Value> = f
        .polys()
        .iter()
        .enumerate()
        .map(|(n, p)| json!({ "n": n, "coeffs": coeffs(p) }))
        .collect();
    json!({ "source": f.source(), "variable": "N", "n_max": f.n_max(), "polynomials": polys })
}

pub fn poly_csv(index: &'static str, polys: &[(usize, &IntPolynomial)]) -> CsvTable {
    let mut csv = CsvTable::new(vec![index, "power", "coeff"]);
    for (i, p) in polys {
        for (d, c) in p.coeffs().iter().enumerate() {
            csv.push(vec![i.to_string(), d.to_string(), c.to_string()]);
        }
    }
    csv
}

pub fn pg_polys_payload(pgs: &[PgPolynomial]) -> Value {
    let provenance = pgs.first().map(|p| p.provenance.to_string());
    let polys: Vec<Value> = pgs
        .iter()
        .map(|p| json!({ "g": p.g, "coeffs": coeffs(&p.poly) }))
        .collect();
    json!({
        "provenance": provenance,
        "variable": "x",
        "g_max": pgs.len().saturating_sub(1),
        "polynomials": polys,
    })
}
