//! CSV and JSON persistence for sweeps, gap scans, probability curves, and
//! gate sequences.
//!
//! # Gate file schema
//!
//! ```json
//! {"n": 1, "gates": [[[0, 0], [1, 0], [1, 0], [0, 0]], ...]}
//! ```
//!
//! `n` is the register qubit count. Each gate is a flat row-major list of
//! `4ⁿ` complex entries written as `[re, im]`. Gates are applied in list
//! order, so the first entry is `U_1`.

use std::io::{Read, Write};
use std::path::Path;

use num_complex::Complex;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::adiabatic::GapScan;
use crate::clock::AmplitudeSeries;
use crate::error::{Error, Result};
use crate::gates::UnitarySequence;
use crate::numerics::ComplexMatrix;
use crate::peaks::PeakReport;
use crate::scalar::Real;
use crate::tolerance;

/// Largest register accepted from a gate file.
pub const MAX_FILE_QUBITS: u64 = 10;

pub const SWEEP_HEADER: [&str; 6] = ["k", "tau1", "p1", "tau2", "p2", "delta_tau"];

pub fn write_sweep_csv<T: Real>(rows: &[PeakReport<T>], out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if rows.is_empty() {
        w.write_record(SWEEP_HEADER)?;
    }
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// Read and validate sweep rows.
pub fn read_sweep_csv(input: impl Read) -> Result<Vec<PeakReport<f64>>> {
    let mut r = csv::Reader::from_reader(input);
    let header: Vec<String> = r.headers()?.iter().map(str::to_owned).collect();
    if header != SWEEP_HEADER {
        return Err(Error::DimensionMismatch(format!("sweep header is {header:?}, expected {SWEEP_HEADER:?}")));
    }
    let rows = r.deserialize().collect::<std::result::Result<Vec<PeakReport<f64>>, _>>()?;
    for row in &rows {
        row.validate()?;
    }
    Ok(rows)
}

pub fn write_gap_csv<T: Real>(scan: &GapScan<T>, out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["s", "gap"])?;
    for (s, g) in scan.s_grid.iter().zip(&scan.gap) {
        w.serialize((s, g))?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct GapSummaryRow<T> {
    k: usize,
    s_min: T,
    gap_min: T,
}

pub fn write_gap_summary_csv<T: Real>(scans: &[GapScan<T>], out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if scans.is_empty() {
        w.write_record(["k", "s_min", "gap_min"])?;
    }
    for s in scans {
        w.serialize(GapSummaryRow { k: s.k, s_min: s.s_min, gap_min: s.gap_min })?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_curve_csv<T: Real>(series: &AmplitudeSeries<T>, out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["t", "P"])?;
    for (t, p) in series.times.iter().zip(&series.probabilities) {
        w.serialize((t, p))?;
    }
    w.flush()?;
    Ok(())
}

/// Pretty JSON with a trailing newline.
pub fn write_json<S: Serialize + ?Sized>(value: &S, mut out: impl Write) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    out.write_all(b"\n")?;
    Ok(())
}

pub fn read_json<D: for<'de> Deserialize<'de>>(input: impl Read) -> Result<D> {
    Ok(serde_json::from_reader(input)?)
}

fn schema(field: impl Into<String>, problem: impl Into<String>) -> Error {
    Error::GateSchema { field: field.into(), problem: problem.into() }
}

/// Parse and validate a gate file.
pub fn parse_gate_json<T: Real>(text: &str) -> Result<UnitarySequence<T>> {
    let root: Value = serde_json::from_str(text).map_err(|e| schema("<root>", format!("not valid JSON: {e}")))?;
    let obj = root.as_object().ok_or_else(|| schema("<root>", "expected an object"))?;
    for key in obj.keys() {
        if key != "n" && key != "gates" {
            return Err(schema(key.as_str(), "unknown field"));
        }
    }
    let n = obj
        .get("n")
        .ok_or_else(|| schema("n", "missing"))?
        .as_u64()
        .ok_or_else(|| schema("n", "expected a non-negative integer"))?;
    if n > MAX_FILE_QUBITS {
        return Err(schema("n", format!("at most {MAX_FILE_QUBITS} qubits are supported")));
    }
    let dim = 1usize << n;
    let gates = obj
        .get("gates")
        .ok_or_else(|| schema("gates", "missing"))?
        .as_array()
        .ok_or_else(|| schema("gates", "expected an array of gates"))?;
    if gates.is_empty() {
        return Err(schema("gates", "at least one gate is required"));
    }

    let mut mats = Vec::with_capacity(gates.len());
    for (g, gate) in gates.iter().enumerate() {
        let entries =
            gate.as_array().ok_or_else(|| schema(format!("gates[{g}]"), "expected an array of [re, im] pairs"))?;
        if entries.len() != dim * dim {
            return Err(schema(
                format!("gates[{g}]"),
                format!("has {} entries, expected {} for n = {n}", entries.len(), dim * dim),
            ));
        }
        let mut data = Vec::with_capacity(dim * dim);
        for (e, entry) in entries.iter().enumerate() {
            let pair = entry.as_array().filter(|p| p.len() == 2);
            let parts = pair.and_then(|p| Some((p[0].as_f64()?, p[1].as_f64()?)));
            let (re, im) =
                parts.ok_or_else(|| schema(format!("gates[{g}][{e}]"), "expected [re, im] with two numbers"))?;
            data.push(Complex::new(T::lit(re), T::lit(im)));
        }
        let m = ComplexMatrix::new(dim, dim, data)?;
        let dev = m.unitary_deviation();
        if !(dev <= T::tol(tolerance::UNITARY)) {
            return Err(schema(format!("gates[{g}]"), format!("not unitary: max |U^dag U - I| = {:e}", dev.as_f64())));
        }
        mats.push(m);
    }
    UnitarySequence::new(n as usize, mats)
}

pub fn load_gate_file<T: Real>(path: impl AsRef<Path>) -> Result<UnitarySequence<T>> {
    parse_gate_json(&std::fs::read_to_string(path)?)
}

pub fn gate_json<T: Real>(seq: &UnitarySequence<T>) -> Value {
    let gates: Vec<Value> = seq
        .gates()
        .iter()
        .map(|g| {
            Value::from(g.entries().iter().map(|z| Value::from(vec![z.re.as_f64(), z.im.as_f64()])).collect::<Vec<_>>())
        })
        .collect();
    serde_json::json!({ "n": seq.n(), "gates": gates })
}
