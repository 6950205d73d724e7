//! Report serialization.
//!
//! Every float is written with 17 significant digits so reports parse back
//! to the exact same `f64` values, in JSON as well as CSV.

use std::io;

use qudit_sorter::{SortingMatrix, SweepResult};
use serde::Serialize;
use serde_json::ser::{CompactFormatter, Formatter};

/// `x` in scientific notation with 17 significant digits; non-finite values become `null`.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

/// `x` with 6 significant digits, for console summaries.
pub fn fmt_short(x: f64) -> String {
    format!("{x:.5e}")
}

struct FullPrecision;

impl Formatter for FullPrecision {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(fmt_f64(value).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }

    fn write_byte_array<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: &[u8]) -> io::Result<()> {
        CompactFormatter.write_byte_array(writer, value)
    }
}

/// Serializes `value` as compact JSON with full-precision floats and a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String, serde_json::Error> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FullPrecision);
    value.serialize(&mut ser)?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}

/// One row per `(j, s)` pair: output port, observable value, probability.
pub fn sorting_matrix_csv(p: &SortingMatrix) -> String {
    let mut out = String::from("j,s,probability\n");
    for (j, row) in p.rows().iter().enumerate() {
        for (s, &x) in row.iter().enumerate() {
            out.push_str(&format!("{j},{s},{}\n", fmt_f64(x)));
        }
    }
    out
}

/// One row per trial of every swept sigma.
pub fn sweep_csv(results: &[SweepResult]) -> String {
    let mut out = String::from("sigma,trial,worst,mean\n");
    for r in results {
        for (t, e) in r.trials.iter().enumerate() {
            out.push_str(&format!(
                "{},{t},{},{}\n",
                fmt_f64(r.sigma),
                fmt_f64(e.worst),
                fmt_f64(e.mean)
            ));
        }
    }
    out
}
