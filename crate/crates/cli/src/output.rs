//! JSON and CSV rendering with 17 significant digits.

use std::io::{self, Write};

use qpoisson::report::CheckReport;
use qpoisson::Complex64;
use serde::Serialize;
use serde_json::ser::Formatter;
use serde_json::{json, Map, Value};

/// Compact JSON whose floats carry 17 significant digits.
struct Digits17;

impl Formatter for Digits17 {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(number(value).as_bytes())
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

/// Decimal text of `x` with 17 significant digits; non-finite values print as `inf`, `-inf`, `NaN`.
pub fn number(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn to_json(v: &Value) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, Digits17);
    v.serialize(&mut ser).expect("in-memory JSON cannot fail");
    String::from_utf8(out).expect("JSON is UTF-8")
}

pub fn complex(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

pub fn report(r: &CheckReport) -> Value {
    let witness: Map<String, Value> = r.witness.entries.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
    json!({
        "identity_id": r.identity_id,
        "observed_error": r.observed_error,
        "tolerance": r.tolerance,
        "passed": r.passed,
        "witness": witness,
    })
}

/// CSV text from a header and rows.
pub fn csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory CSV cannot fail");
    for row in rows {
        w.write_record(&row).expect("in-memory CSV cannot fail");
    }
    String::from_utf8(w.into_inner().expect("in-memory CSV cannot fail")).expect("CSV is UTF-8")
}

pub fn report_row(r: &CheckReport) -> Vec<String> {
    let witness: Vec<String> = r.witness.entries.iter().map(|(k, v)| format!("{k}={}", number(*v))).collect();
    vec![r.identity_id.clone(), number(r.observed_error), number(r.tolerance), r.passed.to_string(), witness.join(";")]
}

pub const REPORT_HEADER: [&str; 5] = ["identity_id", "observed_error", "tolerance", "passed", "witness"];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [0.1, 1.0 / 3.0, -2.5e-300, 6.02e23, f64::MIN_POSITIVE] {
            let s = number(x);
            assert_eq!(s.split('e').next().unwrap().trim_start_matches('-').replace('.', "").len(), 17);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits());
        }
    }

    #[test]
    fn non_finite_json_is_null() {
        assert_eq!(to_json(&json!([f64::INFINITY, f64::NAN, 0.5])), "[null,null,5.0000000000000000e-1]");
    }
}
