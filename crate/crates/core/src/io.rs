//! Textual formats: matrix export/import as CSV and JSON, check-report JSON
//! and the `name=value` tolerance-override syntax.
//!
//! Numbers are written with 17 significant decimal digits, enough for an
//! exact f64 round-trip; bit-exact file layout is not promised. The parsers
//! accept untrusted input: they validate shape and bounds before building
//! anything and never panic on malformed text.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hardy::TruncatedOperator;
use crate::symbol::AffineSymbol;
use crate::verify::CheckReport;

/// Hard cap on the truncation size accepted from files; matches the largest
/// size the CLI will build.
pub const MAX_PARSED_SIZE: usize = 4096;

fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Row-major CSV with alternating real and imaginary cells: row m holds
/// re(A[m][0]), im(A[m][0]), re(A[m][1]), ... Terminated by a newline.
pub fn matrix_to_csv(operator: &TruncatedOperator) -> String {
    let n = operator.size();
    let mut out = String::with_capacity(n * n * 24);
    for m in 0..n {
        for k in 0..n {
            if k > 0 {
                out.push(',');
            }
            let entry = operator.entry(m, k);
            out.push_str(&fmt_f64(entry.re));
            out.push(',');
            out.push_str(&fmt_f64(entry.im));
        }
        out.push('\n');
    }
    out
}

/// Parses the CSV matrix format back into a square complex matrix,
/// returning the size and the row-major entries. The symbol is not part of
/// the CSV format.
pub fn matrix_from_csv(text: &str) -> Result<(usize, Vec<Complex64>)> {
    let rows: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    let n = rows.len();
    if n == 0 {
        return Err(Error::Parse("empty matrix".into()));
    }
    if n > MAX_PARSED_SIZE {
        return Err(Error::Parse(format!("matrix size {n} exceeds {MAX_PARSED_SIZE}")));
    }
    let mut entries = Vec::with_capacity(n * n);
    for (i, row) in rows.iter().enumerate() {
        let cells: Vec<&str> = row.split(',').collect();
        if cells.len() != 2 * n {
            return Err(Error::Parse(format!(
                "row {i} has {} cells, expected {}",
                cells.len(),
                2 * n
            )));
        }
        for pair in cells.chunks(2) {
            let re: f64 = pair[0]
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad number {:?} in row {i}", pair[0])))?;
            let im: f64 = pair[1]
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad number {:?} in row {i}", pair[1])))?;
            if !re.is_finite() || !im.is_finite() {
                return Err(Error::Parse(format!("non-finite entry in row {i}")));
            }
            entries.push(Complex64::new(re, im));
        }
    }
    Ok((n, entries))
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
struct SymbolParams {
    a: f64,
    re_b: f64,
    im_b: f64,
}

#[derive(Debug, Serialize)]
struct EnvelopeOut<'a> {
    symbol: &'a AffineSymbol,
    #[serde(rename = "N")]
    n: usize,
    entries: Vec<[f64; 2]>,
}

#[derive(Debug, Deserialize)]
struct EnvelopeIn {
    symbol: SymbolParams,
    #[serde(rename = "N")]
    n: usize,
    entries: Vec<[f64; 2]>,
}

/// JSON envelope {symbol: {a, re_b, im_b}, N, entries: [[re, im], ...]}
/// with row-major entries.
pub fn matrix_to_json(operator: &TruncatedOperator) -> String {
    let envelope = EnvelopeOut {
        symbol: operator.symbol(),
        n: operator.size(),
        entries: operator.entries().iter().map(|c| [c.re, c.im]).collect(),
    };
    serde_json::to_string(&envelope).expect("matrix envelope serialization cannot fail")
}

/// Parses the JSON envelope, validating the symbol and the shape.
pub fn matrix_from_json(text: &str) -> Result<TruncatedOperator> {
    let envelope: EnvelopeIn =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if envelope.n == 0 || envelope.n > MAX_PARSED_SIZE {
        return Err(Error::Parse(format!(
            "matrix size {} out of range [1, {MAX_PARSED_SIZE}]",
            envelope.n
        )));
    }
    if envelope.entries.len() != envelope.n * envelope.n {
        return Err(Error::Parse(format!(
            "{} entries for size {}",
            envelope.entries.len(),
            envelope.n
        )));
    }
    let symbol = AffineSymbol::new(
        envelope.symbol.a,
        Complex64::new(envelope.symbol.re_b, envelope.symbol.im_b),
    )?;
    if envelope.entries.iter().flatten().any(|x| !x.is_finite()) {
        return Err(Error::Parse("non-finite matrix entry".into()));
    }
    let entries = envelope
        .entries
        .iter()
        .map(|p| Complex64::new(p[0], p[1]))
        .collect();
    TruncatedOperator::from_parts(symbol, envelope.n, entries)
}

/// Serializes a batch of check reports as a JSON array.
pub fn reports_to_json(reports: &[CheckReport]) -> String {
    serde_json::to_string_pretty(reports).expect("report serialization cannot fail")
}

/// Parses one `name=value` tolerance override.
pub fn parse_tol_spec(spec: &str) -> Result<(String, f64)> {
    let (name, value) = spec
        .split_once('=')
        .ok_or_else(|| Error::Parse(format!("tolerance override {spec:?} is not name=value")))?;
    let name = name.trim();
    if name.is_empty() {
        return Err(Error::Parse("empty check name in tolerance override".into()));
    }
    let value: f64 = value
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad tolerance value in {spec:?}")))?;
    if !value.is_finite() || value < 0.0 {
        return Err(Error::Parse(format!(
            "tolerance must be finite and nonnegative, got {value}"
        )));
    }
    Ok((name.to_string(), value))
}

/// Parses a list of overrides into a name -> tolerance map; later entries
/// win.
pub fn parse_tol_overrides(specs: &[String]) -> Result<std::collections::BTreeMap<String, f64>> {
    let mut map = std::collections::BTreeMap::new();
    for spec in specs {
        let (name, value) = parse_tol_spec(spec)?;
        map.insert(name, value);
    }
    Ok(map)
}
