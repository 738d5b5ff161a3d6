//! Counting curves as CSV: `function,epsilon,value,eps_pow_s_value,s`, one
//! row per scale, scales decreasing.

use std::io::{Read, Write};

use ahlfors_core::asymptotics::CountingCurve;
use ahlfors_core::counting::CountingKind;

use super::sci;
use crate::error::FormatError;

const HEADER: [&str; 5] = ["function", "epsilon", "value", "eps_pow_s_value", "s"];

pub fn write_curve<W: Write>(w: W, curve: &CountingCurve, s: f64) -> Result<(), FormatError> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(HEADER)?;
    let name = curve.kind.name();
    for (&(e, v), (_, scaled)) in curve.points.iter().zip(curve.scaled(s)) {
        out.write_record([name, &sci(e), &sci(v), &sci(scaled), &sci(s)])?;
    }
    out.flush().map_err(|e| FormatError::new(e.to_string()))
}

/// The curve and the exponent `s` its scaled column was written with.
pub fn read_curve<R: Read>(r: R) -> Result<(CountingCurve, f64), FormatError> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(r);
    let header = rdr.headers()?.clone();
    if header.iter().ne(HEADER) {
        return Err(FormatError::at(1, format!("expected header {}", HEADER.join(","))));
    }
    let mut kind = None;
    let mut s = None;
    let mut points = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        let k: CountingKind = rec[0]
            .parse()
            .map_err(|e: ahlfors_core::Error| FormatError::at(line, e.to_string()))?;
        if kind.is_some_and(|prev| prev != k) {
            return Err(FormatError::at(line, "rows mix counting functions"));
        }
        kind = Some(k);
        let num = |i: usize| {
            rec[i]
                .parse::<f64>()
                .map_err(|_| FormatError::at(line, format!("bad {} {:?}", HEADER[i], &rec[i])))
        };
        let row_s = num(4)?;
        if s.is_some_and(|prev: f64| prev.to_bits() != row_s.to_bits()) {
            return Err(FormatError::at(line, "rows disagree on s"));
        }
        s = Some(row_s);
        points.push((num(1)?, num(2)?));
    }
    let (Some(kind), Some(s)) = (kind, s) else {
        return Err(FormatError::new("curve has no rows"));
    };
    if points.windows(2).any(|w| w[0].0 <= w[1].0) {
        return Err(FormatError::new("epsilon must be strictly decreasing"));
    }
    Ok((CountingCurve::from_points(kind, points)?, s))
}
