//! Point clouds as text: a header `dim=<d> delta=<δ> n=<count>`, then one
//! point per line with space-separated coordinates.

use std::io::{self, BufRead, Write};

use ahlfors_core::geometry::PointCloud;

use super::sci;
use crate::error::FormatError;

pub fn write_cloud<W: Write>(mut w: W, cloud: &PointCloud) -> io::Result<()> {
    writeln!(
        w,
        "dim={} delta={} n={}",
        cloud.dim(),
        sci(cloud.resolution()),
        cloud.len()
    )?;
    let mut line = String::new();
    for p in cloud.points() {
        line.clear();
        for (k, x) in p.iter().enumerate() {
            if k > 0 {
                line.push(' ');
            }
            line.push_str(&sci(*x));
        }
        line.push('\n');
        w.write_all(line.as_bytes())?;
    }
    w.flush()
}

pub fn read_cloud<R: BufRead>(r: R) -> Result<PointCloud, FormatError> {
    let mut lines = r.lines().enumerate();
    let (dim, delta, n) = loop {
        let Some((i, line)) = lines.next() else {
            return Err(FormatError::new("missing header line"));
        };
        let line = line.map_err(|e| FormatError::at(i + 1, e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        break parse_header(&line).map_err(|m| FormatError::at(i + 1, m))?;
    };

    let mut coords = Vec::with_capacity(dim * n);
    let mut count = 0;
    for (i, line) in lines {
        let line = line.map_err(|e| FormatError::at(i + 1, e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let before = coords.len();
        for tok in line.split_ascii_whitespace() {
            let x = tok
                .parse::<f64>()
                .map_err(|_| FormatError::at(i + 1, format!("bad coordinate {tok:?}")))?;
            coords.push(x);
        }
        if coords.len() - before != dim {
            return Err(FormatError::at(
                i + 1,
                format!("expected {dim} coordinates, found {}", coords.len() - before),
            ));
        }
        count += 1;
    }
    if count != n {
        return Err(FormatError::new(format!(
            "header announces {n} points, file has {count}"
        )));
    }
    Ok(PointCloud::new(dim, coords, delta)?)
}

fn parse_header(line: &str) -> Result<(usize, f64, usize), String> {
    let mut dim = None;
    let mut delta = None;
    let mut n = None;
    for field in line.split_ascii_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| format!("header field {field:?} is not key=value"))?;
        let bad = || format!("bad header value {field:?}");
        match key {
            "dim" => dim = Some(value.parse::<usize>().map_err(|_| bad())?),
            "delta" => delta = Some(value.parse::<f64>().map_err(|_| bad())?),
            "n" => n = Some(value.parse::<usize>().map_err(|_| bad())?),
            _ => return Err(format!("unknown header field {key:?}")),
        }
    }
    match (dim, delta, n) {
        (Some(d), Some(e), Some(n)) => Ok((d, e, n)),
        _ => Err("header needs dim=, delta= and n=".into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_exact() {
        let xs = [0.1, -1.0 / 3.0, 2f64.sqrt(), 1e-300, 5e-324, -0.0];
        let cloud = PointCloud::new(2, xs.to_vec(), 1.0 / 7.0).unwrap();
        let mut buf = Vec::new();
        write_cloud(&mut buf, &cloud).unwrap();
        let back = read_cloud(&buf[..]).unwrap();
        assert_eq!(back.dim(), 2);
        assert_eq!(back.resolution().to_bits(), cloud.resolution().to_bits());
        for (a, b) in back.coords().iter().zip(cloud.coords()) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn header_and_body() {
        let cloud = PointCloud::from_line(&[0.5, 0.25], 0.125).unwrap();
        let mut buf = Vec::new();
        write_cloud(&mut buf, &cloud).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "dim=1 delta=1.2500000000000000e-1 n=2\n5.0000000000000000e-1\n2.5000000000000000e-1\n"
        );
    }

    #[test]
    fn rejects_malformed_files() {
        let cases = [
            ("", "missing header"),
            ("dim=1 n=1\n0\n", "needs"),
            ("dim=1 delta=0.1 n=2\n0\n", "announces 2"),
            ("dim=2 delta=0.1 n=1\n0\n", "line 2"),
            ("dim=1 delta=0.1 n=1\nzero\n", "bad coordinate"),
            ("dim=1 delta=-1 n=1\n0\n", "resolution"),
        ];
        for (text, needle) in cases {
            let err = read_cloud(text.as_bytes()).unwrap_err().to_string();
            assert!(err.contains(needle), "{text:?}: {err}");
        }
    }
}
