//! Small text-format helpers shared by the CSV writers.
//!
//! Extended-precision values are written with their full decimal expansion
//! unless a digit count is given, so a file read back at the same precision
//! reproduces the values bit for bit.

use std::collections::BTreeMap;

use rug::Float;

use crate::{Error, Result};

/// Decimal form of `x`; `digits` limits the significant digits.
pub fn fmt_real(x: &Float, digits: Option<usize>) -> String {
    match digits {
        Some(d) => format!("{:.*}", d.max(1), x),
        None => x.to_string_radix(10, None),
    }
}

pub fn parse_real(s: &str, prec: u32) -> Result<Float> {
    Float::parse(s.trim())
        .map(|v| Float::with_val(prec, v))
        .map_err(|e| Error::domain(format!("bad number {s:?}: {e}")))
}

/// `# kind k1=v1 k2=v2 ...`
pub fn header_line(kind: &str, fields: &[(&str, String)]) -> String {
    let mut s = format!("# {kind}");
    for (k, v) in fields {
        s.push(' ');
        s.push_str(k);
        s.push('=');
        s.push_str(v);
    }
    s
}

/// Parses a header written by [`header_line`] into its kind and fields.
pub fn parse_header(line: &str) -> Result<(String, BTreeMap<String, String>)> {
    let rest = line
        .strip_prefix('#')
        .ok_or_else(|| Error::domain(format!("expected a '#' header, got {line:?}")))?;
    let mut parts = rest.split_whitespace();
    let kind = parts
        .next()
        .ok_or_else(|| Error::domain("empty header line"))?
        .to_string();
    let mut map = BTreeMap::new();
    for p in parts {
        if let Some((k, v)) = p.split_once('=') {
            map.insert(k.to_string(), v.to_string());
        }
    }
    Ok((kind, map))
}
