//! The table ring file format: explicit Cayley tables that round-trip
//! through the builder.
//!
//! ```text
//! order N
//! add i j k     (N^2 lines: i + j = k)
//! mul i j k     (N^2 lines: i * j = k)
//! one u
//! ```
//!
//! Indices are 0-based. Files are rejected at build time unless the full
//! ring axioms verify.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use ringlab_core::{FiniteRing, RawTable};

use crate::parse::ParseError;

pub fn read_table(path: &Path) -> Result<RawTable, ParseError> {
    let text = fs::read_to_string(path).map_err(|e| ParseError {
        offset: 0,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    parse_table(&text)
}

pub fn parse_table(text: &str) -> Result<RawTable, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let fail = |line: usize, message: String| ParseError {
        offset: line,
        message: format!("line {line}: {message}"),
    };
    let (line, header) = lines
        .next()
        .ok_or_else(|| fail(0, "empty table file".into()))?;
    let order: u64 = header
        .strip_prefix("order ")
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| fail(line, "expected 'order N'".into()))?;
    if order == 0 {
        return Err(fail(line, "order must be positive".into()));
    }
    let cells = (order * order) as usize;
    let mut add = vec![u64::MAX; cells];
    let mut mul = vec![u64::MAX; cells];
    let mut one = None;
    for (line, l) in lines {
        let mut parts = l.split_whitespace();
        let verb = parts.next().unwrap();
        match verb {
            "add" | "mul" => {
                let nums: Vec<u64> = parts.map(|p| p.parse().unwrap_or(u64::MAX)).collect();
                if nums.len() != 3 || nums.iter().any(|&n| n >= order) {
                    return Err(fail(line, format!("expected '{verb} i j k' with indices below {order}")));
                }
                let slot = (nums[0] * order + nums[1]) as usize;
                let table = if verb == "add" { &mut add } else { &mut mul };
                if table[slot] != u64::MAX {
                    return Err(fail(line, format!("duplicate {verb} entry for ({}, {})", nums[0], nums[1])));
                }
                table[slot] = nums[2];
            }
            "one" => {
                let u: u64 = parts
                    .next()
                    .and_then(|p| p.parse().ok())
                    .filter(|&u| u < order)
                    .ok_or_else(|| fail(line, "expected 'one u'".into()))?;
                if parts.next().is_some() {
                    return Err(fail(line, "trailing input after 'one u'".into()));
                }
                one = Some(u);
            }
            other => return Err(fail(line, format!("unknown directive '{other}'"))),
        }
    }
    if add.iter().chain(mul.iter()).any(|&x| x == u64::MAX) {
        return Err(ParseError {
            offset: 0,
            message: format!("incomplete tables: expected {cells} add and {cells} mul entries"),
        });
    }
    let one = one.ok_or_else(|| ParseError {
        offset: 0,
        message: "missing 'one u' line".into(),
    })?;
    Ok(RawTable {
        order,
        add,
        mul,
        one,
    })
}

/// Serializes a ring as a table file (feasible for small carriers only).
pub fn render_table(ring: &FiniteRing) -> String {
    let n = ring.cardinality();
    let mut out = String::new();
    let _ = writeln!(out, "order {n}");
    for i in 0..n {
        for j in 0..n {
            let k = ring
                .add(ring.element(i).unwrap(), ring.element(j).unwrap())
                .unwrap()
                .code();
            let _ = writeln!(out, "add {i} {j} {k}");
        }
    }
    for i in 0..n {
        for j in 0..n {
            let k = ring
                .mul(ring.element(i).unwrap(), ring.element(j).unwrap())
                .unwrap()
                .code();
            let _ = writeln!(out, "mul {i} {j} {k}");
        }
    }
    let _ = writeln!(out, "one {}", ring.one().code());
    out
}

pub fn write_table(ring: &FiniteRing, path: &Path) -> std::io::Result<()> {
    fs::write(path, render_table(ring))
}
