//! Plain-text table format:
//!
//! ```text
//! name: C3
//! order 3
//! 0 1 2
//! 1 2 0
//! 2 0 1
//! ```
//!
//! The `name:` line is optional. Blank lines and lines starting with `#`
//! are ignored.

use std::fmt::Write as _;

use super::Group;
use crate::error::{Error, Result};

pub fn write_group(g: &Group) -> String {
    let n = g.order();
    let mut out = String::with_capacity(n * n * 4 + 32);
    if let Some(name) = g.name() {
        let _ = writeln!(out, "name: {name}");
    }
    let _ = writeln!(out, "order {n}");
    for a in 0..n {
        let row = &g.table()[a * n..(a + 1) * n];
        let line: Vec<String> = row.iter().map(u32::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Parses the text format and validates the group axioms.
pub fn read_group(text: &str) -> Result<Group> {
    let mut name = None;
    let mut order = None;
    let mut table = Vec::new();
    let mut rows = 0;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("name:") {
            if order.is_some() {
                return Err(Error::parse(lineno, "name must precede the order line"));
            }
            name = Some(rest.trim().to_string());
            continue;
        }
        if let Some(rest) = line.strip_prefix("order") {
            if order.is_some() {
                return Err(Error::parse(lineno, "duplicate order line"));
            }
            let n: usize = rest
                .trim()
                .parse()
                .map_err(|_| Error::parse(lineno, "order must be a positive integer"))?;
            if n == 0 {
                return Err(Error::parse(lineno, "order must be positive"));
            }
            if n > super::MAX_ORDER {
                return Err(Error::Budget(format!(
                    "order {n} exceeds {}",
                    super::MAX_ORDER
                )));
            }
            order = Some(n);
            table.reserve(n * n);
            continue;
        }
        let n = order.ok_or_else(|| Error::parse(lineno, "table row before order line"))?;
        if rows == n {
            return Err(Error::parse(lineno, "more rows than the order"));
        }
        let before = table.len();
        for tok in line.split_whitespace() {
            let v: u32 = tok
                .parse()
                .map_err(|_| Error::parse(lineno, format!("bad entry `{tok}`")))?;
            table.push(v);
        }
        if table.len() - before != n {
            return Err(Error::parse(
                lineno,
                format!("expected {n} entries, found {}", table.len() - before),
            ));
        }
        rows += 1;
    }
    let n = order.ok_or_else(|| Error::parse(0, "missing order line"))?;
    if rows != n {
        return Err(Error::parse(0, format!("expected {n} rows, found {rows}")));
    }
    Group::from_table(table, name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_named_group;

    #[test]
    fn round_trip() {
        let g = build_named_group("Q8", &[]).unwrap();
        let text = write_group(&g);
        let h = read_group(&text).unwrap();
        assert_eq!(h.name(), Some("Q8"));
        assert_eq!(h.table(), g.table());
        assert_eq!(write_group(&h), text);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(read_group("order 2\n0 1\n").is_err());
        assert!(read_group("0 1\n1 0\n").is_err());
        assert!(read_group("order 2\n0 1\n1 x\n").is_err());
        assert!(read_group("order 2\n0 1\n1 1\n").is_err());
        assert!(read_group("order 1\n0\n").is_ok());
    }
}
