//! Plain-text operator dumps.
//!
//! ```text
//! DCT-II 4 1
//! 1:1 2:1
//! 1:1 3:1
//! 2:1 4:1
//! 3:1 4:1
//! ```
//!
//! The header is `kind N ell`; each following line lists one row's nonzeros
//! as 1-based `col:value` pairs separated by single spaces.

use std::fmt::Write as _;

use super::SparseOperator;
use crate::dtt::DttKind;
use crate::error::{Error, Result};
use crate::scalar::Real;

pub fn write_gallery<T: Real>(kind: DttKind, ell: usize, op: &SparseOperator<T>) -> String {
    let mut out = format!("{kind} {} {ell}\n", op.n());
    for p in 0..op.n() {
        let row: Vec<String> = op.row(p).map(|(q, v)| format!("{}:{}", q + 1, v.to_f64_lossy())).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

pub fn parse_gallery(text: &str) -> Result<(DttKind, usize, SparseOperator<f64>)> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::Parse("empty gallery".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [kind, n, ell] = fields.as_slice() else {
        return Err(Error::Parse(format!("bad header `{header}`")));
    };
    let kind: DttKind = kind.parse()?;
    let n: usize = n.parse().map_err(|_| Error::Parse(format!("bad size `{n}`")))?;
    let ell: usize = ell.parse().map_err(|_| Error::Parse(format!("bad operator index `{ell}`")))?;

    let mut rows = Vec::with_capacity(n);
    for line in lines.by_ref().take(n) {
        let mut row = Vec::new();
        for pair in line.split_whitespace() {
            let (c, v) = pair.split_once(':').ok_or_else(|| Error::Parse(format!("bad entry `{pair}`")))?;
            let c: usize = c.parse().map_err(|_| Error::Parse(format!("bad column `{c}`")))?;
            let v: f64 = v.parse().map_err(|_| Error::Parse(format!("bad value `{v}`")))?;
            if c == 0 || c > n {
                return Err(Error::Parse(format!("column {c} outside 1..={n}")));
            }
            row.push((c - 1, v));
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(Error::Parse(format!("expected {n} rows, found {}", rows.len())));
    }
    Ok((kind, ell, SparseOperator::from_rows(n, rows)?))
}
