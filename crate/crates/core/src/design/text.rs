//! Plain-text designs.
//!
//! ```text
//! DCT-II 12 1 omp:3
//! : 0.41
//! 3 : 0.27
//! 6 : -0.08
//! ```
//!
//! The header is `transform N K method`. Each following line is one term:
//! 1-based operator numbers (empty for the identity), a colon, and the
//! coefficient. A `# epsilon v` line records the minimax error.

use std::fmt::Write as _;

use super::{DesignMethod, FilterDesign};
use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq)]
pub struct DesignHeader {
    /// Transform name, e.g. `DCT-II` or `DCT-IIxDCT-II` for a grid.
    pub transform: String,
    pub n: usize,
    pub degree: usize,
    pub method: DesignMethod,
}

pub fn write_design<T: Real>(transform: &str, n: usize, degree: usize, design: &FilterDesign<T>) -> String {
    let mut out = format!("{transform} {n} {degree} {}\n", design.method());
    if let Some(eps) = design.epsilon() {
        let _ = writeln!(out, "# epsilon {}", eps.to_f64_lossy());
    }
    for t in design.terms() {
        let ops: Vec<String> = t.ops.iter().map(|i| (i + 1).to_string()).collect();
        let lead = if ops.is_empty() { String::new() } else { format!("{} ", ops.join(" ")) };
        let _ = writeln!(out, "{lead}: {}", t.coeff.to_f64_lossy());
    }
    out
}

pub fn parse_design(text: &str) -> Result<(DesignHeader, FilterDesign<f64>)> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let head = lines.next().ok_or_else(|| Error::Parse("empty design".into()))?;
    let fields: Vec<&str> = head.split_whitespace().collect();
    let [transform, n, degree, method] = fields.as_slice() else {
        return Err(Error::Parse(format!("bad header `{head}`")));
    };
    let header = DesignHeader {
        transform: transform.to_string(),
        n: n.parse().map_err(|_| Error::Parse(format!("bad size `{n}`")))?,
        degree: degree.parse().map_err(|_| Error::Parse(format!("bad degree `{degree}`")))?,
        method: method.parse()?,
    };

    let mut terms = Vec::new();
    let mut epsilon = None;
    for line in lines {
        if let Some(rest) = line.trim().strip_prefix('#') {
            if let Some(v) = rest.trim().strip_prefix("epsilon") {
                epsilon = Some(v.trim().parse::<f64>().map_err(|_| Error::Parse(format!("bad epsilon `{v}`")))?);
            }
            continue;
        }
        let (ops, coeff) = line.split_once(':').ok_or_else(|| Error::Parse(format!("missing `:` in `{line}`")))?;
        let coeff: f64 = coeff.trim().parse().map_err(|_| Error::Parse(format!("bad coefficient in `{line}`")))?;
        let ops = ops
            .split_whitespace()
            .map(|s| match s.parse::<usize>() {
                Ok(i) if i >= 1 => Ok(i - 1),
                _ => Err(Error::Parse(format!("bad operator number `{s}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        terms.push((ops, coeff));
    }
    let mut design = FilterDesign::new(terms, header.method);
    if let Some(e) = epsilon {
        design = design.with_epsilon(e);
    }
    Ok((header, design))
}
