//! Experiment configuration: graph, target filter, design method.

use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Graph {
    Line(usize),
    /// `height × width`
    Grid(usize, usize),
}

impl Graph {
    pub fn size(&self) -> usize {
        match *self {
            Graph::Line(n) => n,
            Graph::Grid(h, w) => h * w,
        }
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Graph::Line(n) => write!(f, "line:{n}"),
            Graph::Grid(h, w) => write!(f, "grid:{h}x{w}"),
        }
    }
}

impl FromStr for Graph {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |v: &str| v.parse::<usize>().ok().filter(|&n| n >= 2);
        let bad = || format!("bad graph `{s}`, expected line:N or grid:HxW with sides >= 2");
        match s.split_once(':') {
            Some(("line", n)) => parse(n).map(Graph::Line).ok_or_else(bad),
            Some(("grid", dims)) => {
                let (h, w) = dims.split_once('x').ok_or_else(bad)?;
                Ok(Graph::Grid(parse(h).ok_or_else(bad)?, parse(w).ok_or_else(bad)?))
            }
            _ => Err(bad()),
        }
    }
}

/// Target response. Unset centers and cutoffs default to `λ_max / 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FilterSpec {
    Tikhonov { mu: f64 },
    BandpassExp { gamma: f64, center: Option<f64> },
    IdealLowpass { cutoff: Option<f64> },
}

impl FilterSpec {
    pub fn is_lowpass(&self) -> bool {
        matches!(self, FilterSpec::IdealLowpass { .. })
    }
}

impl fmt::Display for FilterSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FilterSpec::Tikhonov { mu } => write!(f, "tikhonov:{mu}"),
            FilterSpec::BandpassExp { gamma, center: None } => write!(f, "bandpass-exp:{gamma}"),
            FilterSpec::BandpassExp { gamma, center: Some(c) } => write!(f, "bandpass-exp:{gamma}:{c}"),
            FilterSpec::IdealLowpass { cutoff: None } => write!(f, "ideal-lowpass"),
            FilterSpec::IdealLowpass { cutoff: Some(c) } => write!(f, "ideal-lowpass:{c}"),
        }
    }
}

impl FromStr for FilterSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut parts = s.split(':');
        let name = parts.next().unwrap_or_default();
        let args: Vec<f64> = parts
            .map(|a| a.parse::<f64>().map_err(|_| format!("bad number `{a}` in filter `{s}`")))
            .collect::<Result<_, _>>()?;
        if args.iter().any(|v| !v.is_finite()) {
            return Err(format!("filter parameters must be finite in `{s}`"));
        }
        let too_many = |max: usize| {
            if args.len() > max {
                Err(format!("too many parameters in filter `{s}`"))
            } else {
                Ok(())
            }
        };
        match name {
            "tikhonov" => {
                too_many(1)?;
                Ok(FilterSpec::Tikhonov { mu: args.first().copied().unwrap_or(0.25) })
            }
            "bandpass-exp" => {
                too_many(2)?;
                Ok(FilterSpec::BandpassExp { gamma: args.first().copied().unwrap_or(1.0), center: args.get(1).copied() })
            }
            "ideal-lowpass" => {
                too_many(1)?;
                Ok(FilterSpec::IdealLowpass { cutoff: args.first().copied() })
            }
            _ => Err(format!("unknown filter `{s}`, expected tikhonov, bandpass-exp or ideal-lowpass")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    PgfLs,
    PgfMinimax,
    PgfCheb,
    MpgfLs,
    MpgfOmp(usize),
    MpgfMinimax(usize),
    ExactDense,
}

impl Method {
    pub fn uses_degree(&self) -> bool {
        !matches!(self, Method::ExactDense)
    }

    pub fn is_mpgf(&self) -> bool {
        matches!(self, Method::MpgfLs | Method::MpgfOmp(_) | Method::MpgfMinimax(_))
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::PgfLs => f.write_str("pgf-ls"),
            Method::PgfMinimax => f.write_str("pgf-minimax"),
            Method::PgfCheb => f.write_str("pgf-cheb"),
            Method::MpgfLs => f.write_str("mpgf-ls"),
            Method::MpgfOmp(r) => write!(f, "mpgf-omp:{r}"),
            Method::MpgfMinimax(r) => write!(f, "mpgf-minimax:{r}"),
            Method::ExactDense => f.write_str("exact-dense"),
        }
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let terms = |r: &str| r.parse::<usize>().ok().filter(|&r| r >= 1).ok_or_else(|| format!("bad term count in `{s}`"));
        match s.split_once(':') {
            None => match s {
                "pgf-ls" => Ok(Method::PgfLs),
                "pgf-minimax" => Ok(Method::PgfMinimax),
                "pgf-cheb" => Ok(Method::PgfCheb),
                "mpgf-ls" => Ok(Method::MpgfLs),
                "exact-dense" => Ok(Method::ExactDense),
                _ => Err(format!("unknown method `{s}`")),
            },
            Some(("mpgf-omp", r)) => Ok(Method::MpgfOmp(terms(r)?)),
            Some(("mpgf-minimax", r)) => Ok(Method::MpgfMinimax(terms(r)?)),
            _ => Err(format!("unknown method `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub graph: Graph,
    pub filter: FilterSpec,
    pub method: Method,
    pub degree: usize,
    pub trials: usize,
    pub seed: u64,
}

impl BenchConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.trials == 0 {
            return Err("trials must be at least 1".into());
        }
        if self.method.uses_degree() && self.degree == 0 {
            return Err("degree must be at least 1".into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for g in ["line:64", "grid:16x16", "grid:4x8"] {
            assert_eq!(g.parse::<Graph>().unwrap().to_string(), g);
        }
        for f in ["tikhonov:0.25", "bandpass-exp:1", "bandpass-exp:4:1", "ideal-lowpass", "ideal-lowpass:2"] {
            assert_eq!(f.parse::<FilterSpec>().unwrap().to_string(), f);
        }
        for m in ["pgf-ls", "pgf-minimax", "pgf-cheb", "mpgf-ls", "mpgf-omp:4", "mpgf-minimax:3", "exact-dense"] {
            assert_eq!(m.parse::<Method>().unwrap().to_string(), m);
        }
    }

    #[test]
    fn defaults_and_errors() {
        assert_eq!("tikhonov".parse::<FilterSpec>().unwrap(), FilterSpec::Tikhonov { mu: 0.25 });
        assert_eq!("bandpass-exp".parse::<FilterSpec>().unwrap(), FilterSpec::BandpassExp { gamma: 1.0, center: None });
        for bad in ["line:1", "line", "grid:4", "grid:4x", "ring:5"] {
            assert!(bad.parse::<Graph>().is_err(), "{bad}");
        }
        for bad in ["tikhonov:x", "tikhonov:1:2", "lowpass", "bandpass-exp:nan"] {
            assert!(bad.parse::<FilterSpec>().is_err(), "{bad}");
        }
        for bad in ["mpgf-omp", "mpgf-omp:0", "pgf", "exact-dense:2"] {
            assert!(bad.parse::<Method>().is_err(), "{bad}");
        }
    }
}
