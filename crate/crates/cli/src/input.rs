//! Input loading and error classification.

use std::fmt;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, Context, Result};
use hallvertex::lattice::LatticeSpec;
use hallvertex::quiver::{DimVector, Quiver};
use hallvertex::vertex::Orientation;
use hallvertex::Error;

use crate::LatticeArg;

/// Malformed input; maps to exit code 2.
#[derive(Debug)]
pub struct Usage(pub String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow!(Usage(msg.into()))
}

/// 2 for bad input, 3 for failures inside the engines.
pub fn exit_code(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if cause.is::<Usage>() || cause.is::<std::io::Error>() || cause.is::<serde_json::Error>() {
            return 2;
        }
        if let Some(err) = cause.downcast_ref::<Error>() {
            return match err {
                Error::Parse(_)
                | Error::NotInvariant(_)
                | Error::InvalidClass(_)
                | Error::InvalidInput(_)
                | Error::NonHomogeneous
                | Error::DivergentRange(_)
                | Error::WindowInsufficient { .. }
                | Error::ZeroWeight => 2,
                _ => 3,
            };
        }
    }
    3
}

pub fn load_quiver(spec: &str) -> Result<Quiver> {
    match spec {
        "a1" => Ok(Quiver::a1()),
        "jordan" => Ok(Quiver::jordan()),
        "kronecker" => Ok(Quiver::kronecker()),
        path => {
            let s = fs::read_to_string(path)
                .with_context(|| format!("reading quiver file `{path}`"))?;
            Ok(Quiver::from_json(&s).with_context(|| format!("parsing quiver file `{path}`"))?)
        }
    }
}

pub fn load_lattice(arg: &LatticeArg) -> Result<LatticeSpec> {
    match (&arg.gram, &arg.lattice) {
        (Some(g), None) => {
            let gram: Vec<Vec<i64>> = serde_json::from_str(g)
                .map_err(|e| usage(format!("--gram `{g}` is not an integer matrix: {e}")))?;
            Ok(LatticeSpec::new(gram)?)
        }
        (None, Some(p)) => read_lattice(p),
        _ => Err(usage("give exactly one of --gram or --lattice")),
    }
}

fn read_lattice(p: &Path) -> Result<LatticeSpec> {
    let s =
        fs::read_to_string(p).with_context(|| format!("reading lattice file `{}`", p.display()))?;
    Ok(LatticeSpec::from_json(&s)?)
}

pub fn dim(q: &Quiver, s: &str) -> Result<DimVector> {
    let g: DimVector = s.parse()?;
    Ok(q.dim(g.0)?)
}

pub fn orientation(s: &str) -> Result<Orientation> {
    Ok(Orientation::parse(s)?)
}

/// Parses `lo,hi`.
pub fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once(',').ok_or("expected `lo,hi`")?;
    let lo: i64 = a
        .trim()
        .parse()
        .map_err(|_| format!("bad lower bound `{a}`"))?;
    let hi: i64 = b
        .trim()
        .parse()
        .map_err(|_| format!("bad upper bound `{b}`"))?;
    if lo > hi {
        return Err(format!("empty window [{lo}, {hi}]"));
    }
    Ok((lo, hi))
}

/// Parses `lo:hi,lo:hi,...`.
pub fn parse_range(s: &str) -> Result<Vec<(i64, i64)>> {
    s.split(',')
        .map(|part| {
            let (a, b) = part
                .split_once(':')
                .ok_or_else(|| usage(format!("range entry `{part}` is not `lo:hi`")))?;
            let lo = a
                .trim()
                .parse()
                .map_err(|_| usage(format!("bad bound `{a}`")))?;
            let hi = b
                .trim()
                .parse()
                .map_err(|_| usage(format!("bad bound `{b}`")))?;
            Ok((lo, hi))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn windows_and_ranges() {
        assert_eq!(parse_window("-3,0"), Ok((-3, 0)));
        assert!(parse_window("2,1").is_err());
        assert_eq!(parse_range("-2:2,0:1").unwrap(), vec![(-2, 2), (0, 1)]);
        assert!(parse_range("1").is_err());
    }

    #[test]
    fn error_classes() {
        assert_eq!(exit_code(&usage("x")), 2);
        assert_eq!(exit_code(&anyhow!(Error::InvalidInput("x".into()))), 2);
        assert_eq!(exit_code(&anyhow!(Error::NonPolynomial("x".into()))), 3);
        assert_eq!(
            exit_code(&anyhow!(Error::NonPolynomial("x".into())).context("in coha mul")),
            3
        );
    }
}
