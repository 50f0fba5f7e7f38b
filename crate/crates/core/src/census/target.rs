use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use super::format::read_matroid;
use crate::error::{Error, Result};
use crate::matroid::SparsePavingMatroid;
use crate::minors::{common_core_lines, disjoint_lines, uniform, whirl3};

/// A named target minor, as written on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    /// `u:t:k`
    Uniform(usize, usize),
    /// `whirl3`
    Whirl3,
    /// `disjoint:r:k`
    Disjoint(usize, usize),
    /// `core:r:k`
    Core(usize, usize),
    /// `file:<path>`
    File(PathBuf),
}

impl Target {
    pub fn matroid(&self) -> Result<SparsePavingMatroid> {
        match self {
            Target::Uniform(t, k) => uniform(*t, *k),
            Target::Whirl3 => Ok(whirl3()),
            Target::Disjoint(r, k) => disjoint_lines(*r, *k),
            Target::Core(r, k) => common_core_lines(*r, *k),
            Target::File(path) => read_matroid(path),
        }
    }
}

fn two_numbers(spec: &str, rest: &str) -> Result<(usize, usize)> {
    let unknown = || Error::UnknownTarget(spec.to_string());
    let (a, b) = rest.split_once(':').ok_or_else(unknown)?;
    Ok((
        a.parse().map_err(|_| unknown())?,
        b.parse().map_err(|_| unknown())?,
    ))
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        if spec == "whirl3" {
            return Ok(Target::Whirl3);
        }
        if let Some(path) = spec.strip_prefix("file:") {
            return Ok(Target::File(PathBuf::from(path)));
        }
        let (kind, rest) = spec
            .split_once(':')
            .ok_or_else(|| Error::UnknownTarget(spec.to_string()))?;
        let (a, b) = two_numbers(spec, rest)?;
        match kind {
            "u" => Ok(Target::Uniform(a, b)),
            "disjoint" => Ok(Target::Disjoint(a, b)),
            "core" => Ok(Target::Core(a, b)),
            _ => Err(Error::UnknownTarget(spec.to_string())),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Uniform(t, k) => write!(f, "u:{t}:{k}"),
            Target::Whirl3 => f.write_str("whirl3"),
            Target::Disjoint(r, k) => write!(f, "disjoint:{r}:{k}"),
            Target::Core(r, k) => write!(f, "core:{r}:{k}"),
            Target::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}
