//! Expansion basis families.

use crate::error::{Error, Result};
use crate::specfun::HermiteKind;

/// Which family of global basis functions a matrix or solve works in.
///
/// `Overscaled` is the e^{-x²}-weighted family (orthogonal under e^{x²}),
/// `Normalized` the e^{-x²/2}-weighted orthonormal Hermite functions, and
/// `Lagrange` the cardinal functions on the Gauss-Hermite nodes built from
/// the normalized family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasisKind {
    Overscaled,
    Normalized,
    Lagrange,
}

impl BasisKind {
    /// Pointwise-evaluable Hermite kind, if the basis has one.
    /// Lagrange cardinals need the whole node set, so they have none.
    pub fn hermite_kind(self) -> Option<HermiteKind> {
        match self {
            BasisKind::Overscaled => Some(HermiteKind::Overscaled),
            BasisKind::Normalized => Some(HermiteKind::Normalized),
            BasisKind::Lagrange => None,
        }
    }

    pub fn parse(s: &str) -> Result<BasisKind> {
        match s {
            "overscaled" => Ok(BasisKind::Overscaled),
            "normalized" => Ok(BasisKind::Normalized),
            "lagrange" => Ok(BasisKind::Lagrange),
            other => Err(Error::Usage(format!(
                "unknown basis '{other}' (expected overscaled|normalized|lagrange)"
            ))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BasisKind::Overscaled => "overscaled",
            BasisKind::Normalized => "normalized",
            BasisKind::Lagrange => "lagrange",
        }
    }
}

impl std::fmt::Display for BasisKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}
