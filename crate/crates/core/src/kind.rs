use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// The monoids studied here. `Di` is the ambient dihedral inverse monoid; the
/// other three are its order-preserving, monotone and orientation-preserving
/// submonoids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonoidKind {
    Di,
    Odi,
    Mdi,
    Opdi,
}

impl MonoidKind {
    /// The three submonoids with cardinality, Green's and rank results.
    pub const SUBMONOIDS: [MonoidKind; 3] = [MonoidKind::Odi, MonoidKind::Mdi, MonoidKind::Opdi];

    pub fn token(self) -> &'static str {
        match self {
            MonoidKind::Di => "di",
            MonoidKind::Odi => "odi",
            MonoidKind::Mdi => "mdi",
            MonoidKind::Opdi => "opdi",
        }
    }
}

impl fmt::Display for MonoidKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            MonoidKind::Di => "DI",
            MonoidKind::Odi => "ODI",
            MonoidKind::Mdi => "MDI",
            MonoidKind::Opdi => "OPDI",
        };
        f.write_str(name)
    }
}

impl FromStr for MonoidKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "di" => Ok(MonoidKind::Di),
            "odi" => Ok(MonoidKind::Odi),
            "mdi" => Ok(MonoidKind::Mdi),
            "opdi" => Ok(MonoidKind::Opdi),
            _ => Err(Error::Parse {
                what: "monoid kind",
                input: s.to_string(),
            }),
        }
    }
}
