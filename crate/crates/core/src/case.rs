use std::fmt;
use std::str::FromStr;

use serde::Serialize;

/// Shape of the quadratic algebra attached to `S`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LCase {
    Inert,
    Ramified,
    Split,
}

impl LCase {
    pub const ALL: [LCase; 3] = [LCase::Inert, LCase::Ramified, LCase::Split];

    /// The Legendre symbol: -1, 0 or 1.
    pub fn symbol(self) -> i64 {
        match self {
            LCase::Inert => -1,
            LCase::Ramified => 0,
            LCase::Split => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LCase::Inert => "inert",
            LCase::Ramified => "ramified",
            LCase::Split => "split",
        }
    }
}

impl fmt::Display for LCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LCase {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        LCase::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown case {s:?}"))
    }
}
