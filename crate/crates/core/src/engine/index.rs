use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::case::LCase;
use crate::catalog::BesselCharacter;

/// Double-coset representative type: `h(l,m) w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Tag {
    /// `h(l,m)`
    E,
    /// `h(l,m) s2`
    S2,
    /// `h(l,m) s1 s2`
    S12,
    /// `h(l,m) s2 s1 s2`
    S212,
    /// `h(l,0) u0 s1 s2`, ramified case
    U0,
    /// `h(l,0) u1 s1 s2`, split case
    U1,
    /// `h(l,0) u2 s1 s2`, split case
    U2,
}

impl Tag {
    pub const ALL: [Tag; 7] = [Tag::E, Tag::S2, Tag::S12, Tag::S212, Tag::U0, Tag::U1, Tag::U2];

    pub fn name(self) -> &'static str {
        match self {
            Tag::E => "E",
            Tag::S2 => "S2",
            Tag::S12 => "S12",
            Tag::S212 => "S212",
            Tag::U0 => "U0",
            Tag::U1 => "U1",
            Tag::U2 => "U2",
        }
    }

    pub fn is_u(self) -> bool {
        matches!(self, Tag::U0 | Tag::U1 | Tag::U2)
    }

    /// Tags that occur as representatives in a case.
    pub fn for_case(case: LCase) -> &'static [Tag] {
        match case {
            LCase::Inert => &[Tag::E, Tag::S2, Tag::S12, Tag::S212],
            LCase::Ramified => &[Tag::E, Tag::S2, Tag::S12, Tag::S212, Tag::U0],
            LCase::Split => &[Tag::E, Tag::S2, Tag::S12, Tag::S212, Tag::U1, Tag::U2],
        }
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Tag {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Tag::ALL.into_iter().find(|t| t.name() == s).ok_or_else(|| format!("unknown tower tag {s:?}"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TowerIndex {
    pub l: i64,
    pub m: i64,
    pub w: Tag,
}

impl TowerIndex {
    pub const fn new(l: i64, m: i64, w: Tag) -> Self {
        TowerIndex { l, m, w }
    }

    /// Whether the index names one of the double-coset representatives:
    /// `m >= 0`, `h(l,m) s1 s2` only for `m >= 1` and the `u`-cosets only at
    /// `m = 0` in their case.
    pub fn is_representative(&self, case: LCase) -> bool {
        if self.m < 0 {
            return false;
        }
        match self.w {
            Tag::E | Tag::S2 | Tag::S212 => true,
            Tag::S12 => self.m >= 1,
            Tag::U0 => self.m == 0 && case == LCase::Ramified,
            Tag::U1 | Tag::U2 => self.m == 0 && case == LCase::Split,
        }
    }
}

impl fmt::Display for TowerIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({},{})", self.w, self.l, self.m)
    }
}

/// Automatic vanishing forced by the transformation law and the conductor.
pub fn vanishes(idx: &TowerIndex, ch: &BesselCharacter) -> bool {
    let m0 = ch.m0 as i64;
    let (l, m) = (idx.l, idx.m);
    match idx.w {
        Tag::E => l < 0 || m < m0,
        Tag::S2 => l < 0 || m < m0 - 1,
        Tag::S12 => l < -1,
        Tag::S212 => l < -1 || m < m0,
        Tag::U0 => m0 > 0 || l < -1,
        Tag::U1 | Tag::U2 => m0 > 0 || l < 0,
    }
}

/// Truncation window `0 <= m <= m_max`, `l <= l_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    pub l_max: i64,
    pub m_max: i64,
}

impl Window {
    pub fn new(l_max: i64, m_max: i64) -> Self {
        Window { l_max, m_max }
    }

    /// The default `(6, m0 + 6)`.
    pub fn default_for(m0: u32) -> Self {
        Window { l_max: 6, m_max: m0 as i64 + 6 }
    }

    pub fn contains(&self, idx: &TowerIndex) -> bool {
        idx.l <= self.l_max && idx.m <= self.m_max
    }

    /// Indices whose main-tower recursions stay inside the window.
    pub fn is_interior(&self, idx: &TowerIndex) -> bool {
        idx.l + 3 <= self.l_max && idx.m + 2 <= self.m_max
    }

    /// All representative, non-vanishing indices in the window, ordered.
    pub fn unknowns(&self, ch: &BesselCharacter) -> Vec<TowerIndex> {
        let mut out = Vec::new();
        for &w in Tag::for_case(ch.case) {
            for m in 0..=self.m_max {
                for l in -1..=self.l_max {
                    let idx = TowerIndex::new(l, m, w);
                    if idx.is_representative(ch.case) && !vanishes(&idx, ch) {
                        out.push(idx);
                    }
                }
            }
        }
        out
    }
}
