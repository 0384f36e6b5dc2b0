use std::collections::BTreeMap;
use std::fmt::Display;

use bessel_scalar::Field;
use serde::Serialize;

use super::index::{vanishes, Tag, TowerIndex, Window};
use super::system::Solved;
use crate::catalog::BesselCharacter;

/// Values of one Bessel function on all representatives in a window.
#[derive(Clone, Debug, Serialize)]
pub struct TowerTable {
    pub window: Window,
    /// Values in canonical text form; vanishing indices hold `"0"`.
    #[serde(serialize_with = "entries")]
    pub values: BTreeMap<TowerIndex, String>,
}

impl TowerTable {
    /// The table of kernel vector `v`, component `comp`.
    pub fn from_vector<T: Field + Display>(s: &Solved<T>, v: &[T], comp: usize) -> Self {
        let mut values = BTreeMap::new();
        for idx in representatives(&s.window, &s.ch) {
            let val = if vanishes(&idx, &s.ch) { T::zero() } else { s.value(v, comp, &idx) };
            values.insert(idx, val.to_string());
        }
        TowerTable { window: s.window, values }
    }

    pub fn get(&self, idx: &TowerIndex) -> Option<&str> {
        self.values.get(idx).map(String::as_str)
    }

    /// CSV with header `l,m,w,value`, ordered by tag, then `m`, then `l`.
    pub fn to_csv(&self) -> String {
        let mut keys: Vec<&TowerIndex> = self.values.keys().collect();
        keys.sort_by_key(|k| (k.w, k.m, k.l));
        let mut out = String::from("l,m,w,value\n");
        for k in keys {
            let v = &self.values[k];
            let v = if v.contains(',') { format!("\"{v}\"") } else { v.clone() };
            out.push_str(&format!("{},{},{},{}\n", k.l, k.m, k.w, v));
        }
        out
    }

    /// Only the main tower.
    pub fn main_tower(&self) -> TowerTable {
        TowerTable {
            window: self.window,
            values: self.values.iter().filter(|(k, _)| k.w == Tag::E).map(|(k, v)| (*k, v.clone())).collect(),
        }
    }
}

#[derive(Serialize)]
struct Entry<'a> {
    l: i64,
    m: i64,
    w: Tag,
    value: &'a str,
}

fn entries<S: serde::Serializer>(v: &BTreeMap<TowerIndex, String>, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|(k, x)| Entry { l: k.l, m: k.m, w: k.w, value: x }))
}

/// Every representative `h(l,m) w` in the window with `l >= -1`.
pub fn representatives(w: &Window, ch: &BesselCharacter) -> Vec<TowerIndex> {
    let mut out = Vec::new();
    for &t in Tag::for_case(ch.case) {
        for m in 0..=w.m_max {
            for l in -1..=w.l_max {
                let idx = TowerIndex::new(l, m, t);
                if idx.is_representative(ch.case) {
                    out.push(idx);
                }
            }
        }
    }
    out
}
