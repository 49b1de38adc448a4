//! Tabulated homotopy and bordism groups, and the range of `n` for which the
//! action of `E^{n+3}(S^n)` is known to be nontrivial.
//!
//! The data lives in a TOML file (`data/tables.toml` is compiled in); every
//! value handed out comes from that file.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{FgAbGroup, GroupRepr, IntRepr};
use crate::verdict::Finding;

/// The table shipped with the library.
pub const BUILTIN_TABLE: &str = include_str!("../data/tables.toml");

/// Data-file format version understood by [`GroupTable::from_toml`].
pub const TABLE_VERSION: u32 = 1;

/// Structured table key: `pi_4(G_3,SO_3)`, `pi_3^S`, `E^7(S^4)`,
/// `Omega_3(BO<5>)`, ...
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TableKey {
    pub symbol: Symbol,
    pub index: u32,
    /// Stable (`^S`) decoration.
    pub stable: bool,
    /// Canonical factor names, e.g. `["G_3", "SO_3"]`.
    pub space: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    /// Homotopy group `pi_n`.
    Pi,
    /// Embedding group `E^m`.
    E,
    /// Bordism group `Omega_n`.
    Omega,
}

impl fmt::Display for TableKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.symbol {
            Symbol::Pi => write!(f, "pi_{}", self.index)?,
            Symbol::E => write!(f, "E^{}", self.index)?,
            Symbol::Omega => write!(f, "Omega_{}", self.index)?,
        }
        if self.stable {
            f.write_str("^S")?;
        }
        if !self.space.is_empty() {
            write!(f, "({})", self.space.join(","))?;
        }
        Ok(())
    }
}

/// Replaces unicode notation with ASCII and drops `_ ^ { }`, so that
/// `π₄(G₃,SO₃)`, `pi_4(G_3,SO_3)` and `pi4(G3,SO3)` coincide.
fn flatten(s: &str) -> String {
    const SUB: &str = "₀₁₂₃₄₅₆₇₈₉";
    const SUP: &str = "⁰¹²³⁴⁵⁶⁷⁸⁹";
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        if let Some(d) = SUB.chars().position(|c| c == ch) {
            out.push(char::from(b'0' + d as u8));
        } else if let Some(d) = SUP.chars().position(|c| c == ch) {
            out.push(char::from(b'0' + d as u8));
        } else {
            match ch {
                'π' => out.push_str("pi"),
                'Ω' => out.push_str("Omega"),
                '⟨' => out.push('<'),
                '⟩' => out.push('>'),
                'ˢ' => out.push('S'),
                '_' | '^' | '{' | '}' => {}
                c => out.push(c),
            }
        }
    }
    out
}

fn parse_factor(raw: &str) -> Result<String> {
    let f = raw.trim();
    let letters: String = f.chars().take_while(|c| c.is_ascii_alphabetic()).collect();
    let rest = &f[letters.len()..];
    if letters.is_empty() {
        return Err(Error::Precondition(format!("bad space {raw:?} in table key")));
    }
    if rest.is_empty() {
        return Ok(letters);
    }
    if let Some(inner) = rest.strip_prefix('<').and_then(|r| r.strip_suffix('>')) {
        let k: u32 = inner
            .parse()
            .map_err(|_| Error::Precondition(format!("bad connectivity in {raw:?}")))?;
        return Ok(format!("{letters}<{k}>"));
    }
    let k: u32 = rest
        .parse()
        .map_err(|_| Error::Precondition(format!("bad space {raw:?} in table key")))?;
    Ok(if letters == "S" {
        format!("S^{k}")
    } else {
        format!("{letters}_{k}")
    })
}

impl FromStr for TableKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let flat = flatten(s.trim());
        let bad = || Error::Precondition(format!("cannot parse table key {s:?}"));
        let (symbol, rest) = if let Some(r) = flat.strip_prefix("pi").or_else(|| flat.strip_prefix("Pi")) {
            (Symbol::Pi, r)
        } else if let Some(r) = flat
            .strip_prefix("Omega")
            .or_else(|| flat.strip_prefix("omega"))
        {
            (Symbol::Omega, r)
        } else if let Some(r) = flat.strip_prefix('E') {
            (Symbol::E, r)
        } else {
            return Err(bad());
        };
        let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
        let index: u32 = digits.parse().map_err(|_| bad())?;
        let mut rest = &rest[digits.len()..];

        let mut stable = false;
        if let Some(r) = rest.strip_prefix('S') {
            if r.trim().is_empty() {
                stable = true;
                rest = r;
            }
        }
        let rest = rest.trim();
        let inner = match rest.strip_prefix('(') {
            Some(r) => r.strip_suffix(')').ok_or_else(bad)?,
            None => rest,
        };
        let space = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner.split(',').map(parse_factor).collect::<Result<_>>()?
        };
        if stable && !space.is_empty() {
            return Err(bad());
        }
        Ok(TableKey {
            symbol,
            index,
            stable,
            space,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTableEntry {
    pub key: TableKey,
    pub value: FgAbGroup,
    pub source: String,
}

/// Range data for the nontriviality of the `E^{n+3}(S^n)` action.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Theorem35Data {
    pub max_n: u32,
    pub exceptions: Vec<u32>,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    entries: BTreeMap<TableKey, GroupTableEntry>,
    theorem35: Theorem35Data,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTable {
    version: u32,
    theorem35: Theorem35Data,
    #[serde(default)]
    entry: Vec<RawEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    key: String,
    free_rank: usize,
    torsion: Vec<IntRepr>,
    source: String,
}

impl GroupTable {
    pub fn builtin() -> Self {
        Self::from_toml(BUILTIN_TABLE).expect("built-in table is valid")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::TableFormat(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let raw: RawTable = toml::from_str(text).map_err(|e| Error::TableFormat(e.to_string()))?;
        if raw.version != TABLE_VERSION {
            return Err(Error::TableFormat(format!(
                "unsupported table version {} (expected {TABLE_VERSION})",
                raw.version
            )));
        }
        if raw.theorem35.source.trim().is_empty() {
            return Err(Error::TableFormat("theorem35 has no source".into()));
        }
        if raw.theorem35.max_n < 3 {
            return Err(Error::TableFormat("theorem35.max_n must be at least 3".into()));
        }
        let mut entries = BTreeMap::new();
        for e in raw.entry {
            let key: TableKey = e
                .key
                .parse()
                .map_err(|err| Error::TableFormat(format!("entry {:?}: {err}", e.key)))?;
            if e.source.trim().is_empty() {
                return Err(Error::TableFormat(format!("entry {key} has no source")));
            }
            let value = FgAbGroup::try_from(GroupRepr {
                free_rank: e.free_rank,
                torsion: e.torsion,
            })
            .map_err(|err| Error::TableFormat(format!("entry {key}: {err}")))?;
            let entry = GroupTableEntry {
                key: key.clone(),
                value,
                source: e.source,
            };
            if entries.insert(key.clone(), entry).is_some() {
                return Err(Error::TableFormat(format!("duplicate entry {key}")));
            }
        }
        Ok(GroupTable {
            entries,
            theorem35: raw.theorem35,
        })
    }

    /// Serializes back to the data-file format, entries in key order.
    pub fn to_toml(&self) -> String {
        let raw = RawTable {
            version: TABLE_VERSION,
            theorem35: self.theorem35.clone(),
            entry: self
                .entries
                .values()
                .map(|e| {
                    let repr = GroupRepr::from(e.value.clone());
                    RawEntry {
                        key: e.key.to_string(),
                        free_rank: repr.free_rank,
                        torsion: repr.torsion,
                        source: e.source.clone(),
                    }
                })
                .collect(),
        };
        toml::to_string(&raw).expect("table serializes")
    }

    pub fn lookup(&self, key: &TableKey) -> Result<&GroupTableEntry> {
        self.entries
            .get(key)
            .ok_or_else(|| Error::NotTabulated(key.to_string()))
    }

    /// Parses `key` and looks it up.
    pub fn lookup_str(&self, key: &str) -> Result<&GroupTableEntry> {
        self.lookup(&key.parse()?)
    }

    pub fn entries(&self) -> impl Iterator<Item = &GroupTableEntry> {
        self.entries.values()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn theorem35(&self) -> &Theorem35Data {
        &self.theorem35
    }

    /// Whether the action of `E^{n+3}(S^n)` on `E^{n+3}(N)` is known to be
    /// nontrivial. Undetermined beyond the tabulated range.
    pub fn theorem35_nontrivial_action(&self, n: u32) -> Result<Finding> {
        if n < 3 {
            return Err(Error::Precondition(format!("n = {n} is below the range n ≥ 3")));
        }
        let t = &self.theorem35;
        Ok(if n > t.max_n {
            Finding::undetermined(format!("n = {n} lies beyond the tabulated range n ≤ {}", t.max_n))
        } else if t.exceptions.contains(&n) {
            Finding::no(format!(
                "n = {n} is an exception {:?} in 3 ≤ n ≤ {} ({})",
                t.exceptions, t.max_n, t.source
            ))
        } else {
            Finding::yes(format!(
                "3 ≤ n = {n} ≤ {} and n ∉ {:?} ({})",
                t.max_n, t.exceptions, t.source
            ))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verdict::Verdict;

    fn key(s: &str) -> String {
        s.parse::<TableKey>().unwrap().to_string()
    }

    #[test]
    fn key_syntax() {
        assert_eq!(key("pi_4(G_3,SO_3)"), "pi_4(G_3,SO_3)");
        assert_eq!(key("π₄(G₃,SO₃)"), "pi_4(G_3,SO_3)");
        assert_eq!(key("pi4 (G3, SO3)"), "pi_4(G_3,SO_3)");
        assert_eq!(key("E7 S4"), "E^7(S^4)");
        assert_eq!(key("E^7(S^4)"), "E^7(S^4)");
        assert_eq!(key("E⁷(S⁴)"), "E^7(S^4)");
        assert_eq!(key("pi6 S2"), "pi_6(S^2)");
        assert_eq!(key("pi_3^S"), "pi_3^S");
        assert_eq!(key("π₃ˢ"), "pi_3^S");
        assert_eq!(key("Omega_3(BO<5>)"), "Omega_3(BO<5>)");
        assert_eq!(key("Ω₃(BO⟨5⟩)"), "Omega_3(BO<5>)");
        assert_eq!(key("pi_1(F)"), "pi_1(F)");
        for bad in ["", "x3", "pi", "pi_3(", "E7 (S4", "pi3S(S2)", "pi_3(2)"] {
            assert!(bad.parse::<TableKey>().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn builtin_values() {
        let t = GroupTable::builtin();
        let v = |k: &str| t.lookup_str(k).unwrap().value.to_string();
        assert_eq!(v("pi_4(G_3,SO_3)"), "Z_12");
        assert_eq!(v("pi_3^S"), "Z_24");
        assert_eq!(v("E7 S4"), "Z_12");
        assert_eq!(v("E8 S5"), "Z_2");
        assert_eq!(v("E9 S6"), "0");
        assert_eq!(v("pi_4(G,SO)"), "Z");
        assert_eq!(v("pi_5(G,SO)"), "0");
        assert!(matches!(t.lookup_str("pi9 S2"), Err(Error::NotTabulated(_))));
        assert!(t.entries().all(|e| !e.source.is_empty()));
    }

    #[test]
    fn round_trip() {
        let t = GroupTable::builtin();
        let again = GroupTable::from_toml(&t.to_toml()).unwrap();
        assert_eq!(t, again);
    }

    #[test]
    fn rejects_malformed_tables() {
        let header = "version = 1\n[theorem35]\nmax_n = 19\nexceptions = []\nsource = \"s\"\n";
        let entry = |k: &str, f: usize, t: &str, s: &str| {
            format!("[[entry]]\nkey = \"{k}\"\nfree_rank = {f}\ntorsion = {t}\nsource = \"{s}\"\n")
        };
        assert!(GroupTable::from_toml(&format!("{header}{}", entry("pi_3^S", 0, "[24]", "x"))).is_ok());
        for body in [
            entry("pi_3^S", 0, "[3, 2]", "x"),
            entry("pi_3^S", 0, "[1]", "x"),
            entry("pi_3^S", 0, "[24]", ""),
            entry("nonsense", 0, "[]", "x"),
            format!("{}{}", entry("pi_3^S", 0, "[24]", "x"), entry("π₃ˢ", 0, "[24]", "y")),
        ] {
            assert!(GroupTable::from_toml(&format!("{header}{body}")).is_err(), "{body}");
        }
        assert!(GroupTable::from_toml(&header.replace("version = 1", "version = 2")).is_err());
    }

    #[test]
    fn theorem35_truth_table() {
        let t = GroupTable::builtin();
        for n in 3..=19 {
            let expected = if [6, 7, 9, 15].contains(&n) { Verdict::No } else { Verdict::Yes };
            assert_eq!(t.theorem35_nontrivial_action(n).unwrap().verdict, expected, "n = {n}");
        }
        assert_eq!(t.theorem35_nontrivial_action(20).unwrap().verdict, Verdict::Undetermined);
        assert!(t.theorem35_nontrivial_action(2).is_err());
    }
}
