//! Low-degree Atiyah–Hirzebruch spectral sequence bookkeeping for
//! `Ω_*(X × BO⟨5⟩)` over torsion-free bases `X`.
//!
//! Only the `E²` page and the one tabulated differential
//! `d: E²_{8,0} → E²_{6,1}` over `CP^∞` are modelled; everything else is an
//! upper bound.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::FgAbGroup;
use crate::tables::GroupTable;

/// Largest total degree for which `E²` lines may be requested.
pub const MAX_TOTAL_DEGREE: u32 = 8;

/// Number of coefficient groups in a row (`j = 0..=7`).
pub const ROW_LEN: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SpaceDescriptor {
    Point,
    Sphere(u32),
    /// `CP^n`, or `CP^∞` for `None`.
    ComplexProjective(Option<u32>),
}

impl SpaceDescriptor {
    /// Integral homology; all supported spaces are torsion-free.
    pub fn homology(&self, i: u32) -> FgAbGroup {
        let rank = match *self {
            SpaceDescriptor::Point => usize::from(i == 0),
            SpaceDescriptor::Sphere(0) => {
                if i == 0 {
                    2
                } else {
                    0
                }
            }
            SpaceDescriptor::Sphere(k) => usize::from(i == 0 || i == k),
            SpaceDescriptor::ComplexProjective(n) => {
                usize::from(i.is_multiple_of(2) && n.is_none_or(|n| i <= 2 * n))
            }
        };
        FgAbGroup::free(rank)
    }
}

impl fmt::Display for SpaceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceDescriptor::Point => f.write_str("pt"),
            SpaceDescriptor::Sphere(k) => write!(f, "S^{k}"),
            SpaceDescriptor::ComplexProjective(None) => f.write_str("CP^inf"),
            SpaceDescriptor::ComplexProjective(Some(n)) => write!(f, "CP^{n}"),
        }
    }
}

impl FromStr for SpaceDescriptor {
    type Err = Error;

    /// Accepts `pt`, `S2`, `S^2`, `S²`, `CPinf`, `CP^∞`, `CP3`, ...
    fn from_str(s: &str) -> Result<Self> {
        let flat: String = s
            .trim()
            .chars()
            .filter(|c| !matches!(c, '^' | '_' | '{' | '}'))
            .map(|c| match "⁰¹²³⁴⁵⁶⁷⁸⁹".chars().position(|d| d == c) {
                Some(d) => char::from(b'0' + d as u8),
                None => c,
            })
            .collect();
        let unsupported = || Error::Unsupported(format!("space {s:?} (supported: pt, S<k>, CP<n>, CPinf)"));
        let lower = flat.to_ascii_lowercase();
        if lower == "pt" || lower == "point" {
            return Ok(SpaceDescriptor::Point);
        }
        if let Some(rest) = lower.strip_prefix("cp") {
            if matches!(rest, "inf" | "infinity" | "∞") {
                return Ok(SpaceDescriptor::ComplexProjective(None));
            }
            return rest
                .parse()
                .map(|n| SpaceDescriptor::ComplexProjective(Some(n)))
                .map_err(|_| unsupported());
        }
        if let Some(rest) = lower.strip_prefix('s') {
            return rest.parse().map(SpaceDescriptor::Sphere).map_err(|_| unsupported());
        }
        Err(unsupported())
    }
}

/// Coefficient groups `G_0, ..., G_7` (bordism or homotopy groups), each
/// with a source.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoefficientRow {
    name: String,
    groups: Vec<FgAbGroup>,
    sources: Vec<String>,
}

impl CoefficientRow {
    pub fn new(name: impl Into<String>, groups: Vec<FgAbGroup>, sources: Vec<String>) -> Result<Self> {
        if groups.len() != ROW_LEN || sources.len() != ROW_LEN {
            return Err(Error::DimensionMismatch {
                expected: ROW_LEN,
                found: groups.len().min(sources.len()),
            });
        }
        Ok(CoefficientRow {
            name: name.into(),
            groups,
            sources,
        })
    }

    /// The row `key(0), ..., key(7)` read from a table.
    pub fn from_table(table: &GroupTable, name: &str, key: impl Fn(usize) -> String) -> Result<Self> {
        let mut groups = Vec::with_capacity(ROW_LEN);
        let mut sources = Vec::with_capacity(ROW_LEN);
        for j in 0..ROW_LEN {
            let e = table.lookup_str(&key(j))?;
            groups.push(e.value.clone());
            sources.push(e.source.clone());
        }
        Self::new(name, groups, sources)
    }

    /// `Ω_j(BO⟨5⟩)`.
    pub fn bordism_bo5(table: &GroupTable) -> Result<Self> {
        Self::from_table(table, "Omega_*(BO<5>)", |j| format!("Omega_{j}(BO<5>)"))
    }

    /// `π_j(F)` for the fiber `F` of `BO⟨5⟩ → BO`.
    pub fn fiber_bo5(table: &GroupTable) -> Result<Self> {
        Self::from_table(table, "pi_*(F)", |j| format!("pi_{j}(F)"))
    }

    pub fn zero(name: impl Into<String>) -> Self {
        CoefficientRow {
            name: name.into(),
            groups: vec![FgAbGroup::trivial(); ROW_LEN],
            sources: vec!["zero row".into(); ROW_LEN],
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn groups(&self) -> &[FgAbGroup] {
        &self.groups
    }

    pub fn sources(&self) -> &[String] {
        &self.sources
    }

    pub fn get(&self, j: u32) -> Option<&FgAbGroup> {
        self.groups.get(j as usize)
    }
}

/// Entries `(i, j) → E_{i,j}` on the total degrees of a window.
///
/// Entries with `j` past the end of the coefficient row are listed in
/// `unknown` rather than assumed trivial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AhssPage {
    pub space: SpaceDescriptor,
    pub degrees: Vec<u32>,
    #[serde(serialize_with = "serialize_entries")]
    pub entries: BTreeMap<(u32, u32), FgAbGroup>,
    pub unknown: Vec<(u32, u32)>,
}

fn serialize_entries<S: serde::Serializer>(
    m: &BTreeMap<(u32, u32), FgAbGroup>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(m.len()))?;
    for ((i, j), g) in m {
        seq.serialize_element(&(i, j, g))?;
    }
    seq.end()
}

impl AhssPage {
    pub fn get(&self, i: u32, j: u32) -> Option<&FgAbGroup> {
        self.entries.get(&(i, j))
    }

    /// Nontrivial entries on the line `i + j = n`, by increasing `i`.
    pub fn nontrivial_on_line(&self, n: u32) -> Vec<((u32, u32), &FgAbGroup)> {
        self.entries
            .iter()
            .filter(|((i, j), g)| i + j == n && !g.is_trivial())
            .map(|(&k, g)| (k, g))
            .collect()
    }
}

/// `E²_{i,j} = H_i(X; G_j)` for total degrees `n-1, n, n+1`.
pub fn e2_page(x: SpaceDescriptor, row: &CoefficientRow, total_degree: u32) -> Result<AhssPage> {
    if total_degree > MAX_TOTAL_DEGREE {
        return Err(Error::Precondition(format!(
            "total degree {total_degree} exceeds the supported window (≤ {MAX_TOTAL_DEGREE})"
        )));
    }
    let degrees: Vec<u32> = (total_degree.saturating_sub(1)..=total_degree + 1).collect();
    let mut entries = BTreeMap::new();
    let mut unknown = Vec::new();
    for &n in &degrees {
        for i in 0..=n {
            let j = n - i;
            let h = x.homology(i);
            match row.get(j) {
                // free homology: universal coefficients have no Tor term
                Some(g) => {
                    entries.insert((i, j), h.tensor(g));
                }
                None if h.is_trivial() => {
                    entries.insert((i, j), FgAbGroup::trivial());
                }
                None => unknown.push((i, j)),
            }
        }
    }
    Ok(AhssPage {
        space: x,
        degrees,
        entries,
        unknown,
    })
}

/// Coefficient of the dual of `Sq²: H^{2k}(CP^∞; Z_2) → H^{2k+2}(CP^∞; Z_2)`,
/// read off the total square `Sq(a^k) = (a + a²)^k` by the Cartan formula.
pub fn sq2_dual_cp(k: u32) -> Result<u8> {
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    // coefficients of (1 + a)^k over F_2, truncated past a^1
    let mut poly = vec![true];
    for _ in 0..k {
        let mut next = vec![false; (poly.len() + 1).min(2)];
        for (d, &c) in poly.iter().enumerate() {
            if c {
                next[d] ^= true;
                if d + 1 < next.len() {
                    next[d + 1] ^= true;
                }
            }
        }
        poly = next;
    }
    // a^k (1+a)^k: the a^{k+1} coefficient is that of a^1 in (1+a)^k
    Ok(u8::from(poly.get(1).copied().unwrap_or(false)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AppliedDifferential {
    pub source: (u32, u32),
    pub target: (u32, u32),
    pub surjective: bool,
    pub description: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "group", rename_all = "kebab-case")]
pub enum Degree7Conclusion {
    /// The degree-7 group vanishes.
    Vanishes,
    /// The degree-7 group is filtered with subquotients of the listed
    /// survivors; with one survivor it is a quotient of a subgroup of it
    /// (a quotient, for cyclic survivors).
    BoundedBy(Vec<FgAbGroup>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Degree7Report {
    pub page: AhssPage,
    pub differentials: Vec<AppliedDifferential>,
    /// Entries of the degree-7 line not killed by a known differential.
    #[serde(serialize_with = "serialize_survivors")]
    pub surviving: Vec<((u32, u32), FgAbGroup)>,
    pub conclusion: Degree7Conclusion,
    pub notes: Vec<String>,
}

fn serialize_survivors<S: serde::Serializer>(
    v: &[((u32, u32), FgAbGroup)],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for ((i, j), g) in v {
        seq.serialize_element(&(i, j, g))?;
    }
    seq.end()
}

impl Degree7Report {
    pub fn conclusion_text(&self) -> String {
        let sp = self.page.space;
        match &self.conclusion {
            Degree7Conclusion::Vanishes => format!("Ω₇({sp}×BO⟨5⟩)=0"),
            Degree7Conclusion::BoundedBy(_) => {
                let killed: Vec<String> = self
                    .differentials
                    .iter()
                    .filter(|d| d.surjective)
                    .map(|d| {
                        let (i, j) = d.target;
                        let g = self.page.get(i, j).map(|g| g.to_string()).unwrap_or_default();
                        format!("E²_{{{i},{j}}}={g} killed")
                    })
                    .collect();
                let bounds: Vec<String> = self
                    .surviving
                    .iter()
                    .map(|((i, j), g)| format!("E_{{{i},{j}}}={g}"))
                    .collect();
                let mut parts = killed;
                parts.push(format!("{} upper bound", bounds.join(", ")));
                parts.join("; ")
            }
        }
    }
}

/// The degree-7 line of `Ω_*(X × BO⟨5⟩)` after the differentials known here.
pub fn degree7_after_known_differentials(
    x: SpaceDescriptor,
    row: &CoefficientRow,
) -> Result<Degree7Report> {
    if !matches!(
        x,
        SpaceDescriptor::Sphere(2) | SpaceDescriptor::ComplexProjective(None)
    ) {
        return Err(Error::Unsupported(format!(
            "degree-7 analysis over {x} (supported: S^2, CP^inf)"
        )));
    }
    let page = e2_page(x, row, 7)?;
    let mut differentials = Vec::new();
    let mut notes = Vec::new();
    let mut killed = Vec::new();

    if x == SpaceDescriptor::ComplexProjective(None) {
        let shape = row.get(0) == Some(&FgAbGroup::integers()) && row.get(1) == Some(&FgAbGroup::cyclic(2));
        if shape {
            let c = sq2_dual_cp(3)?;
            let surjective = c == 1;
            differentials.push(AppliedDifferential {
                source: (8, 0),
                target: (6, 1),
                surjective,
                description: format!(
                    "d: E²_{{8,0}}=Z → E²_{{6,1}}=Z_2 is reduction mod 2 followed by the dual of Sq² on H_8(CP^∞; Z_2) (coefficient {c})"
                ),
            });
            if surjective {
                killed.push((6, 1));
            }
            notes.push(
                "the d² differential out of the bottom row is reduction mod 2 composed with the dual of Sq² (Teichner 1993)"
                    .into(),
            );
        } else {
            notes.push("coefficient row is not (Z, Z_2, ...) in degrees 0, 1: no differential applied".into());
        }
    }
    notes.push("higher differentials are not modelled; nonzero survivors are upper bounds".into());

    let surviving: Vec<((u32, u32), FgAbGroup)> = page
        .nontrivial_on_line(7)
        .into_iter()
        .filter(|(k, _)| !killed.contains(k))
        .map(|(k, g)| (k, g.clone()))
        .collect();
    let unknown_on_line = page.unknown.iter().any(|(i, j)| i + j == 7);
    if unknown_on_line {
        return Err(Error::Invariant("degree-7 line has entries outside the coefficient row".into()));
    }
    let conclusion = if surviving.is_empty() {
        Degree7Conclusion::Vanishes
    } else {
        Degree7Conclusion::BoundedBy(surviving.iter().map(|(_, g)| g.clone()).collect())
    };
    Ok(Degree7Report {
        page,
        differentials,
        surviving,
        conclusion,
        notes,
    })
}

/// `H_{4-i}(N) ⊗ π_i(F)` for `i = 0..=4`, for torsion-free `H_*(N)`
/// given in degrees 0..=4.
pub fn obstruction_groups(base_homology: &[FgAbGroup], fiber_row: &CoefficientRow) -> Result<Vec<FgAbGroup>> {
    if base_homology.len() != 5 {
        return Err(Error::DimensionMismatch {
            expected: 5,
            found: base_homology.len(),
        });
    }
    if let Some((k, g)) = base_homology.iter().enumerate().find(|(_, g)| !g.torsion().is_empty()) {
        return Err(Error::Unsupported(format!(
            "base homology H_{k} = {g} has torsion; Tor terms are not computed"
        )));
    }
    Ok((0..=4u32)
        .map(|i| {
            let h = &base_homology[(4 - i) as usize];
            h.tensor(fiber_row.get(i).expect("row has 8 entries"))
        })
        .collect())
}
