//! Manifold records and catalogs (TOML).

use std::path::Path;

use bhclass::classify::Manifold4Data;
use bhclass::exactalg::{IntMatrix, IntRepr};
use bhclass::lattice::IntegralLattice;
use bhclass::Error;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// The catalog compiled into the binary.
pub const BUILTIN_CATALOG: &str = include_str!("../data/catalog.toml");

/// Serialized form of [`Manifold4Data`] plus free-text provenance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifoldRecord {
    pub name: String,
    /// Intersection form, one inner list per row.
    pub gram: Vec<Vec<IntRepr>>,
    pub h1_rank: usize,
    pub h1_torsion: Vec<IntRepr>,
    /// Derived from `h1_rank` and `h1_torsion` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h1_mod2_rank: Option<usize>,
    pub orientable: bool,
    pub spin: bool,
    pub simply_connected: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suspension_retracts: Option<bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub summands: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

fn ints(v: &[IntRepr], what: &str) -> Result<Vec<BigInt>, Error> {
    v.iter()
        .cloned()
        .map(BigInt::try_from)
        .collect::<Result<_, _>>()
        .map_err(|e| Error::InvalidManifold(format!("{what}: {e}")))
}

impl ManifoldRecord {
    /// Validates every invariant of [`Manifold4Data`].
    pub fn to_data(&self) -> Result<Manifold4Data, Error> {
        let n = self.gram.len();
        let mut entries = Vec::with_capacity(n * n);
        for (r, row) in self.gram.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidManifold(format!(
                    "gram row {r} has {} entries, expected {n} (the matrix must be square)",
                    row.len()
                )));
            }
            entries.extend(ints(row, "gram")?);
        }
        let lattice = IntegralLattice::new(IntMatrix::from_vec(n, n, entries)?)?;
        let h1_torsion = ints(&self.h1_torsion, "h1_torsion")?;
        let h1_mod2_rank = self
            .h1_mod2_rank
            .unwrap_or_else(|| Manifold4Data::derived_h1_mod2_rank(self.h1_rank, &h1_torsion));
        let m = Manifold4Data {
            name: self.name.clone(),
            lattice,
            h1_rank: self.h1_rank,
            h1_torsion,
            h1_mod2_rank,
            orientable: self.orientable,
            spin: self.spin,
            simply_connected: self.simply_connected,
            suspension_retracts: self.suspension_retracts,
            summands: self.summands.clone(),
        };
        m.validate()?;
        Ok(m)
    }

    pub fn from_data(m: &Manifold4Data, provenance: Option<String>) -> Self {
        ManifoldRecord {
            name: m.name.clone(),
            gram: m
                .lattice
                .gram()
                .to_rows()
                .iter()
                .map(|r| r.iter().map(IntRepr::from).collect())
                .collect(),
            h1_rank: m.h1_rank,
            h1_torsion: m.h1_torsion.iter().map(IntRepr::from).collect(),
            h1_mod2_rank: Some(m.h1_mod2_rank),
            orientable: m.orientable,
            spin: m.spin,
            simply_connected: m.simply_connected,
            suspension_retracts: m.suspension_retracts,
            summands: m.summands.clone(),
            provenance,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Catalog {
    #[serde(default)]
    pub manifold: Vec<ManifoldRecord>,
}

/// A record together with its validated data.
#[derive(Clone, Debug)]
pub struct Entry {
    pub record: ManifoldRecord,
    pub data: Manifold4Data,
}

impl Catalog {
    pub fn builtin() -> Self {
        Self::parse(BUILTIN_CATALOG).expect("built-in catalog is valid")
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::input(format!("catalog: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("catalog serializes")
    }

    /// Validates every record, or the ones named (in the order given).
    pub fn entries(&self, names: &[String]) -> Result<Vec<Entry>, CliError> {
        let selected: Vec<&ManifoldRecord> = if names.is_empty() {
            self.manifold.iter().collect()
        } else {
            names
                .iter()
                .map(|n| {
                    self.manifold
                        .iter()
                        .find(|r| &r.name == n)
                        .ok_or_else(|| CliError::input(format!("no manifold named {n:?} in the catalog")))
                })
                .collect::<Result<_, _>>()?
        };
        let mut seen = std::collections::BTreeSet::new();
        for r in &self.manifold {
            if !seen.insert(&r.name) {
                return Err(CliError::input(format!("duplicate manifold name {:?}", r.name)));
            }
        }
        selected
            .into_iter()
            .map(|r| {
                let data = r
                    .to_data()
                    .map_err(|e| CliError::from(e).context(&format!("record {:?}", r.name)))?;
                Ok(Entry {
                    record: r.clone(),
                    data,
                })
            })
            .collect()
    }
}

/// Parses a matrix written as `[[a,b],[c,d]]`.
pub fn parse_gram(s: &str) -> Result<Vec<Vec<IntRepr>>, CliError> {
    serde_json::from_str(s).map_err(|e| CliError::input(format!("cannot parse matrix {s:?}: {e}")))
}

/// A simply-connected record from a bare Gram matrix; spin follows the parity.
pub fn adhoc_record(gram: Vec<Vec<IntRepr>>) -> ManifoldRecord {
    let even = gram
        .iter()
        .enumerate()
        .all(|(i, row)| match row.get(i) {
            Some(IntRepr::Small(v)) => v % 2 == 0,
            Some(IntRepr::Big(s)) => s.ends_with(['0', '2', '4', '6', '8']),
            None => true,
        });
    ManifoldRecord {
        name: "adhoc".into(),
        gram,
        h1_rank: 0,
        h1_torsion: Vec::new(),
        h1_mod2_rank: None,
        orientable: true,
        spin: even,
        simply_connected: true,
        suspension_retracts: None,
        summands: Vec::new(),
        provenance: Some("given on the command line".into()),
    }
}
