use bhclass::ahss::{
    degree7_after_known_differentials, e2_page, CoefficientRow, Degree7Report, SpaceDescriptor,
};
use bhclass::classify::{
    action_effective, action_trivial, action_trivial_for_class, bh_image, classify_r7, cite, compressible,
    embeds_in_r6, embeds_in_r7, knot_table, BhImage, ClassificationReport, KnotTableAnswer, R6Report,
};
use bhclass::complement::{homology_of, pi3_of, wedge_form, ComplementModel};
use bhclass::exactalg::{FgAbGroup, IntRepr};
use bhclass::lattice::{divisibility, enumerate_characteristic, is_even, H2Class};
use bhclass::tables::GroupTable;
use bhclass::verdict::Finding;
use bhclass::Error;
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog::Entry;
use crate::{text, CliError, SCHEMA, SCHEMA_VERSION};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Machine,
}

/// A command result in both renderings.
#[derive(Clone, Debug, PartialEq)]
pub struct Rendered {
    pub document: Value,
    pub text: String,
}

impl Rendered {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Machine => {
                let mut s = serde_json::to_string_pretty(&self.document).expect("document serializes");
                s.push('\n');
                s
            }
        }
    }
}

fn envelope(command: &str, parameters: Value, results: Value) -> Value {
    json!({
        "schema": SCHEMA,
        "version": SCHEMA_VERSION,
        "command": command,
        "parameters": parameters,
        "results": results,
    })
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

/// A report section that may not apply to the input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Section<T> {
    Ok { value: T },
    NotApplicable { reason: String },
}

impl<T> Section<T> {
    pub fn ok(&self) -> Option<&T> {
        match self {
            Section::Ok { value } => Some(value),
            Section::NotApplicable { .. } => None,
        }
    }
}

/// Internal failures abort; any other error becomes a not-applicable section.
fn section<T>(r: bhclass::Result<T>) -> Result<Section<T>, CliError> {
    match r {
        Ok(value) => Ok(Section::Ok { value }),
        Err(e @ Error::Invariant(_)) => Err(e.into()),
        Err(e) => Ok(Section::NotApplicable { reason: e.to_string() }),
    }
}

pub struct ClassifyOptions {
    pub bound: u64,
    pub class: Option<H2Class>,
    pub reverse_orientation: bool,
    pub table: GroupTable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassQuery {
    pub class: H2Class,
    pub divisibility: IntRepr,
    pub pi3: FgAbGroup,
    pub action_trivial: Finding,
    pub compressible: bool,
    pub compressible_reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KnotRow {
    pub ambient: u32,
    pub answer: Section<KnotTableAnswer>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ManifoldReport {
    pub name: String,
    pub provenance: Option<String>,
    pub orientation: &'static str,
    pub rank: usize,
    pub signature: i64,
    pub even: bool,
    pub h1: FgAbGroup,
    pub orientable: bool,
    pub spin: bool,
    pub simply_connected: bool,
    pub embeds_r7: Finding,
    pub classification: Section<ClassificationReport>,
    pub action_trivial: Section<Finding>,
    pub action_effective: Section<Finding>,
    pub knots: Vec<KnotRow>,
    pub class_query: Option<Section<ClassQuery>>,
}

fn class_query(entry: &Entry, x: &H2Class) -> bhclass::Result<ClassQuery> {
    let m = &entry.data;
    let action = action_trivial_for_class(m, x)?;
    let comp = compressible(m, x)?;
    Ok(ClassQuery {
        class: x.clone(),
        divisibility: IntRepr::from(&divisibility(x)),
        pi3: pi3_of(&ComplementModel::new(x.clone())),
        action_trivial: action,
        compressible: comp,
        compressible_reason: cite::COMPRESSIBLE.into(),
    })
}

fn classify_one(entry: &Entry, opts: &ClassifyOptions) -> Result<ManifoldReport, CliError> {
    let mut entry = entry.clone();
    if opts.reverse_orientation {
        entry.data = entry.data.reversed();
    }
    let m = &entry.data;
    let knots = [8, 9]
        .into_iter()
        .map(|ambient| {
            Ok(KnotRow {
                ambient,
                answer: section(knot_table(ambient, 4, Some(m), &opts.table))?,
            })
        })
        .collect::<Result<_, CliError>>()?;
    Ok(ManifoldReport {
        name: m.name.clone(),
        provenance: entry.record.provenance.clone(),
        orientation: if opts.reverse_orientation { "reversed" } else { "as given" },
        rank: m.lattice.rank(),
        signature: m.signature()?,
        even: is_even(&m.lattice),
        h1: m.h1_group(),
        orientable: m.orientable,
        spin: m.spin,
        simply_connected: m.simply_connected,
        embeds_r7: embeds_in_r7(m),
        classification: section(classify_r7(m, opts.bound))?,
        action_trivial: section(action_trivial(m))?,
        action_effective: section(action_effective(m))?,
        knots,
        class_query: opts
            .class
            .as_ref()
            .map(|x| section(class_query(&entry, x)))
            .transpose()?,
    })
}

fn check_bound(bound: u64) -> Result<(), CliError> {
    if bound == 0 {
        return Err(CliError::input("--bound must be positive"));
    }
    Ok(())
}

/// Classification reports for each entry, in input order.
pub fn cmd_classify(entries: &[Entry], opts: &ClassifyOptions) -> Result<Rendered, CliError> {
    check_bound(opts.bound)?;
    let reports: Vec<ManifoldReport> = entries
        .par_iter()
        .map(|e| classify_one(e, opts))
        .collect::<Vec<_>>()
        .into_iter()
        .collect::<Result<_, _>>()?;
    let params = json!({
        "bound": opts.bound,
        "class": opts.class,
        "reverse_orientation": opts.reverse_orientation,
    });
    Ok(Rendered {
        document: envelope("classify", params, to_value(&reports)),
        text: text::classify(&reports, opts.bound),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BhImageReport {
    pub name: String,
    pub signature: i64,
    pub image: Section<BhImage>,
}

pub fn cmd_bh_image(entries: &[Entry], bound: u64, target: Option<i64>) -> Result<Rendered, CliError> {
    check_bound(bound)?;
    let reports: Vec<BhImageReport> = entries
        .par_iter()
        .map(|e| {
            let m = &e.data;
            let image = if !m.h1_trivial() {
                Section::NotApplicable {
                    reason: format!("H_1(N) = {} ≠ 0", m.h1_group()),
                }
            } else {
                match target {
                    None => section(bh_image(m, bound))?,
                    Some(t) => section(
                        enumerate_characteristic(&m.lattice, &BigInt::from(t), bound).map(|en| BhImage::Enumerated {
                            target: t,
                            bound,
                            finiteness: en.finiteness,
                            classes: en.classes,
                        }),
                    )?,
                }
            };
            Ok(BhImageReport {
                name: m.name.clone(),
                signature: m.signature()?,
                image,
            })
        })
        .collect::<Vec<Result<_, CliError>>>()
        .into_iter()
        .collect::<Result<_, _>>()?;
    let params = json!({ "bound": bound, "target": target });
    Ok(Rendered {
        document: envelope("bh-image", params, to_value(&reports)),
        text: text::bh_image(&reports),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pi3Report {
    pub class: H2Class,
    pub model: String,
    pub b2: usize,
    pub homology: Vec<FgAbGroup>,
    pub euler_characteristic: i64,
    pub divisibility: IntRepr,
    pub pi3: FgAbGroup,
    pub wedge: Option<String>,
    pub notes: Vec<String>,
}

pub fn cmd_pi3(class: &H2Class) -> Result<Rendered, CliError> {
    let model = ComplementModel::new(class.clone());
    let pi3 = pi3_of(&model);
    let d = divisibility(class);
    if pi3 != FgAbGroup::cyclic(d.clone()) {
        return Err(Error::Invariant(format!("π_3 = {pi3} but divisibility is {d}")).into());
    }
    let report = Pi3Report {
        class: class.clone(),
        model: model.to_string(),
        b2: model.b2(),
        homology: homology_of(&model),
        euler_characteristic: model.euler_characteristic(),
        divisibility: IntRepr::from(&d),
        pi3,
        wedge: wedge_form(&model),
        notes: vec![cite::COMPLEMENT.into(), cite::COMPRESSIBLE.into()],
    };
    Ok(Rendered {
        document: envelope("pi3", json!({ "class": class }), to_value(&report)),
        text: text::pi3(&report),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Embed6Report {
    pub name: String,
    pub embeds_r7: Finding,
    pub embeds_r6: Section<R6Report>,
}

pub fn cmd_embed6(entries: &[Entry]) -> Result<Rendered, CliError> {
    let reports: Vec<Embed6Report> = entries
        .par_iter()
        .map(|e| {
            Ok(Embed6Report {
                name: e.data.name.clone(),
                embeds_r7: embeds_in_r7(&e.data),
                embeds_r6: section(embeds_in_r6(&e.data))?,
            })
        })
        .collect::<Vec<Result<_, CliError>>>()
        .into_iter()
        .collect::<Result<_, _>>()?;
    Ok(Rendered {
        document: envelope("embed6", json!({}), to_value(&reports)),
        text: text::embed6(&reports),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TablesReport {
    Entry {
        key: String,
        value: FgAbGroup,
        source: String,
    },
    Theorem35 {
        n: u32,
        max_n: u32,
        exceptions: Vec<u32>,
        finding: Finding,
    },
    List {
        entries: Vec<TableRow>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub key: String,
    pub value: FgAbGroup,
    pub source: String,
}

/// `query` is a table key (`E7 S4`, `pi_4(G_3,SO_3)`, ...), `t35 <n>`, or `list`.
pub fn cmd_tables(table: &GroupTable, query: &str) -> Result<Rendered, CliError> {
    let q = query.trim();
    let mut words = q.split_whitespace();
    let head = words.next().unwrap_or_default().to_ascii_lowercase();
    let report = if head == "t35" || head == "theorem35" {
        let rest: Vec<&str> = words.collect();
        let n: u32 = match rest.as_slice() {
            [n] => n
                .parse()
                .map_err(|_| CliError::input(format!("expected `t35 <n>`, got {q:?}")))?,
            _ => return Err(CliError::input(format!("expected `t35 <n>`, got {q:?}"))),
        };
        let t = table.theorem35();
        TablesReport::Theorem35 {
            n,
            max_n: t.max_n,
            exceptions: t.exceptions.clone(),
            finding: table.theorem35_nontrivial_action(n)?,
        }
    } else if head == "list" && words.next().is_none() {
        TablesReport::List {
            entries: table
                .entries()
                .map(|e| TableRow {
                    key: e.key.to_string(),
                    value: e.value.clone(),
                    source: e.source.clone(),
                })
                .collect(),
        }
    } else {
        let e = table.lookup_str(q)?;
        TablesReport::Entry {
            key: e.key.to_string(),
            value: e.value.clone(),
            source: e.source.clone(),
        }
    };
    Ok(Rendered {
        document: envelope("tables", json!({ "query": q }), to_value(&report)),
        text: text::tables(&report),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AhssReport {
    pub space: String,
    pub degree: u32,
    pub row: String,
    pub coefficients: Vec<FgAbGroup>,
    /// Nontrivial `E²` entries in the window, as `(i, j, group)`.
    pub e2_nontrivial: Vec<(u32, u32, FgAbGroup)>,
    pub unknown: Vec<(u32, u32)>,
    pub degree7: Option<Degree7Report>,
    pub conclusion: Option<String>,
    pub notes: Vec<String>,
}

/// `row` is `bordism` (`Ω_*(BO⟨5⟩)`) or `fiber` (`π_*(F)`).
pub fn cmd_ahss(table: &GroupTable, space: &str, degree: u32, row: &str) -> Result<Rendered, CliError> {
    let x: SpaceDescriptor = space.parse()?;
    let coeffs = match row {
        "bordism" => CoefficientRow::bordism_bo5(table)?,
        "fiber" => CoefficientRow::fiber_bo5(table)?,
        other => return Err(CliError::input(format!("unknown coefficient row {other:?} (bordism, fiber)"))),
    };
    let page = e2_page(x, &coeffs, degree)?;
    let mut notes = Vec::new();
    let degree7 = if degree == 7 {
        match degree7_after_known_differentials(x, &coeffs) {
            Ok(r) => Some(r),
            Err(Error::Unsupported(why)) => {
                notes.push(format!("no differential analysis: {why}"));
                None
            }
            Err(e) => return Err(e.into()),
        }
    } else {
        None
    };
    let conclusion = degree7.as_ref().map(Degree7Report::conclusion_text);
    let report = AhssReport {
        space: x.to_string(),
        degree,
        row: coeffs.name().to_string(),
        coefficients: coeffs.groups().to_vec(),
        e2_nontrivial: page
            .entries
            .iter()
            .filter(|(_, g)| !g.is_trivial())
            .map(|(&(i, j), g)| (i, j, g.clone()))
            .collect(),
        unknown: page.unknown.clone(),
        degree7,
        conclusion,
        notes,
    };
    Ok(Rendered {
        document: envelope(
            "ahss",
            json!({ "space": report.space, "degree": degree, "row": row }),
            to_value(&report),
        ),
        text: text::ahss(&report),
    })
}

/// Parses `(1,0)`, `[1, 0]`, `1,0` or `()`.
pub fn parse_class(s: &str) -> Result<H2Class, CliError> {
    let inner = s
        .trim()
        .trim_start_matches(['(', '['])
        .trim_end_matches([')', ']'])
        .trim();
    if inner.is_empty() {
        return Ok(H2Class::new(Vec::new()));
    }
    inner
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<BigInt>()
                .map_err(|_| CliError::input(format!("cannot parse class {s:?}")))
        })
        .collect::<Result<_, _>>()
        .map(H2Class::new)
}
