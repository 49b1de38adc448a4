//! Embeddings of closed 4-manifolds in `R^7` (and nearby dimensions): the
//! theorem layer on top of the lattice, complement and table modules.
//!
//! Every verdict carries a reason; hypotheses that cannot be checked from the
//! supplied data produce `Undetermined`, never a guess.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::complement::{pi3_of, ComplementModel};
use crate::error::{Error, Result};
use crate::exactalg::{FgAbGroup, IntRepr};
use crate::lattice::{
    divisibility, enumerate_characteristic, hyperbolic_split, is_characteristic, is_even, is_primitive,
    signature, Finiteness, H2Class, IntegralLattice, SplitOutcome, DEFAULT_SPLIT_BOUND,
};
use crate::tables::{GroupTable, Symbol, TableKey};
use crate::verdict::{Finding, Verdict};

/// Theorem citations attached to reports.
pub mod cite {
    pub const EMBEDS_R7: &str = "Hirsch: every closed orientable 4-manifold embeds in R^7";
    pub const EMBEDS_R6: &str =
        "Cappell–Shaneson, Ruberman: a closed orientable 4-manifold smoothly embeds in R^6 iff w_2 = 0 and σ = 0";
    pub const FORMS: &str = "even unimodular indefinite forms of signature 0 are sums of H; Whitehead and Freedman then give the homotopy and homeomorphism type of #(S^2×S^2)";
    pub const BH_IMAGE: &str =
        "Boéchat–Haefliger: im BH = {x ∈ H_2(N) : x ≡ PD w_2(N) mod 2, x∩x = σ(N)}";
    pub const BH_FIBERS: &str =
        "Boéchat–Haefliger: for H_1(N) = 0, embeddings with the same BH invariant differ by connected sum with an embedding S^4 → R^7";
    pub const TRIVIALITY: &str =
        "Triviality Theorem: for H_1(N) = 0 and square-free σ(N), BH: E^7(N) → im BH is a bijection and f#g is isotopic to f";
    pub const CP2: &str =
        "Corollary (CP^2): the two classes ±1 of im BH are the isotopy classes of embeddings CP^2 → R^7; a mirror reflection swaps them, so up to isoposition there is one";
    pub const PRIMITIVITY: &str =
        "Primitivity Theorem: if π_3(C_f) = 0 then f#g is isotopic to f for every embedding g: S^4 → R^7";
    pub const PRIMITIVE_COUNT: &str =
        "embeddings with π_3(C_f) = 0 correspond to the primitive elements of im BH";
    pub const COMPLEMENT: &str =
        "Complement Lemma: C_f ≃ S^2 ∪_{BH(f)} (b_2 4-cells) and π_3(C_f) ≅ Z/dZ, d the divisibility of BH(f)";
    pub const COMPRESSIBLE: &str =
        "Vrabec: for H_1(N) = 0, f is PL compressible iff BH(f) = 0, iff π_3(C_f) ≅ Z";
    pub const EFFECTIVENESS: &str =
        "Effectiveness Theorem: if ΣN retracts to ΣN_0 and some f_0 has f_0(N) ⊂ R^6, then f_0#g_1 and f_0#g_2 are non-isotopic for non-isotopic g_1, g_2: S^4 → R^7";
    pub const RETRACTS: &str =
        "ΣN retracts to ΣN_0 when N is spin and simply connected (Milnor), when N = S^1×S^3, and for connected sums of such";
    pub const KNOTS_HIGH: &str = "Wu, Haefliger: #E^m(N) = 1 for m ≥ 9";
    pub const KNOTS_E8: &str =
        "Hirsch, Bausum: E^8(N) is in bijection with H_1(N; Z_2) for orientable N and with Z ⊕ Z_2^{s-1} for non-orientable N with H_1(N; Z_2) ≅ Z_2^s";
}

/// A closed connected smooth 4-manifold, described by its intersection form
/// and low-dimensional homology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Manifold4Data {
    pub name: String,
    /// Intersection form on `H_2(N)` modulo torsion.
    pub lattice: IntegralLattice,
    pub h1_rank: usize,
    /// Invariant factors of the torsion of `H_1(N)`.
    pub h1_torsion: Vec<BigInt>,
    /// `dim H_1(N; Z_2)`.
    pub h1_mod2_rank: usize,
    pub orientable: bool,
    pub spin: bool,
    pub simply_connected: bool,
    /// Whether `ΣN` retracts to `ΣN_0`, if asserted by the user.
    pub suspension_retracts: Option<bool>,
    /// Names of connected summands, if `N` is declared a connected sum.
    pub summands: Vec<String>,
}

impl Manifold4Data {
    /// A simply-connected manifold; spin is read off the parity of the form.
    pub fn simply_connected(name: impl Into<String>, lattice: IntegralLattice) -> Result<Self> {
        let spin = is_even(&lattice);
        let m = Manifold4Data {
            name: name.into(),
            lattice,
            h1_rank: 0,
            h1_torsion: Vec::new(),
            h1_mod2_rank: 0,
            orientable: true,
            spin,
            simply_connected: true,
            suspension_retracts: None,
            summands: Vec::new(),
        };
        m.validate()?;
        Ok(m)
    }

    /// `dim H_1(N; Z_2) = rank H_1 + #(even torsion factors)` by universal coefficients.
    pub fn derived_h1_mod2_rank(h1_rank: usize, h1_torsion: &[BigInt]) -> usize {
        h1_rank + h1_torsion.iter().filter(|d| d.is_even()).count()
    }

    pub fn h1_trivial(&self) -> bool {
        self.h1_rank == 0 && self.h1_torsion.is_empty()
    }

    pub fn h1_group(&self) -> FgAbGroup {
        FgAbGroup::from_cyclic_orders(self.h1_rank, self.h1_torsion.iter().cloned())
    }

    pub fn signature(&self) -> Result<i64> {
        signature(&self.lattice)
    }

    /// The same manifold with the opposite orientation (form negated).
    pub fn reversed(&self) -> Self {
        let mut m = self.clone();
        m.lattice = self.lattice.negated();
        m.name = format!("-({})", self.name);
        m
    }

    /// Checks the consistency of the flags with each other and with the form.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidManifold(format!("{}: {msg}", self.name)));
        let normal = FgAbGroup::from_cyclic_orders(0, self.h1_torsion.iter().cloned());
        if normal.torsion() != self.h1_torsion.as_slice() {
            return bad(format!(
                "h1_torsion {:?} is not a list of invariant factors d_1 | d_2 | ... with d_i ≥ 2",
                self.h1_torsion.iter().map(|d| d.to_string()).collect::<Vec<_>>()
            ));
        }
        if self.simply_connected && !self.h1_trivial() {
            return bad("simply connected but H_1 ≠ 0".into());
        }
        let mod2 = Self::derived_h1_mod2_rank(self.h1_rank, &self.h1_torsion);
        if self.h1_mod2_rank != mod2 {
            return bad(format!(
                "h1_mod2_rank = {} but H_1 = {} gives dim H_1(N; Z_2) = {mod2}",
                self.h1_mod2_rank,
                self.h1_group()
            ));
        }
        if !self.orientable {
            if self.spin {
                return bad("spin requires orientable".into());
            }
            if self.h1_mod2_rank == 0 {
                return bad("non-orientable but H_1(N; Z_2) = 0 (w_1 would vanish)".into());
            }
        }
        if self.lattice.inertia().zero > 0 {
            return bad("intersection form is degenerate".into());
        }
        if self.orientable && !self.lattice.is_unimodular() {
            return bad(format!(
                "intersection form of an orientable manifold must be unimodular (determinant {})",
                self.lattice.determinant()
            ));
        }
        if self.simply_connected {
            // Wu: w_2 is characteristic, and H_1 = 0 makes it the reduction of an integral class
            let even = is_even(&self.lattice);
            if self.spin && !even {
                return bad("spin but the intersection form is odd".into());
            }
            if !self.spin && even {
                return bad("not spin but the intersection form of a simply-connected manifold is even".into());
            }
        }
        Ok(())
    }
}

/// Canonical spelling used for name rules: lowercase, `×` and `^` dropped.
fn normalize_name(s: &str) -> String {
    let mut out = String::new();
    for ch in s.chars() {
        match ch {
            '×' | '*' | 'x' | 'X' => out.push('x'),
            '¹' => out.push('1'),
            '²' => out.push('2'),
            '³' => out.push('3'),
            '⁴' => out.push('4'),
            '^' | ' ' | '_' | '{' | '}' => {}
            c => out.extend(c.to_lowercase()),
        }
    }
    out
}

/// Summand names for which `ΣN` retracts to `ΣN_0` is known.
const RETRACTING_SUMMANDS: &[&str] = &["s1xs3", "s2xs2", "s4"];

fn named_retract(name: &str) -> bool {
    RETRACTING_SUMMANDS.contains(&normalize_name(name).as_str())
}

/// `|n|` is not divisible by `s²` for any `s ≥ 2`; `0` is divisible by 4.
pub fn is_square_free(n: i64) -> bool {
    let n = n.unsigned_abs();
    if n == 0 {
        return false;
    }
    let mut s: u64 = 2;
    while s * s <= n {
        if n.is_multiple_of(s * s) {
            return false;
        }
        s += 1;
    }
    true
}

pub fn embeds_in_r7(m: &Manifold4Data) -> Finding {
    if m.orientable {
        Finding::yes(cite::EMBEDS_R7)
    } else {
        Finding::undetermined("non-orientable: the criterion W̄_3(N) = 0 is not evaluated")
    }
}

/// Hyperbolic splitting certificate: columns of `transform` are `e_1, f_1, ...`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitCertificate {
    pub blocks: usize,
    pub transform: Vec<Vec<IntRepr>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RemarkCondition {
    pub label: String,
    pub verdict: Verdict,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct R6Report {
    #[serde(flatten)]
    pub finding: Finding,
    pub certificate: Option<SplitCertificate>,
    /// The equivalent conditions (1)–(6) for orientable `N` (the last three for
    /// simply-connected `N` only).
    pub conditions: Vec<RemarkCondition>,
}

/// Smooth embeddability in `R^6`: spin and `σ = 0`; for simply-connected
/// inputs the form is also split into hyperbolic planes as a certificate.
pub fn embeds_in_r6(m: &Manifold4Data) -> Result<R6Report> {
    m.validate()?;
    if !m.orientable {
        return Ok(R6Report {
            finding: Finding::undetermined("non-orientable input: the R^6 criterion needs an orientable manifold"),
            certificate: None,
            conditions: Vec::new(),
        });
    }
    let sigma = m.signature()?;
    let cond2 = m.spin && sigma == 0;
    let why2 = match (m.spin, sigma) {
        (true, 0) => "w_2 = 0 and σ = 0".to_string(),
        (false, 0) => "w_2 ≠ 0 (not spin)".to_string(),
        (true, s) => format!("σ = {s} ≠ 0"),
        (false, s) => format!("w_2 ≠ 0 and σ = {s} ≠ 0"),
    };
    let v2 = Verdict::from_bool(cond2);
    let mut conditions = vec![
        RemarkCondition {
            label: "(1) N embeds in R^6".into(),
            verdict: v2,
            detail: format!("equivalent to (2); {}", cite::EMBEDS_R6),
        },
        RemarkCondition {
            label: "(2) w_2(N) = 0 and σ(N) = 0".into(),
            verdict: v2,
            detail: why2.clone(),
        },
        RemarkCondition {
            label: "(3) every normal bundle N → S^7 is trivial".into(),
            verdict: v2,
            detail: "equivalent to (2) by the Dold–Whitney theorem".into(),
        },
    ];

    let mut certificate = None;
    if m.simply_connected {
        let split = hyperbolic_split(&m.lattice, DEFAULT_SPLIT_BOUND)?;
        let (v4, detail4) = match &split {
            SplitOutcome::Split(s) => {
                // a split is only possible for genuinely even, unimodular, σ = 0 forms
                if !(is_even(&m.lattice) && m.lattice.is_unimodular() && sigma == 0) {
                    return Err(Error::Invariant("hyperbolic split of a form that cannot split".into()));
                }
                certificate = Some(SplitCertificate {
                    blocks: s.blocks,
                    transform: s
                        .transform
                        .to_rows()
                        .iter()
                        .map(|r| r.iter().map(IntRepr::from).collect())
                        .collect(),
                });
                (Verdict::Yes, format!("form ≅ {}·H", s.blocks))
            }
            SplitOutcome::Impossible(r) => (Verdict::No, r.clone()),
            SplitOutcome::Inconclusive(r) => (Verdict::Undetermined, r.clone()),
        };
        if v4 != Verdict::Undetermined && v4 != v2 {
            return Err(Error::Invariant(format!(
                "condition (2) is {v2} but condition (4) is {v4} for {}",
                m.name
            )));
        }
        conditions.push(RemarkCondition {
            label: "(4) intersection form is that of #_i(S^2×S^2)".into(),
            verdict: v4,
            detail: detail4,
        });
        for label in [
            "(5) N is homotopy equivalent to #_i(S^2×S^2)",
            "(6) N is homeomorphic to #_i(S^2×S^2)",
        ] {
            conditions.push(RemarkCondition {
                label: label.into(),
                verdict: v4,
                detail: format!("equivalent to (4); {}", cite::FORMS),
            });
        }
    }

    let finding = if cond2 {
        Finding::yes(format!("{why2}; {}", cite::EMBEDS_R6))
    } else {
        Finding::no(format!("{why2}; {}", cite::EMBEDS_R6))
    };
    Ok(R6Report {
        finding,
        certificate,
        conditions,
    })
}

/// `H_1(N) = 0` and square-free signature.
pub fn triviality_applicable(m: &Manifold4Data) -> Result<Finding> {
    let sigma = m.signature()?;
    if !m.h1_trivial() {
        return Ok(Finding::no(format!("H_1(N) = {} ≠ 0", m.h1_group())));
    }
    if !is_square_free(sigma) {
        let s = (2..)
            .find(|s: &i64| sigma == 0 || sigma % (s * s) == 0)
            .expect("some square divides a non-square-free σ");
        return Ok(Finding::no(format!(
            "σ = {sigma} is not square-free (divisible by {s}² = {})",
            s * s
        )));
    }
    Ok(Finding::yes(format!("H_1(N) = 0 and σ = {sigma} is square-free")))
}

/// Result of enumerating `im BH` for a classification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum BhImage {
    Enumerated {
        target: i64,
        bound: u64,
        finiteness: Finiteness,
        classes: Vec<H2Class>,
    },
    NotEnumerated {
        target: i64,
        bound: u64,
        reason: String,
    },
}

impl BhImage {
    pub fn classes(&self) -> Option<&[H2Class]> {
        match self {
            BhImage::Enumerated { classes, .. } => Some(classes),
            BhImage::NotEnumerated { .. } => None,
        }
    }

    pub fn finiteness(&self) -> Option<Finiteness> {
        match self {
            BhImage::Enumerated { finiteness, .. } => Some(*finiteness),
            BhImage::NotEnumerated { .. } => None,
        }
    }
}

/// `im BH` for `m` with search bound `bound` (ignored for definite forms).
pub fn bh_image(m: &Manifold4Data, bound: u64) -> Result<BhImage> {
    m.validate()?;
    if !m.orientable {
        return Err(Error::Precondition(format!("{}: non-orientable input has no BH invariant here", m.name)));
    }
    let sigma = m.signature()?;
    match enumerate_characteristic(&m.lattice, &BigInt::from(sigma), bound) {
        Ok(e) => Ok(BhImage::Enumerated {
            target: sigma,
            bound,
            finiteness: e.finiteness,
            classes: e.classes,
        }),
        Err(err @ Error::SearchTooLarge { .. }) => Ok(BhImage::NotEnumerated {
            target: sigma,
            bound,
            reason: err.to_string(),
        }),
        Err(e) => Err(e),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum IsotopyCount {
    Exact { count: u64 },
    AtLeast { count: u64, reason: String },
    NotDetermined { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub name: String,
    pub rank: usize,
    pub signature: i64,
    pub even: bool,
    pub h1: FgAbGroup,
    pub embeds_r7: Finding,
    pub embeds_r6: R6Report,
    pub triviality_applicable: Finding,
    /// `None` when `H_1(N) ≠ 0`.
    pub bh_image: Option<BhImage>,
    pub isotopy_class_count: IsotopyCount,
    /// Primitive classes among the enumerated ones.
    pub primitive_count: Option<u64>,
    pub notes: Vec<String>,
}

/// Classification of embeddings `N → R^7` as far as the hypotheses allow.
pub fn classify_r7(m: &Manifold4Data, bound: u64) -> Result<ClassificationReport> {
    m.validate()?;
    if !m.orientable {
        return Err(Error::Precondition(format!(
            "{}: the R^7 classification needs an orientable manifold",
            m.name
        )));
    }
    let sigma = m.signature()?;
    let embeds_r6 = embeds_in_r6(m)?;
    let triviality = triviality_applicable(m)?;
    if embeds_r6.finding.is_yes() && triviality.is_yes() {
        return Err(Error::Invariant("embeds in R^6 yet σ is square-free".into()));
    }
    let mut notes = vec![cite::EMBEDS_R7.to_string()];

    let (bh, count, primitive_count) = if !m.h1_trivial() {
        notes.push(format!("H_1(N) = {} ≠ 0: im BH is not computed", m.h1_group()));
        (
            None,
            IsotopyCount::NotDetermined {
                reason: format!("H_1(N) = {} ≠ 0", m.h1_group()),
            },
            None,
        )
    } else {
        notes.push(cite::BH_IMAGE.to_string());
        let bh = bh_image(m, bound)?;
        let (count, prim) = match &bh {
            BhImage::NotEnumerated { reason, .. } => (
                IsotopyCount::NotDetermined {
                    reason: format!("im BH not enumerated: {reason}"),
                },
                None,
            ),
            BhImage::Enumerated {
                finiteness, classes, ..
            } => {
                for x in classes {
                    if !is_characteristic(&m.lattice, x)? || m.lattice.square(x)? != BigInt::from(sigma) {
                        return Err(Error::Invariant(format!("{x} is not in im BH")));
                    }
                }
                let n = classes.len() as u64;
                let prim = classes.iter().filter(|x| is_primitive(x)).count() as u64;
                notes.push(format!("{}: {prim} of the enumerated classes", cite::PRIMITIVE_COUNT));
                let count = if n == 0 {
                    IsotopyCount::NotDetermined {
                        reason: format!("no characteristic class of square {sigma} found; an orientable smooth N always embeds, so these data are not realized"),
                    }
                } else if triviality.is_yes() {
                    notes.push(cite::TRIVIALITY.to_string());
                    match finiteness {
                        Finiteness::Finite => IsotopyCount::Exact { count: n },
                        Finiteness::PossiblyInfinite => IsotopyCount::AtLeast {
                            count: n,
                            reason: format!(
                                "infinite family within box: {n} classes with |x_i| ≤ {bound}, completeness not claimed for an indefinite form"
                            ),
                        },
                    }
                } else {
                    notes.push(cite::BH_FIBERS.to_string());
                    IsotopyCount::NotDetermined {
                        reason: format!(
                            "Triviality Theorem not applicable: {}; at least {n} classes (BH is an isotopy invariant){}",
                            triviality.reason,
                            if *finiteness == Finiteness::PossiblyInfinite {
                                format!(" within |x_i| ≤ {bound}")
                            } else {
                                String::new()
                            }
                        ),
                    }
                };
                (count, Some(prim))
            }
        };
        (Some(bh), count, prim)
    };

    if m.lattice.rank() == 1 && m.lattice.is_definite() && m.h1_trivial() {
        if let IsotopyCount::Exact { count: 2 } = count {
            notes.push(cite::CP2.to_string());
        }
    }

    Ok(ClassificationReport {
        name: m.name.clone(),
        rank: m.lattice.rank(),
        signature: sigma,
        even: is_even(&m.lattice),
        h1: m.h1_group(),
        embeds_r7: embeds_in_r7(m),
        embeds_r6,
        triviality_applicable: triviality,
        bh_image: bh,
        isotopy_class_count: count,
        primitive_count,
        notes,
    })
}

/// Triviality of the `E^7(S^4)`-action on all of `E^7(N)`.
pub fn action_trivial(m: &Manifold4Data) -> Result<Finding> {
    let t = triviality_applicable(m)?;
    Ok(if t.is_yes() {
        Finding::yes(format!("{}; {}", t.reason, cite::TRIVIALITY))
    } else {
        Finding::undetermined(format!("Triviality Theorem not applicable: {}", t.reason))
    })
}

fn check_in_image(m: &Manifold4Data, x: &H2Class) -> Result<()> {
    let sigma = BigInt::from(m.signature()?);
    if !is_characteristic(&m.lattice, x)? {
        return Err(Error::Precondition(format!("{x} is not characteristic, so it is not in im BH")));
    }
    let sq = m.lattice.square(x)?;
    if sq != sigma {
        return Err(Error::Precondition(format!(
            "{x} has square {sq} ≠ σ = {sigma}, so it is not in im BH"
        )));
    }
    Ok(())
}

/// Triviality of the action on the embeddings with `BH(f) = x`.
pub fn action_trivial_for_class(m: &Manifold4Data, x: &H2Class) -> Result<Finding> {
    m.validate()?;
    check_in_image(m, x)?;
    if !m.h1_trivial() {
        return Ok(Finding::undetermined(format!("H_1(N) = {} ≠ 0", m.h1_group())));
    }
    let t = triviality_applicable(m)?;
    if t.is_yes() {
        return Ok(Finding::yes(format!("{}; {}", t.reason, cite::TRIVIALITY)));
    }
    let d = divisibility(x);
    let pi3 = pi3_of(&ComplementModel::new(x.clone()));
    if (d.is_one()) != pi3.is_trivial() {
        return Err(Error::Invariant(format!("divisibility {d} disagrees with π_3 = {pi3}")));
    }
    Ok(if d.is_one() {
        Finding::yes(format!(
            "{x} is primitive, so π_3(C_f) = 0; {}; {}",
            cite::COMPLEMENT,
            cite::PRIMITIVITY
        ))
    } else {
        Finding::undetermined(format!(
            "{x} has divisibility {d}, so π_3(C_f) ≅ {pi3} ≠ 0 and the Primitivity Theorem does not apply"
        ))
    })
}

/// Whether `ΣN` retracts to `ΣN_0`: asserted, or derived from the sufficient
/// conditions. `None` when unknown.
pub fn suspension_retracts(m: &Manifold4Data) -> (Option<bool>, String) {
    if let Some(b) = m.suspension_retracts {
        return (Some(b), "asserted in the input".into());
    }
    if m.spin && m.simply_connected {
        return (Some(true), format!("spin and simply connected; {}", cite::RETRACTS));
    }
    if named_retract(&m.name) && m.summands.is_empty() {
        return (Some(true), format!("N = {}; {}", m.name, cite::RETRACTS));
    }
    if !m.summands.is_empty() && m.summands.iter().all(|s| named_retract(s)) {
        return (
            Some(true),
            format!("connected sum of {}; {}", m.summands.join(", "), cite::RETRACTS),
        );
    }
    (None, "unknown whether ΣN retracts to ΣN_0 (assert suspension_retracts to decide)".into())
}

/// Effectiveness of the `E^7(S^4)`-action on `E^7(N)`.
pub fn action_effective(m: &Manifold4Data) -> Result<Finding> {
    m.validate()?;
    let t = triviality_applicable(m)?;
    if t.is_yes() {
        return Ok(Finding::no(format!("the action is trivial: {}; {}", t.reason, cite::TRIVIALITY)));
    }
    let (retracts, why) = suspension_retracts(m);
    match retracts {
        None => Ok(Finding::undetermined(why)),
        Some(false) => Ok(Finding::undetermined(format!(
            "ΣN does not retract to ΣN_0 ({why}); the Effectiveness Theorem does not apply"
        ))),
        Some(true) => {
            let r6 = embeds_in_r6(m)?;
            Ok(match r6.finding.verdict {
                Verdict::Yes => Finding::yes(format!(
                    "ΣN retracts to ΣN_0 ({why}) and N embeds in R^6; {}",
                    cite::EFFECTIVENESS
                )),
                _ => Finding::undetermined(format!(
                    "N does not embed in R^6 ({}); the Effectiveness Theorem does not apply",
                    r6.finding.reason
                )),
            })
        }
    }
}

/// PL compressibility of embeddings with `BH(f) = x`: exactly `x = 0`.
pub fn compressible(m: &Manifold4Data, x: &H2Class) -> Result<bool> {
    m.validate()?;
    if !m.h1_trivial() {
        return Err(Error::Precondition(format!("{}: compressibility needs H_1(N) = 0", m.name)));
    }
    if x.rank() != m.lattice.rank() {
        return Err(Error::DimensionMismatch {
            expected: m.lattice.rank(),
            found: x.rank(),
        });
    }
    let zero = x.is_zero();
    let d_zero = divisibility(x).is_zero();
    let pi3_z = pi3_of(&ComplementModel::new(x.clone())) == FgAbGroup::integers();
    if zero != d_zero || zero != pi3_z {
        return Err(Error::Invariant(format!(
            "x = 0: {zero}, divisibility 0: {d_zero}, π_3 ≅ Z: {pi3_z} disagree"
        )));
    }
    Ok(zero)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum KnotTableAnswer {
    /// `E^m(N)` in bijection with this group.
    Group { group: FgAbGroup, source: String },
    /// Only the number of elements is known.
    Cardinality { count: u64, source: String },
}

/// `E^m(N)` for `(m, n)` in the known range. `data = None` means `N = S^n`.
pub fn knot_table(
    m_ambient: u32,
    n: u32,
    data: Option<&Manifold4Data>,
    table: &GroupTable,
) -> Result<KnotTableAnswer> {
    if let Some(d) = data {
        d.validate()?;
        if n != 4 {
            return Err(Error::Precondition(format!("manifold data describe a 4-manifold, not n = {n}")));
        }
    }
    if n == 4 && m_ambient >= 9 {
        return Ok(KnotTableAnswer::Cardinality {
            count: 1,
            source: cite::KNOTS_HIGH.into(),
        });
    }
    if n == 4 && m_ambient == 8 {
        let (orientable, s) = match data {
            Some(d) => (d.orientable, d.h1_mod2_rank),
            None => (true, 0),
        };
        let two = FgAbGroup::cyclic(2);
        let group = if orientable {
            two.power(s)
        } else {
            if s == 0 {
                return Err(Error::InvalidManifold("non-orientable with H_1(N; Z_2) = 0".into()));
            }
            FgAbGroup::integers().direct_sum(&two.power(s - 1))
        };
        return Ok(KnotTableAnswer::Group {
            group,
            source: cite::KNOTS_E8.into(),
        });
    }
    if data.is_some() {
        return Err(Error::Unsupported(format!(
            "E^{m_ambient}(N) for a general 4-manifold N (see classify for m = 7)"
        )));
    }
    let key = TableKey {
        symbol: Symbol::E,
        index: m_ambient,
        stable: false,
        space: vec![format!("S^{n}")],
    };
    match table.lookup(&key) {
        Ok(e) => Ok(KnotTableAnswer::Group {
            group: e.value.clone(),
            source: e.source.clone(),
        }),
        Err(Error::NotTabulated(k)) => Err(Error::Unsupported(format!("{k} is outside the known table"))),
        Err(e) => Err(e),
    }
}

/// Isotopy-class count as a plain number when exact.
pub fn exact_count(report: &ClassificationReport) -> Option<u64> {
    match report.isotopy_class_count {
        IsotopyCount::Exact { count } => Some(count),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(name: &str, rows: &[Vec<i64>]) -> Manifold4Data {
        Manifold4Data::simply_connected(name, IntegralLattice::from_rows(rows).unwrap()).unwrap()
    }

    fn cp2() -> Manifold4Data {
        sc("CP2", &[vec![1]])
    }

    fn s2xs2() -> Manifold4Data {
        sc("S2xS2", &[vec![0, 1], vec![1, 0]])
    }

    fn s1xs3() -> Manifold4Data {
        Manifold4Data {
            name: "S1xS3".into(),
            lattice: IntegralLattice::zero_rank(),
            h1_rank: 1,
            h1_torsion: vec![],
            h1_mod2_rank: 1,
            orientable: true,
            spin: true,
            simply_connected: false,
            suspension_retracts: None,
            summands: vec![],
        }
    }

    fn diag(entries: &[i64]) -> Manifold4Data {
        let n = entries.len();
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|r| (0..n).map(|c| if r == c { entries[r] } else { 0 }).collect())
            .collect();
        sc("diag", &rows)
    }

    #[test]
    fn square_free() {
        for s in [1, 2, 3, 5, 6, -1, -2, -3, -5, -6, 7, 10] {
            assert!(is_square_free(s), "{s}");
        }
        for s in [0, 4, -4, 8, 9, 12, -16, 18] {
            assert!(!is_square_free(s), "{s}");
        }
    }

    #[test]
    fn validation() {
        let mut m = cp2();
        m.spin = true;
        assert!(matches!(m.validate(), Err(Error::InvalidManifold(_))));
        let mut m = s2xs2();
        m.spin = false;
        assert!(m.validate().is_err());
        let mut m = cp2();
        m.h1_rank = 1;
        assert!(m.validate().is_err());
        let mut m = s1xs3();
        m.h1_mod2_rank = 0;
        assert!(m.validate().is_err());
        let mut m = s1xs3();
        m.h1_torsion = vec![3.into(), 2.into()];
        assert!(m.validate().is_err());
        let mut m = s1xs3();
        m.lattice = IntegralLattice::from_rows(&[vec![2]]).unwrap();
        assert!(m.validate().is_err());
        let mut m = s1xs3();
        m.orientable = false;
        assert!(m.validate().is_err(), "spin but non-orientable");
        s1xs3().validate().unwrap();
    }

    #[test]
    fn r7_and_r6() {
        assert!(embeds_in_r7(&cp2()).is_yes());
        let mut rp = s1xs3();
        rp.orientable = false;
        rp.spin = false;
        assert_eq!(embeds_in_r7(&rp).verdict, Verdict::Undetermined);

        let r = embeds_in_r6(&s2xs2()).unwrap();
        assert!(r.finding.is_yes());
        assert_eq!(r.certificate.as_ref().unwrap().blocks, 1);
        assert_eq!(r.conditions.len(), 6);
        assert_eq!(embeds_in_r6(&cp2()).unwrap().finding.verdict, Verdict::No);
        assert_eq!(embeds_in_r6(&diag(&[1, -1])).unwrap().finding.verdict, Verdict::No);
        assert!(embeds_in_r6(&s1xs3()).unwrap().finding.is_yes());
    }

    #[test]
    fn gates() {
        assert!(triviality_applicable(&cp2()).unwrap().is_yes());
        assert!(!triviality_applicable(&s2xs2()).unwrap().is_yes());
        assert!(!triviality_applicable(&diag(&[1, 1, 1, 1])).unwrap().is_yes());
        assert!(!triviality_applicable(&s1xs3()).unwrap().is_yes());
    }

    #[test]
    fn classify_examples() {
        for bound in [1, 2, 5, 10] {
            let r = classify_r7(&cp2(), bound).unwrap();
            assert_eq!(r.isotopy_class_count, IsotopyCount::Exact { count: 2 });
            assert_eq!(r.bh_image.as_ref().unwrap().classes().unwrap(), &[H2Class::from_i64(&[-1]), H2Class::from_i64(&[1])]);
            assert!(r.notes.iter().any(|n| n.starts_with("Corollary")));
        }
        let r = classify_r7(&s2xs2(), 4).unwrap();
        assert_eq!(r.bh_image.as_ref().unwrap().classes().unwrap().len(), 9);
        assert!(matches!(r.isotopy_class_count, IsotopyCount::NotDetermined { .. }));
        assert_eq!(r.primitive_count, Some(0));

        let r = classify_r7(&diag(&[1, 1]), 3).unwrap();
        assert_eq!(r.isotopy_class_count, IsotopyCount::Exact { count: 4 });
        assert_eq!(r.primitive_count, Some(4));

        let r = classify_r7(&s1xs3(), 3).unwrap();
        assert!(r.bh_image.is_none());

        let r = classify_r7(&cp2().reversed(), 3).unwrap();
        assert_eq!(r.signature, -1);
        assert_eq!(exact_count(&r), Some(2));
    }

    #[test]
    fn actions() {
        assert!(action_trivial(&cp2()).unwrap().is_yes());
        let d = diag(&[1, 1]);
        assert!(action_trivial_for_class(&d, &H2Class::from_i64(&[1, 1])).unwrap().is_yes());
        // σ = 4 gate fails, but (1,1,1,1) is primitive
        let d4 = diag(&[1, 1, 1, 1]);
        let f = action_trivial_for_class(&d4, &H2Class::from_i64(&[1, 1, 1, 1])).unwrap();
        assert!(f.is_yes() && f.reason.contains("Primitivity"));
        let f = action_trivial_for_class(&s2xs2(), &H2Class::from_i64(&[2, 0])).unwrap();
        assert_eq!(f.verdict, Verdict::Undetermined);
        assert!(action_trivial_for_class(&s2xs2(), &H2Class::from_i64(&[1, 0])).is_err());

        assert!(action_effective(&s2xs2()).unwrap().is_yes());
        assert_eq!(action_effective(&cp2()).unwrap().verdict, Verdict::No);
        assert_eq!(suspension_retracts(&s1xs3()).0, Some(true));
        assert!(action_effective(&s1xs3()).unwrap().is_yes());
        let mut odd = diag(&[1, -1]);
        odd.name = "CP2#-CP2".into();
        assert_eq!(action_effective(&odd).unwrap().verdict, Verdict::Undetermined);
    }

    #[test]
    fn compressibility() {
        assert!(compressible(&s2xs2(), &H2Class::from_i64(&[0, 0])).unwrap());
        assert!(!compressible(&cp2(), &H2Class::from_i64(&[1])).unwrap());
        assert!(!compressible(&s2xs2(), &H2Class::from_i64(&[2, 0])).unwrap());
        assert!(compressible(&s1xs3(), &H2Class::from_i64(&[])).is_err());
    }

    #[test]
    fn knots() {
        let t = GroupTable::builtin();
        let g = |a| match a {
            KnotTableAnswer::Group { group, .. } => group.to_string(),
            KnotTableAnswer::Cardinality { count, .. } => format!("#{count}"),
        };
        assert_eq!(g(knot_table(7, 4, None, &t).unwrap()), "Z_12");
        assert_eq!(g(knot_table(9, 4, Some(&cp2()), &t).unwrap()), "#1");
        assert_eq!(g(knot_table(8, 5, None, &t).unwrap()), "Z_2");
        let mut two = s1xs3();
        two.h1_rank = 0;
        two.h1_torsion = vec![2.into(), 2.into()];
        two.h1_mod2_rank = 2;
        two.name = "L".into();
        assert_eq!(g(knot_table(8, 4, Some(&two), &t).unwrap()), "Z_2^2");
        let mut nonor = two.clone();
        nonor.orientable = false;
        nonor.spin = false;
        assert_eq!(g(knot_table(8, 4, Some(&nonor), &t).unwrap()), "Z ⊕ Z_2");
        assert!(matches!(knot_table(7, 4, Some(&cp2()), &t), Err(Error::Unsupported(_))));
        assert!(matches!(knot_table(10, 7, None, &t), Err(Error::Unsupported(_))));
    }
}
