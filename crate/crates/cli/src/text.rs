//! Human-readable renderings. Same content as the machine documents.

use std::fmt::Write;

use bhclass::classify::{BhImage, SplitCertificate, IsotopyCount, KnotTableAnswer};
use bhclass::lattice::{Finiteness, H2Class};
use bhclass::verdict::Finding;

use crate::commands::{AhssReport, BhImageReport, Embed6Report, ManifoldReport, Pi3Report, Section, TablesReport};

fn finding(f: &Finding) -> String {
    format!("{}: {}", f.verdict, f.reason)
}

fn na<T>(s: &Section<T>, ok: impl FnOnce(&T) -> String) -> String {
    match s {
        Section::Ok { value } => ok(value),
        Section::NotApplicable { reason } => format!("not applicable: {reason}"),
    }
}

fn certificate(out: &mut String, cert: &SplitCertificate) {
    let rows: Vec<String> = cert
        .transform
        .iter()
        .map(|r| format!("[{}]", r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")))
        .collect();
    let _ = writeln!(
        out,
        "    certificate: {} hyperbolic block(s); U = [{}] with UᵀGU = H^{}",
        cert.blocks,
        rows.join(", "),
        cert.blocks
    );
}

fn finiteness(f: Finiteness) -> &'static str {
    match f {
        Finiteness::Finite => "Finite (complete: definite form)",
        Finiteness::PossiblyInfinite => "PossiblyInfinite (complete only inside the box)",
    }
}

fn class_list(out: &mut String, classes: &[H2Class]) {
    let mut line = String::from("   ");
    for x in classes {
        let s = x.to_string();
        if line.len() + s.len() > 76 {
            let _ = writeln!(out, "{line}");
            line = String::from("   ");
        }
        line.push(' ');
        line.push_str(&s);
    }
    if classes.is_empty() {
        line.push_str(" (none)");
    }
    let _ = writeln!(out, "{line}");
}

fn image(out: &mut String, im: &BhImage) {
    match im {
        BhImage::Enumerated {
            target,
            bound,
            finiteness: f,
            classes,
        } => {
            let _ = writeln!(
                out,
                "  im BH (x∩x = {target}, bound {bound}, {}): {} classes",
                finiteness(*f),
                classes.len()
            );
            class_list(out, classes);
        }
        BhImage::NotEnumerated { target, bound, reason } => {
            let _ = writeln!(out, "  im BH (x∩x = {target}, bound {bound}): not enumerated: {reason}");
        }
    }
}

pub fn classify(reports: &[ManifoldReport], bound: u64) -> String {
    let mut out = String::new();
    for r in reports {
        let _ = write!(out, "== {} ==", r.name);
        if let Some(p) = &r.provenance {
            let _ = write!(out, "  ({p})");
        }
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "  form: rank {}, signature {}, {}, H_1 = {}; {}orientable, {}spin, {}simply connected; orientation {}",
            r.rank,
            r.signature,
            if r.even { "even" } else { "odd" },
            r.h1,
            if r.orientable { "" } else { "non-" },
            if r.spin { "" } else { "non-" },
            if r.simply_connected { "" } else { "not " },
            r.orientation
        );
        let _ = writeln!(out, "  embeds in R^7: {}", finding(&r.embeds_r7));
        match &r.classification {
            Section::NotApplicable { reason } => {
                let _ = writeln!(out, "  classification in R^7: not applicable: {reason}");
            }
            Section::Ok { value: c } => {
                let _ = writeln!(out, "  embeds in R^6: {}", finding(&c.embeds_r6.finding));
                for cond in &c.embeds_r6.conditions {
                    let _ = writeln!(out, "    {}: {} ({})", cond.label, cond.verdict, cond.detail);
                }
                if let Some(cert) = &c.embeds_r6.certificate {
                    certificate(&mut out, cert);
                }
                let t = &c.triviality_applicable;
                if t.is_yes() {
                    let _ = writeln!(out, "  Triviality Theorem applicable: {}", t.reason);
                } else {
                    let _ = writeln!(out, "  Triviality Theorem not applicable: {}", t.reason);
                }
                match &c.bh_image {
                    Some(im) => image(&mut out, im),
                    None => {
                        let _ = writeln!(out, "  im BH: not computed (H_1 ≠ 0)");
                    }
                }
                let _ = match &c.isotopy_class_count {
                    IsotopyCount::Exact { count } => writeln!(out, "  {count} isotopy classes (exact)"),
                    IsotopyCount::AtLeast { count, reason } => {
                        writeln!(out, "  at least {count} isotopy classes: {reason}")
                    }
                    IsotopyCount::NotDetermined { reason } => {
                        writeln!(out, "  isotopy class count not determined: {reason}")
                    }
                };
                if let Some(p) = c.primitive_count {
                    let _ = writeln!(out, "  primitive classes in im BH: {p}");
                }
            }
        }
        let _ = writeln!(out, "  action of E^7(S^4) trivial: {}", na(&r.action_trivial, finding));
        let _ = writeln!(out, "  action of E^7(S^4) effective: {}", na(&r.action_effective, finding));
        for k in &r.knots {
            let s = na(&k.answer, |a| match a {
                KnotTableAnswer::Group { group, source } => format!("{group} ({source})"),
                KnotTableAnswer::Cardinality { count, source } => format!("{count} element(s) ({source})"),
            });
            let _ = writeln!(out, "  E^{}(N): {s}", k.ambient);
        }
        if let Some(q) = &r.class_query {
            match q {
                Section::Ok { value: q } => {
                    let _ = writeln!(out, "  class {}:", q.class);
                    let _ = writeln!(out, "    divisibility {}, π_3(C_f) = {}", q.divisibility, q.pi3);
                    let _ = writeln!(out, "    action on BH^-1({}) trivial: {}", q.class, finding(&q.action_trivial));
                    let _ = writeln!(out, "    PL compressible: {} ({})", q.compressible, q.compressible_reason);
                }
                Section::NotApplicable { reason } => {
                    let _ = writeln!(out, "  class query: not applicable: {reason}");
                }
            }
        }
        if let Section::Ok { value: c } = &r.classification {
            let _ = writeln!(out, "  notes:");
            for n in &c.notes {
                let _ = writeln!(out, "    - {n}");
            }
        }
        let _ = writeln!(out);
    }
    let _ = writeln!(out, "enumeration bound: {bound}");
    out
}

pub fn bh_image(reports: &[BhImageReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let _ = writeln!(out, "== {} == (signature {})", r.name, r.signature);
        match &r.image {
            Section::Ok { value } => image(&mut out, value),
            Section::NotApplicable { reason } => {
                let _ = writeln!(out, "  not applicable: {reason}");
            }
        }
    }
    out
}

pub fn pi3(r: &Pi3Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "class {} (b_2 = {})", r.class, r.b2);
    let _ = writeln!(out, "complement model: {}", r.model);
    let h: Vec<String> = r.homology.iter().map(|g| g.to_string()).collect();
    let _ = writeln!(out, "H_0..H_4: {}", h.join(", "));
    let _ = writeln!(out, "Euler characteristic: {}", r.euler_characteristic);
    let _ = writeln!(out, "divisibility: {}", r.divisibility);
    let _ = writeln!(out, "π_3: {}", r.pi3);
    match &r.wedge {
        Some(w) => {
            let _ = writeln!(out, "wedge form: {w}");
        }
        None => {
            let _ = writeln!(out, "wedge form: none (nonzero attaching)");
        }
    }
    for n in &r.notes {
        let _ = writeln!(out, "- {n}");
    }
    out
}

pub fn embed6(reports: &[Embed6Report]) -> String {
    let mut out = String::new();
    for r in reports {
        let _ = writeln!(out, "== {} ==", r.name);
        let _ = writeln!(out, "  embeds in R^7: {}", finding(&r.embeds_r7));
        match &r.embeds_r6 {
            Section::Ok { value } => {
                let _ = writeln!(out, "  embeds in R^6: {}", finding(&value.finding));
                for c in &value.conditions {
                    let _ = writeln!(out, "    {}: {} ({})", c.label, c.verdict, c.detail);
                }
                if let Some(cert) = &value.certificate {
                    certificate(&mut out, cert);
                }
            }
            Section::NotApplicable { reason } => {
                let _ = writeln!(out, "  embeds in R^6: not applicable: {reason}");
            }
        }
    }
    out
}

pub fn tables(r: &TablesReport) -> String {
    match r {
        TablesReport::Entry { key, value, source } => format!("{key} = {value}\n  source: {source}\n"),
        TablesReport::Theorem35 { n, finding: f, .. } => {
            format!("nontrivial action of E^(n+3)(S^n) for n = {n}: {}\n", finding(f))
        }
        TablesReport::List { entries } => {
            let mut out = String::new();
            for e in entries {
                let _ = writeln!(out, "{} = {}", e.key, e.value);
            }
            out
        }
    }
}

pub fn ahss(r: &AhssReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "E² page of {} with coefficients {}, total degrees {}±1", r.space, r.row, r.degree);
    let row: Vec<String> = r.coefficients.iter().map(|g| g.to_string()).collect();
    let _ = writeln!(out, "coefficients j = 0..7: {}", row.join(", "));
    for n in r.degree.saturating_sub(1)..=r.degree + 1 {
        let entries: Vec<String> = r
            .e2_nontrivial
            .iter()
            .filter(|(i, j, _)| i + j == n)
            .map(|(i, j, g)| format!("E²_{{{i},{j}}}={g}"))
            .collect();
        let unknown: Vec<String> = r
            .unknown
            .iter()
            .filter(|(i, j)| i + j == n)
            .map(|(i, j)| format!("E²_{{{i},{j}}}=?"))
            .collect();
        let mut all = entries;
        all.extend(unknown);
        let body = if all.is_empty() { "all trivial".to_string() } else { all.join(", ") };
        let _ = writeln!(out, "  degree {n}: {body}");
    }
    if let Some(d7) = &r.degree7 {
        for d in &d7.differentials {
            let _ = writeln!(
                out,
                "differential {:?} → {:?}: {} ({})",
                d.source,
                d.target,
                if d.surjective { "surjective" } else { "not surjective" },
                d.description
            );
        }
        for n in &d7.notes {
            let _ = writeln!(out, "- {n}");
        }
    }
    for n in &r.notes {
        let _ = writeln!(out, "- {n}");
    }
    if let Some(c) = &r.conclusion {
        let _ = writeln!(out, "conclusion: {c}");
    }
    out
}
