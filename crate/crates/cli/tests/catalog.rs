use bhclass::exactalg::IntRepr;
use bhclass_cli::catalog::{adhoc_record, parse_gram, Catalog, ManifoldRecord};
use bhclass_cli::exit;
use proptest::prelude::*;

#[test]
fn builtin_catalog_validates() {
    let entries = Catalog::builtin().entries(&[]).unwrap();
    let names: Vec<&str> = entries.iter().map(|e| e.record.name.as_str()).collect();
    for want in ["CP2", "S2xS2", "CP2#CP2", "CP2#-CP2", "S4", "K3-form"] {
        assert!(names.contains(&want), "missing {want}");
    }
    let k3 = entries.iter().find(|e| e.record.name == "K3-form").unwrap();
    assert_eq!(k3.data.lattice.rank(), 22);
    assert_eq!(k3.data.signature().unwrap(), -16);
    assert!(k3.data.lattice.is_unimodular());
}

#[test]
fn builtin_catalog_round_trips() {
    let c = Catalog::builtin();
    let again = Catalog::parse(&c.to_toml()).unwrap();
    assert_eq!(c, again);
}

#[test]
fn asymmetric_gram_is_rejected() {
    let err = adhoc_record(parse_gram("[[1,2],[3,4]]").unwrap())
        .to_data()
        .unwrap_err();
    assert!(err.to_string().contains("not symmetric"), "{err}");
    let err = Catalog {
        manifold: vec![adhoc_record(parse_gram("[[1,2],[3,4]]").unwrap())],
    }
    .entries(&[])
    .unwrap_err();
    assert_eq!(err.code, exit::INPUT);
    assert!(err.message.contains("record \"adhoc\""), "{}", err.message);
}

#[test]
fn malformed_records_are_rejected() {
    let rec = |gram: &str, spin: bool, extra: &str| {
        format!(
            "[[manifold]]\nname = \"x\"\ngram = {gram}\nh1_rank = 0\nh1_torsion = []\n\
             orientable = true\nspin = {spin}\nsimply_connected = true\n{extra}"
        )
    };
    assert!(Catalog::parse(&rec("[[1]]", false, "")).unwrap().entries(&[]).is_ok());
    for (text, why) in [
        (rec("[[1, 0], [0]]", false, ""), "ragged"),
        (rec("[[2]]", true, ""), "not unimodular"),
        (rec("[[1]]", true, ""), "odd but spin"),
        (rec("[[0, 1], [1, 0]]", false, ""), "even but not spin"),
        (rec("[[1]]", false, "h1_mod2_rank = 1\n"), "wrong mod-2 rank"),
        (rec("[[1]]", false, "colour = 3\n"), "unknown field"),
        (rec("[[1]]", false, "") + &rec("[[1]]", false, ""), "duplicate"),
    ] {
        let r = Catalog::parse(&text).and_then(|c| c.entries(&[]));
        assert!(r.is_err(), "{why} accepted");
    }
}

#[test]
fn unknown_name_is_an_input_error() {
    let err = Catalog::builtin().entries(&["T4".into()]).unwrap_err();
    assert_eq!(err.code, exit::INPUT);
}

proptest! {
    #[test]
    fn records_round_trip(
        n in 0usize..=4,
        entries in proptest::collection::vec(-5i64..=5, 16),
        torsion in proptest::collection::vec(2i64..=6, 0..2),
        name in "[A-Za-z0-9#-]{1,8}",
    ) {
        let gram: Vec<Vec<IntRepr>> = (0..n)
            .map(|r| (0..n).map(|c| IntRepr::Small(entries[r.min(c) * 4 + r.max(c)])).collect())
            .collect();
        let mut record = adhoc_record(gram);
        record.name = name;
        record.h1_torsion = torsion.into_iter().map(IntRepr::Small).collect();
        let c = Catalog { manifold: vec![record] };
        let text = c.to_toml();
        let back = Catalog::parse(&text).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(back.to_toml(), text);
        let _: &ManifoldRecord = &back.manifold[0];
    }
}
