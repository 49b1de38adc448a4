//! Independent oracles for the lattice enumerator and the cross-module
//! agreements between the lattice, complement and classify layers.

use std::collections::BTreeSet;

use bhclass::classify::{classify_r7, compressible, embeds_in_r6, triviality_applicable, Manifold4Data};
use bhclass::complement::{pi3_of, ComplementModel};
use bhclass::exactalg::{FgAbGroup, IntMatrix};
use bhclass::lattice::{
    divisibility, enumerate_characteristic, hyperbolic_split, signature, Finiteness, H2Class, IntegralLattice,
    SplitOutcome,
};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use proptest::prelude::*;

fn symmetric(n: usize, entries: &[i64]) -> IntMatrix {
    let mut g = IntMatrix::zeros(n, n);
    let mut it = entries.iter();
    for r in 0..n {
        for c in r..n {
            let v = BigInt::from(*it.next().unwrap());
            g[(r, c)] = v.clone();
            g[(c, r)] = v;
        }
    }
    g
}

fn box_points(n: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (-bound..=bound).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}

/// Characteristic vectors of square `t` with every `|x_i| ≤ bounds[i]`, by
/// exhaustive search with plain `i64` arithmetic.
fn brute_force(g: &[Vec<i64>], t: i64, bounds: &[i64]) -> BTreeSet<Vec<i64>> {
    let n = g.len();
    let b = bounds.iter().copied().max().unwrap_or(0);
    box_points(n, b)
        .into_iter()
        .filter(|x| x.iter().zip(bounds).all(|(v, b)| v.abs() <= *b))
        .filter(|x| {
            let gx: Vec<i64> = (0..n).map(|i| (0..n).map(|j| g[i][j] * x[j]).sum()).collect();
            let q: i64 = x.iter().zip(&gx).map(|(a, b)| a * b).sum();
            q == t && (0..n).all(|i| (gx[i] - g[i][i]).rem_euclid(2) == 0)
        })
        .collect()
}

/// For a definite form, `|x_i| ≤ sqrt(|t|·(G⁻¹)_ii)` whenever `|xᵀGx| = |t|`.
fn certified_bounds(g: &IntMatrix, t: i64) -> Vec<i64> {
    let n = g.rows();
    let det = g.determinant().unwrap().abs();
    (0..n)
        .map(|i| {
            let keep: Vec<usize> = (0..n).filter(|&k| k != i).collect();
            let minor = IntMatrix::from_rows(
                &keep
                    .iter()
                    .map(|&r| keep.iter().map(|&c| g[(r, c)].clone()).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
            )
            .unwrap();
            let cof = if n == 1 { BigInt::from(1) } else { minor.determinant().unwrap().abs() };
            let v = (BigInt::from(t.abs()) * cof / &det).to_i64().unwrap();
            (v as f64).sqrt().floor() as i64 + 1
        })
        .collect()
}

fn as_set(classes: &[H2Class]) -> BTreeSet<Vec<i64>> {
    classes
        .iter()
        .map(|x| x.coords().iter().map(|v| v.to_i64().unwrap()).collect())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, max_global_rejects: 100_000, ..ProptestConfig::default() })]

    #[test]
    fn enumeration_matches_brute_force(
        n in 1usize..=4,
        entries in proptest::collection::vec(-3i64..=3, 10),
        t in -8i64..=8,
        bound in 1u64..=5,
    ) {
        let g = symmetric(n, &entries);
        let det = g.determinant().unwrap();
        prop_assume!(det.abs() == BigInt::from(1));
        let l = IntegralLattice::new(g.clone()).unwrap();
        let rows: Vec<Vec<i64>> = g.to_rows().iter().map(|r| r.iter().map(|v| v.to_i64().unwrap()).collect()).collect();

        let e = enumerate_characteristic(&l, &BigInt::from(t), bound).unwrap();
        let got = as_set(&e.classes);
        let b = bound as i64;
        let in_box: BTreeSet<Vec<i64>> = got.iter().filter(|x| x.iter().all(|v| v.abs() <= b)).cloned().collect();
        prop_assert_eq!(&in_box, &brute_force(&rows, t, &vec![b; n]));

        let sigma = signature(&l).unwrap();
        for x in &e.classes {
            prop_assert_eq!((l.square(x).unwrap() - sigma).to_i64().unwrap().rem_euclid(8), 0);
        }
        if l.is_definite() {
            prop_assert_eq!(e.finiteness, Finiteness::Finite);
            let cert = certified_bounds(&g, t);
            prop_assert_eq!(&got, &brute_force(&rows, t, &cert));
        } else {
            prop_assert_eq!(e.finiteness, Finiteness::PossiblyInfinite);
            prop_assert_eq!(got, in_box);
        }
    }

    #[test]
    fn compressible_iff_pi3_is_z(
        n in 1usize..=4,
        entries in proptest::collection::vec(-3i64..=3, 10),
        coords in proptest::collection::vec(-6i64..=6, 4),
    ) {
        let g = symmetric(n, &entries);
        prop_assume!(g.determinant().unwrap().abs() == BigInt::from(1));
        let l = IntegralLattice::new(g).unwrap();
        let m = Manifold4Data::simply_connected("random", l).unwrap();
        let x = H2Class::from_i64(&coords[..n]);
        let pi3 = pi3_of(&ComplementModel::new(x.clone()));
        prop_assert_eq!(compressible(&m, &x).unwrap(), pi3 == FgAbGroup::integers());
        prop_assert_eq!(pi3, FgAbGroup::cyclic(divisibility(&x)));
    }

    #[test]
    fn r6_excludes_triviality(
        n in 1usize..=4,
        entries in proptest::collection::vec(-3i64..=3, 10),
    ) {
        let g = symmetric(n, &entries);
        prop_assume!(g.determinant().unwrap().abs() == BigInt::from(1));
        let m = Manifold4Data::simply_connected("random", IntegralLattice::new(g).unwrap()).unwrap();
        let r6 = embeds_in_r6(&m).unwrap();
        if r6.finding.is_yes() {
            prop_assert!(!triviality_applicable(&m).unwrap().is_yes());
        }
        let report = classify_r7(&m, 3).unwrap();
        if let Some(prim) = report.primitive_count {
            prop_assert!(prim as usize <= report.bh_image.unwrap().classes().unwrap().len());
        }
    }

    #[test]
    fn scrambled_hyperbolic_sums_split(
        k in 1usize..=3,
        ops in proptest::collection::vec((0usize..6, 0usize..6, -1i64..=1), 0..8),
    ) {
        let mut l = IntegralLattice::zero_rank();
        for _ in 0..k {
            l = l.orthogonal_sum(&IntegralLattice::hyperbolic());
        }
        let n = 2 * k;
        let mut u = IntMatrix::identity(n);
        for (a, b, f) in ops {
            let (a, b) = (a % n, b % n);
            if a != b {
                u.add_col_multiple(a, b, &BigInt::from(f));
            }
        }
        let scrambled = l.change_basis(&u).unwrap();
        match hyperbolic_split(&scrambled, 10).unwrap() {
            SplitOutcome::Split(s) => {
                prop_assert_eq!(s.blocks, k);
                prop_assert_eq!(&s.transform.congruence(scrambled.gram()), l.gram());
            }
            other => prop_assert!(false, "expected a split, got {:?}", other),
        }
    }
}

#[test]
fn brute_force_oracle_sanity() {
    // hand-checked: H at bound 2 gives (0,0), (±2,0), (0,±2)
    let got = brute_force(&[vec![0, 1], vec![1, 0]], 0, &[2, 2]);
    assert_eq!(got.len(), 5);
    assert!(got.contains(&vec![2, 0]) && !got.contains(&vec![1, 0]));
}
