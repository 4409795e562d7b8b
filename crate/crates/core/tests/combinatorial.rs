use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

use truncgr_core::bwb::{bwb, fiberwise_pushforward, rho, shortcut_length, sort_with_length, BundleWeight, Cohomology, Pushforward, Sorted};
use truncgr_core::combinatorics::{
    binomial, partitions_in_box, pieri_column, ssyt_count, truncated_dim, weyl_dim, GLWeight, Partition,
};
use truncgr_core::oracle;
use truncgr_core::resolution::{
    appendix_euler, build_complex, euler_char_full, euler_char_sections, twisted_h0_terms, GrothElement,
};

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(0u32..6, 0..5).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

fn weight(len: usize) -> impl Strategy<Value = GLWeight> {
    prop::collection::vec(-6i64..6, len).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        GLWeight::new(v).unwrap()
    })
}

fn triples(max_n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        for d in 1..=n / 2 {
            for r in 1..=d {
                out.push((n, d, r));
            }
        }
    }
    out
}

proptest! {
    #[test]
    fn transpose_is_an_involution(p in partition()) {
        prop_assert_eq!(p.transpose().transpose(), p.clone());
        prop_assert_eq!(p.transpose().size(), p.size());
    }

    #[test]
    fn dual_is_an_involution(w in weight(4)) {
        prop_assert_eq!(w.dual().dual(), w.clone());
    }

    #[test]
    fn weyl_dim_ignores_determinant_twists(w in weight(4), c in -5i64..5) {
        prop_assert_eq!(weyl_dim(4, &w.shift(c)).unwrap(), weyl_dim(4, &w).unwrap());
        prop_assert_eq!(w.shift(c).sl_reduce(), w.sl_reduce());
        prop_assert_eq!(weyl_dim(4, &w.dual()).unwrap(), weyl_dim(4, &w).unwrap());
    }

    #[test]
    fn weyl_dim_counts_tableaux(p in partition(), n in 1usize..5) {
        prop_assume!(p.len() <= n);
        let w = GLWeight::from_partition(&p, n).unwrap();
        prop_assert_eq!(weyl_dim(n, &w).unwrap(), BigUint::from(ssyt_count(n, &p)));
    }

    #[test]
    fn pieri_is_dimension_consistent(p in partition(), n in 1usize..5, k in 0usize..5) {
        prop_assume!(p.len() <= n && k <= n);
        let lhs: u64 = pieri_column(&p, k, n).iter().map(|mu| ssyt_count(n, mu)).sum();
        let rhs = BigUint::from(ssyt_count(n, &p)) * binomial(n, k);
        prop_assert_eq!(BigUint::from(lhs), rhs);
    }

    #[test]
    fn bwb_twist_compatibility(a in weight(2), b in weight(3), c in -4i64..4) {
        let bw = BundleWeight::new(5, 2, a.clone(), b.clone()).unwrap();
        let shifted = BundleWeight::new(5, 2, a.shift(c), b.shift(c)).unwrap();
        match (bwb(&bw).unwrap(), bwb(&shifted).unwrap()) {
            (Cohomology::Vanishes, Cohomology::Vanishes) => {}
            (Cohomology::Nonzero { degree: k1, weight: w1, .. }, Cohomology::Nonzero { degree: k2, weight: w2, .. }) => {
                prop_assert_eq!(k1, k2);
                prop_assert_eq!(w1.shift(c), w2);
            }
            (x, y) => prop_assert!(false, "{:?} vs {:?}", x, y),
        }
    }

    #[test]
    fn sorting_length_is_inversion_count(w in prop::collection::vec(-8i64..8, 0..7)) {
        match sort_with_length(&w) {
            Sorted::Singular => {
                let mut v = w.clone();
                v.sort_unstable();
                v.dedup();
                prop_assert!(v.len() < w.len());
            }
            Sorted::Regular { sorted, length } => {
                prop_assert_eq!(length, oracle::inversions(&w));
                prop_assert!(sorted.windows(2).all(|p| p[0] > p[1]));
            }
        }
    }

    #[test]
    fn groth_group_laws(
        xs in prop::collection::vec((weight(3), weight(2), -3i64..4), 0..4),
        ys in prop::collection::vec((weight(3), weight(2), -3i64..4), 0..4),
        zs in prop::collection::vec((weight(3), weight(2), -3i64..4), 0..4),
    ) {
        let build = |v: &[(GLWeight, GLWeight, i64)]| {
            let mut g = GrothElement::zero();
            for (a, b, c) in v {
                g.add_term(a, b, BigInt::from(*c));
            }
            g
        };
        let (x, y, z) = (build(&xs), build(&ys), build(&zs));
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert!((&x + &(-&x)).is_zero());
        prop_assert_eq!((&x + &y).dimension(), x.dimension() + y.dimension());
        prop_assert!(x.terms().all(|(_, c)| *c != BigInt::from(0)));
    }
}

#[test]
fn rho_and_sorting_examples() {
    assert_eq!(rho(1).entries(), &[1]);
    assert_eq!(rho(4).entries(), &[4, 3, 2, 1]);
    assert_eq!(sort_with_length(&[4, 1]), Sorted::Regular { sorted: vec![4, 1], length: 0 });
    assert_eq!(sort_with_length(&[0, 1]), Sorted::Regular { sorted: vec![1, 0], length: 1 });
    assert_eq!(sort_with_length(&[3, 3]), Sorted::Singular);
}

#[test]
fn p1_line_bundles_match_cech() {
    for k in -5..=5 {
        let coh = bwb(&BundleWeight::line_bundle(2, 1, k).unwrap()).unwrap();
        let (h0, h1) = oracle::cech_p1(k);
        assert_eq!(coh.h(0), BigUint::from(h0), "h0 O({k})");
        assert_eq!(coh.h(1), BigUint::from(h1), "h1 O({k})");
        assert_eq!(h0, (k + 1).max(0) as usize);
        assert_eq!(h1, (-k - 1).max(0) as usize);
    }
}

#[test]
fn shortcut_agrees_with_inversions_exhaustively() {
    for big_n in 1..=6 {
        for r in 1..=3.min(big_n) {
            for lambda in partitions_in_box(r, big_n as u32) {
                let full = fiberwise_pushforward(&lambda, r, big_n).unwrap();
                let short = shortcut_length(&lambda, r, big_n).unwrap();
                match (full, short) {
                    (Pushforward::Vanishes, None) => {}
                    (Pushforward::Regular { length, .. }, Some(s)) => assert_eq!(length, s, "{lambda} N={big_n} r={r}"),
                    (f, s) => panic!("{lambda} N={big_n} r={r}: {f:?} vs {s:?}"),
                }
            }
        }
    }
}

#[test]
fn complex_invariants() {
    for (n, d, r) in triples(10) {
        if n - d > 6 {
            continue;
        }
        let big_n = n - d;
        let layers = build_complex(n, d, r).unwrap();
        assert_eq!(layers.len(), r * r + 1);
        assert!(!layers[0].terms.is_empty() && !layers[r * r].terms.is_empty());
        let total: usize = layers.iter().map(|l| l.terms.len()).sum();
        assert_eq!(BigUint::from(total), binomial(2 * r, r));
        for layer in &layers {
            for t in &layer.terms {
                assert_eq!(t.layer(), layer.index);
                assert!(t.bundle_partition.len() <= big_n);
                assert!(t.levi_dim >= BigUint::from(1u32));
            }
        }
        let first: Vec<&Partition> = layers[1].terms.iter().map(|t| &t.source).collect();
        let expected = Partition::new(vec![(big_n - r + 1) as u32]).unwrap();
        assert_eq!(first, vec![&expected], "layer 1 for ({n},{d},{r})");
    }
}

#[test]
fn twisted_sections_and_euler_characteristic() {
    for (n, d, r) in triples(8) {
        let terms = twisted_h0_terms(n, d, r).unwrap();
        assert_eq!(terms.len(), r);
        for t in &terms {
            assert_eq!(t.layer, r - t.m);
            let mut parts = vec![(n - d - t.m) as u32];
            parts.resize(r, 0);
            assert_eq!(t.term.source, Partition::new(parts).unwrap());
            assert_eq!(t.sections.h(0), binomial(n, t.m));
        }
        let expected = BigInt::from(truncated_dim(n, d, r - 1).unwrap());
        assert_eq!(euler_char_sections(n, d, r).unwrap(), expected, "({n},{d},{r})");
        assert_eq!(euler_char_full(n, d, r).unwrap(), expected, "({n},{d},{r})");
    }
}

#[test]
fn appendix_identity_up_to_seven() {
    for (n, d, r) in triples(7) {
        if r > 3 {
            continue;
        }
        let id = appendix_euler(n, d, r).unwrap();
        assert!(id.equal, "({n},{d},{r})");
        assert_eq!(id.dimension, BigInt::from(truncated_dim(n, d, r - 1).unwrap()));
    }
}

#[test]
fn truncated_dim_endpoints() {
    for n in 2..=10 {
        for d in 1..=n / 2 {
            assert_eq!(truncated_dim(n, d, 0).unwrap(), BigUint::from(1u32));
            assert_eq!(truncated_dim(n, d, d).unwrap(), binomial(n, d));
            for r in 0..=d {
                assert_eq!(truncated_dim(n, d, r).unwrap(), BigUint::from(oracle::count_truncated_basis(n, d, r)));
            }
        }
    }
}
