use proptest::prelude::*;

use truncgr_core::checks::{homogeneous_plucker_parametrization, plucker_quadric};
use truncgr_core::groebner::{buchberger, implicitize, GroebnerConfig};
use truncgr_core::interp::{stabilize, vanishing_dim, vanishing_space, PointKind};
use truncgr_core::poly::{Monomial, MonomialOrder, MultiPoly};
use truncgr_core::rational::{q, Q};
use truncgr_core::sampling::{random_q, rng};
use truncgr_core::Error;

fn small_poly(nvars: usize) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0u32..3, nvars), -3i64..4), 1..4)
        .prop_map(|terms| MultiPoly::from_terms(terms.into_iter().map(|(e, c)| (Monomial::new(e), q(c)))))
}

fn cfg(budget: u64) -> GroebnerConfig {
    GroebnerConfig { budget, ..GroebnerConfig::default() }
}

fn twisted_cubic_points(count: usize) -> Vec<Vec<Q>> {
    (1..=count as i64).map(|t| vec![q(t), q(t * t), q(t * t * t)]).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn buchberger_output_is_a_basis(gens in prop::collection::vec(small_poly(3), 1..4), elim in any::<bool>()) {
        let order = if elim { MonomialOrder::Elimination { block: 1 } } else { MonomialOrder::Grevlex };
        match buchberger(&gens, order, cfg(5_000)) {
            Err(Error::Diverged { .. }) => {}
            Err(e) => prop_assert!(false, "{e}"),
            Ok(basis) => {
                prop_assert!(basis.satisfies_criterion());
                for g in &gens {
                    prop_assert!(basis.contains(g));
                }
            }
        }
    }

    #[test]
    fn vanishing_dimension_decreases_with_more_points(s in any::<u64>(), degree in 1u32..4) {
        let mut g = rng(s);
        let points: Vec<Vec<Q>> = (0..12).map(|_| (0..3).map(|_| random_q(&mut g, 10)).collect()).collect();
        let dims: Vec<usize> = (1..=points.len())
            .map(|k| vanishing_dim(&points[..k], degree, PointKind::Affine).unwrap())
            .collect();
        prop_assert!(dims.windows(2).all(|w| w[0] >= w[1]));
    }
}

#[test]
fn two_by_three_minors_cut_out_nothing_new() {
    // the 2x3 minors of a generic 2x3 matrix of coordinates are themselves
    // a Gröbner basis; interpolation on rank-one points sees the same ideal
    let x = |i| MultiPoly::var(i);
    let minor = |a: usize, b: usize| &(&x(a) * &x(3 + b)) - &(&x(b) * &x(3 + a));
    let gens = vec![minor(0, 1), minor(0, 2), minor(1, 2)];
    let basis = buchberger(&gens, MonomialOrder::Grevlex, GroebnerConfig::default()).unwrap();
    assert_eq!(basis.polys.len(), 3);
    let mut g = rng(4);
    let points: Vec<Vec<Q>> = (0..60)
        .map(|_| {
            let (u, v) = (random_q(&mut g, 10), random_q(&mut g, 10));
            let w: Vec<Q> = (0..3).map(|_| random_q(&mut g, 10)).collect();
            w.iter().map(|c| &u * c).chain(w.iter().map(|c| &v * c)).collect()
        })
        .collect();
    // degree-2 forms vanishing: exactly the three minors
    assert_eq!(vanishing_dim(&points, 2, PointKind::Projective).unwrap(), 3);
    for f in vanishing_space(&points, 2, PointKind::Projective).unwrap() {
        assert!(basis.contains(&f));
    }
    // degree 3: the minors times the six coordinates, with two linear syzygies
    assert_eq!(vanishing_dim(&points, 3, PointKind::Projective).unwrap(), 16);
    assert_eq!(vanishing_dim(&points, 1, PointKind::Projective).unwrap(), 0);
}

#[test]
fn twisted_cubic_two_oracles() {
    let points = twisted_cubic_points(20);
    let stab = stabilize(&points, 2, PointKind::Affine, 4).unwrap();
    assert_eq!(stab.stable, Some(3));
    let x = |i| MultiPoly::var(i);
    let gens = vec![&x(1) - &x(0).pow(2), &x(2) - &x(0).pow(3)];
    let basis = buchberger(&gens, MonomialOrder::Grevlex, GroebnerConfig::default()).unwrap();
    let quadrics = vanishing_space(&points, 2, PointKind::Affine).unwrap();
    assert_eq!(quadrics.len(), 3);
    for f in &quadrics {
        assert!(basis.contains(f));
    }
    // conversely the ideal's quadrics vanish on the points
    for f in &quadrics {
        for p in &points {
            assert_eq!(f.eval(p).unwrap(), q(0));
        }
    }
}

#[test]
fn plucker_relation_from_elimination() {
    let param = homogeneous_plucker_parametrization(4, 2).unwrap();
    let imp = implicitize(5, &param, GroebnerConfig::default()).unwrap();
    assert_eq!(imp.targets.len(), 6);
    assert_eq!(imp.relations.len(), 1);
    let quadric = plucker_quadric();
    assert!(imp.relations[0] == quadric || imp.relations[0] == -quadric);
}

#[test]
fn elimination_of_a_parametrized_conic() {
    let t = MultiPoly::var(0);
    let param = vec![("y0".to_string(), t.pow(2)), ("y1".to_string(), t.clone())];
    let imp = implicitize(1, &param, GroebnerConfig::default()).unwrap();
    let y = |i| MultiPoly::var(i);
    let expected = &y(0) - &y(1).pow(2);
    assert_eq!(imp.relations.len(), 1);
    assert!(imp.relations[0] == expected || imp.relations[0] == -expected);
}

#[test]
fn budgets_and_caps_are_enforced() {
    let x = |i| MultiPoly::var(i);
    let gens = vec![&x(0).pow(2) - &x(1), &(&x(0) * &x(1)) - &MultiPoly::constant(q(1))];
    assert!(matches!(buchberger(&gens, MonomialOrder::Grevlex, cfg(0)), Err(Error::Diverged { .. })));
    let wide = vec![x(20)];
    assert!(matches!(
        buchberger(&wide, MonomialOrder::Grevlex, GroebnerConfig::default()),
        Err(Error::TooManyVariables { .. })
    ));
    assert!(matches!(vanishing_dim(&[], 2, PointKind::Affine), Err(Error::EmptyPointSet)));
}
