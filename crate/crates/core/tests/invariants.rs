use proptest::prelude::*;

use blockcalc::affine_labels::{block_of, conjugate, ext1_simples, normalize, sigma, Level, SimpleLabel};
use blockcalc::cyclotomic::{cyc_root, rat, rat_int, CycNum, Rat};
use blockcalc::ext_engine::{ext1, hom_dim, is_isomorphic, ModuleRep};
use blockcalc::linalg::Matrix;
use blockcalc::zigzag::{Window, Zigzag, ZigzagName};

fn cyc(order: u64) -> impl Strategy<Value = CycNum> {
    prop::collection::vec((-4i64..=4, 1i64..=3), 1..=4).prop_map(move |cs| {
        cs.iter().enumerate().fold(CycNum::zero(), |acc, (k, &(n, d))| {
            &acc + &cyc_root(order, k as i64).unwrap().scale(&rat(n, d))
        })
    })
}

proptest! {
    #[test]
    fn field_axioms(a in cyc(12), b in cyc(12), c in cyc(12)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&(&a - &a)).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn embedding_is_a_ring_map(a in cyc(6), b in cyc(6)) {
        let e = |x: &CycNum| x.embed(12).unwrap();
        prop_assert_eq!(e(&(&a * &b)), &e(&a) * &e(&b));
        prop_assert_eq!(e(&(&a + &b)), &e(&a) + &e(&b));
        // Mixed orders are lifted to the common field.
        let z4 = cyc_root(4, 1).unwrap();
        prop_assert_eq!(&a * &z4, &e(&a) * &z4.embed(12).unwrap());
    }
}

fn zigzag() -> Zigzag {
    Zigzag::new(Window::new(-6, 6))
}

/// A weight-preserving invertible base change: unitriangular times diagonal on each weight space.
fn base_change(m: &ModuleRep<Rat>, entries: &[i64]) -> Matrix<Rat> {
    let d = m.dim();
    let mut p = Matrix::identity(d);
    let mut k = 0;
    let mut next = || {
        k += 1;
        entries[k % entries.len()]
    };
    for i in 0..d {
        let diag = next();
        p.set(i, i, rat_int(if diag == 0 { 1 } else { diag }));
        for j in 0..i {
            if m.weights()[i] == m.weights()[j] {
                p.set(i, j, rat_int(next()));
            }
        }
    }
    p
}

fn names() -> Vec<ZigzagName> {
    use ZigzagName::*;
    vec![L(0), L(1), Eplus(0), Eminus(1), P(0), Lam(-2, 3), V(-1, 2)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ext_and_hom_are_base_change_invariant(
        idx in 0usize..7, other in 0usize..7, entries in prop::collection::vec(-3i64..=3, 8),
    ) {
        let z = zigzag();
        let alg = z.presentation();
        let m = z.build(names()[idx]).unwrap().module;
        let n = z.build(names()[other]).unwrap().module;
        let mc = m.conjugate(&base_change(&m, &entries)).unwrap();
        prop_assert_eq!(ext1(alg, &mc, &n).dim, ext1(alg, &m, &n).dim);
        prop_assert_eq!(ext1(alg, &n, &mc).dim, ext1(alg, &n, &m).dim);
        prop_assert_eq!(hom_dim(alg, &mc, &n), hom_dim(alg, &m, &n));
    }

    #[test]
    fn isomorphism_is_an_equivalence(
        idx in 0usize..7, other in 0usize..7,
        e1 in prop::collection::vec(-3i64..=3, 8), e2 in prop::collection::vec(-3i64..=3, 8),
    ) {
        let z = zigzag();
        let alg = z.presentation();
        let m = z.build(names()[idx]).unwrap().module;
        let a = m.conjugate(&base_change(&m, &e1)).unwrap();
        let b = a.conjugate(&base_change(&a, &e2)).unwrap();
        prop_assert!(is_isomorphic(alg, &m, &m));
        prop_assert!(is_isomorphic(alg, &m, &a) && is_isomorphic(alg, &a, &m));
        prop_assert!(is_isomorphic(alg, &a, &b) && is_isomorphic(alg, &m, &b));
        let n = z.build(names()[other]).unwrap().module;
        prop_assert_eq!(is_isomorphic(alg, &m, &n), idx == other);
    }
}

fn level() -> impl Strategy<Value = Level> {
    prop::sample::select(vec![(3, 2), (5, 2), (4, 3), (5, 3), (7, 5)]).prop_map(|(u, v)| Level::new(u, v).unwrap())
}

fn label(lv: Level) -> impl Strategy<Value = SimpleLabel> {
    let (u, v) = (lv.u, lv.v);
    prop_oneof![
        (1..u).prop_map(|r| SimpleLabel::Irr { r }),
        (1..u, 1..v, -6i64..=6).prop_map(|(r, s, ell)| SimpleLabel::dplus(r, s, ell)),
        (1..u, 1..v, -6i64..=6).prop_map(|(r, s, ell)| SimpleLabel::dminus(r, s, ell)),
    ]
}

fn level_and_labels() -> impl Strategy<Value = (Level, SimpleLabel, SimpleLabel)> {
    level().prop_flat_map(|lv| (Just(lv), label(lv), label(lv)))
}

proptest! {
    #[test]
    fn sigma_is_a_group_action((lv, x, _) in level_and_labels(), a in -4i64..=4, b in -4i64..=4) {
        prop_assert_eq!(sigma(&lv, &x, 0).unwrap(), normalize(&lv, &x).unwrap());
        prop_assert_eq!(sigma(&lv, &x, a + b).unwrap(), sigma(&lv, &sigma(&lv, &x, b).unwrap(), a).unwrap());
        prop_assert_eq!(sigma(&lv, &sigma(&lv, &x, a).unwrap(), -a).unwrap(), normalize(&lv, &x).unwrap());
    }

    #[test]
    fn normalization_is_idempotent((lv, x, _) in level_and_labels()) {
        let y = normalize(&lv, &x).unwrap();
        prop_assert_eq!(normalize(&lv, &y).unwrap(), y);
    }

    #[test]
    fn extensions_stay_in_a_block((lv, x, y) in level_and_labels()) {
        if ext1_simples(&lv, &x, &y).unwrap() == 1 {
            prop_assert_eq!(block_of(&lv, &x).unwrap(), block_of(&lv, &y).unwrap());
        }
    }

    #[test]
    fn duality_reverses_extensions((lv, x, y) in level_and_labels()) {
        let (cx, cy) = (conjugate(&lv, &x).unwrap(), conjugate(&lv, &y).unwrap());
        prop_assert_eq!(ext1_simples(&lv, &x, &y).unwrap(), ext1_simples(&lv, &cy, &cx).unwrap());
    }

    #[test]
    fn extension_rule_is_symmetric((lv, x, y) in level_and_labels()) {
        prop_assert_eq!(ext1_simples(&lv, &x, &y).unwrap(), ext1_simples(&lv, &y, &x).unwrap());
    }

    #[test]
    fn sigma_commutes_with_extensions((lv, x, y) in level_and_labels(), m in -5i64..=5) {
        let (sx, sy) = (sigma(&lv, &x, m).unwrap(), sigma(&lv, &y, m).unwrap());
        prop_assert_eq!(ext1_simples(&lv, &sx, &sy).unwrap(), ext1_simples(&lv, &x, &y).unwrap());
    }
}
