use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use blockcalc::cyclotomic::rat_int;
use blockcalc::ext_engine::{ext1, extend, loewy_dot, Cocycle};
use blockcalc::zigzag::{Classification, Window, Zigzag, ZigzagName, ZigzagRep};
use ZigzagName::*;

fn zz() -> Zigzag {
    Zigzag::new(Window::new(-9, 9))
}

#[test]
fn resolution_terms_are_sums_of_projectives() {
    let z = zz();
    let n = 0;
    let res = z.projective_resolution(n, 3).unwrap();
    assert_eq!(res.terms.len(), 4);
    for (j, heads) in res.heads.iter().enumerate() {
        let j = j as i64;
        let mut heads = heads.clone();
        heads.sort();
        let expected: Vec<i64> = (0..=j).map(|i| n - j + 2 * i).collect();
        assert_eq!(heads, expected, "term {j}");
        assert!(z.is_isomorphic(&res.terms[j as usize], &z.r_module(n - j, j).unwrap()));
    }
    assert!(z.is_isomorphic(&res.terms[0], &z.build(P(n)).unwrap()));
    for k in 1..res.differentials.len() {
        assert!(res.differentials[k - 1].mul(&res.differentials[k]).is_zero(), "d∘d at {k}");
    }
}

#[test]
fn hom_from_resolution_terms() {
    let z = zz();
    let n = 0;
    for j in 0..=3i64 {
        let term = z.r_module(n - j, j).unwrap();
        for m in -5..=5 {
            let expected = usize::from((n - m).abs() <= j && (n - j - m).rem_euclid(2) == 0);
            assert_eq!(z.hom_rep(&term, &z.build(L(m)).unwrap()).unwrap(), expected, "j={j} m={m}");
        }
    }
}

#[test]
fn cochain_differential_vanishes_next_to_nonzero_terms() {
    let z = zz();
    let n = 0;
    for s in 1..=3i64 {
        for m in -4..=4 {
            let l = z.build(L(m)).unwrap();
            let h = |j: i64| z.hom_rep(&z.r_module(n - j, j).unwrap(), &l).unwrap();
            if h(s) != 0 {
                assert_eq!(h(s - 1), 0, "s={s} m={m}");
                assert_eq!(h(s + 1), 0, "s={s} m={m}");
            }
        }
    }
}

#[test]
fn projective_exception() {
    let z = zz();
    let n = 0;
    let p = z.build(P(n + 1)).unwrap();
    let a = z.extend_rep(&z.build(Lam(n, 2)).unwrap(), &z.build(L(n + 1)).unwrap(), 0).unwrap();
    assert!(z.is_isomorphic(&a, &p));
    assert_eq!(z.classify_indecomposable(&a).unwrap(), Classification::Name(P(n + 1)));
}

/// Extends `cur` by a neighbouring simple with a random nonzero class.
fn grow(z: &Zigzag, cur: &ZigzagRep, rng: &mut ChaCha8Rng) -> Option<ZigzagRep> {
    let alg = z.presentation();
    let (lo, hi) = cur.support()?;
    let k = rng.gen_range(lo - 1..=hi + 1);
    let l = z.build(L(k)).ok()?;
    let on_top = rng.gen_bool(0.5);
    let (quot, sub) = if on_top { (&l.module, &cur.module) } else { (&cur.module, &l.module) };
    let e = ext1(alg, quot, sub);
    if e.dim == 0 {
        return None;
    }
    let mut class = Cocycle::zero(alg, quot, sub);
    while class.is_zero() {
        class = e
            .cocycles
            .iter()
            .fold(Cocycle::zero(alg, quot, sub), |acc, c| acc.add(&c.scale(&rat_int(rng.gen_range(-2..=2)))));
    }
    let module = extend(alg, quot, sub, &class).ok()?;
    Some(ZigzagRep { window: z.window, module })
}

#[test]
fn random_iterated_extensions_are_classified() {
    let z = zz();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut classified = 0;
    for _ in 0..150 {
        let mut cur = z.build(L(0)).unwrap();
        let len = rng.gen_range(2..=4);
        while cur.dim() < len {
            match grow(&z, &cur, &mut rng) {
                Some(next) => cur = next,
                None => continue,
            }
        }
        if !z.is_indecomposable(&cur) {
            continue;
        }
        let got = z.classify_indecomposable(&cur).unwrap();
        assert_ne!(got, Classification::Unknown, "dims {:?}", cur.dims());
        classified += 1;
    }
    assert!(classified > 50);
}

#[test]
fn dot_output_for_diamond() {
    let z = zz();
    let layers = z.loewy(&z.build(P(0)).unwrap()).unwrap();
    let dot = loewy_dot("P(0)", &layers);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("->").count(), 4);
    assert!(dot.contains("L(-1)") && dot.contains("L(1)"));
}

#[test]
fn extension_examples() {
    let z = zz();
    let e = z.extend_rep(&z.build(L(1)).unwrap(), &z.build(L(0)).unwrap(), 0).unwrap();
    assert_eq!(z.loewy(&e).unwrap(), vec![vec!["L(1)".to_string()], vec!["L(0)".to_string()]]);
    let p = z.extend_rep(&z.build(Eplus(-1)).unwrap(), &z.build(Eplus(0)).unwrap(), 0).unwrap();
    assert!(z.is_isomorphic(&p, &z.build(P(0)).unwrap()));
    for m in -5..=5 {
        assert_eq!(z.ext1(Eminus(0), Eplus(m)).unwrap(), 0);
    }
    assert_eq!(z.ext1(Eplus(0), L(2)).unwrap(), 1);
    assert_eq!(z.ext1(Eminus(0), L(-2)).unwrap(), 1);
}
