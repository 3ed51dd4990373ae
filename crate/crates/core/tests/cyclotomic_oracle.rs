//! Exact cyclotomic results checked against floating-point evaluation at
//! the principal complex root.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use proptest::prelude::*;

use blockcalc::cyclotomic::{cyc_embed, cyc_root, qint, qint_rational, rat, CycNum};

fn eval(x: &CycNum) -> Complex64 {
    let m = x.order() as f64;
    x.coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / m) * c.to_f64().unwrap())
        .sum()
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() < 1e-12 * (1.0 + a.norm().max(b.norm()))
}

fn root_value(m: u64, k: i64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * k as f64 / m as f64)
}

#[test]
fn zeta6_squared_is_zeta3() {
    let z6 = cyc_root(6, 1).unwrap();
    let sq = &z6 * &z6;
    assert_eq!(sq, cyc_embed(&cyc_root(3, 1).unwrap(), 6).unwrap());
    assert!(close(eval(&sq), root_value(3, 1)));
}

#[test]
fn embedding_of_zeta3() {
    let e = cyc_embed(&cyc_root(3, 1).unwrap(), 6).unwrap();
    assert_eq!(e, cyc_root(6, 2).unwrap());
    assert!(close(eval(&e), root_value(6, 2)));
}

#[test]
fn quantum_integer_two_at_zeta8() {
    let q = cyc_root(8, 1).unwrap();
    let v = qint(2, &q).unwrap();
    assert!(close(eval(&v), root_value(8, 1) + root_value(8, -1)));
    assert!(close(eval(&v), Complex64::new(2.0 * (PI / 4.0).cos(), 0.0)));
}

#[test]
fn rational_quantum_integers_match_sine_ratio() {
    for r in 2..6u64 {
        for p in -12..=12i64 {
            let x = rat(p, 2);
            let exact = eval(&qint_rational(&x, r, 2).unwrap());
            let float = (PI * p as f64 / (2.0 * r as f64)).sin() / (PI / r as f64).sin();
            assert!(close(exact, Complex64::new(float, 0.0)), "r={r} x={x}: {exact} vs {float}");
        }
    }
}

fn element(order: u64) -> impl Strategy<Value = CycNum> {
    prop::collection::vec(-5i64..=5, 1..=4).prop_map(move |ks| {
        ks.iter()
            .enumerate()
            .fold(CycNum::zero(), |acc, (i, &k)| &acc + &cyc_root(order, i as i64 * 3 + 1).unwrap().scale(&rat(k, 1 + i as i64)))
    })
}

proptest! {
    #[test]
    fn arithmetic_agrees_with_complex_evaluation(
        m in prop::sample::select(vec![3u64, 4, 5, 8, 12]),
        a in element(12), b in element(8),
    ) {
        let x = &a + &cyc_root(m, 1).unwrap();
        prop_assert!(close(eval(&(&x * &b)), eval(&x) * eval(&b)));
        prop_assert!(close(eval(&(&x - &b)), eval(&x) - eval(&b)));
        if !b.is_zero() {
            prop_assert!(close(eval(&b.inv().unwrap()), eval(&b).inv()));
        }
    }
}
