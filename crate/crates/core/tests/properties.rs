mod common;

use common::{
    agree, appell_direct, hecke_brute, pentagonal, r, ring_and_window, theta_product, theta_sum,
};
use num_bigint::BigInt;
use proptest::prelude::*;
use qrsv_core::appell::{appell_m, AppellSpec};
use qrsv_core::expr::{parse, Call, Expr};
use qrsv_core::hecke::{hecke_f, HeckeSpec};
use qrsv_core::qfunctions::{jtheta, poch_finite, poch_inf, ThetaSpec};
use qrsv_core::registry::run_check;
use qrsv_core::{Monomial, QSeries, Rational};
use rand::rngs::StdRng;
use rand::SeedableRng;

fn same(a: &QSeries, b: &QSeries, n: Rational) -> bool {
    a.equal_to_order(b, n).unwrap().passed()
}

fn m(x: Monomial, p: i64, z: Monomial, v: Rational) -> QSeries {
    appell_m(&AppellSpec::new(x, p, z), v).unwrap()
}

fn monomial() -> impl Strategy<Value = Monomial> {
    (any::<bool>(), -12i64..=12, 1i64..=3)
        .prop_map(|(neg, k, d)| Monomial::new(neg, Rational::new(k, d)))
}

/// `(p, ex, ez)` with no pole in `m(±q^ex, q^p, ±q^ez)`.
fn generic_appell() -> impl Strategy<Value = (i64, i64, i64, bool, bool)> {
    (
        2i64..=12,
        -20i64..=20,
        -20i64..=20,
        any::<bool>(),
        any::<bool>(),
    )
        .prop_filter("generic", |(p, ex, ez, _, _)| {
            ez.rem_euclid(*p) != 0 && (ex + ez).rem_euclid(*p) != 0
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn triple_product((neg, k, d, base) in (any::<bool>(), 1i64..12, 1i64..=3, 1i64..=4)
        .prop_filter("inside (0, m)", |(_, k, d, base)| *k < base * d))
    {
        let (z, mm, n) = (Monomial::new(neg, Rational::new(k, d)), r(base), r(50));
        agree(&jtheta(ThetaSpec::new(z, mm), n), &theta_product(z, mm, n), n).unwrap();
        let prod = poch_inf(z, mm, n).unwrap()
            * poch_inf(Monomial::q_pow(mm) / z, mm, n).unwrap()
            * poch_inf(Monomial::q_pow(mm), mm, n).unwrap();
        agree(&prod, &theta_sum(z, mm, n), n).unwrap();
    }

    #[test]
    fn finite_times_tail(a in monomial().prop_filter("lead unit", |a| a.exponent() > Rational::from_integer(0)),
                         n in 0u64..15, base in 1i64..=3) {
        let v = r(60);
        let head = poch_finite(a, r(base), n, v).unwrap();
        let tail = poch_inf(a * Monomial::q_pow(r(base * n as i64)), r(base), v).unwrap();
        prop_assert!(same(&(&head * &tail), &poch_inf(a, r(base), v).unwrap(), v));
    }

    #[test]
    fn theta_vanishes_at_integral_powers(n in -10i64..=10, base in 1i64..=5) {
        let t = ThetaSpec::new(Monomial::q_pow(n * base), base);
        prop_assert!(jtheta(t, r(80)).is_zero());
    }

    #[test]
    fn hecke_oracle((a, b, c) in (1i64..=4, 0i64..=4, 1i64..=4), ex in -3i64..=5, ey in -3i64..=5,
                    nx in any::<bool>(), ny in any::<bool>()) {
        let (x, y) = (Monomial::new(nx, r(ex)), Monomial::new(ny, r(ey)));
        let lib = hecke_f(&HeckeSpec::new(a, b, c, x, y, 1), r(40)).unwrap();
        agree(&lib, &hecke_brute(a, b, c, x, y, r(40)), r(40)).unwrap();
    }

    #[test]
    fn appell_oracle((p, ex, ez, nx, nz) in generic_appell()) {
        let (x, z) = (Monomial::new(nx, r(ex)), Monomial::new(nz, r(ez)));
        agree(&m(x, p, z, r(60)), &appell_direct(x, r(p), z, r(60)), r(60)).unwrap();
    }

    #[test]
    fn appell_identities((p, ex, ez, nx, nz) in generic_appell()
        .prop_filter("reflection generic", |t| (t.1 - t.2).rem_euclid(t.0) != 0), k in -2i64..=2)
    {
        let v = r(80);
        let (x, z) = (Monomial::new(nx, r(ex)), Monomial::new(nz, r(ez)));
        let q = |e: i64| Monomial::q_pow(e);
        let base = m(x, p, z, v);
        // periodicity in z
        prop_assert!(same(&base, &m(x, p, z * q(k * p), v), v));
        // inversion
        let inv = m(x.inv(), p, z.inv(), v + x.exponent()).mul_monomial(x.inv());
        prop_assert!(same(&base, &inv, v));
        // shift in x
        let lhs = m(x * q(p), p, z, v);
        let rhs = &QSeries::constant(1, v) - &m(x, p, z, v - x.exponent()).mul_monomial(x);
        prop_assert!(same(&lhs, &rhs, v));
        // reflection
        let lhs = m(x, p, z.inv(), v);
        let rhs = &QSeries::constant(1, v) - &m(q(p) / x, p, z, v);
        prop_assert!(same(&lhs, &rhs, v));
    }

    #[test]
    fn ring_axioms_and_windows(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        prop_assert_eq!(ring_and_window(&mut rng), Ok(()));
    }

    #[test]
    fn expressions_round_trip(e in expr_tree()) {
        let text = e.to_string();
        prop_assert_eq!(parse(&text).unwrap(), e, "{}", text);
    }

    #[test]
    fn raising_the_order_keeps_the_prefix(e in eval_tree(), extra in 1i64..30) {
        let (lo, hi) = (r(25), r(25 + extra));
        if let (Ok(a), Ok(b)) = (e.eval(lo), e.eval(hi)) {
            prop_assert!(same(&a, &b, lo), "{}", e);
        }
    }
}

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (0i64..20).prop_map(|n| Expr::Int(BigInt::from(n))),
        (-6i64..6, 1i64..4).prop_map(|(k, d)| Expr::Q(Rational::new(k, d))),
        (monomial(), 1i64..4, proptest::option::of(0u64..6))
            .prop_map(|(a, b, n)| Expr::Call(Call::Poch { a, base: r(b), n })),
        (0i64..8).prop_map(|n| Expr::Call(Call::PochN(n))),
        (monomial(), 1i64..6).prop_map(|(z, b)| Expr::Call(Call::Theta(ThetaSpec::new(z, b)))),
        (1i64..5, 6i64..12).prop_map(|(a, b)| Expr::Call(Call::Jac(r(a), r(b)))),
        (1i64..5, 6i64..12).prop_map(|(a, b)| Expr::Call(Call::JacBar(r(a), r(b)))),
        (1i64..5).prop_map(|b| Expr::Call(Call::Euler(r(b)))),
        (monomial(), monomial())
            .prop_map(|(x, y)| Expr::Call(Call::Hecke(HeckeSpec::new(2, 3, 2, x, y, 3)))),
        (monomial(), monomial())
            .prop_map(|(x, z)| Expr::Call(Call::Appell(AppellSpec::new(x, 30, z)))),
    ]
}

fn expr_tree() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| -a),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a + b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a - b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a * b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a / b),
            (inner.clone(), -3i64..4).prop_map(|(a, n)| Expr::Pow(Box::new(a), n)),
            (inner, 1i64..4).prop_map(|(a, k)| Expr::Call(Call::Subs(Box::new(a), r(k)))),
        ]
    })
}

/// Expressions that mostly evaluate: products of Pochhammer symbols and
/// thetas with unit leading terms.
fn eval_tree() -> impl Strategy<Value = Expr> {
    let unit = prop_oneof![
        (1i64..4, 1i64..4).prop_map(|(a, b)| Expr::Call(Call::Poch {
            a: Monomial::q_pow(a),
            base: r(b),
            n: None
        })),
        (1i64..5, 6i64..12).prop_map(|(a, b)| Expr::Call(Call::Jac(r(a), r(b)))),
        (1i64..5).prop_map(|b| Expr::Call(Call::Euler(r(b)))),
        (-4i64..5).prop_map(|k| Expr::Q(r(k))),
        (1i64..4).prop_map(|n| Expr::Int(BigInt::from(n))),
    ];
    unit.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a + b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a * b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a / b),
            (inner, 1i64..3)
                .prop_map(|(a, k)| Expr::Call(Call::Subs(Box::new(a), Rational::new(1, k)))),
        ]
    })
}

#[test]
fn pentagonal_numbers() {
    let e = poch_inf(Monomial::q_pow(1), r(1), r(200)).unwrap();
    agree(&e, &pentagonal(200), r(200)).unwrap();
}

#[test]
fn checks_hold_at_lower_orders() {
    for (id, order) in [
        ("conj1", 40),
        ("conj2", 55),
        ("w3", 90),
        ("slem", 70),
        ("snd5", 33),
        ("sprod", 21),
    ] {
        let rep = run_check(id, Some(r(order))).unwrap();
        assert!(rep.passed(), "{rep}");
    }
}

#[test]
fn checks_are_idempotent() {
    let a = run_check("kl1", None).unwrap();
    let b = run_check("kl1", None).unwrap();
    assert_eq!((a.status, a.window), (b.status, b.window));
}
