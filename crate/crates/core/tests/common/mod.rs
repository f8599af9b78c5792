//! Test-side oracles: naive truncated Laurent polynomials over rational
//! exponents, written without touching the engine's internals.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use qrsv_core::{Monomial, QSeries, Rational};
use rand::rngs::StdRng;
use rand::Rng;

/// Coefficients by exponent; everything below `bound` is exact.
#[derive(Clone, Debug)]
pub struct Poly {
    pub terms: BTreeMap<Rational, BigInt>,
    pub bound: Rational,
}

pub fn r(n: i64) -> Rational {
    Rational::from_integer(n)
}

impl Poly {
    pub fn zero(bound: Rational) -> Poly {
        Poly {
            terms: BTreeMap::new(),
            bound,
        }
    }

    pub fn one(bound: Rational) -> Poly {
        let mut p = Poly::zero(bound);
        p.add(r(0), BigInt::one());
        p
    }

    pub fn add(&mut self, e: Rational, c: BigInt) {
        if e >= self.bound || c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn coeff(&self, e: Rational) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn lowest(&self) -> Option<Rational> {
        self.terms.keys().next().copied()
    }

    /// Product, kept below `bound` (the caller guarantees exactness there).
    pub fn mul(&self, other: &Poly, bound: Rational) -> Poly {
        let mut out = Poly::zero(bound);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                if e1 + e2 < bound {
                    out.add(e1 + e2, c1 * c2);
                }
            }
        }
        out
    }

    /// Multiplies by `(1 - s q^e)` with `e > 0`.
    pub fn mul_binomial(&mut self, s: i64, e: Rational) {
        let shifted: Vec<_> = self.terms.iter().map(|(k, c)| (k + e, c * -s)).collect();
        for (k, c) in shifted {
            self.add(k, c);
        }
    }

    /// Naive long division; the quotient is returned below `bound`.
    pub fn div(&self, den: &Poly, bound: Rational) -> Poly {
        let d0 = den.lowest().expect("nonzero divisor");
        let lead = den.coeff(d0);
        let mut rem = self.clone();
        let mut out = Poly::zero(bound);
        while let Some(e) = rem.lowest() {
            let qe = e - d0;
            if qe >= bound {
                break;
            }
            let c = rem.coeff(e);
            assert!((&c % &lead).is_zero(), "inexact division");
            let k = c / &lead;
            for (de, dc) in &den.terms {
                rem.add(qe + de, -(&k * dc));
            }
            out.add(qe, k);
        }
        out
    }

    pub fn from_series(s: &QSeries) -> Poly {
        let mut p = Poly::zero(s.valid_through());
        for (e, c) in s.terms() {
            p.add(e, c.clone());
        }
        p
    }
}

/// `Ok` when `lib` is exact through `n` and agrees with `oracle` there.
pub fn agree(lib: &QSeries, oracle: &Poly, n: Rational) -> Result<(), String> {
    if lib.valid_through() < n {
        return Err(format!("engine valid only below {}", lib.valid_through()));
    }
    if oracle.bound < n {
        return Err(format!("oracle valid only below {}", oracle.bound));
    }
    let mut exps: Vec<Rational> = oracle.terms.keys().copied().filter(|e| *e < n).collect();
    exps.extend(lib.terms().map(|t| t.0).filter(|e| *e < n));
    exps.sort();
    for e in exps {
        let (a, b) = (lib.coeff(e), oracle.coeff(e));
        if a != b {
            return Err(format!("q^{e}: engine {a}, oracle {b}"));
        }
    }
    Ok(())
}

/// `(z, q^m/z, q^m; q^m)_∞` for `z = ±q^e`, `0 < e < m`, by multiplying
/// binomials.
pub fn theta_product(z: Monomial, m: Rational, n: Rational) -> Poly {
    let e = z.exponent();
    assert!(e > r(0) && e < m);
    let s = z.sign();
    let mut p = Poly::one(n);
    let mut k = 0;
    while e + m * k < n {
        p.mul_binomial(s, e + m * k);
        k += 1;
    }
    let mut k = 0;
    while m - e + m * k < n {
        p.mul_binomial(s, m - e + m * k);
        k += 1;
    }
    let mut k = 1;
    while m * k < n {
        p.mul_binomial(1, m * k);
        k += 1;
    }
    p
}

/// `Σ_k (-1)^k q^{m·C(k,2)} z^k`, every term below `n`.
pub fn theta_sum(z: Monomial, m: Rational, n: Rational) -> Poly {
    let mut p = Poly::zero(n);
    let e = z.exponent();
    let exp = |k: i64| m * (k * (k - 1) / 2) + e * k;
    let vertex = (r(1) / 2 - e / m).floor().to_integer();
    for k in vertex - 200..=vertex + 200 {
        let x = exp(k);
        if x < n {
            let sign = if k.rem_euclid(2) == 1 { -z.sign() } else { 1 };
            p.add(x, BigInt::from(sign));
        }
    }
    assert!(exp(vertex - 200) >= n && exp(vertex + 200) >= n);
    p
}

/// `Σ_k (-1)^k q^{k(3k-1)/2}`.
pub fn pentagonal(n: i64) -> Poly {
    let mut p = Poly::zero(r(n));
    for k in -100i64..=100 {
        let e = k * (3 * k - 1) / 2;
        p.add(r(e), BigInt::from(if k % 2 == 0 { 1 } else { -1 }));
    }
    p
}

/// `f_{a,b,c}(x,y,q)` by summing the box `|r|, |s| <= 60` directly.
pub fn hecke_brute(a: i64, b: i64, c: i64, x: Monomial, y: Monomial, n: Rational) -> Poly {
    let mut p = Poly::zero(n);
    let c2 = |k: i64| k * (k - 1) / 2;
    for rr in -60i64..=60 {
        for ss in -60i64..=60 {
            if (rr >= 0) != (ss >= 0) {
                continue;
            }
            let e =
                r(a * c2(rr) + b * rr * ss + c * c2(ss)) + x.exponent() * rr + y.exponent() * ss;
            if e >= n {
                continue;
            }
            let mut coeff: i64 = if rr >= 0 { 1 } else { -1 };
            if (rr + ss).rem_euclid(2) == 1 {
                coeff = -coeff;
            }
            if x.is_negative() && rr.rem_euclid(2) == 1 {
                coeff = -coeff;
            }
            if y.is_negative() && ss.rem_euclid(2) == 1 {
                coeff = -coeff;
            }
            p.add(e, BigInt::from(coeff));
        }
    }
    p
}

/// `m(x, q^p, z)` from its definition: each `1/(1 - q^{p(r-1)} x z)` is
/// expanded as a geometric series and the bilateral sum is divided by
/// `j(z; q^p)` term by term.
pub fn appell_direct(x: Monomial, p: Rational, z: Monomial, n: Rational) -> Poly {
    let big = n + r(400);
    let mut sum = Poly::zero(big);
    let xz = x * z;
    for rr in -120i64..=120 {
        let ne = p * (rr * (rr - 1) / 2) + z.exponent() * rr;
        let mut nsign = if rr.rem_euclid(2) == 1 { -1 } else { 1 };
        if z.is_negative() && rr.rem_euclid(2) == 1 {
            nsign = -nsign;
        }
        let u = p * (rr - 1) + xz.exponent();
        assert!(u != r(0), "not generic");
        let us = xz.sign();
        if u > r(0) {
            // Σ_{k>=0} u^k
            let mut k = 0i64;
            while ne + u * k < big {
                let s = if us < 0 && k % 2 == 1 { -1 } else { 1 };
                sum.add(ne + u * k, BigInt::from(nsign * s));
                k += 1;
            }
        } else {
            // -Σ_{k>=1} u^{-k}
            let mut k = 1i64;
            while ne - u * k < big {
                let s = if us < 0 && k % 2 == 1 { -1 } else { 1 };
                sum.add(ne - u * k, BigInt::from(-nsign * s));
                k += 1;
            }
        }
    }
    let theta = theta_sum(z, p, big);
    sum.div(&theta, n)
}

/// A random series with small coefficients.
pub fn random_series(rng: &mut StdRng) -> (i64, Vec<(i64, i64)>, i64) {
    let scale = [1, 1, 2, 3][rng.gen_range(0..4)];
    let lo = rng.gen_range(-6..6);
    let len = rng.gen_range(1..25);
    let mut terms = Vec::new();
    for i in 0..len {
        let c: i64 = rng.gen_range(-3..=3);
        if c != 0 || i == 0 {
            terms.push((lo + i, if i == 0 && c == 0 { 1 } else { c }));
        }
    }
    let valid = lo + len + rng.gen_range(0..10);
    (scale, terms, valid)
}

/// Ring axioms on the common window, plus window soundness: two
/// different completions of each operand beyond its window must give
/// products and inverses that agree with the engine inside the engine's
/// reported window.
pub fn ring_and_window(rng: &mut StdRng) -> Result<(), String> {
    let mk = |rng: &mut StdRng| {
        let (scale, terms, valid) = random_series(rng);
        let s = QSeries::from_index_terms(scale, terms.clone(), valid);
        let completions: Vec<Poly> = (0..2)
            .map(|_| {
                let mut p = Poly::zero(r(1000));
                for &(i, c) in &terms {
                    if i < valid {
                        p.add(Rational::new(i, scale), BigInt::from(c));
                    }
                }
                for i in valid..valid + 30 {
                    p.add(Rational::new(i, scale), BigInt::from(rng.gen_range(-3..=3)));
                }
                p
            })
            .collect();
        (s, completions)
    };
    let (a, pa) = mk(rng);
    let (b, pb) = mk(rng);
    let (c, _) = mk(rng);

    let same = |x: &QSeries, y: &QSeries, what: &str| -> Result<(), String> {
        let w = x.valid_through().min(y.valid_through());
        match x.equal_to_order(y, w) {
            Ok(o) if o.passed() => Ok(()),
            other => Err(format!("{what}: {other:?}")),
        }
    };
    same(&(&a + &b), &(&b + &a), "a+b = b+a")?;
    same(&(&a * &b), &(&b * &a), "ab = ba")?;
    same(&(&(&a + &b) + &c), &(&a + &(&b + &c)), "(a+b)+c")?;
    same(&(&(&a * &b) * &c), &(&a * &(&b * &c)), "(ab)c")?;
    same(&(&a * &(&b + &c)), &(&(&a * &b) + &(&a * &c)), "a(b+c)")?;

    let prod = &a * &b;
    let w = prod.valid_through();
    for (x, y) in pa.iter().zip(&pb) {
        let full = x.mul(y, w);
        agree(&prod, &full, w).map_err(|e| format!("product window: {e}"))?;
    }
    let lead = a.lead_coefficient().cloned();
    if let Some(l) = lead {
        if l.abs().is_one() {
            let inv = a.invert().map_err(|e| e.to_string())?;
            let w = inv.valid_through();
            for x in &pa {
                let full = Poly::one(r(1000)).div(x, w);
                agree(&inv, &full, w).map_err(|e| format!("inverse window: {e}"))?;
            }
        }
    }
    Ok(())
}
