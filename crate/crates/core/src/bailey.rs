//! Three Bailey pairs relative to `a ∈ {1, q, q²}`, the defining relation
//! `β_n = Σ_{i≤n} α_i / ((q;q)_{n-i} (aq;q)_{n+i})`, Slater's identities
//! behind them, and Lovejoy's two-pair transform.

use std::time::Instant;

use num_bigint::BigInt;
use serde::Serialize;

use crate::qfunctions::inv_poch_reciprocal;
use crate::series::{ceil_index, Dense};
use crate::{CheckReport, QSeries, Rational, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum BaileyPair {
    /// Relative to `a = 1`, `β_n = 1/(q;q)_{2n}`.
    BP1,
    /// Relative to `a = q`, `β_n = 1/(q;q)_{2n}`.
    BP2,
    /// Relative to `a = q²`, `β_n = 1/(q;q)_{2n+1}`.
    BP3,
}

impl BaileyPair {
    pub const ALL: [BaileyPair; 3] = [BaileyPair::BP1, BaileyPair::BP2, BaileyPair::BP3];

    /// `a = q^k`.
    pub fn relative_exponent(self) -> i64 {
        match self {
            BaileyPair::BP1 => 0,
            BaileyPair::BP2 => 1,
            BaileyPair::BP3 => 2,
        }
    }

    /// `α_n` is `numerator(n) / ∏ (1 - q^t)` over these `t`.
    fn denominator(self) -> &'static [i64] {
        match self {
            BaileyPair::BP1 => &[],
            BaileyPair::BP2 => &[1],
            BaileyPair::BP3 => &[1, 2],
        }
    }

    /// Numerator of `α_n` as `(exponent, coefficient)` pairs.
    fn numerator(self, n: u64) -> Vec<(i64, i64)> {
        let n = n as i64;
        let k = (n + 1) / 3;
        match (self, n.rem_euclid(3)) {
            (BaileyPair::BP1, _) if n == 0 => vec![(0, 1)],
            (BaileyPair::BP1, 2) => vec![(6 * k * k - 5 * k + 1, -1)],
            (BaileyPair::BP1, 0) => vec![(6 * k * k - k, 1), (6 * k * k + k, 1)],
            (BaileyPair::BP1, _) => {
                let k = n / 3;
                vec![(6 * k * k + 5 * k + 1, -1)]
            }
            (BaileyPair::BP2, 2) => vec![(6 * k * k - 5 * k + 1, -1), (6 * k * k + k, 1)],
            (BaileyPair::BP2, 0) => vec![(6 * k * k - k, 1), (6 * k * k + 5 * k + 1, -1)],
            (BaileyPair::BP2, _) => vec![],
            (BaileyPair::BP3, 2) => vec![],
            (BaileyPair::BP3, 0) => vec![(6 * k * k + k, 1), (6 * k * k + 7 * k + 2, -1)],
            (BaileyPair::BP3, _) => {
                let k = n / 3;
                vec![(6 * k * k + 5 * k + 1, -1), (6 * k * k + 11 * k + 5, 1)]
            }
        }
    }

    /// Index `m` with `β_n = 1/(q;q)_m`.
    fn beta_length(self, n: u64) -> i64 {
        match self {
            BaileyPair::BP3 => 2 * n as i64 + 1,
            _ => 2 * n as i64,
        }
    }
}

impl std::fmt::Display for BaileyPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

fn add_terms(d: &mut Dense, terms: &[(i64, i64)], shift: i64) {
    for &(e, c) in terms {
        d.add_at(e + shift, &BigInt::from(c));
    }
}

/// `1 / ∏_{k=from}^{to} (1 - q^k)` applied in place.
fn div_range(d: &mut Dense, from: i64, to: i64) {
    for k in from.max(1)..=to {
        if k >= d.hi() {
            break;
        }
        d.div_one_minus(1, k);
    }
}

/// `α_n(a; q)`, exact below `v`.
pub fn bp_alpha(pair: BaileyPair, n: u64, v: Rational) -> QSeries {
    let hi = ceil_index(v, 1);
    let mut d = Dense::new(0, hi.max(0));
    d.valid = hi;
    add_terms(&mut d, &pair.numerator(n), 0);
    for &t in pair.denominator() {
        if t < d.hi() {
            d.div_one_minus(1, t);
        }
    }
    d.into_series(1)
}

/// `β_n(a; q)`, exact below `v`.
pub fn bp_beta(pair: BaileyPair, n: u64, v: Rational) -> QSeries {
    inv_poch_reciprocal(pair.beta_length(n), v)
}

/// `Σ_{i≤n} α_i / ((q;q)_{n-i} (aq;q)_{n+i})`, exact below `v`.
pub fn bailey_sum(pair: BaileyPair, n: u64, v: Rational) -> QSeries {
    let hi = ceil_index(v, 1).max(0);
    let a = pair.relative_exponent();
    let mut total = Dense::new(0, hi);
    for i in 0..=n {
        let num = pair.numerator(i);
        if num.is_empty() {
            continue;
        }
        let mut d = Dense::new(0, hi);
        add_terms(&mut d, &num, 0);
        for &t in pair.denominator() {
            if t < hi {
                d.div_one_minus(1, t);
            }
        }
        div_range(&mut d, 1, (n - i) as i64);
        div_range(&mut d, a + 1, a + (n + i) as i64);
        for (t, c) in total.data.iter_mut().zip(d.data) {
            *t += c;
        }
    }
    total.valid = ceil_index(v, 1);
    total.into_series(1)
}

/// Checks `β_n = Σ_i α_i/((q;q)_{n-i}(aq;q)_{n+i})` for every `n <= n_max`.
pub fn verify_bailey(pair: BaileyPair, n_max: u64, v: Rational) -> Result<CheckReport> {
    let start = Instant::now();
    let mut outcomes = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        let beta = bp_beta(pair, n, v);
        let sum = bailey_sum(pair, n, v);
        outcomes.push((format!("n={n}"), beta.equal_to_order(&sum, v)?));
    }
    Ok(CheckReport::from_outcomes(
        &pair.to_string().to_lowercase(),
        v,
        outcomes,
        start.elapsed().as_millis(),
    ))
}

/// `Σ_r num(r) / ((q;q)_{n-3r} (q;q)_{n+3r+k})`, over every `r` for which
/// both lengths are nonnegative; `num(r)` is given as two monomials.
fn slater_sum(n: i64, v: Rational, k: i64, num: impl Fn(i64) -> [(i64, i64); 2]) -> Dense {
    let hi = ceil_index(v, 1).max(0);
    let mut total = Dense::new(0, hi);
    total.valid = ceil_index(v, 1);
    let r_min = -((n + k) / 3);
    for r in r_min..=(n / 3) {
        let mut d = Dense::new(0, hi);
        add_terms(&mut d, &num(r), 0);
        div_range(&mut d, 1, n + 3 * r + k);
        div_range(&mut d, 1, n - 3 * r);
        for (t, c) in total.data.iter_mut().zip(d.data) {
            *t += c;
        }
    }
    total
}

/// Both sides of `1/(q;q)_{2n} = Σ_r (1-q^{6r+1}) q^{6r²-r} / ((q;q)_{n-3r} (q;q)_{n+3r+1})`.
pub fn slater1_sides(n: u64, v: Rational) -> (QSeries, QSeries) {
    let n = n as i64;
    let lhs = inv_poch_reciprocal(2 * n, v);
    let rhs = slater_sum(n, v, 1, |r| {
        [(6 * r * r - r, 1), (6 * r * r + 5 * r + 1, -1)]
    });
    (lhs, rhs.into_series(1))
}

/// Both sides of `Σ_r (1-q^{6r+2}) q^{6r²+r} / ((q²;q)_{n+3r+1} (q;q)_{n-3r}) = 1/(q²;q)_{2n}`,
/// reading `1/(q²;q)_m` as `(1-q)/(q;q)_{m+1}`.
pub fn slater2_sides(n: u64, v: Rational) -> (QSeries, QSeries) {
    let n = n as i64;
    let mut lhs = slater_sum(n, v, 2, |r| {
        [(6 * r * r + r, 1), (6 * r * r + 7 * r + 2, -1)]
    });
    if lhs.hi() > 1 {
        lhs.mul_one_minus(1, 1);
    }
    let hi = ceil_index(v, 1).max(0);
    let mut d = Dense::one(0, hi);
    d.valid = ceil_index(v, 1);
    div_range(&mut d, 2, 2 * n + 1);
    (lhs.into_series(1), d.into_series(1))
}

/// The two pairs fed to Lovejoy's transform for the S and T sums: the
/// first is relative to `a`, the second to `z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LovejoyShape {
    S,
    T,
}

impl LovejoyShape {
    pub fn pairs(self) -> (BaileyPair, BaileyPair) {
        match self {
            LovejoyShape::S => (BaileyPair::BP1, BaileyPair::BP2),
            LovejoyShape::T => (BaileyPair::BP3, BaileyPair::BP2),
        }
    }
}

fn check_z(b: BaileyPair) -> Result<i64> {
    let ez = b.relative_exponent();
    if ez <= 0 {
        return Err(crate::Error::InvalidArgument(format!(
            "the second pair must be relative to a positive power of q, got {b}"
        )));
    }
    Ok(ez)
}

/// `Σ_{n,s≥0} a^s z^n q^{2ns+s} β_n(a) β'_s(z)`, with `(α, β)` relative to
/// `a` and `(α', β')` relative to `z`.
pub fn lovejoy_lhs(pa: BaileyPair, pb: BaileyPair, v: Rational) -> Result<QSeries> {
    let ez = check_z(pb)?;
    let ea = pa.relative_exponent();
    let valid = ceil_index(v, 1);
    let hi = valid.max(0);
    let mut total = Dense::new(0, hi);
    let mut n = 0i64;
    while ez * n < hi {
        // Horner in s: Σ_s X^s β'_s with X = q^{ea + 1 + 2n}
        let step = ea + 1 + 2 * n;
        let s_max = (hi - ez * n) / step;
        let mut acc = Dense::one(0, hi - ez * n);
        for s in (1..=s_max).rev() {
            acc.shift_up(step);
            let (lo, top) = (pb.beta_length(s as u64 - 1) + 1, pb.beta_length(s as u64));
            div_range(&mut acc, lo, top);
            acc.add_at(0, &BigInt::from(1));
        }
        div_range(&mut acc, 1, pa.beta_length(n as u64));
        div_range(&mut acc, 1, pb.beta_length(0));
        for (k, c) in acc.data.into_iter().enumerate() {
            total.data[k + (ez * n) as usize] += c;
        }
        n += 1;
    }
    total.valid = valid;
    Ok(total.into_series(1))
}

/// `(1-z)/((aq, z; q)_∞) · Σ_{n,r≥0} a^n z^r q^{2nr+n} α_r(a) α'_n(z) / (1 - z q^{2n})`.
pub fn lovejoy_rhs(pa: BaileyPair, pb: BaileyPair, v: Rational) -> Result<QSeries> {
    let ez = check_z(pb)?;
    let ea = pa.relative_exponent();
    let valid = ceil_index(v, 1);
    let hi = valid.max(0);
    let mut total = Dense::new(0, hi);
    for n in 0i64.. {
        let outer = (ea + 1) * n;
        if outer >= hi {
            break;
        }
        let alpha_n = pb.numerator(n as u64);
        let Some(ord_n) = alpha_n.iter().map(|t| t.0).min() else {
            continue;
        };
        if outer + ord_n >= hi {
            continue;
        }
        let step = ez + 2 * n;
        let mut row = Dense::new(0, hi);
        for r in 0i64.. {
            let shift = outer + step * r;
            if shift + ord_n >= hi {
                break;
            }
            for &(e1, c1) in &pa.numerator(r as u64) {
                for &(e2, c2) in &alpha_n {
                    row.add_at(shift + e1 + e2, &BigInt::from(c1 * c2));
                }
            }
        }
        if step < hi {
            row.div_one_minus(1, step);
        }
        for (t, c) in total.data.iter_mut().zip(row.data) {
            *t += c;
        }
    }
    // (1 - z) / (den_a den_b (aq;q)_∞ (z;q)_∞)
    if ez < hi {
        total.mul_one_minus(1, ez);
    }
    for &t in pa.denominator().iter().chain(pb.denominator()) {
        if t < hi {
            total.div_one_minus(1, t);
        }
    }
    div_range(&mut total, ea + 1, hi);
    div_range(&mut total, ez, hi);
    total.valid = valid;
    Ok(total.into_series(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn poly(terms: &[(i64, i64)], valid: i64) -> QSeries {
        QSeries::from_index_terms(1, terms.iter().map(|&(e, c)| (e, BigInt::from(c))), valid)
    }

    #[test]
    fn alpha_examples() {
        let v = rat(20);
        assert_eq!(bp_alpha(BaileyPair::BP1, 0, v), poly(&[(0, 1)], 20));
        assert!(bp_alpha(BaileyPair::BP2, 1, v).is_zero());
        assert_eq!(bp_alpha(BaileyPair::BP1, 1, v), poly(&[(1, -1)], 20));
        assert_eq!(bp_alpha(BaileyPair::BP2, 0, v), poly(&[(0, 1)], 20));
        // 1/(1-q)
        let geo: Vec<_> = (0..20).map(|e| (e, 1)).collect();
        assert_eq!(bp_alpha(BaileyPair::BP3, 0, v), poly(&geo, 20));
    }

    #[test]
    fn beta_examples() {
        let v = rat(10);
        assert_eq!(bp_beta(BaileyPair::BP1, 0, v), poly(&[(0, 1)], 10));
        let geo: Vec<_> = (0..10).map(|e| (e, 1)).collect();
        assert_eq!(bp_beta(BaileyPair::BP3, 0, v), poly(&geo, 10));
    }

    #[test]
    fn first_relations_by_hand() {
        // n = 1 for BP1: 1/(1-q)^2 - q/(q;q)_2 = 1/(q;q)_2
        let v = rat(30);
        let lhs = bailey_sum(BaileyPair::BP1, 1, v);
        assert_eq!(lhs, bp_beta(BaileyPair::BP1, 1, v));
    }

    #[test]
    fn pairs_verify() {
        for pair in BaileyPair::ALL {
            let report = verify_bailey(pair, 12, rat(50)).unwrap();
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn slater_identities() {
        for n in 0..=25 {
            let (a, b) = slater1_sides(n, rat(60));
            assert_eq!(a, b, "slater1 n={n}");
            let (a, b) = slater2_sides(n, rat(60));
            assert_eq!(a, b, "slater2 n={n}");
        }
    }

    #[test]
    fn lovejoy_sides_agree() {
        let v = rat(60);
        for shape in [LovejoyShape::S, LovejoyShape::T] {
            let (a, b) = shape.pairs();
            let lhs = lovejoy_lhs(a, b, v).unwrap();
            let rhs = lovejoy_rhs(a, b, v).unwrap();
            assert_eq!(lhs, rhs, "{shape:?}");
        }
        let (a, b) = LovejoyShape::S.pairs();
        assert_eq!(lovejoy_lhs(a, b, rat(1)).unwrap(), poly(&[(0, 1)], 1));
        assert_eq!(lovejoy_rhs(a, b, rat(1)).unwrap(), poly(&[(0, 1)], 1));
    }

    #[test]
    fn second_pair_must_move_z() {
        assert!(lovejoy_lhs(BaileyPair::BP2, BaileyPair::BP1, rat(10)).is_err());
    }
}
