//! q-Pochhammer symbols and the theta function `j(z; q) = (z, q/z, q; q)_∞`.
//!
//! Theta values are computed from the bilateral sum
//! `Σ (-1)^n q^{m·n(n-1)/2} z^n`, which needs only `O(√N)` terms; the
//! triple-product form is kept as an oracle in the tests. Every function
//! here returns a series that is exact below the requested order `v`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::series::{ceil_index, exact_index, Dense};
use crate::{Error, Monomial, QSeries, Rational, Result};

/// `j(z; q^m)`. `J_{a,m}`, `J̄_{a,m}` and `J_m` are all of this form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ThetaSpec {
    pub z: Monomial,
    pub base: Rational,
}

impl ThetaSpec {
    pub fn new(z: Monomial, base: impl Into<Rational>) -> Self {
        ThetaSpec {
            z,
            base: base.into(),
        }
    }

    /// `J_{a,m} = j(q^a; q^m)`.
    pub fn jac(a: impl Into<Rational>, m: impl Into<Rational>) -> Self {
        ThetaSpec::new(Monomial::q_pow(a), m)
    }

    /// `J̄_{a,m} = j(-q^a; q^m)`.
    pub fn jac_bar(a: impl Into<Rational>, m: impl Into<Rational>) -> Self {
        ThetaSpec::new(Monomial::neg_q_pow(a), m)
    }

    /// `J_m = J_{m,3m} = (q^m; q^m)_∞`.
    pub fn euler(m: impl Into<Rational>) -> Self {
        let m = m.into();
        ThetaSpec::jac(m, m * 3)
    }

    /// The theta function vanishes identically when `z` is an integral
    /// power of the base.
    pub fn vanishes(&self) -> bool {
        self.z.is_integral_power_of(self.base)
    }

    fn exponent(&self, n: i64) -> Rational {
        self.base * (n * (n - 1) / 2) + self.z.exponent() * n
    }

    /// Exponent of the lowest term, `None` when the function is zero.
    ///
    /// Two summation indices share an exponent only when `n + n' = 1 - 2e/m`;
    /// their contributions cancel exactly when `z = q^e` with `e/m` an
    /// integer, which is the vanishing case, so otherwise the minimal
    /// exponent of the sum is the lead.
    pub fn lead(&self) -> Option<Rational> {
        if self.vanishes() {
            return None;
        }
        let vertex = Rational::new(1, 2) - self.z.exponent() / self.base;
        let n = vertex.floor().to_integer();
        Some(std::cmp::min(self.exponent(n), self.exponent(n + 1)))
    }

    fn scale_for(&self, v: Rational) -> i64 {
        self.base
            .denom()
            .lcm(self.z.exponent().denom())
            .lcm(v.denom())
    }
}

fn check_base(m: Rational) -> Result<()> {
    if m <= Rational::zero() {
        Err(Error::DivergentProduct(format!(
            "base exponent {m} must be positive"
        )))
    } else {
        Ok(())
    }
}

/// Product `∏ (1 - s_i q^{t_i})` over `(s_i, t_i)` index pairs, exact below
/// index `valid`. Factors with `t_i <= 0` are expanded exactly.
fn binomial_product(scale: i64, factors: &[(i64, i64)], valid: i64) -> QSeries {
    let mut constant = BigInt::one();
    let mut shift = 0i64;
    let mut positive = Vec::with_capacity(factors.len());
    for &(s, t) in factors {
        match t {
            0 if s > 0 => return QSeries::zero(scale, valid),
            0 => constant *= 2,
            t if t < 0 => {
                // 1 - s q^t = -s q^t (1 - s q^{-t})
                constant *= -s;
                shift += t;
                positive.push((s, -t));
            }
            t => positive.push((s, t)),
        }
    }
    let hi = valid - shift;
    if hi <= 0 {
        return QSeries::zero(scale, valid);
    }
    let mut dense = Dense::one(0, hi);
    for (s, t) in positive {
        if t < hi {
            dense.mul_one_minus(s, t);
        }
    }
    let series = QSeries::from_dense(dense, scale);
    let series = series.scalar_mul(&constant);
    series.mul_monomial(Monomial::q_pow(Rational::new(shift, scale)))
}

/// `(a; q^m)_n = ∏_{k<n} (1 - a q^{mk})` for `n >= 0`.
pub fn poch_finite(a: Monomial, m: Rational, n: u64, v: Rational) -> Result<QSeries> {
    check_base(m)?;
    let scale = m.denom().lcm(a.exponent().denom()).lcm(v.denom());
    let step = exact_index(m, scale)?;
    let start = exact_index(a.exponent(), scale)?;
    let factors: Vec<(i64, i64)> = (0..n as i64)
        .map(|k| (a.sign(), start + step * k))
        .collect();
    Ok(binomial_product(scale, &factors, ceil_index(v, scale)))
}

/// `(a; q^m)_∞`. Factors whose exponent is at most zero are expanded
/// exactly, e.g. `(q^{-8}; q^{30})_∞` has lead `-q^{-8}`.
pub fn poch_inf(a: Monomial, m: Rational, v: Rational) -> Result<QSeries> {
    check_base(m)?;
    let scale = m.denom().lcm(a.exponent().denom()).lcm(v.denom());
    let step = exact_index(m, scale)?;
    let start = exact_index(a.exponent(), scale)?;
    let valid = ceil_index(v, scale);
    // total shift contributed by the nonpositive factors
    let mut shift = 0;
    let mut k = 0;
    while start + step * k < 0 {
        shift += start + step * k;
        k += 1;
    }
    let mut factors = Vec::new();
    let mut k = 0;
    while start + step * k < valid - shift {
        factors.push((a.sign(), start + step * k));
        k += 1;
    }
    Ok(binomial_product(scale, &factors, valid))
}

/// `1 / (a; q^m)_n`, exact below `v`. All factor exponents must be positive
/// or the product must at least be invertible.
pub fn poch_finite_reciprocal(a: Monomial, m: Rational, n: u64, v: Rational) -> Result<QSeries> {
    check_base(m)?;
    let scale = m.denom().lcm(a.exponent().denom()).lcm(v.denom());
    let step = exact_index(m, scale)?;
    let start = exact_index(a.exponent(), scale)?;
    let valid = ceil_index(v, scale);
    if start > 0 {
        let mut dense = Dense::one(0, valid.max(0));
        dense.valid = valid;
        for k in 0..n as i64 {
            let t = start + step * k;
            if t >= valid {
                break;
            }
            dense.div_one_minus(a.sign(), t);
        }
        return Ok(QSeries::from_dense(dense, scale));
    }
    let lead: i64 = (0..n as i64).map(|k| (start + step * k).min(0)).sum();
    let p = poch_finite(a, m, n, Rational::new(valid + 2 * lead, scale))?;
    if p.is_zero() {
        return Err(Error::Pole(format!("({a}; q^{m})_{n} vanishes")));
    }
    Ok(p.invert()?.truncate(v))
}

/// `1/(q;q)_n`, with the convention `1/(q;q)_n = 0` for `n < 0`.
pub fn inv_poch_reciprocal(n: i64, v: Rational) -> QSeries {
    if n < 0 {
        return QSeries::zero_through(v);
    }
    poch_finite_reciprocal(Monomial::q_pow(1), Rational::one(), n as u64, v)
        .expect("(q;q)_n has positive exponents")
}

/// `j(z; q^m)` from the triple-product sum.
pub fn jtheta(t: ThetaSpec, v: Rational) -> QSeries {
    let scale = t.scale_for(v);
    let valid = ceil_index(v, scale);
    if t.vanishes() {
        return QSeries::zero(scale, valid);
    }
    let vertex = (Rational::new(1, 2) - t.z.exponent() / t.base)
        .floor()
        .to_integer();
    let sign = -t.z.sign();
    let mut terms: Vec<(i64, i64)> = Vec::new();
    let mut push = |n: i64| -> bool {
        let e = exact_index(t.exponent(n), scale).expect("scale covers exponents");
        if e >= valid {
            return false;
        }
        terms.push((e, if n.rem_euclid(2) == 1 { sign } else { 1 }));
        true
    };
    let mut n = vertex;
    while push(n) {
        n -= 1;
    }
    let mut n = vertex + 1;
    while push(n) {
        n += 1;
    }
    QSeries::from_index_terms(scale, terms, valid)
}

/// `J_{a,m}`.
pub fn j_am(a: Rational, m: Rational, v: Rational) -> Result<QSeries> {
    check_base(m)?;
    Ok(jtheta(ThetaSpec::jac(a, m), v))
}

/// `J̄_{a,m}`.
pub fn jbar_am(a: Rational, m: Rational, v: Rational) -> Result<QSeries> {
    check_base(m)?;
    Ok(jtheta(ThetaSpec::jac_bar(a, m), v))
}

/// `J_m = (q^m; q^m)_∞`, via the pentagonal-number sum.
pub fn j_m(m: Rational, v: Rational) -> Result<QSeries> {
    check_base(m)?;
    Ok(jtheta(ThetaSpec::euler(m), v))
}

/// `prefactor · ∏ num / ∏ den` for theta factors, exact below `v`.
///
/// Each factor is evaluated only as far as needed, using the known leads
/// of the theta functions to size every window in advance.
pub fn theta_quotient(
    prefactor: Monomial,
    num: &[ThetaSpec],
    den: &[ThetaSpec],
    v: Rational,
) -> Result<QSeries> {
    for d in den {
        if d.vanishes() {
            return Err(Error::Pole(format!(
                "j({}; q^{}) vanishes in a denominator",
                d.z, d.base
            )));
        }
    }
    if num.iter().any(ThetaSpec::vanishes) {
        return Ok(QSeries::zero_through(v));
    }
    let lead_of = |ts: &[ThetaSpec]| -> Rational { ts.iter().map(|t| t.lead().unwrap()).sum() };
    let num_lead = prefactor.exponent() + lead_of(num);
    let den_lead = lead_of(den);

    let product = |ts: &[ThetaSpec], target: Rational, total_lead: Rational| -> QSeries {
        let mut acc: Option<QSeries> = None;
        for t in ts {
            let window = target - total_lead + t.lead().unwrap();
            let s = jtheta(*t, window);
            acc = Some(match acc {
                None => s,
                Some(a) => &a * &s,
            });
        }
        acc.unwrap_or_else(|| QSeries::constant(1, target - total_lead))
    };

    let numer =
        product(num, v + den_lead - prefactor.exponent(), lead_of(num)).mul_monomial(prefactor);
    if den.is_empty() {
        return Ok(numer.truncate(v));
    }
    let denom = product(den, v - num_lead + den_lead * 2, den_lead);
    let inv = denom.invert()?;
    Ok((&numer * &inv).truncate(v))
}
