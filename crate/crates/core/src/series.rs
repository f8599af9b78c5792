//! Exact truncated Laurent series in `q^{1/D}`.
//!
//! A [`QSeries`] stores integer coefficients indexed by an integer `i`
//! meaning the exponent `i / D`, where `D` is the series' scale. Every
//! coefficient with index below `valid` is exact; nothing is known at or
//! above it. Binary operations first bring both operands to the lcm of
//! their scales and then propagate the window so that every reported
//! coefficient stays exact.

use std::cmp::{max, min};
use std::fmt::{self, Write as _};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::{Error, Monomial, Rational, Result};

/// Smallest index `i` with `i / scale >= v`.
pub(crate) fn ceil_index(v: Rational, scale: i64) -> i64 {
    (v * scale).ceil().to_integer()
}

/// The exact index of `v` at `scale`, if it is representable.
pub(crate) fn exact_index(v: Rational, scale: i64) -> Result<i64> {
    let scaled = v * scale;
    if scaled.is_integer() {
        Ok(scaled.to_integer())
    } else {
        Err(Error::Scale { exponent: v, scale })
    }
}

/// Outcome of a coefficient-wise comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum CheckOutcome {
    /// All coefficients with exponent below `window` agree.
    Pass {
        #[serde(serialize_with = "crate::report::ser_rational")]
        window: Rational,
    },
    /// First exponent at which the two series differ.
    Fail {
        #[serde(serialize_with = "crate::report::ser_rational")]
        exponent: Rational,
        #[serde(serialize_with = "crate::report::ser_bigint")]
        lhs: BigInt,
        #[serde(serialize_with = "crate::report::ser_bigint")]
        rhs: BigInt,
    },
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, CheckOutcome::Pass { .. })
    }
}

#[derive(Clone, Debug)]
pub struct QSeries {
    scale: i64,
    /// Index of `coeffs[0]`.
    lo: i64,
    /// First and last entries are nonzero; empty for the zero series.
    coeffs: Vec<BigInt>,
    valid: i64,
}

impl QSeries {
    /// The zero series at `scale`, exact below index `valid`.
    pub fn zero(scale: i64, valid: i64) -> Self {
        assert!(scale > 0, "scale must be positive");
        QSeries {
            scale,
            lo: 0,
            coeffs: Vec::new(),
            valid,
        }
    }

    /// Zero, exact for every exponent below `v`.
    pub fn zero_through(v: Rational) -> Self {
        let scale = *v.denom();
        QSeries::zero(scale, ceil_index(v, scale))
    }

    /// Builds a series from `(index, coefficient)` pairs; repeated indices
    /// accumulate and indices at or above `valid` are dropped.
    pub fn from_index_terms<I, C>(scale: i64, terms: I, valid: i64) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let terms: Vec<(i64, BigInt)> = terms
            .into_iter()
            .filter(|(i, _)| *i < valid)
            .map(|(i, c)| (i, c.into()))
            .collect();
        let Some(lo) = terms.iter().map(|t| t.0).min() else {
            return QSeries::zero(scale, valid);
        };
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut dense = Dense::new(lo, hi + 1);
        for (i, c) in terms {
            dense.data[(i - lo) as usize] += c;
        }
        dense.valid = valid;
        dense.into_series(scale)
    }

    /// The constant `c`, exact below exponent `v`.
    pub fn constant(c: impl Into<BigInt>, v: Rational) -> Self {
        let scale = *v.denom();
        QSeries::from_index_terms(scale, [(0, c.into())], ceil_index(v, scale))
    }

    /// Single-term series `±q^e` at `scale`, exact below exponent `v`.
    pub fn monomial(m: Monomial, scale: i64, v: Rational) -> Result<Self> {
        let idx = exact_index(m.exponent(), scale)?;
        Ok(QSeries::from_index_terms(
            scale,
            [(idx, BigInt::from(m.sign()))],
            ceil_index(v, scale),
        ))
    }

    /// Like [`QSeries::monomial`], choosing the smallest scale that holds both
    /// the exponent and the window.
    pub fn monomial_auto(m: Monomial, v: Rational) -> Self {
        let scale = m.exponent().denom().lcm(v.denom());
        QSeries::monomial(m, scale, v).expect("scale chosen to fit")
    }

    pub(crate) fn from_dense(dense: Dense, scale: i64) -> Self {
        dense.into_series(scale)
    }

    pub fn scale(&self) -> i64 {
        self.scale
    }

    /// Index bound of the exact window.
    pub fn valid_index(&self) -> i64 {
        self.valid
    }

    /// All coefficients with exponent below this value are exact.
    pub fn valid_through(&self) -> Rational {
        Rational::new(self.valid, self.scale)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lead_index(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.lo)
    }

    pub fn lead_exponent(&self) -> Option<Rational> {
        self.lead_index().map(|i| Rational::new(i, self.scale))
    }

    pub fn lead_coefficient(&self) -> Option<&BigInt> {
        self.coeffs.first()
    }

    /// Lowest index known to be possibly nonzero: the lead, or the window
    /// bound for a series that vanishes inside its window.
    fn order_index(&self) -> i64 {
        self.lead_index().unwrap_or(self.valid)
    }

    pub fn coeff_index(&self, i: i64) -> BigInt {
        if i < self.lo || i >= self.lo + self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[(i - self.lo) as usize].clone()
        }
    }

    /// Coefficient of `q^e`; zero when `e` is not a multiple of `1/D`.
    pub fn coeff(&self, e: Rational) -> BigInt {
        let scaled = e * self.scale;
        if scaled.is_integer() {
            self.coeff_index(scaled.to_integer())
        } else {
            BigInt::zero()
        }
    }

    /// Nonzero terms as `(index, coefficient)`, ascending.
    pub fn index_terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.lo + k as i64, c))
    }

    /// Nonzero terms as `(exponent, coefficient)`, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (Rational, &BigInt)> + '_ {
        let d = self.scale;
        self.index_terms()
            .map(move |(i, c)| (Rational::new(i, d), c))
    }

    pub fn num_terms(&self) -> usize {
        self.index_terms().count()
    }

    /// The same series at a finer scale; `scale` must be a multiple of the
    /// current one.
    pub fn at_scale(&self, scale: i64) -> QSeries {
        assert!(
            scale % self.scale == 0,
            "scale {scale} is not a multiple of {}",
            self.scale
        );
        let f = scale / self.scale;
        if f == 1 {
            return self.clone();
        }
        self.spread(f, scale)
    }

    /// The same series at the coarsest scale that holds its terms and window.
    pub fn coarsened(&self) -> QSeries {
        let mut g = self.scale.gcd(&self.valid);
        for (i, _) in self.index_terms() {
            g = g.gcd(&i);
        }
        if g <= 1 {
            return self.clone();
        }
        let terms: Vec<(i64, BigInt)> = self
            .index_terms()
            .map(|(i, c)| (i / g, c.clone()))
            .collect();
        QSeries::from_index_terms(self.scale / g, terms, self.valid / g)
    }

    fn spread(&self, f: i64, scale: i64) -> QSeries {
        if self.coeffs.is_empty() {
            return QSeries::zero(scale, self.valid * f);
        }
        let len = (self.coeffs.len() - 1) * f as usize + 1;
        let mut coeffs = vec![BigInt::zero(); len];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * f as usize] = c.clone();
        }
        QSeries {
            scale,
            lo: self.lo * f,
            coeffs,
            valid: self.valid * f,
        }
    }

    fn common_scale(a: &QSeries, b: &QSeries) -> i64 {
        a.scale.lcm(&b.scale)
    }

    /// Reduces the window to exponents below `v` (never enlarges it).
    pub fn truncate(&self, v: Rational) -> QSeries {
        let scale = self.scale.lcm(v.denom());
        let s = self.at_scale(scale);
        let idx = min(ceil_index(v, scale), s.valid);
        let mut dense = s.to_dense(s.lo, idx);
        dense.valid = idx;
        dense.into_series(scale)
    }

    /// Dense copy covering indices `[lo, hi)`, restricted to the window.
    pub(crate) fn to_dense(&self, lo: i64, hi: i64) -> Dense {
        let hi = min(hi, self.valid);
        let mut dense = Dense::new(lo, max(lo, hi));
        for (i, c) in self.index_terms() {
            if i >= lo && i < hi {
                dense.data[(i - lo) as usize] = c.clone();
            }
        }
        dense.valid = hi;
        dense
    }

    pub fn scalar_mul(&self, c: &BigInt) -> QSeries {
        if c.is_zero() {
            return QSeries::zero(self.scale, self.valid);
        }
        QSeries {
            scale: self.scale,
            lo: self.lo,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            valid: self.valid,
        }
    }

    /// Multiplies by `±q^e`, moving the window with it.
    pub fn mul_monomial(&self, m: Monomial) -> QSeries {
        let scale = self.scale.lcm(m.exponent().denom());
        let mut s = self.at_scale(scale);
        let shift = exact_index(m.exponent(), scale).expect("scale chosen to fit");
        s.lo += shift;
        s.valid += shift;
        if m.is_negative() {
            for c in &mut s.coeffs {
                *c = -std::mem::take(c);
            }
        }
        s
    }

    /// Adds `c·q^e` (exponent must lie inside the window to have an effect).
    pub fn add_term(&self, e: Rational, c: impl Into<BigInt>) -> QSeries {
        let scale = self.scale.lcm(e.denom());
        let term = QSeries::from_index_terms(
            scale,
            [(exact_index(e, scale).unwrap(), c.into())],
            i64::MAX,
        );
        self + &term
    }

    /// Multiplicative inverse of a series whose lowest term is `±q^e`.
    ///
    /// The result has lead `∓q^{-e}` and is exact below `V - 2e` where `V`
    /// is the operand's window, which is exactly the window on which
    /// `self * inverse == 1` holds.
    pub fn invert(&self) -> Result<QSeries> {
        let Some(lead) = self.lead_index() else {
            return Err(Error::EmptyWindow);
        };
        let c0 = &self.coeffs[0];
        let unit = if c0.is_one() {
            1i64
        } else if (-c0).is_one() {
            -1
        } else {
            return Err(Error::NonUnitLead(c0.clone()));
        };
        let n = (self.valid - lead) as usize;
        let sparse: Vec<(usize, BigInt)> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(k, c)| *k < n && !c.is_zero())
            .map(|(k, c)| (k, c * unit))
            .collect();
        let out = invert_unit_series_i128(&sparse, n)
            .map(|v| v.into_iter().map(BigInt::from).collect())
            .unwrap_or_else(|| invert_unit_series_big(&sparse, n));
        let mut dense = Dense {
            lo: -lead,
            data: out,
            valid: self.valid - 2 * lead,
        };
        if unit == -1 {
            dense.negate();
        }
        Ok(dense.into_series(self.scale))
    }

    /// Integer power; negative exponents go through [`QSeries::invert`].
    pub fn pow(&self, n: i64) -> Result<QSeries> {
        if n < 0 {
            return self.invert()?.pow(-n);
        }
        if n == 0 {
            let window = self.valid - self.order_index();
            return Ok(QSeries::from_index_terms(self.scale, [(0, 1)], window));
        }
        let mut result: Option<QSeries> = None;
        let mut base = self.clone();
        let mut k = n;
        loop {
            if k & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => &r * &base,
                });
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            base = &base * &base;
        }
        Ok(result.expect("n > 0"))
    }

    /// Formal substitution `q -> q^k` for positive rational `k`.
    pub fn rescale(&self, k: Rational) -> QSeries {
        assert!(k > Rational::zero(), "rescale factor must be positive");
        let p = *k.numer();
        let r = *k.denom();
        let g = p.gcd(&(r * self.scale));
        let scale = r * self.scale / g;
        let f = p / g;
        let mut s = self.spread(f, scale);
        s.scale = scale;
        s
    }

    /// Exact comparison of all coefficients with exponent below `n`.
    pub fn equal_to_order(&self, other: &QSeries, n: Rational) -> Result<CheckOutcome> {
        let scale = QSeries::common_scale(self, other).lcm(n.denom());
        let a = self.at_scale(scale);
        let b = other.at_scale(scale);
        let bound = ceil_index(n, scale);
        let available = min(a.valid, b.valid);
        if available < bound {
            return Err(Error::InsufficientOrder {
                needed: n,
                available: Rational::new(available, scale),
            });
        }
        let lo = min(a.order_index(), b.order_index());
        for i in lo..bound {
            let (x, y) = (a.coeff_index(i), b.coeff_index(i));
            if x != y {
                return Ok(CheckOutcome::Fail {
                    exponent: Rational::new(i, scale),
                    lhs: x,
                    rhs: y,
                });
            }
        }
        Ok(CheckOutcome::Pass { window: n })
    }

    /// Text dump: one `EXPONENT COEFFICIENT` line per nonzero term, then a
    /// `# valid_through EXPONENT` trailer.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (e, c) in self.terms() {
            let _ = writeln!(out, "{e} {c}");
        }
        let _ = writeln!(out, "# valid_through {}", self.valid_through());
        out
    }

    pub(crate) fn checked_add(a: &QSeries, b: &QSeries, negate_b: bool) -> QSeries {
        let scale = QSeries::common_scale(a, b);
        let a = a.at_scale(scale);
        let b = b.at_scale(scale);
        let valid = min(a.valid, b.valid);
        let lo = min(a.order_index(), b.order_index());
        let hi = max(a.lo + a.coeffs.len() as i64, b.lo + b.coeffs.len() as i64);
        let hi = min(hi, valid);
        let mut dense = a.to_dense(lo, hi);
        for (i, c) in b.index_terms() {
            if i >= lo && i < hi {
                let slot = &mut dense.data[(i - lo) as usize];
                if negate_b {
                    *slot -= c;
                } else {
                    *slot += c;
                }
            }
        }
        dense.valid = valid;
        dense.into_series(scale)
    }

    fn convolve(a: &QSeries, b: &QSeries) -> QSeries {
        let scale = QSeries::common_scale(a, b);
        let a = a.at_scale(scale);
        let b = b.at_scale(scale);
        let valid = min(a.valid + b.order_index(), b.valid + a.order_index());
        if a.is_zero() || b.is_zero() {
            return QSeries::zero(scale, valid);
        }
        let lo = a.lo + b.lo;
        if lo >= valid {
            return QSeries::zero(scale, valid);
        }
        let n = (valid - lo) as usize;
        // iterate over the sparser operand
        let (x, y) = if a.num_terms() <= b.num_terms() {
            (&a, &b)
        } else {
            (&b, &a)
        };
        let data = convolve_i128(&x.coeffs, &y.coeffs, n)
            .map(|v| v.into_iter().map(BigInt::from).collect())
            .unwrap_or_else(|| convolve_big(&x.coeffs, &y.coeffs, n));
        Dense { lo, data, valid }.into_series(scale)
    }
}

fn to_i64s(v: &[BigInt]) -> Option<Vec<i64>> {
    v.iter().map(|c| c.to_i64()).collect()
}

fn convolve_i128(x: &[BigInt], y: &[BigInt], n: usize) -> Option<Vec<i128>> {
    let xs = to_i64s(x)?;
    let ys = to_i64s(&y[..min(y.len(), n)])?;
    let bits = |v: &[i64]| {
        v.iter()
            .map(|c| 64 - c.unsigned_abs().leading_zeros())
            .max()
            .unwrap_or(0)
    };
    let terms = 64 - (min(xs.len(), ys.len()) as u64).leading_zeros();
    if bits(&xs) + bits(&ys) + terms >= 126 {
        return None;
    }
    let mut out = vec![0i128; n];
    for (i, &c) in xs.iter().enumerate() {
        if c == 0 || i >= n {
            continue;
        }
        let c = c as i128;
        for (j, &d) in ys.iter().enumerate().take(n - i) {
            out[i + j] += c * d as i128;
        }
    }
    Some(out)
}

fn convolve_big(x: &[BigInt], y: &[BigInt], n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n];
    for (i, c) in x.iter().enumerate() {
        if c.is_zero() || i >= n {
            continue;
        }
        for (j, d) in y.iter().enumerate().take(n - i) {
            if !d.is_zero() {
                out[i + j] += c * d;
            }
        }
    }
    out
}

/// Coefficients of `1 / (1 + Σ a_k q^k)` below `q^n`, in checked `i128`.
fn invert_unit_series_i128(sparse: &[(usize, BigInt)], n: usize) -> Option<Vec<i128>> {
    let a: Vec<(usize, i128)> = sparse
        .iter()
        .map(|(k, c)| c.to_i128().map(|c| (*k, c)))
        .collect::<Option<_>>()?;
    let mut b = vec![0i128; n];
    if n == 0 {
        return Some(b);
    }
    b[0] = 1;
    for m in 1..n {
        let mut acc: i128 = 0;
        for &(k, c) in &a {
            if k > m {
                break;
            }
            acc = acc.checked_sub(c.checked_mul(b[m - k])?)?;
        }
        b[m] = acc;
    }
    Some(b)
}

fn invert_unit_series_big(sparse: &[(usize, BigInt)], n: usize) -> Vec<BigInt> {
    let mut b = vec![BigInt::zero(); n];
    if n == 0 {
        return b;
    }
    b[0] = BigInt::one();
    for m in 1..n {
        let mut acc = BigInt::zero();
        for (k, c) in sparse {
            if *k > m {
                break;
            }
            if !b[m - k].is_zero() {
                acc -= c * &b[m - k];
            }
        }
        b[m] = acc;
    }
    b
}

impl PartialEq for QSeries {
    /// Same window and same terms, after rescaling to a common scale.
    fn eq(&self, other: &QSeries) -> bool {
        if self.valid_through() != other.valid_through() {
            return false;
        }
        let scale = QSeries::common_scale(self, other);
        let a = self.at_scale(scale);
        let b = other.at_scale(scale);
        a.lo == b.lo && a.coeffs == b.coeffs
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let is_one = mag.is_one();
            match (e.is_zero(), is_one) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{}", Monomial::q_pow(e))?,
                (false, false) => write!(f, "{mag}*{}", Monomial::q_pow(e))?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.valid_through())
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        self.scalar_mul(&BigInt::from(-1))
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        QSeries::checked_add(self, rhs, false)
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        QSeries::checked_add(self, rhs, true)
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        QSeries::convolve(self, rhs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QSeries {
            type Output = QSeries;
            fn $m(self, rhs: QSeries) -> QSeries {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&QSeries> for QSeries {
            type Output = QSeries;
            fn $m(self, rhs: &QSeries) -> QSeries {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        -&self
    }
}

/// Mutable dense buffer over indices `[lo, lo + data.len())`, used by the
/// kernels that build series factor by factor.
#[derive(Clone, Debug)]
pub(crate) struct Dense {
    pub lo: i64,
    pub data: Vec<BigInt>,
    pub valid: i64,
}

impl Dense {
    /// Zero buffer covering `[lo, hi)`, also exact below `hi`.
    pub fn new(lo: i64, hi: i64) -> Self {
        Dense {
            lo,
            data: vec![BigInt::zero(); max(0, hi - lo) as usize],
            valid: hi,
        }
    }

    /// `1` on `[lo, hi)` (requires `lo <= 0 < hi` to be nonzero).
    pub fn one(lo: i64, hi: i64) -> Self {
        let mut d = Dense::new(lo, hi);
        d.add_at(0, &BigInt::one());
        d
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.data.len() as i64
    }

    pub fn add_at(&mut self, i: i64, c: &BigInt) {
        if i >= self.lo && i < self.hi() {
            self.data[(i - self.lo) as usize] += c;
        }
    }

    /// Multiply in place by `q^t`, `t >= 0`, keeping the index range.
    pub fn shift_up(&mut self, t: i64) {
        debug_assert!(t >= 0);
        let n = self.data.len();
        let t = min(t as usize, n);
        self.data.truncate(n - t);
        self.data
            .splice(0..0, std::iter::repeat_with(BigInt::zero).take(t));
    }

    pub fn negate(&mut self) {
        for c in &mut self.data {
            *c = -std::mem::take(c);
        }
    }

    /// Multiply in place by `1 - sign·q^t`, `t > 0` in index units.
    pub fn mul_one_minus(&mut self, sign: i64, t: i64) {
        debug_assert!(t > 0);
        let t = t as usize;
        for k in (t..self.data.len()).rev() {
            if self.data[k - t].is_zero() {
                continue;
            }
            let (head, tail) = self.data.split_at_mut(k);
            if sign > 0 {
                tail[0] -= &head[k - t];
            } else {
                tail[0] += &head[k - t];
            }
        }
    }

    /// Multiply in place by `1 / (1 - sign·q^t)`, `t > 0` in index units.
    pub fn div_one_minus(&mut self, sign: i64, t: i64) {
        debug_assert!(t > 0);
        let t = t as usize;
        for k in t..self.data.len() {
            if self.data[k - t].is_zero() {
                continue;
            }
            let (head, tail) = self.data.split_at_mut(k);
            if sign > 0 {
                tail[0] += &head[k - t];
            } else {
                tail[0] -= &head[k - t];
            }
        }
    }

    pub fn into_series(mut self, scale: i64) -> QSeries {
        let cut = max(0, min(self.data.len() as i64, self.valid - self.lo)) as usize;
        self.data.truncate(cut);
        let Some(first) = self.data.iter().position(|c| !c.is_zero()) else {
            return QSeries::zero(scale, self.valid);
        };
        let last = self.data.iter().rposition(|c| !c.is_zero()).unwrap();
        self.data.truncate(last + 1);
        self.data.drain(..first);
        QSeries {
            scale,
            lo: self.lo + first as i64,
            coeffs: self.data,
            valid: self.valid,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn poly(terms: &[(i64, i64)], valid: i64) -> QSeries {
        QSeries::from_index_terms(1, terms.iter().copied(), valid)
    }

    #[test]
    fn monomial_series_examples() {
        let one = QSeries::monomial(Monomial::ONE, 1, r(10, 1)).unwrap();
        assert_eq!(one.dump(), "0 1\n# valid_through 10\n");
        let m = QSeries::monomial(Monomial::neg_q_pow(4), 1, r(10, 1)).unwrap();
        assert_eq!(m.dump(), "4 -1\n# valid_through 10\n");
        let h = QSeries::monomial(Monomial::q_pow(r(1, 2)), 2, r(20, 1)).unwrap();
        assert_eq!(h.lead_index(), Some(1));
        assert_eq!(h.scale(), 2);
        assert_eq!(h.valid_index(), 40);
    }

    #[test]
    fn monomial_scale_error() {
        let err = QSeries::monomial(Monomial::q_pow(r(1, 2)), 1, r(10, 1)).unwrap_err();
        assert!(matches!(err, Error::Scale { .. }));
    }

    #[test]
    fn add_examples() {
        let a = poly(&[(0, 1), (1, -1)], 20);
        let q = poly(&[(1, 1)], 20);
        assert_eq!(&a + &q, poly(&[(0, 1)], 20));
        assert_eq!(&a + &QSeries::zero(1, 20), a);
        let half = QSeries::from_index_terms(2, [(0, 1), (1, -1)], 40);
        let sum = &a + &half;
        assert_eq!(sum.scale(), 2);
        assert_eq!(sum.dump(), "0 2\n1/2 -1\n1 -1\n# valid_through 20\n");
    }

    #[test]
    fn add_takes_smaller_window() {
        let a = poly(&[(0, 1)], 5);
        let b = poly(&[(7, 1)], 20);
        let s = &a + &b;
        assert_eq!(s.valid_index(), 5);
        assert_eq!(s.num_terms(), 1);
    }

    #[test]
    fn mul_examples() {
        let a = poly(&[(0, 1), (1, -1)], 30);
        let b = poly(&[(0, 1), (1, 1)], 30);
        assert_eq!(&a * &b, poly(&[(0, 1), (2, -1)], 30));
        let one = poly(&[(0, 1)], 30);
        assert_eq!(&a * &one, a);
    }

    #[test]
    fn mul_window_tracks_leads() {
        // q^-1 (known below q^10) times q^3 (known below q^10)
        let a = poly(&[(-1, 1)], 10);
        let b = poly(&[(3, 1)], 10);
        let p = &a * &b;
        assert_eq!(p.valid_index(), 9);
        assert_eq!(p.lead_index(), Some(2));
        // zero series with window 5 times 1 + q
        let z = QSeries::zero(1, 5);
        let p = &z * &poly(&[(0, 1), (1, 1)], 50);
        assert!(p.is_zero());
        assert_eq!(p.valid_index(), 5);
    }

    #[test]
    fn invert_examples() {
        let g = poly(&[(0, 1), (1, -1)], 12).invert().unwrap();
        assert_eq!(g, QSeries::from_index_terms(1, (0..12).map(|i| (i, 1)), 12));
        // -q^-8 (1 - q^8) = -q^-8 + 1
        let a = poly(&[(-8, -1), (0, 1)], 40);
        let inv = a.invert().unwrap();
        assert_eq!(inv.lead_index(), Some(8));
        assert_eq!(inv.lead_coefficient(), Some(&BigInt::from(-1)));
        assert_eq!(inv.valid_index(), 56);
        let prod = &a * &inv;
        assert_eq!(prod, poly(&[(0, 1)], 48));
        assert_eq!(poly(&[(0, 1)], 9).invert().unwrap(), poly(&[(0, 1)], 9));
    }

    #[test]
    fn invert_errors() {
        assert_eq!(
            QSeries::zero(1, 10).invert().unwrap_err(),
            Error::EmptyWindow
        );
        assert!(matches!(
            poly(&[(0, 2), (1, 1)], 10).invert().unwrap_err(),
            Error::NonUnitLead(_)
        ));
    }

    #[test]
    fn invert_overflowing_fallback() {
        // 1 / (1 - 2^40 q) has coefficients 2^{40k}, beyond i128 quickly
        let a = QSeries::from_index_terms(
            1,
            [(0i64, BigInt::one()), (1, -(BigInt::one() << 40usize))],
            8,
        );
        let inv = a.invert().unwrap();
        assert_eq!(inv.coeff_index(7), BigInt::one() << 280);
        assert_eq!(&a * &inv, poly(&[(0, 1)], 8));
    }

    #[test]
    fn rescale_examples() {
        let a = poly(&[(0, 1), (1, -1)], 10);
        assert_eq!(a.rescale(r(2, 1)), poly(&[(0, 1), (2, -1)], 20));
        let h = a.rescale(r(1, 2));
        assert_eq!(h.scale(), 2);
        assert_eq!(h.dump(), "0 1\n1/2 -1\n# valid_through 5\n");
        assert_eq!(a.rescale(r(2, 1)).rescale(r(1, 2)), a);
        assert_eq!(a.rescale(r(3, 2)).rescale(r(2, 3)), a);
    }

    #[test]
    fn equal_to_order_examples() {
        let a = poly(&[(0, 1), (1, -1)], 100);
        let b = poly(&[(0, 1), (1, -1), (50, 1)], 100);
        assert!(a.equal_to_order(&a, r(37, 1)).unwrap().passed());
        assert!(a.equal_to_order(&b, r(50, 1)).unwrap().passed());
        assert_eq!(
            a.equal_to_order(&b, r(51, 1)).unwrap(),
            CheckOutcome::Fail {
                exponent: r(50, 1),
                lhs: BigInt::zero(),
                rhs: BigInt::one()
            }
        );
        assert!(matches!(
            a.equal_to_order(&b, r(101, 1)).unwrap_err(),
            Error::InsufficientOrder { .. }
        ));
    }

    #[test]
    fn pow_and_truncate() {
        let a = poly(&[(0, 1), (1, -1)], 10);
        assert_eq!(a.pow(2).unwrap(), poly(&[(0, 1), (1, -2), (2, 1)], 10));
        assert_eq!(a.pow(0).unwrap(), poly(&[(0, 1)], 10));
        let inv2 = a.pow(-2).unwrap();
        assert_eq!(inv2.coeff_index(5), BigInt::from(6));
        let t = a.truncate(r(1, 1));
        assert_eq!(t, poly(&[(0, 1)], 1));
    }

    #[test]
    fn mul_monomial_shifts_window() {
        let a = poly(&[(0, 1), (1, -1)], 10);
        let s = a.mul_monomial(Monomial::neg_q_pow(r(-1, 2)));
        assert_eq!(s.scale(), 2);
        assert_eq!(s.dump(), "-1/2 -1\n1/2 1\n# valid_through 19/2\n");
    }

    #[test]
    fn display_reads_back_like_math() {
        let a = poly(&[(-1, 2), (0, 1), (3, -1)], 5);
        assert_eq!(a.to_string(), "2*q^-1 + 1 - q^3 + O(q^5)");
    }
}
