//! Appell–Lerch sums
//! `m(x, q, z) = 1/j(z;q) · Σ_r (-1)^r q^{C(r,2)} z^r / (1 - q^{r-1} x z)`
//! for monomial `x`, `z`, in the base `q^p`.

use num_integer::Integer;
use num_traits::Zero;

use crate::qfunctions::{jtheta, theta_quotient, ThetaSpec};
use crate::series::{ceil_index, exact_index};
use crate::{Error, Monomial, QSeries, Rational, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AppellSpec {
    pub x: Monomial,
    /// The sum is `m(x, q^p, z)`.
    pub p: Rational,
    pub z: Monomial,
}

impl AppellSpec {
    pub fn new(x: Monomial, p: impl Into<Rational>, z: Monomial) -> Self {
        AppellSpec { x, p: p.into(), z }
    }

    fn theta(&self) -> ThetaSpec {
        ThetaSpec::new(self.z, self.p)
    }

    fn scale_for(&self, v: Rational) -> i64 {
        self.p
            .denom()
            .lcm(self.x.exponent().denom())
            .lcm(self.z.exponent().denom())
            .lcm(v.denom())
    }
}

/// The bilateral sum without the `1/j(z; q^p)` normalisation, exact below `v`.
fn lerch_sum(spec: &AppellSpec, v: Rational) -> Result<QSeries> {
    let scale = spec.scale_for(v);
    let valid = ceil_index(v, scale);
    let idx = |r: Rational| exact_index(r, scale);
    let p = idx(spec.p)?;
    let ez = idx(spec.z.exponent())?;
    let xz = spec.x * spec.z;
    let exz = idx(xz.exponent())?;
    let s = xz.sign();
    let zsign = -spec.z.sign();

    // numerator exponent of the r-th term and the exponent of q^{r-1}xz
    let numer = |r: i64| p * (r * (r - 1) / 2) + r * ez;
    let denom = |r: i64| p * (r - 1) + exz;
    let lowest = |r: i64| numer(r) + (-denom(r)).max(0);

    let mut terms: Vec<(i64, i64)> = Vec::new();
    let mut add_row = |r: i64| -> Result<()> {
        let e = denom(r);
        if e == 0 {
            return Err(Error::Pole(format!(
                "q^{{r-1}}xz has exponent 0 at r = {r} for x = {}, z = {}",
                spec.x, spec.z
            )));
        }
        let base = if r.rem_euclid(2) == 1 { zsign } else { 1 };
        let (step, mut exp, mut coeff) = if e > 0 {
            (e, numer(r), base)
        } else {
            // 1/(1-u) = -u^{-1} / (1 - u^{-1})
            (-e, numer(r) - e, -base * s)
        };
        while exp < valid {
            terms.push((exp, coeff));
            exp += step;
            coeff *= s;
        }
        Ok(())
    };

    // `lowest` is convex in r; walk outward from the quadratic vertex on
    // each side until it is nondecreasing and past the window
    let vertex = (Rational::new(1, 2) - spec.z.exponent() / spec.p)
        .floor()
        .to_integer();
    let radius = 10 * ((valid.unsigned_abs() / p.unsigned_abs()) as f64).sqrt() as i64
        + 50
        + (exz.abs() + ez.abs()) / p;
    let mut r = vertex;
    loop {
        if lowest(r) >= valid && lowest(r + 1) >= lowest(r) {
            break;
        }
        if r - vertex > radius {
            return Err(Error::TruncationUnbounded("Appell–Lerch r-range".into()));
        }
        if lowest(r) < valid {
            add_row(r)?;
        }
        r += 1;
    }
    let mut r = vertex - 1;
    loop {
        if lowest(r) >= valid && lowest(r - 1) >= lowest(r) {
            break;
        }
        if vertex - r > radius {
            return Err(Error::TruncationUnbounded("Appell–Lerch r-range".into()));
        }
        if lowest(r) < valid {
            add_row(r)?;
        }
        r -= 1;
    }
    Ok(QSeries::from_index_terms(scale, terms, valid))
}

/// `m(x, q^p, z)`, exact below `v`.
pub fn appell_m(spec: &AppellSpec, v: Rational) -> Result<QSeries> {
    if spec.p <= Rational::zero() {
        return Err(Error::InvalidArgument(format!(
            "base exponent {} must be positive",
            spec.p
        )));
    }
    let theta = spec.theta();
    let Some(lead) = theta.lead() else {
        return Err(Error::Pole(format!("j({}; q^{}) vanishes", spec.z, spec.p)));
    };
    let sum = lerch_sum(spec, v + lead)?;
    if sum.is_zero() {
        // every term of the quotient lies at or above `v`
        return Ok(QSeries::zero_through(v));
    }
    let ord = sum.lead_exponent().unwrap_or_else(|| sum.valid_through());
    let inv = jtheta(theta, v - ord + lead * 2).invert()?;
    Ok((&sum * &inv).truncate(v))
}

/// `prefactor · j(t) · m(spec)`, with both factors evaluated only as far
/// as the product needs.
pub fn theta_times_appell(
    prefactor: Monomial,
    theta: ThetaSpec,
    spec: &AppellSpec,
    v: Rational,
) -> Result<QSeries> {
    let Some(lead) = theta.lead() else {
        return Ok(QSeries::zero_through(v));
    };
    let target = v - prefactor.exponent();
    let m = appell_m(spec, target - lead)?;
    let ord = m.lead_exponent().unwrap_or_else(|| m.valid_through());
    let j = jtheta(theta, target - ord);
    Ok((&j * &m).mul_monomial(prefactor).truncate(v))
}

/// `m(x,q,z_1) - m(x,q,z_0)` in base `q^p` as the theta quotient
/// `z_0 J_1^3 j(z_1/z_0) j(x z_0 z_1) / (j(z_0) j(z_1) j(x z_0) j(x z_1))`.
pub fn m_difference(
    x: Monomial,
    p: Rational,
    z0: Monomial,
    z1: Monomial,
    v: Rational,
) -> Result<QSeries> {
    let t = |z: Monomial| ThetaSpec::new(z, p);
    let j1 = ThetaSpec::euler(p);
    theta_quotient(
        z0,
        &[j1, j1, j1, t(z1 / z0), t(x * z0 * z1)],
        &[t(z0), t(z1), t(x * z0), t(x * z1)],
        v,
    )
}

/// Right-hand side of the expansion of `f_{2,3,2}(x, y, q^m)` into
/// Appell–Lerch sums with `m(·, q^{10m}, ·)`, for any integer `ℓ`:
///
/// `Σ_{r=0,1} x^r/(q^{r²} y^r) j(q^r y; q²) m(q^{6-5r} x²/y³, q^{10}, q^{2ℓ} y²/x²)`
/// `        + y^r/(q^{r²} x^r) j(q^r x; q²) m(q^{6-5r} y²/x³, q^{10}, x²/(q^{2ℓ} y²))`.
pub fn f232_expansion(
    x: Monomial,
    y: Monomial,
    m: Rational,
    ell: i64,
    v: Rational,
) -> Result<QSeries> {
    let q = |e: i64| Monomial::q_pow(m * e);
    let mut total = QSeries::zero_through(v);
    for r in 0..=1 {
        for (u, w, shift) in [(x, y, ell), (y, x, -ell)] {
            let pre = u.pow(r) / (q(r * r) * w.pow(r));
            let theta = ThetaSpec::new(q(r) * w, m * 2);
            let spec = AppellSpec::new(
                q(6 - 5 * r) * u.pow(2) / w.pow(3),
                m * 10,
                q(2 * shift) * w.pow(2) / u.pow(2),
            );
            total = &total + &theta_times_appell(pre, theta, &spec, v)?;
        }
    }
    Ok(total)
}
