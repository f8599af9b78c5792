//! Hecke-type double series
//! `f_{a,b,c}(x, y, q) = Σ_{sg(r)=sg(s)} sg(r) (-1)^{r+s} x^r y^s q^{a·C(r,2) + b·rs + c·C(s,2)}`
//! for monomial `x`, `y`, evaluated in the base `q^m`.

use num_integer::Integer;
use num_traits::Zero;

use crate::qfunctions::ThetaSpec;
use crate::series::ceil_index;
use crate::{Error, Monomial, QSeries, Rational, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HeckeSpec {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub x: Monomial,
    pub y: Monomial,
    /// The series is `f_{a,b,c}(x, y, q^base)`.
    pub base: Rational,
}

impl HeckeSpec {
    pub fn new(
        a: i64,
        b: i64,
        c: i64,
        x: Monomial,
        y: Monomial,
        base: impl Into<Rational>,
    ) -> Self {
        HeckeSpec {
            a,
            b,
            c,
            x,
            y,
            base: base.into(),
        }
    }

    /// `f_{a,b,c}(x,y,q) = -q^{a+b+c}/(xy) · f_{a,b,c}(q^{2a+b}/x, q^{2c+b}/y, q)`,
    /// returned as the prefactor and the reflected series.
    pub fn reflected(&self) -> (Monomial, HeckeSpec) {
        let m = self.base;
        let pre = -(Monomial::q_pow(m * (self.a + self.b + self.c)) / (self.x * self.y));
        let x = Monomial::q_pow(m * (2 * self.a + self.b)) / self.x;
        let y = Monomial::q_pow(m * (2 * self.c + self.b)) / self.y;
        (pre, HeckeSpec { x, y, ..*self })
    }

    /// `f_{a,b,c}(x,y,q) = -y · f_{a,b,c}(q^b x, q^c y, q) + j(x; q^a)`.
    pub fn shifted_by_b_c(&self) -> (Monomial, HeckeSpec, ThetaSpec) {
        let m = self.base;
        let spec = HeckeSpec {
            x: self.x * Monomial::q_pow(m * self.b),
            y: self.y * Monomial::q_pow(m * self.c),
            ..*self
        };
        (-self.y, spec, ThetaSpec::new(self.x, m * self.a))
    }

    /// `f_{a,b,c}(x,y,q) = -x · f_{a,b,c}(q^a x, q^b y, q) + j(y; q^c)`.
    pub fn shifted_by_a_b(&self) -> (Monomial, HeckeSpec, ThetaSpec) {
        let m = self.base;
        let spec = HeckeSpec {
            x: self.x * Monomial::q_pow(m * self.a),
            y: self.y * Monomial::q_pow(m * self.b),
            ..*self
        };
        (-self.x, spec, ThetaSpec::new(self.y, m * self.c))
    }

    /// `f_{a,b,c}(x,y,q) = f_{c,b,a}(y,x,q)`.
    pub fn swapped(&self) -> HeckeSpec {
        HeckeSpec {
            a: self.c,
            c: self.a,
            x: self.y,
            y: self.x,
            ..*self
        }
    }

    /// `f_{a,b,c}(x,y,q^m) = f_{am,bm,cm}(x,y,q)` for integral `m`.
    pub fn base_absorbed(&self) -> Option<HeckeSpec> {
        self.base.is_integer().then(|| {
            let m = self.base.to_integer();
            HeckeSpec {
                a: self.a * m,
                b: self.b * m,
                c: self.c * m,
                base: Rational::from_integer(1),
                ..*self
            }
        })
    }

    fn scale_for(&self, v: Rational) -> i64 {
        self.base
            .denom()
            .lcm(self.x.exponent().denom())
            .lcm(self.y.exponent().denom())
            .lcm(v.denom())
    }
}

/// One sign quadrant, reparametrised over `u, w >= start` as
/// `E(u,w) = A·u(u+δ)/2 + B·uw + C·w(w+δ)/2 + α·u + β·w` (integer index units).
struct Quadrant {
    start: i64,
    delta: i64,
    qa: i64,
    qb: i64,
    qc: i64,
    alpha: i64,
    beta: i64,
    sign: i64,
    x_sign: i64,
    y_sign: i64,
}

impl Quadrant {
    fn exponent(&self, u: i64, w: i64) -> i64 {
        self.qa * (u * (u + self.delta) / 2)
            + self.qb * u * w
            + self.qc * (w * (w + self.delta) / 2)
            + self.alpha * u
            + self.beta * w
    }

    fn coefficient(&self, u: i64, w: i64) -> i64 {
        let pu = if u % 2 == 1 { self.x_sign } else { 1 };
        let pw = if w % 2 == 1 { self.y_sign } else { 1 };
        self.sign * pu * pw
    }

    /// Integer minimiser of a convex `k·n(n+δ)/2 + l·n` over `n >= start`.
    fn argmin(&self, k: i64, l: i64) -> i64 {
        // real vertex at -δ/2 - l/k
        let v = Rational::new(-self.delta, 2) - Rational::new(l, k);
        let f = v.floor().to_integer().max(self.start);
        let g = |n: i64| k * (n * (n + self.delta) / 2) + l * n;
        if g(f + 1) < g(f) {
            f + 1
        } else {
            f
        }
    }

    /// Pushes every term with exponent index below `valid`.
    fn collect(&self, valid: i64, radius: i64, out: &mut Vec<(i64, i64)>) -> Result<()> {
        let row = |u: i64| self.qa * (u * (u + self.delta) / 2) + self.alpha * u;
        let col = |w: i64| self.qc * (w * (w + self.delta) / 2) + self.beta * w;
        let col_min = col(self.argmin(self.qc, self.beta));
        let row_vertex = self.argmin(self.qa, self.alpha);
        let mut u = self.start;
        loop {
            // with B >= 0 on this quadrant, E(u,w) >= row(u) + min col
            if u > row_vertex && row(u) + col_min >= valid {
                return Ok(());
            }
            if u - self.start > radius {
                return Err(Error::TruncationUnbounded(format!(
                    "row scan passed radius {radius} without leaving the window"
                )));
            }
            let lin = self.qb * u + self.beta;
            let w0 = self.argmin(self.qc, lin);
            let mut w = w0;
            while w >= self.start {
                let e = self.exponent(u, w);
                if e >= valid {
                    break;
                }
                out.push((e, self.coefficient(u, w)));
                w -= 1;
            }
            let mut w = w0 + 1;
            loop {
                let e = self.exponent(u, w);
                if e >= valid {
                    break;
                }
                if w - w0 > radius {
                    return Err(Error::TruncationUnbounded(format!(
                        "column scan passed radius {radius}"
                    )));
                }
                out.push((e, self.coefficient(u, w)));
                w += 1;
            }
            u += 1;
        }
    }
}

/// `f_{a,b,c}(x, y, q^m)`, exact below `v`.
///
/// Requires `a, c > 0` and `b >= 0`: then on each sign quadrant the exponent
/// dominates `a·C(r,2) + c·C(s,2)` plus linear terms, which gives a certified
/// bound on the rows that can reach the window.
pub fn hecke_f(spec: &HeckeSpec, v: Rational) -> Result<QSeries> {
    if spec.a <= 0 || spec.c <= 0 || spec.b < 0 {
        return Err(Error::TruncationUnbounded(format!(
            "f_{{{},{},{}}} needs a, c > 0 and b >= 0",
            spec.a, spec.b, spec.c
        )));
    }
    if spec.base <= Rational::zero() {
        return Err(Error::InvalidArgument(format!(
            "base exponent {} must be positive",
            spec.base
        )));
    }
    let scale = spec.scale_for(v);
    let valid = ceil_index(v, scale);
    let m = spec.base * scale;
    let to_int = |r: Rational| r.to_integer();
    let qa = to_int(m * spec.a);
    let qb = to_int(m * spec.b);
    let qc = to_int(m * spec.c);
    let ex = to_int(spec.x.exponent() * scale);
    let ey = to_int(spec.y.exponent() * scale);
    let span = (valid.unsigned_abs() as f64 / scale as f64).sqrt();
    let shift = ((ex.abs() + ey.abs()) / qa.min(qc).max(1)) as f64;
    let radius = (10.0 * span + 50.0 + shift) as i64;

    let xs = -spec.x.sign();
    let ys = -spec.y.sign();
    let quadrants = [
        // r, s >= 0
        Quadrant {
            start: 0,
            delta: -1,
            qa,
            qb,
            qc,
            alpha: ex,
            beta: ey,
            sign: 1,
            x_sign: xs,
            y_sign: ys,
        },
        // r = -u, s = -w with u, w >= 1
        Quadrant {
            start: 1,
            delta: 1,
            qa,
            qb,
            qc,
            alpha: -ex,
            beta: -ey,
            sign: -1,
            x_sign: xs,
            y_sign: ys,
        },
    ];
    let mut terms = Vec::new();
    for quad in &quadrants {
        quad.collect(valid, radius, &mut terms)?;
    }
    Ok(QSeries::from_index_terms(scale, terms, valid))
}
