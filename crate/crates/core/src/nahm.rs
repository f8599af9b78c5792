//! Partial Nahm sums over lattice cosets,
//! `Σ_{n ∈ (v+L) ∩ Z_{≥0}^r} q^{½nᵀAn + nᵀB} / ((q;q)_{n_1} ⋯ (q;q)_{n_r})`.
//!
//! The constant `C` is carried for reporting and never multiplied in.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::series::{ceil_index, Dense};
use crate::{Error, QSeries, Rational, Result};

/// Largest exponent denominator accepted by [`nahm_sum`].
pub const DEFAULT_MAX_SCALE: i64 = 5040;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NahmSpec {
    pub a: Vec<Vec<Rational>>,
    pub b: Vec<Rational>,
    pub c: Rational,
    pub v: Vec<i64>,
    /// Lattice generators; `Z^r` when built with [`NahmSpec::full`].
    pub lattice: Vec<Vec<i64>>,
}

impl NahmSpec {
    /// Coset sum with all fields given; checks shapes and independence.
    pub fn new(
        a: Vec<Vec<Rational>>,
        b: Vec<Rational>,
        c: Rational,
        v: Vec<i64>,
        lattice: Vec<Vec<i64>>,
    ) -> Result<Self> {
        let spec = NahmSpec {
            a,
            b,
            c,
            v,
            lattice,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// The full Nahm sum, `v = 0` and `L = Z^r`.
    pub fn full(a: Vec<Vec<Rational>>, b: Vec<Rational>, c: Rational) -> Result<Self> {
        let r = a.len();
        NahmSpec::new(a, b, c, vec![0; r], identity(r))
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    fn validate(&self) -> Result<()> {
        let r = self.rank();
        let bad = |m: String| Err(Error::InvalidArgument(m));
        if r == 0 || r > 3 {
            return bad(format!("rank {r} is outside 1..=3"));
        }
        if self.a.iter().any(|row| row.len() != r) {
            return bad("A must be square".into());
        }
        for i in 0..r {
            for j in 0..i {
                if self.a[i][j] != self.a[j][i] {
                    return bad("A must be symmetric".into());
                }
            }
        }
        if self.b.len() != r || self.v.len() != r {
            return bad(format!("B and v must have length {r}"));
        }
        if self.lattice.iter().any(|g| g.len() != r) {
            return bad(format!("lattice generators must have length {r}"));
        }
        if rank_of(&self.lattice) != self.lattice.len() {
            return bad("lattice generators are linearly dependent".into());
        }
        Ok(())
    }

    /// `½nᵀAn + nᵀB`.
    pub fn exponent(&self, n: &[i64]) -> Rational {
        let r = self.rank();
        let mut e = Rational::zero();
        for i in 0..r {
            e += self.b[i] * n[i];
            for j in 0..r {
                e += self.a[i][j] * (n[i] * n[j]) / 2;
            }
        }
        e
    }

    fn scale(&self) -> i64 {
        let r = self.rank();
        let mut d = 1i64;
        for i in 0..r {
            d = d.lcm(self.b[i].denom());
            d = d.lcm((self.a[i][i] / 2).denom());
            for j in 0..i {
                d = d.lcm(self.a[i][j].denom());
            }
        }
        d
    }
}

fn identity(r: usize) -> Vec<Vec<i64>> {
    (0..r)
        .map(|i| (0..r).map(|j| i64::from(i == j)).collect())
        .collect()
}

/// Row rank by elimination over the rationals.
fn rank_of(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| Rational::from_integer(x)).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let f = m[i][c] / m[rank][c];
                let pivot = m[rank].clone();
                for (t, pv) in m[i].iter_mut().zip(&pivot) {
                    *t -= *pv * f;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Left inverse `(GᵀG)⁻¹Gᵀ` of the generator matrix with columns `gens`.
fn left_inverse(gens: &[Vec<i64>], r: usize) -> Vec<Vec<Rational>> {
    let g = gens.len();
    let mut m: Vec<Vec<Rational>> = (0..g)
        .map(|i| {
            let mut row: Vec<Rational> = (0..g)
                .map(|j| Rational::from_integer((0..r).map(|k| gens[i][k] * gens[j][k]).sum()))
                .collect();
            row.extend((0..g).map(|j| Rational::from_integer(i64::from(i == j))));
            row
        })
        .collect();
    for c in 0..g {
        let p = (c..g)
            .find(|&i| !m[i][c].is_zero())
            .expect("independent generators");
        m.swap(c, p);
        let pivot = m[c][c];
        for x in m[c].iter_mut() {
            *x /= pivot;
        }
        for i in 0..g {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c];
                let pivot = m[c].clone();
                for (t, pv) in m[i].iter_mut().zip(&pivot) {
                    *t -= *pv * f;
                }
            }
        }
    }
    (0..g)
        .map(|i| {
            (0..r)
                .map(|k| (0..g).map(|j| m[i][g + j] * gens[j][k]).sum())
                .collect()
        })
        .collect()
}

/// Per-coordinate lower bound `½d t² + B t` of the exponent on the orthant,
/// with `d = A_ii - Σ_{j≠i} max(0, -A_ij)`.
struct CoordinateBound {
    d: Rational,
    b: Rational,
}

impl CoordinateBound {
    fn at(&self, t: i64) -> Rational {
        self.d * (t * t) / 2 + self.b * t
    }

    fn vertex(&self) -> i64 {
        if self.d.is_zero() {
            0
        } else {
            (-self.b / self.d).floor().to_integer().max(0)
        }
    }

    fn min(&self) -> Rational {
        let t = self.vertex();
        std::cmp::min(self.at(t), self.at(t + 1)).min(self.at(0))
    }
}

/// `f_{A,B,C,v+L}(q) · q^{-C}`, exact below `v`.
pub fn nahm_sum(spec: &NahmSpec, v: Rational) -> Result<QSeries> {
    nahm_sum_with_max_scale(spec, v, DEFAULT_MAX_SCALE)
}

/// As [`nahm_sum`], failing with a scale error when the exponents need a
/// denominator above `max_scale`.
pub fn nahm_sum_with_max_scale(spec: &NahmSpec, v: Rational, max_scale: i64) -> Result<QSeries> {
    spec.validate()?;
    let r = spec.rank();
    let needed = spec.scale();
    if needed > max_scale {
        return Err(Error::Scale {
            exponent: Rational::new(1, needed),
            scale: max_scale,
        });
    }
    let scale = needed.lcm(v.denom());
    let valid = ceil_index(v, scale);

    let bounds: Vec<CoordinateBound> = (0..r)
        .map(|i| CoordinateBound {
            d: spec.a[i][i]
                - (0..r)
                    .filter(|&j| j != i)
                    .map(|j| (-spec.a[i][j]).max(Rational::zero()))
                    .sum::<Rational>(),
            b: spec.b[i],
        })
        .collect();
    for (i, cb) in bounds.iter().enumerate() {
        if cb.d.is_negative() || (cb.d.is_zero() && !cb.b.is_positive()) {
            return Err(Error::TruncationUnbounded(format!(
                "exponent is not bounded below along coordinate {}",
                i + 1
            )));
        }
    }
    let mins: Vec<Rational> = bounds.iter().map(CoordinateBound::min).collect();
    let floor: Rational = mins.iter().sum();
    let radius = 10 * (v.abs().to_integer() + 1) * scale + 1000;
    let mut top = Vec::with_capacity(r);
    for i in 0..r {
        let rest = floor - mins[i];
        let cb = &bounds[i];
        let mut t = 0i64;
        while t <= cb.vertex() || cb.at(t + 1) + rest < v {
            t += 1;
            if t > radius {
                return Err(Error::TruncationUnbounded(format!(
                    "coordinate {} passed radius {radius}",
                    i + 1
                )));
            }
        }
        top.push(t);
    }

    // enumerate coset points n = v + Σ k_j g_j inside the box
    let gens = &spec.lattice;
    let pinv = left_inverse(gens, r);
    let mut k_ranges = Vec::with_capacity(gens.len());
    for row in &pinv {
        let (mut lo, mut hi) = (Rational::zero(), Rational::zero());
        for i in 0..r {
            let a = row[i] * (0 - spec.v[i]);
            let b = row[i] * (top[i] - spec.v[i]);
            lo += a.min(b);
            hi += a.max(b);
        }
        k_ranges.push((lo.ceil().to_integer(), hi.floor().to_integer()));
    }
    let mut points: Vec<(Vec<i64>, i64)> = Vec::new();
    let mut k: Vec<i64> = k_ranges.iter().map(|r| r.0).collect();
    let empty = k_ranges.iter().any(|&(lo, hi)| lo > hi);
    if !empty {
        loop {
            let n: Vec<i64> = (0..r)
                .map(|i| spec.v[i] + (0..gens.len()).map(|j| k[j] * gens[j][i]).sum::<i64>())
                .collect();
            if n.iter().zip(&top).all(|(&x, &t)| x >= 0 && x <= t) {
                let e = (spec.exponent(&n) * scale).to_integer();
                if e < valid {
                    points.push((n, e));
                }
            }
            // odometer step
            let mut j = 0;
            loop {
                if j == k.len() {
                    break;
                }
                if k[j] < k_ranges[j].1 {
                    k[j] += 1;
                    break;
                }
                k[j] = k_ranges[j].0;
                j += 1;
            }
            if j == k.len() {
                break;
            }
        }
    }
    if points.is_empty() {
        return Ok(QSeries::zero(scale, valid));
    }
    points.sort();
    let lo = (floor * scale).floor().to_integer().min(valid);
    let dense = horner(&points, 0, lo, valid, scale);
    Ok(QSeries::from_dense(dense, scale).coarsened())
}

/// `Σ q^{e} / ∏_{i≥d} (q;q)_{n_i}` over `pts`, which share coordinates `< d`
/// and are sorted; divisions are shared between consecutive values of `n_d`.
fn horner(pts: &[(Vec<i64>, i64)], d: usize, lo: i64, hi: i64, scale: i64) -> Dense {
    let mut acc = Dense::new(lo, hi);
    let divide = |acc: &mut Dense, from: i64, to: i64| {
        for k in from..=to {
            let t = k * scale;
            if t >= hi - lo {
                break;
            }
            acc.div_one_minus(1, t);
        }
    };
    let last = d + 1 == pts[0].0.len();
    let mut end = pts.len();
    let mut prev: Option<i64> = None;
    while end > 0 {
        let t = pts[end - 1].0[d];
        let start = pts[..end].partition_point(|p| p.0[d] < t);
        if let Some(p) = prev {
            divide(&mut acc, t + 1, p);
        }
        if last {
            for (_, e) in &pts[start..end] {
                acc.add_at(*e, &One::one());
            }
        } else {
            let inner = horner(&pts[start..end], d + 1, lo, hi, scale);
            for (a, b) in acc.data.iter_mut().zip(inner.data) {
                *a += b;
            }
        }
        prev = Some(t);
        end = start;
    }
    if let Some(p) = prev {
        divide(&mut acc, 1, p);
    }
    acc
}

fn fmt_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, xs: &[T]) -> fmt::Result {
    f.write_str("[")?;
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str("]")
}

fn fmt_matrix<T: fmt::Display>(f: &mut fmt::Formatter<'_>, rows: &[Vec<T>]) -> fmt::Result {
    f.write_str("[")?;
    for (i, row) in rows.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        fmt_list(f, row)?;
    }
    f.write_str("]")
}

/// `A=[[0,1/2],[1/2,0]] B=[1/2,1/2] C=1/20 v=[0,0] L=[[2,0],[0,2]]`.
impl fmt::Display for NahmSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("A=")?;
        fmt_matrix(f, &self.a)?;
        f.write_str(" B=")?;
        fmt_list(f, &self.b)?;
        write!(f, " C={} v=", self.c)?;
        fmt_list(f, &self.v)?;
        f.write_str(" L=")?;
        fmt_matrix(f, &self.lattice)
    }
}

#[derive(Debug)]
enum Value {
    Atom(String),
    List(Vec<Value>),
}

fn parse_value(s: &str) -> std::result::Result<Value, String> {
    fn go(chars: &[char], pos: &mut usize) -> std::result::Result<Value, String> {
        if chars.get(*pos) == Some(&'[') {
            *pos += 1;
            let mut items = Vec::new();
            if chars.get(*pos) == Some(&']') {
                *pos += 1;
                return Ok(Value::List(items));
            }
            loop {
                items.push(go(chars, pos)?);
                match chars.get(*pos) {
                    Some(',') => *pos += 1,
                    Some(']') => {
                        *pos += 1;
                        return Ok(Value::List(items));
                    }
                    _ => return Err("expected `,` or `]`".into()),
                }
            }
        }
        let start = *pos;
        while *pos < chars.len() && !matches!(chars[*pos], ',' | ']' | '[') {
            *pos += 1;
        }
        if start == *pos {
            return Err("expected a number".into());
        }
        Ok(Value::Atom(chars[start..*pos].iter().collect()))
    }
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut pos = 0;
    let v = go(&chars, &mut pos)?;
    if pos != chars.len() {
        return Err("trailing characters".into());
    }
    Ok(v)
}

fn atom<T: FromStr>(v: &Value) -> std::result::Result<T, String> {
    match v {
        Value::Atom(s) => s.parse().map_err(|_| format!("bad number `{s}`")),
        Value::List(_) => Err("expected a number, found a list".into()),
    }
}

fn list<T: FromStr>(v: &Value) -> std::result::Result<Vec<T>, String> {
    match v {
        Value::List(xs) => xs.iter().map(atom).collect(),
        Value::Atom(_) => Err("expected a list".into()),
    }
}

fn matrix<T: FromStr>(v: &Value) -> std::result::Result<Vec<Vec<T>>, String> {
    match v {
        Value::List(xs) => xs.iter().map(list).collect(),
        Value::Atom(_) => Err("expected a list of lists".into()),
    }
}

/// Splits `key=value` fields, where values may contain spaces inside brackets.
fn fields(s: &str) -> std::result::Result<Vec<(String, String)>, String> {
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let eq = rest
            .find('=')
            .ok_or_else(|| format!("expected key=value at `{rest}`"))?;
        let key = rest[..eq].trim().to_string();
        let body = &rest[eq + 1..];
        let mut depth = 0i32;
        let mut end = body.len();
        let mut seen = false;
        for (i, c) in body.char_indices() {
            match c {
                '[' => depth += 1,
                ']' => depth -= 1,
                c if c.is_whitespace() && depth == 0 && seen => {
                    end = i;
                    break;
                }
                _ => {}
            }
            if !c.is_whitespace() {
                seen = true;
            }
        }
        out.push((key, body[..end].trim().to_string()));
        rest = body[end..].trim_start();
    }
    Ok(out)
}

impl FromStr for NahmSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = |m: String| Error::InvalidArgument(format!("nahm spec: {m}"));
        let mut a = None;
        let mut b = None;
        let mut c = Rational::zero();
        let mut v = None;
        let mut lattice = None;
        for (key, value) in fields(s).map_err(err)? {
            let value = parse_value(&value).map_err(|e| err(format!("{key}: {e}")))?;
            let ctx = |e: String| err(format!("{key}: {e}"));
            match key.as_str() {
                "A" => a = Some(matrix::<Rational>(&value).map_err(ctx)?),
                "B" => b = Some(list::<Rational>(&value).map_err(ctx)?),
                "C" => c = atom::<Rational>(&value).map_err(ctx)?,
                "v" => v = Some(list::<i64>(&value).map_err(ctx)?),
                "L" => lattice = Some(matrix::<i64>(&value).map_err(ctx)?),
                other => return Err(err(format!("unknown field `{other}`"))),
            }
        }
        let a = a.ok_or_else(|| err("missing A".into()))?;
        let r = a.len();
        let b = b.ok_or_else(|| err("missing B".into()))?;
        NahmSpec::new(
            a,
            b,
            c,
            v.unwrap_or_else(|| vec![0; r]),
            lattice.unwrap_or_else(|| identity(r)),
        )
    }
}
