//! The catalogue of identity checks.
//!
//! Each check lists two or more sides; every side is compared with the last
//! one through the requested order. Sides are either expressions in the
//! language of [`crate::expr`] or native builders for objects the language
//! cannot spell (Bailey sums, Lovejoy's transform, the Appell–Lerch
//! expansion of `f_{2,3,2}`).

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};
use std::time::Instant;

use rayon::prelude::*;

use crate::appell::{f232_expansion, m_difference};
use crate::bailey::{
    bailey_sum, bp_beta, lovejoy_lhs, lovejoy_rhs, slater1_sides, slater2_sides, BaileyPair,
    LovejoyShape,
};
use crate::expr::{eval_padded, parse};
use crate::qfunctions::j_m;
use crate::{rat, CheckReport, Error, Monomial, QSeries, Rational, Result};

type Builder = Arc<dyn Fn(Rational) -> Result<QSeries> + Send + Sync>;
type FamilyBuilder = Arc<dyn Fn(Rational) -> Result<Vec<(String, QSeries, QSeries)>> + Send + Sync>;

#[derive(Clone)]
pub enum Side {
    /// Source text in the expression language.
    Expr(String),
    /// A builder called at a working order and padded like an expression.
    Native(Builder),
}

impl Side {
    fn eval(&self, order: Rational) -> Result<QSeries> {
        match self {
            Side::Expr(src) => parse(src)?.eval(order),
            Side::Native(f) => eval_padded(order, |w| f(w)),
        }
    }

    /// Human-readable form.
    pub fn describe(&self) -> String {
        match self {
            Side::Expr(src) => src.clone(),
            Side::Native(_) => "<native>".to_string(),
        }
    }
}

#[derive(Clone)]
pub enum Body {
    /// `(label, side)`, each compared with the last.
    Sides(Vec<(String, Side)>),
    /// Many labelled `(lhs, rhs)` comparisons produced at once, exact
    /// through the order passed in.
    Family(FamilyBuilder),
}

#[derive(Clone)]
pub struct IdentityCheck {
    pub id: &'static str,
    pub description: &'static str,
    pub anchor: &'static str,
    pub default_order: Rational,
    /// Denominator of the exponents the sides work with.
    pub scale: i64,
    pub body: Body,
}

/// Adds `delta·q^exponent` to every right-hand side before comparing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mutation {
    pub exponent: Rational,
    pub delta: i64,
}

fn expr(s: &str) -> Side {
    Side::Expr(s.to_string())
}

fn native(f: impl Fn(Rational) -> Result<QSeries> + Send + Sync + 'static) -> Side {
    Side::Native(Arc::new(f))
}

fn q(e: i64) -> Monomial {
    Monomial::q_pow(e)
}

fn nq(e: i64) -> Monomial {
    Monomial::neg_q_pow(e)
}

fn check(
    id: &'static str,
    description: &'static str,
    anchor: &'static str,
    order: i64,
    scale: i64,
    sides: Vec<Side>,
) -> IdentityCheck {
    let n = sides.len();
    let labelled = sides
        .into_iter()
        .enumerate()
        .map(|(i, s)| {
            let label = match i {
                0 => "lhs".to_string(),
                i if i + 1 == n => "rhs".to_string(),
                i => format!("side {}", i + 1),
            };
            (label, s)
        })
        .collect();
    IdentityCheck {
        id,
        description,
        anchor,
        default_order: rat(order),
        scale,
        body: Body::Sides(labelled),
    }
}

fn family(
    id: &'static str,
    description: &'static str,
    anchor: &'static str,
    order: i64,
    f: impl Fn(Rational) -> Result<Vec<(String, QSeries, QSeries)>> + Send + Sync + 'static,
) -> IdentityCheck {
    IdentityCheck {
        id,
        description,
        anchor,
        default_order: rat(order),
        scale: 1,
        body: Body::Family(Arc::new(f)),
    }
}

const CONJ1: &str = r#"nahm("A=[[0,1/2],[1/2,0]] B=[1/2,1/2] L=[[2,0],[0,2]]")"#;
const CONJ2: &str = r#"q^(-1/2) * nahm("A=[[0,1/2],[1/2,0]] B=[1/2,1] v=[1,0] L=[[2,0],[0,2]]")"#;

const S_HECKE: &str = "f(2,3,2; -q^4, -q^4; q^3) + 2*f(2,3,2; -q^4, -q^5; q^3) \
    + f(2,3,2; -q^5, -q^8; q^3) - Jbar(1,6) - 2*Jbar(2,6)";
const T_HECKE: &str = "f(2,3,2; -q^7, -q^5; q^3) - q*f(2,3,2; -q^7, -q^8; q^3) \
    + q^-1*f(2,3,2; -q^1, -q^4; q^3) + f(2,3,2; -q^5, -q^5; q^3) - (1 + q^-1)*Jbar(1,6)";

const S_PRODUCT: &str = "Jm(1)*J(2,5)";
const T_PRODUCT: &str = "Jm(1)*J(1,5)";

/// The W sums as Appell–Lerch combinations, then as the middle forms
/// and theta quotients.
const W: [[&str; 3]; 8] = [
    [
        "m(-q^14;30;q^6) + m(-q^16;30;q^-8)",
        "m(-q^14;30;q^6) + 1 - m(-q^14;30;q^8)",
        "1 - q^6*Jm(30)^3*J(2,30)*Jbar(28,30)/(J(8,30)*J(6,30)*Jbar(22,30)*Jbar(20,30))",
    ],
    [
        "m(-q^14;30;q^-6) + m(-q^16;30;q^-8)",
        "m(-q^14;30;q^-6) + 1 - m(-q^14;30;q^8)",
        "1 + Jm(30)^3*J(14,30)*Jbar(16,30)/(J(8,30)*J(6,30)*Jbar(22,30)*Jbar(8,30))",
    ],
    [
        "q^-1*m(-q^-1;30;q^6) + m(-q^1;30;q^-8)",
        "-m(-q^1;30;q^-6) + m(-q^1;30;q^-8)",
        "-q^5*Jm(30)^3*J(2,30)*Jbar(13,30)/(J(6,30)*J(8,30)*Jbar(5,30)*Jbar(7,30))",
    ],
    [
        "q^-1*m(-q^-1;30;q^-6) + m(-q^1;30;q^-8)",
        "-m(-q^1;30;q^6) + m(-q^1;30;q^-8)",
        "q^6*Jm(30)^3*J(14,30)*Jbar(1,30)/(J(6,30)*J(8,30)*Jbar(7,30)^2)",
    ],
    [
        "q^-4*m(-q^-4;30;q^8) + m(-q^4;30;q^12)",
        "-m(-q^4;30;q^-8) + m(-q^4;30;q^12)",
        "-q^4*Jm(30)^3*J(20,30)*Jbar(8,30)/(J(8,30)*J(12,30)*Jbar(4,30)*Jbar(16,30))",
    ],
    [
        "q^-4*m(-q^-4;30;q^8) + m(-q^4;30;q^-12)",
        "-m(-q^4;30;q^-8) + m(-q^4;30;q^-12)",
        "-q^4*Jm(30)^3*J(4,30)*Jbar(16,30)/(J(8,30)*J(12,30)*Jbar(4,30)*Jbar(8,30))",
    ],
    [
        "m(-q^11;30;q^8) + m(-q^19;30;q^-12)",
        "m(-q^11;30;q^8) + 1 - m(-q^11;30;q^12)",
        "1 - q^7*Jm(30)^3*J(4,30)*Jbar(1,30)/(J(8,30)*J(12,30)*Jbar(19,30)*Jbar(23,30))",
    ],
    [
        "m(-q^11;30;q^8) + q^-11*m(-q^-11;30;q^12)",
        "m(-q^11;30;q^8) - m(-q^11;30;q^-12)",
        "-q*Jm(30)^3*J(20,30)*Jbar(7,30)/(J(12,30)*J(8,30)*Jbar(1,30)*Jbar(19,30))",
    ],
];

/// The M sums; the last entry of each row is the theta quotient, and
/// empty strings mark rows that print only one intermediate form.
const M: [[&str; 3]; 8] = [
    [
        "m(-q^17;30;q^2) + m(-q^13;30;q^6)",
        "1 - m(-q^13;30;q^-2) + m(-q^13;30;q^6)",
        "1 - Jm(30)^3*J(8,30)*Jbar(17,30)/(J(2,30)*J(6,30)*Jbar(11,30)*Jbar(19,30))",
    ],
    [
        "m(-q^7;30;q^-2) + q^-7*m(-q^-7;30;q^12)",
        "m(-q^7;30;q^-2) - m(-q^7;30;q^-12)",
        "Jm(30)^3*J(10,30)*Jbar(7,30)/(J(2,30)*J(12,30)*Jbar(5,30)^2)",
    ],
    [
        "m(-q^2;30;q^2) + q^-2*m(-q^-2;30;q^6)",
        "m(-q^2;30;q^2) - m(-q^2;30;q^-6)",
        "-q^2*Jm(30)^3*J(8,30)*Jbar(2,30)/(J(2,30)*J(6,30)*Jbar(4,30)^2)",
    ],
    [
        "q^-8*m(-q^-8;30;q^-2) + m(-q^8;30;q^12)",
        "-m(-q^8;30;q^2) + m(-q^8;30;q^12)",
        "q^2*Jm(30)^3*J(10,30)*Jbar(22,30)/(J(2,30)*J(12,30)*Jbar(10,30)^2)",
    ],
    [
        "-m(-q^8;30;q^8) + m(-q^8;30;q^-12)",
        "",
        "q^4*Jm(30)^3*J(20,30)*Jbar(4,30)/(J(8,30)*J(12,30)*Jbar(4,30)*Jbar(16,30))",
    ],
    [
        "-m(-q^13;30;q^-8) + m(-q^13;30;q^-6)",
        "",
        "q^5*Jm(30)^3*J(2,30)*Jbar(1,30)/(J(6,30)*J(8,30)*Jbar(5,30)*Jbar(7,30))",
    ],
    [
        "-q^-7*m(-q^-7;30;q^8) + m(-q^23;30;q^-12)",
        "1 - m(-q^23;30;q^8) + m(-q^23;30;q^-12)",
        "1 + q*Jm(30)^3*J(20,30)*Jbar(19,30)/(J(8,30)*J(12,30)*Jbar(1,30)*Jbar(11,30))",
    ],
    [
        "-m(-q^-2;30;q^-8) + m(-q^-2;30;q^-6)",
        "",
        "q^8*Jm(30)^3*J(2,30)*Jbar(16,30)/(J(6,30)*J(8,30)*Jbar(10,30)*Jbar(8,30))",
    ],
];

const W_IDS: [&str; 8] = ["w1", "w2", "w3", "w4", "w5", "w6", "w7", "w8"];
const M_IDS: [&str; 8] = ["m1", "m2", "m3", "m4", "m5", "m6", "m7", "m8"];
const W_ANCHORS: [&str; 8] = ["W1", "W2", "W3", "W4", "W5", "W6", "W7", "W8"];
const M_ANCHORS: [&str; 8] = ["M1", "M2", "M3", "M4", "M5", "M6", "M7", "M8"];

/// `(x, y)` exponents of `f_{2,3,2}(-q^x, -q^y, q^3)` and the printed
/// expansion with `ℓ = 1`.
const F232: [(i64, i64, &str); 7] = [
    (
        4,
        4,
        "Jbar(2,6)*m(-q^14;30;q^6) + Jbar(2,6)*m(-q^14;30;q^-6) \
         + q^-4*Jbar(1,6)*m(-q^-1;30;q^6) + q^-4*Jbar(1,6)*m(-q^-1;30;q^-6)",
    ),
    (
        4,
        5,
        "Jbar(1,6)*m(-q^11;30;q^8) + Jbar(2,6)*m(-q^16;30;q^-8) \
         + q^-6*Jbar(2,6)*m(-q^-4;30;q^8) + q^-3*Jbar(1,6)*m(-q^1;30;q^-8)",
    ),
    (
        5,
        8,
        "q^-2*Jbar(2,6)*m(-q^4;30;q^12) + Jbar(1,6)*m(-q^19;30;q^-12) \
         + q^-11*Jbar(1,6)*m(-q^-11;30;q^12) + q^-2*Jbar(2,6)*m(-q^4;30;q^-12)",
    ),
    (
        7,
        5,
        "Jbar(1,6)*m(-q^17;30;q^2) + q^-1*Jbar(1,6)*m(-q^7;30;q^-2) \
         + q^-3*Jbar(2,6)*m(-q^2;30;q^2) + q^-9*Jbar(2,6)*m(-q^-8;30;q^-2)",
    ),
    (
        7,
        8,
        "q^-2*Jbar(2,6)*m(-q^8;30;q^8) + q^-1*Jbar(1,6)*m(-q^13;30;q^-8) \
         + q^-9*Jbar(5,6)*m(-q^-7;30;q^8) + q^-6*Jbar(2,6)*m(-q^-2;30;q^-8)",
    ),
    (
        1,
        4,
        "Jbar(2,6)*m(-q^8;30;q^12) + Jbar(1,6)*m(-q^23;30;q^-12) \
         + q^-7*Jbar(1,6)*m(-q^-7;30;q^12) + Jbar(2,6)*m(-q^8;30;q^-12)",
    ),
    (
        5,
        5,
        "Jbar(1,6)*m(-q^13;30;q^6) + Jbar(1,6)*m(-q^13;30;q^-6) \
         + q^-5*Jbar(2,6)*m(-q^-2;30;q^6) + q^-5*Jbar(2,6)*m(-q^-2;30;q^-6)",
    ),
];

const F232_IDS: [&str; 7] = [
    "f232exp-1",
    "f232exp-2",
    "f232exp-3",
    "f232exp-4",
    "f232exp-5",
    "f232exp-6",
    "f232exp-7",
];
const F232_ANCHORS: [&str; 7] = ["f-1", "f-2", "f-3", "f-4", "f-5", "f-6", "f-7"];

fn f232(x: i64, y: i64) -> String {
    format!("f(2,3,2; -q^{x}, -q^{y}; q^3)")
}

/// `(q;q)_∞² · RHS` of Lovejoy's transform, with `q → q^{1/2}`.
fn lovejoy_half(shape: LovejoyShape) -> Side {
    native(move |w| {
        let (pa, pb) = shape.pairs();
        let v = w * 2;
        let sum = lovejoy_rhs(pa, pb, v)?;
        let e = j_m(rat(1), v)?;
        Ok((&(&e * &e) * &sum).rescale(Rational::new(1, 2)))
    })
}

fn lovejoy_side(shape: LovejoyShape, rhs: bool) -> Side {
    native(move |w| {
        let (pa, pb) = shape.pairs();
        if rhs {
            lovejoy_rhs(pa, pb, w)
        } else {
            lovejoy_lhs(pa, pb, w)
        }
    })
}

fn expansion(x: Monomial, y: Monomial, ell: i64) -> Side {
    native(move |w| f232_expansion(x, y, rat(3), ell, w))
}

fn bailey_family(
    pair: BaileyPair,
    n_max: u64,
) -> impl Fn(Rational) -> Result<Vec<(String, QSeries, QSeries)>> {
    move |v| {
        Ok((0..=n_max)
            .map(|n| {
                (
                    format!("n={n}"),
                    bp_beta(pair, n, v),
                    bailey_sum(pair, n, v),
                )
            })
            .collect())
    }
}

fn slater_family(
    sides: fn(u64, Rational) -> (QSeries, QSeries),
    n_max: u64,
) -> impl Fn(Rational) -> Result<Vec<(String, QSeries, QSeries)>> {
    move |v| {
        Ok((0..=n_max)
            .map(|n| {
                let (l, r) = sides(n, v);
                (format!("n={n}"), l, r)
            })
            .collect())
    }
}

fn build() -> Vec<IdentityCheck> {
    let mut out = vec![
        check(
            "rr1",
            "sum q^{n^2}/(q;q)_n = 1/(q,q^4;q^5)_inf",
            "first Rogers-Ramanujan identity",
            100,
            1,
            vec![
                expr(r#"nahm("A=[[2]] B=[0]")"#),
                expr("1/(poch(q^1;5;inf)*poch(q^4;5;inf))"),
            ],
        ),
        check(
            "rr2",
            "sum q^{n^2+n}/(q;q)_n = 1/(q^2,q^3;q^5)_inf",
            "second Rogers-Ramanujan identity",
            100,
            1,
            vec![
                expr(r#"nahm("A=[[2]] B=[1]")"#),
                expr("1/(poch(q^2;5;inf)*poch(q^3;5;inf))"),
            ],
        ),
        check(
            "wz",
            "sum q^{4ij+i+3j}/((q;q)_{2i+1}(q;q)_{2j}) as an infinite product",
            "double sum with an infinite product",
            100,
            2,
            vec![
                expr(r#"q^(-1/2) * nahm("A=[[0,1],[1,0]] B=[1/2,1/2] v=[1,0] L=[[2,0],[0,2]]")"#),
                expr("poch(q^8;8;inf)/(poch(q^1;2;inf)^2*poch(q^4;8;inf))"),
            ],
        ),
        check(
            "conj1",
            "sum q^{2ij+i+j}/((q;q)_{2i}(q;q)_{2j}) = 1/((q;q^2)^2 (q^2,q^8;q^10))",
            "partial Nahm sum identity, first",
            100,
            2,
            vec![
                expr(CONJ1),
                expr("1/(poch(q^1;2;inf)^2*poch(q^2;10;inf)*poch(q^8;10;inf))"),
            ],
        ),
        check(
            "conj2",
            "sum q^{2ij+i+3j}/((q;q)_{2i+1}(q;q)_{2j}) = 1/((q;q^2)^2 (q^4,q^6;q^10))",
            "partial Nahm sum identity, second",
            100,
            2,
            vec![
                expr(CONJ2),
                expr("1/(poch(q^1;2;inf)^2*poch(q^4;10;inf)*poch(q^6;10;inf))"),
            ],
        ),
        check(
            "sprod",
            "S(q^{1/2}) = J_1 J_{2,5}",
            "product form of S",
            75,
            2,
            vec![
                expr(&format!("subs(Jm(1)^2 * {CONJ1}; 1/2)")),
                lovejoy_half(LovejoyShape::S),
                expr(S_PRODUCT),
            ],
        ),
        check(
            "tprod",
            "T(q^{1/2}) = J_1 J_{1,5}",
            "product form of T",
            75,
            2,
            vec![
                expr(&format!("subs(Jm(1)^2 * {CONJ2}; 1/2)")),
                lovejoy_half(LovejoyShape::T),
                expr(T_PRODUCT),
            ],
        ),
        family(
            "slater1",
            "1/(q;q)_{2n} = sum_r (1-q^{6r+1}) q^{6r^2-r}/((q;q)_{n-3r}(q;q)_{n+3r+1}), n <= 25",
            "Slater's first finite identity",
            80,
            slater_family(slater1_sides, 25),
        ),
        family(
            "slater2",
            "1/(q^2;q)_{2n} = sum_r (1-q^{6r+2}) q^{6r^2+r}/((q;q)_{n-3r}(q^2;q)_{n+3r+1}), n <= 25",
            "Slater's second finite identity",
            80,
            slater_family(slater2_sides, 25),
        ),
    ];

    for (pair, id, anchor) in [
        (BaileyPair::BP1, "bp1", "Bailey pair relative to 1"),
        (BaileyPair::BP2, "bp2", "Bailey pair relative to q"),
        (BaileyPair::BP3, "bp3", "Bailey pair relative to q^2"),
    ] {
        out.push(family(
            id,
            "beta_n = sum_i alpha_i/((q;q)_{n-i}(aq;q)_{n+i}) for n <= 30",
            anchor,
            80,
            bailey_family(pair, 30),
        ));
    }

    out.push(check(
        "lovejoyS",
        "Lovejoy's transform with the pairs relative to 1 and q gives S(q)/(q;q)^2",
        "two-pair Bailey transform, S instance",
        60,
        1,
        vec![
            expr(CONJ1),
            lovejoy_side(LovejoyShape::S, false),
            lovejoy_side(LovejoyShape::S, true),
        ],
    ));
    out.push(check(
        "lovejoyT",
        "Lovejoy's transform with the pairs relative to q^2 and q gives T(q)/(q;q)^2",
        "two-pair Bailey transform, T instance",
        60,
        2,
        vec![
            expr(CONJ2),
            lovejoy_side(LovejoyShape::T, false),
            lovejoy_side(LovejoyShape::T, true),
        ],
    ));
    out.push(check(
        "slem",
        "S(q^{1/2}) as f_{2,3,2} series in base q^3",
        "Hecke form of S",
        200,
        2,
        vec![
            expr(&format!("subs(Jm(1)^2 * {CONJ1}; 1/2)")),
            lovejoy_half(LovejoyShape::S),
            expr(S_HECKE),
        ],
    ));
    out.push(check(
        "tlem",
        "T(q^{1/2}) as f_{2,3,2} series in base q^3",
        "Hecke form of T",
        200,
        2,
        vec![
            expr(&format!("subs(Jm(1)^2 * {CONJ2}; 1/2)")),
            lovejoy_half(LovejoyShape::T),
            expr(T_HECKE),
        ],
    ));

    for ((id, anchor), (x, y, rhs)) in F232_IDS.iter().zip(F232_ANCHORS).zip(F232) {
        out.push(check(
            id,
            "f_{2,3,2}(x, y, q^3) expanded into m(., q^30, .) with l = 1",
            anchor,
            200,
            1,
            vec![expr(&f232(x, y)), expansion(nq(x), nq(y), 1), expr(rhs)],
        ));
    }
    out.push(check(
        "f232ell",
        "the expansion of f_{2,3,2}(-q^4, -q^5, q^3) does not depend on l = 0, 1, 2",
        "Appell-Lerch expansion of f_{2,3,2}",
        200,
        1,
        vec![
            expr(&f232(4, 5)),
            expansion(nq(4), nq(5), 0),
            expansion(nq(4), nq(5), 1),
            expansion(nq(4), nq(5), 2),
        ],
    ));

    out.extend([
        check(
            "fid0",
            "f(x,y,q) = -q^{a+b+c}/(xy) f(q^{2a+b}/x, q^{2c+b}/y, q)",
            "Hecke reflection",
            200,
            1,
            vec![
                expr(&f232(4, 5)),
                expr("-q^12 * f(2,3,2; -q^17, -q^16; q^3)"),
            ],
        ),
        check(
            "fid1",
            "f(x,y,q) = -y f(q^b x, q^c y, q) + j(x; q^a)",
            "Hecke shift in (b, c)",
            200,
            1,
            vec![
                expr(&f232(4, 5)),
                expr("q^5 * f(2,3,2; -q^13, -q^11; q^3) + j(-q^4; q^6)"),
            ],
        ),
        check(
            "fid2",
            "f(x,y,q) = -x f(q^a x, q^b y, q) + j(y; q^c)",
            "Hecke shift in (a, b)",
            200,
            1,
            vec![
                expr(&f232(4, 5)),
                expr("q^4 * f(2,3,2; -q^10, -q^14; q^3) + j(-q^5; q^6)"),
            ],
        ),
        check(
            "mid1",
            "m(x,q,z) = m(x,q,qz)",
            "Appell-Lerch periodicity in z",
            200,
            1,
            vec![expr("m(-q^14; 30; q^6)"), expr("m(-q^14; 30; q^36)")],
        ),
        check(
            "mid2",
            "m(x,q,z) = x^{-1} m(x^{-1},q,z^{-1})",
            "Appell-Lerch inversion",
            200,
            1,
            vec![
                expr("m(-q^14; 30; q^6)"),
                expr("-q^-14 * m(-q^-14; 30; q^-6)"),
            ],
        ),
        check(
            "mid3",
            "m(qx,q,z) = 1 - x m(x,q,z)",
            "Appell-Lerch shift in x",
            200,
            1,
            vec![
                expr("m(-q^43; 30; q^8)"),
                expr("1 + q^13 * m(-q^13; 30; q^8)"),
            ],
        ),
        check(
            "mid4",
            "m(x,q,z^{-1}) = 1 - m(q/x,q,z)",
            "Appell-Lerch reflection",
            200,
            1,
            vec![expr("m(-q^14; 30; q^-8)"), expr("1 - m(-q^16; 30; q^8)")],
        ),
        check(
            "mminus",
            "m(x,q,z1) - m(x,q,z0) as a theta quotient",
            "Appell-Lerch difference formula",
            200,
            1,
            vec![
                expr("m(-q^14; 30; q^6) - m(-q^14; 30; q^8)"),
                native(|w| m_difference(nq(14), rat(30), q(8), q(6), w)),
                expr(
                    "q^8 * (Jm(30)^3*j(q^-2;30)*j(-q^28;30)\
                     /(j(q^8;30)*j(q^6;30)*j(-q^22;30)*j(-q^20;30)))",
                ),
            ],
        ),
    ]);

    for i in 0..8 {
        out.push(check(
            W_IDS[i],
            "W sum: Appell-Lerch pair, after m-identities, as a theta quotient",
            W_ANCHORS[i],
            300,
            1,
            W[i].iter().map(|s| expr(s)).collect(),
        ));
    }
    for i in 0..8 {
        out.push(check(
            M_IDS[i],
            "M sum: Appell-Lerch pair, after m-identities, as a theta quotient",
            M_ANCHORS[i],
            300,
            1,
            M[i].iter()
                .filter(|s| !s.is_empty())
                .map(|s| expr(s))
                .collect(),
        ));
    }

    let w = |i: usize| format!("({})", W[i - 1][0]);
    let mm = |i: usize| format!("({})", M[i - 1][0]);
    let s1 = "f(2,3,2; -q^4, -q^4; q^3) + 2*f(2,3,2; -q^4, -q^5; q^3) + f(2,3,2; -q^5, -q^8; q^3)";
    let t1 = "f(2,3,2; -q^7, -q^5; q^3) - q*f(2,3,2; -q^7, -q^8; q^3) \
              + q^-1*f(2,3,2; -q^1, -q^4; q^3) + f(2,3,2; -q^5, -q^5; q^3)";
    let s1w = format!(
        "Jbar(2,6)*({} + {} + q^-2*{} + q^-2*{}) + Jbar(1,6)*(q^-3*{} + q^-3*{} + {} + {})",
        w(1),
        w(2),
        w(5),
        w(6),
        w(3),
        w(4),
        w(7),
        w(8)
    );
    let t1m = format!(
        "Jbar(1,6)*({} + q^-1*{} + {} + q^-1*{}) + Jbar(2,6)*(q^-3*{} + q^-1*{} + q^-1*{} + q^-5*{})",
        mm(1),
        mm(2),
        mm(6),
        mm(7),
        mm(3),
        mm(4),
        mm(5),
        mm(8)
    );
    let s_proof = "Jbar(2,6)*(\
        -q^6*Jm(30)^3*J(2,30)*Jbar(28,30)/(J(8,30)*J(6,30)*Jbar(22,30)*Jbar(20,30)) \
        + Jm(30)^3*J(14,30)*Jbar(16,30)/(J(8,30)*J(6,30)*Jbar(22,30)*Jbar(8,30)) \
        - q^2*Jm(30)^3*J(20,30)*Jbar(8,30)/(J(8,30)*J(12,30)*Jbar(4,30)*Jbar(16,30)) \
        - q^2*Jm(30)^3*J(4,30)*Jbar(16,30)/(J(8,30)*J(12,30)*Jbar(4,30)*Jbar(8,30))) \
        + Jbar(1,6)*(\
        -q^2*Jm(30)^3*J(2,30)*Jbar(13,30)/(J(6,30)*J(8,30)*Jbar(5,30)*Jbar(7,30)) \
        + q^3*Jm(30)^3*J(14,30)*Jbar(1,30)/(J(6,30)*J(8,30)*Jbar(7,30)^2) \
        - q^7*Jm(30)^3*J(4,30)*Jbar(1,30)/(J(8,30)*J(12,30)*Jbar(19,30)*Jbar(23,30)) \
        - q*Jm(30)^3*J(20,30)*Jbar(7,30)/(J(12,30)*J(8,30)*Jbar(1,30)*Jbar(19,30)))";
    let t_proof = "Jbar(1,6)*(\
        -Jm(30)^3*J(8,30)*Jbar(17,30)/(J(2,30)*J(6,30)*Jbar(11,30)*Jbar(19,30)) \
        + q^-1*Jm(30)^3*J(10,30)*Jbar(7,30)/(J(2,30)*J(12,30)*Jbar(5,30)^2) \
        + q^5*Jm(30)^3*J(2,30)*Jbar(1,30)/(J(6,30)*J(8,30)*Jbar(5,30)*Jbar(7,30)) \
        + Jm(30)^3*J(20,30)*Jbar(19,30)/(J(8,30)*J(12,30)*Jbar(1,30)*Jbar(11,30))) \
        + Jbar(2,6)*(\
        -q^-1*Jm(30)^3*J(8,30)*Jbar(2,30)/(J(2,30)*J(6,30)*Jbar(4,30)^2) \
        + q*Jm(30)^3*J(10,30)*Jbar(22,30)/(J(2,30)*J(12,30)*Jbar(10,30)^2) \
        + q^3*Jm(30)^3*J(20,30)*Jbar(4,30)/(J(8,30)*J(12,30)*Jbar(4,30)*Jbar(16,30)) \
        + q^3*Jm(30)^3*J(2,30)*Jbar(16,30)/(J(6,30)*J(8,30)*Jbar(10,30)*Jbar(8,30)))";

    out.extend([
        check(
            "s1w",
            "the f_{2,3,2} part of S(q^{1/2}) in terms of the W sums",
            "S_1 via W",
            300,
            1,
            vec![expr(s1), expr(&s1w)],
        ),
        check(
            "t1m",
            "the f_{2,3,2} part of T(q^{1/2}) in terms of the M sums",
            "T_1 via M",
            300,
            1,
            vec![expr(t1), expr(&t1m)],
        ),
        check(
            "sproof",
            "S(q^{1/2}) as a sum of theta quotients equals J_1 J_{2,5}",
            "closing product identity for S",
            300,
            2,
            vec![
                expr(s_proof),
                expr(S_HECKE),
                expr(&format!("subs(Jm(1)^2 * {CONJ1}; 1/2)")),
                expr(S_PRODUCT),
            ],
        ),
        check(
            "tproof",
            "T(q^{1/2}) as a sum of theta quotients equals J_1 J_{1,5}",
            "closing product identity for T",
            300,
            2,
            vec![
                expr(t_proof),
                expr(T_HECKE),
                expr(&format!("subs(Jm(1)^2 * {CONJ2}; 1/2)")),
                expr(T_PRODUCT),
            ],
        ),
        check(
            "kl1",
            "J_1^2/(q,q^4;q^5) as f_{6,9,6} series",
            "Kim-Lovejoy, first identity",
            150,
            1,
            vec![
                expr("Jm(1)^2/(poch(q^1;5;inf)*poch(q^4;5;inf))"),
                expr(
                    "f(2,3,2; -q^5, -q^4; q^3) - q*f(2,3,2; -q^7, -q^7; q^3) \
                     - q^2*f(2,3,2; -q^8, -q^10; q^3) + q^4*f(2,3,2; -q^10, -q^13; q^3)",
                ),
                expr(
                    "f(6,9,6; -q^5, -q^4; 1) - q*f(6,9,6; -q^7, -q^7; 1) \
                     - q^2*f(6,9,6; -q^8, -q^10; 1) + q^4*f(6,9,6; -q^10, -q^13; 1)",
                ),
            ],
        ),
        check(
            "kl2",
            "J_1^2/(q^2,q^3;q^5) as f_{6,9,6} series",
            "Kim-Lovejoy, second identity",
            150,
            1,
            vec![
                expr("Jm(1)^2/(poch(q^2;5;inf)*poch(q^3;5;inf))"),
                expr(
                    "f(2,3,2; -q^5, -q^5; q^3) - q*f(2,3,2; -q^8, -q^7; q^3) \
                     - q*f(2,3,2; -q^7, -q^8; q^3) + q^3*f(2,3,2; -q^10, -q^10; q^3)",
                ),
                expr(
                    "f(6,9,6; -q^5, -q^5; 1) - q*f(6,9,6; -q^8, -q^7; 1) \
                     - q*f(6,9,6; -q^7, -q^8; 1) + q^3*f(6,9,6; -q^10, -q^10; 1)",
                ),
            ],
        ),
        check(
            "equiv1",
            "the Hecke form of S(q^{1/2}) agrees with the first Kim-Lovejoy series",
            "equivalence for S",
            150,
            1,
            vec![
                expr(S_HECKE),
                expr(
                    "f(2,3,2; -q^5, -q^4; q^3) - q*f(2,3,2; -q^7, -q^7; q^3) \
                     - q^2*f(2,3,2; -q^8, -q^10; q^3) + q^4*f(2,3,2; -q^10, -q^13; q^3)",
                ),
            ],
        ),
        check(
            "equiv2",
            "the Hecke form of T(q^{1/2}) agrees with the second Kim-Lovejoy series",
            "equivalence for T",
            150,
            1,
            vec![
                expr(T_HECKE),
                expr(
                    "f(2,3,2; -q^7, -q^5; q^3) + q^-1*f(2,3,2; -q^1, -q^4; q^3) \
                     - (1 + q^-1)*Jbar(1,6) - q*f(2,3,2; -q^7, -q^8; q^3) \
                     + f(2,3,2; -q^5, -q^5; q^3)",
                ),
                expr(
                    "f(2,3,2; -q^5, -q^5; q^3) - q*f(2,3,2; -q^8, -q^7; q^3) \
                     - q*f(2,3,2; -q^7, -q^8; q^3) + q^3*f(2,3,2; -q^10, -q^10; q^3)",
                ),
            ],
        ),
        check(
            "snd1",
            "f(-q^4,-q^4) = q^4 f(-q^13,-q^10) + Jbar_{2,6}",
            "second proof, step 1",
            150,
            1,
            vec![
                expr(&f232(4, 4)),
                expr("q^4*f(2,3,2; -q^13, -q^10; q^3) + Jbar(2,6)"),
            ],
        ),
        check(
            "snd2",
            "f(-q^4,-q^5) + q^2 f(-q^8,-q^10) = Jbar_{2,6}",
            "second proof, step 2",
            150,
            1,
            vec![
                expr("f(2,3,2; -q^4, -q^5; q^3) + q^2*f(2,3,2; -q^8, -q^10; q^3)"),
                expr("f(2,3,2; -q^4, -q^5; q^3) - q^5*f(2,3,2; -q^13, -q^11; q^3)"),
                expr("Jbar(2,6)"),
            ],
        ),
        check(
            "snd3",
            "f(-q^5,-q^8) + q f(-q^7,-q^7) = Jbar_{1,6}",
            "second proof, step 3",
            150,
            1,
            vec![
                expr("f(2,3,2; -q^5, -q^8; q^3) + q*f(2,3,2; -q^7, -q^7; q^3)"),
                expr("f(2,3,2; -q^5, -q^8; q^3) - q^8*f(2,3,2; -q^14, -q^14; q^3)"),
                expr("Jbar(1,6)"),
            ],
        ),
        check(
            "snd4",
            "f(-q,-q^4) = q^4 f(-q^10,-q^10) + Jbar_{1,6}",
            "second proof, step 4",
            150,
            1,
            vec![
                expr(&f232(1, 4)),
                expr("q^4*f(2,3,2; -q^10, -q^10; q^3) + Jbar(1,6)"),
            ],
        ),
        check(
            "snd5",
            "f(-q^5,-q^7) = -q f(-q^7,-q^8) + Jbar_{1,6}",
            "second proof, step 5",
            150,
            1,
            vec![
                expr(&f232(5, 7)),
                expr("q^7*f(2,3,2; -q^14, -q^13; q^3) + j(-q^5; q^6)"),
                expr("-q*f(2,3,2; -q^7, -q^8; q^3) + Jbar(1,6)"),
            ],
        ),
    ]);
    out
}

fn catalogue() -> &'static [IdentityCheck] {
    static CATALOGUE: OnceLock<Vec<IdentityCheck>> = OnceLock::new();
    CATALOGUE.get_or_init(build)
}

/// Every check as `(id, description, anchor)`, in catalogue order.
pub fn list_checks() -> Vec<(&'static str, &'static str, &'static str)> {
    catalogue()
        .iter()
        .map(|c| (c.id, c.description, c.anchor))
        .collect()
}

pub fn get_check(id: &str) -> Result<&'static IdentityCheck> {
    catalogue()
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::UnknownId(id.to_string()))
}

impl IdentityCheck {
    fn comparisons(
        &self,
        order: Rational,
        mutation: Option<Mutation>,
    ) -> Result<Vec<(String, crate::CheckOutcome)>> {
        let mutate = |s: QSeries| match mutation {
            Some(m) => s.add_term(m.exponent, m.delta),
            None => s,
        };
        let mut out = Vec::new();
        match &self.body {
            Body::Sides(sides) => {
                let (last, rest) = sides.split_last().expect("a check has sides");
                let rhs = mutate(last.1.eval(order)?);
                for (label, side) in rest {
                    out.push((
                        label.clone(),
                        side.eval(order)?.equal_to_order(&rhs, order)?,
                    ));
                }
            }
            Body::Family(f) => {
                for (label, lhs, rhs) in f(order)? {
                    out.push((label, lhs.equal_to_order(&mutate(rhs), order)?));
                }
            }
        }
        Ok(out)
    }

    pub fn run(&self, order: Option<Rational>, mutation: Option<Mutation>) -> CheckReport {
        let order = order.unwrap_or(self.default_order);
        let start = Instant::now();
        let result = self.comparisons(order, mutation);
        let millis = start.elapsed().as_millis();
        match result {
            Ok(outcomes) => CheckReport::from_outcomes(self.id, order, outcomes, millis),
            Err(e) => CheckReport::from_error(self.id, order, &e, millis),
        }
    }
}

/// Runs one check; `None` uses the check's default order.
pub fn run_check(id: &str, order: Option<Rational>) -> Result<CheckReport> {
    Ok(get_check(id)?.run(order, None))
}

/// Runs one check with `δ·q^e` added to its right-hand side.
pub fn run_check_mutated(
    id: &str,
    order: Option<Rational>,
    mutation: Mutation,
) -> Result<CheckReport> {
    Ok(get_check(id)?.run(order, Some(mutation)))
}

/// Runs the whole catalogue concurrently; reports come back in catalogue
/// order. Ids missing from `overrides` use their default order.
pub fn run_all(overrides: &BTreeMap<String, Rational>) -> Vec<CheckReport> {
    catalogue()
        .par_iter()
        .map(|c| c.run(overrides.get(c.id).copied(), None))
        .collect()
}

/// Runs the named checks concurrently, in the given order.
pub fn run_selected(
    ids: &[&str],
    overrides: &BTreeMap<String, Rational>,
) -> Result<Vec<CheckReport>> {
    let checks = ids
        .iter()
        .map(|id| get_check(id))
        .collect::<Result<Vec<_>>>()?;
    Ok(checks
        .par_iter()
        .map(|c| c.run(overrides.get(c.id).copied(), None))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique() {
        let ids: Vec<_> = list_checks().into_iter().map(|c| c.0).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), ids.len());
        for id in ["conj1", "w1", "w8", "kl1", "kl2", "snd5", "f232exp-7"] {
            assert!(ids.contains(&id), "{id}");
        }
    }

    #[test]
    fn every_expression_parses() {
        for c in catalogue() {
            if let Body::Sides(sides) = &c.body {
                for (_, s) in sides {
                    if let Side::Expr(src) = s {
                        parse(src).unwrap_or_else(|e| panic!("{}: {e}", c.id));
                    }
                }
            }
        }
    }

    #[test]
    fn unknown_id() {
        assert!(matches!(
            run_check("nosuch", None),
            Err(Error::UnknownId(_))
        ));
    }

    #[test]
    fn small_orders() {
        assert!(run_check("rr1", Some(rat(50))).unwrap().passed());
        let r = run_check_mutated(
            "conj1",
            Some(rat(30)),
            Mutation {
                exponent: rat(7),
                delta: 1,
            },
        )
        .unwrap();
        assert_eq!(r.mismatch.unwrap().exponent, rat(7));
    }
}
