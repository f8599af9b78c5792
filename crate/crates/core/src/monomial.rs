use std::fmt;
use std::ops::{Div, Mul, Neg};

use num_traits::{One, Signed, Zero};

use crate::Rational;

/// A signed rational power of `q`, `±q^e`.
///
/// Every argument `x`, `y`, `z`, `a` fed to the theta, Hecke and Appell
/// machinery has this shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    negative: bool,
    exponent: Rational,
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        negative: false,
        exponent: Rational::new_raw(0, 1),
    };

    pub fn new(negative: bool, exponent: Rational) -> Self {
        Monomial { negative, exponent }
    }

    /// `q^e`.
    pub fn q_pow(exponent: impl Into<Rational>) -> Self {
        Monomial::new(false, exponent.into())
    }

    /// `-q^e`.
    pub fn neg_q_pow(exponent: impl Into<Rational>) -> Self {
        Monomial::new(true, exponent.into())
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    /// `+1` or `-1`.
    pub fn sign(&self) -> i64 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    pub fn exponent(&self) -> Rational {
        self.exponent
    }

    pub fn inv(self) -> Self {
        Monomial::new(self.negative, -self.exponent)
    }

    pub fn pow(self, n: i64) -> Self {
        Monomial::new(self.negative && n.rem_euclid(2) == 1, self.exponent * n)
    }

    /// Substitute `q -> q^k`.
    pub fn substitute(self, k: Rational) -> Self {
        Monomial::new(self.negative, self.exponent * k)
    }

    /// True when this is `q^{kp}` for an integer `k`, i.e. a zero of `j(·; q^p)`.
    pub fn is_integral_power_of(&self, base: Rational) -> bool {
        !self.negative && (self.exponent / base).is_integer()
    }
}

impl Mul for Monomial {
    type Output = Monomial;
    fn mul(self, rhs: Monomial) -> Monomial {
        Monomial::new(self.negative != rhs.negative, self.exponent + rhs.exponent)
    }
}

impl Div for Monomial {
    type Output = Monomial;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Monomial) -> Monomial {
        self * rhs.inv()
    }
}

impl Neg for Monomial {
    type Output = Monomial;
    fn neg(self) -> Monomial {
        Monomial::new(!self.negative, self.exponent)
    }
}

/// Formats in the expression-language syntax, so the output re-parses.
impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            f.write_str("-")?;
        }
        let e = self.exponent;
        if e.is_zero() {
            f.write_str("1")
        } else if e.is_one() {
            f.write_str("q")
        } else if e.is_integer() {
            write!(f, "q^{}", e.numer())
        } else if e.is_negative() {
            write!(f, "q^(-{})", -e)
        } else {
            write!(f, "q^({e})")
        }
    }
}
