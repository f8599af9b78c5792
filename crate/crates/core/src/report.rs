//! Check reports shared by the Bailey verifier and the identity registry.

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::series::CheckOutcome;
use crate::Rational;

pub(crate) fn ser_rational<S: Serializer>(v: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub(crate) fn ser_bigint<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

/// First coefficient at which two sides of a check disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    /// Which comparison failed, e.g. `lhs`, `side 2`, `n=4`.
    pub side: String,
    #[serde(serialize_with = "ser_rational")]
    pub exponent: Rational,
    #[serde(serialize_with = "ser_bigint")]
    pub lhs: BigInt,
    #[serde(serialize_with = "ser_bigint")]
    pub rhs: BigInt,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub id: String,
    #[serde(serialize_with = "ser_rational")]
    pub order: Rational,
    /// Exponent bound of the comparison actually carried out.
    #[serde(serialize_with = "ser_rational")]
    pub window: Rational,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<Mismatch>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub millis: u128,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Folds a sequence of labelled comparisons into one report: the first
    /// failure wins, otherwise the check passes on `order`.
    pub fn from_outcomes<I>(id: &str, order: Rational, outcomes: I, millis: u128) -> CheckReport
    where
        I: IntoIterator<Item = (String, CheckOutcome)>,
    {
        for (side, outcome) in outcomes {
            if let CheckOutcome::Fail { exponent, lhs, rhs } = outcome {
                return CheckReport {
                    id: id.to_string(),
                    order,
                    window: exponent,
                    status: Status::Fail,
                    mismatch: Some(Mismatch {
                        side,
                        exponent,
                        lhs,
                        rhs,
                    }),
                    error: None,
                    millis,
                };
            }
        }
        CheckReport {
            id: id.to_string(),
            order,
            window: order,
            status: Status::Pass,
            mismatch: None,
            error: None,
            millis,
        }
    }

    pub fn from_error(id: &str, order: Rational, err: &crate::Error, millis: u128) -> CheckReport {
        CheckReport {
            id: id.to_string(),
            order,
            window: Rational::from_integer(0),
            status: Status::Error,
            mismatch: None,
            error: Some(err.to_string()),
            millis,
        }
    }
}

impl std::fmt::Display for CheckReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.status {
            Status::Pass => write!(
                f,
                "PASS  {:<12} order={} window={} ({} ms)",
                self.id, self.order, self.window, self.millis
            ),
            Status::Fail => {
                let m = self
                    .mismatch
                    .as_ref()
                    .expect("failed report carries a mismatch");
                write!(
                    f,
                    "FAIL  {:<12} order={} first mismatch at q^{} ({}): {} vs {} ({} ms)",
                    self.id, self.order, m.exponent, m.side, m.lhs, m.rhs, self.millis
                )
            }
            Status::Error => write!(
                f,
                "ERROR {:<12} order={} {} ({} ms)",
                self.id,
                self.order,
                self.error.as_deref().unwrap_or(""),
                self.millis
            ),
        }
    }
}
