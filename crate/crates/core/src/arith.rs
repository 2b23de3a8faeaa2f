//! Normalized arithmetic functions used as the `g` and `h` weights of a family.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{format_ratio, parse_ratio, Rational};

/// A named, exactly evaluable arithmetic function on the positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ArithmeticFunctionSpec {
    /// `sigma_d(n)`, the sum of the `d`-th powers of the divisors of `n`.
    SigmaD { d: u32 },
    /// `n^s` for integer `s`; `s = 0` is the constant one, `s = 1` the identity.
    Power { s: u32 },
    /// `g(1) = g(2) = 1`, zero afterwards.
    Hermite,
    /// `n` for odd `n`, `n / 2` for even `n`.
    Parity,
    /// The generalized binomial coefficient `C(alpha n - 1, n - 1)`.
    BinomialAlpha {
        #[serde(with = "ratio_string")]
        alpha: Rational,
    },
    /// Values for `n = 1, 2, ...`, zero beyond the end of the list.
    ExplicitTable {
        #[serde(with = "ratio_vec_string")]
        values: Vec<Rational>,
    },
}

/// Which slot of the recursion a function fills.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    G,
    H,
}

impl ArithmeticFunctionSpec {
    pub fn sigma() -> Self {
        Self::SigmaD { d: 1 }
    }

    pub fn id() -> Self {
        Self::Power { s: 1 }
    }

    /// The constant function one, `h_0`.
    pub fn one() -> Self {
        Self::Power { s: 0 }
    }

    /// `n^s`; only non-negative integer exponents give exact values.
    pub fn power(s: &Rational) -> Result<Self> {
        if s.is_negative() || !s.is_integer() {
            return Err(Error::InvalidSpec(format!(
                "power exponent must be a non-negative integer, got {s}"
            )));
        }
        let s = u32::try_from(s.to_integer())
            .map_err(|_| Error::InvalidSpec(format!("power exponent {s} too large")))?;
        Ok(Self::Power { s })
    }

    pub fn binomial(alpha: Rational) -> Result<Self> {
        if alpha < Rational::one() {
            return Err(Error::InvalidSpec(format!(
                "binomial parameter must satisfy alpha >= 1, got {alpha}"
            )));
        }
        Ok(Self::BinomialAlpha { alpha })
    }

    pub fn table(values: Vec<Rational>) -> Self {
        Self::ExplicitTable { values }
    }

    /// Exact value at `n >= 1`.
    pub fn eval(&self, n: usize) -> Result<Rational> {
        if n == 0 {
            return Err(Error::ZeroArgument);
        }
        let int = |v: BigInt| Rational::from_integer(v);
        Ok(match self {
            Self::SigmaD { d } => int(sigma(n as u64, *d)),
            Self::Power { s } => int(num_traits::pow(BigInt::from(n), *s as usize)),
            Self::Hermite => {
                if n <= 2 {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }
            Self::Parity => {
                if n % 2 == 1 {
                    int(BigInt::from(n))
                } else {
                    int(BigInt::from(n / 2))
                }
            }
            Self::BinomialAlpha { alpha } => generalized_binomial(alpha, n),
            Self::ExplicitTable { values } => {
                values.get(n - 1).cloned().unwrap_or_else(Rational::zero)
            }
        })
    }

    /// Values `f(1), ..., f(n_max)`.
    pub fn values(&self, n_max: usize) -> Result<Vec<Rational>> {
        (1..=n_max).map(|n| self.eval(n)).collect()
    }

    /// Checks normalization and the sign condition of `role` for `1 <= n <= n_max`.
    pub fn validate(&self, role: Role, n_max: usize) -> Result<()> {
        if let Self::ExplicitTable { values } = self {
            if values.is_empty() {
                return Err(Error::InvalidSpec("empty explicit table".into()));
            }
        }
        let name = match role {
            Role::G => "g",
            Role::H => "h",
        };
        let first = self.eval(1)?;
        if !first.is_one() {
            return Err(Error::InvalidSpec(format!(
                "{name} = {self} is not normalized: {name}(1) = {first}"
            )));
        }
        for n in 2..=n_max {
            let v = self.eval(n)?;
            let bad = match role {
                Role::G => v.is_negative(),
                Role::H => !v.is_positive(),
            };
            if bad {
                let need = match role {
                    Role::G => "non-negative",
                    Role::H => "positive",
                };
                return Err(Error::InvalidSpec(format!(
                    "{name} = {self} must be {need}, but {name}({n}) = {v}"
                )));
            }
        }
        Ok(())
    }
}

/// Divisor power sum by trial division.
pub fn sigma(n: u64, d: u32) -> BigInt {
    let mut total = BigInt::zero();
    let mut k = 1u64;
    while k * k <= n {
        if n % k == 0 {
            total += num_traits::pow(BigInt::from(k), d as usize);
            let other = n / k;
            if other != k {
                total += num_traits::pow(BigInt::from(other), d as usize);
            }
        }
        k += 1;
    }
    total
}

/// `C(alpha n - 1, n - 1)` as a falling product over `(n - 1)!`.
fn generalized_binomial(alpha: &Rational, n: usize) -> Rational {
    let top = alpha * Rational::from_integer(BigInt::from(n)) - Rational::one();
    let mut acc = Rational::one();
    for j in 0..n.saturating_sub(1) {
        acc *= &top - Rational::from_integer(BigInt::from(j));
        acc /= Rational::from_integer(BigInt::from(j + 1));
    }
    acc
}

impl fmt::Display for ArithmeticFunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::SigmaD { d: 1 } => write!(f, "sigma"),
            Self::SigmaD { d } => write!(f, "sigma:{d}"),
            Self::Power { s: 0 } => write!(f, "one"),
            Self::Power { s: 1 } => write!(f, "id"),
            Self::Power { s } => write!(f, "power:{s}"),
            Self::Hermite => write!(f, "hermite"),
            Self::Parity => write!(f, "parity"),
            Self::BinomialAlpha { alpha } => write!(f, "binomial:{alpha}"),
            Self::ExplicitTable { values } => {
                let parts: Vec<String> = values.iter().map(|v| v.to_string()).collect();
                write!(f, "table:{}", parts.join(","))
            }
        }
    }
}

impl FromStr for ArithmeticFunctionSpec {
    type Err = Error;

    /// Accepts `sigma`, `sigma:<d>`, `id`, `one`, `power:<s>`, `hermite`,
    /// `parity`, `binomial:<alpha>` and `table:<v1>,<v2>,...`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n.trim(), Some(a.trim())),
            None => (s, None),
        };
        let need = |what: &str| Error::Parse(format!("{name} needs a parameter ({what})"));
        match (name, arg) {
            ("sigma", None) => Ok(Self::sigma()),
            ("sigma", Some(d)) => {
                let d: u32 = d
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad divisor power {d:?}")))?;
                Ok(Self::SigmaD { d })
            }
            ("id", None) => Ok(Self::id()),
            ("one", None) => Ok(Self::one()),
            ("power", Some(p)) => Self::power(&parse_ratio(p)?),
            ("power", None) => Err(need("exponent")),
            ("hermite", None) => Ok(Self::Hermite),
            ("parity", None) => Ok(Self::Parity),
            ("binomial", Some(a)) => Self::binomial(parse_ratio(a)?),
            ("binomial", None) => Err(need("alpha")),
            ("table", Some(vals)) => {
                let values = vals
                    .split(',')
                    .map(parse_ratio)
                    .collect::<Result<Vec<_>>>()?;
                Ok(Self::table(values))
            }
            ("table", None) => Err(need("values")),
            _ => Err(Error::Parse(format!("unknown arithmetic function {s:?}"))),
        }
    }
}

pub(crate) mod ratio_string {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_ratio(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_ratio(&text).map_err(serde::de::Error::custom)
    }
}

pub(crate) mod ratio_vec_string {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        qs: &[Rational],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(qs.iter().map(format_ratio))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rational>, D::Error> {
        let texts = Vec::<String>::deserialize(d)?;
        texts
            .iter()
            .map(|t| parse_ratio(t).map_err(serde::de::Error::custom))
            .collect()
    }
}
