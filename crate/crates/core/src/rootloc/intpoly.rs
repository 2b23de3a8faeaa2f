//! Primitive integer polynomials: exact sign evaluation and pseudo-remainders.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact::Rational;
use crate::poly::Poly;

/// A positive multiple of a rational polynomial with coprime integer
/// coefficients. Signs of values agree with the source polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    pub(crate) c: Vec<BigInt>,
}

/// Gcd of all entries. Starts from the smallest one and only runs a gcd when
/// a remainder is nonzero, which is rare once the content has been found.
fn content(c: &[BigInt]) -> BigInt {
    let mut nonzero: Vec<&BigInt> = c.iter().filter(|x| !x.is_zero()).collect();
    nonzero.sort_by_key(|x| x.bits());
    let Some(first) = nonzero.first() else {
        return BigInt::zero();
    };
    let mut g = first.abs();
    for x in &nonzero[1..] {
        if g.is_one() {
            break;
        }
        let r = *x % &g;
        if !r.is_zero() {
            g = g.gcd(&r);
        }
    }
    g
}

pub(crate) fn sign_of(x: &BigInt) -> i8 {
    match x.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

impl IntPoly {
    pub fn from_poly(p: &Poly) -> Self {
        IntPoly {
            c: p.primitive_integer(),
        }
    }

    pub(crate) fn from_coeffs(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        let mut p = IntPoly { c };
        p.make_primitive();
        p
    }

    pub fn to_poly(&self) -> Poly {
        Poly::new(self.c.iter().cloned().map(Rational::from_integer).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; the zero polynomial reports 0 and must be checked separately.
    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn leading_sign(&self) -> i8 {
        self.c.last().map_or(0, sign_of)
    }

    fn make_primitive(&mut self) {
        let g = content(&self.c);
        if g > BigInt::one() {
            for x in &mut self.c {
                *x /= &g;
            }
        }
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::from_coeffs(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, a)| a * k)
                .collect(),
        )
    }

    /// `sum c_k a^k b^(d-k)` for `x = a / b`, `b > 0`: same sign as `p(x)`.
    pub fn homogeneous_value(&self, x: &Rational) -> BigInt {
        let a = x.numer();
        let b = x.denom();
        let mut iter = self.c.iter().rev();
        let Some(first) = iter.next() else {
            return BigInt::zero();
        };
        let mut acc = first.clone();
        let mut bpow = BigInt::from(1);
        for ck in iter {
            bpow *= b;
            acc = acc * a + ck * &bpow;
        }
        acc
    }

    pub fn sign_at(&self, x: &Rational) -> i8 {
        sign_of(&self.homogeneous_value(x))
    }

    pub fn sign_at_infinity(&self, negative: bool) -> i8 {
        let s = self.leading_sign();
        if negative && self.degree() % 2 == 1 {
            -s
        } else {
            s
        }
    }

    /// Positive multiple of the remainder of `self` divided by `other`.
    pub fn pseudo_remainder(&self, other: &IntPoly) -> IntPoly {
        let n = other.degree();
        let lc = other.c.last().expect("nonzero divisor");
        let lc_abs = lc.abs();
        let lc_sign = lc.signum();
        let mut r = self.c.clone();
        while r.len() > n && !r.is_empty() {
            let top = r.last().unwrap().clone();
            if top.is_zero() {
                r.pop();
                continue;
            }
            let shift = r.len() - 1 - n;
            let t = &top * &lc_sign;
            for x in r.iter_mut() {
                *x *= &lc_abs;
            }
            for (j, b) in other.c.iter().enumerate() {
                r[shift + j] -= &t * b;
            }
            debug_assert!(r.last().unwrap().is_zero());
            r.pop();
        }
        IntPoly::from_coeffs(r)
    }

    /// Exact comparison of `p(x)` with zero.
    pub fn cmp_zero_at(&self, x: &Rational) -> Ordering {
        self.sign_at(x).cmp(&0)
    }

    /// `1 + max |c_k / c_d|` rounded up: every root lies strictly inside.
    pub fn cauchy_bound(&self) -> Rational {
        let lead = self.c.last().expect("nonzero polynomial").abs();
        let mut best = BigInt::zero();
        for c in &self.c[..self.c.len() - 1] {
            let q = c.abs().div_ceil(&lead);
            if q > best {
                best = q;
            }
        }
        Rational::from_integer(best + 1)
    }
}
