//! The recursion engine for `P_n^{g,h}` and its `h = 1` specialization `Q_n^g`.
//!
//! `P_0 = 1` and `h(n) P_n(z) = z * sum_{k=1}^{n} g(k) P_{n-k}(z)` for `n >= 1`.
//! Members are computed over the integers with one shared denominator per
//! member, then exposed as exact rational polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{ArithmeticFunctionSpec, Role};
use crate::error::{Error, Result};
use crate::exact::{common_denominator, format_ratio, parse_ratio, Rational};
use crate::poly::Poly;

/// Integer coefficient vector over a positive common denominator.
#[derive(Clone, Debug)]
struct Scaled {
    num: Vec<BigInt>,
    den: BigInt,
}

impl Scaled {
    fn one() -> Self {
        Scaled {
            num: vec![BigInt::one()],
            den: BigInt::one(),
        }
    }

    fn from_poly(p: &Poly) -> Self {
        let den = common_denominator(p.coeffs());
        let num = p
            .coeffs()
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .collect();
        Scaled { num, den }
    }

    fn to_poly(&self) -> Poly {
        Poly::new(
            self.num
                .iter()
                .map(|c| Rational::new(c.clone(), self.den.clone()))
                .collect(),
        )
    }

    fn reduce(&mut self) {
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                return;
            }
            g = g.gcd(c);
        }
        if !g.is_one() && !g.is_zero() {
            for c in &mut self.num {
                *c /= &g;
            }
            self.den /= &g;
        }
    }
}

/// A prefix `P_0, ..., P_{n_max}` of one family.
#[derive(Clone, Debug)]
pub struct PolyFamily {
    g: ArithmeticFunctionSpec,
    h: ArithmeticFunctionSpec,
    g_values: Vec<Rational>,
    h_values: Vec<Rational>,
    scaled: Vec<Scaled>,
    members: Vec<Poly>,
}

impl PolyFamily {
    fn empty(g: ArithmeticFunctionSpec, h: ArithmeticFunctionSpec) -> Self {
        PolyFamily {
            g,
            h,
            g_values: Vec::new(),
            h_values: Vec::new(),
            scaled: vec![Scaled::one()],
            members: vec![Poly::one()],
        }
    }

    pub fn g(&self) -> &ArithmeticFunctionSpec {
        &self.g
    }

    pub fn h(&self) -> &ArithmeticFunctionSpec {
        &self.h
    }

    /// `true` when `h` is the constant one, i.e. this is a `Q` family.
    pub fn is_q(&self) -> bool {
        self.h == ArithmeticFunctionSpec::one()
    }

    pub fn n_max(&self) -> usize {
        self.members.len() - 1
    }

    pub fn members(&self) -> &[Poly] {
        &self.members
    }

    pub fn member(&self, n: usize) -> Result<&Poly> {
        self.members.get(n).ok_or(Error::OutOfRange {
            requested: n,
            available: self.n_max(),
        })
    }

    /// `P_n / z` for `n >= 1`.
    pub fn stripped(&self, n: usize) -> Result<Poly> {
        let p = self.member(n)?;
        Ok(p.divide_by_z().unwrap_or_else(|| p.clone()))
    }

    /// `g(k)` for `k >= 1`, cached.
    pub fn g_at(&self, k: usize) -> Result<Rational> {
        match self.g_values.get(k.wrapping_sub(1)) {
            Some(v) => Ok(v.clone()),
            None => self.g.eval(k),
        }
    }

    pub fn h_at(&self, k: usize) -> Result<Rational> {
        match self.h_values.get(k.wrapping_sub(1)) {
            Some(v) => Ok(v.clone()),
            None => self.h.eval(k),
        }
    }

    /// Extends the prefix to `n_max`, reusing every member already present.
    pub fn extend_to(&mut self, n_max: usize) -> Result<()> {
        if n_max <= self.n_max() {
            return Ok(());
        }
        self.g.validate(Role::G, n_max)?;
        self.h.validate(Role::H, n_max)?;
        self.g_values = self.g.values(n_max)?;
        self.h_values = self.h.values(n_max)?;
        for n in self.n_max() + 1..=n_max {
            let next = self.next_member(n);
            self.members.push(next.to_poly());
            self.scaled.push(next);
        }
        Ok(())
    }

    fn next_member(&self, n: usize) -> Scaled {
        // common denominator of every g(k) P_{n-k}
        let mut den = BigInt::one();
        for k in 1..=n {
            let gk = &self.g_values[k - 1];
            if gk.is_zero() {
                continue;
            }
            den = den.lcm(&(gk.denom() * &self.scaled[n - k].den));
        }
        let mut sum = vec![BigInt::zero(); n];
        for k in 1..=n {
            let gk = &self.g_values[k - 1];
            if gk.is_zero() {
                continue;
            }
            let prev = &self.scaled[n - k];
            let factor = gk.numer() * (&den / (gk.denom() * &prev.den));
            for (s, c) in sum.iter_mut().zip(&prev.num) {
                if !c.is_zero() {
                    *s += &factor * c;
                }
            }
        }
        let hn = &self.h_values[n - 1];
        let mut num = Vec::with_capacity(n + 1);
        num.push(BigInt::zero());
        num.extend(sum.into_iter().map(|s| s * hn.denom()));
        while num.last().is_some_and(Zero::is_zero) {
            num.pop();
        }
        let mut next = Scaled {
            num,
            den: den * hn.numer(),
        };
        next.reduce();
        next
    }

    /// `h(n) P_n - z sum_k g(k) P_{n-k}`, identically zero for a correct member.
    pub fn recursion_residual(&self, n: usize) -> Result<Poly> {
        let lhs = self.member(n)?.scale(&self.h_at(n)?);
        let mut sum = Poly::zero();
        for k in 1..=n {
            sum = &sum + &self.member(n - k)?.scale(&self.g_at(k)?);
        }
        Ok(&lhs - &sum.shift(1))
    }

    /// Serializable exact snapshot.
    pub fn to_cache(&self) -> FamilyCache {
        FamilyCache {
            g: self.g.clone(),
            h: self.h.clone(),
            n_max: self.n_max(),
            coefficients: self
                .members
                .iter()
                .map(|p| p.coeffs().iter().map(format_ratio).collect())
                .collect(),
        }
    }

    /// Rebuilds a family from a snapshot, checking it against the recursion.
    pub fn from_cache(cache: &FamilyCache) -> Result<Self> {
        if cache.coefficients.len() != cache.n_max + 1 {
            return Err(Error::Cache(format!(
                "expected {} members, found {}",
                cache.n_max + 1,
                cache.coefficients.len()
            )));
        }
        cache.g.validate(Role::G, cache.n_max)?;
        cache.h.validate(Role::H, cache.n_max)?;
        let members = cache
            .coefficients
            .iter()
            .map(|cs| {
                cs.iter()
                    .map(|c| parse_ratio(c))
                    .collect::<Result<Vec<_>>>()
                    .map(Poly::new)
            })
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::Cache(e.to_string()))?;
        let family = PolyFamily {
            g_values: cache.g.values(cache.n_max)?,
            h_values: cache.h.values(cache.n_max)?,
            scaled: members.iter().map(Scaled::from_poly).collect(),
            members,
            g: cache.g.clone(),
            h: cache.h.clone(),
        };
        if family.members[0] != Poly::one() {
            return Err(Error::Cache("member 0 is not 1".into()));
        }
        for n in 1..=family.n_max() {
            if !family.recursion_residual(n)?.is_zero() {
                return Err(Error::Cache(format!("member {n} fails the recursion")));
            }
        }
        Ok(family)
    }
}

/// On-disk form: `{g, h, n_max, coefficients}` with `"num/den"` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyCache {
    pub g: ArithmeticFunctionSpec,
    pub h: ArithmeticFunctionSpec,
    pub n_max: usize,
    pub coefficients: Vec<Vec<String>>,
}

/// Reads `P:<g>` (h = id), `Q:<g>` (h = 1), `P:<g>/<h>` or a bare `<g>`
/// (same as `P:<g>`) into the pair `(g, h)`.
pub fn parse_family(s: &str) -> Result<(ArithmeticFunctionSpec, ArithmeticFunctionSpec)> {
    let s = s.trim();
    let (is_q, rest) = match s.split_once(':') {
        Some((k, r)) if k.eq_ignore_ascii_case("q") => (true, r),
        Some((k, r)) if k.eq_ignore_ascii_case("p") => (false, r),
        _ => (false, s),
    };
    let (g, h) = match rest.split_once('/') {
        Some((g, h)) => (g.parse()?, Some(h.parse()?)),
        None => (rest.parse()?, None),
    };
    match (is_q, h) {
        (true, Some(_)) => Err(Error::Parse("Q families fix h = 1".into())),
        (true, None) => Ok((g, ArithmeticFunctionSpec::one())),
        (false, h) => Ok((g, h.unwrap_or_else(ArithmeticFunctionSpec::id))),
    }
}

/// `P_0^{g,h}, ..., P_{n_max}^{g,h}`.
pub fn compute_family(
    g: &ArithmeticFunctionSpec,
    h: &ArithmeticFunctionSpec,
    n_max: usize,
) -> Result<PolyFamily> {
    g.validate(Role::G, n_max.max(1))?;
    h.validate(Role::H, n_max.max(1))?;
    let mut family = PolyFamily::empty(g.clone(), h.clone());
    family.extend_to(n_max)?;
    Ok(family)
}

/// `Q_n^g = P_n^{g,1}`.
pub fn compute_q(g: &ArithmeticFunctionSpec, n_max: usize) -> Result<PolyFamily> {
    compute_family(g, &ArithmeticFunctionSpec::one(), n_max)
}

/// `P_n^g = P_n^{g,id}`.
pub fn compute_p(g: &ArithmeticFunctionSpec, n_max: usize) -> Result<PolyFamily> {
    compute_family(g, &ArithmeticFunctionSpec::id(), n_max)
}

/// Values `P_0(z), ..., P_{n_max}(z)` at one point, by the same recursion
/// applied to numbers instead of polynomials.
pub fn eval_family_at(
    g: &ArithmeticFunctionSpec,
    h: &ArithmeticFunctionSpec,
    z: &Rational,
    n_max: usize,
) -> Result<Vec<Rational>> {
    g.validate(Role::G, n_max.max(1))?;
    h.validate(Role::H, n_max.max(1))?;
    let gv = g.values(n_max)?;
    let hv = h.values(n_max)?;
    let mut values = Vec::with_capacity(n_max + 1);
    values.push(Rational::one());
    for n in 1..=n_max {
        let mut sum = Rational::zero();
        for k in 1..=n {
            if !gv[k - 1].is_zero() {
                sum += &gv[k - 1] * &values[n - k];
            }
        }
        values.push(sum * z / &hv[n - 1]);
    }
    Ok(values)
}

/// Integer variant of [`eval_family_at`] for integer `g`, `h = id` and integer `z`:
/// `n P_n(z) = z sum_k g(k) P_{n-k}(z)` with every value an integer.
/// Returns `None` if a division is not exact (the values are then not integral).
pub fn eval_integer_family_at(g_values: &[BigInt], z: &BigInt, n_max: usize) -> Option<Vec<BigInt>> {
    let mut values = Vec::with_capacity(n_max + 1);
    values.push(BigInt::one());
    for n in 1..=n_max {
        let mut sum = BigInt::zero();
        for k in 1..=n {
            sum += &g_values[k - 1] * &values[n - k];
        }
        let (q, r) = (sum * z).div_rem(&BigInt::from(n));
        if !r.is_zero() {
            return None;
        }
        values.push(q);
    }
    Some(values)
}

/// Printed initial values `Q_1..Q_4` of the parity example.
fn parity_initial() -> [Poly; 5] {
    [
        Poly::one(),
        Poly::from_ints(&[0, 1]),
        Poly::from_ints(&[0, 1, 1]),
        Poly::from_ints(&[0, 3, 2, 1]),
        Poly::from_ints(&[0, 2, 7, 3, 1]),
    ]
}

/// `Q_n^g` for the parity function, built from `Q_1..Q_4` and
/// `Q_n = z Q_{n-1} + (z + 2) Q_{n-2} + z Q_{n-3} - Q_{n-4}` for `n >= 5`.
pub fn q_parity_five_term(n_max: usize) -> Vec<Poly> {
    let mut q: Vec<Poly> = parity_initial().into_iter().take(n_max + 1).collect();
    let z = Poly::z();
    let z_plus_2 = Poly::from_ints(&[2, 1]);
    for n in 5..=n_max {
        let next = &(&(&(&z * &q[n - 1]) + &(&z_plus_2 * &q[n - 2])) + &(&z * &q[n - 3]))
            - &q[n - 4];
        q.push(next);
    }
    q
}

/// Compares the five-term construction with the defining recursion.
pub fn verify_five_term(n_max: usize) -> Result<()> {
    let five = q_parity_five_term(n_max);
    let direct = compute_q(&ArithmeticFunctionSpec::Parity, n_max)?;
    match (0..=n_max).find(|&n| five[n] != direct.members()[n]) {
        Some(n) => Err(Error::RecursionMismatch(n)),
        None => Ok(()),
    }
}

/// `(z / n!) prod_{k=1}^{n-1} (z + (alpha - 1) n + k)`, the closed form of the
/// `h = id` family for the generalized binomial `g`.
pub fn binomial_closed_form(alpha: &Rational, n: usize) -> Poly {
    if n == 0 {
        return Poly::one();
    }
    let nn = Rational::from_integer(BigInt::from(n));
    let shift = (alpha - Rational::one()) * &nn;
    let mut acc = Poly::z();
    let mut fact = BigInt::one();
    for k in 1..n {
        let root = &shift + Rational::from_integer(BigInt::from(k));
        acc = &acc * &Poly::new(vec![root, Rational::one()]);
    }
    for k in 2..=n {
        fact *= k;
    }
    acc.scale(&Rational::new(BigInt::one(), fact))
}

/// Product of `h(1), ..., h(n)`; this times `P_n` is monic.
pub fn h_product(h: &ArithmeticFunctionSpec, n: usize) -> Result<Rational> {
    (1..=n).try_fold(Rational::one(), |acc, k| Ok(acc * h.eval(k)?))
}

/// Running maximum `H(n) = max{0, h(1), ..., h(n)}`, `H(0) = 0`.
pub fn running_max(h: &ArithmeticFunctionSpec, n: usize) -> Result<Rational> {
    let mut best = Rational::zero();
    for k in 1..=n {
        let v = h.eval(k)?;
        if v > best {
            best = v;
        }
    }
    Ok(best)
}

/// Exact check that every coefficient is non-negative (true for `g >= 0`).
pub fn all_coefficients_nonnegative(family: &PolyFamily) -> bool {
    family
        .members()
        .iter()
        .all(|p| p.coeffs().iter().all(|c| !c.is_negative()))
}
