//! Exact instance checks of the transfer identity between `P^{g,h}` and
//! `Q^g`, of the two sign theorems built on it, and of the zero bounds and
//! the Lehmer-type sum that follow from it.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::ArithmeticFunctionSpec;
use crate::classical::{chebyshev_u, hermite_h, laguerre_l1, tau_values};
use crate::error::{Error, Result};
use crate::exact::{format_ratio, to_f64, Rational};
use crate::families::{compute_p, compute_q, eval_family_at, running_max};
use crate::poly::Poly;
use crate::rootloc::{analyze, compare_roots, default_width, extremal_zeros, strip_trivial, IntPoly};

fn r(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// One evaluation of the transfer identity in its three forms.
#[derive(Clone, Debug, PartialEq)]
pub struct TransferInstance {
    pub g: ArithmeticFunctionSpec,
    pub h: ArithmeticFunctionSpec,
    pub n: usize,
    pub x: Rational,
    pub y: Rational,
    /// `(h(n)/y) P_n(y) - Q_n(x)/x - sum (1/x - h(k)/y) P_k(y) Q_{n-k}(x)`
    pub residual: Rational,
    /// Same left side minus `sum g(k) (P_{n-k}(y) - Q_{n-k}(x))`.
    pub residual_alt: Rational,
    /// `(x h(n)/y) P_n(y) - Q_n(x) - sum (1 - x h(k)/y) P_k(y) Q_{n-k}(x)`
    pub residual_scaled: Rational,
}

impl TransferInstance {
    pub fn holds(&self) -> bool {
        self.residual.is_zero() && self.residual_alt.is_zero() && self.residual_scaled.is_zero()
    }

    pub fn record(&self, seed: u64) -> LemmaRecord {
        LemmaRecord {
            g: self.g.to_string(),
            h: self.h.to_string(),
            n: self.n,
            x: format_ratio(&self.x),
            y: format_ratio(&self.y),
            residual: format_ratio(&self.residual),
            ok: self.holds(),
            seed,
        }
    }
}

/// One line of the JSON-lines verification report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LemmaRecord {
    pub g: String,
    pub h: String,
    pub n: usize,
    pub x: String,
    pub y: String,
    pub residual: String,
    pub ok: bool,
    pub seed: u64,
}

pub fn lemma_residual(
    g: &ArithmeticFunctionSpec,
    h: &ArithmeticFunctionSpec,
    n: usize,
    x: &Rational,
    y: &Rational,
) -> Result<TransferInstance> {
    if n == 0 {
        return Err(Error::ZeroArgument);
    }
    if x.is_zero() {
        return Err(Error::ZeroPoint("x"));
    }
    if y.is_zero() {
        return Err(Error::ZeroPoint("y"));
    }
    let p = eval_family_at(g, h, y, n)?;
    let q = eval_family_at(g, &ArithmeticFunctionSpec::one(), x, n)?;
    let gv = g.values(n)?;
    let hv = h.values(n)?;
    let inv_x = Rational::one() / x;
    let inv_y = Rational::one() / y;

    let lhs = &hv[n - 1] * &inv_y * &p[n] - &q[n] * &inv_x;
    let mut sum = Rational::zero();
    let mut sum_alt = Rational::zero();
    let mut sum_scaled = Rational::zero();
    for k in 1..n {
        let pq = &p[k] * &q[n - k];
        sum += (&inv_x - &hv[k - 1] * &inv_y) * &pq;
        sum_alt += &gv[k - 1] * (&p[n - k] - &q[n - k]);
        sum_scaled += (Rational::one() - x * &hv[k - 1] * &inv_y) * &pq;
    }
    let lhs_scaled = x * &hv[n - 1] * &inv_y * &p[n] - &q[n];
    Ok(TransferInstance {
        g: g.clone(),
        h: h.clone(),
        n,
        x: x.clone(),
        y: y.clone(),
        residual: &lhs - sum,
        residual_alt: lhs - sum_alt,
        residual_scaled: lhs_scaled - sum_scaled,
    })
}

fn random_rational(rng: &mut ChaCha8Rng, max_num: i64, max_den: i64) -> Rational {
    loop {
        let num = rng.gen_range(-max_num..=max_num);
        if num != 0 {
            return Rational::new(num.into(), rng.gen_range(1..=max_den).into());
        }
    }
}

/// The weight catalog sampled by [`lemma_suite`].
pub fn lemma_catalog(rng: &mut ChaCha8Rng) -> (Vec<ArithmeticFunctionSpec>, Vec<ArithmeticFunctionSpec>) {
    let mut table = vec![Rational::one()];
    table.extend((1..30).map(|_| r(rng.gen_range(0..=5))));
    let gs = vec![
        ArithmeticFunctionSpec::sigma(),
        ArithmeticFunctionSpec::SigmaD { d: 2 },
        ArithmeticFunctionSpec::id(),
        ArithmeticFunctionSpec::Parity,
        ArithmeticFunctionSpec::Hermite,
        ArithmeticFunctionSpec::table(table),
    ];
    let hs = vec![
        ArithmeticFunctionSpec::id(),
        ArithmeticFunctionSpec::one(),
        ArithmeticFunctionSpec::sigma(),
    ];
    (gs, hs)
}

/// `count` seeded random instances with `1 <= n <= n_max` over the catalog.
pub fn lemma_suite(count: usize, n_max: usize, seed: u64) -> Result<Vec<TransferInstance>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (gs, hs) = lemma_catalog(&mut rng);
    (0..count)
        .map(|i| {
            let g = &gs[i % gs.len()];
            let h = &hs[(i / gs.len()) % hs.len()];
            let n = rng.gen_range(1..=n_max.max(1));
            let x = random_rational(&mut rng, 9, 9);
            let y = random_rational(&mut rng, 9, 9);
            lemma_residual(g, h, n, &x, &y)
        })
        .collect()
}

/// `kappa_n`: the largest `|alpha_m|` over `m <= n`, taken at the outer
/// interval endpoints of the smallest real zeros of `Q_m / z`. Zero when no
/// `Q_m / z` has a real zero; then every negative `x` satisfies the hypothesis.
pub fn derive_kappa(g: &ArithmeticFunctionSpec, n: usize, width: &Rational) -> Result<Rational> {
    let q = compute_q(g, n)?;
    let mut kappa = Rational::zero();
    for m in 1..=n {
        if let Some(alpha) = extremal_zeros(&q, m, width)?.alpha {
            let outer = -alpha.lo;
            if outer > kappa {
                kappa = outer;
            }
        }
    }
    Ok(kappa)
}

/// `mu_n`: the largest real zero of `Q_m / z` over `m <= n`, taken at the
/// inner (right) endpoint. `-1` when there are no real zeros at all.
pub fn derive_mu(g: &ArithmeticFunctionSpec, n: usize, width: &Rational) -> Result<Rational> {
    let q = compute_q(g, n)?;
    let mut mu: Option<Rational> = None;
    for m in 1..=n {
        let stripped = q.stripped(m)?;
        let analysis = analyze(&stripped, width)?;
        let Some(mut beta) = analysis.real.last().cloned() else {
            continue;
        };
        let ip = IntPoly::from_poly(&stripped);
        while !beta.hi.is_negative() {
            if beta.is_exact() {
                return Err(Error::HypothesisUnsatisfiable(format!(
                    "Q_{m} / z vanishes at {}",
                    format_ratio(&beta.hi)
                )));
            }
            let w = beta.width() / r(16);
            beta.refine(&ip, &w);
        }
        if mu.as_ref().is_none_or(|best| beta.hi > *best) {
            mu = Some(beta.hi);
        }
    }
    Ok(mu.unwrap_or_else(|| r(-1)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem {
    Links,
    Rechts,
}

/// Which inequality a probe tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeKind {
    /// `(-1)^m P_m(y) >= (-1)^m (y / (x h(m))) Q_m(x) > 0`
    Chain,
    /// `(-1)^m P_m(y) > 0` below `-kappa H(n-1)`
    Strict,
    /// `P_m(x) < 0` on `(mu, 0)`
    Negative,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Probe {
    pub kind: ProbeKind,
    pub m: usize,
    pub x: Option<Rational>,
    pub y: Rational,
    /// Sign of `(-1)^m P_m(y)` for the left theorem, of `P_m(y)` for the right one.
    pub sign: i8,
    pub satisfied: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SignCheckResult {
    pub theorem: Theorem,
    pub g: ArithmeticFunctionSpec,
    pub h: ArithmeticFunctionSpec,
    pub n: usize,
    pub kappa_or_mu: Rational,
    pub seed: u64,
    pub probes: Vec<Probe>,
}

impl SignCheckResult {
    pub fn passed(&self) -> bool {
        self.probes.iter().all(|p| p.satisfied)
    }
}

fn sign(q: &Rational) -> i8 {
    match q.cmp(&Rational::zero()) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

fn alternating(m: usize, v: &Rational) -> Rational {
    if m % 2 == 0 {
        v.clone()
    } else {
        -v.clone()
    }
}

/// A positive random rational, occasionally zero when `allow_zero`.
fn random_gap(rng: &mut ChaCha8Rng, allow_zero: bool) -> Rational {
    if allow_zero && rng.gen_range(0..4) == 0 {
        return Rational::zero();
    }
    Rational::new(rng.gen_range(1..=1000).into(), rng.gen_range(1..=100).into())
}

/// Seeded probes of the left theorem with `kappa_n` derived from certified zeros.
pub fn check_links(
    g: &ArithmeticFunctionSpec,
    h: &ArithmeticFunctionSpec,
    n: usize,
    probes: usize,
    seed: u64,
) -> Result<SignCheckResult> {
    if n == 0 {
        return Err(Error::ZeroArgument);
    }
    let width = default_width();
    let kappa = derive_kappa(g, n, &width)?;
    let big_h = running_max(h, n - 1)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let one = ArithmeticFunctionSpec::one();
    let hv = h.values(n)?;
    for _ in 0..probes {
        let x = -&kappa - random_gap(&mut rng, false);
        let mut y = &x * &big_h - random_gap(&mut rng, true);
        if y.is_zero() {
            y = -random_gap(&mut rng, false);
        }
        let q = eval_family_at(g, &one, &x, n)?;
        let p = eval_family_at(g, h, &y, n)?;
        for m in 1..=n {
            let qm = alternating(m, &q[m]);
            if !qm.is_positive() {
                return Err(Error::ProbeHypothesis(format!(
                    "(-1)^{m} Q_{m}({}) is not positive",
                    format_ratio(&x)
                )));
            }
            let pm = alternating(m, &p[m]);
            let middle = &y / (&x * &hv[m - 1]) * &qm;
            out.push(Probe {
                kind: ProbeKind::Chain,
                m,
                x: Some(x.clone()),
                y: y.clone(),
                sign: sign(&pm),
                satisfied: pm >= middle && middle.is_positive(),
            });
        }
        let mut y2 = -&kappa * &big_h - random_gap(&mut rng, false);
        if y2.is_zero() {
            y2 = r(-1);
        }
        let p2 = eval_family_at(g, h, &y2, n)?;
        for m in 1..=n {
            let pm = alternating(m, &p2[m]);
            out.push(Probe {
                kind: ProbeKind::Strict,
                m,
                x: None,
                y: y2.clone(),
                sign: sign(&pm),
                satisfied: pm.is_positive(),
            });
        }
    }
    Ok(SignCheckResult {
        theorem: Theorem::Links,
        g: g.clone(),
        h: h.clone(),
        n,
        kappa_or_mu: kappa,
        seed,
        probes: out,
    })
}

/// Seeded probes of the right theorem with `mu_n` derived from certified zeros.
/// Needs `g > 0` and `h >= 1` on `1..=n`.
pub fn check_rechts(
    g: &ArithmeticFunctionSpec,
    h: &ArithmeticFunctionSpec,
    n: usize,
    probes: usize,
    seed: u64,
) -> Result<SignCheckResult> {
    if n == 0 {
        return Err(Error::ZeroArgument);
    }
    for (k, v) in g.values(n)?.iter().enumerate() {
        if !v.is_positive() {
            return Err(Error::HypothesisUnsatisfiable(format!("g({}) = {} is not positive", k + 1, format_ratio(v))));
        }
    }
    for (k, v) in h.values(n)?.iter().enumerate() {
        if *v < Rational::one() {
            return Err(Error::HypothesisUnsatisfiable(format!("h({}) = {} is below one", k + 1, format_ratio(v))));
        }
    }
    let mu = derive_mu(g, n, &default_width())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let one = ArithmeticFunctionSpec::one();
    let mut out = Vec::new();
    for _ in 0..probes {
        let t = Rational::new(rng.gen_range(1..1000).into(), BigInt::from(1000));
        let x = &mu * t;
        let q = eval_family_at(g, &one, &x, n)?;
        let p = eval_family_at(g, h, &x, n)?;
        for m in 1..=n {
            if !q[m].is_negative() {
                return Err(Error::ProbeHypothesis(format!(
                    "Q_{m}({}) is not negative",
                    format_ratio(&x)
                )));
            }
            out.push(Probe {
                kind: ProbeKind::Negative,
                m,
                x: None,
                y: x.clone(),
                sign: sign(&p[m]),
                satisfied: p[m].is_negative(),
            });
        }
    }
    Ok(SignCheckResult {
        theorem: Theorem::Rechts,
        g: g.clone(),
        h: h.clone(),
        n,
        kappa_or_mu: mu,
        seed,
        probes: out,
    })
}

/// `U_m(a + b x)` for rational `a`, `b`.
fn chebyshev_at_linear(m: usize, a: Rational, b: Rational) -> Poly {
    chebyshev_u(m).compose(&Poly::new(vec![a, b]))
}

/// Certified containment of the zeros of `L_m^{(1)}` in
/// `[2 - 2 cos(pi / (m + 1)), (2 - 2 cos(m pi / (m + 1))) m]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LaguerreBounds {
    pub m: usize,
    pub lower: f64,
    pub upper: f64,
    pub smallest_root: f64,
    pub largest_root: f64,
    pub contained: bool,
}

pub fn laguerre_zero_bounds(m: usize) -> Result<LaguerreBounds> {
    if m < 2 {
        return Err(Error::OutOfRange {
            requested: m,
            available: 2,
        });
    }
    let width = default_width();
    let lag = laguerre_l1(m);
    let roots = analyze(&lag, &width)?.real;
    // 2 - 2c and (2 - 2c) m for a zero c of U_m are zeros of U_m(1 - x/2)
    // and U_m(1 - x/(2m)); the extreme cosines give the extreme zeros
    let lower_poly = chebyshev_at_linear(m, r(1), Rational::new((-1).into(), 2.into()));
    let upper_poly = chebyshev_at_linear(m, r(1), Rational::new((-1).into(), BigInt::from(2 * m)));
    let lower_roots = analyze(&lower_poly, &width)?.real;
    let upper_roots = analyze(&upper_poly, &width)?.real;
    let (lo_iv, hi_iv) = (&lower_roots[0], upper_roots.last().unwrap());
    let (first, last) = (&roots[0], roots.last().unwrap());
    let contained = compare_roots(&lower_poly, lo_iv, &lag, first) != Ordering::Greater
        && compare_roots(&lag, last, &upper_poly, hi_iv) != Ordering::Greater;
    let pi = std::f64::consts::PI;
    let mf = m as f64;
    Ok(LaguerreBounds {
        m,
        lower: 2.0 - 2.0 * (pi / (mf + 1.0)).cos(),
        upper: (2.0 - 2.0 * (mf * pi / (mf + 1.0)).cos()) * mf,
        smallest_root: first.midpoint_f64(),
        largest_root: last.midpoint_f64(),
        contained,
    })
}

/// Zeros of `P_n^id / z` against `[alpha_n (n - 1), beta_n]` from `Q_n^id / z`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContainmentCheck {
    pub n: usize,
    pub lower: f64,
    pub upper: f64,
    pub smallest_root: f64,
    pub largest_root: f64,
    pub contained: bool,
    /// A zero coincides with an endpoint.
    pub touches_boundary: bool,
}

pub fn zero_containment(n: usize) -> Result<ContainmentCheck> {
    if n < 2 {
        return Err(Error::OutOfRange {
            requested: n,
            available: 2,
        });
    }
    let width = default_width();
    let id = ArithmeticFunctionSpec::id();
    let p = strip_trivial(compute_p(&id, n)?.member(n)?).0;
    let q = strip_trivial(compute_q(&id, n)?.member(n)?).0;
    // alpha_n (n - 1) is the smallest zero of q(x / (n - 1))
    let scaled = q.compose(&Poly::new(vec![Rational::zero(), Rational::new(1.into(), BigInt::from(n - 1))]));
    let p_roots = analyze(&p, &width)?.real;
    let q_roots = analyze(&q, &width)?.real;
    let s_roots = analyze(&scaled, &width)?.real;
    let (first, last) = (&p_roots[0], p_roots.last().unwrap());
    let low = compare_roots(&scaled, &s_roots[0], &p, first);
    let high = compare_roots(&p, last, &q, q_roots.last().unwrap());
    Ok(ContainmentCheck {
        n,
        lower: s_roots[0].midpoint_f64(),
        upper: q_roots.last().unwrap().midpoint_f64(),
        smallest_root: first.midpoint_f64(),
        largest_root: last.midpoint_f64(),
        contained: low != Ordering::Greater && high != Ordering::Greater,
        touches_boundary: low == Ordering::Equal || high == Ordering::Equal,
    })
}

/// Largest zero of `H_n` against `cos(pi / (n + 1)) sqrt(2n - 2)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HermiteBound {
    pub n: usize,
    pub bound: f64,
    pub max_root: f64,
    /// `max_root` compared with `bound`, decided exactly.
    #[serde(skip)]
    pub ordering: Ordering,
    pub ok: bool,
    /// `sqrt(2n) - (2n)^(-1/2)`
    pub expansion: f64,
}

/// `p(x) = s(x^2)` or `x s(x^2)`; returns `s`.
fn in_square(p: &Poly) -> Poly {
    let c = p.coeffs();
    let start = if c.first().is_some_and(|a| a.is_zero()) { 1 } else { 0 };
    Poly::new(c.iter().skip(start).step_by(2).cloned().collect())
}

pub fn hermite_bound_check(n: usize) -> Result<HermiteBound> {
    if n < 2 {
        return Err(Error::OutOfRange {
            requested: n,
            available: 2,
        });
    }
    let width = default_width();
    // compare squares: the largest zero of H_n(sqrt w) with (2n - 2) cos^2(pi / (n + 1)),
    // the largest zero of U_n(sqrt(b / (2n - 2))) in b
    let hw = in_square(&hermite_h(n));
    let uw = in_square(&chebyshev_u(n));
    let bw = uw.compose(&Poly::new(vec![Rational::zero(), Rational::new(1.into(), BigInt::from(2 * n - 2))]));
    let h_roots = analyze(&hw, &width)?.real;
    let b_roots = analyze(&bw, &width)?.real;
    let (h_top, b_top) = (h_roots.last().unwrap(), b_roots.last().unwrap());
    let ordering = compare_roots(&hw, h_top, &bw, b_top);
    let nf = n as f64;
    Ok(HermiteBound {
        n,
        bound: (std::f64::consts::PI / (nf + 1.0)).cos() * (2.0 * nf - 2.0).sqrt(),
        max_root: h_top.midpoint_f64().sqrt(),
        ordering,
        ok: ordering != Ordering::Greater,
        expansion: (2.0 * nf).sqrt() - (2.0 * nf).powf(-0.5),
    })
}

/// `sum_{k=0}^{n-1} (1/z + k/24) tau(k + 1) Q_{n-k}^sigma(z)`.
pub fn lehmer_sum(n: usize, z: &Rational) -> Result<Rational> {
    lehmer_sums(n, z).map(|mut v| v.pop().unwrap())
}

/// The sums for `n = 1..=n_max` at one point.
pub fn lehmer_sums(n_max: usize, z: &Rational) -> Result<Vec<Rational>> {
    if n_max == 0 {
        return Err(Error::ZeroArgument);
    }
    if z.is_zero() {
        return Err(Error::ZeroPoint("z"));
    }
    let q = eval_family_at(&ArithmeticFunctionSpec::sigma(), &ArithmeticFunctionSpec::one(), z, n_max)?;
    let tau = tau_values(n_max);
    let inv = Rational::one() / z;
    let weights: Vec<Rational> = (0..n_max)
        .map(|k| (&inv + Rational::new(BigInt::from(k), 24.into())) * Rational::from_integer(tau[k].clone()))
        .collect();
    Ok((1..=n_max)
        .map(|n| (0..n).map(|k| &weights[k] * &q[n - k]).sum())
        .collect())
}

/// `Q_n^sigma(-1)` for `n = 1..=20`, used as an exact cross-check.
pub const Q_SIGMA_AT_MINUS_ONE: [i64; 20] = [
    -1, -2, 1, 2, 4, -6, -5, 4, 1, 18, -13, -26, 4, 22, 66, -76, -78, 66, 37, 122,
];

#[derive(Clone, Debug, PartialEq)]
pub struct LehmerScan {
    pub n_max: usize,
    pub points: Vec<Rational>,
    /// `(n, z)` pairs where the sum vanishes.
    pub zeros: Vec<(usize, Rational)>,
    pub values: Vec<(usize, Rational, Rational)>,
    /// `Q_n^sigma(-1)` for `n <= 20` agrees with [`Q_SIGMA_AT_MINUS_ONE`].
    pub reference_ok: bool,
}

pub fn lehmer_scan(n_max: usize, points: &[Rational]) -> Result<LehmerScan> {
    let mut zeros = Vec::new();
    let mut values = Vec::new();
    for z in points {
        for (i, v) in lehmer_sums(n_max, z)?.into_iter().enumerate() {
            if v.is_zero() {
                zeros.push((i + 1, z.clone()));
            }
            values.push((i + 1, z.clone(), v));
        }
    }
    let q = eval_family_at(&ArithmeticFunctionSpec::sigma(), &ArithmeticFunctionSpec::one(), &r(-1), 20)?;
    let reference_ok = Q_SIGMA_AT_MINUS_ONE
        .iter()
        .enumerate()
        .all(|(i, &v)| q[i + 1] == r(v));
    Ok(LehmerScan {
        n_max,
        points: points.to_vec(),
        zeros,
        values,
        reference_ok,
    })
}

/// Float magnitude of a rational for reports.
pub fn approx(q: &Rational) -> f64 {
    to_f64(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use proptest::prelude::*;
    use ArithmeticFunctionSpec as A;

    #[test]
    fn lemma_trivial_and_quadratic_cases() {
        let t = lemma_residual(&A::sigma(), &A::id(), 1, &rat(3, 5), &rat(-7, 2)).unwrap();
        assert!(t.holds());
        // at n = 2 both sides reduce to y - x
        let (x, y) = (rat(-2, 3), rat(9, 4));
        let t = lemma_residual(&A::sigma(), &A::id(), 2, &x, &y).unwrap();
        assert!(t.holds());
        let p = eval_family_at(&A::sigma(), &A::id(), &y, 2).unwrap();
        let q = eval_family_at(&A::sigma(), &A::one(), &x, 2).unwrap();
        assert_eq!(int(2) / &y * &p[2] - &q[2] / &x, &y - &x);
    }

    #[test]
    fn lemma_parity_instance() {
        assert!(lemma_residual(&A::Parity, &A::id(), 7, &rat(-2, 3), &rat(5, 7)).unwrap().holds());
    }

    #[test]
    fn lemma_rejects_zero_points() {
        assert_eq!(
            lemma_residual(&A::sigma(), &A::id(), 3, &int(0), &int(1)),
            Err(Error::ZeroPoint("x"))
        );
        assert_eq!(
            lemma_residual(&A::sigma(), &A::id(), 3, &int(1), &int(0)),
            Err(Error::ZeroPoint("y"))
        );
    }

    #[test]
    fn lemma_detects_perturbed_family() {
        // an independent check that the residual is sensitive: a wrong h breaks it
        let good = lemma_residual(&A::sigma(), &A::id(), 5, &rat(1, 2), &rat(-3, 4)).unwrap();
        assert!(good.holds());
        let p = eval_family_at(&A::sigma(), &A::id(), &rat(-3, 4), 5).unwrap();
        let q = eval_family_at(&A::sigma(), &A::one(), &rat(1, 2), 5).unwrap();
        let wrong_lhs = int(4) / rat(-3, 4) * &p[5] - &q[5] / rat(1, 2);
        let right_lhs = int(5) / rat(-3, 4) * &p[5] - &q[5] / rat(1, 2);
        assert_ne!(wrong_lhs, right_lhs);
    }

    #[test]
    fn lemma_suite_all_zero() {
        let suite = lemma_suite(60, 12, 7).unwrap();
        assert!(suite.iter().all(|t| t.holds()));
        let rec = suite[0].record(7);
        assert!(rec.ok);
        assert_eq!(rec.residual, "0/1");
    }

    #[test]
    fn kappa_examples() {
        let w = default_width();
        let k2 = derive_kappa(&A::sigma(), 2, &w).unwrap();
        assert!(k2 >= int(3) && k2 <= int(3) + &w);
        let k4 = derive_kappa(&A::id(), 4, &w).unwrap();
        assert!((to_f64(&k4) - (2.0 + 2f64.sqrt())).abs() < 1e-7);
        assert_eq!(derive_kappa(&A::sigma(), 1, &w).unwrap(), int(0));
    }

    #[test]
    fn mu_second_order() {
        // Q_2 / z = z + g(2); the only zero is -g(2)
        let mu = derive_mu(&A::sigma(), 2, &default_width()).unwrap();
        assert!(mu <= int(-3) + rat(1, 100_000_000) && mu.is_negative());
    }

    #[test]
    fn links_sigma() {
        let res = check_links(&A::sigma(), &A::id(), 6, 5, 11).unwrap();
        assert!(res.passed());
        assert_eq!(res.probes.len(), 5 * 12);
    }

    #[test]
    fn links_base_case() {
        let res = check_links(&A::id(), &A::id(), 1, 4, 3).unwrap();
        assert!(res.passed());
        for p in &res.probes {
            assert!(p.y.is_negative());
        }
    }

    #[test]
    fn rechts_sigma() {
        let res = check_rechts(&A::sigma(), &A::id(), 10, 5, 5).unwrap();
        assert!(res.passed());
        assert!(res.kappa_or_mu.is_negative());
    }

    #[test]
    fn rechts_requires_positive_weights() {
        assert!(matches!(
            check_rechts(&A::Hermite, &A::id(), 5, 3, 1),
            Err(Error::HypothesisUnsatisfiable(_))
        ));
        let small_h = A::table(vec![int(1), rat(1, 2)]);
        assert!(matches!(
            check_rechts(&A::sigma(), &small_h, 2, 3, 1),
            Err(Error::HypothesisUnsatisfiable(_))
        ));
    }

    #[test]
    fn laguerre_bounds_small() {
        let b = laguerre_zero_bounds(2).unwrap();
        assert!((b.lower - 1.0).abs() < 1e-12);
        assert!((b.upper - 6.0).abs() < 1e-12);
        assert!((b.smallest_root - (3.0 - 3f64.sqrt())).abs() < 1e-8);
        assert!(b.contained);
        assert!(laguerre_zero_bounds(9).unwrap().contained);
        assert!(laguerre_zero_bounds(1).is_err());
    }

    #[test]
    fn containment_touches_at_two() {
        let c = zero_containment(2).unwrap();
        assert!(c.contained && c.touches_boundary);
        let c = zero_containment(6).unwrap();
        assert!(c.contained && !c.touches_boundary);
    }

    #[test]
    fn hermite_bound_cases() {
        let b2 = hermite_bound_check(2).unwrap();
        assert_eq!(b2.ordering, Ordering::Equal);
        assert!((b2.bound - 0.5f64.sqrt()).abs() < 1e-12);
        let b3 = hermite_bound_check(3).unwrap();
        assert_eq!(b3.ordering, Ordering::Less);
        assert!((b3.max_root - 1.5f64.sqrt()).abs() < 1e-8);
        assert!((b3.bound - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn lehmer_examples() {
        assert_eq!(lehmer_sum(1, &int(-1)).unwrap(), int(1));
        assert_eq!(lehmer_sum(2, &int(-1)).unwrap(), int(-21));
        assert_ne!(lehmer_sum(4, &int(-1)).unwrap(), int(0));
        assert_eq!(lehmer_sum(3, &int(0)), Err(Error::ZeroPoint("z")));
    }

    #[test]
    fn lehmer_scan_minus_one() {
        let scan = lehmer_scan(20, &[int(-1)]).unwrap();
        assert!(scan.zeros.is_empty());
        assert!(scan.reference_ok);
        assert_eq!(scan.values.len(), 20);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn lemma_holds_random(
            n in 1usize..16,
            xn in -9i64..9, xd in 1i64..9,
            yn in -9i64..9, yd in 1i64..9,
            gi in 0usize..5, hi in 0usize..3,
        ) {
            prop_assume!(xn != 0 && yn != 0);
            let gs = [A::sigma(), A::SigmaD { d: 2 }, A::id(), A::Parity, A::Hermite];
            let hs = [A::id(), A::one(), A::sigma()];
            let t = lemma_residual(&gs[gi], &hs[hi], n, &rat(xn, xd), &rat(yn, yd)).unwrap();
            prop_assert!(t.residual.is_zero());
            prop_assert_eq!(&t.residual, &t.residual_alt);
            prop_assert!(t.residual_scaled.is_zero());
        }
    }
}
