//! Certified real roots and floating complex roots of family members.
//!
//! Real roots are always certified with exact rational arithmetic. Floating
//! approximations from [`aberth`] only propose candidate intervals; a
//! candidate is accepted when the exact signs at its endpoints differ, and
//! the accepted set is complete when its size equals the degree, when
//! disjoint inclusion discs off the real axis account for every other root,
//! or when it matches the Sturm count. Otherwise the Sturm chain isolates
//! the roots by bisection.

pub mod aberth;
pub mod intpoly;
pub mod sturm;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{format_ratio, from_f64, round_decimal, to_f64, Rational};
use crate::families::{compute_p, PolyFamily};
use crate::poly::Poly;
use crate::ArithmeticFunctionSpec;

pub use aberth::AberthConfig;
pub use intpoly::IntPoly;
pub use sturm::SturmChain;

/// Default refinement width `1e-8`.
pub fn default_width() -> Rational {
    Rational::new(BigInt::from(1), BigInt::from(100_000_000))
}

/// An interval `[lo, hi]` holding exactly one real root. When `lo == hi`
/// the root is that rational number exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatingInterval {
    pub lo: Rational,
    pub hi: Rational,
    pub sign_lo: i8,
    pub sign_hi: i8,
    pub multiplicity: usize,
}

impl IsolatingInterval {
    pub(crate) fn open(p: &IntPoly, lo: Rational, hi: Rational) -> Self {
        IsolatingInterval {
            sign_lo: p.sign_at(&lo),
            sign_hi: p.sign_at(&hi),
            lo,
            hi,
            multiplicity: 1,
        }
    }

    pub fn exact(x: Rational) -> Self {
        IsolatingInterval {
            lo: x.clone(),
            hi: x,
            sign_lo: 0,
            sign_hi: 0,
            multiplicity: 1,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn midpoint_f64(&self) -> f64 {
        to_f64(&self.midpoint())
    }

    /// Bisects with exact signs until the width is at most `width`.
    pub fn refine(&mut self, p: &IntPoly, width: &Rational) {
        let two = Rational::from_integer(2.into());
        while !self.is_exact() && &self.width() > width {
            let mid = (&self.lo + &self.hi) / &two;
            let s = p.sign_at(&mid);
            if s == 0 {
                self.lo = mid.clone();
                self.hi = mid;
                self.sign_lo = 0;
                self.sign_hi = 0;
            } else if s == self.sign_lo {
                self.lo = mid;
            } else {
                self.hi = mid;
            }
        }
    }

    fn overlaps(&self, other: &IsolatingInterval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }
}

/// How completeness of the real root list was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Certification {
    /// As many sign-change intervals as the degree.
    Degree,
    /// The remaining roots lie in disjoint discs away from the real axis.
    RootDiscs,
    /// As many sign-change intervals as the Sturm count.
    SturmCount,
    /// Intervals produced by Sturm bisection.
    SturmBisection,
}

/// Certified real roots plus floating approximations of all roots.
#[derive(Clone, Debug)]
pub struct RootAnalysis {
    pub real: Vec<IsolatingInterval>,
    /// One entry per root with multiplicity; certified real roots appear as
    /// their interval midpoints with zero imaginary part.
    pub all_roots: Vec<Complex64>,
    /// Flags matching `all_roots`: `true` for certified real roots.
    pub is_real: Vec<bool>,
    pub certification: Certification,
}

impl RootAnalysis {
    pub fn max_magnitude(&self) -> Option<f64> {
        self.all_roots
            .iter()
            .map(|z| z.norm())
            .fold(None, |acc, m| Some(acc.map_or(m, |a: f64| a.max(m))))
    }
}

fn candidate_intervals(p: &IntPoly, approx: &[Complex64]) -> Vec<IsolatingInterval> {
    let mut reals: Vec<f64> = approx
        .iter()
        .filter(|z| z.im.abs() <= 1e-6 * z.re.abs().max(1.0))
        .map(|z| z.re)
        .collect();
    reals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut out: Vec<IsolatingInterval> = Vec::new();
    for r in reals {
        let Some(center) = from_f64(r) else { continue };
        let candidate = if p.sign_at(&center) == 0 {
            IsolatingInterval::exact(center)
        } else {
            let delta = 1e-10 * r.abs().max(1.0);
            let (Some(lo), Some(hi)) = (from_f64(r - delta), from_f64(r + delta)) else {
                continue;
            };
            let iv = IsolatingInterval::open(p, lo, hi);
            if iv.sign_lo * iv.sign_hi != -1 {
                continue;
            }
            iv
        };
        if out.last().is_some_and(|last| last.overlaps(&candidate)) {
            // indistinguishable at this resolution; leave it to Sturm
            out.pop();
            continue;
        }
        out.push(candidate);
    }
    out
}

/// Number of disjoint discs in the upper half plane, each holding a root,
/// none meeting the real axis. Their conjugates hold as many more roots.
fn nonreal_pairs(p: &IntPoly, approx: &[Complex64]) -> usize {
    let mut kept: Vec<(Complex64, f64)> = Vec::new();
    for z in approx.iter().filter(|z| z.im > 0.0) {
        let Some((c, r)) = aberth::inclusion_radius(p, *z) else {
            continue;
        };
        if r < c.im && kept.iter().all(|(c2, r2)| (c - c2).norm() > r + r2) {
            kept.push((c, r));
        }
    }
    kept.len()
}

/// Squarefree decomposition `p = prod f_i^i` (Yun), monic factors.
fn squarefree_factors(p: &Poly) -> Vec<(Poly, usize)> {
    let dp = p.derivative();
    let g = p.gcd(&dp);
    let (mut c, _) = p.div_rem(&g).expect("nonzero gcd");
    let (w, _) = dp.div_rem(&g).expect("nonzero gcd");
    let mut d = &w - &c.derivative();
    let mut out = Vec::new();
    let mut i = 1;
    while c.degree().is_some_and(|k| k > 0) {
        let a = c.gcd(&d);
        if a.degree().is_some_and(|k| k > 0) {
            out.push((a.clone(), i));
        }
        c = c.div_rem(&a).expect("nonzero gcd").0;
        let dd = d.div_rem(&a).expect("nonzero gcd").0;
        d = &dd - &c.derivative();
        i += 1;
    }
    out
}

/// Certified isolation of all real roots, refined to `width`, together with
/// approximations of the complex roots.
pub fn analyze(p: &Poly, width: &Rational) -> Result<RootAnalysis> {
    analyze_with(p, width, &AberthConfig::default())
}

pub fn analyze_with(p: &Poly, width: &Rational, cfg: &AberthConfig) -> Result<RootAnalysis> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !width.is_positive() {
        return Err(Error::NonPositiveWidth);
    }
    let zeros = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        return analyze_at_origin(p, zeros, width, cfg);
    }
    let ip = IntPoly::from_poly(p);
    let d = ip.degree();
    if d == 0 {
        return Ok(RootAnalysis {
            real: Vec::new(),
            all_roots: Vec::new(),
            is_real: Vec::new(),
            certification: Certification::Degree,
        });
    }
    let approx = aberth::approximate_roots(&ip, cfg).ok();
    let candidates = approx
        .as_deref()
        .map(|a| candidate_intervals(&ip, a))
        .unwrap_or_default();

    let (mut real, certification) = if candidates.len() == d {
        (candidates, Certification::Degree)
    } else if approx
        .as_deref()
        .is_some_and(|a| candidates.len() + 2 * nonreal_pairs(&ip, a) == d)
    {
        (candidates, Certification::RootDiscs)
    } else {
        let chain = SturmChain::new(&ip);
        if !chain.is_squarefree() {
            return analyze_repeated(p, width, approx, cfg);
        }
        if candidates.len() == chain.total_real_roots() {
            (candidates, Certification::SturmCount)
        } else {
            (chain.isolate(), Certification::SturmBisection)
        }
    };
    for iv in &mut real {
        iv.refine(&ip, width);
    }
    let (all_roots, is_real) = merge_roots(&real, approx.as_deref(), d);
    Ok(RootAnalysis {
        real,
        all_roots,
        is_real,
        certification,
    })
}

/// `p = z^k q`: the root `0` is exact, the rest comes from `q`.
fn analyze_at_origin(p: &Poly, k: usize, width: &Rational, cfg: &AberthConfig) -> Result<RootAnalysis> {
    let rest = Poly::new(p.coeffs()[k..].to_vec());
    let mut sub = analyze_with(&rest, width, cfg)?;
    let mut origin = IsolatingInterval::exact(Rational::zero());
    origin.multiplicity = k;
    let at = sub.real.partition_point(|iv| iv.hi.is_negative());
    sub.real.insert(at, origin);
    for _ in 0..k {
        sub.all_roots.push(Complex64::new(0.0, 0.0));
        sub.is_real.push(true);
    }
    Ok(sub)
}

fn analyze_repeated(
    p: &Poly,
    width: &Rational,
    approx: Option<Vec<Complex64>>,
    cfg: &AberthConfig,
) -> Result<RootAnalysis> {
    let mut real: Vec<(IsolatingInterval, IntPoly)> = Vec::new();
    for (factor, mult) in squarefree_factors(p) {
        let sub = analyze_with(&factor, width, cfg)?;
        let ip = IntPoly::from_poly(&factor);
        for mut iv in sub.real {
            iv.multiplicity = mult;
            real.push((iv, ip.clone()));
        }
    }
    real.sort_by(|a, b| a.0.lo.cmp(&b.0.lo));
    // roots of different factors are distinct: refine until disjoint
    loop {
        let clash = (1..real.len()).find(|&i| real[i - 1].0.overlaps(&real[i].0));
        let Some(i) = clash else { break };
        for j in [i - 1, i] {
            let w = real[j].0.width() / Rational::from_integer(4.into());
            let (iv, ip) = &mut real[j];
            if !iv.is_exact() {
                iv.refine(ip, &w);
            }
        }
        real.sort_by(|a, b| a.0.lo.cmp(&b.0.lo));
    }
    let real: Vec<IsolatingInterval> = real.into_iter().map(|(iv, _)| iv).collect();
    let d = p.degree().unwrap_or(0);
    let (all_roots, is_real) = merge_roots(&real, approx.as_deref(), d);
    Ok(RootAnalysis {
        real,
        all_roots,
        is_real,
        certification: Certification::SturmBisection,
    })
}

/// Replaces the approximations nearest to each certified real root by the
/// certified midpoint; the rest are reported as non-real.
fn merge_roots(
    real: &[IsolatingInterval],
    approx: Option<&[Complex64]>,
    degree: usize,
) -> (Vec<Complex64>, Vec<bool>) {
    let mut pool: Vec<Complex64> = approx.map(|a| a.to_vec()).unwrap_or_default();
    let mut roots = Vec::with_capacity(degree);
    let mut flags = Vec::with_capacity(degree);
    for iv in real {
        let x = iv.midpoint_f64();
        for _ in 0..iv.multiplicity {
            if let Some(k) = nearest(&pool, x) {
                pool.swap_remove(k);
            }
            roots.push(Complex64::new(x, 0.0));
            flags.push(true);
        }
    }
    for z in pool {
        roots.push(z);
        flags.push(false);
    }
    (roots, flags)
}

fn nearest(pool: &[Complex64], x: f64) -> Option<usize> {
    pool.iter()
        .enumerate()
        .map(|(k, z)| (k, (z - Complex64::new(x, 0.0)).norm()))
        .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
        .map(|(k, _)| k)
}

/// `p / gcd(p, p')`: same roots, all simple.
pub fn squarefree_part(p: &Poly) -> Poly {
    let g = p.gcd(&p.derivative());
    if g.degree().unwrap_or(0) == 0 {
        return p.clone();
    }
    p.div_rem(&g).expect("nonzero gcd").0
}

/// Exact comparison of the root of `p` in `a` with the root of `q` in `b`.
///
/// Both intervals are refined until they separate; while they keep
/// overlapping, a common root of `p` and `q` in the overlap settles equality.
pub fn compare_roots(
    p: &Poly,
    a: &IsolatingInterval,
    q: &Poly,
    b: &IsolatingInterval,
) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    let sp = IntPoly::from_poly(&squarefree_part(p));
    let sq = IntPoly::from_poly(&squarefree_part(q));
    let reopen = |ip: &IntPoly, iv: &IsolatingInterval| {
        if iv.is_exact() {
            iv.clone()
        } else {
            IsolatingInterval::open(ip, iv.lo.clone(), iv.hi.clone())
        }
    };
    let mut a = reopen(&sp, a);
    let mut b = reopen(&sq, b);
    let mut common: Option<IntPoly> = None;
    loop {
        if a.hi < b.lo {
            return Ordering::Less;
        }
        if b.hi < a.lo {
            return Ordering::Greater;
        }
        if a.is_exact() && b.is_exact() {
            return a.lo.cmp(&b.lo);
        }
        let g = common.get_or_insert_with(|| IntPoly::from_poly(&p.gcd(q)));
        if g.degree() > 0 {
            let lo = (&a.lo).max(&b.lo).clone();
            let hi = (&a.hi).min(&b.hi).clone();
            // a root of the gcd inside the overlap is the isolated root of both
            if g.sign_at(&lo) == 0 || (lo < hi && SturmChain::new(g).count_in(&lo, &hi) > 0) {
                return Ordering::Equal;
            }
        }
        let wa = a.width() / Rational::from_integer(4.into());
        let wb = b.width() / Rational::from_integer(4.into());
        a.refine(&sp, &wa);
        b.refine(&sq, &wb);
    }
}

/// `p / z`, or `p` itself (flagged `false`) when `z` does not divide `p`.
pub fn strip_trivial(p: &Poly) -> (Poly, bool) {
    if p.degree().unwrap_or(0) == 0 {
        return (p.clone(), false);
    }
    match p.divide_by_z() {
        Some(q) => (q, true),
        None => (p.clone(), false),
    }
}

/// Every real root of `p`, certified, in increasing order.
pub fn sturm_real_roots(p: &Poly, width: &Rational) -> Result<Vec<IsolatingInterval>> {
    Ok(analyze(p, width)?.real)
}

/// Largest modulus among all complex roots.
pub fn max_complex_magnitude(p: &Poly, tolerance: f64) -> Result<f64> {
    if p.degree().unwrap_or(0) == 0 {
        return Err(Error::ZeroPolynomial);
    }
    let cfg = AberthConfig {
        tolerance,
        ..AberthConfig::default()
    };
    let roots = aberth::approximate_roots(&IntPoly::from_poly(p), &cfg)?;
    Ok(roots.iter().map(|z| z.norm()).fold(0.0, f64::max))
}

/// Zero data of one family member `P_n` (analysis of `P_n / z`).
#[derive(Clone, Debug)]
pub struct RootReport {
    pub family: String,
    pub n: usize,
    pub stripped: Poly,
    pub real_roots: Vec<IsolatingInterval>,
    pub alpha: Option<IsolatingInterval>,
    pub beta: Option<IsolatingInterval>,
    pub has_real_nontrivial: bool,
    pub roots: Vec<Complex64>,
    pub is_real: Vec<bool>,
    pub max_complex_magnitude: Option<f64>,
    pub certification: Certification,
    /// `max |alpha_m|` over `m <= n`, outer endpoints.
    pub kappa_prefix: Option<Rational>,
    /// Largest negative real zero over `m <= n`, inner endpoints.
    pub mu_prefix: Option<Rational>,
}

pub fn family_tag(fam: &PolyFamily) -> String {
    format!("P[g={},h={}]", fam.g(), fam.h())
}

/// Certified smallest and largest nontrivial real zeros of member `n`.
pub fn extremal_zeros(fam: &PolyFamily, n: usize, width: &Rational) -> Result<RootReport> {
    if n == 0 {
        return Err(Error::OutOfRange {
            requested: 0,
            available: fam.n_max(),
        });
    }
    let (stripped, _) = strip_trivial(fam.member(n)?);
    let analysis = analyze(&stripped, width)?;
    Ok(RootReport {
        family: family_tag(fam),
        n,
        alpha: analysis.real.first().cloned(),
        beta: analysis.real.last().cloned(),
        has_real_nontrivial: !analysis.real.is_empty(),
        max_complex_magnitude: analysis.max_magnitude(),
        stripped,
        real_roots: analysis.real,
        roots: analysis.all_roots,
        is_real: analysis.is_real,
        certification: analysis.certification,
        kappa_prefix: None,
        mu_prefix: None,
    })
}

/// Reports for `1 <= n <= n_max` with the prefix bounds filled in.
pub fn family_reports(fam: &PolyFamily, n_max: usize, width: &Rational) -> Result<Vec<RootReport>> {
    let mut out = Vec::with_capacity(n_max);
    let mut kappa = Rational::zero();
    let mut mu: Option<Rational> = None;
    for n in 1..=n_max {
        let mut r = extremal_zeros(fam, n, width)?;
        if let Some(a) = &r.alpha {
            let outer = -a.lo.clone();
            if outer > kappa {
                kappa = outer;
            }
        }
        if let Some(b) = &r.beta {
            mu = Some(match mu {
                Some(m) if m >= b.hi => m,
                _ => b.hi.clone(),
            });
        }
        r.kappa_prefix = Some(kappa.clone());
        r.mu_prefix = mu.clone().filter(|m| m.is_negative());
        out.push(r);
    }
    Ok(out)
}

/// One row of the `Q` versus `P` extremal zero comparison.
#[derive(Clone, Debug)]
pub struct RatioRow {
    pub n: usize,
    pub alpha_q: Rational,
    pub beta_q: Rational,
    pub alpha_p: Rational,
    pub beta_p: Rational,
    /// `alpha_p / ((n - 1) alpha_q)`
    pub ratio_alpha: Rational,
    /// `beta_p / ((n - 1) beta_q)`
    pub ratio_beta: Rational,
}

/// Extremal zeros of `Q_n^g / z` and `P_n^g / z` and their scaled ratios.
pub fn ratio_row(q: &PolyFamily, p: &PolyFamily, n: usize, width: &Rational) -> Result<RatioRow> {
    let rq = extremal_zeros(q, n, width)?;
    let rp = extremal_zeros(p, n, width)?;
    let pick = |iv: &Option<IsolatingInterval>, what: &'static str| {
        iv.as_ref().map(|i| i.midpoint()).ok_or(Error::ZeroDivisor(what))
    };
    let alpha_q = pick(&rq.alpha, "ratio: Q has no real zero")?;
    let beta_q = pick(&rq.beta, "ratio: Q has no real zero")?;
    let alpha_p = pick(&rp.alpha, "ratio: P has no real zero")?;
    let beta_p = pick(&rp.beta, "ratio: P has no real zero")?;
    let scale = Rational::from_integer(BigInt::from(n - 1));
    let denom_a = &scale * &alpha_q;
    let denom_b = &scale * &beta_q;
    if denom_a.is_zero() || denom_b.is_zero() {
        return Err(Error::ZeroDivisor("ratio: zero denominator"));
    }
    Ok(RatioRow {
        n,
        ratio_alpha: &alpha_p / &denom_a,
        ratio_beta: &beta_p / &denom_b,
        alpha_q,
        beta_q,
        alpha_p,
        beta_p,
    })
}

/// [`ratio_row`] for each `n`, building the two families once.
pub fn ratio_table(
    g: &ArithmeticFunctionSpec,
    ns: &[usize],
    width: &Rational,
) -> Result<Vec<RatioRow>> {
    let n_max = ns.iter().copied().max().unwrap_or(0);
    let q = crate::families::compute_q(g, n_max)?;
    let p = compute_p(g, n_max)?;
    ns.iter().map(|&n| ratio_row(&q, &p, n, width)).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct MagnitudeCheck {
    pub n: usize,
    pub magnitude: f64,
    pub bound: f64,
    pub ok: bool,
}

/// `max |root of P_n / z| <= kappa (n - 1)` for `2 <= n <= n_max`.
pub fn magnitude_bound_check(fam: &PolyFamily, n_max: usize, kappa: f64) -> Result<Vec<MagnitudeCheck>> {
    (2..=n_max)
        .map(|n| {
            let (stripped, _) = strip_trivial(fam.member(n)?);
            let magnitude = max_complex_magnitude(&stripped, 1e-12)?;
            let bound = kappa * (n - 1) as f64;
            Ok(MagnitudeCheck {
                n,
                magnitude,
                bound,
                ok: magnitude <= bound,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct KostantCheck {
    pub n: usize,
    /// `(-1)^n P_n(-n^2 + 1) > 0`
    pub at_shifted_square: bool,
    /// `(-1)^n P_n(-n^2) > 0`
    pub at_square: bool,
}

/// Exact sign checks of `(-1)^n P_n^sigma` at `-n^2 + 1` and `-n^2`, `4 <= n <= n_max`.
pub fn kostant_sign_check(n_max: usize) -> Result<Vec<KostantCheck>> {
    let fam = compute_p(&ArithmeticFunctionSpec::sigma(), n_max)?;
    Ok((4..=n_max)
        .map(|n| {
            let p = &fam.members()[n];
            let sq = (n * n) as i64;
            let signed = |z: i64| {
                let v = p.eval(&Rational::from_integer(z.into()));
                if n % 2 == 0 {
                    v.is_positive()
                } else {
                    v.is_negative()
                }
            };
            KostantCheck {
                n,
                at_shifted_square: signed(1 - sq),
                at_square: signed(-sq),
            }
        })
        .collect())
}

#[derive(Serialize)]
struct IntervalJson {
    lo: String,
    hi: String,
    lo_decimal: String,
    hi_decimal: String,
    multiplicity: usize,
}

#[derive(Serialize)]
struct RootJson {
    re: f64,
    im: f64,
    is_real: bool,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    family: &'a str,
    n: usize,
    stripped: Vec<String>,
    certification: Certification,
    real_roots: Vec<IntervalJson>,
    alpha: Option<IntervalJson>,
    beta: Option<IntervalJson>,
    has_real_nontrivial: bool,
    max_complex_magnitude: Option<f64>,
    roots: Vec<RootJson>,
    kappa_prefix: Option<String>,
    mu_prefix: Option<String>,
}

fn interval_json(iv: &IsolatingInterval, decimals: u32) -> IntervalJson {
    IntervalJson {
        lo: format_ratio(&iv.lo),
        hi: format_ratio(&iv.hi),
        lo_decimal: round_decimal(&iv.lo, decimals),
        hi_decimal: round_decimal(&iv.hi, decimals),
        multiplicity: iv.multiplicity,
    }
}

impl RootReport {
    /// JSON with exact `"num/den"` endpoints and decimal renderings.
    pub fn to_json(&self, decimals: u32) -> serde_json::Value {
        let json = ReportJson {
            family: &self.family,
            n: self.n,
            stripped: self.stripped.coeffs().iter().map(format_ratio).collect(),
            certification: self.certification,
            real_roots: self
                .real_roots
                .iter()
                .map(|iv| interval_json(iv, decimals))
                .collect(),
            alpha: self.alpha.as_ref().map(|iv| interval_json(iv, decimals)),
            beta: self.beta.as_ref().map(|iv| interval_json(iv, decimals)),
            has_real_nontrivial: self.has_real_nontrivial,
            max_complex_magnitude: self.max_complex_magnitude,
            roots: self
                .roots
                .iter()
                .zip(&self.is_real)
                .map(|(z, &is_real)| RootJson {
                    re: z.re,
                    im: z.im,
                    is_real,
                })
                .collect(),
            kappa_prefix: self.kappa_prefix.as_ref().map(format_ratio),
            mu_prefix: self.mu_prefix.as_ref().map(format_ratio),
        };
        serde_json::to_value(json).expect("report serializes")
    }
}
