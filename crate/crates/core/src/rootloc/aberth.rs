//! Simultaneous (Aberth-Ehrlich) approximation of all complex roots.
//!
//! A cheap floating-point pass gets close; a polishing pass then evaluates
//! `p / p'` in big fixed-point arithmetic with a rigorous truncation bound,
//! so the final accuracy is limited by the f64 representation of the roots
//! and not by cancellation in the monomial basis. A companion-matrix eigenvalue solve
//! seeds a second polishing attempt if the first one stalls.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

use super::intpoly::IntPoly;
use crate::error::{Error, Result};
use crate::exact::{ldexp, ratio_to_f64};

#[derive(Clone, Debug)]
pub struct AberthConfig {
    /// Iteration cap of the exact polishing pass.
    pub max_iterations: usize,
    /// Stop once the exact Aberth correction is below `tolerance * |z|`.
    pub tolerance: f64,
}

impl Default for AberthConfig {
    fn default() -> Self {
        AberthConfig {
            max_iterations: 200,
            tolerance: 1e-12,
        }
    }
}

const FLOAT_ITERATIONS: usize = 500;

/// All `deg p` complex roots, unordered.
pub fn approximate_roots(p: &IntPoly, cfg: &AberthConfig) -> Result<Vec<Complex64>> {
    let d = p.degree();
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if d == 0 {
        return Ok(Vec::new());
    }
    let scaled = float_coefficients(p);
    let mut roots = initial_guesses(p);
    float_pass(&scaled, &mut roots);
    match polish(p, &mut roots, cfg) {
        Ok(()) => Ok(roots),
        Err(first) => {
            let Some(mut seeded) = companion_roots(&scaled) else {
                return Err(first);
            };
            float_pass(&scaled, &mut seeded);
            polish(p, &mut seeded, cfg)?;
            Ok(seeded)
        }
    }
}

fn log2_abs(x: &BigInt) -> f64 {
    let bits = x.bits() as i64;
    if bits <= 60 {
        return x.abs().to_f64().unwrap().log2();
    }
    let top = (x.abs() >> (bits - 60) as usize).to_f64().unwrap();
    top.log2() + (bits - 60) as f64
}

/// Coefficients divided by a common power of two so the largest is ~2^500.
fn float_coefficients(p: &IntPoly) -> Vec<f64> {
    let max_bits = p.c.iter().map(|c| c.bits()).max().unwrap_or(0) as i64;
    let shift = (max_bits - 500).max(0);
    let den = BigInt::from(1) << shift as usize;
    p.c.iter().map(|c| ratio_to_f64(c, &den)).collect()
}

/// Starting points on circles read off the upper convex hull of
/// `(k, log |c_k|)`, one circle per hull edge.
fn initial_guesses(p: &IntPoly) -> Vec<Complex64> {
    let d = p.degree();
    let pts: Vec<(usize, f64)> = p
        .c
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k, log2_abs(c)))
        .collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let (x1, y1) = hull[hull.len() - 2];
            let (x2, y2) = hull[hull.len() - 1];
            let cross = (x2 as f64 - x1 as f64) * (pt.1 - y1) - (y2 - y1) * (pt.0 as f64 - x1 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let mut guesses = Vec::with_capacity(d);
    // roots at zero for missing low-order terms
    let zeros = pts[0].0;
    for j in 0..zeros {
        guesses.push(Complex64::from_polar(1e-300, j as f64));
    }
    let sigma = 0.7;
    for w in hull.windows(2) {
        let (i, yi) = w[0];
        let (j, yj) = w[1];
        let m = j - i;
        let radius = ((yi - yj) / m as f64).exp2();
        for k in 0..m {
            let angle = 2.0 * PI * k as f64 / m as f64 + 2.0 * PI * i as f64 / d as f64 + sigma;
            guesses.push(Complex64::from_polar(radius, angle));
        }
    }
    guesses
}

/// `p(z) / p'(z)` in floating point, via the reversed polynomial when `|z| > 1`.
fn float_newton(a: &[f64], z: Complex64) -> Complex64 {
    let d = a.len() - 1;
    if z.norm() <= 1.0 {
        let mut p = Complex64::new(a[d], 0.0);
        let mut dp = Complex64::zero();
        for &c in a[..d].iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        p / dp
    } else {
        let w = z.inv();
        let mut r = Complex64::new(a[0], 0.0);
        let mut dr = Complex64::zero();
        for &c in &a[1..] {
            dr = dr * w + r;
            r = r * w + c;
        }
        r / (w * (Complex64::new(d as f64, 0.0) * r - w * dr))
    }
}

fn aberth_step(z: &[Complex64], i: usize, newton: Complex64) -> Complex64 {
    let mut s = Complex64::zero();
    for (j, zj) in z.iter().enumerate() {
        if j != i {
            s += (z[i] - zj).inv();
        }
    }
    newton / (Complex64::new(1.0, 0.0) - newton * s)
}

fn float_pass(a: &[f64], z: &mut [Complex64]) {
    let mut done = vec![false; z.len()];
    for _ in 0..FLOAT_ITERATIONS {
        let mut all = true;
        for i in 0..z.len() {
            if done[i] {
                continue;
            }
            let n = float_newton(a, z[i]);
            let corr = aberth_step(z, i, n);
            if !corr.re.is_finite() || !corr.im.is_finite() {
                done[i] = true;
                continue;
            }
            z[i] -= corr;
            if corr.norm() <= 1e-15 * z[i].norm().max(1e-300) {
                done[i] = true;
            } else {
                all = false;
            }
        }
        if all {
            break;
        }
    }
}

/// A complex point with dyadic coordinates `(re + i im) / 2^k`.
struct Dyadic {
    re: BigInt,
    im: BigInt,
    k: usize,
}

impl Dyadic {
    fn from_complex(z: Complex64) -> Self {
        let m = z.re.abs().max(z.im.abs());
        if m == 0.0 || !m.is_finite() {
            return Dyadic {
                re: BigInt::zero(),
                im: BigInt::zero(),
                k: 0,
            };
        }
        let e = m.log2().floor() as i64;
        let k = (62 - e).max(0) as usize;
        let quant = |x: f64| BigInt::from(ldexp(x, k as i64).round() as i128);
        Dyadic {
            re: quant(z.re),
            im: quant(z.im),
            k,
        }
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(
            ratio_to_f64(&self.re, &(BigInt::from(1) << self.k)),
            ratio_to_f64(&self.im, &(BigInt::from(1) << self.k)),
        )
    }
}

/// `p(z) / p'(z)` at a dyadic point with at least 60 correct bits.
///
/// Horner runs in fixed point with `frac` fractional bits; each step
/// truncates, so the error is at most `4 (d + 1)^2 max(1, |z|)^d` units in
/// the last place. The precision doubles until both values clear that bound.
fn accurate_newton(p: &IntPoly, z: &Dyadic) -> Complex64 {
    let d = p.degree();
    let radius_bits = ((z.re.bits().max(z.im.bits()) + 1) as i64 - z.k as i64).max(0) as u64;
    let error_bits = 3 + 2 * (64 - (d as u64 + 1).leading_zeros() as u64) + d as u64 * radius_bits;
    let exact_frac = z.k * d;
    let mut frac = 128usize.min(exact_frac);
    loop {
        let (pr, pi, dr, di) = fixed_horner(p, z, frac);
        let exact = frac >= exact_frac;
        let p_bits = pr.bits().max(pi.bits());
        let d_bits = dr.bits().max(di.bits());
        if exact || (p_bits >= error_bits + 60 && d_bits >= error_bits + 60) {
            let nr = &pr * &dr + &pi * &di;
            let ni = &pi * &dr - &pr * &di;
            let dd = &dr * &dr + &di * &di;
            if dd.is_zero() {
                return Complex64::new(f64::NAN, f64::NAN);
            }
            return Complex64::new(ratio_to_f64(&nr, &dd), ratio_to_f64(&ni, &dd));
        }
        frac = (frac * 2).min(exact_frac);
    }
}

/// An upper bound for `d |p(z) / p'(z)|`, so that the disc of that radius
/// around the dyadic rounding of `z` holds a root of `p`. The Horner
/// truncation error is carried through; `None` if `p'(z)` cannot be
/// separated from zero.
pub(crate) fn inclusion_radius(p: &IntPoly, z: Complex64) -> Option<(Complex64, f64)> {
    let d = p.degree();
    if d == 0 {
        return None;
    }
    let point = Dyadic::from_complex(z);
    let radius_bits = ((point.re.bits().max(point.im.bits()) + 1) as i64 - point.k as i64).max(0) as u64;
    let error_bits = 3 + 2 * (64 - (d as u64 + 1).leading_zeros() as u64) + d as u64 * radius_bits;
    let mut frac = 128usize;
    for _ in 0..8 {
        let (pr, pi, dr, di) = fixed_horner(p, &point, frac);
        if dr.bits().max(di.bits()) >= error_bits + 60 {
            // each component is off by at most 2^error_bits units
            let slack = BigInt::from(2u8) << error_bits;
            let scale = dr.abs().max(di.abs());
            let f = |x: &BigInt| ratio_to_f64(x, &scale);
            let pn = f(&pr).hypot(f(&pi));
            let dn = f(&dr).hypot(f(&di));
            let e = f(&slack);
            if dn <= e || !pn.is_finite() {
                return None;
            }
            let r = d as f64 * (pn + e) / (dn - e);
            return Some((point.to_complex(), r * (1.0 + 1e-9)));
        }
        frac *= 2;
    }
    None
}

/// `p(z)` and `p'(z)` scaled by `2^frac`, truncated after every step.
fn fixed_horner(p: &IntPoly, z: &Dyadic, frac: usize) -> (BigInt, BigInt, BigInt, BigInt) {
    let d = p.degree();
    let c = &p.c;
    let (a, b, k) = (&z.re, &z.im, z.k);
    let mut pr = &c[d] << frac;
    let mut pi = BigInt::zero();
    let mut dr = BigInt::zero();
    let mut di = BigInt::zero();
    for j in (0..d).rev() {
        let ndr = ((&dr * a - &di * b) >> k) + &pr;
        let ndi = ((&dr * b + &di * a) >> k) + &pi;
        dr = ndr;
        di = ndi;
        let npr = ((&pr * a - &pi * b) >> k) + (&c[j] << frac);
        let npi = (&pr * b + &pi * a) >> k;
        pr = npr;
        pi = npi;
    }
    (pr, pi, dr, di)
}

fn polish(p: &IntPoly, z: &mut [Complex64], cfg: &AberthConfig) -> Result<()> {
    let mut converged = vec![false; z.len()];
    for _ in 0..cfg.max_iterations {
        let mut all = true;
        for i in 0..z.len() {
            if converged[i] {
                continue;
            }
            let point = Dyadic::from_complex(z[i]);
            z[i] = point.to_complex();
            let corr = aberth_step(z, i, accurate_newton(p, &point));
            if !corr.re.is_finite() || !corr.im.is_finite() {
                // coincident iterates: nudge apart
                z[i] += Complex64::new(1e-8, 1e-8) * z[i].norm().max(1.0);
                all = false;
                continue;
            }
            z[i] -= corr;
            if corr.norm() <= cfg.tolerance * z[i].norm() {
                converged[i] = true;
            } else {
                all = false;
            }
        }
        if all {
            return Ok(());
        }
    }
    let best = z.iter().map(|r| r.norm()).fold(0.0, f64::max);
    Err(Error::NoConvergence {
        iterations: cfg.max_iterations,
        best,
    })
}

/// Eigenvalues of the companion matrix of the monic float polynomial.
fn companion_roots(a: &[f64]) -> Option<Vec<Complex64>> {
    let d = a.len() - 1;
    let lead = a[d];
    if lead == 0.0 {
        return None;
    }
    let mut m = DMatrix::<f64>::zeros(d, d);
    for i in 1..d {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..d {
        let v = -a[i] / lead;
        if !v.is_finite() {
            return None;
        }
        m[(i, d - 1)] = v;
    }
    let eig = m.complex_eigenvalues();
    let roots: Vec<Complex64> = eig.iter().map(|c| Complex64::new(c.re, c.im)).collect();
    roots
        .iter()
        .all(|r| r.re.is_finite() && r.im.is_finite())
        .then_some(roots)
}
