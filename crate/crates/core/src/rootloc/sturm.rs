//! Sturm chains over the integers and bisection-based isolation.

use super::intpoly::IntPoly;
use super::IsolatingInterval;
use crate::exact::Rational;

/// `p, p', -rem(p, p'), ...` up to positive factors.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(p: &IntPoly) -> Self {
        let mut chain = vec![p.clone()];
        let d = p.derivative();
        if !d.is_zero() {
            chain.push(d);
        }
        while chain.len() >= 2 {
            let len = chain.len();
            let r = chain[len - 2].pseudo_remainder(&chain[len - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(IntPoly {
                c: r.c.into_iter().map(|x| -x).collect(),
            });
        }
        SturmChain { chain }
    }

    pub fn polys(&self) -> &[IntPoly] {
        &self.chain
    }

    /// The last element, a multiple of `gcd(p, p')`.
    pub fn gcd_part(&self) -> &IntPoly {
        self.chain.last().unwrap()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd_part().degree() == 0
    }

    fn variations(signs: impl Iterator<Item = i8>) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn variations_at(&self, x: &Rational) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at(x)))
    }

    pub fn variations_at_infinity(&self, negative: bool) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at_infinity(negative)))
    }

    /// Distinct real roots of a squarefree polynomial.
    pub fn total_real_roots(&self) -> usize {
        self.variations_at_infinity(true) - self.variations_at_infinity(false)
    }

    /// Distinct roots in `(a, b]`.
    pub fn count_in(&self, a: &Rational, b: &Rational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }

    /// Isolates every real root of the squarefree head of the chain.
    pub fn isolate(&self) -> Vec<IsolatingInterval> {
        let p = &self.chain[0];
        if p.degree() == 0 {
            return Vec::new();
        }
        let bound = p.cauchy_bound();
        let lo = -bound.clone();
        let hi = bound;
        let total = self.count_in(&lo, &hi);
        let mut out = Vec::with_capacity(total);
        let mut stack = vec![(lo, hi, total)];
        while let Some((lo, hi, count)) = stack.pop() {
            match count {
                0 => {}
                1 => out.push(IsolatingInterval::open(p, lo, hi)),
                _ => {
                    let mid = split_point(p, &lo, &hi);
                    let left = self.count_in(&lo, &mid);
                    stack.push((mid.clone(), hi, count - left));
                    stack.push((lo, mid, left));
                }
            }
        }
        out.sort_by(|a, b| a.lo.cmp(&b.lo));
        out
    }
}

/// A point strictly inside `(lo, hi)` where `p` does not vanish, near the middle.
pub(crate) fn split_point(p: &IntPoly, lo: &Rational, hi: &Rational) -> Rational {
    let width = hi - lo;
    let two = Rational::from_integer(2.into());
    let mid = lo + &width / &two;
    if p.sign_at(&mid) != 0 {
        return mid;
    }
    // at most deg p points can be roots
    let mut denom = Rational::from_integer(4.into());
    loop {
        for k in [1, 3] {
            let x = lo + &width * Rational::from_integer(k.into()) / &denom;
            if p.sign_at(&x) != 0 {
                return x;
            }
        }
        denom *= &two;
    }
}
