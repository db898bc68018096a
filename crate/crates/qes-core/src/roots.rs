//! Real-root isolation and refinement for exact polynomials.
//!
//! Sturm sequences isolate roots rigorously on the exact polynomial;
//! bisection then refines each bracket to the caller's tolerance. Repeated
//! roots are split off beforehand by Yun's square-free decomposition, so
//! closely spaced eigenvalues and genuine multiplicities are never confused.

use num::traits::{Signed, Zero};

use crate::error::QesError;
use crate::poly::RatPoly;
use crate::rational::{from_f64, rfrac, rint, to_f64, Rational};

/// Sturm chain of a (preferably square-free) polynomial, with each element
/// scaled by a positive constant to curb coefficient growth.
pub struct SturmChain {
    chain: Vec<RatPoly>,
}

fn sign(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl SturmChain {
    pub fn new(p: &RatPoly) -> Self {
        let mut chain = Vec::new();
        if p.is_zero() {
            return SturmChain { chain };
        }
        chain.push(p.primitive_scaled());
        let dp = p.derivative();
        if dp.is_zero() {
            return SturmChain { chain };
        }
        chain.push(dp.primitive_scaled());
        loop {
            let len = chain.len();
            let r = chain[len - 2].pseudo_rem_positive(&chain[len - 1]);
            if r.is_zero() {
                break;
            }
            chain.push((-&r).primitive_scaled());
            if chain.last().expect("just pushed").degree() == Some(0) {
                break;
            }
        }
        SturmChain { chain }
    }

    /// True when the chain bottomed out at a nonzero constant, i.e.
    /// gcd(p, p′) is constant and the input was square-free.
    fn certifies_squarefree(&self) -> bool {
        self.chain.last().and_then(RatPoly::degree) == Some(0)
    }

    /// Sign variations of the chain at a finite point.
    pub fn variations_at(&self, x: &Rational) -> usize {
        let signs = self.chain.iter().map(|p| sign(&p.eval(x)));
        count_variations(signs)
    }

    /// Sign variations at +∞ or −∞.
    pub fn variations_at_infinity(&self, positive: bool) -> usize {
        let signs = self.chain.iter().map(|p| {
            let s = p.leading().map_or(0, sign);
            if positive || p.degree().unwrap_or(0) % 2 == 0 {
                s
            } else {
                -s
            }
        });
        count_variations(signs)
    }

    /// Distinct real roots in the half-open interval (lo, hi].
    pub fn count_half_open(&self, lo: &Rational, hi: &Rational) -> usize {
        debug_assert!(lo <= hi);
        self.variations_at(lo).saturating_sub(self.variations_at(hi))
    }

    /// Distinct real roots on the whole line.
    pub fn count_all(&self) -> usize {
        self.variations_at_infinity(false)
            .saturating_sub(self.variations_at_infinity(true))
    }
}

fn count_variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut count = 0;
    let mut prev = 0i8;
    for s in signs {
        if s == 0 {
            continue;
        }
        if prev != 0 && s != prev {
            count += 1;
        }
        prev = s;
    }
    count
}

/// Cauchy bound: every real root r satisfies |r| ≤ bound.
pub fn cauchy_bound(p: &RatPoly) -> Rational {
    match p.degree() {
        None | Some(0) => rint(0),
        Some(d) => {
            let lead = p.coeff(d).abs();
            let mut max = Rational::zero();
            for i in 0..d {
                let q = p.coeff(i).abs() / &lead;
                if q > max {
                    max = q;
                }
            }
            rint(1) + max
        }
    }
}

/// Smallest power of two strictly greater than `bound` (dyadic, so later
/// bisection midpoints stay cheap).
fn dyadic_beyond(bound: &Rational) -> Rational {
    let mut b = rint(1);
    while &b <= bound {
        b = b * rint(2);
    }
    b
}

/// Moves inward from `x` by shrinking dyadic steps until `p` is nonzero
/// there; `scale` sets the first step size, `dir` the direction.
fn nudge_nonzero(p: &RatPoly, x: &Rational, scale: &Rational, dir: i8) -> Rational {
    if !p.eval(x).is_zero() {
        return x.clone();
    }
    let mut step = scale * rfrac(i64::from(dir), 4);
    for _ in 0..256 {
        let cand = x + &step;
        if !p.eval(&cand).is_zero() {
            return cand;
        }
        step = step * rfrac(1, 2);
    }
    unreachable!("a nonzero polynomial cannot vanish on a convergent sequence of points")
}

/// Open intervals, each containing exactly one root of a square-free input.
pub fn isolate_roots(p: &RatPoly) -> Vec<(Rational, Rational)> {
    let Some(deg) = p.degree() else { return Vec::new() };
    if deg == 0 {
        return Vec::new();
    }
    let chain = SturmChain::new(p);
    let bound = dyadic_beyond(&cauchy_bound(p));
    let lo = -&bound;
    let hi = bound.clone();
    let mut out = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone(), chain.variations_at(&lo), chain.variations_at(&hi))];
    while let Some((lo, hi, vlo, vhi)) = stack.pop() {
        let count = vlo.saturating_sub(vhi);
        match count {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let width = &hi - &lo;
                let mid = nudge_nonzero(p, &((&lo + &hi) * rfrac(1, 2)), &width, 1);
                let vmid = chain.variations_at(&mid);
                stack.push(((&mid).clone(), hi, vmid, vhi));
                stack.push((lo, mid, vlo, vmid));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Bisects a single-root bracket down to width ≤ tol, keeping the bracket.
/// A probe that hits the root exactly collapses the bracket to zero width.
pub fn refine_bracket(
    p: &RatPoly,
    bracket: (Rational, Rational),
    tol: &Rational,
) -> (Rational, Rational) {
    let (mut lo, mut hi) = bracket;
    let slo = sign(&p.eval(&lo));
    debug_assert_ne!(slo, 0, "bracket endpoints must not be roots");
    debug_assert_ne!(slo, sign(&p.eval(&hi)), "simple root must flip the sign");
    while &hi - &lo > *tol {
        let mid = (&lo + &hi) * rfrac(1, 2);
        match sign(&p.eval(&mid)) {
            0 => return (mid.clone(), mid),
            s if s == slo => lo = mid,
            _ => hi = mid,
        }
    }
    (lo, hi)
}

/// Bisects a single-root bracket down to width < tol; returns the midpoint
/// (or the root itself if a probe hits it exactly).
pub fn refine_root(p: &RatPoly, bracket: (Rational, Rational), tol: &Rational) -> Rational {
    let (lo, hi) = refine_bracket(p, bracket, tol);
    (&lo + &hi) * rfrac(1, 2)
}

/// All real roots with multiplicities, ascending, each refined so its
/// enclosing bracket is narrower than `tol`.
pub fn real_roots(p: &RatPoly, tol: f64) -> Result<Vec<(f64, usize)>, QesError> {
    if p.is_zero() {
        return Err(QesError::ZeroPolynomial("root set"));
    }
    if !(tol > 0.0) {
        return Err(QesError::InvalidInput(format!("tolerance must be positive, got {tol}")));
    }
    let tol_r = from_f64(tol)?;
    let mut found: Vec<(Rational, usize)> = Vec::new();
    for (factor, mult) in p.squarefree_decomposition() {
        for bracket in isolate_roots(&factor) {
            let root = refine_root(&factor, bracket, &tol_r);
            found.push((root, mult));
        }
    }
    found.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(found.into_iter().map(|(r, m)| (to_f64(&r), m)).collect())
}

/// Number of distinct real roots (square-free count over the whole line).
pub fn count_distinct_real_roots(p: &RatPoly) -> usize {
    if p.degree().unwrap_or(0) == 0 {
        return 0;
    }
    SturmChain::new(&p.squarefree_part()).count_all()
}

/// Sign changes of `p` strictly inside (lo, hi): distinct roots of odd
/// multiplicity. Endpoints that happen to be roots are stepped off by a
/// vanishing dyadic nudge (such roots are excluded, as "strictly inside"
/// requires).
pub fn count_sign_changes_in(p: &RatPoly, lo: &Rational, hi: &Rational) -> usize {
    if p.degree().unwrap_or(0) == 0 || lo >= hi {
        return 0;
    }
    let width = hi - lo;
    let scale = &width * rfrac(1, 1 << 20);

    // Generic case first: the chain itself certifies square-freeness (it
    // bottoms out at a nonzero constant), every root is then simple, and
    // the same chain already counts them — no separate decomposition.
    let chain = SturmChain::new(p);
    if chain.certifies_squarefree() {
        let a = nudge_nonzero(p, lo, &scale, 1);
        let b = nudge_nonzero(p, hi, &scale, -1);
        if a >= b {
            return 0;
        }
        return chain.count_half_open(&a, &b);
    }

    let mut total = 0;
    for (factor, mult) in p.squarefree_decomposition() {
        if mult % 2 == 0 || factor.degree().unwrap_or(0) == 0 {
            continue;
        }
        let a = nudge_nonzero(&factor, lo, &scale, 1);
        let b = nudge_nonzero(&factor, hi, &scale, -1);
        if a >= b {
            continue;
        }
        total += SturmChain::new(&factor).count_half_open(&a, &b);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rfrac;

    fn poly(coeffs: &[i64]) -> RatPoly {
        RatPoly::from_i64(coeffs)
    }

    #[test]
    fn counts_distinct_roots() {
        // (x−1)(x+2)x = x³ + x² − 2x
        let p = poly(&[0, -2, 1, 1]);
        assert_eq!(count_distinct_real_roots(&p), 3);
        // x² + 1
        assert_eq!(count_distinct_real_roots(&poly(&[1, 0, 1])), 0);
        // (x−1)² counts once
        assert_eq!(count_distinct_real_roots(&poly(&[1, -2, 1])), 1);
    }

    #[test]
    fn isolates_and_refines() {
        let p = poly(&[0, -2, 1, 1]);
        let roots = real_roots(&p, 1e-12).unwrap();
        let expect = [-2.0, 0.0, 1.0];
        assert_eq!(roots.len(), 3);
        for ((r, m), e) in roots.iter().zip(expect) {
            assert!((r - e).abs() < 1e-11, "{r} vs {e}");
            assert_eq!(*m, 1);
        }
    }

    #[test]
    fn reports_multiplicities() {
        // x²·(x−1)³
        let p = &poly(&[0, 0, 1]) * &(&(&poly(&[-1, 1]) * &poly(&[-1, 1])) * &poly(&[-1, 1]));
        let roots = real_roots(&p, 1e-10).unwrap();
        assert_eq!(roots.len(), 2);
        assert!((roots[0].0 - 0.0).abs() < 1e-9 && roots[0].1 == 2);
        assert!((roots[1].0 - 1.0).abs() < 1e-9 && roots[1].1 == 3);
        // E² → {0 with multiplicity 2}
        let sq = real_roots(&poly(&[0, 0, 1]), 1e-12).unwrap();
        assert_eq!(sq, vec![(0.0, 2)]);
    }

    #[test]
    fn critical_polynomial_roots() {
        // E⁴/2880 − E²/48 + 1/10, the n=3 critical polynomial of the
        // Bender–Dunne instance: roots ±√(30 ± 6√17)
        let p = RatPoly::new(vec![rfrac(1, 10), rint(0), rfrac(-1, 48), rint(0), rfrac(1, 2880)]);
        let roots = real_roots(&p, 1e-12).unwrap();
        let expect = [-7.398556193860121, -2.2937668247435345, 2.2937668247435345, 7.398556193860121];
        assert_eq!(roots.len(), 4);
        for ((r, _), e) in roots.iter().zip(expect) {
            assert!((r - e).abs() < 1e-11, "{r} vs {e}");
        }
    }

    #[test]
    fn close_roots_are_separated() {
        // (x − 1/1024)(x + 1/1024)(x − 1)
        let near_pos = RatPoly::new(vec![rfrac(-1, 1024), rint(1)]);
        let near_neg = RatPoly::new(vec![rfrac(1, 1024), rint(1)]);
        let p = &(&near_pos * &near_neg) * &poly(&[-1, 1]);
        let roots = real_roots(&p, 1e-15).unwrap();
        assert_eq!(roots.len(), 3);
        assert!((roots[0].0 + 1.0 / 1024.0).abs() < 1e-12);
        assert!((roots[1].0 - 1.0 / 1024.0).abs() < 1e-12);
    }

    #[test]
    fn sturm_count_matches_root_list() {
        let polys = [
            poly(&[-6, 11, -6, 1]), // (x−1)(x−2)(x−3)
            poly(&[1, 0, 1]),
            poly(&[0, 1]),
            poly(&[-1, 0, 0, 0, 1]), // x⁴−1: two real
        ];
        for p in polys {
            assert_eq!(count_distinct_real_roots(&p), real_roots(&p, 1e-9).unwrap().len());
        }
    }

    #[test]
    fn sign_change_counts_respect_open_interval() {
        // roots at 0, 1/2, 1: strictly inside (0,1) only 1/2 counts
        let p = &(&poly(&[0, 1]) * &poly(&[-1, 2])) * &poly(&[-1, 1]);
        assert_eq!(count_sign_changes_in(&p, &rint(0), &rint(1)), 1);
        // double root does not change sign
        let q = poly(&[1, -2, 1]); // (x−1)²
        assert_eq!(count_sign_changes_in(&q, &rint(0), &rint(2)), 0);
        // cube does
        let c = &q * &poly(&[-1, 1]);
        assert_eq!(count_sign_changes_in(&c, &rint(0), &rint(2)), 1);
    }

    #[test]
    fn zero_poly_and_bad_tol_are_errors() {
        assert!(real_roots(&RatPoly::zero(), 1e-9).is_err());
        assert!(real_roots(&poly(&[0, 1]), 0.0).is_err());
    }
}
