//! Algebraic spectrum extraction and its self-checks.
//!
//! On a solved problem, P_{n+1}(E) divides every later polynomial of the
//! sequence, so its n+1 roots are eigenvalues of L with polynomial
//! eigenfunctions ψᵢ(x) = Σ_{m=0}^{n} Pₘ(Eᵢ) xᵐ. This module extracts the
//! roots with exact Sturm isolation plus dyadic bisection, tabulates the
//! eigenfunction coefficients, bounds the operator residual of each
//! eigenpair, and counts eigenfunction sign changes — the oscillation
//! pattern 0, 1, …, n expected of a ground-state-ordered spectrum.
//!
//! The factorization P_{n+1+N} = P_{n+1}·Q_N is verified by exact division;
//! a nonzero remainder indicates inconsistent constraint data upstream.

use crate::error::QesError;
use crate::model::{apply_operator, Endpoint, XInterval};
use crate::poly::RatPoly;
use crate::rational::{from_f64, rint, simplest_in, to_f64, Rational};
use crate::recursion::{assert_truncation, EnergySequence};
use crate::roots::{
    cauchy_bound, count_sign_changes_in, isolate_roots, real_roots, refine_bracket,
};

/// The algebraic sector of the spectrum.
#[derive(Clone, Debug)]
pub struct SpectrumResult {
    /// The n+1 eigenvalues, sorted ascending.
    pub eigenvalues: Vec<f64>,
    /// Dyadic rational refinements the float eigenvalues were derived from.
    pub eigenvalues_exact: Vec<Rational>,
    /// Row i lists the eigenfunction coefficients P₀(Eᵢ) … Pₙ(Eᵢ);
    /// entry [i][0] is always 1.
    pub coeff_table: Vec<Vec<f64>>,
    /// Max-magnitude coefficient of L(ψᵢ) − Eᵢψᵢ, computed exactly at the
    /// refined eigenvalue and scaled only on conversion to float.
    pub residual_norms: Vec<f64>,
    /// Sign changes of ψᵢ strictly inside the problem interval, counted by
    /// exact Sturm sequences on the exactly evaluated row (infinite
    /// endpoints truncated beyond every root of ψᵢ). The eigenvalue
    /// enclosure is deepened until the row is stable across it.
    pub root_counts: Vec<usize>,
}

/// Exact-division evidence that P_{n+1} divides its successors.
#[derive(Clone, Debug)]
pub struct FactorizationReport {
    pub n_max: usize,
    /// quotients[N] = Q_N with P_{n+1+N} = P_{n+1}·Q_N; deg Q_N = N.
    pub quotients: Vec<RatPoly>,
    pub all_exact: bool,
}

/// Surrogate endpoint used when the interval is unbounded on one side:
/// 10·(1 + Cauchy root bound of ψ), guaranteed beyond every real root.
fn truncated_endpoint(ep: &Endpoint, psi: &RatPoly) -> Rational {
    let surrogate = rint(10) * (rint(1) + cauchy_bound(psi));
    match ep {
        Endpoint::Finite(r) => r.clone(),
        Endpoint::NegInf => -surrogate,
        Endpoint::PosInf => surrogate,
    }
}

/// Extracts the n+1 real eigenvalues of the algebraic sector as roots of
/// P_{n+1}, refined until successive brackets are narrower than `tol`.
pub fn solve_spectrum(
    seq: &EnergySequence,
    n: usize,
    tol: f64,
) -> Result<SpectrumResult, QesError> {
    if n != seq.problem.n {
        return Err(QesError::InvalidInput(format!(
            "level mismatch: sequence was built for n = {}, spectrum requested for n = {n}",
            seq.problem.n
        )));
    }
    if seq.m_max() < n + 1 {
        return Err(QesError::InvalidInput(format!(
            "sequence only reaches m = {}, need the critical polynomial P_{}",
            seq.m_max(),
            n + 1
        )));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(QesError::InvalidInput(format!("tolerance {tol} must be positive")));
    }
    assert_truncation(&seq.problem)?;

    let critical = seq.critical();
    for (factor, mult) in critical.squarefree_decomposition() {
        if mult >= 2 && factor.degree().unwrap_or(0) >= 1 {
            let root = real_roots(&factor, 1e-9)?
                .first()
                .map_or(f64::NAN, |(r, _)| *r);
            return Err(QesError::DegenerateSpectrum { root, multiplicity: mult });
        }
    }

    let brackets = isolate_roots(critical);
    if brackets.len() < n + 1 {
        return Err(QesError::NonRealSpectrum {
            real_count: brackets.len(),
            expected: n + 1,
        });
    }
    let tol_r = from_f64(tol)?;
    let interval = &seq.problem.spec.interval;
    let mut exact = Vec::with_capacity(n + 1);
    let mut eigenvalues = Vec::with_capacity(n + 1);
    let mut coeff_table = Vec::with_capacity(n + 1);
    let mut residual_norms = Vec::with_capacity(n + 1);
    let mut root_counts = Vec::with_capacity(n + 1);
    for bracket in brackets {
        let mut bracket = refine_bracket(critical, bracket, &tol_r);
        // The row entries Pₘ(E) can have enormous E-derivatives (the
        // polynomials oscillate violently between eigenvalues), so the
        // requested eigenvalue tolerance may not pin the eigenfunction
        // down. Deepen the enclosure until the exactly evaluated row is
        // stable across it to well below f64 resolution, shrinking by the
        // linearized factor the observed gap calls for.
        for _ in 0..8 {
            let width = &bracket.1 - &bracket.0;
            if width == rint(0) {
                break;
            }
            let row_lo = eval_row(seq, n, &bracket.0);
            let row_hi = eval_row(seq, n, &bracket.1);
            let (gap, scale) = row_gap(&row_lo, &row_hi);
            if gap <= ROW_STABILITY_REL * scale {
                break;
            }
            let ratio = (ROW_STABILITY_REL * scale / gap * 1e-3).clamp(1e-60, 2f64.powi(-20));
            let deeper = width * from_f64(ratio)?;
            bracket = refine_bracket(critical, bracket, &deeper);
        }

        // any point of the stable enclosure represents the eigenvalue
        // equally well; the shallowest one keeps every exact computation
        // on the row as small as possible
        let e = simplest_in(&bracket.0, &bracket.1);
        let psi_coeffs = eval_row(seq, n, &e);
        coeff_table.push(psi_coeffs.iter().map(to_f64).collect());
        let psi = RatPoly::new(psi_coeffs.clone());

        let residual = &apply_operator(&seq.problem, &psi) - &psi.scale(&e);
        let norm = residual
            .coeffs()
            .iter()
            .map(|c| to_f64(c).abs())
            .fold(0.0, f64::max);
        residual_norms.push(norm);

        root_counts.push(interior_count(&psi_coeffs, interval));
        eigenvalues.push(to_f64(&e));
        exact.push(e);
    }

    Ok(SpectrumResult {
        eigenvalues,
        eigenvalues_exact: exact,
        coeff_table,
        residual_norms,
        root_counts,
    })
}

/// Eigenfunction coefficient row (P₀(e), …, Pₙ(e)), evaluated exactly.
fn eval_row(seq: &EnergySequence, n: usize, e: &Rational) -> Vec<Rational> {
    (0..=n).map(|m| seq.polys[m].eval(e)).collect()
}

/// Relative agreement (against the largest row entry) required of the two
/// bracket-end rows before the enclosure counts as stable.
const ROW_STABILITY_REL: f64 = 1e-14;

/// Largest entrywise difference of the two exactly evaluated rows, and the
/// magnitude of the largest entry to measure it against.
fn row_gap(row_lo: &[Rational], row_hi: &[Rational]) -> (f64, f64) {
    let scale = row_lo
        .iter()
        .chain(row_hi.iter())
        .map(|c| to_f64(c).abs())
        .fold(1.0, f64::max);
    let gap = row_lo
        .iter()
        .zip(row_hi.iter())
        .map(|(a, b)| to_f64(&(a - b)).abs())
        .fold(0.0, f64::max);
    (gap, scale)
}

/// Exact Sturm count of the row's sign changes strictly inside the
/// interval (infinite endpoints truncated beyond every root).
fn interior_count(row: &[Rational], interval: &XInterval) -> usize {
    let psi = RatPoly::new(row.to_vec());
    let lo = truncated_endpoint(&interval.lo, &psi);
    let hi = truncated_endpoint(&interval.hi, &psi);
    count_sign_changes_in(&psi, &lo, &hi)
}

/// Divides P_{n+1+N} by P_{n+1} for every 0 ≤ N ≤ n_max, demanding an
/// exactly zero remainder each time.
pub fn factorization_check(
    seq: &EnergySequence,
    n: usize,
    n_max: usize,
) -> Result<FactorizationReport, QesError> {
    if seq.m_max() < n + 1 + n_max {
        return Err(QesError::InvalidInput(format!(
            "sequence reaches m = {} but the factorization check needs m = {}",
            seq.m_max(),
            n + 1 + n_max
        )));
    }
    let critical = &seq.polys[n + 1];
    if critical.is_zero() {
        return Err(QesError::ZeroPolynomial("critical polynomial"));
    }
    let mut quotients = Vec::with_capacity(n_max + 1);
    for offset in 0..=n_max {
        let (q, r) = seq.polys[n + 1 + offset].divmod(critical)?;
        if !r.is_zero() {
            return Err(QesError::FactorizationFailure {
                n_offset: offset,
                remainder: r.to_string_var("E"),
            });
        }
        debug_assert_eq!(q.degree(), Some(offset));
        quotients.push(q);
    }
    Ok(FactorizationReport { n_max, quotients, all_exact: true })
}

/// Float-level recount of eigenfunction sign changes over a caller-chosen
/// interval, independent of the exact Sturm counts stored in the result.
#[derive(Clone, Debug)]
pub struct OscillationReport {
    /// Sign changes of ψᵢ found by dense sampling of the coefficient table.
    pub counts: Vec<usize>,
    /// True iff counts = (0, 1, …, n): each eigenfunction oscillates once
    /// more than its predecessor.
    pub pass: bool,
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

fn float_sign_changes(coeffs: &[f64], lo: f64, hi: f64) -> usize {
    if !(hi > lo) {
        return 0;
    }
    let samples = 512 * coeffs.len().max(2);
    let width = hi - lo;
    let (lo, hi) = (lo + width * 1e-9, hi - width * 1e-9);
    let mut xs: Vec<f64> = (0..=samples)
        .map(|i| lo + (hi - lo) * (i as f64) / (samples as f64))
        .collect();
    // Log-spaced ladders from each endpoint and the midpoint: roots can
    // cluster geometrically near a finite endpoint (half-line families)
    // where a uniform grid over the full root bound is far too coarse.
    let mid = 0.5 * (lo + hi);
    for k in 0..=384 {
        let off = width * 10f64.powf(-(k as f64) / 32.0);
        for x in [lo + off, hi - off, mid + off, mid - off] {
            if x > lo && x < hi {
                xs.push(x);
            }
        }
    }
    xs.sort_by(|a, b| a.partial_cmp(b).expect("finite samples"));
    let mut changes = 0;
    let mut last = 0i8;
    for &x in &xs {
        let v = horner(coeffs, x);
        let sign = if v > 0.0 {
            1
        } else if v < 0.0 {
            -1
        } else {
            0
        };
        if sign != 0 {
            if last != 0 && sign != last {
                changes += 1;
            }
            last = sign;
        }
    }
    changes
}

/// Checks the oscillation pattern: the i-th eigenfunction (eigenvalues
/// ascending) must change sign exactly i times strictly inside the
/// interval. Infinite endpoints are truncated beyond every root via a
/// float Cauchy-type bound on the coefficient row.
pub fn oscillation_check(result: &SpectrumResult, interval: &XInterval) -> OscillationReport {
    let mut counts = Vec::with_capacity(result.coeff_table.len());
    for row in &result.coeff_table {
        let lead = row
            .iter()
            .rposition(|c| *c != 0.0)
            .map_or(1.0, |i| row[i].abs());
        let bound = 10.0
            * (1.0
                + 1.0
                + row.iter().map(|c| c.abs() / lead).fold(0.0, f64::max));
        let lo = match &interval.lo {
            Endpoint::Finite(r) => to_f64(r),
            Endpoint::NegInf => -bound,
            Endpoint::PosInf => bound,
        };
        let hi = match &interval.hi {
            Endpoint::Finite(r) => to_f64(r),
            Endpoint::PosInf => bound,
            Endpoint::NegInf => -bound,
        };
        counts.push(float_sign_changes(row, lo, hi));
    }
    let pass = counts.iter().enumerate().all(|(i, c)| *c == i);
    OscillationReport { counts, pass }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{solve_constraints, MasterSpec, QesProblem};
    use crate::rational::rfrac;
    use crate::recursion::generate;

    fn poly(coeffs: &[i64]) -> RatPoly {
        RatPoly::from_i64(coeffs)
    }

    fn half_line() -> XInterval {
        XInterval::new(Endpoint::Finite(rint(0)), Endpoint::PosInf)
    }

    fn bender_dunne(n: usize) -> QesProblem {
        let spec = MasterSpec::new(poly(&[0, 1]), poly(&[2, 0, -2]), half_line());
        solve_constraints(&spec, n).unwrap()
    }

    #[test]
    fn classic_spectrum_to_high_precision() {
        let seq = generate(&bender_dunne(3), 4).unwrap();
        let result = solve_spectrum(&seq, 3, 1e-12).unwrap();
        let expected = [
            -7.398556193860121,
            -2.2937668247435345,
            2.2937668247435345,
            7.398556193860121,
        ];
        assert_eq!(result.eigenvalues.len(), 4);
        for (got, want) in result.eigenvalues.iter().zip(expected) {
            assert!((got - want).abs() < 1e-11, "eigenvalue {got} vs {want}");
        }
        // coefficient row at the lowest eigenvalue; the P₃ entry is
        // positive (E₀/4 − E₀³/144 > 0 for E₀ < 0)
        let row = &result.coeff_table[0];
        let known = [1.0, 3.699278097, 3.561552813, 0.962769686];
        for (got, want) in row.iter().zip(known) {
            assert!((got - want).abs() < 1e-8, "table entry {got} vs {want}");
        }
        assert_eq!(result.root_counts, vec![0, 1, 2, 3]);
    }

    #[test]
    fn eigen_residuals_scale_with_tolerance() {
        let seq = generate(&bender_dunne(3), 4).unwrap();
        let result = solve_spectrum(&seq, 3, 1e-12).unwrap();
        for i in 0..4 {
            let max_coeff = result.coeff_table[i]
                .iter()
                .map(|c| c.abs())
                .fold(0.0, f64::max);
            let bound = 1e-8 * (1.0 + result.eigenvalues[i].abs()) * max_coeff;
            assert!(
                result.residual_norms[i] < bound,
                "residual {} exceeds {}",
                result.residual_norms[i],
                bound
            );
        }
    }

    #[test]
    fn level_zero_has_the_zero_eigenvalue() {
        let prob = bender_dunne(0);
        let seq = generate(&prob, 1).unwrap();
        let result = solve_spectrum(&seq, 0, 1e-12).unwrap();
        assert_eq!(result.eigenvalues, vec![0.0]);
        assert_eq!(result.coeff_table, vec![vec![1.0]]);
        assert_eq!(result.root_counts, vec![0]);
        assert_eq!(result.residual_norms, vec![0.0]);
    }

    #[test]
    fn degenerate_and_complex_spectra_are_rejected() {
        let prob = bender_dunne(1);
        let mut seq = generate(&prob, 2).unwrap();
        // overwrite the critical polynomial with (E−1)²
        seq.polys[2] = poly(&[1, -2, 1]);
        match solve_spectrum(&seq, 1, 1e-10) {
            Err(QesError::DegenerateSpectrum { root, multiplicity }) => {
                assert!((root - 1.0).abs() < 1e-6);
                assert_eq!(multiplicity, 2);
            }
            other => panic!("expected degenerate-spectrum error, got {other:?}"),
        }
        let mut seq = generate(&prob, 2).unwrap();
        seq.polys[2] = poly(&[1, 0, 1]); // E² + 1: no real roots
        match solve_spectrum(&seq, 1, 1e-10) {
            Err(QesError::NonRealSpectrum { real_count, expected }) => {
                assert_eq!((real_count, expected), (0, 2));
            }
            other => panic!("expected non-real-spectrum error, got {other:?}"),
        }
    }

    #[test]
    fn factorization_holds_to_depth_six() {
        let seq = generate(&bender_dunne(3), 3 + 1 + 6).unwrap();
        let report = factorization_check(&seq, 3, 6).unwrap();
        assert!(report.all_exact);
        assert_eq!(report.quotients.len(), 7);
        assert_eq!(report.quotients[0], RatPoly::one());
        for (n_offset, q) in report.quotients.iter().enumerate() {
            assert_eq!(q.degree(), Some(n_offset));
        }
        // too-short sequence is a usage error, not a failure
        assert!(factorization_check(&seq, 3, 7).is_err());
    }

    #[test]
    fn perturbed_potential_breaks_factorization() {
        let mut bad = bender_dunne(3);
        bad.b = poly(&[0, -5]); // true B is −6x
        let seq = generate(&bad, 3 + 1 + 6).unwrap();
        match factorization_check(&seq, 3, 6) {
            Err(QesError::FactorizationFailure { n_offset, remainder }) => {
                assert!(n_offset >= 1, "self-division cannot fail");
                assert!(!remainder.is_empty());
            }
            other => panic!("expected factorization failure, got {other:?}"),
        }
        // and the spectrum path refuses it outright at truncation
        let err = solve_spectrum(&seq, 3, 1e-10);
        assert!(matches!(err, Err(QesError::TruncationViolated(_))));
    }

    #[test]
    fn oscillation_pattern_on_bounded_interval() {
        // A = x(1−x) on (0,1): F = (α+1) − (α+β+γ+2)x + γx² with
        // α = 1, β = 1, γ = −3
        let spec = MasterSpec::new(
            poly(&[0, 1, -1]),
            poly(&[2, -1, -3]),
            XInterval::new(Endpoint::Finite(rint(0)), Endpoint::Finite(rint(1))),
        );
        let prob = solve_constraints(&spec, 2).unwrap();
        let seq = generate(&prob, 3).unwrap();
        let result = solve_spectrum(&seq, 2, 1e-12).unwrap();
        assert_eq!(result.root_counts, vec![0, 1, 2]);
        let report = oscillation_check(&result, &prob.spec.interval);
        assert!(report.pass);
        assert_eq!(report.counts, vec![0, 1, 2]);

        // the float recount agrees with the exact Sturm counts on the
        // classic half-line instance as well
        let seq = generate(&bender_dunne(3), 4).unwrap();
        let result = solve_spectrum(&seq, 3, 1e-12).unwrap();
        let report = oscillation_check(&result, &half_line());
        assert!(report.pass);
        assert_eq!(report.counts, result.root_counts);
    }

    #[test]
    fn spectrum_is_symmetric_under_parity() {
        let seq = generate(&bender_dunne(5), 6).unwrap();
        let result = solve_spectrum(&seq, 5, 1e-12).unwrap();
        for (i, e) in result.eigenvalues.iter().enumerate() {
            let mirror = result.eigenvalues[result.eigenvalues.len() - 1 - i];
            assert!((e + mirror).abs() < 1e-10);
        }
    }

    #[test]
    fn rejects_mismatched_level_and_bad_tolerance() {
        let seq = generate(&bender_dunne(2), 3).unwrap();
        assert!(solve_spectrum(&seq, 3, 1e-10).is_err());
        assert!(solve_spectrum(&seq, 2, 0.0).is_err());
        assert!(solve_spectrum(&seq, 2, f64::NAN).is_err());
    }

    #[test]
    fn surrogate_endpoint_covers_all_roots() {
        let psi = poly(&[-100, 0, 1]); // roots ±10
        let lo = truncated_endpoint(&Endpoint::NegInf, &psi);
        let hi = truncated_endpoint(&Endpoint::PosInf, &psi);
        assert!(to_f64(&lo) < -10.0 && to_f64(&hi) > 10.0);
        assert_eq!(
            truncated_endpoint(&Endpoint::Finite(rfrac(1, 2)), &psi),
            rfrac(1, 2)
        );
    }
}
