//! Shared helpers for the integration tests.
//!
//! The centerpiece is a brute-force rebuild of the energy polynomials that
//! works directly on the eigenvalue equation with generic polynomial
//! convolutions — it never touches the recursion module's coefficient
//! formulas, so agreement between the two is a genuine cross-check.

use num::traits::Zero;
use qes_core::model::apply_operator;
use qes_core::rational::{rint, Rational};
use qes_core::{QesProblem, RatPoly};

/// Energy polynomials P₀ … P_m_max rebuilt from scratch.
///
/// Represent ψ = Σₘ Pₘ(E)·xᵐ as a vector of E-polynomials indexed by the
/// x-power. Collecting the x^m coefficient of (L − E)ψ = 0 gives one linear
/// equation whose highest unknown is P_{m+1} (A(0) = 0 keeps P_{m+2} out of
/// it), entering through the constant κ = [xᵐ] L(x^{m+1}). Solving each
/// equation in turn rebuilds the whole sequence.
pub fn brute_force_rows(problem: &QesProblem, m_max: usize) -> Vec<RatPoly> {
    let mut rows = vec![RatPoly::one()];
    for m in 0..m_max {
        let d = operator_minus_e(problem, &rows);
        let known = d.get(m).cloned().unwrap_or_else(RatPoly::zero);
        let kappa = apply_operator(problem, &RatPoly::monomial(m + 1, rint(1))).coeff(m);
        assert!(!kappa.is_zero(), "recursion breakdown rebuilding P_{}", m + 1);
        rows.push(known.scale(&(rint(-1) / kappa)));
    }
    rows
}

/// (L − E)ψ for ψ given as x-power-indexed E-polynomials.
fn operator_minus_e(problem: &QesProblem, psi: &[RatPoly]) -> Vec<RatPoly> {
    let second = mul_by_x_poly(&x_derivative(&x_derivative(psi)), &problem.spec.a);
    let first = mul_by_x_poly(&x_derivative(psi), &problem.spec.f);
    let zeroth = mul_by_x_poly(psi, &problem.b);
    let e_psi: Vec<RatPoly> = psi.iter().map(|p| p.shift_up(1)).collect();
    sub(&sub(&sub(&zeroth, &first), &second), &e_psi)
}

/// d/dx on x-power-indexed coefficients.
fn x_derivative(v: &[RatPoly]) -> Vec<RatPoly> {
    v.iter()
        .enumerate()
        .skip(1)
        .map(|(j, p)| p.scale(&rint(j as i64)))
        .collect()
}

/// Multiplication by an x-polynomial with rational coefficients.
fn mul_by_x_poly(v: &[RatPoly], p: &RatPoly) -> Vec<RatPoly> {
    let deg = p.degree().unwrap_or(0);
    let mut out = vec![RatPoly::zero(); v.len() + deg];
    for (i, entry) in v.iter().enumerate() {
        for j in 0..=deg {
            let c: Rational = p.coeff(j);
            if !c.is_zero() {
                out[i + j] = &out[i + j] + &entry.scale(&c);
            }
        }
    }
    out
}

fn sub(a: &[RatPoly], b: &[RatPoly]) -> Vec<RatPoly> {
    let mut out = vec![RatPoly::zero(); a.len().max(b.len())];
    for (i, p) in a.iter().enumerate() {
        out[i] = &out[i] + p;
    }
    for (i, p) in b.iter().enumerate() {
        out[i] = &out[i] - p;
    }
    out
}
