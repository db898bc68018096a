//! Matrix-restriction oracle for the algebraic spectrum.
//!
//! L restricted to its invariant subspace span{1, x, …, xⁿ} is an
//! (n+1)×(n+1) rational matrix in the monomial basis. Its characteristic
//! polynomial must equal the monic normalization of P_{n+1}(E) exactly —
//! an independent route to the same spectrum that shares no code with the
//! energy recursion beyond `apply_operator`.

use num::traits::Zero;

use crate::error::QesError;
use crate::model::{apply_operator, QesProblem};
use crate::poly::RatPoly;
use crate::rational::{rint, Rational};
use crate::recursion::{assert_truncation, EnergySequence};

/// L restricted to span{1, x, …, xⁿ}; `entries[i][j]` is the coefficient
/// of xⁱ in L(xʲ).
#[derive(Clone, Debug, PartialEq)]
pub struct RestrictedMatrix {
    pub entries: Vec<Vec<Rational>>,
}

impl RestrictedMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn trace(&self) -> Rational {
        (0..self.size()).map(|i| self.entries[i][i].clone()).sum()
    }
}

/// Builds the restriction of L column by column. Truncation is asserted
/// first; a column of degree > n afterwards would mean the invariance
/// conditions were solved inconsistently.
pub fn build_matrix(problem: &QesProblem) -> Result<RestrictedMatrix, QesError> {
    assert_truncation(problem)?;
    let n = problem.n;
    let mut entries = vec![vec![Rational::zero(); n + 1]; n + 1];
    for j in 0..=n {
        let image = apply_operator(problem, &RatPoly::monomial(j, rint(1)));
        if image.degree().unwrap_or(0) > n {
            return Err(QesError::ConstraintViolation(format!(
                "L(x^{j}) has degree {} > n = {n}: subspace is not invariant",
                image.degree().unwrap_or(0)
            )));
        }
        for (i, row) in entries.iter_mut().enumerate() {
            row[j] = image.coeff(i);
        }
    }
    let mat = RestrictedMatrix { entries };
    debug_assert!(bandwidth_ok(&mat, problem.spec.order()));
    Ok(mat)
}

/// Structural bandwidth bound: L(xʲ) only reaches degrees j−2 … j+k−2.
pub fn bandwidth_ok(mat: &RestrictedMatrix, k: usize) -> bool {
    let n = mat.size();
    (0..n).all(|i| {
        (0..n).all(|j| {
            mat.entries[i][j].is_zero() || (i + 2 >= j && i <= j + k.saturating_sub(2))
        })
    })
}

fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    let mut out = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for (l, b_row) in b.iter().enumerate() {
            let factor = &a[i][l];
            if factor.is_zero() {
                continue;
            }
            for j in 0..n {
                if !b_row[j].is_zero() {
                    out[i][j] = &out[i][j] + factor * &b_row[j];
                }
            }
        }
    }
    out
}

/// Monic characteristic polynomial det(E·I − M) by the Faddeev–LeVerrier
/// iteration — exact rational arithmetic, no elimination pivoting.
pub fn char_poly(mat: &RestrictedMatrix) -> RatPoly {
    let n = mat.size();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = rint(1);
    // aux starts as the identity; after step k it is the k-th auxiliary
    // matrix M_k = A·M_{k−1} + c_{n−k+1}·I
    let mut aux: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { rint(1) } else { Rational::zero() })
                .collect()
        })
        .collect();
    for k in 1..=n {
        let product = mat_mul(&mat.entries, &aux);
        let trace: Rational = (0..n).map(|i| product[i][i].clone()).sum();
        coeffs[n - k] = -trace / rint(k as i64);
        aux = product;
        for (i, row) in aux.iter_mut().enumerate() {
            row[i] = &row[i] + &coeffs[n - k];
        }
    }
    RatPoly::new(coeffs)
}

/// The two computations of the critical polynomial, compared exactly.
#[derive(Clone, Debug)]
pub struct OracleReport {
    /// det(E·I − M) from the matrix restriction.
    pub char_poly: RatPoly,
    /// P_{n+1} normalized monic.
    pub critical_monic: RatPoly,
    pub equal: bool,
}

/// Cross-validates the recursion against the matrix restriction: the monic
/// characteristic polynomial must equal monic P_{n+1} as an exact rational
/// identity. Divergence is fatal — it means one of the two derivations is
/// wrong.
pub fn oracle_compare(
    problem: &QesProblem,
    seq: &EnergySequence,
) -> Result<OracleReport, QesError> {
    if seq.m_max() < problem.n + 1 {
        return Err(QesError::InvalidInput(format!(
            "sequence reaches m = {} but the oracle needs P_{}",
            seq.m_max(),
            problem.n + 1
        )));
    }
    let mat = build_matrix(problem)?;
    let cp = char_poly(&mat);
    let critical_monic = seq.polys[problem.n + 1].monic();
    if cp != critical_monic {
        return Err(QesError::OracleDivergence {
            char_poly: cp.to_string_var("E"),
            critical: critical_monic.to_string_var("E"),
        });
    }
    Ok(OracleReport { char_poly: cp, critical_monic, equal: true })
}
