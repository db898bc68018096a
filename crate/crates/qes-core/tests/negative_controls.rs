//! Negative controls: every verification layer must actually be able to
//! fail. A perturbed B must break truncation and factorization, a foreign
//! sequence must trip the matrix oracle, and malformed master specs must be
//! rejected with the right error.

use qes_core::catalog;
use qes_core::matrix::oracle_compare;
use qes_core::model::{solve_constraints, MasterSpec, XInterval};
use qes_core::rational::{rfrac, rint};
use qes_core::recursion::{assert_truncation, generate};
use qes_core::spectrum::factorization_check;
use qes_core::{Endpoint, QesError, RatPoly};

fn classic_params() -> catalog::ParamMap {
    [
        ("alpha".to_string(), rint(1)),
        ("beta".to_string(), rint(0)),
        ("gamma".to_string(), rint(-1)),
    ]
    .into_iter()
    .collect()
}

#[test]
fn perturbed_b_breaks_truncation_and_factorization() {
    let mut problem = catalog::instantiate("T1.x", &classic_params(), 3).unwrap();
    assert!(assert_truncation(&problem).is_ok());

    problem.b = &problem.b + &RatPoly::x();
    match assert_truncation(&problem) {
        Err(QesError::TruncationViolated(_)) => {}
        other => panic!("expected truncation violation, got {other:?}"),
    }

    // the recursion itself still runs, but the factorization property is
    // gone: P_{n+1+N} no longer contains P_{n+1} as a factor
    let seq = generate(&problem, 10).expect("recursion runs regardless");
    match factorization_check(&seq, 3, 6) {
        Err(QesError::FactorizationFailure { .. }) => {}
        other => panic!("expected factorization failure, got {other:?}"),
    }
}

#[test]
fn foreign_sequence_trips_the_matrix_oracle() {
    let problem = catalog::instantiate("T1.x", &classic_params(), 3).unwrap();
    let mut other_params = classic_params();
    other_params.insert("gamma".to_string(), rint(-2));
    let other = catalog::instantiate("T1.x", &other_params, 3).unwrap();
    let foreign_seq = generate(&other, 4).unwrap();
    match oracle_compare(&problem, &foreign_seq) {
        Err(QesError::OracleDivergence { .. }) => {}
        other => panic!("expected oracle divergence, got {other:?}"),
    }
}

#[test]
fn malformed_specs_are_rejected() {
    let half_line = || XInterval::new(Endpoint::Finite(rint(0)), Endpoint::PosInf);

    // A(0) ≠ 0
    let spec = MasterSpec::new(
        RatPoly::new(vec![rint(1), rint(1)]),
        RatPoly::new(vec![rint(1)]),
        half_line(),
    );
    assert!(matches!(solve_constraints(&spec, 2), Err(QesError::DegenerateSpec(_))));

    // F(0) = 0 leaves P₁ undefined
    let spec = MasterSpec::new(
        RatPoly::x(),
        RatPoly::new(vec![rint(0), rint(1)]),
        half_line(),
    );
    assert!(matches!(solve_constraints(&spec, 2), Err(QesError::DegenerateSpec(_))));

    // deg A = 5 has no invariant subspace of this form
    let spec = MasterSpec::new(
        RatPoly::monomial(5, rint(1)) + RatPoly::x(),
        RatPoly::new(vec![rint(1)]),
        half_line(),
    );
    assert!(matches!(solve_constraints(&spec, 2), Err(QesError::DegenerateSpec(_))));
}

#[test]
fn conflicting_quartic_weight_is_infeasible() {
    // quartic A with an explicit F⁽³⁾ that contradicts the weight rule
    let a = RatPoly::new(vec![rint(0), rint(1), rint(0), rint(0), rint(1)]);
    let f = RatPoly::new(vec![rint(1), rint(0), rint(0), rfrac(7, 3)]);
    let spec = MasterSpec::new(a, f, XInterval::new(Endpoint::Finite(rint(0)), Endpoint::PosInf));
    match solve_constraints(&spec, 3) {
        Err(QesError::InfeasibleWeight { .. }) => {}
        other => panic!("expected infeasible weight, got {other:?}"),
    }
}

#[test]
fn out_of_range_catalog_parameters_are_rejected() {
    // T1.x2 requires beta < 0 and gamma < 0
    let params: catalog::ParamMap = [
        ("alpha".to_string(), rint(1)),
        ("beta".to_string(), rint(2)),
        ("gamma".to_string(), rint(-1)),
    ]
    .into_iter()
    .collect();
    match catalog::instantiate("T1.x2", &params, 3) {
        Err(QesError::ConstraintViolation(msg)) => {
            assert!(msg.contains("beta"), "message should name the parameter: {msg}");
        }
        other => panic!("expected constraint violation, got {other:?}"),
    }

    match catalog::instantiate("no-such-model", &params, 3) {
        Err(QesError::UnknownModel(_)) => {}
        other => panic!("expected unknown model, got {other:?}"),
    }
}
