//! Recursion output against the brute-force rebuild of the energy
//! polynomials (see `common::brute_force_rows`): the two derivations share
//! nothing but the eigenvalue equation, so exact agreement pins down every
//! recursion coefficient, for cubic and quartic master functions alike.

mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qes_core::model::{solve_constraints, MasterSpec, XInterval};
use qes_core::rational::{rfrac, rint};
use qes_core::recursion::generate;
use qes_core::{catalog, Endpoint, RatPoly};

#[test]
fn catalog_rows_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(20_260_815);
    for entry in catalog::all() {
        for _ in 0..3 {
            let n = rng.gen_range(1..=5);
            let params = catalog::sample_params(entry, &mut rng, n);
            let problem = catalog::instantiate(entry.id, &params, n)
                .unwrap_or_else(|e| panic!("{}: {e}", entry.id));
            let m_max = n + 4;
            let seq = generate(&problem, m_max).expect("recursion");
            let rows = common::brute_force_rows(&problem, m_max);
            for (m, row) in rows.iter().enumerate() {
                assert_eq!(
                    &seq.p(m as i64),
                    row,
                    "{} n={n} params={params:?}: P_{m} differs",
                    entry.id
                );
            }
        }
    }
}

#[test]
fn custom_cubic_spec_matches_brute_force() {
    // A = x(1-x)(3-x), F hand-picked with small rational coefficients
    let a = RatPoly::new(vec![rint(0), rint(3), rint(-4), rint(1)]);
    let f = RatPoly::new(vec![rfrac(3, 2), rfrac(-1, 3), rfrac(2, 5)]);
    let interval = XInterval::new(Endpoint::Finite(rint(0)), Endpoint::Finite(rint(1)));
    let spec = MasterSpec::new(a, f, interval);
    for n in 0..=6 {
        let problem = solve_constraints(&spec, n).expect("valid cubic spec");
        let m_max = n + 4;
        let seq = generate(&problem, m_max).expect("recursion");
        let rows = common::brute_force_rows(&problem, m_max);
        for (m, row) in rows.iter().enumerate() {
            assert_eq!(&seq.p(m as i64), row, "cubic n={n}: P_{m} differs");
        }
    }
}

#[test]
fn custom_quartic_spec_matches_brute_force() {
    // deg A = 4 with F given through degree 2; solve_constraints pins F⁽³⁾
    let a = RatPoly::new(vec![rint(0), rint(2), rfrac(1, 2), rint(0), rfrac(1, 3)]);
    let f = RatPoly::new(vec![rint(1), rfrac(-2, 3), rfrac(1, 4)]);
    let interval = XInterval::new(Endpoint::Finite(rint(0)), Endpoint::PosInf);
    let spec = MasterSpec::new(a, f, interval);
    for n in 1..=5 {
        let problem = solve_constraints(&spec, n).expect("valid quartic spec");
        assert_eq!(problem.spec.order(), 4);
        let m_max = n + 4;
        let seq = generate(&problem, m_max).expect("recursion");
        let rows = common::brute_force_rows(&problem, m_max);
        for (m, row) in rows.iter().enumerate() {
            assert_eq!(&seq.p(m as i64), row, "quartic n={n}: P_{m} differs");
        }
    }
}
