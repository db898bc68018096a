//! Coordinate maps and Schrödinger potentials: the defining ODE
//! (dx/dt)² = A(x(t)) for every shipped map, and chain-rule agreement with
//! every transcribed closed-form potential.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qes_core::potential::{
    closed_form_v, coord_map_for, potential_chain_rule, CoordMap, DX_DT_IDENTITY_TOL,
};
use qes_core::{catalog, RatPoly};

/// Five-point central stencil with one Richardson step.
fn stencil_derivative(map: &CoordMap, t: f64) -> f64 {
    let d = |h: f64| {
        (map.x_of_t(t - 2.0 * h) - 8.0 * map.x_of_t(t - h) + 8.0 * map.x_of_t(t + h)
            - map.x_of_t(t + 2.0 * h))
            / (12.0 * h)
    };
    let h = 1e-3 * t.abs().max(1.0);
    let coarse = d(h);
    let fine = d(h / 2.0);
    (16.0 * fine - coarse) / 15.0
}

/// Interior sample window of a map's t-domain.
fn window(map: &CoordMap) -> (f64, f64) {
    match (map.t_lo.is_finite(), map.t_hi.is_finite()) {
        (true, true) => {
            let w = map.t_hi - map.t_lo;
            (map.t_lo + 0.1 * w, map.t_hi - 0.1 * w)
        }
        (true, false) => (map.t_lo + 0.2, map.t_lo + 3.2),
        (false, true) => (map.t_hi - 3.2, map.t_hi - 0.2),
        (false, false) => (-2.0, 2.0),
    }
}

#[test]
fn maps_satisfy_the_defining_ode() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut seen = 0;
    for entry in catalog::all() {
        let Some(map) = coord_map_for(entry) else { continue };
        seen += 1;
        let a: RatPoly = {
            let n = 2;
            let params = catalog::sample_params(entry, &mut rng, n);
            catalog::instantiate(entry.id, &params, n).unwrap().spec.a
        };
        let (lo, hi) = window(&map);
        for _ in 0..9 {
            let t = rng.gen_range(lo..hi);
            let dx = stencil_derivative(&map, t);
            let want = a.eval_f64(map.x_of_t(t));
            let err = (dx * dx - want).abs() / (1.0 + want.abs());
            assert!(
                err < DX_DT_IDENTITY_TOL,
                "{} at t={t}: (dx/dt)^2 = {} vs A = {want}",
                entry.id,
                dx * dx
            );
        }
    }
    assert!(seen >= 10, "expected most catalog entries to carry a map, saw {seen}");
}

#[test]
fn chain_rule_agrees_with_closed_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    let mut seen = 0;
    for entry in catalog::all() {
        if !entry.has_closed_form_v {
            continue;
        }
        let map = coord_map_for(entry).expect("closed form implies a map");
        seen += 1;
        for n in [1usize, 3] {
            let params = catalog::sample_params(entry, &mut rng, n);
            let problem = catalog::instantiate(entry.id, &params, n).unwrap();
            let (lo, hi) = window(&map);
            for _ in 0..12 {
                let t = rng.gen_range(lo..hi);
                let chain = potential_chain_rule(&problem, &map, t).unwrap();
                let closed = closed_form_v(entry.id, &problem.spec.params, n, t).unwrap();
                assert!(
                    (chain - closed).abs() <= 1e-9 * (1.0 + closed.abs()),
                    "{} n={n} t={t}: chain {chain} vs closed {closed}",
                    entry.id
                );
            }
        }
    }
    assert!(seen >= 8, "expected several closed-form entries, saw {seen}");
}
