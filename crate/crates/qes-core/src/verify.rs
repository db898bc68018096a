//! Randomized property suite over the catalog.
//!
//! For every selected catalog entry the suite runs a fixed number of
//! trials. Each trial draws a level `n ∈ 1..=8` and a valid parameter set
//! from the entry's sampler, instantiates the operator, and then checks
//! every independently verifiable property of the construction:
//!
//! * the truncation identities hold exactly (the spectrum is algebraic),
//! * the subspace-invariance rows have zero residual,
//! * the displayed constraint formulas for B⁽¹⁾, B⁽²⁾ and the weight
//!   constraint on F⁽³⁾ are reproduced,
//! * the recursion output equals the tabulated closed forms (cubic
//!   directly, quartic through the fixed mirror-plus-defect mapping),
//! * `P_{n+1+N} = P_{n+1}·Q_N` with exactly zero remainder up to N = 6,
//! * the restricted-matrix characteristic polynomial equals monic P_{n+1},
//! * eigen-residuals stay below the tolerance-scaled bound,
//! * root counts are exactly (0, 1, …, n) (oscillation ordering) — asserted
//!   only for entries whose parameter conditions force the symmetry
//!   boundary term to vanish (`ordered_spectrum`); for the two marginal
//!   families any deviation is reported as a note instead,
//! * under even parity the spectrum is symmetric about zero.
//!
//! Per entry it additionally runs the display-row selfcheck, the
//! α-elimination weight identity (order-4 rows), and — where a coordinate
//! map exists — the (dx/dt)² = A identity and the agreement between the
//! chain-rule potential and its transcribed closed form.
//!
//! Endpoint weight decay and root interlacing are *reported* as notes,
//! never asserted: the first involves limits at infinite endpoints, the
//! second is classical behavior the construction does not formally
//! guarantee.
//!
//! Trials fan out across worker threads (capped by the `QES_THREADS`
//! environment variable); every trial derives its own RNG seed from
//! (suite seed, entry id, trial index), so results are byte-identical
//! regardless of thread count, and the report orders them by index.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use num::traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalog::{self, CatalogEntry, ParamMap};
use crate::error::QesError;
use crate::matrix::oracle_compare;
use crate::model::invariance_conditions;
use crate::potential;
use crate::rational::{format_rational, rfrac};
use crate::recursion::{
    self, closed_form_oracle, generate, parity_check, quartic_oracle_defect, DEFAULT_N_EXTRA,
};
use crate::roots::real_roots;
use crate::spectrum::{factorization_check, oscillation_check, solve_spectrum};

/// Suite parameters.
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    /// Randomized trials per entry.
    pub trials: usize,
    /// Master seed; per-trial seeds are derived from it.
    pub seed: u64,
    /// Worker-thread cap; `None` uses the available parallelism. The
    /// `QES_THREADS` environment variable caps the result either way.
    pub threads: Option<usize>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { trials: 25, seed: 7, threads: None }
    }
}

/// One named property verdict.
#[derive(Clone, Debug)]
pub struct PropertyCheck {
    pub property: &'static str,
    pub pass: bool,
    /// Failure diagnostics; empty when passing.
    pub detail: String,
}

impl PropertyCheck {
    fn ok(property: &'static str) -> Self {
        PropertyCheck { property, pass: true, detail: String::new() }
    }

    fn fail(property: &'static str, detail: String) -> Self {
        PropertyCheck { property, pass: false, detail }
    }

    fn of(property: &'static str, pass: bool, detail: String) -> Self {
        if pass {
            PropertyCheck::ok(property)
        } else {
            PropertyCheck::fail(property, detail)
        }
    }
}

/// Outcome of one randomized trial.
#[derive(Clone, Debug)]
pub struct TrialRecord {
    pub entry: String,
    pub trial: usize,
    pub n: usize,
    pub params: ParamMap,
    /// Draws discarded because the spectrum was degenerate or non-real.
    pub resamples: usize,
    pub checks: Vec<PropertyCheck>,
    /// Informational observations (decay flags, interlacing anomalies).
    pub notes: Vec<String>,
}

/// Per-entry one-time checks (no randomness beyond the derived seed).
#[derive(Clone, Debug)]
pub struct EntryRecord {
    pub entry: String,
    pub checks: Vec<PropertyCheck>,
}

/// Aggregated suite result.
#[derive(Clone, Debug)]
pub struct VerifySummary {
    pub seed: u64,
    pub trials: usize,
    pub entry_checks: Vec<EntryRecord>,
    /// Trial outcomes ordered by (entry index, trial index).
    pub results: Vec<TrialRecord>,
    pub notes: Vec<String>,
    pub pass: bool,
    /// `entry [trial N]: property` of the first failing check.
    pub first_failure: Option<String>,
}

/// Stable per-trial seed: FNV-1a over the entry id folded with the master
/// seed and the trial index, so scheduling cannot affect the draws.
fn subseed(seed: u64, id: &str, trial: usize) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64 ^ seed.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    for b in id.bytes() {
        h = (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3);
    }
    h ^ (trial as u64).wrapping_mul(0x2545_f491_4f6c_dd1d)
}

fn worker_count(config: &VerifyConfig, tasks: usize) -> usize {
    let mut w = config.threads.unwrap_or_else(|| {
        std::thread::available_parallelism().map_or(1, |p| p.get())
    });
    if let Some(cap) = std::env::var("QES_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
    {
        w = w.min(cap.max(1));
    }
    w.clamp(1, tasks.max(1))
}

/// Runs the suite over one entry (`scope = Some(id)`) or the whole catalog.
pub fn run_verify(scope: Option<&str>, config: &VerifyConfig) -> Result<VerifySummary, QesError> {
    let entries: Vec<&'static CatalogEntry> = match scope {
        Some(id) => vec![catalog::lookup(id)?],
        None => catalog::all().iter().collect(),
    };

    let entry_checks: Vec<EntryRecord> = entries
        .iter()
        .map(|entry| EntryRecord {
            entry: entry.id.to_string(),
            checks: entry_level_checks(entry, config.seed),
        })
        .collect();

    let tasks = entries.len() * config.trials;
    let slots: Vec<Mutex<Option<TrialRecord>>> = (0..tasks).map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let workers = worker_count(config, tasks);

    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let t = next.fetch_add(1, Ordering::Relaxed);
                if t >= tasks {
                    break;
                }
                let entry = entries[t / config.trials];
                let trial = t % config.trials;
                let record = run_trial(entry, trial, config.seed);
                *slots[t].lock().expect("result slot") = Some(record);
            });
        }
    });

    let results: Vec<TrialRecord> = slots
        .into_iter()
        .map(|slot| slot.into_inner().expect("result slot").expect("trial ran"))
        .collect();

    let mut notes: Vec<String> = Vec::new();
    for record in &results {
        for note in &record.notes {
            notes.push(format!("{} [trial {}]: {}", record.entry, record.trial, note));
        }
    }

    let first_failure = entry_checks
        .iter()
        .flat_map(|rec| {
            rec.checks
                .iter()
                .filter(|c| !c.pass)
                .map(move |c| format!("{}: {}", rec.entry, c.property))
        })
        .chain(results.iter().flat_map(|rec| {
            rec.checks
                .iter()
                .filter(|c| !c.pass)
                .map(move |c| format!("{} [trial {}]: {}", rec.entry, rec.trial, c.property))
        }))
        .next();

    Ok(VerifySummary {
        seed: config.seed,
        trials: config.trials,
        pass: first_failure.is_none(),
        first_failure,
        entry_checks,
        results,
        notes,
    })
}

// ---------------------------------------------------------------------------
// Entry-level checks.
// ---------------------------------------------------------------------------

fn entry_level_checks(entry: &'static CatalogEntry, seed: u64) -> Vec<PropertyCheck> {
    let mut checks = Vec::new();

    match catalog::table_selfcheck(entry.id) {
        Ok(report) => checks.push(PropertyCheck::of(
            "table-selfcheck",
            report.pass,
            report.mismatches.join("; "),
        )),
        Err(e) => checks.push(PropertyCheck::fail("table-selfcheck", e.to_string())),
    }

    if entry.alpha_rule.is_some() {
        checks.push(weight_identity_check(entry, seed));
    }

    if let Some(map) = potential::coord_map_for(entry) {
        checks.push(coordinate_identity_check(entry, &map, seed));
        if entry.has_closed_form_v {
            checks.push(potential_agreement_check(entry, &map, seed));
        }
    }

    checks
}

/// Order-4 weight identity: under the α-elimination rule, F⁽³⁾ =
/// −A⁽⁴⁾(n−1)/2 and B⁽²⁾ = −A⁽⁴⁾n(n−1)/12 hold identically, making the
/// 4-term recursion tail vanish at n and n+1. Checked exactly at 10
/// random rational parameter points.
fn weight_identity_check(entry: &'static CatalogEntry, seed: u64) -> PropertyCheck {
    let mut rng = ChaCha8Rng::seed_from_u64(subseed(seed, entry.id, 1_000_003));
    for point in 0..10 {
        let n = rng.gen_range(1..=8usize);
        let params = catalog::sample_params(entry, &mut rng, n);
        let problem = match catalog::instantiate(entry.id, &params, n) {
            Ok(p) => p,
            Err(e) => {
                return PropertyCheck::fail(
                    "weight-identity",
                    format!("point {point}: instantiation failed: {e}"),
                )
            }
        };
        let a4 = problem.spec.a_deriv0(4);
        let f3 = problem.spec.f_deriv0(3);
        let b2 = problem.b_deriv0(2);
        let nn = n as i64;
        let f3_ok = f3 == -(&a4 * &rfrac(nn - 1, 2));
        let b2_ok = b2 == -(&a4 * &rfrac(nn * (nn - 1), 12));
        let tail_ok = recursion::truncation_residuals(&problem)
            .iter()
            .all(|(_, r)| r.is_zero());
        if !(f3_ok && b2_ok && tail_ok) {
            return PropertyCheck::fail(
                "weight-identity",
                format!(
                    "point {point} (n = {n}): F3 ok = {f3_ok}, B2 ok = {b2_ok}, \
                     recursion tail zero = {tail_ok}"
                ),
            );
        }
    }
    PropertyCheck::ok("weight-identity")
}

/// Five-point derivative with one Richardson step.
fn stencil_derivative(f: &dyn Fn(f64) -> f64, t: f64, h: f64) -> f64 {
    let d = |h: f64| {
        (f(t - 2.0 * h) - 8.0 * f(t - h) + 8.0 * f(t + h) - f(t + 2.0 * h)) / (12.0 * h)
    };
    (16.0 * d(h / 2.0) - d(h)) / 15.0
}

fn map_window(map: &potential::CoordMap) -> (f64, f64) {
    match (map.t_lo.is_finite(), map.t_hi.is_finite()) {
        (true, true) => {
            let span = map.t_hi - map.t_lo;
            (map.t_lo + 0.1 * span, map.t_hi - 0.1 * span)
        }
        (true, false) => (map.t_lo + 0.2, map.t_lo + 3.2),
        (false, true) => (map.t_hi - 3.2, map.t_hi - 0.2),
        (false, false) => (-2.0, 2.0),
    }
}

/// (dx/dt)² = A(x(t)) at interior sample points, via a high-order stencil.
fn coordinate_identity_check(
    entry: &'static CatalogEntry,
    map: &potential::CoordMap,
    seed: u64,
) -> PropertyCheck {
    let mut rng = ChaCha8Rng::seed_from_u64(subseed(seed, entry.id, 2_000_029));
    let n = 2;
    let params = catalog::sample_params(entry, &mut rng, n);
    let problem = match catalog::instantiate(entry.id, &params, n) {
        Ok(p) => p,
        Err(e) => return PropertyCheck::fail("coordinate-map", e.to_string()),
    };
    let (w_lo, w_hi) = map_window(map);
    let xf = |t: f64| map.x_of_t(t);
    for j in 0..7 {
        let t = w_lo + (w_hi - w_lo) * (j as f64 + 0.5) / 7.0;
        let dxdt = stencil_derivative(&xf, t, 1e-3 * t.abs().max(1.0));
        let a_val = problem.spec.a.eval_f64(map.x_of_t(t));
        let rel = (dxdt * dxdt - a_val).abs() / a_val.abs().max(1e-30);
        if !(rel < potential::DX_DT_IDENTITY_TOL) {
            return PropertyCheck::fail(
                "coordinate-map",
                format!("(dx/dt)^2 deviates from A by {rel:.3e} at t = {t}"),
            );
        }
    }
    PropertyCheck::ok("coordinate-map")
}

/// Chain-rule potential versus the transcribed closed form at 10 interior
/// points (1e−9 relative).
fn potential_agreement_check(
    entry: &'static CatalogEntry,
    map: &potential::CoordMap,
    seed: u64,
) -> PropertyCheck {
    let mut rng = ChaCha8Rng::seed_from_u64(subseed(seed, entry.id, 3_000_017));
    let n = 2;
    let params = catalog::sample_params(entry, &mut rng, n);
    let problem = match catalog::instantiate(entry.id, &params, n) {
        Ok(p) => p,
        Err(e) => return PropertyCheck::fail("potential-agreement", e.to_string()),
    };
    let (w_lo, w_hi) = map_window(map);
    for j in 0..10 {
        let t = w_lo + (w_hi - w_lo) * (j as f64 + 0.5) / 10.0;
        let chain = match potential::potential_chain_rule(&problem, map, t) {
            Ok(v) => v,
            Err(e) => {
                return PropertyCheck::fail(
                    "potential-agreement",
                    format!("chain rule failed at t = {t}: {e}"),
                )
            }
        };
        let closed = match potential::closed_form_v(entry.id, &problem.spec.params, n, t) {
            Ok(v) => v,
            Err(e) => {
                return PropertyCheck::fail(
                    "potential-agreement",
                    format!("closed form failed at t = {t}: {e}"),
                )
            }
        };
        if (chain - closed).abs() > 1e-9 * (1.0 + closed.abs()) {
            return PropertyCheck::fail(
                "potential-agreement",
                format!("chain {chain:.12e} vs closed {closed:.12e} at t = {t}"),
            );
        }
    }
    PropertyCheck::ok("potential-agreement")
}

// ---------------------------------------------------------------------------
// Per-trial checks.
// ---------------------------------------------------------------------------

fn run_trial(entry: &'static CatalogEntry, trial: usize, seed: u64) -> TrialRecord {
    let mut rng = ChaCha8Rng::seed_from_u64(subseed(seed, entry.id, trial));
    let mut resamples = 0usize;
    loop {
        let n = rng.gen_range(1..=8usize);
        let params = catalog::sample_params(entry, &mut rng, n);
        match trial_checks(entry, n, &params) {
            Ok((checks, notes)) => {
                return TrialRecord {
                    entry: entry.id.to_string(),
                    trial,
                    n,
                    params,
                    resamples,
                    checks,
                    notes,
                }
            }
            Err(
                QesError::DegenerateSpectrum { .. } | QesError::NonRealSpectrum { .. },
            ) if resamples < 100 => {
                resamples += 1;
            }
            Err(e) => {
                return TrialRecord {
                    entry: entry.id.to_string(),
                    trial,
                    n,
                    params,
                    resamples,
                    checks: vec![PropertyCheck::fail("pipeline", e.to_string())],
                    notes: Vec::new(),
                }
            }
        }
    }
}

fn trial_checks(
    entry: &'static CatalogEntry,
    n: usize,
    params: &ParamMap,
) -> Result<(Vec<PropertyCheck>, Vec<String>), QesError> {
    let mut checks = Vec::new();
    let mut notes = Vec::new();
    let problem = catalog::instantiate(entry.id, params, n)?;
    let k = problem.spec.order();

    // truncation identities: without them nothing downstream is meaningful
    match recursion::assert_truncation(&problem) {
        Ok(()) => checks.push(PropertyCheck::ok("truncation")),
        Err(e) => {
            checks.push(PropertyCheck::fail("truncation", e.to_string()));
            return Ok((checks, notes));
        }
    }

    // invariance rows, residual-checked exactly
    if (3..=4).contains(&k) {
        let rows = invariance_conditions(k, n)?;
        let bad: Vec<String> = rows
            .iter()
            .filter_map(|row| {
                let r = row.residual(&problem.spec.a, &problem.spec.f, &problem.b);
                (!r.is_zero()).then(|| {
                    format!("(l={}, i={}) -> {}", row.l, row.i, format_rational(&r))
                })
            })
            .collect();
        checks.push(PropertyCheck::of("invariance-rows", bad.is_empty(), bad.join("; ")));
    }

    checks.push(constraint_identity_check(&problem, n, k));

    let seq = generate(&problem, n + 1 + DEFAULT_N_EXTRA)?;

    checks.push(closed_form_check(&problem, &seq, k)?);

    match factorization_check(&seq, n, DEFAULT_N_EXTRA) {
        Ok(_) => checks.push(PropertyCheck::ok("factorization")),
        Err(e @ QesError::FactorizationFailure { .. }) => {
            checks.push(PropertyCheck::fail("factorization", e.to_string()))
        }
        Err(e) => return Err(e),
    }

    match oracle_compare(&problem, &seq) {
        Ok(_) => checks.push(PropertyCheck::ok("matrix-oracle")),
        Err(e @ QesError::OracleDivergence { .. }) => {
            checks.push(PropertyCheck::fail("matrix-oracle", e.to_string()))
        }
        Err(e) => return Err(e),
    }

    let spectrum = solve_spectrum(&seq, n, 1e-12)?;

    let residual_bad: Vec<String> = (0..=n)
        .filter_map(|i| {
            let max_coeff = spectrum.coeff_table[i]
                .iter()
                .fold(0.0f64, |m, c| m.max(c.abs()));
            let bound = 1e-8 * (1.0 + spectrum.eigenvalues[i].abs()) * max_coeff;
            (spectrum.residual_norms[i] >= bound).then(|| {
                format!(
                    "level {i}: residual {:.3e} >= bound {bound:.3e}",
                    spectrum.residual_norms[i]
                )
            })
        })
        .collect();
    checks.push(PropertyCheck::of(
        "eigen-residual",
        residual_bad.is_empty(),
        residual_bad.join("; "),
    ));

    let counts_ok = spectrum.root_counts.iter().enumerate().all(|(i, c)| *c == i);
    if entry.ordered_spectrum {
        let osc = oscillation_check(&spectrum, &problem.spec.interval);
        checks.push(PropertyCheck::of(
            "oscillation",
            counts_ok && osc.pass,
            format!(
                "exact root counts {:?}, float sampling counts {:?}",
                spectrum.root_counts, osc.counts
            ),
        ));
    } else if !counts_ok {
        // the family's weight tail is a fixed power of x, the symmetry
        // boundary term stays O(1), and node ordering is not a theorem
        // there — report the observed pattern instead of asserting it
        notes.push(format!(
            "node ordering not guaranteed for this family; observed root counts {:?}",
            spectrum.root_counts
        ));
    }

    if parity_check(&seq) == Some(true) {
        let symmetric = (0..=n).all(|i| {
            (spectrum.eigenvalues[i] + spectrum.eigenvalues[n - i]).abs() < 1e-10
        });
        checks.push(PropertyCheck::of(
            "parity-symmetry",
            symmetric,
            format!("eigenvalues {:?}", spectrum.eigenvalues),
        ));
    }

    if let Some(note) = endpoint_decay_note(entry, &problem) {
        notes.push(note);
    }
    if let Some(note) = interlacing_note(&seq, &spectrum.eigenvalues, n) {
        notes.push(note);
    }

    Ok((checks, notes))
}

/// The displayed n-dependent constraint formulas, reproduced exactly from
/// the instantiated polynomials.
fn constraint_identity_check(
    problem: &crate::model::QesProblem,
    n: usize,
    k: usize,
) -> PropertyCheck {
    let nn = n as i64;
    let a3 = problem.spec.a_deriv0(3);
    let f2 = problem.spec.f_deriv0(2);
    let b1_expected = rfrac(nn, 2) * (&a3 * &rfrac(nn - 1, 3) + &f2);
    let mut bad = Vec::new();
    if problem.b_deriv0(1) != b1_expected {
        bad.push(format!(
            "B1 = {} but the subspace conditions give {}",
            format_rational(&problem.b_deriv0(1)),
            format_rational(&b1_expected)
        ));
    }
    if k == 4 {
        let a4 = problem.spec.a_deriv0(4);
        let b2_expected = -(&a4 * &rfrac(nn * (nn - 1), 12));
        let f3_expected = -(&a4 * &rfrac(nn - 1, 2));
        if problem.b_deriv0(2) != b2_expected {
            bad.push(format!(
                "B2 = {} but the subspace conditions give {}",
                format_rational(&problem.b_deriv0(2)),
                format_rational(&b2_expected)
            ));
        }
        if problem.spec.f_deriv0(3) != f3_expected {
            bad.push(format!(
                "F3 = {} but the weight constraint gives {}",
                format_rational(&problem.spec.f_deriv0(3)),
                format_rational(&f3_expected)
            ));
        }
    }
    PropertyCheck::of("constraint-identities", bad.is_empty(), bad.join("; "))
}

/// Recursion output versus the tabulated closed forms: cubic families
/// compare P₁..P₅ directly; quartic families go through the fixed mapping
/// `tabulated_m = −Pₘ|_{B→−B} + defect_m` (m = 1..=4).
fn closed_form_check(
    problem: &crate::model::QesProblem,
    seq: &crate::recursion::EnergySequence,
    k: usize,
) -> Result<PropertyCheck, QesError> {
    if k <= 3 {
        for m in 1..=5usize {
            let tabulated = closed_form_oracle(problem, m)?;
            if tabulated != seq.p(m as i64) {
                return Ok(PropertyCheck::fail(
                    "closed-form-oracle",
                    format!("tabulated P_{m} differs from the recursion output"),
                ));
            }
        }
    } else {
        let mut mirrored = problem.clone();
        mirrored.b = -&mirrored.b;
        let mseq = generate(&mirrored, 4)?;
        for m in 1..=4usize {
            let mapped = &(-&mseq.p(m as i64)) + &quartic_oracle_defect(problem, m)?;
            if closed_form_oracle(problem, m)? != mapped {
                return Ok(PropertyCheck::fail(
                    "closed-form-oracle",
                    format!("tabulated P_{m} differs from the mirror-mapped recursion"),
                ));
            }
        }
    }
    Ok(PropertyCheck::ok("closed-form-oracle"))
}

/// Samples log(A·W) along a ladder approaching each endpoint; reports a
/// note when the product fails to decay (never asserts — infinite-endpoint
/// decay is a limit statement).
fn endpoint_decay_note(
    entry: &'static CatalogEntry,
    problem: &crate::model::QesProblem,
) -> Option<String> {
    use crate::model::Endpoint;
    let interval = &problem.spec.interval;
    let log_aw = |x: f64| -> f64 {
        problem.spec.a.eval_f64(x).abs().ln()
            + catalog::weight_log(entry, &problem.spec.params, x)
    };
    let mut flags = Vec::new();

    let mut check_ladder = |label: &str, ladder: Vec<f64>| {
        let vals: Vec<f64> = ladder.iter().map(|x| log_aw(*x)).collect();
        if vals.iter().any(|v| v.is_nan()) {
            flags.push(format!("{label}: log(AW) undefined on the approach ladder"));
            return;
        }
        if !vals.windows(2).all(|w| w[1] < w[0]) {
            flags.push(format!(
                "{label}: log(AW) not monotonically decreasing on approach ({vals:?})"
            ));
        }
    };

    let width = match (&interval.lo, &interval.hi) {
        (Endpoint::Finite(a), Endpoint::Finite(b)) => {
            crate::rational::to_f64(b) - crate::rational::to_f64(a)
        }
        _ => 1.0,
    };
    match &interval.lo {
        Endpoint::Finite(a) => {
            let a = crate::rational::to_f64(a);
            let ladder = (2..=6).map(|k| a + width * 10f64.powi(-k)).collect();
            check_ladder("lower endpoint", ladder);
        }
        Endpoint::NegInf => {
            let ladder = (1..=5).map(|k| -(10f64.powf(0.5 * k as f64))).collect();
            check_ladder("lower endpoint", ladder);
        }
        Endpoint::PosInf => {}
    }
    match &interval.hi {
        Endpoint::Finite(b) => {
            let b = crate::rational::to_f64(b);
            let ladder = (2..=6).map(|k| b - width * 10f64.powi(-k)).collect();
            check_ladder("upper endpoint", ladder);
        }
        Endpoint::PosInf => {
            let ladder = (1..=5).map(|k| 10f64.powf(0.5 * k as f64)).collect();
            check_ladder("upper endpoint", ladder);
        }
        Endpoint::NegInf => {}
    }

    (!flags.is_empty()).then(|| format!("endpoint decay: {}", flags.join("; ")))
}

/// Classical interlacing of the roots of Pₙ between those of P_{n+1};
/// reported, never asserted.
fn interlacing_note(
    seq: &crate::recursion::EnergySequence,
    critical_roots: &[f64],
    n: usize,
) -> Option<String> {
    let pn = seq.p(n as i64);
    let inner = match real_roots(&pn, 1e-10) {
        Ok(roots) => roots,
        Err(_) => return Some("interlacing: P_n has no computable root set".to_string()),
    };
    if inner.len() != n || inner.iter().any(|(_, mult)| *mult != 1) {
        return Some(format!(
            "interlacing: P_n has {} simple real roots, expected {n}",
            inner.len()
        ));
    }
    let scale = critical_roots
        .iter()
        .fold(1.0f64, |m, r| m.max(r.abs()));
    let ok = inner.iter().enumerate().all(|(i, (r, _))| {
        critical_roots[i] - 1e-9 * scale < *r && *r < critical_roots[i + 1] + 1e-9 * scale
    });
    (!ok).then(|| {
        format!(
            "interlacing violated: roots of P_n {:?} against P_(n+1) roots {:?}",
            inner.iter().map(|(r, _)| *r).collect::<Vec<_>>(),
            critical_roots
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_entry_suite_passes() {
        let config = VerifyConfig { trials: 3, seed: 7, threads: Some(2) };
        let summary = run_verify(Some("T1.x"), &config).unwrap();
        assert!(summary.pass, "failure: {:?}", summary.first_failure);
        assert_eq!(summary.results.len(), 3);
        assert_eq!(summary.entry_checks.len(), 1);
        let names: Vec<&str> = summary.results[0]
            .checks
            .iter()
            .map(|c| c.property)
            .collect();
        for expected in [
            "truncation",
            "invariance-rows",
            "constraint-identities",
            "closed-form-oracle",
            "factorization",
            "matrix-oracle",
            "eigen-residual",
            "oscillation",
        ] {
            assert!(names.contains(&expected), "missing {expected}: {names:?}");
        }
    }

    #[test]
    fn quartic_entry_includes_weight_identity() {
        let config = VerifyConfig { trials: 2, seed: 7, threads: Some(1) };
        let summary = run_verify(Some("T2.x4"), &config).unwrap();
        assert!(summary.pass, "failure: {:?}", summary.first_failure);
        let entry_names: Vec<&str> = summary.entry_checks[0]
            .checks
            .iter()
            .map(|c| c.property)
            .collect();
        assert!(entry_names.contains(&"table-selfcheck"));
        assert!(entry_names.contains(&"weight-identity"));
        assert!(entry_names.contains(&"coordinate-map"));
        assert!(entry_names.contains(&"potential-agreement"));
    }

    #[test]
    fn unknown_scope_is_rejected() {
        let config = VerifyConfig::default();
        assert!(matches!(
            run_verify(Some("nope"), &config),
            Err(QesError::UnknownModel(_))
        ));
    }

    #[test]
    fn results_are_ordered_and_thread_independent() {
        let mut config = VerifyConfig { trials: 2, seed: 11, threads: Some(1) };
        let serial = run_verify(Some("T1.x2"), &config).unwrap();
        config.threads = Some(4);
        let parallel = run_verify(Some("T1.x2"), &config).unwrap();
        assert_eq!(serial.results.len(), parallel.results.len());
        for (a, b) in serial.results.iter().zip(parallel.results.iter()) {
            assert_eq!(a.trial, b.trial);
            assert_eq!(a.n, b.n);
            assert_eq!(a.params, b.params);
            assert_eq!(a.checks.len(), b.checks.len());
        }
    }

    #[test]
    fn full_catalog_smoke() {
        // one trial per entry keeps this fast; the acceptance suite runs 25
        let config = VerifyConfig { trials: 1, seed: 7, threads: None };
        let summary = run_verify(None, &config).unwrap();
        assert_eq!(summary.results.len(), catalog::all().len());
        for rec in &summary.results {
            for check in rec.checks.iter().filter(|c| !c.pass) {
                eprintln!(
                    "{} trial {} n={} params={:?}: {} -- {}",
                    rec.entry, rec.trial, rec.n, rec.params, check.property, check.detail
                );
            }
        }
        assert!(summary.pass, "failure: {:?}", summary.first_failure);
    }
}
