//! The built-in families of master functions.
//!
//! Two tiers are shipped as declarative data: tier 1 (`T1.*`) collects the
//! seven master functions of degree ≤ 3 (three-term energy recursion) and
//! tier 2 (`T2.*`) the seven of degree 4 (four-term recursion, derived α).
//! One extra family (`V.*`) exists only for its closed-form potential and
//! does not appear in the operator tables.
//!
//! Every entry records the weight W(x) as a product of elementary factors;
//! instantiation derives F = (AW)′/W analytically from those factors, so
//! the displayed drift and potential-term rows can be *checked* against
//! the derivation rather than trusted ([`table_selfcheck`]). Displayed
//! rows are transcriptions of the catalog tables with three typo
//! corrections (drift/B sign slips and one α-rule missing a parameter);
//! the weight-derived operator is always the ground truth.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::QesError;
use crate::model::{solve_constraints, Endpoint, MasterSpec, QesProblem, XInterval};
use crate::poly::RatPoly;
use crate::ratfunc::RatFunc;
use crate::rational::{from_f64, rfrac, rint, to_f64, Rational};

/// Parameter assignment by name.
pub type ParamMap = BTreeMap<String, Rational>;

/// One named parameter with its validity range (as displayed).
#[derive(Clone, Copy, Debug)]
pub struct ParamSpec {
    pub name: &'static str,
    pub range: &'static str,
}

/// Multiplicative building block of the master function.
#[derive(Clone, Copy, Debug)]
pub enum AFactor {
    X,
    OneMinusX,
    OnePlusX,
    OnePlusX2,
    /// (p − x) for a shape parameter p (e.g. "a").
    Shifted(&'static str),
}

/// Multiplicative building block of the weight function. Each factor
/// contributes an exact rational term to W′/W and a closed-form term to
/// ln W.
#[derive(Clone, Copy, Debug)]
pub enum WFactor {
    /// x^p
    XPow(&'static str),
    /// (1 − x)^p
    OneMinusXPow(&'static str),
    /// (1 + x)^p
    OnePlusXPow(&'static str),
    /// (s − x)^p for shape parameter s
    ShiftedPow(&'static str, &'static str),
    /// (1 + x²)^p
    OnePlusX2Pow(&'static str),
    /// e^{p·x + q·x²}
    ExpLinQuad(&'static str, &'static str),
    /// e^{sign·p·x}
    ExpLin(&'static str, i8),
    /// e^{sign·p / x^k}
    ExpInv(&'static str, i8, u32),
    /// e^{p / (1 − x)}
    ExpInvOneMinusX(&'static str),
    /// e^{p·arctan x}
    ExpArctan(&'static str),
}

/// x-interval of an entry.
#[derive(Clone, Copy, Debug)]
pub enum IntervalSpec {
    ZeroToInf,
    ZeroToOne,
    /// (0, a) for the shape parameter a.
    ZeroToShape,
}

/// Identifier of a closed-form coordinate map x(t) solving dx/dt = √A.
/// Evaluation lives in the potential module; entries without one lead to
/// elliptic-function maps and are omitted, as is their potential.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoordMapId {
    /// x = t²/4 on (0, ∞)
    QuarterSquare,
    /// x = eᵗ on (−∞, ∞)
    Exp,
    /// x = (1 + sin t)/2 on (−π/2, π/2)
    HalfOnePlusSin,
    /// x = 4/t² on (0, ∞)
    FourOverT2,
    /// x = 1 − tanh²(t/2) on (0, ∞)
    SechSqHalf,
    /// x = 1/t on (0, ∞)
    InvT,
    /// x = 4/(4 + t²) on (0, ∞)
    FourOver4PlusT2,
    /// x = −1/sinh t on (−∞, 0)
    NegInvSinh,
    /// x = eᵗ/(1 + eᵗ) on (−∞, ∞)
    Logistic,
    /// x = 1/cosh t on (0, ∞)
    Sech,
}

impl CoordMapId {
    pub fn label(&self) -> &'static str {
        match self {
            CoordMapId::QuarterSquare => "x(t) = t^2/4",
            CoordMapId::Exp => "x(t) = e^t",
            CoordMapId::HalfOnePlusSin => "x(t) = (1 + sin t)/2",
            CoordMapId::FourOverT2 => "x(t) = 4/t^2",
            CoordMapId::SechSqHalf => "x(t) = 1 - tanh^2(t/2)",
            CoordMapId::InvT => "x(t) = 1/t",
            CoordMapId::FourOver4PlusT2 => "x(t) = 4/(4 + t^2)",
            CoordMapId::NegInvSinh => "x(t) = -1/sinh t",
            CoordMapId::Logistic => "x(t) = e^t/(1 + e^t)",
            CoordMapId::Sech => "x(t) = 1/cosh t",
        }
    }
}

/// One catalog family.
pub struct CatalogEntry {
    pub id: &'static str,
    /// Operator order k (3 or 4).
    pub order: usize,
    pub a_display: &'static str,
    pub w_display: &'static str,
    pub a_factors: &'static [AFactor],
    pub w_factors: &'static [WFactor],
    pub interval: IntervalSpec,
    /// Free parameters (α is listed only where it is free; tier 2 derives it).
    pub params: &'static [ParamSpec],
    /// Tier-2 elimination rule α = −2(n+1) − Σ cᵢ·paramᵢ.
    pub alpha_rule: Option<&'static [(&'static str, i64)]>,
    /// Displayed d/dx coefficient of the operator (= −F), transcribed.
    pub drift_display: &'static str,
    /// Displayed potential term B(x), transcribed.
    pub b_display: &'static str,
    pub drift_form: fn(&ParamMap) -> RatPoly,
    pub b_form: fn(&ParamMap, usize) -> RatPoly,
    /// Exact inequality validation; Err names the violated constraint.
    pub validate: fn(&ParamMap, usize) -> Result<(), String>,
    /// Draws a valid parameter set for the given n.
    pub sample: fn(&mut ChaCha8Rng, usize) -> ParamMap,
    pub coord_map: Option<CoordMapId>,
    pub has_closed_form_v: bool,
    /// Whether the node-ordering identification (i-th eigenfunction ↔ i
    /// interior roots) is guaranteed for sampled parameters: true when the
    /// parameter conditions force A·W·(ψᵢψⱼ′ − ψᵢ′ψⱼ) → 0 at both
    /// endpoints, so the polynomial sector is a symmetric restriction in
    /// L²(W) and the classical oscillation theorem applies. False for the
    /// two order-4 families whose weight tail at infinity is the fixed
    /// power x^(−2n−2) no matter the parameters (the boundary term stays
    /// O(1), and ordering demonstrably fails for some valid draws).
    pub ordered_spectrum: bool,
    /// Entry exists only for its potential (skipped by operator listings).
    pub potential_only: bool,
    /// Degeneration note (deg A ≤ 2 entries turn exactly solvable at γ=0).
    pub note: Option<&'static str>,
}

// ---------------------------------------------------------------------------
// Parameter helpers.
// ---------------------------------------------------------------------------

fn g(p: &ParamMap, name: &str) -> Rational {
    p.get(name)
        .unwrap_or_else(|| panic!("parameter {name} missing after resolution"))
        .clone()
}

fn one() -> Rational {
    rint(1)
}

fn nr(n: usize) -> Rational {
    rint(n as i64)
}

/// Random rational strictly inside (lo, hi), with a small denominator.
pub fn rand_rational(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> Rational {
    debug_assert!(lo < hi);
    for den in [4i64, 8, 12, 16, 24, 48, 96, 480, 960] {
        let lo_i = (lo * den as f64).floor() as i64 + 1;
        let hi_i = (hi * den as f64).ceil() as i64 - 1;
        if lo_i <= hi_i {
            let num = rng.gen_range(lo_i..=hi_i);
            let r = rfrac(num, den);
            let rf = to_f64(&r);
            if rf > lo && rf < hi {
                return r;
            }
        }
    }
    from_f64((lo + hi) / 2.0).expect("midpoint of a finite range")
}

fn map_of(pairs: Vec<(&str, Rational)>) -> ParamMap {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

// ---------------------------------------------------------------------------
// Template expansion.
// ---------------------------------------------------------------------------

fn build_a(entry: &CatalogEntry, params: &ParamMap) -> RatPoly {
    let mut a = RatPoly::one();
    for factor in entry.a_factors {
        let f = match factor {
            AFactor::X => RatPoly::x(),
            AFactor::OneMinusX => RatPoly::new(vec![rint(1), rint(-1)]),
            AFactor::OnePlusX => RatPoly::new(vec![rint(1), rint(1)]),
            AFactor::OnePlusX2 => RatPoly::new(vec![rint(1), rint(0), rint(1)]),
            AFactor::Shifted(name) => RatPoly::new(vec![g(params, name), rint(-1)]),
        };
        a = &a * &f;
    }
    a
}

/// W′/W as an exact rational function of x.
fn weight_log_derivative(entry: &CatalogEntry, params: &ParamMap) -> Result<RatFunc, QesError> {
    let mut sum = RatFunc::zero();
    for factor in entry.w_factors {
        let term = match factor {
            WFactor::XPow(p) => {
                RatFunc::new(RatPoly::constant(g(params, p)), RatPoly::x())?
            }
            WFactor::OneMinusXPow(p) => RatFunc::new(
                RatPoly::constant(g(params, p)),
                RatPoly::new(vec![rint(-1), rint(1)]),
            )?,
            WFactor::OnePlusXPow(p) => RatFunc::new(
                RatPoly::constant(g(params, p)),
                RatPoly::new(vec![rint(1), rint(1)]),
            )?,
            WFactor::ShiftedPow(s, p) => RatFunc::new(
                RatPoly::constant(g(params, p)),
                RatPoly::new(vec![-g(params, s), rint(1)]),
            )?,
            WFactor::OnePlusX2Pow(p) => RatFunc::new(
                RatPoly::new(vec![rint(0), rint(2) * g(params, p)]),
                RatPoly::new(vec![rint(1), rint(0), rint(1)]),
            )?,
            WFactor::ExpLinQuad(p, q) => RatFunc::from_poly(RatPoly::new(vec![
                g(params, p),
                rint(2) * g(params, q),
            ])),
            WFactor::ExpLin(p, sign) => {
                RatFunc::from_poly(RatPoly::constant(rint(*sign as i64) * g(params, p)))
            }
            WFactor::ExpInv(p, sign, k) => RatFunc::new(
                RatPoly::constant(rint(-(*sign as i64) * (*k as i64)) * g(params, p)),
                RatPoly::monomial(*k as usize + 1, rint(1)),
            )?,
            WFactor::ExpInvOneMinusX(p) => RatFunc::new(
                RatPoly::constant(g(params, p)),
                RatPoly::new(vec![rint(1), rint(-2), rint(1)]),
            )?,
            WFactor::ExpArctan(p) => RatFunc::new(
                RatPoly::constant(g(params, p)),
                RatPoly::new(vec![rint(1), rint(0), rint(1)]),
            )?,
        };
        sum = &sum + &term;
    }
    Ok(sum)
}

/// ln W(x) for interior x (float), used by the eigenfunction transform.
pub fn weight_log(entry: &CatalogEntry, params: &ParamMap, x: f64) -> f64 {
    let pf = |name: &str| to_f64(&g(params, name));
    entry
        .w_factors
        .iter()
        .map(|factor| match factor {
            WFactor::XPow(p) => pf(p) * x.ln(),
            WFactor::OneMinusXPow(p) => pf(p) * (1.0 - x).ln(),
            WFactor::OnePlusXPow(p) => pf(p) * (1.0 + x).ln(),
            WFactor::ShiftedPow(s, p) => pf(p) * (pf(s) - x).ln(),
            WFactor::OnePlusX2Pow(p) => pf(p) * (1.0 + x * x).ln(),
            WFactor::ExpLinQuad(p, q) => pf(p) * x + pf(q) * x * x,
            WFactor::ExpLin(p, sign) => f64::from(*sign) * pf(p) * x,
            WFactor::ExpInv(p, sign, k) => f64::from(*sign) * pf(p) / x.powi(*k as i32),
            WFactor::ExpInvOneMinusX(p) => pf(p) / (1.0 - x),
            WFactor::ExpArctan(p) => pf(p) * x.atan(),
        })
        .sum()
}

fn build_interval(entry: &CatalogEntry, params: &ParamMap) -> XInterval {
    match entry.interval {
        IntervalSpec::ZeroToInf => XInterval::new(Endpoint::Finite(rint(0)), Endpoint::PosInf),
        IntervalSpec::ZeroToOne => {
            XInterval::new(Endpoint::Finite(rint(0)), Endpoint::Finite(rint(1)))
        }
        IntervalSpec::ZeroToShape => XInterval::new(
            Endpoint::Finite(rint(0)),
            Endpoint::Finite(g(params, "a")),
        ),
    }
}

/// Human-readable α rule, e.g. "alpha = -2(n+1) - beta - 2 gamma".
pub fn alpha_rule_display(rule: &[(&str, i64)]) -> String {
    let mut s = String::from("alpha = -2(n+1)");
    for (name, coeff) in rule {
        match coeff {
            1 => write!(s, " - {name}").unwrap(),
            c => write!(s, " - {c} {name}").unwrap(),
        }
    }
    s
}

fn derived_alpha(rule: &[(&str, i64)], params: &ParamMap, n: usize) -> Rational {
    let mut alpha = rint(-2) * (nr(n) + one());
    for (name, coeff) in rule {
        alpha = alpha - rint(*coeff) * g(params, name);
    }
    alpha
}

/// Validates presence/absence of parameters and computes the derived α.
/// Returns the full map (free + shape + alpha) used by templates.
fn resolve_params(
    entry: &CatalogEntry,
    params: &ParamMap,
    n: usize,
) -> Result<ParamMap, QesError> {
    let mut known: Vec<&str> = entry.params.iter().map(|p| p.name).collect();
    if entry.alpha_rule.is_some() && params.contains_key("alpha") {
        return Err(QesError::InvalidInput(format!(
            "{}: alpha is derived ({}) and cannot be supplied",
            entry.id,
            alpha_rule_display(entry.alpha_rule.unwrap())
        )));
    }
    for name in params.keys() {
        if !known.contains(&name.as_str()) {
            return Err(QesError::InvalidInput(format!(
                "{}: unknown parameter {name} (expected {})",
                entry.id,
                known.join(", ")
            )));
        }
    }
    known.retain(|name| !params.contains_key(*name));
    if !known.is_empty() {
        return Err(QesError::InvalidInput(format!(
            "{}: missing parameter(s) {}",
            entry.id,
            known.join(", ")
        )));
    }
    let mut resolved = params.clone();
    if let Some(rule) = entry.alpha_rule {
        resolved.insert("alpha".to_string(), derived_alpha(rule, params, n));
    }
    Ok(resolved)
}

// ---------------------------------------------------------------------------
// Public API.
// ---------------------------------------------------------------------------

/// All catalog entries, operator tables first, potential-only extras last.
pub fn all() -> &'static [CatalogEntry] {
    &ENTRIES
}

/// The 14 operator-table entries (excludes potential-only extras).
pub fn table_entries() -> impl Iterator<Item = &'static CatalogEntry> {
    ENTRIES.iter().filter(|e| !e.potential_only)
}

pub fn lookup(id: &str) -> Result<&'static CatalogEntry, QesError> {
    ENTRIES
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| QesError::UnknownModel(id.to_string()))
}

/// Builds the solved problem for a catalog family: expands the templates,
/// derives F from the weight factors, applies the invariance constraints,
/// and cross-checks the resulting B against the displayed table row.
pub fn instantiate(id: &str, params: &ParamMap, n: usize) -> Result<QesProblem, QesError> {
    let entry = lookup(id)?;
    let resolved = resolve_params(entry, params, n)?;
    (entry.validate)(&resolved, n).map_err(QesError::ConstraintViolation)?;

    let a = build_a(entry, &resolved);
    let log_deriv = weight_log_derivative(entry, &resolved)?;
    // F = (AW)′/W = A′ + A·W′/W — polynomial because every pole of W′/W
    // divides A
    let f_func = &RatFunc::from_poly(a.derivative())
        + &(&RatFunc::from_poly(a.clone()) * &log_deriv);
    let f = f_func.as_polynomial().ok_or_else(|| {
        QesError::DegenerateSpec(format!(
            "{id}: (AW)'/W is not polynomial (pole outside the zeros of A)"
        ))
    })?;

    let mut spec = MasterSpec::new(a, f, build_interval(entry, &resolved));
    spec.params = resolved.clone();
    let problem = solve_constraints(&spec, n)?;
    debug_assert_eq!(
        problem.b,
        (entry.b_form)(&resolved, n),
        "{id}: derived B diverges from the displayed table row"
    );
    Ok(problem)
}

/// Draws a valid parameter set for the entry.
pub fn sample_params(entry: &CatalogEntry, rng: &mut ChaCha8Rng, n: usize) -> ParamMap {
    (entry.sample)(rng, n)
}

/// Outcome of checking one displayed table row against its weight-derived
/// operator.
#[derive(Clone, Debug)]
pub struct SelfcheckReport {
    pub id: String,
    pub trials: usize,
    /// Each mismatch lists both the displayed and the derived form.
    pub mismatches: Vec<String>,
    pub pass: bool,
}

fn selfcheck_with_forms(
    entry: &CatalogEntry,
    drift_form: fn(&ParamMap) -> RatPoly,
    b_form: fn(&ParamMap, usize) -> RatPoly,
    trials: usize,
    seed: u64,
) -> SelfcheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mismatches = Vec::new();
    for trial in 0..trials {
        let n = 1 + trial % 4;
        let params = (entry.sample)(&mut rng, n);
        let resolved = match resolve_params(entry, &params, n) {
            Ok(r) => r,
            Err(e) => {
                mismatches.push(format!("trial {trial}: resolution failed: {e}"));
                continue;
            }
        };
        let a = build_a(entry, &resolved);
        let log_deriv = match weight_log_derivative(entry, &resolved) {
            Ok(ld) => ld,
            Err(e) => {
                mismatches.push(format!("trial {trial}: weight derivative failed: {e}"));
                continue;
            }
        };
        let f_func = &RatFunc::from_poly(a.derivative())
            + &(&RatFunc::from_poly(a.clone()) * &log_deriv);
        let Some(f) = f_func.as_polynomial() else {
            mismatches.push(format!("trial {trial}: F is not polynomial"));
            continue;
        };
        let displayed_drift = drift_form(&resolved);
        let derived_drift = -&f;
        if displayed_drift != derived_drift {
            mismatches.push(format!(
                "trial {trial}: drift row displays {displayed_drift} but (AW)'/W gives {derived_drift}"
            ));
        }
        let spec = MasterSpec {
            a,
            f,
            interval: build_interval(entry, &resolved),
            params: resolved.clone(),
        };
        match solve_constraints(&spec, n) {
            Ok(problem) => {
                let displayed_b = b_form(&resolved, n);
                if displayed_b != problem.b {
                    mismatches.push(format!(
                        "trial {trial}: B row displays {displayed_b} but the constraints give {}",
                        problem.b
                    ));
                }
            }
            Err(e) => mismatches.push(format!("trial {trial}: constraints failed: {e}")),
        }
    }
    SelfcheckReport {
        id: entry.id.to_string(),
        trials,
        pass: mismatches.is_empty(),
        mismatches,
    }
}

fn id_seed(id: &str) -> u64 {
    id.bytes().fold(0xD1F7u64, |acc, b| acc.wrapping_mul(131).wrapping_add(b as u64))
}

/// Symbolic spot-check of one displayed row: at randomized valid
/// parameters, the displayed drift must equal −F derived from W, and the
/// displayed B must equal the constraint solution.
pub fn table_selfcheck(id: &str) -> Result<SelfcheckReport, QesError> {
    let entry = lookup(id)?;
    Ok(selfcheck_with_forms(
        entry,
        entry.drift_form,
        entry.b_form,
        8,
        id_seed(id),
    ))
}

fn interval_display(entry: &CatalogEntry) -> &'static str {
    match entry.interval {
        IntervalSpec::ZeroToInf => "(0, inf)",
        IntervalSpec::ZeroToOne => "(0, 1)",
        IntervalSpec::ZeroToShape => "(0, a)",
    }
}

/// Machine-readable registry: every entry with its templates, ranges, and
/// displayed rows, for inspection without running the solver.
pub fn registry_json() -> Value {
    let entries: Vec<Value> = ENTRIES
        .iter()
        .map(|e| {
            json!({
                "id": e.id,
                "order": e.order,
                "A": e.a_display,
                "W": e.w_display,
                "interval": interval_display(e),
                "parameters": e.params.iter().map(|p| json!({
                    "name": p.name,
                    "range": p.range,
                })).collect::<Vec<_>>(),
                "alpha_rule": e.alpha_rule.map(alpha_rule_display),
                "drift": e.drift_display,
                "B": e.b_display,
                "coordinate_map": e.coord_map.map(|m| m.label()),
                "closed_form_potential": e.has_closed_form_v,
                "potential_only": e.potential_only,
                "note": e.note,
            })
        })
        .collect();
    json!({
        "schema": "qes-registry/1",
        "entries": entries,
    })
}

// ---------------------------------------------------------------------------
// Displayed rows (drift = printed d/dx coefficient = −F; B as printed),
// transcribed with exact rational arithmetic.
// ---------------------------------------------------------------------------

mod forms {
    use super::*;

    pub fn t1_x_drift(p: &ParamMap) -> RatPoly {
        let (al, be, ga) = (g(p, "alpha"), g(p, "beta"), g(p, "gamma"));
        RatPoly::new(vec![-(al + one()), -be, rint(-2) * ga])
    }
    pub fn t1_x_b(p: &ParamMap, n: usize) -> RatPoly {
        RatPoly::new(vec![rint(0), rint(2) * nr(n) * g(p, "gamma")])
    }

    pub fn t1_x2_drift(p: &ParamMap) -> RatPoly {
        let (al, be, ga) = (g(p, "alpha"), g(p, "beta"), g(p, "gamma"));
        RatPoly::new(vec![be, -(al + rint(2)), -ga])
    }
    pub fn t1_x2_b(p: &ParamMap, n: usize) -> RatPoly {
        RatPoly::new(vec![rint(0), nr(n) * g(p, "gamma")])
    }

    pub fn t1_x1mx_drift(p: &ParamMap) -> RatPoly {
        let (al, be, ga) = (g(p, "alpha"), g(p, "beta"), g(p, "gamma"));
        RatPoly::new(vec![-&al - one(), &al + &be + &ga + rint(2), -ga])
    }
    pub fn t1_x1mx_b(p: &ParamMap, n: usize) -> RatPoly {
        RatPoly::new(vec![rint(0), nr(n) * g(p, "gamma")])
    }

    pub fn t1_x3_drift(p: &ParamMap) -> RatPoly {
        let (al, be, ga) = (g(p, "alpha"), g(p, "beta"), g(p, "gamma"));
        RatPoly::new(vec![rint(-2) * be, -ga, -(al + rint(3))])
    }
    pub fn t1_x3_b(p: &ParamMap, n: usize) -> RatPoly {
        let b1 = nr(n) * (nr(n) + g(p, "alpha") + rint(2));
        RatPoly::new(vec![rint(0), b1])
    }

    pub fn t1_x2_1mx_drift(p: &ParamMap) -> RatPoly {
        let (al, be, ga) = (g(p, "alpha"), g(p, "beta"), g(p, "gamma"));
        RatPoly::new(vec![-&ga, &ga - &al - rint(2), al + be + rint(3)])
    }
    pub fn t1_x2_1mx_b(p: &ParamMap, n: usize) -> RatPoly {
        let b1 = -nr(n) * (nr(n) + g(p, "alpha") + g(p, "beta") + rint(2));
        RatPoly::new(vec![rint(0), b1])
    }

    pub fn t1_x_1px2_drift(p: &ParamMap) -> RatPoly {
        let (al, be, ga) = (g(p, "alpha"), g(p, "beta"), g(p, "gamma"));
        RatPoly::new(vec![-(&al + one()), -ga, -(al + rint(2) * be + rint(3))])
    }
    pub fn t1_x_1px2_b(p: &ParamMap, n: usize) -> RatPoly {
        let b1 = nr(n) * (nr(n) + g(p, "alpha") + rint(2) * g(p, "beta") + rint(2));
        RatPoly::new(vec![rint(0), b1])
    }

    pub fn t1_heun_drift(p: &ParamMap) -> RatPoly {
        let (a, al, be, ga) = (g(p, "a"), g(p, "alpha"), g(p, "beta"), g(p, "gamma"));
        RatPoly::new(vec![
            -&a * (&al + one()),
            (&a + one()) * (&al + rint(2)) + &a * &be + &ga,
            -(al + be + ga + rint(3)),
        ])
    }
    pub fn t1_heun_b(p: &ParamMap, n: usize) -> RatPoly {
        let b1 =
            nr(n) * (nr(n) + g(p, "alpha") + g(p, "beta") + g(p, "gamma") + rint(2));
        RatPoly::new(vec![rint(0), b1])
    }

    pub fn t2_x4_drift(p: &ParamMap) -> RatPoly {
        let (al, be, ga, de) = (g(p, "alpha"), g(p, "beta"), g(p, "gamma"), g(p, "delta"));
        RatPoly::new(vec![rint(3) * be, rint(2) * ga, de, -(al + rint(4))])
    }
    pub fn t2_x4_b(p: &ParamMap, n: usize) -> RatPoly {
        RatPoly::new(vec![
            rint(0),
            -nr(n) * g(p, "delta"),
            -nr(n) * (nr(n) - one()),
        ])
    }

    pub fn t2_x3_1mx_drift(p: &ParamMap) -> RatPoly {
        let (al, be, ga, de) = (g(p, "alpha"), g(p, "beta"), g(p, "gamma"), g(p, "delta"));
        RatPoly::new(vec![
            rint(-2) * &de,
            rint(2) * &de - &ga,
            &ga - &al - rint(3),
            al + be + rint(4),
        ])
    }
    pub fn t2_x3_1mx_b(p: &ParamMap, n: usize) -> RatPoly {
        let b1 = nr(n) * (nr(n) + g(p, "alpha") - g(p, "gamma") + rint(2));
        RatPoly::new(vec![rint(0), b1, nr(n) * (nr(n) - one())])
    }

    pub fn t2_x2_1px2_drift(p: &ParamMap) -> RatPoly {
        let (al, be, ga, de) = (g(p, "alpha"), g(p, "beta"), g(p, "gamma"), g(p, "delta"));
        RatPoly::new(vec![
            ga.clone(),
            -(&al + rint(2)),
            &ga - &de,
            -(al + rint(2) * be + rint(4)),
        ])
    }
    pub fn t2_x2_1px2_b(p: &ParamMap, n: usize) -> RatPoly {
        let b1 = nr(n) * (g(p, "delta") - g(p, "gamma"));
        RatPoly::new(vec![rint(0), b1, -nr(n) * (nr(n) - one())])
    }

    /// Corrected transcription: the source table's x² coefficient carries a
    /// sign slip (it must be the negative of the x² coefficient of F).
    pub fn t2_x2_1mx_amx_drift(p: &ParamMap) -> RatPoly {
        let (a, al) = (g(p, "a"), g(p, "alpha"));
        let (be, ga, de) = (g(p, "beta"), g(p, "gamma"), g(p, "delta"));
        RatPoly::new(vec![
            &a * &de,
            -(&a * &al + (&a + one()) * &de + rint(2) * &a),
            (&a + one()) * &al + &a * &be + &ga + &de + rint(3) * (&a + one()),
            -(al + be + ga + rint(4)),
        ])
    }
    /// Corrected transcription: B⁽¹⁾ = −n((a+1)(n+α+2) + aβ + γ + δ).
    pub fn t2_x2_1mx_amx_b(p: &ParamMap, n: usize) -> RatPoly {
        let (a, al) = (g(p, "a"), g(p, "alpha"));
        let (be, ga, de) = (g(p, "beta"), g(p, "gamma"), g(p, "delta"));
        let b1 = -nr(n) * ((&a + one()) * (nr(n) + &al + rint(2)) + &a * &be + &ga + &de);
        RatPoly::new(vec![rint(0), b1, -nr(n) * (nr(n) - one())])
    }

    pub fn t2_x2_1mx2sq_drift(p: &ParamMap) -> RatPoly {
        let (al, be, ga, de) = (g(p, "alpha"), g(p, "beta"), g(p, "gamma"), g(p, "delta"));
        RatPoly::new(vec![
            ga.clone(),
            -(&al + rint(2) * &ga + rint(2)),
            rint(2) * &al + &be + &ga - &de + rint(6),
            -(al + be + rint(4)),
        ])
    }
    pub fn t2_x2_1mx2sq_b(p: &ParamMap, n: usize) -> RatPoly {
        let (al, be, ga, de) = (g(p, "alpha"), g(p, "beta"), g(p, "gamma"), g(p, "delta"));
        let b1 = -nr(n) * (rint(2) * nr(n) + rint(2) * al + be + ga - de + rint(4));
        RatPoly::new(vec![rint(0), b1, -nr(n) * (nr(n) - one())])
    }

    /// Corrected transcription: the source table's x coefficient reads
    /// α+β−a(δ−2); the weight-derived drift needs α+β+2−aδ.
    pub fn t2_x_amx_1px2_drift(p: &ParamMap) -> RatPoly {
        let (a, al) = (g(p, "a"), g(p, "alpha"));
        let (be, ga, de) = (g(p, "beta"), g(p, "gamma"), g(p, "delta"));
        RatPoly::new(vec![
            -&a * (&al + one()),
            &al + &be + rint(2) - &a * &de,
            -(&a * (&al + rint(2) * &ga + rint(3)) - &de),
            al + be + rint(2) * ga + rint(4),
        ])
    }
    pub fn t2_x_amx_1px2_b(p: &ParamMap, n: usize) -> RatPoly {
        let (a, al) = (g(p, "a"), g(p, "alpha"));
        let (ga, de) = (g(p, "gamma"), g(p, "delta"));
        let b1 = nr(n) * (&a * (nr(n) + &al + rint(2) * &ga + rint(2)) - &de);
        RatPoly::new(vec![rint(0), b1, nr(n) * (nr(n) - one())])
    }

    /// Corrected transcription: the x² coefficient needs (b+1)γ (the source
    /// drops the bγ part) and the x³ coefficient needs the +δ term that
    /// travels with the corrected α rule.
    pub fn t2_4factor_drift(p: &ParamMap) -> RatPoly {
        let (a, b, al) = (g(p, "a"), g(p, "b"), g(p, "alpha"));
        let (be, ga, de) = (g(p, "beta"), g(p, "gamma"), g(p, "delta"));
        let sum3 = &a + &b + &a * &b;
        RatPoly::new(vec![
            -&a * &b * (&al + one()),
            &al * &sum3 + &a * &b * &be + &b * &ga + &a * &de + rint(2) * &sum3,
            -((one() + &a + &b) * (&al + rint(3))
                + (&a + &b) * &be
                + (&b + one()) * &ga
                + (&a + one()) * &de),
            al + be + ga + de + rint(4),
        ])
    }
    /// Corrected transcription: B⁽¹⁾ carries (b+1)γ, matching the drift fix.
    pub fn t2_4factor_b(p: &ParamMap, n: usize) -> RatPoly {
        let (a, b, al) = (g(p, "a"), g(p, "b"), g(p, "alpha"));
        let (be, ga, de) = (g(p, "beta"), g(p, "gamma"), g(p, "delta"));
        let b1 = nr(n)
            * ((one() + &a + &b) * (nr(n) + &al + rint(2))
                + (&a + &b) * &be
                + (&b + one()) * &ga
                + (&a + one()) * &de);
        RatPoly::new(vec![rint(0), b1, nr(n) * (nr(n) - one())])
    }

    pub fn v_x2_1mx2_drift(p: &ParamMap) -> RatPoly {
        let (al, be, ga, de) = (g(p, "alpha"), g(p, "beta"), g(p, "gamma"), g(p, "delta"));
        RatPoly::new(vec![
            de.clone(),
            -(&al + rint(2)),
            &be - &ga - &de,
            al + be + ga + rint(4),
        ])
    }
    pub fn v_x2_1mx2_b(p: &ParamMap, n: usize) -> RatPoly {
        let b1 = nr(n) * (g(p, "gamma") - g(p, "beta") + g(p, "delta"));
        RatPoly::new(vec![rint(0), b1, nr(n) * (nr(n) - one())])
    }
}

// ---------------------------------------------------------------------------
// Validation and sampling.
// ---------------------------------------------------------------------------

mod rules {
    use super::*;

    fn check_gt(p: &ParamMap, name: &str, bound: Rational, display: &str) -> Result<(), String> {
        if g(p, name) > bound {
            Ok(())
        } else {
            Err(format!(
                "{display} violated: {name} = {}",
                crate::rational::format_rational(&g(p, name))
            ))
        }
    }

    fn check_lt(p: &ParamMap, name: &str, bound: Rational, display: &str) -> Result<(), String> {
        if g(p, name) < bound {
            Ok(())
        } else {
            Err(format!(
                "{display} violated: {name} = {}",
                crate::rational::format_rational(&g(p, name))
            ))
        }
    }

    pub fn t1_x(p: &ParamMap, _n: usize) -> Result<(), String> {
        check_gt(p, "alpha", rint(-1), "alpha > -1")?;
        check_lt(p, "gamma", rint(0), "gamma < 0")
    }
    pub fn t1_x_sample(rng: &mut ChaCha8Rng, _n: usize) -> ParamMap {
        map_of(vec![
            ("alpha", rand_rational(rng, -0.9, 4.0)),
            ("beta", rand_rational(rng, -3.0, 3.0)),
            ("gamma", rand_rational(rng, -4.0, -0.25)),
        ])
    }

    pub fn t1_x2(p: &ParamMap, _n: usize) -> Result<(), String> {
        check_lt(p, "beta", rint(0), "beta < 0")?;
        check_lt(p, "gamma", rint(0), "gamma < 0")
    }
    pub fn t1_x2_sample(rng: &mut ChaCha8Rng, _n: usize) -> ParamMap {
        map_of(vec![
            ("alpha", rand_rational(rng, -4.0, 4.0)),
            ("beta", rand_rational(rng, -4.0, -0.25)),
            ("gamma", rand_rational(rng, -4.0, -0.25)),
        ])
    }

    pub fn t1_x1mx(p: &ParamMap, _n: usize) -> Result<(), String> {
        check_gt(p, "alpha", rint(-1), "alpha > -1")?;
        check_gt(p, "beta", rint(-1), "beta > -1")
    }
    pub fn t1_x1mx_sample(rng: &mut ChaCha8Rng, _n: usize) -> ParamMap {
        map_of(vec![
            ("alpha", rand_rational(rng, -0.9, 4.0)),
            ("beta", rand_rational(rng, -0.9, 4.0)),
            ("gamma", rand_rational(rng, 0.25, 3.75)),
        ])
    }

    pub fn t1_x3(p: &ParamMap, _n: usize) -> Result<(), String> {
        check_lt(p, "alpha", rint(-3), "alpha < -3")?;
        check_gt(p, "beta", rint(0), "beta > 0")
    }
    /// Draws alpha strictly below −(2n+1): the table's alpha < −3 is the
    /// n = 1 case; the level-aware bound keeps the whole degree-n sector
    /// square-integrable and lets A·W·(Wronskian) vanish at infinity, so
    /// the node-ordering theorem applies to sampled instances.
    pub fn t1_x3_sample(rng: &mut ChaCha8Rng, n: usize) -> ParamMap {
        let cap = -(2.0 * n as f64 + 1.0);
        map_of(vec![
            ("alpha", rand_rational(rng, cap - 4.0, cap - 0.25)),
            ("beta", rand_rational(rng, 0.25, 4.0)),
            ("gamma", rand_rational(rng, -3.0, 3.0)),
        ])
    }

    pub fn t1_x2_1mx(p: &ParamMap, _n: usize) -> Result<(), String> {
        check_gt(p, "beta", rint(-1), "beta > -1")?;
        check_gt(p, "gamma", rint(0), "gamma > 0")
    }
    pub fn t1_x2_1mx_sample(rng: &mut ChaCha8Rng, _n: usize) -> ParamMap {
        map_of(vec![
            ("alpha", rand_rational(rng, -3.0, 3.0)),
            ("beta", rand_rational(rng, -0.9, 3.0)),
            ("gamma", rand_rational(rng, 0.25, 4.0)),
        ])
    }

    pub fn t1_x_1px2(p: &ParamMap, _n: usize) -> Result<(), String> {
        check_gt(p, "alpha", rint(-1), "alpha > -1")?;
        let bound = -(g(p, "alpha") + rint(3)) / rint(2);
        check_lt(p, "beta", bound, "beta < -(alpha+3)/2")
    }
    /// Draws beta strictly below −(alpha+2n+1)/2: the table's bound
    /// −(alpha+3)/2 is the n = 1 case; the level-aware bound keeps the
    /// degree-n sector square-integrable against the power-law tail and
    /// lets A·W·(Wronskian) vanish at infinity, so the node-ordering
    /// theorem applies to sampled instances.
    pub fn t1_x_1px2_sample(rng: &mut ChaCha8Rng, n: usize) -> ParamMap {
        let alpha = rand_rational(rng, -0.9, 3.0);
        let upper = to_f64(&(-(&alpha + rint(2 * n as i64 + 1)) / rint(2)));
        map_of(vec![
            ("alpha", alpha),
            ("beta", rand_rational(rng, upper - 3.0, upper - 0.25)),
            ("gamma", rand_rational(rng, -3.0, 3.0)),
        ])
    }

    pub fn t1_heun(p: &ParamMap, _n: usize) -> Result<(), String> {
        check_gt(p, "a", rint(1), "a > 1")?;
        check_gt(p, "alpha", rint(-1), "alpha > -1")?;
        check_gt(p, "beta", rint(-1), "beta > -1")
    }
    pub fn t1_heun_sample(rng: &mut ChaCha8Rng, _n: usize) -> ParamMap {
        map_of(vec![
            ("a", rand_rational(rng, 1.25, 4.0)),
            ("alpha", rand_rational(rng, -0.9, 3.0)),
            ("beta", rand_rational(rng, -0.9, 3.0)),
            ("gamma", rand_rational(rng, -3.0, 3.0)),
        ])
    }

    pub fn t2_x4(p: &ParamMap, _n: usize) -> Result<(), String> {
        check_lt(p, "beta", rint(0), "beta < 0")
    }
    pub fn t2_x4_sample(rng: &mut ChaCha8Rng, _n: usize) -> ParamMap {
        map_of(vec![
            ("beta", rand_rational(rng, -4.0, -0.25)),
            ("gamma", rand_rational(rng, -3.0, 3.0)),
            ("delta", rand_rational(rng, -3.0, 3.0)),
        ])
    }

    pub fn t2_x3_1mx(p: &ParamMap, _n: usize) -> Result<(), String> {
        check_gt(p, "beta", rint(-1), "beta > -1")?;
        check_gt(p, "delta", rint(0), "delta > 0")
    }
    pub fn t2_x3_1mx_sample(rng: &mut ChaCha8Rng, _n: usize) -> ParamMap {
        map_of(vec![
            ("beta", rand_rational(rng, -0.9, 3.0)),
            ("gamma", rand_rational(rng, -3.0, 3.0)),
            ("delta", rand_rational(rng, 0.25, 4.0)),
        ])
    }

    pub fn t2_x2_1px2(p: &ParamMap, _n: usize) -> Result<(), String> {
        check_lt(p, "gamma", rint(0), "gamma < 0")
    }
    pub fn t2_x2_1px2_sample(rng: &mut ChaCha8Rng, _n: usize) -> ParamMap {
        map_of(vec![
            ("beta", rand_rational(rng, -3.0, 3.0)),
            ("gamma", rand_rational(rng, -4.0, -0.25)),
            ("delta", rand_rational(rng, -3.0, 3.0)),
        ])
    }

    pub fn t2_x2_1mx_amx(p: &ParamMap, _n: usize) -> Result<(), String> {
        check_gt(p, "a", rint(1), "a > 1")?;
        check_gt(p, "beta", rint(-1), "beta > -1")?;
        check_lt(p, "delta", rint(0), "delta < 0")
    }
    pub fn t2_x2_1mx_amx_sample(rng: &mut ChaCha8Rng, _n: usize) -> ParamMap {
        map_of(vec![
            ("a", rand_rational(rng, 1.25, 4.0)),
            ("beta", rand_rational(rng, -0.9, 3.0)),
            ("gamma", rand_rational(rng, -3.0, 3.0)),
            ("delta", rand_rational(rng, -4.0, -0.25)),
        ])
    }

    pub fn t2_x2_1mx2sq(p: &ParamMap, _n: usize) -> Result<(), String> {
        check_lt(p, "gamma", rint(0), "gamma < 0")?;
        check_lt(p, "delta", rint(0), "delta < 0")
    }
    pub fn t2_x2_1mx2sq_sample(rng: &mut ChaCha8Rng, _n: usize) -> ParamMap {
        map_of(vec![
            ("beta", rand_rational(rng, -3.0, 3.0)),
            ("gamma", rand_rational(rng, -4.0, -0.25)),
            ("delta", rand_rational(rng, -4.0, -0.25)),
        ])
    }

    pub fn t2_x_amx_1px2(p: &ParamMap, n: usize) -> Result<(), String> {
        check_gt(p, "a", rint(0), "a > 0")?;
        let upper = rint(-2 * n as i64) - rint(2) * g(p, "gamma") - rint(1);
        if upper <= rint(-1) {
            return Err(format!(
                "range for beta is empty: -1 < beta < -2n-2gamma-1 = {} requires gamma < -n",
                crate::rational::format_rational(&upper)
            ));
        }
        check_gt(p, "beta", rint(-1), "beta > -1")?;
        check_lt(p, "beta", upper, "beta < -2n-2gamma-1")
    }
    pub fn t2_x_amx_1px2_sample(rng: &mut ChaCha8Rng, n: usize) -> ParamMap {
        // γ < −n keeps the printed β window nonempty
        let gamma = rand_rational(rng, -(n as f64) - 3.0, -(n as f64) - 1.0);
        let upper = to_f64(&(rint(-2 * n as i64) - rint(2) * &gamma - rint(1)));
        map_of(vec![
            ("a", rand_rational(rng, 0.5, 3.0)),
            ("beta", rand_rational(rng, -1.0, upper.min(1.0))),
            ("gamma", gamma),
            ("delta", rand_rational(rng, -3.0, 3.0)),
        ])
    }

    pub fn t2_4factor(p: &ParamMap, n: usize) -> Result<(), String> {
        check_gt(p, "a", rint(1), "a > 1")?;
        if g(p, "b") <= g(p, "a") {
            return Err(format!(
                "a < b violated: a = {}, b = {}",
                crate::rational::format_rational(&g(p, "a")),
                crate::rational::format_rational(&g(p, "b"))
            ));
        }
        let upper = rint(-2 * n as i64) - g(p, "gamma") - g(p, "delta") - rint(1);
        if upper <= rint(-1) {
            return Err(format!(
                "range for beta is empty: -1 < beta < -2n-gamma-delta-1 = {} requires gamma + delta < -2n",
                crate::rational::format_rational(&upper)
            ));
        }
        check_gt(p, "beta", rint(-1), "beta > -1")?;
        check_lt(p, "beta", upper, "beta < -2n-gamma-delta-1")
    }
    pub fn t2_4factor_sample(rng: &mut ChaCha8Rng, n: usize) -> ParamMap {
        let a = rand_rational(rng, 1.25, 2.5);
        let b = rand_rational(rng, to_f64(&a) + 0.5, to_f64(&a) + 3.0);
        let gamma = rand_rational(rng, -(n as f64) - 2.0, -(n as f64) - 0.5);
        let delta = rand_rational(rng, -(n as f64) - 2.0, -(n as f64) - 0.5);
        let upper = to_f64(
            &(rint(-2 * n as i64) - &gamma - &delta - rint(1)),
        );
        map_of(vec![
            ("a", a),
            ("b", b),
            ("beta", rand_rational(rng, -1.0, upper.min(1.0))),
            ("gamma", gamma),
            ("delta", delta),
        ])
    }

    pub fn v_x2_1mx2(p: &ParamMap, _n: usize) -> Result<(), String> {
        check_gt(p, "beta", rint(-1), "beta > -1")?;
        check_lt(p, "delta", rint(0), "delta < 0")
    }
    pub fn v_x2_1mx2_sample(rng: &mut ChaCha8Rng, _n: usize) -> ParamMap {
        map_of(vec![
            ("beta", rand_rational(rng, -0.9, 2.0)),
            ("gamma", rand_rational(rng, -0.9, 2.0)),
            ("delta", rand_rational(rng, -3.0, -0.25)),
        ])
    }
}

// ---------------------------------------------------------------------------
// The registry.
// ---------------------------------------------------------------------------

const EXACT_NOTE: &str =
    "gamma = 0 degenerates to an exactly solvable operator (B vanishes identically)";

static ENTRIES: [CatalogEntry; 15] = [
    CatalogEntry {
        id: "T1.x",
        order: 3,
        a_display: "x",
        w_display: "x^alpha exp(beta x + gamma x^2)",
        a_factors: &[AFactor::X],
        w_factors: &[WFactor::XPow("alpha"), WFactor::ExpLinQuad("beta", "gamma")],
        interval: IntervalSpec::ZeroToInf,
        params: &[
            ParamSpec { name: "alpha", range: "alpha > -1" },
            ParamSpec { name: "beta", range: "unrestricted" },
            ParamSpec { name: "gamma", range: "gamma < 0" },
        ],
        alpha_rule: None,
        drift_display: "-(alpha+1) - beta x - 2 gamma x^2",
        b_display: "2 n gamma x",
        drift_form: forms::t1_x_drift,
        b_form: forms::t1_x_b,
        validate: rules::t1_x,
        sample: rules::t1_x_sample,
        coord_map: Some(CoordMapId::QuarterSquare),
        has_closed_form_v: true,
        ordered_spectrum: true,
        potential_only: false,
        note: Some(EXACT_NOTE),
    },
    CatalogEntry {
        id: "T1.x2",
        order: 3,
        a_display: "x^2",
        w_display: "x^alpha exp(beta/x + gamma x)",
        a_factors: &[AFactor::X, AFactor::X],
        w_factors: &[
            WFactor::XPow("alpha"),
            WFactor::ExpInv("beta", 1, 1),
            WFactor::ExpLin("gamma", 1),
        ],
        interval: IntervalSpec::ZeroToInf,
        params: &[
            ParamSpec { name: "alpha", range: "unrestricted" },
            ParamSpec { name: "beta", range: "beta < 0" },
            ParamSpec { name: "gamma", range: "gamma < 0" },
        ],
        alpha_rule: None,
        drift_display: "beta - (alpha+2) x - gamma x^2",
        b_display: "n gamma x",
        drift_form: forms::t1_x2_drift,
        b_form: forms::t1_x2_b,
        validate: rules::t1_x2,
        sample: rules::t1_x2_sample,
        coord_map: Some(CoordMapId::Exp),
        has_closed_form_v: true,
        ordered_spectrum: true,
        potential_only: false,
        note: Some(EXACT_NOTE),
    },
    CatalogEntry {
        id: "T1.x(1-x)",
        order: 3,
        a_display: "x(1-x)",
        w_display: "x^alpha (1-x)^beta exp(-gamma x)",
        a_factors: &[AFactor::X, AFactor::OneMinusX],
        w_factors: &[
            WFactor::XPow("alpha"),
            WFactor::OneMinusXPow("beta"),
            WFactor::ExpLin("gamma", -1),
        ],
        interval: IntervalSpec::ZeroToOne,
        params: &[
            ParamSpec { name: "alpha", range: "alpha > -1" },
            ParamSpec { name: "beta", range: "beta > -1" },
            ParamSpec { name: "gamma", range: "unrestricted" },
        ],
        alpha_rule: None,
        drift_display: "-(alpha+1) + (alpha+beta+gamma+2) x - gamma x^2",
        b_display: "n gamma x",
        drift_form: forms::t1_x1mx_drift,
        b_form: forms::t1_x1mx_b,
        validate: rules::t1_x1mx,
        sample: rules::t1_x1mx_sample,
        coord_map: Some(CoordMapId::HalfOnePlusSin),
        has_closed_form_v: true,
        ordered_spectrum: true,
        potential_only: false,
        note: Some(EXACT_NOTE),
    },
    CatalogEntry {
        id: "T1.x3",
        order: 3,
        a_display: "x^3",
        w_display: "x^alpha exp(-beta/x^2 - gamma/x)",
        a_factors: &[AFactor::X, AFactor::X, AFactor::X],
        w_factors: &[
            WFactor::XPow("alpha"),
            WFactor::ExpInv("beta", -1, 2),
            WFactor::ExpInv("gamma", -1, 1),
        ],
        interval: IntervalSpec::ZeroToInf,
        params: &[
            ParamSpec { name: "alpha", range: "alpha < -3" },
            ParamSpec { name: "beta", range: "beta > 0" },
            ParamSpec { name: "gamma", range: "unrestricted" },
        ],
        alpha_rule: None,
        drift_display: "-2 beta - gamma x - (alpha+3) x^2",
        b_display: "n(n+alpha+2) x",
        drift_form: forms::t1_x3_drift,
        b_form: forms::t1_x3_b,
        validate: rules::t1_x3,
        sample: rules::t1_x3_sample,
        coord_map: Some(CoordMapId::FourOverT2),
        has_closed_form_v: true,
        ordered_spectrum: true,
        potential_only: false,
        note: None,
    },
    CatalogEntry {
        id: "T1.x2(1-x)",
        order: 3,
        a_display: "x^2(1-x)",
        w_display: "x^alpha (1-x)^beta exp(-gamma/x)",
        a_factors: &[AFactor::X, AFactor::X, AFactor::OneMinusX],
        w_factors: &[
            WFactor::XPow("alpha"),
            WFactor::OneMinusXPow("beta"),
            WFactor::ExpInv("gamma", -1, 1),
        ],
        interval: IntervalSpec::ZeroToOne,
        params: &[
            ParamSpec { name: "alpha", range: "unrestricted" },
            ParamSpec { name: "beta", range: "beta > -1" },
            ParamSpec { name: "gamma", range: "gamma > 0" },
        ],
        alpha_rule: None,
        drift_display: "-gamma + (gamma-alpha-2) x + (alpha+beta+3) x^2",
        b_display: "-n(n+alpha+beta+2) x",
        drift_form: forms::t1_x2_1mx_drift,
        b_form: forms::t1_x2_1mx_b,
        validate: rules::t1_x2_1mx,
        sample: rules::t1_x2_1mx_sample,
        coord_map: Some(CoordMapId::SechSqHalf),
        has_closed_form_v: true,
        ordered_spectrum: true,
        potential_only: false,
        note: None,
    },
    CatalogEntry {
        id: "T1.x(1+x2)",
        order: 3,
        a_display: "x(1+x^2)",
        w_display: "x^alpha (1+x^2)^beta exp(gamma arctan x)",
        a_factors: &[AFactor::X, AFactor::OnePlusX2],
        w_factors: &[
            WFactor::XPow("alpha"),
            WFactor::OnePlusX2Pow("beta"),
            WFactor::ExpArctan("gamma"),
        ],
        interval: IntervalSpec::ZeroToInf,
        params: &[
            ParamSpec { name: "alpha", range: "alpha > -1" },
            ParamSpec { name: "beta", range: "beta < -(alpha+3)/2" },
            ParamSpec { name: "gamma", range: "unrestricted" },
        ],
        alpha_rule: None,
        drift_display: "-(alpha+1) - gamma x - (alpha+2beta+3) x^2",
        b_display: "n(n+alpha+2beta+2) x",
        drift_form: forms::t1_x_1px2_drift,
        b_form: forms::t1_x_1px2_b,
        validate: rules::t1_x_1px2,
        sample: rules::t1_x_1px2_sample,
        coord_map: None,
        has_closed_form_v: false,
        ordered_spectrum: true,
        potential_only: false,
        note: None,
    },
    CatalogEntry {
        id: "T1.heun",
        order: 3,
        a_display: "x(1-x)(a-x)",
        w_display: "x^alpha (1-x)^beta (a-x)^gamma",
        a_factors: &[AFactor::X, AFactor::OneMinusX, AFactor::Shifted("a")],
        w_factors: &[
            WFactor::XPow("alpha"),
            WFactor::OneMinusXPow("beta"),
            WFactor::ShiftedPow("a", "gamma"),
        ],
        interval: IntervalSpec::ZeroToOne,
        params: &[
            ParamSpec { name: "a", range: "a > 1" },
            ParamSpec { name: "alpha", range: "alpha > -1" },
            ParamSpec { name: "beta", range: "beta > -1" },
            ParamSpec { name: "gamma", range: "unrestricted" },
        ],
        alpha_rule: None,
        drift_display: "-a(alpha+1) + ((a+1)(alpha+2) + a beta + gamma) x - (alpha+beta+gamma+3) x^2",
        b_display: "n(n+alpha+beta+gamma+2) x",
        drift_form: forms::t1_heun_drift,
        b_form: forms::t1_heun_b,
        validate: rules::t1_heun,
        sample: rules::t1_heun_sample,
        coord_map: None,
        has_closed_form_v: false,
        ordered_spectrum: true,
        potential_only: false,
        note: Some("Heun operator: four regular singular points 0, 1, a, inf"),
    },
    CatalogEntry {
        id: "T2.x4",
        order: 4,
        a_display: "x^4",
        w_display: "x^alpha exp(beta/x^3 + gamma/x^2 + delta/x)",
        a_factors: &[AFactor::X, AFactor::X, AFactor::X, AFactor::X],
        w_factors: &[
            WFactor::XPow("alpha"),
            WFactor::ExpInv("beta", 1, 3),
            WFactor::ExpInv("gamma", 1, 2),
            WFactor::ExpInv("delta", 1, 1),
        ],
        interval: IntervalSpec::ZeroToInf,
        params: &[
            ParamSpec { name: "beta", range: "beta < 0" },
            ParamSpec { name: "gamma", range: "unrestricted" },
            ParamSpec { name: "delta", range: "unrestricted" },
        ],
        alpha_rule: Some(&[]),
        drift_display: "3 beta + 2 gamma x + delta x^2 - (alpha+4) x^3",
        b_display: "-n delta x - n(n-1) x^2",
        drift_form: forms::t2_x4_drift,
        b_form: forms::t2_x4_b,
        validate: rules::t2_x4,
        sample: rules::t2_x4_sample,
        coord_map: Some(CoordMapId::InvT),
        has_closed_form_v: true,
        ordered_spectrum: false,
        potential_only: false,
        note: None,
    },
    CatalogEntry {
        id: "T2.x3(1-x)",
        order: 4,
        a_display: "x^3(1-x)",
        w_display: "x^alpha (1-x)^beta exp(-gamma/x - delta/x^2)",
        a_factors: &[AFactor::X, AFactor::X, AFactor::X, AFactor::OneMinusX],
        w_factors: &[
            WFactor::XPow("alpha"),
            WFactor::OneMinusXPow("beta"),
            WFactor::ExpInv("gamma", -1, 1),
            WFactor::ExpInv("delta", -1, 2),
        ],
        interval: IntervalSpec::ZeroToOne,
        params: &[
            ParamSpec { name: "beta", range: "beta > -1" },
            ParamSpec { name: "gamma", range: "unrestricted" },
            ParamSpec { name: "delta", range: "delta > 0" },
        ],
        alpha_rule: Some(&[("beta", 1)]),
        drift_display: "-2 delta + (2 delta - gamma) x + (gamma-alpha-3) x^2 + (alpha+beta+4) x^3",
        b_display: "n(n+alpha-gamma+2) x + n(n-1) x^2",
        drift_form: forms::t2_x3_1mx_drift,
        b_form: forms::t2_x3_1mx_b,
        validate: rules::t2_x3_1mx,
        sample: rules::t2_x3_1mx_sample,
        coord_map: Some(CoordMapId::FourOver4PlusT2),
        has_closed_form_v: true,
        ordered_spectrum: true,
        potential_only: false,
        note: None,
    },
    CatalogEntry {
        id: "T2.x2(1+x2)",
        order: 4,
        a_display: "x^2(1+x^2)",
        w_display: "x^alpha (1+x^2)^beta exp(gamma/x + delta arctan x)",
        a_factors: &[AFactor::X, AFactor::X, AFactor::OnePlusX2],
        w_factors: &[
            WFactor::XPow("alpha"),
            WFactor::OnePlusX2Pow("beta"),
            WFactor::ExpInv("gamma", 1, 1),
            WFactor::ExpArctan("delta"),
        ],
        interval: IntervalSpec::ZeroToInf,
        params: &[
            ParamSpec { name: "beta", range: "unrestricted" },
            ParamSpec { name: "gamma", range: "gamma < 0" },
            ParamSpec { name: "delta", range: "unrestricted" },
        ],
        alpha_rule: Some(&[("beta", 2)]),
        drift_display: "gamma - (alpha+2) x + (gamma-delta) x^2 - (alpha+2beta+4) x^3",
        b_display: "n(delta-gamma) x - n(n-1) x^2",
        drift_form: forms::t2_x2_1px2_drift,
        b_form: forms::t2_x2_1px2_b,
        validate: rules::t2_x2_1px2,
        sample: rules::t2_x2_1px2_sample,
        coord_map: Some(CoordMapId::NegInvSinh),
        has_closed_form_v: true,
        ordered_spectrum: false,
        potential_only: false,
        note: None,
    },
    CatalogEntry {
        id: "T2.x2(1-x)(a-x)",
        order: 4,
        a_display: "x^2(1-x)(a-x)",
        w_display: "x^alpha (1-x)^beta (a-x)^gamma exp(delta/x)",
        a_factors: &[AFactor::X, AFactor::X, AFactor::OneMinusX, AFactor::Shifted("a")],
        w_factors: &[
            WFactor::XPow("alpha"),
            WFactor::OneMinusXPow("beta"),
            WFactor::ShiftedPow("a", "gamma"),
            WFactor::ExpInv("delta", 1, 1),
        ],
        interval: IntervalSpec::ZeroToOne,
        params: &[
            ParamSpec { name: "a", range: "a > 1" },
            ParamSpec { name: "beta", range: "beta > -1" },
            ParamSpec { name: "gamma", range: "unrestricted" },
            ParamSpec { name: "delta", range: "delta < 0" },
        ],
        alpha_rule: Some(&[("beta", 1), ("gamma", 1)]),
        drift_display: "a delta - (a alpha + (a+1) delta + 2a) x + ((a+1) alpha + a beta + gamma + delta + 3(a+1)) x^2 - (alpha+beta+gamma+4) x^3",
        b_display: "-n((a+1)(n+alpha+2) + a beta + gamma + delta) x - n(n-1) x^2",
        drift_form: forms::t2_x2_1mx_amx_drift,
        b_form: forms::t2_x2_1mx_amx_b,
        validate: rules::t2_x2_1mx_amx,
        sample: rules::t2_x2_1mx_amx_sample,
        coord_map: None,
        has_closed_form_v: false,
        ordered_spectrum: true,
        potential_only: false,
        note: None,
    },
    CatalogEntry {
        id: "T2.x2(1-x)2",
        order: 4,
        a_display: "x^2(1-x)^2",
        w_display: "x^alpha (1-x)^beta exp(gamma/x + delta/(1-x))",
        a_factors: &[AFactor::X, AFactor::X, AFactor::OneMinusX, AFactor::OneMinusX],
        w_factors: &[
            WFactor::XPow("alpha"),
            WFactor::OneMinusXPow("beta"),
            WFactor::ExpInv("gamma", 1, 1),
            WFactor::ExpInvOneMinusX("delta"),
        ],
        interval: IntervalSpec::ZeroToOne,
        params: &[
            ParamSpec { name: "beta", range: "unrestricted" },
            ParamSpec { name: "gamma", range: "gamma < 0" },
            ParamSpec { name: "delta", range: "delta < 0" },
        ],
        alpha_rule: Some(&[("beta", 1)]),
        drift_display: "gamma - (alpha+2gamma+2) x + (2alpha+beta+gamma-delta+6) x^2 - (alpha+beta+4) x^3",
        b_display: "-n(2n+2alpha+beta+gamma-delta+4) x - n(n-1) x^2",
        drift_form: forms::t2_x2_1mx2sq_drift,
        b_form: forms::t2_x2_1mx2sq_b,
        validate: rules::t2_x2_1mx2sq,
        sample: rules::t2_x2_1mx2sq_sample,
        coord_map: Some(CoordMapId::Logistic),
        has_closed_form_v: true,
        ordered_spectrum: true,
        potential_only: false,
        note: None,
    },
    CatalogEntry {
        id: "T2.x(a-x)(1+x2)",
        order: 4,
        a_display: "x(a-x)(1+x^2)",
        w_display: "x^alpha (a-x)^beta (1+x^2)^gamma exp(delta arctan x)",
        a_factors: &[AFactor::X, AFactor::Shifted("a"), AFactor::OnePlusX2],
        w_factors: &[
            WFactor::XPow("alpha"),
            WFactor::ShiftedPow("a", "beta"),
            WFactor::OnePlusX2Pow("gamma"),
            WFactor::ExpArctan("delta"),
        ],
        interval: IntervalSpec::ZeroToShape,
        params: &[
            ParamSpec { name: "a", range: "a > 0" },
            ParamSpec { name: "beta", range: "-1 < beta < -2n-2gamma-1" },
            ParamSpec { name: "gamma", range: "unrestricted (window for beta needs gamma < -n)" },
            ParamSpec { name: "delta", range: "unrestricted" },
        ],
        alpha_rule: Some(&[("beta", 1), ("gamma", 2)]),
        drift_display: "-a(alpha+1) + (alpha+beta+2-a delta) x - (a(alpha+2gamma+3) - delta) x^2 + (alpha+beta+2gamma+4) x^3",
        b_display: "n(a(n+alpha+2gamma+2) - delta) x + n(n-1) x^2",
        drift_form: forms::t2_x_amx_1px2_drift,
        b_form: forms::t2_x_amx_1px2_b,
        validate: rules::t2_x_amx_1px2,
        sample: rules::t2_x_amx_1px2_sample,
        coord_map: None,
        has_closed_form_v: false,
        ordered_spectrum: true,
        potential_only: false,
        note: None,
    },
    CatalogEntry {
        id: "T2.x(1-x)(a-x)(b-x)",
        order: 4,
        a_display: "x(1-x)(a-x)(b-x)",
        w_display: "x^alpha (1-x)^beta (a-x)^gamma (b-x)^delta",
        a_factors: &[
            AFactor::X,
            AFactor::OneMinusX,
            AFactor::Shifted("a"),
            AFactor::Shifted("b"),
        ],
        w_factors: &[
            WFactor::XPow("alpha"),
            WFactor::OneMinusXPow("beta"),
            WFactor::ShiftedPow("a", "gamma"),
            WFactor::ShiftedPow("b", "delta"),
        ],
        interval: IntervalSpec::ZeroToOne,
        params: &[
            ParamSpec { name: "a", range: "1 < a < b" },
            ParamSpec { name: "b", range: "b > a" },
            ParamSpec { name: "beta", range: "-1 < beta < -2n-gamma-delta-1" },
            ParamSpec { name: "gamma", range: "unrestricted (window for beta needs gamma+delta < -2n)" },
            ParamSpec { name: "delta", range: "unrestricted (see gamma)" },
        ],
        alpha_rule: Some(&[("beta", 1), ("gamma", 1), ("delta", 1)]),
        drift_display: "-ab(alpha+1) + (alpha(a+b+ab) + ab beta + b gamma + a delta + 2(a+b+ab)) x - ((1+a+b)(alpha+3) + (a+b) beta + (b+1) gamma + (a+1) delta) x^2 + (alpha+beta+gamma+delta+4) x^3",
        b_display: "n((1+a+b)(n+alpha+2) + (a+b) beta + (b+1) gamma + (a+1) delta) x + n(n-1) x^2",
        drift_form: forms::t2_4factor_drift,
        b_form: forms::t2_4factor_b,
        validate: rules::t2_4factor,
        sample: rules::t2_4factor_sample,
        coord_map: None,
        has_closed_form_v: false,
        ordered_spectrum: true,
        potential_only: false,
        note: None,
    },
    CatalogEntry {
        id: "V.x2(1-x2)",
        order: 4,
        a_display: "x^2(1-x^2)",
        w_display: "x^alpha (1-x)^beta (1+x)^gamma exp(delta/x)",
        a_factors: &[AFactor::X, AFactor::X, AFactor::OneMinusX, AFactor::OnePlusX],
        w_factors: &[
            WFactor::XPow("alpha"),
            WFactor::OneMinusXPow("beta"),
            WFactor::OnePlusXPow("gamma"),
            WFactor::ExpInv("delta", 1, 1),
        ],
        interval: IntervalSpec::ZeroToOne,
        params: &[
            ParamSpec { name: "beta", range: "beta > -1" },
            ParamSpec { name: "gamma", range: "unrestricted" },
            ParamSpec { name: "delta", range: "delta < 0" },
        ],
        alpha_rule: Some(&[("beta", 1), ("gamma", 1)]),
        drift_display: "delta - (alpha+2) x + (beta-gamma-delta) x^2 + (alpha+beta+gamma+4) x^3",
        b_display: "n(gamma-beta+delta) x + n(n-1) x^2",
        drift_form: forms::v_x2_1mx2_drift,
        b_form: forms::v_x2_1mx2_b,
        validate: rules::v_x2_1mx2,
        sample: rules::v_x2_1mx2_sample,
        coord_map: Some(CoordMapId::Sech),
        has_closed_form_v: true,
        ordered_spectrum: true,
        potential_only: true,
        note: Some("potential-catalog extra: closed-form V only, no operator-table row"),
    },
];
