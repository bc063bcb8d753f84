//! Verification pipelines and their machine-readable reports.

use std::collections::BTreeMap;
use std::time::Instant;

use brauer_core::building::{self, SearchOutcome};
use brauer_core::crossed::{self, CrossedProduct};
use brauer_core::{linalg, Error, Field, LatticeVertex, OneCocycle, ResidueClass};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::corpus::{self, CorpusCase};
use crate::json::{self, CocycleJson, SearchJson, TwoCocycleJson, VertexJson};

/// Formulas behind the two residue routes, embedded in every report.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Routes {
    pub theorem1: &'static str,
    pub reference: &'static str,
}

pub const ROUTES: Routes = Routes {
    theorem1: "b(phi) = -w(det c_phi) / m mod 1",
    reference: "a = Delta(c)^-1; b(phi) = (1/n) * sum_tau w(a[phi, tau]) mod 1",
};

#[derive(Clone, Debug, Serialize)]
pub struct BothResidues {
    pub theorem1: String,
    pub reference: String,
    pub agree: bool,
    pub routes: Routes,
}

#[derive(Clone, Debug, Serialize)]
pub struct SingleResidue {
    pub method: &'static str,
    pub residue: json::ResidueJson,
    pub value: String,
    pub route: &'static str,
}

pub fn residue_both(c: &OneCocycle) -> Result<BothResidues, Error> {
    let t1 = c.residue_theorem1()?;
    let rf = c.residue_reference();
    Ok(BothResidues { theorem1: t1.to_string(), reference: rf.to_string(), agree: t1 == rf, routes: ROUTES })
}

pub fn residue_single(c: &OneCocycle, theorem1: bool) -> Result<SingleResidue, Error> {
    let (method, r, route) = if theorem1 {
        ("theorem1", c.residue_theorem1()?, ROUTES.theorem1)
    } else {
        ("reference", c.residue_reference(), ROUTES.reference)
    };
    Ok(SingleResidue { method, residue: json::encode_residue(&r), value: r.to_string(), route })
}

/// A failed identity with the Galois indices at which it failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityFailure {
    pub identity: String,
    pub indices: Vec<u32>,
}

impl IdentityFailure {
    fn from_error(e: &Error) -> IdentityFailure {
        match e {
            Error::IdentityFailure { identity, indices } => {
                IdentityFailure { identity: identity.to_string(), indices: indices.to_vec() }
            }
            other => IdentityFailure { identity: other.to_string(), indices: Vec::new() },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Prop1Report {
    pub pass: bool,
    /// Named checks in the order they were run; a check after a failure is absent.
    pub checks: BTreeMap<&'static str, bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<IdentityFailure>,
    pub d: TwoCocycleJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factor_set: Option<TwoCocycleJson>,
}

/// Coboundary, crossed product, factor set, then `b * d = 1` entrywise and the
/// direct-sum decomposition of the algebra.
pub fn verify_prop1(c: &OneCocycle) -> Prop1Report {
    let d = c.coboundary();
    let mut checks = BTreeMap::new();
    let mut failure = None;
    let mut factor_set = None;
    let result = (|| -> Result<(), Error> {
        let cp = crossed::build_crossed_product(&d)?;
        run_check(&mut checks, "p_tilde_cocycle", || cp.verify_p_tilde())?;
        run_check(&mut checks, "membership", || cp.verify_membership())?;
        run_check(&mut checks, "conjugation", || {
            CrossedProduct::test_elements(d.tower()).iter().try_for_each(|l| cp.verify_conjugation(l))
        })?;
        let b = cp.extract_factor_set();
        checks.insert("factor_set", b.is_ok());
        let b = b?;
        factor_set = Some(json::encode_two_cocycle(&b));
        run_check(&mut checks, "b_times_d_is_one", || {
            let tw = d.tower();
            for s in tw.galois() {
                for t in tw.galois() {
                    if !tw.l().mul(b.entry(s, t), d.entry(s, t)).is_one() {
                        return Err(Error::IdentityFailure { identity: "b d = 1", indices: [s.exp, t.exp, 0] });
                    }
                }
            }
            Ok(())
        })?;
        run_check(&mut checks, "direct_sum", || cp.verify_direct_sum())
    })();
    if let Err(e) = &result {
        failure = Some(IdentityFailure::from_error(e));
    }
    Prop1Report { pass: result.is_ok(), checks, failure, d: json::encode_two_cocycle(&d), factor_set }
}

fn run_check(
    checks: &mut BTreeMap<&'static str, bool>,
    name: &'static str,
    f: impl FnOnce() -> Result<(), Error>,
) -> Result<(), Error> {
    let r = f();
    checks.insert(name, r.is_ok());
    r
}

#[derive(Clone, Debug, Serialize)]
pub struct FixedVertexJson {
    pub vertex: VertexJson,
    pub radius: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct InputDescriptor {
    pub p: u32,
    pub n: u32,
    pub f: Vec<u32>,
    pub n_mat: usize,
}

/// Summary of the residue comparison and the integral-model pipeline.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub input: InputDescriptor,
    pub residue_theorem1: String,
    pub residue_reference: String,
    pub agree: bool,
    pub prop1_entrywise_ok: bool,
    pub unramified: bool,
    pub search_skipped: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixed_vertex: Option<FixedVertexJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub integral_form: Option<CocycleJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub azumaya_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub routes: Routes,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<BTreeMap<&'static str, u128>>,
}

impl VerificationReport {
    /// True when nothing in the report contradicts the expected mathematics.
    pub fn consistent(&self) -> bool {
        self.agree
            && self.prop1_entrywise_ok
            && self.error.is_none()
            && (!self.unramified || self.fixed_vertex.is_some())
            && self.azumaya_ok != Some(false)
    }
}

/// Outcome of [`find_order`]: the report plus whether a resource cap stopped it.
pub struct FindOrder {
    pub report: VerificationReport,
    pub capped: bool,
}

pub fn find_order(c: &OneCocycle, radius: Option<u32>, force_search: bool, timings: bool) -> Result<FindOrder, Error> {
    let tw = c.tower();
    let mut times = BTreeMap::new();
    let mut clock = Instant::now();
    let mut lap = |name: &'static str, times: &mut BTreeMap<&'static str, u128>| {
        times.insert(name, clock.elapsed().as_millis());
        clock = Instant::now();
    };
    let t1 = c.residue_theorem1()?;
    let rf = c.residue_reference();
    lap("residues", &mut times);
    let prop1 = verify_prop1(c).pass;
    lap("prop1", &mut times);
    let unramified = t1.is_zero();
    let mut report = VerificationReport {
        input: InputDescriptor { p: tw.p(), n: tw.n(), f: tw.modulus().to_vec(), n_mat: c.size() },
        residue_theorem1: t1.to_string(),
        residue_reference: rf.to_string(),
        agree: t1 == rf,
        prop1_entrywise_ok: prop1,
        unramified,
        search_skipped: !(unramified || force_search),
        search: None,
        fixed_vertex: None,
        integral_form: None,
        azumaya_ok: None,
        error: None,
        routes: ROUTES,
        timing_ms: None,
    };
    let mut capped = false;
    if !report.search_skipped {
        let r = radius.unwrap_or_else(|| building::radius_bound(c));
        match building::find_fixed_vertex(c, r) {
            Ok(outcome) => {
                lap("search", &mut times);
                report.search = Some(json::encode_search(tw, &outcome));
                if let Some(v) = &outcome.vertex {
                    report.fixed_vertex =
                        Some(FixedVertexJson { vertex: json::encode_vertex(tw, v), radius: outcome.radius });
                    match integral_model(c, v) {
                        Ok((ci, ok)) => {
                            report.integral_form = Some(json::encode_cocycle(&ci));
                            report.azumaya_ok = Some(ok);
                        }
                        Err(e) => {
                            report.azumaya_ok = Some(false);
                            report.error = Some(e.to_string());
                        }
                    }
                    lap("azumaya", &mut times);
                }
            }
            Err(e @ Error::ScaleCap { .. }) => {
                report.error = Some(e.to_string());
                capped = true;
            }
            Err(e) => return Err(e),
        }
    }
    if timings {
        report.timing_ms = Some(times);
    }
    Ok(FindOrder { report, capped })
}

/// Integral form at `v`, its Azumaya order, and whether the order certifies.
pub fn integral_model(c: &OneCocycle, v: &LatticeVertex) -> Result<(OneCocycle, bool), Error> {
    let ci = building::integral_form(c, v)?;
    let order = building::azumaya_order(&ci)?;
    let ok = building::is_azumaya(&order.algebra);
    Ok((ci, ok))
}

pub fn fixed_vertex(c: &OneCocycle, radius: Option<u32>) -> Result<SearchOutcome, Error> {
    building::find_fixed_vertex(c, radius.unwrap_or_else(|| building::radius_bound(c)))
}

/// Names of the per-case properties, in evaluation order.
pub const PROPERTIES: [&str; 8] = [
    "residue_agreement",
    "prop1",
    "algebra_certification",
    "rescale_invariance",
    "conjugation_invariance",
    "integral_residue_zero",
    "fixed_vertex_pipeline",
    "vertex_type_invariance",
];

#[derive(Clone, Debug, Default, Serialize)]
pub struct PropertyTally {
    pub checked: usize,
    pub passed: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Reproduction {
    pub index: usize,
    pub kind: corpus::CaseKind,
    pub property: &'static str,
    pub detail: String,
    pub cocycle: CocycleJson,
}

#[derive(Clone, Debug, Serialize)]
pub struct SelftestSummary {
    pub seed: u64,
    pub iters: usize,
    pub pass: bool,
    pub cases_by_pair: BTreeMap<String, usize>,
    pub unramified_cases: usize,
    pub integral_cases: usize,
    pub properties: BTreeMap<&'static str, PropertyTally>,
    pub failures: Vec<Reproduction>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

/// Result of running every property on one case.
pub struct CaseOutcome {
    pub index: usize,
    pub unramified: bool,
    pub integral: bool,
    /// `(property, None)` when it held, `(property, Some(detail))` when it failed.
    pub results: Vec<(&'static str, Option<String>)>,
}

pub fn selftest(seed: u64, iters: usize, timings: bool) -> SelftestSummary {
    let start = Instant::now();
    let towers = corpus::towers();
    let cases: Vec<CorpusCase> = (0..iters).into_par_iter().map(|i| corpus::case(&towers, seed, i)).collect();
    let outcomes: Vec<CaseOutcome> = cases.par_iter().map(|c| run_properties(seed, c)).collect();
    let mut properties: BTreeMap<&'static str, PropertyTally> =
        PROPERTIES.iter().map(|&p| (p, PropertyTally::default())).collect();
    let mut failures = Vec::new();
    let mut cases_by_pair = BTreeMap::new();
    for (case, out) in cases.iter().zip(&outcomes) {
        let tw = case.cocycle.tower();
        *cases_by_pair.entry(format!("{},{}", tw.p(), tw.n())).or_insert(0) += 1;
        for (name, res) in &out.results {
            let tally = properties.get_mut(name).expect("known property");
            tally.checked += 1;
            match res {
                None => tally.passed += 1,
                Some(detail) => failures.push(Reproduction {
                    index: case.index,
                    kind: case.kind,
                    property: name,
                    detail: detail.clone(),
                    cocycle: json::encode_cocycle(&case.cocycle),
                }),
            }
        }
    }
    SelftestSummary {
        seed,
        iters,
        pass: failures.is_empty(),
        cases_by_pair,
        unramified_cases: outcomes.iter().filter(|o| o.unramified).count(),
        integral_cases: outcomes.iter().filter(|o| o.integral).count(),
        properties,
        failures,
        elapsed_ms: timings.then(|| start.elapsed().as_millis()),
    }
}

fn check(ok: bool, detail: impl FnOnce() -> String) -> Option<String> {
    (!ok).then(detail)
}

fn residues(c: &OneCocycle) -> Result<(ResidueClass, ResidueClass), Error> {
    Ok((c.residue_theorem1()?, c.residue_reference()))
}

/// Runs every property in [`PROPERTIES`] on one corpus case.
pub fn run_properties(seed: u64, case: &CorpusCase) -> CaseOutcome {
    let c = &case.cocycle;
    let tw = c.tower();
    let m = c.size();
    let mut rng = corpus::perturbation_rng(seed, case.index);
    let mut results = Vec::with_capacity(PROPERTIES.len());

    let base = residues(c);
    results.push((
        "residue_agreement",
        match &base {
            Ok((a, b)) => check(a == b && c.coboundary().inverse().verify_residue_lift().is_ok(), || {
                format!("theorem1 {} != reference {}", a, b)
            }),
            Err(e) => Some(e.to_string()),
        },
    ));
    let (r1, _) = base.unwrap_or((ResidueClass::ZERO, ResidueClass::ZERO));
    let unramified = r1.is_zero();

    let prop1 = verify_prop1(c);
    results.push(("prop1", prop1.failure.map(|f| format!("{} at {:?}", f.identity, f.indices))));

    results.push((
        "algebra_certification",
        match crossed::twisted_algebra(c) {
            Ok(a) => {
                let dim = a.algebra.dim();
                let centre = a.algebra.center().len();
                check(dim == m * m && centre == 1 && a.algebra.is_central_simple(), || {
                    format!("dim {} center {} ", dim, centre)
                })
            }
            Err(e) => Some(e.to_string()),
        },
    ));

    let lambda: Vec<_> = (0..tw.n()).map(|_| corpus::random_l_nonzero(tw, &mut rng)).collect();
    results.push((
        "rescale_invariance",
        match c.rescale(&lambda).and_then(|c2| residues(&c2)) {
            Ok((a, b)) => check(a == r1 && b == r1, || format!("rescaled residues {} / {} vs {}", a, b, r1)),
            Err(e) => Some(e.to_string()),
        },
    ));

    let g = corpus::random_gl_l(tw, m, &mut rng);
    results.push((
        "conjugation_invariance",
        match c.conjugate(&g).and_then(|c2| residues(&c2)) {
            Ok((a, b)) => check(a == r1 && b == r1, || format!("conjugated residues {} / {} vs {}", a, b, r1)),
            Err(e) => Some(e.to_string()),
        },
    ));

    let integral = c.has_integral_lifts();
    results.push(("integral_residue_zero", check(!integral || r1.is_zero(), || format!("residue {}", r1))));

    if unramified {
        results.push(("fixed_vertex_pipeline", fixed_vertex_pipeline(c).err()));
    }

    results.push(("vertex_type_invariance", vertex_type_checks(c, &mut rng).err()));

    CaseOutcome { index: case.index, unramified, integral, results }
}

/// Search within the radius bound, integral form, Azumaya order and span equality.
pub fn fixed_vertex_pipeline(c: &OneCocycle) -> Result<(), String> {
    let bound = building::radius_bound(c);
    let outcome = building::find_fixed_vertex(c, bound).map_err(|e| e.to_string())?;
    let v = outcome.vertex.ok_or_else(|| format!("no fixed vertex within radius {}", bound))?;
    let ci = building::integral_form(c, &v).map_err(|e| e.to_string())?;
    let l = c.tower().l();
    for (s, lift) in ci.lifts().iter().enumerate() {
        if !lift.data().iter().all(|x| x.is_integral()) || linalg::det(l, lift).valuation() != Some(0) {
            return Err(format!("integral form lift {} is not in GL(O_L)", s));
        }
    }
    if !ci.residue_theorem1().map_err(|e| e.to_string())?.is_zero() {
        return Err("integral form has nonzero residue".into());
    }
    let order = building::azumaya_order(&ci).map_err(|e| e.to_string())?;
    if !building::is_azumaya(&order.algebra) {
        return Err("order fails the Azumaya test".into());
    }
    let a = crossed::twisted_algebra(&ci).map_err(|e| e.to_string())?;
    if order.span() != a.span() {
        return Err("order does not span the twisted algebra".into());
    }
    Ok(())
}

/// Type is a class invariant, the Galois action preserves it, and the twisted
/// Frobenius shifts it by `w(det c_phi) mod m`.
pub fn vertex_type_checks(c: &OneCocycle, rng: &mut impl Rng) -> Result<(), String> {
    let tw = c.tower();
    let l = tw.l();
    let m = c.size();
    let err = |e: Error| e.to_string();
    let g = corpus::random_gl_l(tw, m, rng);
    let v = LatticeVertex::new(tw, &g).map_err(err)?;
    let u = corpus::random_gl_o(tw, m, rng);
    let lambda = corpus::random_l_nonzero(tw, rng);
    let moved = linalg::scale(l, &lambda, &linalg::mul(l, &g, &u));
    let v2 = LatticeVertex::new(tw, &moved).map_err(err)?;
    if v2 != v || v2.vertex_type() != v.vertex_type() {
        return Err("vertex class changed under unit and scalar perturbation".into());
    }
    let phi = tw.frobenius();
    let gv = LatticeVertex::new(tw, &tw.act_matrix(phi, v.rep())).map_err(err)?;
    if gv.vertex_type() != v.vertex_type() {
        return Err("Galois action changed the vertex type".into());
    }
    let shift = c.det_valuations()[phi.index()].rem_euclid(m as i64) as u32;
    let tv = building::twisted_act(c, phi, &v).map_err(err)?;
    if tv.vertex_type() != (v.vertex_type() + shift) % m as u32 {
        return Err("twisted action shifted the type by an unexpected amount".into());
    }
    Ok(())
}
