//! The verification suites as independent, deterministic checks.
//!
//! A [`Check`] is a named closure with its parameters; running it yields a
//! [`CheckRecord`].  Checks share nothing, so a driver may run them in any
//! order or in parallel and still assemble the same report.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::clifford::{sandwich_factor, sandwich_sum, Multivector, Signature};
use crate::conformal::sample::{random_factors, rational_length_point};
use crate::conformal::{bivector_basis, gn_factorize, infinitesimal_action, reflect_e1, GroupElement};
use crate::error::{Error, Result};
use crate::sbdo::{
    build_b, e_discrepancies, f_symbol, first_derivative_check, formal_parameters,
    is_homogeneous, laplacian_check, main_identity_check, printed_b0, proportionality, rankin_cohen,
    recurrence_rhs, riesz_constants, sbdo_residual, source_residual, SourceKind,
};
use crate::scalar::{int, Block, ExactRender, GaussianRational, Rational};
use crate::spin::{CliffordModule, MRep};
use crate::weyl::Op;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Lemma,
    Psi,
    Gn,
    Symbol,
    Main,
    Derivatives,
    Constants,
    Covariance,
    Sbdo,
    Recurrence,
    RankinCohen,
    Rep,
    Ledger,
}

impl Suite {
    pub const ALL: [Suite; 13] = [
        Suite::Lemma,
        Suite::Psi,
        Suite::Gn,
        Suite::Symbol,
        Suite::Main,
        Suite::Derivatives,
        Suite::Constants,
        Suite::Covariance,
        Suite::Sbdo,
        Suite::Recurrence,
        Suite::RankinCohen,
        Suite::Rep,
        Suite::Ledger,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemma => "lemma",
            Suite::Psi => "psi",
            Suite::Gn => "gn",
            Suite::Symbol => "symbol",
            Suite::Main => "main",
            Suite::Derivatives => "derivatives",
            Suite::Constants => "constants",
            Suite::Covariance => "covariance",
            Suite::Sbdo => "sbdo",
            Suite::Recurrence => "recurrence",
            Suite::RankinCohen => "rankin-cohen",
            Suite::Rep => "rep",
            Suite::Ledger => "ledger",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown check {s:?}")))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
}

impl CheckParams {
    fn n(n: usize) -> Self {
        CheckParams { n: Some(n), ..Default::default() }
    }

    fn with_k(mut self, k: usize) -> Self {
        self.k = Some(k);
        self
    }

    fn with_m(mut self, m: usize) -> Self {
        self.m = Some(m);
        self
    }

    fn with_variant(mut self, v: &str) -> Self {
        self.variant = Some(v.to_string());
        self
    }
}

impl fmt::Display for CheckParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(n) = self.n {
            parts.push(format!("n={n}"));
        }
        if let Some(k) = self.k {
            parts.push(format!("k={k}"));
        }
        if let Some(m) = self.m {
            parts.push(format!("m={m}"));
        }
        if let Some(v) = &self.variant {
            parts.push(v.clone());
        }
        f.write_str(&parts.join(" "))
    }
}

/// The result of one check.  `millis` is the only field that varies
/// between runs.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub check: Suite,
    pub params: CheckParams,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub millis: u64,
}

impl Serialize for Suite {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// Verdict plus an optional explanation (residual summary, ledger text).
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub passed: bool,
    pub detail: Option<String>,
}

impl Outcome {
    fn pass() -> Self {
        Outcome { passed: true, detail: None }
    }

    fn fail(detail: impl Into<String>) -> Self {
        Outcome { passed: false, detail: Some(detail.into()) }
    }

    fn expect(ok: bool, detail: impl FnOnce() -> String) -> Self {
        if ok {
            Outcome::pass()
        } else {
            Outcome::fail(detail())
        }
    }
}

type Runner = Box<dyn Fn() -> Result<Outcome> + Send + Sync>;

pub struct Check {
    pub suite: Suite,
    pub params: CheckParams,
    runner: Runner,
}

impl Check {
    fn new(suite: Suite, params: CheckParams, f: impl Fn() -> Result<Outcome> + Send + Sync + 'static) -> Self {
        Check { suite, params, runner: Box::new(f) }
    }

    pub fn run(&self) -> CheckRecord {
        let start = Instant::now();
        let outcome = (self.runner)().unwrap_or_else(|e| Outcome::fail(format!("error: {e}")));
        CheckRecord {
            check: self.suite,
            params: self.params.clone(),
            passed: outcome.passed,
            detail: outcome.detail,
            millis: start.elapsed().as_millis() as u64,
        }
    }
}

/// Parameter ranges of a run.  Each suite clips them to what it needs:
/// the recurrence starts at `m = 2` and the one-dimensional reduction only
/// uses `n = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ranges {
    pub n_max: usize,
    pub m_max: usize,
}

/// Sample sizes of the randomized suites.
pub const INVERSION_POINTS: usize = 24;
pub const ROUND_TRIPS: usize = 200;
pub const CONSTANT_SAMPLES: usize = 20;
pub const CONSTANT_TOLERANCE: f64 = 1e-9;

pub fn plan(suites: &[Suite], ranges: Ranges) -> Vec<Check> {
    let mut out = Vec::new();
    for &suite in suites {
        out.extend(plan_suite(suite, ranges));
    }
    out
}

fn residual_summary(op: &Op) -> String {
    format!("residual has {} nonzero terms, order {}", op.num_terms(), op.order())
}

fn plan_suite(suite: Suite, r: Ranges) -> Vec<Check> {
    let ns = 1..=r.n_max;
    match suite {
        Suite::Lemma => ns.map(|n| Check::new(suite, CheckParams::n(n), move || Ok(lemma(n)))).collect(),
        Suite::Psi => ns.map(|n| Check::new(suite, CheckParams::n(n), move || psi_l(n))).collect(),
        Suite::Gn => ns
            .flat_map(|n| {
                [
                    Check::new(suite, CheckParams::n(n).with_variant("inversion"), move || inversion(n)),
                    Check::new(suite, CheckParams::n(n).with_variant("round-trip"), move || round_trip(n)),
                ]
            })
            .collect(),
        Suite::Symbol => ns
            .map(|n| {
                Check::new(suite, CheckParams::n(n), move || {
                    let m = CliffordModule::new(n)?;
                    let symbol = crate::sbdo::build_f(&m)?.symbol();
                    Ok(Outcome::expect(symbol == f_symbol(&m), || "symb(F) differs from f".into()))
                })
            })
            .collect(),
        Suite::Main => ns
            .map(|n| {
                Check::new(suite, CheckParams::n(n), move || {
                    let m = CliffordModule::new(n)?;
                    if !main_identity_check(&m, 1)? {
                        return Ok(Outcome::fail("the two symbols differ"));
                    }
                    Ok(Outcome::expect(!main_identity_check(&m, 2)?, || "doubling the constant went unnoticed".into()))
                })
            })
            .collect(),
        Suite::Derivatives => ns
            .map(|n| {
                Check::new(suite, CheckParams::n(n), move || {
                    let m = CliffordModule::new(n)?;
                    for j in 1..=n {
                        if !first_derivative_check(&m, j)? {
                            return Ok(Outcome::fail(format!("first derivative formula fails for j = {j}")));
                        }
                    }
                    Ok(Outcome::expect(laplacian_check(&m)?, || "Laplacian formula fails".into()))
                })
            })
            .collect(),
        Suite::Constants => ns.map(|n| Check::new(suite, CheckParams::n(n), move || constants(n))).collect(),
        Suite::Covariance => ns
            .flat_map(|n| {
                [SourceKind::Multiplication, SourceKind::Source].into_iter().map(move |kind| {
                    let name = if kind == SourceKind::Multiplication { "M" } else { "E" };
                    Check::new(suite, CheckParams::n(n).with_variant(name), move || source_covariance(n, kind))
                })
            })
            .collect(),
        Suite::Sbdo => ns
            .flat_map(|n| (1..=r.m_max).flat_map(move |m| (0..=n).map(move |k| (n, k, m))))
            .map(|(n, k, m)| Check::new(suite, CheckParams::n(n).with_k(k).with_m(m), move || sbdo_covariance(n, k, m)))
            .collect(),
        Suite::Recurrence => ns
            .flat_map(|n| (2..=r.m_max).flat_map(move |m| (0..=n).map(move |k| (n, k, m))))
            .map(|(n, k, m)| Check::new(suite, CheckParams::n(n).with_k(k).with_m(m), move || recurrence(n, k, m)))
            .collect(),
        Suite::RankinCohen => {
            if r.n_max == 0 {
                Vec::new()
            } else {
                vec![Check::new(suite, CheckParams::n(1).with_k(0).with_m(1), rankin_cohen_reduction)]
            }
        }
        Suite::Rep => ns.map(|n| Check::new(suite, CheckParams::n(n), move || representation(n))).collect(),
        Suite::Ledger => ns
            .flat_map(|n| {
                [
                    Check::new(suite, CheckParams::n(n).with_variant("source"), move || source_ledger(n)),
                    Check::new(suite, CheckParams::n(n).with_variant("sbdo"), move || sbdo_ledger(n)),
                ]
            })
            .collect(),
    }
}

fn lemma(n: usize) -> Outcome {
    let sig = Signature::euclidean(n);
    for blade in 0u32..(1 << n) {
        let e = Multivector::blade(sig, blade, Rational::one());
        let k = blade.count_ones() as usize;
        if sandwich_sum(sig, &e) != e.scale(&sandwich_factor::<Rational>(n, k)) {
            return Outcome::fail(format!("fails on {}", sig.blade_name(blade)));
        }
    }
    Outcome::pass()
}

fn psi_l(n: usize) -> Result<Outcome> {
    let m = CliffordModule::new(n)?;
    let l = m.operator_l();
    for k in 0..=n {
        let psi = m.psi_matrix(k)?;
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let c: GaussianRational = int(sign * (n as i64 - 2 * k as i64));
        if &psi * &l != psi.map(|e| e.clone() * c.clone()) {
            return Ok(Outcome::fail(format!("fails for k = {k}")));
        }
    }
    Ok(Outcome::pass())
}

fn inversion(n: usize) -> Result<Outcome> {
    let sig = Signature::euclidean(n);
    let mut rng = ChaCha8Rng::seed_from_u64(0x1_0000 + n as u64);
    for _ in 0..INVERSION_POINTS {
        let (x, len) = rational_length_point(n, &mut rng);
        let len2 = &len * &len;
        let f = gn_factorize(&GroupElement::w(n).inverse().mul(&GroupElement::nbar(&x)))?;
        let scaled = |v: &[Rational]| v.iter().map(|c| c / &len2).collect::<Vec<_>>();
        let m = -&(&Multivector::e(sig, 1) * &Multivector::vector(sig, &x)).scale(&(Rational::one() / &len));
        if f.v != scaled(&reflect_e1(&x)) || f.m != m || f.r != len || f.u != scaled(&x) {
            return Ok(Outcome::fail(format!("unexpected factors at x = {x:?}: {}", f.render())));
        }
    }
    Ok(Outcome::pass())
}

fn round_trip(n: usize) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x2_0000 + n as u64);
    for _ in 0..ROUND_TRIPS {
        let f = random_factors(n, &mut rng);
        let g = f.recompose()?;
        if gn_factorize(&g)? != f {
            return Ok(Outcome::fail(format!("round trip fails for {}", f.render())));
        }
    }
    Ok(Outcome::pass())
}

/// Deterministic sample points in `(-4, 4)` that keep every Gamma argument
/// away from the poles.
pub fn constant_samples(n: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x3_0000 + n as u64);
    let mut out = Vec::new();
    while out.len() < CONSTANT_SAMPLES {
        let s: f64 = rand::Rng::gen_range(&mut rng, -4.0..4.0);
        if riesz_constants(s, n).is_ok() && (s - s.round()).abs() > 1e-3 {
            out.push(s);
        }
    }
    out
}

fn constants(n: usize) -> Result<Outcome> {
    for s in constant_samples(n) {
        let d = riesz_constants(s, n)?;
        if d.ratio >= CONSTANT_TOLERANCE || d.consistency >= CONSTANT_TOLERANCE {
            return Ok(Outcome::fail(format!("s = {s}: ratio {:e}, consistency {:e}", d.ratio, d.consistency)));
        }
    }
    Ok(Outcome::pass())
}

fn source_covariance(n: usize, kind: SourceKind) -> Result<Outcome> {
    let (l, u) = formal_parameters();
    let m = CliffordModule::new(n)?;
    for (name, x) in bivector_basis(n) {
        let res = source_residual(kind, &m, &x, &l, &u)?;
        if !res.is_zero() {
            return Ok(Outcome::fail(format!("X = {name}: {}", residual_summary(&res))));
        }
    }
    Ok(Outcome::pass())
}

fn sbdo_covariance(n: usize, k: usize, m_order: usize) -> Result<Outcome> {
    let (l, u) = formal_parameters();
    let m = CliffordModule::new(n)?;
    let b = build_b(&m, k, &l, &u, m_order)?;
    if !is_homogeneous(&b, m_order) {
        return Ok(Outcome::fail("not homogeneous of the expected order"));
    }
    for (name, x) in bivector_basis(n) {
        let res = sbdo_residual(&m, &b, k, m_order, &x, &l, &u)?;
        if !res.is_zero() {
            return Ok(Outcome::fail(format!("X = {name}: {}", residual_summary(&res))));
        }
    }
    Ok(Outcome::pass())
}

fn recurrence(n: usize, k: usize, m_order: usize) -> Result<Outcome> {
    let (l, u) = formal_parameters();
    let m = CliffordModule::new(n)?;
    let b = build_b(&m, k, &l, &u, m_order)?;
    let rhs = recurrence_rhs(&m, k, &l, &u, m_order, 1)?;
    if b != rhs {
        return Ok(Outcome::fail(residual_summary(&b.try_sub(&rhs)?)));
    }
    let unshifted = recurrence_rhs(&m, k, &l, &u, m_order, 0)?;
    Ok(Outcome::expect(b != unshifted, || "the unshifted composition also matches".into()))
}

fn rankin_cohen_reduction() -> Result<Outcome> {
    let (l, u) = formal_parameters();
    let m = CliffordModule::new(1)?;
    let b = build_b(&m, 0, &l, &u, 1)?;
    Ok(match proportionality(&b, &rankin_cohen(&l, &u)) {
        Some(c) => Outcome { passed: true, detail: Some(format!("constant {}", c.render())) },
        None => Outcome::fail("not proportional"),
    })
}

fn reps(n: usize) -> Result<Vec<MRep>> {
    let m = CliffordModule::new(n)?;
    let mut out = vec![MRep::Spinor(m.clone()), MRep::Dual(m)];
    out.extend((0..=n).map(|k| MRep::KForm { n, k }));
    Ok(out)
}

fn representation(n: usize) -> Result<Outcome> {
    let lambda = formal_parameters().0;
    let basis = bivector_basis(n);
    for rep in reps(n)? {
        let ops = basis
            .iter()
            .map(|(_, x)| infinitesimal_action(x, &lambda, &rep, Block::X, false))
            .collect::<Result<Vec<_>>>()?;
        for (i, (a, x)) in basis.iter().enumerate() {
            for (j, (b, y)) in basis.iter().enumerate().skip(i + 1) {
                let rhs = infinitesimal_action(&x.commutator(y)?, &lambda, &rep, Block::X, false)?;
                if ops[i].commutator(&ops[j])? != rhs {
                    return Ok(Outcome::fail(format!("[{a}, {b}] on {rep:?}")));
                }
            }
        }
    }
    Ok(Outcome::pass())
}

/// The printed source operator should differ from the derived one in the
/// sign of the fifth term only, and that difference should break
/// covariance.
pub fn source_ledger(n: usize) -> Result<Outcome> {
    let (l, u) = formal_parameters();
    let diffs = e_discrepancies(n, &l, &u);
    let lines: Vec<String> = diffs
        .iter()
        .map(|d| format!("term {} [{}]: derived {} vs printed {}", d.index, d.name, d.substituted.render(), d.printed.render()))
        .collect();
    let detail = lines.join("; ");
    let expected = diffs.len() == 1 && diffs[0].index == 5 && diffs[0].printed == -&diffs[0].substituted;
    if !expected {
        return Ok(Outcome::fail(format!("unexpected discrepancies: {detail}")));
    }
    let m = CliffordModule::new(n)?;
    let mut broken = 0;
    for (_, x) in bivector_basis(n) {
        if !source_residual(SourceKind::PrintedSource, &m, &x, &l, &u)?.is_zero() {
            broken += 1;
        }
    }
    if broken == 0 {
        return Ok(Outcome::fail("the printed form is covariant too"));
    }
    Ok(Outcome { passed: true, detail: Some(format!("{detail}; printed form fails covariance for {broken} basis elements")) })
}

/// The derived `B^(1)_0` should equal the printed closed form once the
/// stray `+` is read as multiplication, and differ from the literal
/// reading.
pub fn sbdo_ledger(n: usize) -> Result<Outcome> {
    let (l, u) = formal_parameters();
    let m = CliffordModule::new(n)?;
    let b = build_b(&m, 0, &l, &u, 1)?;
    let product = printed_b0(&m, &l, &u, false)?;
    let literal = printed_b0(&m, &l, &u, true)?;
    if b != product {
        return Ok(Outcome::fail(format!("derived B_0 differs from the product reading: {}", residual_summary(&b.try_sub(&product)?))));
    }
    let diff = b.try_sub(&literal)?;
    if diff.is_zero() {
        return Ok(Outcome::fail("the literal reading also matches"));
    }
    Ok(Outcome {
        passed: true,
        detail: Some(format!("matches with '+ sum' read as a product; the literal reading differs by {}", diff.render().replace('\n', " + "))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn quick_suites_pass_at_small_n() {
        let checks = plan(&[Suite::Lemma, Suite::Psi, Suite::Gn, Suite::Constants, Suite::Ledger], Ranges { n_max: 2, m_max: 1 });
        for c in &checks {
            let r = c.run();
            assert!(r.passed, "{} {}: {:?}", r.check, r.params, r.detail);
        }
    }

    #[test]
    fn recurrence_needs_m_two() {
        assert!(plan(&[Suite::Recurrence], Ranges { n_max: 2, m_max: 1 }).is_empty());
        assert_eq!(plan(&[Suite::Recurrence], Ranges { n_max: 2, m_max: 2 }).len(), 5);
    }
}
