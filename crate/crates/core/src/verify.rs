//! Seeded verification suites. Each suite samples inputs from a ChaCha8
//! stream keyed by the seed and reports one line per checked law.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{
    compute_q, frobenius_shift_check, leading_linearity_check, symmetry_check, verify_polynomiality,
    zero_identity_check, Op, QKey,
};
use crate::error::{Error, Result};
use crate::jets::{eps_prime, evaluate_in_witt, lemma63_sides, Expr, JetRing, LazardianJetRing, TruncatedSeries};
use crate::lazard::{normalize, RawSeries};
use crate::params::Params;
use crate::poly::{cq_polynomial, FpPoly, IntPoly, Integers, Monomial, PExponent, PrimeField, Variable};
use crate::witt::{
    counit_epsilon_expansion, pi_divide, teichmuller_section, unit_eta, ResidueRing, UwClass, WittVector,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    RingAxioms,
    FrobeniusShift,
    Polynomiality,
    FvIdentity,
    ExactSequence,
    Teichmuller,
    PiExpansion,
    Lemma63,
    PhiHom,
    Retraction,
    JetsTriangle,
    NormalForm,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::RingAxioms,
        Suite::FrobeniusShift,
        Suite::Polynomiality,
        Suite::FvIdentity,
        Suite::ExactSequence,
        Suite::Teichmuller,
        Suite::PiExpansion,
        Suite::Lemma63,
        Suite::PhiHom,
        Suite::Retraction,
        Suite::JetsTriangle,
        Suite::NormalForm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::RingAxioms => "ring-axioms",
            Suite::FrobeniusShift => "frobenius-shift",
            Suite::Polynomiality => "polynomiality",
            Suite::FvIdentity => "fv-identity",
            Suite::ExactSequence => "exact-sequence",
            Suite::Teichmuller => "teichmuller",
            Suite::PiExpansion => "pi-expansion",
            Suite::Lemma63 => "lemma63",
            Suite::PhiHom => "phi-hom",
            Suite::Retraction => "retraction",
            Suite::JetsTriangle => "jets-triangle",
            Suite::NormalForm => "normal-form",
        }
    }

    fn default_samples(self) -> usize {
        match self {
            Suite::RingAxioms | Suite::PhiHom => 100,
            Suite::NormalForm => 200,
            Suite::JetsTriangle => 30,
            _ => 50,
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
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite `{s}`")))
    }
}

/// Inputs of a suite run. Unset sizes fall back to per-suite defaults.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub p: u64,
    pub q: u64,
    pub t: i32,
    /// Largest `m`: Witt windows have length up to `m + 1`, jets go up to order `m`.
    pub m: Option<u32>,
    /// Largest level `n` for Q tables and the universal jet identity.
    pub n: Option<u32>,
    pub seed: u64,
    /// Random inputs per checked law.
    pub samples: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            p: 2,
            q: 2,
            t: 0,
            m: None,
            n: None,
            seed: 0,
            samples: None,
        }
    }
}

impl SuiteConfig {
    fn samples(&self, suite: Suite) -> usize {
        self.samples.unwrap_or_else(|| suite.default_samples())
    }

    /// The supported Q range: `n ≤ 4` at `p = q = 2`, `n ≤ 2` otherwise.
    fn q_levels(&self) -> u32 {
        self.n.unwrap_or(if (self.p, self.q) == (2, 2) { 4 } else { 2 })
    }

    fn params(&self) -> Result<Params> {
        Params::infinite(self.p, self.q, self.t, 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{mark} {} ({} cases)", self.name, self.cases)?;
        if let Some(d) = &self.detail {
            write!(f, ": {d}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub config: SuiteConfig,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

impl SuiteReport {
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{}/{c}", self.suite)?;
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        write!(
            f,
            "{}: {} of {} checks passed",
            self.suite,
            self.checks.len() - failed,
            self.checks.len()
        )
    }
}

/// Accumulates laws in order of first use. An error counts as a failure.
#[derive(Default)]
struct Tally {
    checks: Vec<CheckResult>,
}

impl Tally {
    fn record(&mut self, name: &str, outcome: Result<bool>, context: impl FnOnce() -> String) {
        let idx = match self.checks.iter().position(|c| c.name == name) {
            Some(i) => i,
            None => {
                self.checks.push(CheckResult {
                    name: name.to_string(),
                    passed: true,
                    cases: 0,
                    detail: None,
                });
                self.checks.len() - 1
            }
        };
        let check = &mut self.checks[idx];
        check.cases += 1;
        let failure = match outcome {
            Ok(true) => None,
            Ok(false) => Some(context()),
            Err(e) => Some(format!("{}: {e}", context())),
        };
        if let Some(msg) = failure {
            if check.passed {
                check.detail = Some(msg);
            }
            check.passed = false;
        }
    }

    fn check(&mut self, name: &str, outcome: Result<bool>) {
        self.record(name, outcome, String::new);
    }
}

pub fn run_suite(suite: Suite, config: &SuiteConfig) -> Result<SuiteReport> {
    config.params()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut tally = Tally::default();
    let samples = config.samples(suite);
    match suite {
        Suite::RingAxioms => ring_axioms(config, samples, &mut rng, &mut tally)?,
        Suite::FrobeniusShift => frobenius_shift(config, samples, &mut rng, &mut tally)?,
        Suite::Polynomiality => polynomiality(config, &mut tally),
        Suite::FvIdentity => fv_identity(config, samples, &mut rng, &mut tally)?,
        Suite::ExactSequence => exact_sequence(config, samples, &mut rng, &mut tally)?,
        Suite::Teichmuller => teichmuller(config, samples, &mut rng, &mut tally)?,
        Suite::PiExpansion => pi_expansion(config, samples, &mut rng, &mut tally)?,
        Suite::Lemma63 => lemma63(config, &mut tally),
        Suite::PhiHom => phi_hom(config, samples, &mut rng, &mut tally)?,
        Suite::Retraction => retraction(config, samples, &mut rng, &mut tally)?,
        Suite::JetsTriangle => jets_triangle(config, samples, &mut rng, &mut tally)?,
        Suite::NormalForm => normal_form(config, samples, &mut rng, &mut tally)?,
    }
    let passed = tally.checks.iter().all(|c| c.passed);
    Ok(SuiteReport {
        suite,
        config: config.clone(),
        checks: tally.checks,
        passed,
    })
}

fn gen_x() -> Variable {
    Variable::gen("x")
}

/// Perfect, nilpotent and ω-specialised rings on one generator `x`.
fn ring_classes(cfg: &SuiteConfig, m: u32) -> Result<Vec<(&'static str, Arc<ResidueRing>)>> {
    let (p, q) = (cfg.p, cfg.q);
    let f = PrimeField::new(p);
    let x = FpPoly::var(f, gen_x());
    let values = (1..=m.max(1))
        .map(|i| {
            if i % 2 == 1 {
                x.pow(i as u64)
            } else {
                &x + &FpPoly::one(f)
            }
        })
        .collect();
    Ok(vec![
        ("perfect", Arc::new(ResidueRing::perfect(p, q, vec![gen_x()])?)),
        ("nilpotent", Arc::new(ResidueRing::nilpotent(p, q, vec![gen_x()], 3)?)),
        (
            "specialized",
            Arc::new(ResidueRing::specialized(p, q, vec![gen_x()], values)?),
        ),
    ])
}

fn random_vector(rng: &mut ChaCha8Rng, ring: &Arc<ResidueRing>, t: i32, len: usize) -> Result<WittVector> {
    let coords = (0..len).map(|_| ring.random_element(rng, 3, 3)).collect();
    WittVector::new(ring.clone(), t, coords)
}

fn eq(a: Result<WittVector>, b: Result<WittVector>) -> Result<bool> {
    Ok(a? == b?)
}

fn ring_axioms(cfg: &SuiteConfig, samples: usize, rng: &mut ChaCha8Rng, tally: &mut Tally) -> Result<()> {
    let m = cfg.m.unwrap_or(3);
    let t = cfg.t;
    for (class, ring) in ring_classes(cfg, m)? {
        for i in 0..samples {
            let len = 1 + i % (m as usize + 1);
            let a = random_vector(rng, &ring, t, len)?;
            let b = random_vector(rng, &ring, t, len)?;
            let c = random_vector(rng, &ring, t, len)?;
            let zero = WittVector::zero(ring.clone(), t, len);
            let one = WittVector::one(ring.clone(), t, len);
            let ctx = || format!("window {len}, a = {a}, b = {b}, c = {c}");
            let name = |law: &str| format!("{class}/{law}");
            tally.record(&name("add-assoc"), eq(a.add(&b)?.add(&c), a.add(&b.add(&c)?)), ctx);
            tally.record(&name("add-comm"), eq(a.add(&b), b.add(&a)), ctx);
            tally.record(&name("mul-assoc"), eq(a.mul(&b)?.mul(&c), a.mul(&b.mul(&c)?)), ctx);
            tally.record(&name("mul-comm"), eq(a.mul(&b), b.mul(&a)), ctx);
            tally.record(
                &name("distributive"),
                eq(a.mul(&b.add(&c)?), a.mul(&b)?.add(&a.mul(&c)?)),
                ctx,
            );
            tally.record(&name("add-identity"), eq(a.add(&zero), Ok(a.clone())), ctx);
            tally.record(&name("mul-identity"), eq(a.mul(&one), Ok(a.clone())), ctx);
            tally.record(&name("additive-inverse"), eq(a.add(&a.neg()?), Ok(zero.clone())), ctx);
        }
    }
    Ok(())
}

fn frobenius_shift(cfg: &SuiteConfig, samples: usize, rng: &mut ChaCha8Rng, tally: &mut Tally) -> Result<()> {
    let params = cfg.params()?;
    for op in [Op::Add, Op::Mul] {
        for n in 0..=cfg.q_levels() {
            tally.record(
                &format!("q-polynomials/{op}"),
                frobenius_shift_check(op, n, &params),
                || format!("n = {n}"),
            );
        }
    }
    let m = cfg.m.unwrap_or(3);
    let ring = Arc::new(ResidueRing::perfect(cfg.p, cfg.q, vec![gen_x()])?);
    for i in 0..samples {
        let len = 1 + i % (m as usize + 1);
        let a = random_vector(rng, &ring, cfg.t, len)?;
        let b = random_vector(rng, &ring, cfg.t, len)?;
        let ctx = || format!("a = {a}, b = {b}");
        tally.record(
            "witt/additive",
            eq(Ok(a.add(&b)?.frobenius_op()), a.frobenius_op().add(&b.frobenius_op())),
            ctx,
        );
        tally.record(
            "witt/multiplicative",
            eq(Ok(a.mul(&b)?.frobenius_op()), a.frobenius_op().mul(&b.frobenius_op())),
            ctx,
        );
        tally.record(
            "witt/inverse",
            eq(a.frobenius_op().frobenius_inverse(), Ok(a.clone())),
            ctx,
        );
    }
    Ok(())
}

fn polynomiality(cfg: &SuiteConfig, tally: &mut Tally) {
    let Ok(params) = cfg.params() else { return };
    for op in [Op::Add, Op::Mul] {
        for n in 0..=cfg.q_levels() {
            let ctx = || format!("n = {n}");
            let member = QKey::new(op, n, cfg.p, cfg.q, cfg.t)
                .and_then(compute_q)
                .map(|q| verify_polynomiality(&q, n, &params));
            tally.record(&format!("{op}/membership"), member, ctx);
            tally.record(&format!("{op}/symmetry"), symmetry_check(op, n, &params), ctx);
            tally.record(&format!("{op}/zero-identity"), zero_identity_check(op, n, &params), ctx);
        }
    }
    for n in 0..=cfg.q_levels() {
        tally.record("add/leading-linearity", leading_linearity_check(n, &params), || {
            format!("n = {n}")
        });
    }
}

fn fv_identity(cfg: &SuiteConfig, samples: usize, rng: &mut ChaCha8Rng, tally: &mut Tally) -> Result<()> {
    let m_max = cfg.m.unwrap_or(3);
    let t = cfg.t;
    for (class, ring) in ring_classes(cfg, m_max + 1)? {
        for i in 0..samples {
            let m = i % (m_max as usize + 1);
            let a = random_vector(rng, &ring, t, m + 1)?;
            let b = random_vector(rng, &ring, t, m + 1)?;
            let pi = WittVector::pi(ring.clone(), t, m + 2);
            let ctx = || format!("m = {m}, a = {a}, b = {b}");
            tally.record(
                &format!("{class}/pi-iota-equals-fv"),
                eq(pi.mul(&a.iota()), Ok(a.verschiebung().frobenius_op())),
                ctx,
            );
            tally.record(
                &format!("{class}/v-additive"),
                eq(Ok(a.add(&b)?.verschiebung()), a.verschiebung().add(&b.verschiebung())),
                ctx,
            );
        }
    }
    Ok(())
}

fn v_power(a: &WittVector, r: usize) -> WittVector {
    (0..r).fold(a.clone(), |acc, _| acc.verschiebung())
}

fn exact_sequence(cfg: &SuiteConfig, samples: usize, rng: &mut ChaCha8Rng, tally: &mut Tally) -> Result<()> {
    let m_max = cfg.m.unwrap_or(3) as usize;
    let t = cfg.t;
    for (class, ring) in ring_classes(cfg, m_max as u32 + 2)? {
        for i in 0..samples {
            let m = i % (m_max + 1);
            let r = 1 + (i / (m_max + 1)) % 2;
            let a = random_vector(rng, &ring, t, m + 1)?;
            let a2 = random_vector(rng, &ring, t, m + 1)?;
            let va = v_power(&a, r);
            let ctx = || format!("m = {m}, r = {r}, a = {a}");
            let name = |law: &str| format!("{class}/{law}");
            tally.record(&name("composite-zero"), Ok(va.truncates_to_zero(r)), ctx);
            tally.record(
                &name("v-injective"),
                eq(va.verschiebung_preimage(r), Ok(a.clone())),
                ctx,
            );
            tally.record(
                &name("v-additive"),
                eq(Ok(v_power(&a.add(&a2)?, r)), va.add(&v_power(&a2, r))),
                ctx,
            );
            let c = random_vector(rng, &ring, t - r as i32, m + r + 1)?;
            let middle = WittVector::new(
                ring.clone(),
                c.t(),
                (0..c.len())
                    .map(|j| if j < r { ring.zero() } else { c.coords()[j].clone() })
                    .collect(),
            )?;
            tally.record(
                &name("exact-middle"),
                middle.verschiebung_preimage(r).map(|d| v_power(&d, r) == middle),
                ctx,
            );
            let e = random_vector(rng, &ring, t - r as i32, r)?;
            let mut coords = e.coords().to_vec();
            coords.resize(m + r + 1, ring.zero());
            let lifted = WittVector::new(ring.clone(), e.t(), coords)?;
            tally.record(
                &name("truncation-surjective"),
                eq(lifted.truncate(r), Ok(e.clone())),
                ctx,
            );
            let c2 = random_vector(rng, &ring, t - r as i32, m + r + 1)?;
            tally.record(
                &name("truncation-additive"),
                eq(c.add(&c2)?.truncate(r), c.truncate(r)?.add(&c2.truncate(r)?)),
                ctx,
            );
            tally.record(
                &name("truncation-multiplicative"),
                eq(c.mul(&c2)?.truncate(r), c.truncate(r)?.mul(&c2.truncate(r)?)),
                ctx,
            );
        }
    }
    Ok(())
}

fn teichmuller(cfg: &SuiteConfig, samples: usize, rng: &mut ChaCha8Rng, tally: &mut Tally) -> Result<()> {
    let m = cfg.m.unwrap_or(2) as usize;
    let t = cfg.t;
    let ring = Arc::new(ResidueRing::perfect(cfg.p, cfg.q, vec![gen_x()])?);
    for i in 0..samples {
        let len = 1 + i % (m + 1);
        let alpha = ring.random_element(rng, 2, 3);
        let beta = ring.random_element(rng, 2, 3);
        let b = random_vector(rng, &ring, t, len)?;
        let lift = |c: &FpPoly| teichmuller_section(c, ring.clone(), t, len);
        let ctx = || format!("window {len}, α = {alpha}, β = {beta}, b = {b}");
        tally.record(
            "multiplicative",
            eq(lift(&alpha).mul(&lift(&beta)), Ok(lift(&ring.mul(&alpha, &beta)))),
            ctx,
        );
        let scaled = b
            .coords()
            .iter()
            .enumerate()
            .map(|(j, c)| Ok(ring.mul(&ring.frobenius(&alpha, j as i32)?, c)))
            .collect::<Result<Vec<_>>>()?;
        tally.record(
            "scalar-action",
            eq(lift(&alpha).mul(&b), WittVector::new(ring.clone(), t, scaled)),
            ctx,
        );
        tally.record(
            "unit",
            eq(Ok(lift(&ring.one())), Ok(WittVector::one(ring.clone(), t, len))),
            ctx,
        );
    }
    Ok(())
}

fn pi_expansion(cfg: &SuiteConfig, samples: usize, rng: &mut ChaCha8Rng, tally: &mut Tally) -> Result<()> {
    let m = cfg.m.unwrap_or(2) as usize;
    let t = cfg.t;
    let ring = Arc::new(ResidueRing::perfect(cfg.p, cfg.q, vec![gen_x()])?);
    for i in 0..samples {
        let len = 1 + i % (m + 1);
        let a = random_vector(rng, &ring, t, len)?;
        let b = random_vector(rng, &ring, t, len)?;
        let alpha = ring.random_element(rng, 2, 3);
        let ctx = || format!("window {len}, a = {a}, b = {b}, α = {alpha}");
        tally.record("expansion", eq(counit_epsilon_expansion(&a), Ok(a.clone())), ctx);
        tally.record(
            "unit-round-trip",
            unit_eta(&alpha, ring.clone())
                .and_then(|u| Ok(UwClass::of(&u.representative(t, len))? == u && u.residue() == &alpha)),
            ctx,
        );
        tally.record(
            "counit-round-trip",
            UwClass::of(&a).and_then(|c| Ok(unit_eta(c.residue(), ring.clone())? == c)),
            ctx,
        );
        let pi = WittVector::pi(ring.clone(), t, len);
        tally.record(
            "residue-well-defined",
            Ok(UwClass::of(&a.add(&pi.mul(&b)?)?)? == UwClass::of(&a)?),
            ctx,
        );
        if len > 1 {
            let shifted = pi.mul(&b)?;
            tally.record(
                "pi-division",
                eq(pi.mul(&pi_divide(&shifted)?), Ok(shifted.clone())),
                ctx,
            );
        }
    }
    let nil = Arc::new(ResidueRing::nilpotent(cfg.p, cfg.q, vec![gen_x()], 2)?);
    let a = WittVector::one(nil.clone(), t, 2);
    tally.check(
        "non-perfect-rejected",
        Ok(matches!(counit_epsilon_expansion(&a), Err(Error::NotPerfect(_)))
            && matches!(unit_eta(&nil.one(), nil.clone()), Err(Error::NotPerfect(_)))),
    );
    Ok(())
}

fn lemma63(cfg: &SuiteConfig, tally: &mut Tally) {
    for n in 0..=cfg.n.unwrap_or(6) as usize {
        let (lhs, rhs, nl, nr) = lemma63_sides(n);
        tally.record(&format!("n={n}"), Ok(lhs == rhs), || {
            format!("{nl} and {nr} summands disagree")
        });
    }
}

fn generator_names(r: usize) -> Vec<Arc<str>> {
    (1..=r).map(|i| Arc::from(format!("t{i}").as_str())).collect()
}

/// A random polynomial in the generators with total degree at most 2.
fn random_k_element(rng: &mut ChaCha8Rng, f: PrimeField, names: &[Arc<str>]) -> FpPoly {
    let mut terms = Vec::new();
    for _ in 0..rng.gen_range(0..=3) {
        let mut factors = Vec::new();
        let mut budget = rng.gen_range(0..=2u64);
        while budget > 0 {
            let g = names.choose(rng).expect("at least one generator");
            factors.push((Variable::Gen(g.clone()), PExponent::ONE));
            budget -= 1;
        }
        terms.push((Monomial::from_factors(factors), rng.gen_range(1..f.p())));
    }
    FpPoly::from_terms(f, terms)
}

fn random_a_element(rng: &mut ChaCha8Rng, f: PrimeField, names: &[Arc<str>], m: u32) -> TruncatedSeries<PrimeField> {
    let coeffs = (0..=m).map(|_| random_k_element(rng, f, names)).collect();
    TruncatedSeries::new(f, m, coeffs)
}

/// A random expression tree over the given leaves.
fn random_expr(rng: &mut ChaCha8Rng, leaves: &[Expr], depth: u32) -> Expr {
    if depth == 0 || rng.gen_bool(0.3) {
        return leaves.choose(rng).expect("nonempty").clone();
    }
    let a = random_expr(rng, leaves, depth - 1);
    match rng.gen_range(0..4) {
        0 | 1 => Expr::add(a, random_expr(rng, leaves, depth - 1)),
        2 => Expr::mul(a, random_expr(rng, leaves, depth - 1)),
        _ => Expr::Neg(Box::new(a)),
    }
}

fn phi_hom(cfg: &SuiteConfig, samples: usize, rng: &mut ChaCha8Rng, tally: &mut Tally) -> Result<()> {
    let f = PrimeField::new(cfg.p);
    let m_max = cfg.m.unwrap_or(4);
    for m in 0..=m_max {
        let jr = JetRing::new(f, generator_names(2), m);
        tally.check(
            "unital",
            Ok(jr.phi(&TruncatedSeries::one(f, m))? == TruncatedSeries::one(f, m)),
        );
    }
    for i in 0..samples {
        let m = i as u32 % (m_max + 1);
        let names = generator_names(1 + i % 2);
        let jr = JetRing::new(f, names.clone(), m);
        let a = random_a_element(rng, f, &names, m);
        let b = random_a_element(rng, f, &names, m);
        let ctx = || format!("m = {m}, a = {a}, b = {b}");
        let pa = jr.phi(&a)?;
        let pb = jr.phi(&b)?;
        tally.record("additive", Ok(jr.phi(&a.add(&b)?)? == pa.add(&pb)?), ctx);
        tally.record("multiplicative", Ok(jr.phi(&a.mul(&b)?)? == pa.mul(&pb)?), ctx);
        tally.record("structure-map", Ok(jr.urp_structure_map(&a)? == pa), ctx);

        // two expression trees for the same polynomial must have the same jets
        let mut leaves: Vec<Expr> = names.iter().map(|g| Expr::Gen(g.clone())).collect();
        leaves.extend([Expr::Int(1), Expr::Int(2)]);
        let e = random_expr(rng, &leaves, 3);
        let poly = e.to_poly(&f)?;
        let expanded = Expr::from_poly(&poly)?;
        let n = rng.gen_range(0..=m);
        let ctx = || format!("m = {m}, n = {n}, e = {e}");
        tally.record(
            "well-defined",
            Ok(jr.hs_derive_expr(&e, n)? == jr.hs_derive_expr(&expanded, n)?
                && jr.hs_derive_expr(&e, n)? == jr.hs_derive(&poly, n)?),
            ctx,
        );
        tally.record("order-zero", Ok(jr.hs_derive(&poly, 0)? == poly), ctx);
    }
    Ok(())
}

fn retraction(cfg: &SuiteConfig, samples: usize, rng: &mut ChaCha8Rng, tally: &mut Tally) -> Result<()> {
    let f = PrimeField::new(cfg.p);
    let m_max = cfg.m.unwrap_or(3);
    for m in 0..=m_max {
        let jr = JetRing::new(f, generator_names(2), m);
        for s in 0..=m as usize {
            for n in 0..=m {
                let x = jr.hs_derive_on_a(&TruncatedSeries::pi_power(f, m, s), n)?;
                let expect = FpPoly::from_i64(f, (n as usize == s) as i64);
                tally.record("pi-powers", Ok(jr.retraction_phibar(&x)? == expect), || {
                    format!("m = {m}, n = {n}, s = {s}")
                });
            }
        }
    }
    for i in 0..samples {
        let m = i as u32 % (m_max + 1);
        let names = generator_names(1 + i % 2);
        let jr = JetRing::new(f, names.clone(), m);
        let c = random_k_element(rng, f, &names);
        let a = random_a_element(rng, f, &names, m);
        let b = random_a_element(rng, f, &names, m);
        let n = rng.gen_range(0..=m);
        let ctx = || format!("m = {m}, n = {n}, a = {a}, b = {b}, c = {c}");
        let dc = jr.hs_derive(&c, n)?;
        tally.record("identity-on-k", Ok(jr.retraction_phibar(&dc)? == dc), ctx);
        tally.record(
            "transpose-of-phi",
            Ok(jr.retraction_phibar(&jr.hs_derive_on_a(&a, n)?)? == jr.dn_on_a(&a, n)?),
            ctx,
        );
        let n2 = rng.gen_range(0..=m);
        let x = &jr.hs_derive_on_a(&a, n)? * &jr.hs_derive_on_a(&b, n2)?;
        let y = jr.hs_derive_on_a(&b, n)?;
        tally.record(
            "ring-map",
            Ok(jr.retraction_phibar(&(&x * &y))? == &jr.retraction_phibar(&x)? * &jr.retraction_phibar(&y)?),
            ctx,
        );
        let high = a
            .to_poly()
            .mul_term(&Monomial::var_pow(Variable::Pi, PExponent::integer(m as u64 + 1)), &1);
        tally.record(
            "kills-relations",
            Ok(jr.retraction_phibar(&jr.hs_derive(&high, n)?)?.is_zero()),
            ctx,
        );
        let tx = jr.tensor_map(&x)?;
        let qx = jr.quotient_map(&x)?;
        tally.record("square-commutes", Ok(tx == qx), ctx);
        tally.record(
            "mutually-inverse",
            Ok(jr.quotient_to_tensor(&jr.tensor_to_quotient(&tx)?)? == tx
                && jr.tensor_to_quotient(&jr.quotient_to_tensor(&qx)?)? == qx),
            ctx,
        );
        tally.record("retraction-of-rho", Ok(jr.phibar_sharp(&jr.rho(&dc)?)? == dc), ctx);
    }
    Ok(())
}

fn jets_triangle(cfg: &SuiteConfig, samples: usize, rng: &mut ChaCha8Rng, tally: &mut Tally) -> Result<()> {
    let (p, q, t) = (cfg.p, cfg.q, cfg.t);
    let f = PrimeField::new(p);
    first_order_identities(p, tally)?;
    let m_max = cfg.m.unwrap_or(2);
    let names: Vec<Arc<str>> = vec![Arc::from("x"), Arc::from("y")];
    let target = Arc::new(ResidueRing::perfect(
        p,
        q,
        vec![Variable::gen("u"), Variable::gen("v")],
    )?);
    for i in 0..samples {
        let m = i as u32 % (m_max + 1);
        let jr = LazardianJetRing::new(p, q, t, m, names.clone())?;
        let len = m as usize + 1;
        let mut leaves = vec![
            Expr::gen("x"),
            Expr::gen("y"),
            Expr::Int(1),
            Expr::Int(p as i64),
            Expr::Pi,
        ];
        leaves.extend((1..=m).map(Expr::Omega));
        let e = random_expr(rng, &leaves, 2);
        let ctx = || format!("m = {m}, e = {e}");

        let jets = jr.jets(&e)?;
        let eta = jr.eta_prime(&e)?;
        tally.record("eta-matches-relations", Ok(eta.coords() == &jets[..]), ctx);

        for g in ["x", "y"] {
            let gx = jr.eta_prime(&Expr::gen(g))?;
            let ok = (0..len).all(|n| eps_prime(&gx, n).ok() == Some(FpPoly::var(f, Variable::jet(g, n as u32))));
            tally.record("left-triangle", Ok(ok), ctx);
        }

        let wx = random_vector(rng, &target, t, len)?;
        let wy = random_vector(rng, &target, t, len)?;
        let assign = |g: &str| match g {
            "x" => Some(wx.clone()),
            "y" => Some(wy.clone()),
            _ => None,
        };
        let direct = evaluate_in_witt(&e, target.clone(), t, len, &|g| {
            assign(g).ok_or_else(|| Error::Unsupported(g.to_string()))
        })?;
        tally.record(
            "right-triangle",
            Ok(jr.specialize(&eta, target.clone(), &assign)? == direct),
            ctx,
        );
        let ex = jr.eta_prime(&Expr::gen("x"))?;
        tally.record(
            "counit-identity",
            Ok(jr.specialize(&ex, target.clone(), &assign)? == wx),
            ctx,
        );

        let hx = random_expr(rng, &leaves, 1);
        let hy = random_expr(rng, &leaves, 1);
        let substituted = e.substitute(&|g| match g {
            "x" => Some(hx.clone()),
            "y" => Some(hy.clone()),
            _ => None,
        });
        let (jx, jy) = (jr.jets(&hx)?, jr.jets(&hy)?);
        let transported = jets
            .iter()
            .map(|c| {
                c.eval(|v| match v {
                    Variable::Gen(g) if &**g == "x" => Some(jx[0].clone()),
                    Variable::Gen(g) if &**g == "y" => Some(jy[0].clone()),
                    Variable::Jet(g, n) if &**g == "x" => Some(jx[*n as usize].clone()),
                    Variable::Jet(g, n) if &**g == "y" => Some(jy[*n as usize].clone()),
                    _ => None,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        tally.record("functorial", Ok(jr.jets(&substituted)? == transported), || {
            format!("m = {m}, e = {e}, x ↦ {hx}, y ↦ {hy}")
        });
    }
    Ok(())
}

/// The first-order identities at `m = 1`, `q = p`, `t = 0`.
fn first_order_identities(p: u64, tally: &mut Tally) -> Result<()> {
    let f = PrimeField::new(p);
    let jr = LazardianJetRing::new(p, p, 0, 1, vec![Arc::from("x"), Arc::from("y")])?;
    let d = |g: &str, n| FpPoly::var(f, Variable::jet(g, n));
    let w = FpPoly::var(f, Variable::Omega(1)).pow(p);
    let cq = cq_polynomial(p, p, Variable::gen("x"), Variable::gen("y")).reduce_mod_p(p);
    let sum = jr.derive(&Expr::parse("x + y")?, 1)?;
    tally.check("first-order/sum", Ok(sum == &(&d("x", 1) + &d("y", 1)) + &(&w * &cq)));
    let prod = jr.derive(&Expr::parse("x*y")?, 1)?;
    let expect = &(&d("x", 0).pow(p) * &d("y", 1)) + &(&d("y", 0).pow(p) * &d("x", 1));
    tally.check("first-order/product", Ok(prod == expect));
    tally.check("first-order/p", Ok(jr.derive(&Expr::Int(p as i64), 1)? == w));
    tally.check("first-order/pi", Ok(jr.derive(&Expr::Pi, 1)? == FpPoly::one(f)));
    let eta_pi = jr.eta_prime(&Expr::Pi)?;
    let pi = WittVector::pi(jr.residue_ring().clone(), 0, 2);
    tally.check("first-order/eta-pi", Ok(eta_pi == pi));
    let xy = jr.eta_prime(&Expr::parse("x*y")?)?;
    tally.check(
        "first-order/eta-multiplicative",
        Ok(xy == jr.eta_prime(&Expr::gen("x"))?.mul(&jr.eta_prime(&Expr::gen("y"))?)?),
    );
    Ok(())
}

fn random_raw(rng: &mut ChaCha8Rng, params: Params) -> RawSeries {
    let n = params.precision() as usize;
    let coeffs = (0..n)
        .map(|_| {
            let mut terms = Vec::new();
            for _ in 0..rng.gen_range(0..=3) {
                let factors: Vec<(Variable, PExponent)> = (1..n as u32)
                    .map(|i| (Variable::Omega(i), PExponent::integer(rng.gen_range(0..=2))))
                    .collect();
                terms.push((
                    Monomial::from_factors(factors),
                    BigInt::from(rng.gen_range(-30i64..=30)),
                ));
            }
            IntPoly::from_terms(Integers, terms)
        })
        .collect();
    RawSeries::new(params, coeffs)
}

fn normal_form(cfg: &SuiteConfig, samples: usize, rng: &mut ChaCha8Rng, tally: &mut Tally) -> Result<()> {
    let n_max = cfg.n.unwrap_or(4).max(1);
    let p = cfg.p;
    for i in 0..samples {
        let n = 1 + i as u32 % n_max;
        let params = Params::infinite(p, cfg.q, cfg.t, n)?;
        let a = random_raw(rng, params);
        let b = random_raw(rng, params);
        let (na, nb) = (normalize(&a), normalize(&b));
        let ctx = || format!("N = {n}, a = {:?}, b = {:?}", a.coeffs(), b.coeffs());
        tally.record("additive", Ok(normalize(&a.add(&b)?) == na.add(&nb)?), ctx);
        tally.record("multiplicative", Ok(normalize(&a.mul(&b)?) == na.mul(&nb)?), ctx);
        tally.record("idempotent", Ok(normalize(&na.to_raw()) == na), ctx);
        let rel = RawSeries::defining_relation(params);
        tally.record("relation-annihilated", Ok(normalize(&rel.mul(&a)?).is_zero()), ctx);
        let canonical = na.to_raw().coeffs().iter().all(|c| {
            c.terms()
                .iter()
                .all(|(_, k)| *k >= BigInt::from(0) && *k < BigInt::from(p))
        });
        tally.record("canonical-digits", Ok(canonical), ctx);
    }
    Ok(())
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
    fn small_runs_pass_and_repeat() {
        let cfg = SuiteConfig {
            samples: Some(4),
            m: Some(1),
            n: Some(2),
            seed: 7,
            ..SuiteConfig::default()
        };
        for s in Suite::ALL {
            let report = run_suite(s, &cfg).unwrap();
            assert!(report.passed, "{report}");
            assert_eq!(report.to_json_string(), run_suite(s, &cfg).unwrap().to_json_string());
        }
    }
}
