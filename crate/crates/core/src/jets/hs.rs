//! Hasse–Schmidt derivation algebras and the explicit universal residual
//! perfection of `A = k[π]/(π^{m+1})` for a polynomial ring `k`.
//!
//! `HS^m(k)` of a polynomial ring is free on the jet variables
//! `d^{[n]}t_j`, so its elements are plain polynomials. Elements of
//! `HS^m(A)` are polynomials in the jets of the `t_j` and of `π`, read
//! modulo the jets of `π^{m+1}`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::jets::expr::Expr;
use crate::lazard::series_term;
use crate::poly::{CoeffRing, IntPoly, Integers, Monomial, PExponent, Poly, Variable};

/// The name carried by the jets of `π`.
pub const PI_NAME: &str = "π";

/// `d^{[n]}v` for a generator or `π`; `d^{[0]}v = v`.
pub fn jet_of(v: &Variable, n: u32) -> Result<Variable> {
    match v {
        Variable::Gen(name) => Ok(Variable::jet(name, n)),
        Variable::Pi if n == 0 => Ok(Variable::Pi),
        Variable::Pi => Ok(Variable::Jet(Arc::from(PI_NAME), n)),
        other => Err(Error::Unsupported(format!("no jets of {other}"))),
    }
}

/// `Σ_{j≤m} c_j π^j` with polynomial coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries<R: CoeffRing> {
    coeffs: Vec<Poly<R>>,
}

impl<R: CoeffRing> TruncatedSeries<R> {
    /// Coefficients past `π^m` are dropped, missing ones are zero.
    pub fn new(ring: R, m: u32, mut coeffs: Vec<Poly<R>>) -> Self {
        coeffs.resize(m as usize + 1, Poly::zero(ring));
        TruncatedSeries { coeffs }
    }

    pub fn zero(ring: R, m: u32) -> Self {
        Self::new(ring, m, Vec::new())
    }

    pub fn constant(c: Poly<R>, m: u32) -> Self {
        let ring = c.ring().clone();
        Self::new(ring, m, vec![c])
    }

    pub fn one(ring: R, m: u32) -> Self {
        Self::constant(Poly::one(ring), m)
    }

    /// `π^s`.
    pub fn pi_power(ring: R, m: u32, s: usize) -> Self {
        let mut out = Self::zero(ring.clone(), m);
        if s < out.coeffs.len() {
            out.coeffs[s] = Poly::one(ring);
        }
        out
    }

    /// Reads `π` off a polynomial; `π`-exponents must be integers.
    pub fn from_poly(f: &Poly<R>, m: u32) -> Result<Self> {
        let ring = f.ring().clone();
        let mut buckets: Vec<Vec<(Monomial, R::Elem)>> = vec![Vec::new(); m as usize + 1];
        for (mono, c) in f.terms() {
            let e = mono.exponent(&Variable::Pi);
            let j = e
                .to_integer()
                .ok_or_else(|| Error::Unsupported(format!("fractional power of π in {mono}")))?;
            if j > m as u64 {
                continue;
            }
            let (_, rest) = mono.split(|v| *v == Variable::Pi);
            buckets[j as usize].push((rest, c.clone()));
        }
        let coeffs = buckets.into_iter().map(|b| Poly::from_terms(ring.clone(), b)).collect();
        Ok(TruncatedSeries { coeffs })
    }

    pub fn to_poly(&self) -> Poly<R> {
        let ring = self.ring().clone();
        let mut acc = Poly::zero(ring.clone());
        for (j, c) in self.coeffs.iter().enumerate() {
            let pj = Monomial::var_pow(Variable::Pi, PExponent::integer(j as u64));
            acc = &acc + &c.mul_term(&pj, &ring.one());
        }
        acc
    }

    pub fn ring(&self) -> &R {
        self.coeffs[0].ring()
    }

    pub fn order(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn coeffs(&self) -> &[Poly<R>] {
        &self.coeffs
    }

    /// `a_i`, zero past the order.
    pub fn coefficient(&self, i: usize) -> Poly<R> {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.ring().clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.coeffs.len() != other.coeffs.len() {
            return Err(Error::ParamsMismatch(format!(
                "series of order {} and {}",
                self.order(),
                other.order()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(TruncatedSeries { coeffs })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let n = self.coeffs.len();
        let mut coeffs = vec![Poly::zero(self.ring().clone()); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n - i) {
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].checked_add(&a.checked_mul(b)?)?;
                }
            }
        }
        Ok(TruncatedSeries { coeffs })
    }

    pub fn pow(&self, mut k: u64) -> Result<Self> {
        let mut result = Self::one(self.ring().clone(), self.order());
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect(),
        }
    }

    pub fn map<F: Fn(&Poly<R>) -> Result<Poly<R>>>(&self, f: F) -> Result<Self> {
        Ok(TruncatedSeries {
            coeffs: self.coeffs.iter().map(f).collect::<Result<Vec<_>>>()?,
        })
    }
}

impl<R: CoeffRing> fmt::Display for TruncatedSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| series_term(&c.to_string(), c.len(), j))
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// `HS^m` of the polynomial ring on the given generators over `R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetRing<R: CoeffRing> {
    ring: R,
    generators: Vec<Arc<str>>,
    order: u32,
}

impl<R: CoeffRing> JetRing<R> {
    pub fn new(ring: R, generators: Vec<Arc<str>>, order: u32) -> Self {
        JetRing {
            ring,
            generators,
            order,
        }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn generators(&self) -> &[Arc<str>] {
        &self.generators
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn generator(&self, name: &str) -> Poly<R> {
        Poly::var(self.ring.clone(), Variable::gen(name))
    }

    fn check_level(&self, n: u32) -> Result<()> {
        if n > self.order {
            return Err(Error::IndexOutOfRange {
                index: n as usize,
                len: self.order as usize + 1,
            });
        }
        Ok(())
    }

    /// `Σ_n d^{[n]}f T^n`: since `d^{[·]}` is a ring map into truncated
    /// series, this is `f` evaluated at `t ↦ Σ_n d^{[n]}t T^n`.
    pub fn hs_jets(&self, f: &Poly<R>) -> Result<TruncatedSeries<R>> {
        let m = self.order;
        let mut powers: HashMap<(Variable, u64), TruncatedSeries<R>> = HashMap::new();
        let mut total = TruncatedSeries::zero(self.ring.clone(), m);
        for (mono, c) in f.terms() {
            let mut term = TruncatedSeries::constant(Poly::constant(self.ring.clone(), c.clone()), m);
            for (v, e) in mono.factors() {
                let k = e
                    .to_integer()
                    .ok_or_else(|| Error::Unsupported(format!("fractional exponent in {mono}")))?;
                let key = (v.clone(), k);
                if !powers.contains_key(&key) {
                    let jets = (0..=m)
                        .map(|n| Ok(Poly::var(self.ring.clone(), jet_of(v, n)?)))
                        .collect::<Result<Vec<_>>>()?;
                    let series = TruncatedSeries::new(self.ring.clone(), m, jets).pow(k)?;
                    powers.insert(key.clone(), series);
                }
                term = term.mul(&powers[&key])?;
            }
            total = total.add(&term)?;
        }
        Ok(total)
    }

    /// `d^{[n]}f`.
    pub fn hs_derive(&self, f: &Poly<R>, n: u32) -> Result<Poly<R>> {
        self.check_level(n)?;
        Ok(self.hs_jets(f)?.coefficient(n as usize))
    }

    /// All jets of an expression by the defining relations: additivity,
    /// the Leibniz rule and `d^{[n]}c = c δ_{n0}`.
    pub fn hs_jets_expr(&self, e: &Expr) -> Result<Vec<Poly<R>>> {
        let m = self.order as usize;
        let zero = Poly::zero(self.ring.clone());
        Ok(match e {
            Expr::Int(c) => {
                let mut v = vec![zero; m + 1];
                v[0] = Poly::from_i64(self.ring.clone(), *c);
                v
            }
            Expr::Gen(name) => {
                let g = Variable::Gen(name.clone());
                (0..=m as u32)
                    .map(|n| Ok(Poly::var(self.ring.clone(), jet_of(&g, n)?)))
                    .collect::<Result<Vec<_>>>()?
            }
            Expr::Pi => (0..=m as u32)
                .map(|n| Ok(Poly::var(self.ring.clone(), jet_of(&Variable::Pi, n)?)))
                .collect::<Result<Vec<_>>>()?,
            Expr::Omega(_) => return Err(Error::Unsupported("ω has no Hasse–Schmidt jets".into())),
            Expr::Add(a, b) => {
                let (a, b) = (self.hs_jets_expr(a)?, self.hs_jets_expr(b)?);
                a.iter().zip(&b).map(|(x, y)| x + y).collect()
            }
            Expr::Neg(a) => self.hs_jets_expr(a)?.iter().map(|x| -x).collect(),
            Expr::Mul(a, b) => leibniz(&self.hs_jets_expr(a)?, &self.hs_jets_expr(b)?),
            Expr::Pow(a, k) => {
                let base = self.hs_jets_expr(a)?;
                let mut acc = self.hs_jets_expr(&Expr::Int(1))?;
                for _ in 0..*k {
                    acc = leibniz(&acc, &base);
                }
                acc
            }
        })
    }

    pub fn hs_derive_expr(&self, e: &Expr, n: u32) -> Result<Poly<R>> {
        self.check_level(n)?;
        Ok(self.hs_jets_expr(e)?.swap_remove(n as usize))
    }

    /// `d^{[n]}(Σ a_i π^i) = Σ_{i≤n} d^{[n−i]} a_i`.
    pub fn dn_on_a(&self, a: &TruncatedSeries<R>, n: u32) -> Result<Poly<R>> {
        self.check_level(n)?;
        let mut acc = Poly::zero(self.ring.clone());
        for i in 0..=n {
            let ai = a.coefficient(i as usize);
            if !ai.is_zero() {
                acc = &acc + &self.hs_derive(&ai, n - i)?;
            }
        }
        Ok(acc)
    }

    /// `φ(a) = Σ_n (Σ_{i≤n} d^{[n−i]} a_i) π^n`.
    pub fn phi(&self, a: &TruncatedSeries<R>) -> Result<TruncatedSeries<R>> {
        let coeffs = (0..=self.order)
            .map(|n| self.dn_on_a(a, n))
            .collect::<Result<Vec<_>>>()?;
        Ok(TruncatedSeries::new(self.ring.clone(), self.order, coeffs))
    }

    /// The structure map `A → HS^m(k)^{pf}[π]/(π^{m+1})` of the universal
    /// residual perfection; it is `φ` followed by the inclusion into the perfection.
    pub fn urp_structure_map(&self, a: &TruncatedSeries<R>) -> Result<TruncatedSeries<R>> {
        self.phi(a)
    }

    /// `d^{[n]}a` in `HS^m(A)` for `a ∈ A` written in the generators and `π`.
    pub fn hs_derive_on_a(&self, a: &TruncatedSeries<R>, n: u32) -> Result<Poly<R>> {
        self.hs_derive(&a.to_poly(), n)
    }

    /// `HS^m(A) → HS^m(A)/(d^{[n]}π^i = δ_{ni})`: the jets of `π` become
    /// `d^{[n]}π = δ_{n1}`, which forces `d^{[n]}π^i = δ_{ni}`.
    pub fn quotient_map(&self, x: &Poly<R>) -> Result<Poly<R>> {
        let one = Poly::one(self.ring.clone());
        let zero = Poly::zero(self.ring.clone());
        x.eval(|v| match v {
            Variable::Pi => Some(zero.clone()),
            Variable::Jet(name, n) if &**name == PI_NAME => Some(if *n == 1 { one.clone() } else { zero.clone() }),
            _ => None,
        })
    }

    /// `HS^m(A) → HS^m(A) ⊗_{HS^m(O_m)} F_p`, sending `d^{[n]}o ↦ o_n` for
    /// `o ∈ O_m`; as `O_m` is generated by `π`, only its jets move.
    pub fn tensor_map(&self, x: &Poly<R>) -> Result<Poly<R>> {
        let pi = TruncatedSeries::pi_power(self.ring.clone(), self.order, 1);
        x.eval(|v| match v {
            Variable::Pi => Some(pi.coefficient(0)),
            Variable::Jet(name, n) if &**name == PI_NAME => Some(pi.coefficient(*n as usize)),
            _ => None,
        })
    }

    /// The comparison map from the tensor product to the quotient. Both
    /// sides are represented by polynomials in the jets of the generators,
    /// where it is the identity.
    pub fn tensor_to_quotient(&self, y: &Poly<R>) -> Result<Poly<R>> {
        self.check_normal_form(y)?;
        Ok(y.clone())
    }

    /// The inverse comparison map, again the identity on normal forms.
    pub fn quotient_to_tensor(&self, z: &Poly<R>) -> Result<Poly<R>> {
        self.check_normal_form(z)?;
        Ok(z.clone())
    }

    fn check_normal_form(&self, x: &Poly<R>) -> Result<()> {
        let bad = x.variables().into_iter().find(|v| match v {
            Variable::Pi => true,
            Variable::Jet(name, _) => &**name == PI_NAME,
            _ => false,
        });
        match bad {
            Some(v) => Err(Error::Unsupported(format!("{v} survives in a quotient normal form"))),
            None => Ok(()),
        }
    }

    /// The transpose `φ̄ : HS^m(A) → HS^m(k)` of `φ`: on generators it fixes
    /// `d^{[n]}t_j` and sends `d^{[n]}π ↦ δ_{n1}`.
    pub fn retraction_phibar(&self, x: &Poly<R>) -> Result<Poly<R>> {
        let y = self.quotient_map(x)?;
        self.phibar_sharp(&y)
    }

    /// `φ̄^#` on the quotient, a retraction of `ρ`.
    pub fn phibar_sharp(&self, y: &Poly<R>) -> Result<Poly<R>> {
        self.check_normal_form(y)?;
        Ok(y.clone())
    }

    /// `ρ : HS^m(k) → HS^m(A)/(d^{[n]}π^i = δ_{ni})`.
    pub fn rho(&self, y: &Poly<R>) -> Result<Poly<R>> {
        self.quotient_map(y)
    }
}

fn leibniz<R: CoeffRing>(a: &[Poly<R>], b: &[Poly<R>]) -> Vec<Poly<R>> {
    let n = a.len();
    (0..n)
        .map(|k| {
            let mut acc = Poly::zero(a[0].ring().clone());
            for i in 0..=k {
                if !a[i].is_zero() && !b[k - i].is_zero() {
                    acc = &acc + &(&a[i] * &b[k - i]);
                }
            }
            acc
        })
        .collect()
}

fn lemma_var(prefix: &str, i: usize, j: usize) -> Monomial {
    Monomial::var(Variable::gen(&format!("{prefix}{i}_{j}")))
}

/// Both sides of the universal identity
/// `Σ_γ Σ_{ε≤γ} Σ_{α≤n−γ} x_{α,ε} y_{n−γ−α,γ−ε} = Σ_t Σ_{i≤t} Σ_{j≤n−t} x_{t−i,i} y_{n−t−j,j}`
/// in `Z[x_{ij}, y_{ij}]`, with the number of summands on each side.
pub fn lemma63_sides(n: usize) -> (IntPoly, IntPoly, usize, usize) {
    let mut lhs = Vec::new();
    for gamma in 0..=n {
        for eps in 0..=gamma {
            for alpha in 0..=n - gamma {
                let m = lemma_var("x", alpha, eps).mul(&lemma_var("y", n - gamma - alpha, gamma - eps));
                lhs.push((m, 1.into()));
            }
        }
    }
    let mut rhs = Vec::new();
    for t in 0..=n {
        for i in 0..=t {
            for j in 0..=n - t {
                let m = lemma_var("x", t - i, i).mul(&lemma_var("y", n - t - j, j));
                rhs.push((m, 1.into()));
            }
        }
    }
    let (nl, nr) = (lhs.len(), rhs.len());
    (Poly::from_terms(Integers, lhs), Poly::from_terms(Integers, rhs), nl, nr)
}

pub fn lemma63_check(n: usize) -> bool {
    let (l, r, _, _) = lemma63_sides(n);
    l == r
}
