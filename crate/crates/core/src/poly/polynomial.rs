use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::coeff::{CoeffRing, Integers, PrimeField};
use super::exponent::PExponent;
use super::monomial::Monomial;
use super::variable::Variable;
use crate::error::{Error, Result};

/// A sparse polynomial with exponents in `Z[1/p]_{≥0}`.
///
/// Terms are stored in descending term order (see [`Monomial`]'s `Ord`)
/// with no zero coefficients, so structural equality is polynomial equality
/// and serializing twice is byte-identical.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly<R: CoeffRing> {
    ring: R,
    terms: Vec<(Monomial, R::Elem)>,
}

impl<R: CoeffRing> Poly<R> {
    pub fn zero(ring: R) -> Self {
        Poly {
            ring,
            terms: Vec::new(),
        }
    }

    pub fn one(ring: R) -> Self {
        let one = ring.one();
        Self::term(ring, Monomial::one(), one)
    }

    pub fn constant(ring: R, c: R::Elem) -> Self {
        Self::term(ring, Monomial::one(), c)
    }

    pub fn from_i64(ring: R, n: i64) -> Self {
        let c = ring.from_i64(n);
        Self::constant(ring, c)
    }

    pub fn var(ring: R, v: Variable) -> Self {
        let one = ring.one();
        Self::term(ring, Monomial::var(v), one)
    }

    pub fn term(ring: R, m: Monomial, c: R::Elem) -> Self {
        if ring.is_zero(&c) {
            return Self::zero(ring);
        }
        Poly {
            ring,
            terms: vec![(m, c)],
        }
    }

    pub fn monomial(ring: R, m: Monomial) -> Self {
        let one = ring.one();
        Self::term(ring, m, one)
    }

    /// Collects arbitrary terms, combining repeated monomials.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, R::Elem)>>(ring: R, terms: I) -> Self {
        let mut acc: HashMap<Monomial, R::Elem> = HashMap::new();
        for (m, c) in terms {
            match acc.get_mut(&m) {
                Some(e) => ring.add_assign(e, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: R, acc: HashMap<Monomial, R::Elem>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !ring.is_zero(c)).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly { ring, terms }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, R::Elem)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, R::Elem)> {
        self.terms
    }

    /// Number of terms; [`Poly::is_zero`] is the emptiness test.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.ring.is_one(&self.terms[0].1)
    }

    /// The constant if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<R::Elem> {
        match self.terms.as_slice() {
            [] => Some(self.ring.zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> R::Elem {
        self.terms
            .binary_search_by(|(t, _)| m.cmp(t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| self.ring.zero())
    }

    pub fn contains_var(&self, v: &Variable) -> bool {
        self.terms.iter().any(|(m, _)| m.contains(v))
    }

    pub fn variables(&self) -> Vec<Variable> {
        let mut vs: Vec<Variable> = self.terms.iter().flat_map(|(m, _)| m.variables().cloned()).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::DomainMismatch(format!("{:?} vs {:?}", self.ring, other.ring)));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let r = &self.ring;
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let conv = |c: &R::Elem| if negate { r.neg(c) } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((b[j].0.clone(), conv(&b[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = r.add(&a[i].1, &conv(&b[j].1));
                    if !r.is_zero(&c) {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), conv(c))));
        Poly {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.ring.clone());
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        let r = &self.ring;
        let mut acc: HashMap<Monomial, R::Elem> = HashMap::with_capacity(self.terms.len() * other.terms.len() / 2 + 1);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = r.mul(ca, cb);
                if r.is_zero(&c) {
                    continue;
                }
                let m = ma.mul(mb);
                match acc.get_mut(&m) {
                    Some(e) => r.add_assign(e, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Self::from_map(self.ring.clone(), acc)
    }

    /// Multiplies by a single term `c·m`. Monomial multiplication is
    /// order-preserving, so no re-sorting is needed.
    pub fn mul_term(&self, m: &Monomial, c: &R::Elem) -> Self {
        let r = &self.ring;
        let terms = self
            .terms
            .iter()
            .filter_map(|(t, d)| {
                let e = r.mul(d, c);
                (!r.is_zero(&e)).then(|| (t.mul(m), e))
            })
            .collect();
        Poly {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        self.mul_term(&Monomial::one(), c)
    }

    pub fn pow(&self, k: u64) -> Self {
        self.pow_with(k, &|p| p)
    }

    /// `self^k` by repeated squaring, applying `reduce` after every product.
    pub fn pow_with(&self, mut k: u64, reduce: &dyn Fn(Self) -> Self) -> Self {
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            let mut cc = self.ring.one();
            let mut base = c.clone();
            let mut kk = k;
            while kk > 0 {
                if kk & 1 == 1 {
                    cc = self.ring.mul(&cc, &base);
                }
                base = self.ring.mul(&base, &base);
                kk >>= 1;
            }
            return reduce(Self::term(self.ring.clone(), m.pow(k), cc));
        }
        let mut result = Self::one(self.ring.clone());
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = reduce(result.mul_unchecked(&base));
            }
            k >>= 1;
            if k > 0 {
                base = reduce(base.mul_unchecked(&base));
            }
        }
        result
    }

    /// Applies `f` to every monomial; terms that collide are combined.
    pub fn map_monomials<F: Fn(&Monomial) -> Monomial>(&self, f: F) -> Self {
        Self::from_terms(self.ring.clone(), self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }

    /// Keeps only the terms whose monomial satisfies `pred`.
    pub fn filter_terms<F: Fn(&Monomial) -> bool>(&self, pred: F) -> Self {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().filter(|(m, _)| pred(m)).cloned().collect(),
        }
    }

    pub fn rename<F: Fn(&Variable) -> Variable>(&self, f: F) -> Self {
        self.map_monomials(|m| m.map_variables(&f))
    }

    /// Multiplies every exponent of the selected variables by `factor`.
    pub fn scale_exponents_where<F: Fn(&Variable) -> bool>(&self, factor: PExponent, pred: F) -> Self {
        self.map_monomials(|m| m.scale_exponents_where(factor, &pred))
    }

    /// `self^{1/den}` where `den` is a power of the characteristic (or
    /// `self` is a single term whose coefficient has the required roots).
    pub fn root(&self, den: u64) -> Result<Self> {
        if den == 1 {
            return Ok(self.clone());
        }
        let p = self.ring.characteristic();
        let frobenius_additive = p > 1 && is_power_of(den, p);
        if !frobenius_additive && self.terms.len() > 1 {
            return Err(Error::Unsupported(format!(
                "no {den}-th root of a {}-term polynomial over {:?}",
                self.terms.len(),
                self.ring
            )));
        }
        let factor = PExponent::new(1, den);
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut c = c.clone();
            if frobenius_additive {
                let mut d = den;
                while d > 1 {
                    c = self.ring.pth_root(&c).expect("F_p has p-th roots");
                    d /= p;
                }
            } else if !self.ring.is_one(&c) {
                return Err(Error::Unsupported(format!("no {den}-th root of coefficient {c:?}")));
            }
            terms.push((m.scale_exponents(factor), c));
        }
        Ok(Poly {
            ring: self.ring.clone(),
            terms,
        })
    }

    /// Substitutes polynomials for variables; variables mapped to `None` are kept.
    pub fn eval<F>(&self, subst: F) -> Result<Self>
    where
        F: Fn(&Variable) -> Option<Self>,
    {
        self.eval_with(subst, &|p| p)
    }

    /// Like [`Poly::eval`], applying `reduce` after every intermediate
    /// product (used to stay inside quotient rings).
    pub fn eval_with<F>(&self, subst: F, reduce: &dyn Fn(Self) -> Self) -> Result<Self>
    where
        F: Fn(&Variable) -> Option<Self>,
    {
        let mut cache = PowerCache::default();
        let mut acc: HashMap<Monomial, R::Elem> = HashMap::new();
        let r = &self.ring;
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut value: Option<Self> = None;
            for (v, e) in m.factors() {
                match subst(v) {
                    None => kept.push((v.clone(), *e)),
                    Some(base) => {
                        let pw = cache.power(v, &base, *e, reduce)?;
                        value = Some(match value {
                            None => pw,
                            Some(acc) => reduce(acc.mul_unchecked(&pw)),
                        });
                    }
                }
            }
            let head = Monomial::from_factors(kept);
            let contribution = match value {
                None => Self::term(r.clone(), head, c.clone()),
                Some(v) => reduce(v.mul_term(&head, c)),
            };
            for (m, c) in contribution.terms {
                match acc.get_mut(&m) {
                    Some(e) => r.add_assign(e, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Ok(reduce(Self::from_map(r.clone(), acc)))
    }
}

/// Memo of `base^e` keyed by the substituted variable and exponent.
struct PowerCache<R: CoeffRing> {
    powers: HashMap<(Variable, PExponent), Poly<R>>,
}

impl<R: CoeffRing> Default for PowerCache<R> {
    fn default() -> Self {
        PowerCache { powers: HashMap::new() }
    }
}

impl<R: CoeffRing> PowerCache<R> {
    fn power(
        &mut self,
        v: &Variable,
        base: &Poly<R>,
        e: PExponent,
        reduce: &dyn Fn(Poly<R>) -> Poly<R>,
    ) -> Result<Poly<R>> {
        let key = (v.clone(), e);
        if let Some(p) = self.powers.get(&key) {
            return Ok(p.clone());
        }
        let rooted = if e.is_integer() {
            base.clone()
        } else {
            let rkey = (v.clone(), PExponent::new(1, e.denominator()));
            match self.powers.get(&rkey) {
                Some(p) => p.clone(),
                None => {
                    let p = reduce(base.root(e.denominator())?);
                    self.powers.insert(rkey, p.clone());
                    p
                }
            }
        };
        let p = rooted.pow_with(e.numerator(), reduce);
        self.powers.insert(key, p.clone());
        Ok(p)
    }
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    if n == 0 {
        return false;
    }
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

impl<'a, R: CoeffRing> Add for &'a Poly<R> {
    type Output = Poly<R>;

    /// Panics on a domain mismatch; use [`Poly::checked_add`] to handle it.
    fn add(self, rhs: &'a Poly<R>) -> Poly<R> {
        self.checked_add(rhs).expect("polynomial domain mismatch")
    }
}

impl<'a, R: CoeffRing> Sub for &'a Poly<R> {
    type Output = Poly<R>;

    fn sub(self, rhs: &'a Poly<R>) -> Poly<R> {
        self.checked_sub(rhs).expect("polynomial domain mismatch")
    }
}

impl<'a, R: CoeffRing> Mul for &'a Poly<R> {
    type Output = Poly<R>;

    fn mul(self, rhs: &'a Poly<R>) -> Poly<R> {
        self.checked_mul(rhs).expect("polynomial domain mismatch")
    }
}

impl<R: CoeffRing> Neg for &Poly<R> {
    type Output = Poly<R>;

    fn neg(self) -> Poly<R> {
        let r = &self.ring;
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), r.neg(c))).collect(),
        }
    }
}

pub type IntPoly = Poly<Integers>;
pub type FpPoly = Poly<PrimeField>;

impl Poly<Integers> {
    pub fn int_zero() -> Self {
        Self::zero(Integers)
    }

    pub fn int_var(v: Variable) -> Self {
        Self::var(Integers, v)
    }

    /// Coefficientwise reduction to `F_p`.
    pub fn reduce_mod_p(&self, p: u64) -> FpPoly {
        let f = PrimeField::new(p);
        let modulus = BigInt::from(p);
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let r = c.mod_floor(&modulus).to_u64().expect("residue fits");
                (r != 0).then(|| (m.clone(), r))
            })
            .collect();
        Poly { ring: f, terms }
    }

    /// Splits `self = digits + p·carry` with every digit coefficient in `[0, p)`.
    pub fn split_mod_p(&self, p: u64) -> (FpPoly, IntPoly) {
        let f = PrimeField::new(p);
        let modulus = BigInt::from(p);
        let mut digits = Vec::new();
        let mut carry = Vec::new();
        for (m, c) in &self.terms {
            let (q, r) = c.div_mod_floor(&modulus);
            if !r.is_zero() {
                digits.push((m.clone(), r.to_u64().expect("residue fits")));
            }
            if !q.is_zero() {
                carry.push((m.clone(), q));
            }
        }
        (
            Poly { ring: f, terms: digits },
            Poly {
                ring: Integers,
                terms: carry,
            },
        )
    }

    /// Exact division of every coefficient by `d`; `None` if some coefficient is not divisible.
    pub fn div_exact(&self, d: &BigInt) -> Option<Self> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            terms.push((m.clone(), q));
        }
        Some(Poly { ring: Integers, terms })
    }
}

impl Poly<PrimeField> {
    pub fn p(&self) -> u64 {
        self.ring.p()
    }

    /// The canonical lift: each coefficient to its representative in `[0, p)`.
    pub fn lift(&self) -> IntPoly {
        Poly {
            ring: Integers,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), BigInt::from(*c))).collect(),
        }
    }

    /// The `q^s`-power Frobenius `f ↦ f^{q^s}`, realized as exponent scaling
    /// (coefficients in `F_p` are Frobenius-fixed). Negative `s` takes roots
    /// in the perfection.
    pub fn frobenius(&self, q: u64, s: i32) -> Self {
        if s == 0 {
            return self.clone();
        }
        let factor = PExponent::q_power(q, s);
        // scaling all exponents by a positive constant preserves the term order
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.scale_exponents(factor), *c))
            .collect();
        Poly { ring: self.ring, terms }
    }

    /// Frobenius on the coefficient ring only: scales the exponents of the
    /// `ω` variables by `q^s` and leaves every other variable fixed.
    pub fn coefficient_frobenius(&self, q: u64, s: i32) -> Self {
        if s == 0 {
            return self.clone();
        }
        let factor = PExponent::q_power(q, s);
        self.map_monomials(|m| m.scale_exponents_where(factor, Variable::is_omega))
    }
}
