//! Lazardian Witt vectors over concrete residue rings.
//!
//! A vector of length `L` over `k` is a tuple `(a_0, …, a_{L−1})` with sum
//! and product given coordinatewise by `Q^{+(t)}_n` and `Q^{×(t)}_n`. Every
//! operation is triangular, so a length-`N` window of an `m = ∞` vector is
//! handled exactly like a finite vector with `m = N − 1`.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{Op, QTable};
use crate::error::{Error, Result};
use crate::lazard::RawSeries;
use crate::params::Params;
use crate::poly::{FpPoly, Monomial, PExponent, PolyJson, PrimeField, Variable};

/// A residue ring `k` with `ω_i ∈ k`: a perfected polynomial ring over
/// `F_p[ω_i^{p^{-∞}}]` in the listed generators, optionally with
/// `ω_i ↦ g_i` specialised and optionally with `x^k = 0` for every generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueRing {
    p: u64,
    q: u64,
    generators: Vec<Variable>,
    omega_values: Option<Vec<FpPoly>>,
    nilpotency: Option<u32>,
}

impl ResidueRing {
    /// `F_p[ω^{pf}, x^{pf}, …]`.
    pub fn perfect(p: u64, q: u64, generators: Vec<Variable>) -> Result<Self> {
        Params::infinite(p, q, 0, 1)?;
        Ok(ResidueRing {
            p,
            q,
            generators,
            omega_values: None,
            nilpotency: None,
        })
    }

    /// `F_p[ω^{pf}][x, …]/(x^k, …)`. Not perfect.
    pub fn nilpotent(p: u64, q: u64, generators: Vec<Variable>, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParams("nilpotency order must be positive".into()));
        }
        let mut r = Self::perfect(p, q, generators)?;
        r.nilpotency = Some(k);
        Ok(r)
    }

    /// `F_p[x^{pf}, …]` with `ω_i` acting as `values[i − 1]`.
    pub fn specialized(p: u64, q: u64, generators: Vec<Variable>, values: Vec<FpPoly>) -> Result<Self> {
        let mut r = Self::perfect(p, q, generators)?;
        for v in &values {
            if v.p() != p {
                return Err(Error::DomainMismatch(format!(
                    "ω value over F_{} in a ring over F_{p}",
                    v.p()
                )));
            }
            if v.variables().iter().any(Variable::is_omega) {
                return Err(Error::InvalidParams("ω values must not involve ω".into()));
            }
        }
        r.omega_values = Some(values);
        Ok(r)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn field(&self) -> PrimeField {
        PrimeField::new(self.p)
    }

    pub fn generators(&self) -> &[Variable] {
        &self.generators
    }

    pub fn nilpotency(&self) -> Option<u32> {
        self.nilpotency
    }

    pub fn omega_values(&self) -> Option<&[FpPoly]> {
        self.omega_values.as_deref()
    }

    pub fn is_perfect(&self) -> bool {
        self.nilpotency.is_none()
    }

    fn require_perfect(&self, what: &str) -> Result<()> {
        if self.is_perfect() {
            Ok(())
        } else {
            Err(Error::NotPerfect(format!("{what} needs a perfect residue ring")))
        }
    }

    /// The image of `ω_i` when it is specialised.
    pub fn omega_image(&self, i: u32) -> Option<FpPoly> {
        let vals = self.omega_values.as_ref()?;
        let idx = i.checked_sub(1)? as usize;
        Some(vals.get(idx).cloned().unwrap_or_else(|| FpPoly::zero(self.field())))
    }

    fn truncate_nilpotent(&self, f: FpPoly) -> FpPoly {
        match self.nilpotency {
            None => f,
            Some(k) => {
                let bound = PExponent::integer(k as u64);
                f.filter_terms(|m| m.factors().iter().all(|(v, e)| v.is_omega() || *e < bound))
            }
        }
    }

    /// The normal form of `f`: specialise `ω`, then drop nilpotent monomials.
    pub fn reduce(&self, f: FpPoly) -> FpPoly {
        let f = if self.omega_values.is_some() && f.variables().iter().any(Variable::is_omega) {
            f.eval_with(
                |v| match v {
                    Variable::Omega(i) => self.omega_image(*i),
                    _ => None,
                },
                &|g| self.truncate_nilpotent(g),
            )
            .expect("F_p polynomials have p-power roots")
        } else {
            f
        };
        self.truncate_nilpotent(f)
    }

    pub fn zero(&self) -> FpPoly {
        FpPoly::zero(self.field())
    }

    pub fn one(&self) -> FpPoly {
        FpPoly::one(self.field())
    }

    pub fn var(&self, v: Variable) -> FpPoly {
        self.reduce(FpPoly::var(self.field(), v))
    }

    pub fn mul(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        self.reduce(a * b)
    }

    pub fn pow(&self, a: &FpPoly, k: u64) -> FpPoly {
        a.pow_with(k, &|g| self.reduce(g))
    }

    /// `a^{q^s}`; negative `s` takes roots and needs a perfect ring.
    pub fn frobenius(&self, a: &FpPoly, s: i32) -> Result<FpPoly> {
        if s < 0 {
            self.require_perfect("a q-th root")?;
        }
        Ok(self.reduce(a.frobenius(self.q, s)))
    }

    /// A random element with at most `terms` terms. Exponents are integers
    /// below `max_exp`, except that perfect rings also draw `1/p`-multiples.
    /// Rings without generators draw from `ω_1`.
    pub fn random_element<R: Rng>(&self, rng: &mut R, terms: usize, max_exp: u64) -> FpPoly {
        let f = self.field();
        let pool: Vec<Variable> = if self.generators.is_empty() {
            vec![Variable::Omega(1)]
        } else {
            self.generators.clone()
        };
        let mut acc = Vec::new();
        for _ in 0..rng.gen_range(0..=terms) {
            let mut factors = Vec::new();
            for v in &pool {
                let num = rng.gen_range(0..max_exp.max(1));
                let e = if self.is_perfect() && rng.gen_bool(0.25) {
                    PExponent::new(num + 1, self.p)
                } else {
                    PExponent::integer(num)
                };
                factors.push((v.clone(), e));
            }
            acc.push((Monomial::from_factors(factors), rng.gen_range(1..self.p)));
        }
        self.reduce(FpPoly::from_terms(f, acc))
    }

    pub fn to_json(&self) -> RingJson {
        RingJson {
            p: self.p,
            q: self.q,
            generators: self.generators.iter().map(Variable::name).collect(),
            omega_values: self
                .omega_values
                .as_ref()
                .map(|vs| vs.iter().map(FpPoly::to_json_value).collect()),
            nilpotency: self.nilpotency,
        }
    }

    pub fn from_json(json: &RingJson) -> Result<Self> {
        let generators = json
            .generators
            .iter()
            .map(|s| Variable::parse(s))
            .collect::<Result<Vec<_>>>()?;
        let mut ring = Self::perfect(json.p, json.q, generators)?;
        if let Some(vals) = &json.omega_values {
            let vals = vals.iter().map(FpPoly::from_json).collect::<Result<Vec<_>>>()?;
            ring = Self::specialized(json.p, json.q, ring.generators, vals)?;
        }
        ring.nilpotency = json.nilpotency;
        Ok(ring)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingJson {
    pub p: u64,
    pub q: u64,
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_values: Option<Vec<PolyJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nilpotency: Option<u32>,
}

/// A ring map fixing `ω` and sending each listed generator to a polynomial
/// in the target ring.
#[derive(Clone, Debug)]
pub struct RingMorphism {
    source: Arc<ResidueRing>,
    target: Arc<ResidueRing>,
    images: Vec<(Variable, FpPoly)>,
}

impl RingMorphism {
    pub fn new(source: Arc<ResidueRing>, target: Arc<ResidueRing>, images: Vec<(Variable, FpPoly)>) -> Result<Self> {
        if source.p != target.p || source.q != target.q {
            return Err(Error::RingMismatch("source and target differ in p or q".into()));
        }
        if source.omega_values.is_some() || target.omega_values.is_some() {
            // ω must go to ω; only the unspecialised classes are compatible
            if source.omega_values != target.omega_values {
                return Err(Error::RingMismatch("ω specialisations differ".into()));
            }
        }
        Ok(RingMorphism { source, target, images })
    }

    pub fn source(&self) -> &Arc<ResidueRing> {
        &self.source
    }

    pub fn target(&self) -> &Arc<ResidueRing> {
        &self.target
    }

    pub fn apply(&self, f: &FpPoly) -> FpPoly {
        let g = f
            .eval_with(
                |v| self.images.iter().find(|(w, _)| w == v).map(|(_, img)| img.clone()),
                &|g| self.target.reduce(g),
            )
            .expect("F_p polynomials have p-power roots");
        self.target.reduce(g)
    }

    pub fn apply_vector(&self, a: &WittVector) -> Result<WittVector> {
        if *a.ring != *self.source {
            return Err(Error::RingMismatch("vector is not over the source ring".into()));
        }
        Ok(WittVector {
            ring: self.target.clone(),
            t: a.t,
            coords: a.coords.iter().map(|c| self.apply(c)).collect(),
        })
    }
}

/// An element of `W^{(t)}_{L−1,q}(k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittVector {
    ring: Arc<ResidueRing>,
    t: i32,
    coords: Vec<FpPoly>,
}

impl WittVector {
    pub fn new(ring: Arc<ResidueRing>, t: i32, coords: Vec<FpPoly>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidParams("Witt vectors need at least one coordinate".into()));
        }
        let coords = coords
            .into_iter()
            .map(|c| {
                if c.p() != ring.p {
                    Err(Error::DomainMismatch(format!(
                        "coordinate over F_{} in a ring over F_{}",
                        c.p(),
                        ring.p
                    )))
                } else {
                    Ok(ring.reduce(c))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(WittVector { ring, t, coords })
    }

    pub fn zero(ring: Arc<ResidueRing>, t: i32, len: usize) -> Self {
        let z = ring.zero();
        WittVector {
            ring,
            t,
            coords: vec![z; len.max(1)],
        }
    }

    pub fn one(ring: Arc<ResidueRing>, t: i32, len: usize) -> Self {
        let one = ring.one();
        teichmuller_section(&one, ring, t, len)
    }

    /// `π = (0, 1, 0, …)`.
    pub fn pi(ring: Arc<ResidueRing>, t: i32, len: usize) -> Self {
        Self::basis(ring, t, len, 1)
    }

    /// The vector with a single `1` in coordinate `j`.
    pub fn basis(ring: Arc<ResidueRing>, t: i32, len: usize, j: usize) -> Self {
        let mut v = Self::zero(ring, t, len);
        if j < v.coords.len() {
            v.coords[j] = v.ring.one();
        }
        v
    }

    pub fn ring(&self) -> &Arc<ResidueRing> {
        &self.ring
    }

    pub fn t(&self) -> i32 {
        self.t
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn coords(&self) -> &[FpPoly] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(FpPoly::is_zero)
    }

    /// Parameters `(p, q, t, m = L − 1, N = L)` of the vector.
    pub fn params(&self) -> Params {
        let l = self.coords.len() as u32;
        Params::new(self.ring.p, self.ring.q, self.t, Some(l - 1), l).expect("valid by construction")
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring && *self.ring != *other.ring {
            return Err(Error::RingMismatch("operands live over different rings".into()));
        }
        if self.t != other.t {
            return Err(Error::ParamsMismatch(format!("twist {} vs {}", self.t, other.t)));
        }
        if self.coords.len() != other.coords.len() {
            return Err(Error::ParamsMismatch(format!(
                "window {} vs {}",
                self.coords.len(),
                other.coords.len()
            )));
        }
        Ok(())
    }

    fn with_coords(&self, t: i32, coords: Vec<FpPoly>) -> Self {
        WittVector {
            ring: self.ring.clone(),
            t,
            coords,
        }
    }

    /// Evaluates `Q_n(X, Y)` at `X_i = a_i`, `Y_i = b_i`.
    fn eval_q(&self, q: &FpPoly, a: &[FpPoly], b: &[FpPoly]) -> FpPoly {
        let ring = &self.ring;
        q.eval_with(
            |v| match v {
                Variable::X(i) => a.get(*i as usize).cloned(),
                Variable::Y(i) => b.get(*i as usize).cloned(),
                Variable::Omega(i) => ring.omega_image(*i),
                _ => None,
            },
            &|g| ring.reduce(g),
        )
        .expect("F_p polynomials have p-power roots")
    }

    fn binary(&self, other: &Self, op: Op) -> Result<Self> {
        self.check_compatible(other)?;
        let params = self.params();
        let qs = QTable::global().levels(op, (self.len() - 1) as u32, &params)?;
        let coords = qs
            .iter()
            .map(|e| self.eval_q(&e.q, &self.coords, &other.coords))
            .collect();
        Ok(self.with_coords(self.t, coords))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.binary(other, Op::Add)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.binary(other, Op::Mul)
    }

    /// Solves `Q_n^+(a, b) = 0` for `b_n` one coordinate at a time, using
    /// that `Q_n^+ = X_n + Y_n + R_n(X_{<n}, Y_{<n})`.
    pub fn neg(&self) -> Result<Self> {
        let params = self.params();
        let qs = QTable::global().levels(Op::Add, (self.len() - 1) as u32, &params)?;
        let f = self.ring.field();
        let mut b: Vec<FpPoly> = Vec::with_capacity(self.len());
        for (n, entry) in qs.iter().enumerate() {
            let xn = FpPoly::var(f, Variable::X(n as u32));
            let yn = FpPoly::var(f, Variable::Y(n as u32));
            let rest = &(&entry.q - &xn) - &yn;
            if rest.contains_var(&Variable::X(n as u32)) || rest.contains_var(&Variable::Y(n as u32)) {
                return Err(Error::LinearityFailure(n));
            }
            let r = self.eval_q(&rest, &self.coords, &b);
            b.push(self.ring.reduce(-&(&self.coords[n] + &r)));
        }
        Ok(self.with_coords(self.t, b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg()?)
    }

    pub fn pow(&self, mut k: u64) -> Result<Self> {
        let mut result = Self::one(self.ring.clone(), self.t, self.len());
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

    /// `n · 1` by double-and-add.
    pub fn integer(ring: Arc<ResidueRing>, t: i32, len: usize, n: i64) -> Result<Self> {
        let mut result = Self::zero(ring.clone(), t, len);
        let mut base = Self::one(ring, t, len);
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                result = result.add(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.add(&base)?;
            }
        }
        if n < 0 {
            result = result.neg()?;
        }
        Ok(result)
    }

    /// Coordinatewise `q`-th power; the twist moves from `t` to `t + 1`.
    pub fn frobenius_op(&self) -> Self {
        let coords = self
            .coords
            .iter()
            .map(|c| self.ring.frobenius(c, 1).expect("positive powers always exist"))
            .collect();
        self.with_coords(self.t + 1, coords)
    }

    /// Coordinatewise `q`-th root, inverse to [`WittVector::frobenius_op`] on perfect rings.
    pub fn frobenius_inverse(&self) -> Result<Self> {
        let coords = self
            .coords
            .iter()
            .map(|c| self.ring.frobenius(c, -1))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.with_coords(self.t - 1, coords))
    }

    /// `(a_0, a_1, …) ↦ (0, a_0, a_1, …)`; twist `t − 1`, one coordinate longer.
    pub fn verschiebung(&self) -> Self {
        let mut coords = Vec::with_capacity(self.len() + 1);
        coords.push(self.ring.zero());
        coords.extend(self.coords.iter().cloned());
        self.with_coords(self.t - 1, coords)
    }

    /// Appends a zero coordinate.
    pub fn iota(&self) -> Self {
        let mut coords = self.coords.clone();
        coords.push(self.ring.zero());
        self.with_coords(self.t, coords)
    }

    /// The first `r` coordinates. `truncate(a, 0)` is represented by an
    /// error since vectors have at least one coordinate.
    pub fn truncate(&self, r: usize) -> Result<Self> {
        if r == 0 || r > self.len() {
            return Err(Error::IndexOutOfRange {
                index: r,
                len: self.len(),
            });
        }
        Ok(self.with_coords(self.t, self.coords[..r].to_vec()))
    }

    /// Whether the first `r` coordinates vanish, i.e. `a` maps to zero in length `r`.
    pub fn truncates_to_zero(&self, r: usize) -> bool {
        self.coords.iter().take(r).all(FpPoly::is_zero)
    }

    /// For `a` with vanishing first `r` coordinates, the `b` with `V^r(b) = a`.
    pub fn verschiebung_preimage(&self, r: usize) -> Result<Self> {
        if r >= self.len() {
            return Err(Error::IndexOutOfRange {
                index: r,
                len: self.len(),
            });
        }
        if !self.truncates_to_zero(r) {
            return Err(Error::Unsupported(format!(
                "not in the image of V^{r}: a nonzero coordinate below {r}"
            )));
        }
        Ok(self.with_coords(self.t + r as i32, self.coords[r..].to_vec()))
    }

    pub fn to_json(&self) -> WittJson {
        WittJson {
            ring: self.ring.to_json(),
            t: self.t,
            coords: self.coords.iter().map(FpPoly::to_json_value).collect(),
        }
    }

    pub fn from_json(json: &WittJson) -> Result<Self> {
        let ring = Arc::new(ResidueRing::from_json(&json.ring)?);
        let coords = json.coords.iter().map(FpPoly::from_json).collect::<Result<Vec<_>>>()?;
        Self::new(ring, json.t, coords)
    }
}

impl fmt::Display for WittVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `{"ring":{...},"t":int,"coords":[<polynomial JSON>...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WittJson {
    pub ring: RingJson,
    pub t: i32,
    pub coords: Vec<PolyJson>,
}

pub fn witt_add(a: &WittVector, b: &WittVector) -> Result<WittVector> {
    a.add(b)
}

pub fn witt_mul(a: &WittVector, b: &WittVector) -> Result<WittVector> {
    a.mul(b)
}

pub fn witt_neg(a: &WittVector) -> Result<WittVector> {
    a.neg()
}

/// `[α] = (α, 0, 0, …)`.
pub fn teichmuller_section(alpha: &FpPoly, ring: Arc<ResidueRing>, t: i32, len: usize) -> WittVector {
    let mut v = WittVector::zero(ring, t, len);
    v.coords[0] = v.ring.reduce(alpha.clone());
    v
}

/// The image of `Σ_j c_j π^j` with `c_j ∈ Z[ω^{q^{-∞}}]`: each `ω`-monomial
/// goes to its multiplicative lift, integers to multiples of `1` and `π`
/// to `(0, 1, 0, …)`.
pub fn structure_map(x: &RawSeries, ring: Arc<ResidueRing>, len: usize) -> Result<WittVector> {
    let t = x.params().t();
    if x.params().p() != ring.p || x.params().q() != ring.q {
        return Err(Error::RingMismatch("series and ring differ in p or q".into()));
    }
    let f = ring.field();
    let pi = WittVector::pi(ring.clone(), t, len);
    let mut pi_power = WittVector::one(ring.clone(), t, len);
    let mut total = WittVector::zero(ring.clone(), t, len);
    for (j, c) in x.coeffs().iter().enumerate() {
        if j > 0 {
            pi_power = pi_power.mul(&pi)?;
        }
        if c.is_zero() {
            continue;
        }
        for (m, n) in c.terms() {
            if m.variables().any(|v| !v.is_omega()) {
                return Err(Error::Unsupported(format!(
                    "structure map is defined on ω, π and integers; found {m}"
                )));
            }
            let lift = teichmuller_section(&FpPoly::monomial(f, m.clone()), ring.clone(), t, len);
            let n = i64::try_from(n).map_err(|_| Error::Unsupported(format!("integer {n} too large")))?;
            let scaled = WittVector::integer(ring.clone(), t, len, n)?.mul(&lift)?;
            total = total.add(&scaled.mul(&pi_power)?)?;
        }
    }
    Ok(total)
}

/// `Σ_i [a_i^{q^{-i}}] π^i`, evaluated with Witt operations.
pub fn counit_epsilon_expansion(a: &WittVector) -> Result<WittVector> {
    a.ring.require_perfect("the counit")?;
    let len = a.len();
    let pi = WittVector::pi(a.ring.clone(), a.t, len);
    let mut pi_power = WittVector::one(a.ring.clone(), a.t, len);
    let mut total = WittVector::zero(a.ring.clone(), a.t, len);
    for (i, c) in a.coords.iter().enumerate() {
        if i > 0 {
            pi_power = pi_power.mul(&pi)?;
        }
        let root = a.ring.frobenius(c, -(i as i32))?;
        let lift = teichmuller_section(&root, a.ring.clone(), a.t, len);
        total = total.add(&lift.mul(&pi_power)?)?;
    }
    Ok(total)
}

/// A class in `UW(k) = W(k)/πW(k)`, stored by its residue `a_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UwClass {
    ring: Arc<ResidueRing>,
    residue: FpPoly,
}

impl UwClass {
    /// The class of `a`; well defined because `(0, a_1, …) ∈ πW(k)`.
    pub fn of(a: &WittVector) -> Result<Self> {
        a.ring.require_perfect("UW")?;
        Ok(UwClass {
            ring: a.ring.clone(),
            residue: a.coords[0].clone(),
        })
    }

    pub fn residue(&self) -> &FpPoly {
        &self.residue
    }

    pub fn ring(&self) -> &Arc<ResidueRing> {
        &self.ring
    }

    /// The representative `(α, 0, …)`.
    pub fn representative(&self, t: i32, len: usize) -> WittVector {
        teichmuller_section(&self.residue, self.ring.clone(), t, len)
    }
}

/// `η(α) = class of (α, 0, …)`.
pub fn unit_eta(alpha: &FpPoly, ring: Arc<ResidueRing>) -> Result<UwClass> {
    ring.require_perfect("the unit")?;
    let residue = ring.reduce(alpha.clone());
    Ok(UwClass { ring, residue })
}

/// For `a = (0, α_1, …, α_m)`, the `b = (α_1^{1/q}, …, α_m^{1/q}, 0)` with `π·b = a`.
pub fn pi_divide(a: &WittVector) -> Result<WittVector> {
    a.ring.require_perfect("division by π")?;
    if !a.coords[0].is_zero() {
        return Err(Error::Unsupported("0th coordinate must vanish".into()));
    }
    let mut coords = a.coords[1..]
        .iter()
        .map(|c| a.ring.frobenius(c, -1))
        .collect::<Result<Vec<_>>>()?;
    coords.push(a.ring.zero());
    Ok(a.with_coords(a.t, coords))
}
