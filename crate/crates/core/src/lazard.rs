//! Normal forms in the truncated universal π-ring.
//!
//! The ambient ring is
//! `Z[ω_i^{p^{-∞}}, X_i^{p^{-∞}}, Y_i^{p^{-∞}}, …]⟦π⟧ / (p − Σ ω_i^{q^t} π^i, π^{m+1}, π^N)`.
//! Because `π` is a nonzerodivisor there and the residue ring is
//! `F_p[…]^{pf}`, every element has a unique expansion `Σ_{j<N} s_j π^j`
//! whose digits `s_j` are polynomials with coefficients in `[0, p)`. That
//! expansion is the normal form stored in [`LazardElement`].

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::Params;
use crate::poly::{FpPoly, IntPoly, Integers, Monomial, PolyJson, PrimeField, Variable};

/// A π-series with integer polynomial coefficients, before normalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawSeries {
    params: Params,
    coeffs: Vec<IntPoly>,
}

impl RawSeries {
    pub fn zero(params: Params) -> Self {
        RawSeries {
            params,
            coeffs: vec![IntPoly::int_zero(); params.precision() as usize],
        }
    }

    /// Coefficients beyond the precision are dropped; missing ones are zero.
    pub fn new(params: Params, mut coeffs: Vec<IntPoly>) -> Self {
        coeffs.resize(params.precision() as usize, IntPoly::int_zero());
        RawSeries { params, coeffs }
    }

    pub fn constant(params: Params, c: IntPoly) -> Self {
        Self::new(params, vec![c])
    }

    pub fn integer(params: Params, n: i64) -> Self {
        Self::constant(params, IntPoly::from_i64(Integers, n))
    }

    pub fn from_bigint(params: Params, n: &BigInt) -> Self {
        Self::constant(params, IntPoly::constant(Integers, n.clone()))
    }

    /// `π^k`.
    pub fn pi_power(params: Params, k: usize) -> Self {
        let mut s = Self::zero(params);
        if k < s.coeffs.len() {
            s.coeffs[k] = IntPoly::one(Integers);
        }
        s
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn coeffs(&self) -> &[IntPoly] {
        &self.coeffs
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_params(&self.params, &other.params)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(RawSeries {
            params: self.params,
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_params(&self.params, &other.params)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(RawSeries {
            params: self.params,
            coeffs,
        })
    }

    /// Truncated convolution of the π-coefficients.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_params(&self.params, &other.params)?;
        Ok(RawSeries {
            params: self.params,
            coeffs: convolve(&self.coeffs, &other.coeffs),
        })
    }

    /// The defining relation `p − Σ_{1≤i≤min(m,N−1)} ω_i^{q^t} π^i`.
    pub fn defining_relation(params: Params) -> Self {
        let mut s = Self::integer(params, params.p() as i64);
        let w = params.omega_exponent();
        for i in 1..=params.active_omegas() {
            let mono = Monomial::var_pow(Variable::Omega(i), w);
            s.coeffs[i as usize] = -&IntPoly::monomial(Integers, mono);
        }
        s
    }
}

fn convolve(a: &[IntPoly], b: &[IntPoly]) -> Vec<IntPoly> {
    let n = a.len();
    let mut out = vec![IntPoly::int_zero(); n];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(n - i) {
            if bj.is_zero() {
                continue;
            }
            out[i + j] = &out[i + j] + &(ai * bj);
        }
    }
    out
}

fn check_params(a: &Params, b: &Params) -> Result<()> {
    if a != b {
        return Err(Error::ParamsMismatch(format!("{a} vs {b}")));
    }
    Ok(())
}

/// An element of the truncated ring in normal form: `Σ_{j<N} coeffs[j]·π^j`
/// with `F_p`-polynomial digits (read through their canonical lifts).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LazardElement {
    params: Params,
    coeffs: Vec<FpPoly>,
}

/// Rewrites every integer coefficient as `c₀ + p·c′` with `c₀ ∈ [0, p)`
/// and pushes `c′·Σ ω_i^{q^t} π^i` into higher π-degrees.
///
/// Each carry raises the π-degree by at least one, so a single sweep from
/// low to high degree reaches the normal form.
pub fn normalize(s: &RawSeries) -> LazardElement {
    let params = s.params;
    let p = params.p();
    let n = params.precision() as usize;
    let w = params.omega_exponent();
    let active = params.active_omegas() as usize;
    let relation: Vec<Monomial> = (1..=active)
        .map(|i| Monomial::var_pow(Variable::Omega(i as u32), w))
        .collect();
    let mut work = s.coeffs.clone();
    let mut digits = Vec::with_capacity(n);
    let one = BigInt::from(1);
    for j in 0..n {
        let z = std::mem::replace(&mut work[j], IntPoly::int_zero());
        let (d, carry) = z.split_mod_p(p);
        digits.push(d);
        if carry.is_zero() {
            continue;
        }
        for (i, mono) in relation.iter().enumerate() {
            let target = j + i + 1;
            if target >= n {
                break;
            }
            work[target] = &work[target] + &carry.mul_term(mono, &one);
        }
    }
    LazardElement { params, coeffs: digits }
}

impl LazardElement {
    pub fn zero(params: Params) -> Self {
        let f = PrimeField::new(params.p());
        LazardElement {
            params,
            coeffs: vec![FpPoly::zero(f); params.precision() as usize],
        }
    }

    pub fn one(params: Params) -> Self {
        Self::from_residue(params, FpPoly::one(PrimeField::new(params.p())))
    }

    /// The canonical lift of a residue polynomial, placed in π-degree 0.
    pub fn from_residue(params: Params, r: FpPoly) -> Self {
        let mut a = Self::zero(params);
        a.coeffs[0] = r;
        a
    }

    /// The class of `π^k`.
    pub fn pi_power(params: Params, k: usize) -> Self {
        normalize(&RawSeries::pi_power(params, k))
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn coeffs(&self) -> &[FpPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(FpPoly::is_zero)
    }

    /// The π-digit in degree `j`.
    pub fn pi_coefficient(&self, j: usize) -> Result<&FpPoly> {
        self.coeffs.get(j).ok_or(Error::IndexOutOfRange {
            index: j,
            len: self.coeffs.len(),
        })
    }

    /// The lifted digits as a raw series.
    pub fn to_raw(&self) -> RawSeries {
        RawSeries {
            params: self.params,
            coeffs: self.coeffs.iter().map(FpPoly::lift).collect(),
        }
    }

    /// Reduction modulo `π^{N'}` for `N' ≤ N`; digits of a normal form are
    /// unique, so this is plain truncation.
    pub fn truncate(&self, precision: u32) -> Result<Self> {
        if precision > self.params.precision() {
            return Err(Error::InvalidParams(format!(
                "cannot raise precision from {} to {precision}",
                self.params.precision()
            )));
        }
        let params = self.params.with_precision(precision)?;
        Ok(LazardElement {
            params,
            coeffs: self.coeffs[..precision as usize].to_vec(),
        })
    }

    /// Multiplication by `π^k`; normal-form digits just shift.
    pub fn shift(&self, k: usize) -> Self {
        let mut out = Self::zero(self.params);
        for (j, c) in self.coeffs.iter().enumerate() {
            if j + k < out.coeffs.len() {
                out.coeffs[j + k] = c.clone();
            }
        }
        out
    }

    /// Re-embeds at a higher precision with zero digits on top. Only
    /// meaningful for elements already known to be multiples of `π^{N−N'}`
    /// shifted by the caller.
    fn extend_to(&self, params: Params) -> Self {
        let mut out = Self::zero(params);
        for (j, c) in self.coeffs.iter().enumerate() {
            out.coeffs[j] = c.clone();
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(normalize(&self.to_raw().add(&other.to_raw())?))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Ok(normalize(&self.to_raw().sub(&other.to_raw())?))
    }

    pub fn neg(&self) -> Self {
        normalize(&RawSeries::zero(self.params).sub(&self.to_raw()).expect("same params"))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        Ok(normalize(&self.to_raw().mul(&other.to_raw())?))
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut result = Self::one(self.params);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base).expect("same params");
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base).expect("same params");
            }
        }
        result
    }

    pub fn to_json(&self) -> LazardJson {
        LazardJson {
            params: self.params,
            coeffs: self.coeffs.iter().map(FpPoly::to_json_value).collect(),
        }
    }

    pub fn from_json(json: &LazardJson) -> Result<Self> {
        let coeffs = json.coeffs.iter().map(FpPoly::from_json).collect::<Result<Vec<_>>>()?;
        if coeffs.len() != json.params.precision() as usize {
            return Err(Error::Parse(format!(
                "expected {} coefficients, found {}",
                json.params.precision(),
                coeffs.len()
            )));
        }
        Ok(LazardElement {
            params: json.params,
            coeffs,
        })
    }
}

/// `{"params":{...},"coeffs":[<polynomial JSON>, ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LazardJson {
    pub params: Params,
    pub coeffs: Vec<PolyJson>,
}

pub fn lz_add(a: &LazardElement, b: &LazardElement) -> Result<LazardElement> {
    a.add(b)
}

pub fn lz_mul(a: &LazardElement, b: &LazardElement) -> Result<LazardElement> {
    a.mul(b)
}

pub fn pi_coefficient(a: &LazardElement, j: usize) -> Result<&FpPoly> {
    a.pi_coefficient(j)
}

/// The multiplicative lift `[r]` modulo `π^N`.
///
/// Any lift of `r^{q^{-(N−1)}}` raised to the `q^{N−1}`-th power agrees with
/// `[r]` modulo `π^N`; the canonical coefficientwise lift is used.
pub fn teichmuller(r: &FpPoly, params: Params) -> LazardElement {
    let steps = params.precision() - 1;
    let root = r.frobenius(params.q(), -(steps as i32));
    let mut x = LazardElement::from_residue(params, root);
    for _ in 0..steps {
        x = x.pow(params.q());
    }
    x
}

/// The Witt coordinates `(β_i)` of an element written as `Σ [β_i^{q^{-i}}] π^i`.
///
/// Peels off one multiplicative lift per π-degree; the digit left in degree
/// `i` is `β_i^{q^{-i}}`.
pub fn witt_coordinates(a: &LazardElement) -> Result<Vec<FpPoly>> {
    let params = a.params;
    let n = params.precision() as usize;
    let mut rem = a.clone();
    let mut coords = Vec::with_capacity(n);
    for i in 0..n {
        if let Some(j) = (0..i).find(|&j| !rem.coeffs[j].is_zero()) {
            return Err(Error::NotConcentrated { degree: i, found: j });
        }
        let digit = rem.coeffs[i].clone();
        coords.push(digit.frobenius(params.q(), i as i32));
        if i + 1 < n && !digit.is_zero() {
            let lifted = teichmuller(&digit, params.with_precision((n - i) as u32)?);
            let term = lifted.extend_to(params).shift(i);
            rem = rem.sub(&term)?;
        }
    }
    Ok(coords)
}

impl fmt::Display for LazardElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| series_term(&c.to_text(), c.len(), j))
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Renders `c·π^j` with the conventions shared by every π-series printer.
pub fn series_term(coeff: &str, terms: usize, j: usize) -> String {
    let pi = pi_power_text(j);
    if j == 0 {
        return coeff.to_string();
    }
    if coeff == "1" {
        return pi;
    }
    if terms > 1 || coeff.starts_with('-') {
        format!("({coeff})·{pi}")
    } else {
        format!("{coeff}·{pi}")
    }
}

fn pi_power_text(j: usize) -> String {
    const SUP: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    match j {
        0 => "1".to_string(),
        1 => "π".to_string(),
        _ => {
            let digits: String = j
                .to_string()
                .chars()
                .map(|c| SUP[c.to_digit(10).unwrap() as usize])
                .collect();
            format!("π{digits}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PExponent;

    fn params(p: u64, q: u64, t: i32, n: u32) -> Params {
        Params::infinite(p, q, t, n).unwrap()
    }

    fn w(i: u32) -> FpPoly {
        FpPoly::var(PrimeField::new(2), Variable::Omega(i))
    }

    #[test]
    fn normalize_p() {
        let pr = params(3, 3, 0, 4);
        let a = normalize(&RawSeries::integer(pr, 3));
        let f = PrimeField::new(3);
        assert!(a.coeffs[0].is_zero());
        for i in 1..4 {
            assert_eq!(a.coeffs[i], FpPoly::var(f, Variable::Omega(i as u32)));
        }
        assert_eq!(a.pi_coefficient(1).unwrap(), &FpPoly::var(f, Variable::Omega(1)));
        assert!(a.pi_coefficient(4).is_err());
    }

    /// p² = (ω₁π + ω₂π² + …)² truncated at π³ is ω₁²π².
    #[test]
    fn normalize_p_squared() {
        let pr = params(2, 2, 0, 3);
        let a = normalize(&RawSeries::integer(pr, 4));
        assert!(a.coeffs[0].is_zero());
        assert!(a.coeffs[1].is_zero());
        assert_eq!(a.coeffs[2], w(1).pow(2));
        let p = normalize(&RawSeries::integer(pr, 2));
        assert_eq!(p.mul(&p).unwrap(), a);
    }

    #[test]
    fn one_and_zero() {
        let pr = params(2, 2, 0, 3);
        assert_eq!(normalize(&RawSeries::integer(pr, 1)), LazardElement::one(pr));
        let a = LazardElement::pi_power(pr, 1);
        assert_eq!(lz_add(&a, &LazardElement::zero(pr)).unwrap(), a);
        assert_eq!(
            pi_coefficient(&LazardElement::one(pr), 1).unwrap(),
            &FpPoly::zero(PrimeField::new(2))
        );
        let pr2 = params(2, 2, 0, 2);
        let pi = LazardElement::pi_power(pr2, 1);
        assert!(lz_mul(&pi, &pi).unwrap().is_zero());
    }

    #[test]
    fn negative_coefficients_carry() {
        let pr = params(2, 2, 0, 3);
        // -1 = 1 + 2·(-1) => digits of -1 are nontrivial but -1 + 1 = 0
        let m1 = normalize(&RawSeries::integer(pr, -1));
        let sum = m1.add(&LazardElement::one(pr)).unwrap();
        assert!(sum.is_zero());
        assert_eq!(m1, LazardElement::one(pr).neg());
    }

    #[test]
    fn teichmuller_basics() {
        let pr = params(2, 2, 0, 3);
        let f = PrimeField::new(2);
        assert!(teichmuller(&FpPoly::zero(f), pr).is_zero());
        assert_eq!(teichmuller(&FpPoly::one(f), pr), LazardElement::one(pr));
        let x0 = FpPoly::var(f, Variable::X(0));
        let tx = teichmuller(&x0, pr);
        assert_eq!(tx.coeffs[0], x0);
        let shifted = tx.mul(&LazardElement::pi_power(pr, 1)).unwrap();
        assert_eq!(shifted.pi_coefficient(1).unwrap(), &x0);
    }

    #[test]
    fn teichmuller_multiplicative_on_omega() {
        let pr = params(2, 2, 0, 3);
        let a = teichmuller(&w(1), pr);
        let b = teichmuller(&w(1).pow(2), pr);
        assert_eq!(a.mul(&a).unwrap(), b);
    }

    #[test]
    fn coordinates_of_p() {
        // p = Σ [ω_i^{q^t}] π^i, so the i-th coordinate is ω_i^{q^{t+i}}
        for t in [0, 1] {
            let pr = params(2, 2, t, 4);
            let c = witt_coordinates(&normalize(&RawSeries::integer(pr, 2))).unwrap();
            assert!(c[0].is_zero());
            for i in 1..4u32 {
                let e = PExponent::q_power(2, t + i as i32);
                let expect = FpPoly::monomial(PrimeField::new(2), Monomial::var_pow(Variable::Omega(i), e));
                assert_eq!(c[i as usize], expect);
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let pr = params(3, 3, 1, 3);
        let a = normalize(&RawSeries::integer(pr, 5));
        let text = serde_json::to_string(&a.to_json()).unwrap();
        let back = LazardElement::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn rendering() {
        let pr = params(2, 2, 0, 4);
        let a = normalize(&RawSeries::integer(pr, 2));
        assert_eq!(a.to_string(), "w1·π + w2·π² + w3·π³");
    }
}
