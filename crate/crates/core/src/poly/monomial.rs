use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use smallvec::SmallVec;

use super::exponent::PExponent;
use super::variable::Variable;

type Factors = SmallVec<[(Variable, PExponent); 4]>;

/// A power product of variables with exponents in `Z[1/p]_{≥0}`.
///
/// Factors are kept sorted by variable with no zero exponents. The total
/// degree is cached because the term order consults it on every comparison.
#[derive(Clone, Default)]
pub struct Monomial {
    factors: Factors,
    degree: PExponent,
}

impl Default for PExponent {
    fn default() -> Self {
        PExponent::ZERO
    }
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: Variable) -> Self {
        Self::var_pow(v, PExponent::ONE)
    }

    pub fn var_pow(v: Variable, e: PExponent) -> Self {
        if e.is_zero() {
            return Self::one();
        }
        let mut factors = Factors::new();
        factors.push((v, e));
        Monomial { factors, degree: e }
    }

    /// Builds a monomial from arbitrary `(variable, exponent)` pairs, merging repeats.
    pub fn from_factors<I: IntoIterator<Item = (Variable, PExponent)>>(it: I) -> Self {
        let mut factors: Factors = it.into_iter().filter(|(_, e)| !e.is_zero()).collect();
        factors.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged = Factors::with_capacity(factors.len());
        for (v, e) in factors {
            match merged.last_mut() {
                Some((lv, le)) if *lv == v => *le = *le + e,
                _ => merged.push((v, e)),
            }
        }
        let degree = merged.iter().fold(PExponent::ZERO, |acc, (_, e)| acc + *e);
        Monomial {
            factors: merged,
            degree,
        }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> PExponent {
        self.degree
    }

    pub fn factors(&self) -> &[(Variable, PExponent)] {
        &self.factors
    }

    pub fn exponent(&self, v: &Variable) -> PExponent {
        match self.factors.binary_search_by(|(w, _)| w.cmp(v)) {
            Ok(i) => self.factors[i].1,
            Err(_) => PExponent::ZERO,
        }
    }

    pub fn contains(&self, v: &Variable) -> bool {
        !self.exponent(v).is_zero()
    }

    pub fn variables(&self) -> impl Iterator<Item = &Variable> {
        self.factors.iter().map(|(v, _)| v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        if other.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return other.clone();
        }
        let mut out = Factors::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.factors, &other.factors);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().cloned());
        Monomial {
            factors: out,
            degree: self.degree + other.degree,
        }
    }

    /// `self^k` for an integer `k`.
    pub fn pow(&self, k: u64) -> Monomial {
        self.scale_exponents(PExponent::integer(k))
    }

    /// Multiplies every exponent by `factor`.
    pub fn scale_exponents(&self, factor: PExponent) -> Monomial {
        self.scale_exponents_where(factor, |_| true)
    }

    /// Multiplies the exponents of the variables selected by `pred` by `factor`.
    pub fn scale_exponents_where<F: Fn(&Variable) -> bool>(&self, factor: PExponent, pred: F) -> Monomial {
        if factor.is_zero() {
            return Monomial::from_factors(self.factors.iter().filter(|(v, _)| !pred(v)).cloned());
        }
        let mut degree = PExponent::ZERO;
        let factors: Factors = self
            .factors
            .iter()
            .map(|(v, e)| {
                let e = if pred(v) { *e * factor } else { *e };
                degree = degree + e;
                (v.clone(), e)
            })
            .collect();
        Monomial { factors, degree }
    }

    /// Renames variables; the result is re-sorted and merged.
    pub fn map_variables<F: Fn(&Variable) -> Variable>(&self, f: F) -> Monomial {
        Monomial::from_factors(self.factors.iter().map(|(v, e)| (f(v), *e)))
    }

    /// Splits off the factors whose variable satisfies `pred`: `(selected, rest)`.
    pub fn split<F: Fn(&Variable) -> bool>(&self, pred: F) -> (Monomial, Monomial) {
        let (sel, rest): (Vec<_>, Vec<_>) = self.factors.iter().cloned().partition(|(v, _)| pred(v));
        (Monomial::from_factors(sel), Monomial::from_factors(rest))
    }

    pub fn all_exponents_integral(&self) -> bool {
        self.factors.iter().all(|(_, e)| e.is_integer())
    }
}

impl PartialEq for Monomial {
    fn eq(&self, other: &Self) -> bool {
        self.factors == other.factors
    }
}

impl Eq for Monomial {}

impl Hash for Monomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.factors.hash(state);
    }
}

/// The term order: negative-degree lexicographic.
///
/// A term of lower total degree is *greater*; ties are broken
/// lexicographically with `ω₁` the most significant variable, then the rest
/// of the alphabet in [`Variable`] order. Polynomials are stored and printed
/// in descending order, so low-degree terms come first and, within a degree,
/// terms are listed alphabetically.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match other.degree.cmp(&self.degree) {
            Ordering::Equal => {}
            o => return o,
        }
        let (a, b) = (&self.factors, &other.factors);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                // `self` has a positive exponent on a more significant variable
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => match a[i].1.cmp(&b[j].1) {
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                    }
                    o => return o,
                },
            }
        }
        match (i < a.len(), j < b.len()) {
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            _ => Ordering::Equal,
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.factors.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            write!(f, "{v}")?;
            if *e != PExponent::ONE {
                if e.is_integer() {
                    write!(f, "^{e}")?;
                } else {
                    write!(f, "^({e})")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
