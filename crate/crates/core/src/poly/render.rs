use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::coeff::{CoeffRing, Domain, Integers, PrimeField};
use super::exponent::PExponent;
use super::monomial::Monomial;
use super::polynomial::{FpPoly, IntPoly, Poly};
use super::variable::Variable;
use crate::error::{Error, Result};

/// Serialized polynomial:
/// `{"domain":"Fp"|"Z","p":int,"terms":[{"coeff":string,"monomial":[{"var":string,"num":int,"pden":int}]}]}`.
///
/// `pden` is the exponent of the denominator: a factor contributes
/// `var^(num / p^pden)`. Terms appear in descending term order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub domain: Domain,
    pub p: u64,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub monomial: Vec<FactorJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorJson {
    pub var: String,
    pub num: u64,
    pub pden: u32,
}

impl<R: CoeffRing> Poly<R> {
    /// Serializes with exponent denominators expressed as powers of `p`.
    pub fn to_json(&self, p: u64) -> Result<PolyJson> {
        let mut terms = Vec::with_capacity(self.len());
        for (m, c) in self.terms() {
            let mut monomial = Vec::new();
            for (v, e) in m.factors() {
                let pden = e.denom_exp(p).ok_or_else(|| {
                    Error::Unsupported(format!("exponent {e} has a denominator that is not a power of {p}"))
                })?;
                monomial.push(FactorJson {
                    var: v.name(),
                    num: e.numerator(),
                    pden,
                });
            }
            terms.push(TermJson {
                coeff: self.ring().to_bigint(c).to_string(),
                monomial,
            });
        }
        Ok(PolyJson {
            domain: self.ring().domain(),
            p,
            terms,
        })
    }

    fn from_json_terms(ring: R, json: &PolyJson) -> Result<Self> {
        if json.domain != ring.domain() {
            return Err(Error::DomainMismatch(format!(
                "expected {:?}, found {:?}",
                ring.domain(),
                json.domain
            )));
        }
        let mut terms = Vec::with_capacity(json.terms.len());
        for t in &json.terms {
            let c: BigInt = t
                .coeff
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient `{}`", t.coeff)))?;
            let mut factors = Vec::with_capacity(t.monomial.len());
            for f in &t.monomial {
                let v = Variable::parse(&f.var)?;
                factors.push((v, PExponent::with_p_denominator(f.num, json.p, f.pden)));
            }
            terms.push((Monomial::from_factors(factors), ring.from_bigint(&c)));
        }
        Ok(Poly::from_terms(ring, terms))
    }

    /// Text rendering in descending term order, e.g. `X1 + Y1 + w1^2*X0*Y0`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// LaTeX rendering in the same order as the text renderer.
    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms().iter().enumerate() {
            let c = self.ring().to_bigint(c);
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = latex_monomial(m);
            if m.is_one() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag} {mono}"));
            }
        }
        out
    }
}

fn latex_monomial(m: &Monomial) -> String {
    let parts: Vec<String> = m
        .factors()
        .iter()
        .map(|(v, e)| {
            let base = v.latex();
            if *e == PExponent::ONE {
                base
            } else if e.is_integer() {
                format!("{base}^{{{e}}}")
            } else {
                format!("{base}^{{{}/{}}}", e.numerator(), e.denominator())
            }
        })
        .collect();
    parts.join(" ")
}

impl FpPoly {
    pub fn to_json_value(&self) -> PolyJson {
        self.to_json(self.p()).expect("F_p exponents have p-power denominators")
    }

    pub fn from_json(json: &PolyJson) -> Result<Self> {
        Self::from_json_terms(PrimeField::new(json.p), json)
    }
}

impl IntPoly {
    pub fn from_json(json: &PolyJson) -> Result<Self> {
        Self::from_json_terms(Integers, json)
    }
}

impl<R: CoeffRing> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().iter().enumerate() {
            let c = self.ring().to_bigint(c);
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_with_fractional_exponents() {
        let f = PrimeField::new(3);
        let m = Monomial::from_factors([
            (Variable::Omega(1), PExponent::new(1, 9)),
            (Variable::X(2), PExponent::integer(4)),
        ]);
        let poly = &FpPoly::term(f, m, 2) + &FpPoly::var(f, Variable::jet("t1", 2));
        let json = poly.to_json_value();
        let text = serde_json::to_string(&json).unwrap();
        let back = FpPoly::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, poly);
        assert_eq!(serde_json::to_string(&back.to_json_value()).unwrap(), text);
    }

    #[test]
    fn text_and_latex() {
        let f = PrimeField::new(2);
        let m = Monomial::from_factors([
            (Variable::Omega(1), PExponent::integer(2)),
            (Variable::X(0), PExponent::ONE),
            (Variable::Y(0), PExponent::ONE),
        ]);
        let q = &(&FpPoly::var(f, Variable::X(1)) + &FpPoly::var(f, Variable::Y(1))) + &FpPoly::monomial(f, m);
        assert_eq!(q.to_text(), "X1 + Y1 + w1^2*X0*Y0");
        assert_eq!(q.to_latex(), "X_{1} + Y_{1} + \\omega_{1}^{2} X_{0} Y_{0}");
        let h = FpPoly::monomial(f, Monomial::var_pow(Variable::X(0), PExponent::new(1, 2)));
        assert_eq!(h.to_text(), "X0^(1/2)");
    }

    #[test]
    fn json_domain_is_checked() {
        let z = IntPoly::int_var(Variable::X(0));
        let json = z.to_json(2).unwrap();
        assert!(FpPoly::from_json(&json).is_err());
        assert_eq!(IntPoly::from_json(&json).unwrap(), z);
    }
}
