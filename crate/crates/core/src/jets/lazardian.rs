//! Lazardian jets: the universal Lazardian derivations `d^{[n]}`, `n ≤ m`,
//! on polynomial expressions, and the adjunction maps `η′`, `ε′` between
//! the jet ring and `W_m`.
//!
//! `d^{[·]}` is characterised by `d^{[0]} = id`, `d^{[n]}c = c_n` on
//! constants, and `d^{[n]}(a ∗ b) = Q^{∗}_n(d^{[·]}a, d^{[·]}b)`. The jets
//! of a generator are free variables, so the jet ring is the perfection of
//! `F_p[ω^{pf}][d^{[n]}t]`.

use std::sync::Arc;

use crate::arith::{Op, QTable};
use crate::error::{Error, Result};
use crate::jets::expr::Expr;
use crate::lazard::{normalize, witt_coordinates, RawSeries};
use crate::params::Params;
use crate::poly::{FpPoly, IntPoly, Variable};
use crate::witt::{structure_map, ResidueRing, WittVector};

/// The ring of Lazardian `m`-jets of a polynomial ring on `generators`.
#[derive(Clone, Debug)]
pub struct LazardianJetRing {
    params: Params,
    generators: Vec<Arc<str>>,
    ring: Arc<ResidueRing>,
}

impl LazardianJetRing {
    pub fn new(p: u64, q: u64, t: i32, m: u32, generators: Vec<Arc<str>>) -> Result<Self> {
        let params = Params::new(p, q, t, Some(m), m + 1)?;
        let vars = generators
            .iter()
            .flat_map(|g| (0..=m).map(move |n| Variable::jet(g, n)))
            .collect();
        let ring = Arc::new(ResidueRing::perfect(p, q, vars)?);
        Ok(LazardianJetRing {
            params,
            generators,
            ring,
        })
    }

    /// The jet ring on the generators of `e`.
    pub fn for_expr(p: u64, q: u64, t: i32, m: u32, e: &Expr) -> Result<Self> {
        Self::new(p, q, t, m, e.generators())
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn m(&self) -> u32 {
        self.params.m().expect("finite by construction")
    }

    pub fn generators(&self) -> &[Arc<str>] {
        &self.generators
    }

    /// The jet ring as a residue ring, for building Witt vectors over it.
    pub fn residue_ring(&self) -> &Arc<ResidueRing> {
        &self.ring
    }

    fn check_generator(&self, g: &str) -> Result<()> {
        if self.generators.iter().any(|h| &**h == g) {
            Ok(())
        } else {
            Err(Error::Unsupported(format!("`{g}` is not a generator of this jet ring")))
        }
    }

    fn generator_jets(&self, g: &str) -> Vec<FpPoly> {
        (0..=self.m()).map(|n| self.ring.var(Variable::jet(g, n))).collect()
    }

    /// `(d^{[0]}e, …, d^{[m]}e)` by recursion on the defining relations.
    pub fn jets(&self, e: &Expr) -> Result<Vec<FpPoly>> {
        if e.is_constant() {
            return self.constant_jets(e);
        }
        match e {
            Expr::Gen(g) => {
                self.check_generator(g)?;
                Ok(self.generator_jets(g))
            }
            Expr::Add(a, b) => self.combine(Op::Add, &self.jets(a)?, &self.jets(b)?),
            Expr::Mul(a, b) => self.combine(Op::Mul, &self.jets(a)?, &self.jets(b)?),
            Expr::Neg(a) => {
                let minus_one = self.constant_jets(&Expr::Int(-1))?;
                self.combine(Op::Mul, &minus_one, &self.jets(a)?)
            }
            Expr::Pow(a, k) => {
                let base = self.jets(a)?;
                let mut acc = self.constant_jets(&Expr::Int(1))?;
                for _ in 0..*k {
                    acc = self.combine(Op::Mul, &acc, &base)?;
                }
                Ok(acc)
            }
            _ => unreachable!("constant leaves are handled above"),
        }
    }

    /// `d^{[n]}e`.
    pub fn derive(&self, e: &Expr, n: u32) -> Result<FpPoly> {
        if n > self.m() {
            return Err(Error::IndexOutOfRange {
                index: n as usize,
                len: self.m() as usize + 1,
            });
        }
        Ok(self.jets(e)?.swap_remove(n as usize))
    }

    /// `Q^{∗}_n` at `X_i = a_i`, `Y_i = b_i` for every `n ≤ m`.
    fn combine(&self, op: Op, a: &[FpPoly], b: &[FpPoly]) -> Result<Vec<FpPoly>> {
        let qs = QTable::global().levels(op, self.m(), &self.params)?;
        qs.iter()
            .map(|entry| {
                entry.q.eval(|v| match v {
                    Variable::X(i) => a.get(*i as usize).cloned(),
                    Variable::Y(i) => b.get(*i as usize).cloned(),
                    _ => None,
                })
            })
            .collect()
    }

    /// Coordinates of a constant of `O_m`, read off its normal form.
    fn constant_jets(&self, e: &Expr) -> Result<Vec<FpPoly>> {
        let series = self.constant_series(e)?;
        witt_coordinates(&normalize(&series))
    }

    fn constant_series(&self, e: &Expr) -> Result<RawSeries> {
        let params = self.params;
        Ok(match e {
            Expr::Int(n) => RawSeries::integer(params, *n),
            Expr::Omega(i) => {
                if *i > self.m() {
                    return Err(Error::Unsupported(format!("ω_{i} does not live in O_{}", self.m())));
                }
                RawSeries::constant(params, IntPoly::int_var(Variable::Omega(*i)))
            }
            Expr::Pi => RawSeries::pi_power(params, 1),
            Expr::Add(a, b) => self.constant_series(a)?.add(&self.constant_series(b)?)?,
            Expr::Mul(a, b) => self.constant_series(a)?.mul(&self.constant_series(b)?)?,
            Expr::Neg(a) => RawSeries::zero(params).sub(&self.constant_series(a)?)?,
            Expr::Pow(a, k) => {
                let base = self.constant_series(a)?;
                let mut acc = RawSeries::integer(params, 1);
                for _ in 0..*k {
                    acc = acc.mul(&base)?;
                }
                acc
            }
            Expr::Gen(g) => return Err(Error::Unsupported(format!("`{g}` is not a constant"))),
        })
    }

    /// `η′(e) ∈ W_m(J)`: the image of `e` under the unit of the adjunction,
    /// computed with Witt vector arithmetic from `η′(t) = (t, d^{[1]}t, …)`.
    pub fn eta_prime(&self, e: &Expr) -> Result<WittVector> {
        let len = self.m() as usize + 1;
        let t = self.params.t();
        evaluate_in_witt(e, self.ring.clone(), t, len, &|g| {
            self.check_generator(g)?;
            WittVector::new(self.ring.clone(), t, self.generator_jets(g))
        })
    }

    /// Transports `η′(e)` along `d^{[n]}g ↦ (w_g)_n` into `W_m(k)`.
    pub fn specialize(
        &self,
        v: &WittVector,
        target: Arc<ResidueRing>,
        assignment: &dyn Fn(&str) -> Option<WittVector>,
    ) -> Result<WittVector> {
        let mut images = Vec::new();
        for g in &self.generators {
            let w = assignment(g).ok_or_else(|| Error::Unsupported(format!("no value for `{g}`")))?;
            if w.len() != v.len() {
                return Err(Error::ParamsMismatch(format!("window {} vs {}", w.len(), v.len())));
            }
            for (n, c) in w.coords().iter().enumerate() {
                images.push((Variable::jet(g, n as u32), c.clone()));
            }
        }
        let coords = v
            .coords()
            .iter()
            .map(|c| {
                let out = c.eval_with(
                    |var| images.iter().find(|(x, _)| x == var).map(|(_, y)| y.clone()),
                    &|f| target.reduce(f),
                )?;
                Ok(target.reduce(out))
            })
            .collect::<Result<Vec<_>>>()?;
        WittVector::new(target, v.t(), coords)
    }
}

/// `ε′_n : W_m(k) → k`, the `n`-th coordinate.
pub fn eps_prime(w: &WittVector, n: usize) -> Result<FpPoly> {
    w.coords()
        .get(n)
        .cloned()
        .ok_or(Error::IndexOutOfRange { index: n, len: w.len() })
}

/// Evaluates an expression in `W(k)`: generators by `assignment`,
/// constants through the structure map and operations as Witt operations.
pub fn evaluate_in_witt(
    e: &Expr,
    ring: Arc<ResidueRing>,
    t: i32,
    len: usize,
    assignment: &dyn Fn(&str) -> Result<WittVector>,
) -> Result<WittVector> {
    let rec = |x: &Expr| evaluate_in_witt(x, ring.clone(), t, len, assignment);
    match e {
        Expr::Gen(g) => assignment(g),
        Expr::Int(n) => WittVector::integer(ring.clone(), t, len, *n),
        Expr::Omega(i) => {
            let params = Params::new(ring.p(), ring.q(), t, Some(len as u32 - 1), len as u32)?;
            let c = RawSeries::constant(params, IntPoly::int_var(Variable::Omega(*i)));
            structure_map(&c, ring.clone(), len)
        }
        Expr::Pi => Ok(WittVector::pi(ring.clone(), t, len)),
        Expr::Add(a, b) => rec(a)?.add(&rec(b)?),
        Expr::Mul(a, b) => rec(a)?.mul(&rec(b)?),
        Expr::Neg(a) => rec(a)?.neg(),
        Expr::Pow(a, k) => rec(a)?.pow(*k as u64),
    }
}

/// `(d^{[0]}e, …, d^{[m]}e)` over the jet ring on the generators of `e`.
pub fn lazardian_jets(e: &Expr, p: u64, q: u64, t: i32, m: u32) -> Result<Vec<FpPoly>> {
    LazardianJetRing::for_expr(p, q, t, m, e)?.jets(e)
}
