use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{is_prime, p_valuation, PExponent};

/// Parameters of the universal π-ring: the prime `p`, the residue
/// cardinality `q = p^e`, the Frobenius twist `t`, the truncation length
/// `m` (`None` for `m = ∞`) and the working π-precision `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Params {
    p: u64,
    q: u64,
    e: u32,
    t: i32,
    m: Option<u32>,
    precision: u32,
}

impl Params {
    pub fn new(p: u64, q: u64, t: i32, m: Option<u32>, precision: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidParams(format!("p = {p} is not prime")));
        }
        let e = log_exact(q, p)
            .filter(|&e| e >= 1)
            .ok_or_else(|| Error::InvalidParams(format!("q = {q} is not a positive power of p = {p}")))?;
        if precision == 0 {
            return Err(Error::InvalidParams("precision N must be at least 1".into()));
        }
        if let Some(m) = m {
            if precision > m + 1 {
                return Err(Error::InvalidParams(format!(
                    "precision N = {precision} exceeds m + 1 = {}",
                    m + 1
                )));
            }
        }
        Ok(Params {
            p,
            q,
            e,
            t,
            m,
            precision,
        })
    }

    /// `m = ∞` at precision `N`.
    pub fn infinite(p: u64, q: u64, t: i32, precision: u32) -> Result<Self> {
        Self::new(p, q, t, None, precision)
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn e(&self) -> u32 {
        self.e
    }
    pub fn t(&self) -> i32 {
        self.t
    }
    pub fn m(&self) -> Option<u32> {
        self.m
    }
    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn with_precision(&self, precision: u32) -> Result<Self> {
        Self::new(self.p, self.q, self.t, self.m, precision)
    }

    pub fn with_twist(&self, t: i32) -> Self {
        Params { t, ..*self }
    }

    /// The exponent `q^t` carried by the universal coefficients in the defining relation.
    pub fn omega_exponent(&self) -> PExponent {
        PExponent::q_power(self.q, self.t)
    }

    /// Largest `i` with `ω_i π^i` surviving: `min(m, N − 1)`.
    pub fn active_omegas(&self) -> u32 {
        let n = self.precision - 1;
        match self.m {
            Some(m) => m.min(n),
            None => n,
        }
    }

    /// `v_q(x) = v_p(x) / e`.
    pub fn v_q(&self, x: &BigInt) -> Option<QValuation> {
        p_valuation(x, self.p).map(|vp| QValuation { vp, e: self.e })
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={} q={} t={} m=", self.p, self.q, self.t)?;
        match self.m {
            Some(m) => write!(f, "{m}")?,
            None => f.write_str("inf")?,
        }
        write!(f, " N={}", self.precision)
    }
}

/// An exact `q`-adic valuation `v_p / e`.
#[derive(Clone, Copy, Debug)]
pub struct QValuation {
    pub vp: u32,
    pub e: u32,
}

impl QValuation {
    pub fn integer(n: u32) -> Self {
        QValuation { vp: n, e: 1 }
    }
}

impl PartialEq for QValuation {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for QValuation {}

impl Ord for QValuation {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.vp as u64 * other.e as u64).cmp(&(other.vp as u64 * self.e as u64))
    }
}

impl PartialOrd for QValuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn log_exact(mut q: u64, p: u64) -> Option<u32> {
    if q == 0 {
        return None;
    }
    let mut e = 0;
    while q.is_multiple_of(p) {
        q /= p;
        e += 1;
    }
    (q == 1).then_some(e)
}
