//! The arithmetic polynomials `Q^{∗(t)}_{n,q}` for `∗ ∈ {+, ×}`.
//!
//! They are characterised by
//! `Σ X_i^{q^{-i}} π^i ∗ Σ Y_i^{q^{-i}} π^i = Σ [Q_i(X,Y)^{q^{-i}}] π^i`
//! and computed one level at a time: working modulo `π^{n+1}`, subtract the
//! multiplicative lifts of the lower levels from the left side, read off the
//! digit in degree `n` and undo the `q^{-n}` root.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lazard::{normalize, teichmuller, LazardElement, RawSeries};
use crate::params::Params;
use crate::poly::{FpPoly, IntPoly, Integers, Monomial, PExponent, Variable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Op {
    Add,
    Mul,
}

impl Op {
    pub fn name(self) -> &'static str {
        match self {
            Op::Add => "add",
            Op::Mul => "mul",
        }
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Op {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "add" | "+" => Ok(Op::Add),
            "mul" | "*" | "×" => Ok(Op::Mul),
            _ => Err(Error::Parse(format!("unknown operation `{s}`"))),
        }
    }
}

/// Identifies `Q^{op,(t)}_{n,q}` over `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QKey {
    pub op: Op,
    pub n: u32,
    pub p: u64,
    pub q: u64,
    pub t: i32,
}

impl QKey {
    pub fn new(op: Op, n: u32, p: u64, q: u64, t: i32) -> Result<Self> {
        // validates p and q
        Params::infinite(p, q, t, n + 1)?;
        Ok(QKey { op, n, p, q, t })
    }

    pub fn from_params(op: Op, n: u32, params: &Params) -> Self {
        QKey {
            op,
            n,
            p: params.p(),
            q: params.q(),
            t: params.t(),
        }
    }

    /// Ambient parameters for level `n`: precision `n + 1`, `m = ∞`.
    pub fn params(&self) -> Params {
        Params::infinite(self.p, self.q, self.t, self.n + 1).expect("validated at construction")
    }

    pub fn at_level(&self, n: u32) -> Self {
        QKey { n, ..*self }
    }

    /// `p{p}_q{q}_t{t}/{op}_{n}.json`, shared by golden files and the disk cache.
    pub fn relative_path(&self) -> PathBuf {
        Path::new(&format!("p{}_q{}_t{}", self.p, self.q, self.t)).join(format!("{}_{}.json", self.op, self.n))
    }
}

/// A computed `Q_n` together with its canonical integer lift `P_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QEntry {
    pub q: FpPoly,
    pub lift: IntPoly,
}

impl QEntry {
    fn new(q: FpPoly) -> Self {
        let lift = q.lift();
        QEntry { q, lift }
    }
}

/// Memo table for the `Q` polynomials with optional on-disk persistence.
///
/// Readers share the lock; a missing entry is computed outside the lock and
/// then inserted, so concurrent requests for the same key may duplicate work
/// but always agree on the result.
#[derive(Debug, Default)]
pub struct QTable {
    entries: RwLock<HashMap<QKey, Arc<QEntry>>>,
    cache_dir: Option<PathBuf>,
}

impl QTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_cache_dir(dir: impl Into<PathBuf>) -> Self {
        QTable {
            entries: RwLock::default(),
            cache_dir: Some(dir.into()),
        }
    }

    /// The process-wide table used by the free functions in this crate.
    pub fn global() -> &'static QTable {
        static GLOBAL: OnceLock<QTable> = OnceLock::new();
        GLOBAL.get_or_init(QTable::new)
    }

    pub fn cache_dir(&self) -> Option<&Path> {
        self.cache_dir.as_deref()
    }

    pub fn len(&self) -> usize {
        self.entries.read().expect("poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, key: QKey) -> Result<Arc<QEntry>> {
        if let Some(e) = self.entries.read().expect("poisoned").get(&key) {
            return Ok(e.clone());
        }
        let entry = match self.load(&key)? {
            Some(e) => e,
            None => {
                let lower = (0..key.n)
                    .map(|i| self.get(key.at_level(i)))
                    .collect::<Result<Vec<_>>>()?;
                let q = compute_level(key, &lower)?;
                let e = QEntry::new(q);
                self.store(&key, &e)?;
                e
            }
        };
        let entry = Arc::new(entry);
        self.entries
            .write()
            .expect("poisoned")
            .entry(key)
            .or_insert_with(|| entry.clone());
        Ok(entry)
    }

    /// `Q_0, …, Q_n` for one operation.
    pub fn levels(&self, op: Op, n: u32, params: &Params) -> Result<Vec<Arc<QEntry>>> {
        let key = QKey::from_params(op, n, params);
        (0..=n).map(|i| self.get(key.at_level(i))).collect()
    }

    fn load(&self, key: &QKey) -> Result<Option<QEntry>> {
        let Some(dir) = &self.cache_dir else {
            return Ok(None);
        };
        let path = dir.join(key.relative_path());
        if !path.exists() {
            return Ok(None);
        }
        let text = fs::read_to_string(&path)?;
        let json = serde_json::from_str(&text)?;
        Ok(Some(QEntry::new(FpPoly::from_json(&json)?)))
    }

    fn store(&self, key: &QKey, entry: &QEntry) -> Result<()> {
        let Some(dir) = &self.cache_dir else {
            return Ok(());
        };
        let path = dir.join(key.relative_path());
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent)?;
        }
        // write then rename, so concurrent readers never see a partial file
        let tmp = path.with_extension(format!(
            "json.{}.{:?}.tmp",
            std::process::id(),
            std::thread::current().id()
        ));
        fs::write(&tmp, q_to_json_string(&entry.q))?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }
}

/// The serialized form written to golden files and the disk cache.
pub fn q_to_json_string(q: &FpPoly) -> String {
    let mut s = serde_json::to_string_pretty(&q.to_json_value()).expect("serializable");
    s.push('\n');
    s
}

/// `Q^{op,(t)}_{n,q}` from the global table.
pub fn compute_q(key: QKey) -> Result<FpPoly> {
    Ok(QTable::global().get(key)?.q.clone())
}

/// `Σ_{i≤n} V_i^{q^{-i}} π^i` with `V` one of the coordinate families.
pub fn coordinate_series(params: Params, var: fn(u32) -> Variable) -> RawSeries {
    let n = params.precision();
    let coeffs = (0..n)
        .map(|i| {
            let mono = Monomial::var_pow(var(i), PExponent::q_power(params.q(), -(i as i32)));
            IntPoly::monomial(Integers, mono)
        })
        .collect();
    RawSeries::new(params, coeffs)
}

/// `A ∗ B` in normal form at the key's precision.
pub fn combined_series(key: QKey) -> Result<LazardElement> {
    let params = key.params();
    let a = coordinate_series(params, Variable::X);
    let b = coordinate_series(params, Variable::Y);
    let s = match key.op {
        Op::Add => a.add(&b)?,
        Op::Mul => a.mul(&b)?,
    };
    Ok(normalize(&s))
}

fn compute_level(key: QKey, lower: &[Arc<QEntry>]) -> Result<FpPoly> {
    let params = key.params();
    let n = key.n as usize;
    let q = key.q;
    let mut rem = combined_series(key)?;
    for (i, entry) in lower.iter().enumerate() {
        // [Q_i^{q^{-i}}] π^i only matters modulo π^{n+1}, so the lift is
        // needed to precision n + 1 − i
        let digit = entry.q.frobenius(q, -(i as i32));
        let lifted = teichmuller(&digit, params.with_precision((n + 1 - i) as u32)?);
        let mut coeffs = vec![IntPoly::int_zero(); i];
        coeffs.extend(lifted.to_raw().coeffs().iter().cloned());
        let term = normalize(&RawSeries::new(params, coeffs));
        rem = rem.sub(&term)?;
    }
    if let Some(j) = (0..n).find(|&j| !rem.coeffs()[j].is_zero()) {
        return Err(Error::NotConcentrated { degree: n, found: j });
    }
    Ok(rem.coeffs()[n].frobenius(q, key.n as i32))
}

/// Membership of `Q` in `F_p[ω_1^{q^t},…,ω_n^{q^t}; X_0,…,X_n; Y_0,…,Y_n]`.
pub fn verify_polynomiality(q: &FpPoly, n: u32, params: &Params) -> bool {
    let unit = params.omega_exponent();
    q.terms().iter().all(|(m, _)| {
        m.factors().iter().all(|(v, e)| match v {
            Variable::X(i) | Variable::Y(i) => *i <= n && e.is_integer(),
            Variable::Omega(i) => *i >= 1 && *i <= n && e.is_multiple_of(unit),
            _ => false,
        })
    })
}

/// `Q^{(t)}` with coefficient Frobenius applied equals `Q^{(t+1)}`.
pub fn frobenius_shift_check(op: Op, n: u32, params: &Params) -> Result<bool> {
    let key = QKey::from_params(op, n, params);
    let here = compute_q(key)?;
    let there = compute_q(QKey { t: key.t + 1, ..key })?;
    Ok(here.coefficient_frobenius(key.q, 1) == there)
}

/// `Q_n^+ − X_n − Y_n` involves neither `X_n` nor `Y_n`.
pub fn leading_linearity_check(n: u32, params: &Params) -> Result<bool> {
    let q = compute_q(QKey::from_params(Op::Add, n, params))?;
    let f = *q.ring();
    let lead = &FpPoly::var(f, Variable::X(n)) + &FpPoly::var(f, Variable::Y(n));
    let rest = &q - &lead;
    Ok(!rest.contains_var(&Variable::X(n)) && !rest.contains_var(&Variable::Y(n)))
}

/// `Q(X,Y) = Q(Y,X)`.
pub fn symmetry_check(op: Op, n: u32, params: &Params) -> Result<bool> {
    let q = compute_q(QKey::from_params(op, n, params))?;
    let swapped = q.rename(|v| match v {
        Variable::X(i) => Variable::Y(*i),
        Variable::Y(i) => Variable::X(*i),
        other => other.clone(),
    });
    Ok(swapped == q)
}

/// `Q_n^+(X, 0) = X_n` and `Q_n^×(X, 0) = 0`.
pub fn zero_identity_check(op: Op, n: u32, params: &Params) -> Result<bool> {
    let q = compute_q(QKey::from_params(op, n, params))?;
    let f = *q.ring();
    let at_zero = q.eval(|v| matches!(v, Variable::Y(_)).then(|| FpPoly::zero(f)))?;
    Ok(match op {
        Op::Add => at_zero == FpPoly::var(f, Variable::X(n)),
        Op::Mul => at_zero.is_zero(),
    })
}
