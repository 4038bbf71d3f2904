use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A polynomial indeterminate.
///
/// The derived order is the variable alphabet used by the term order:
/// `ω₁ < ω₂ < … < X₀ < X₁ < … < Y₀ < … < π < generators < jets`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variable {
    /// Universal coefficient `ω_i`, `i ≥ 1`.
    Omega(u32),
    X(u32),
    Y(u32),
    Pi,
    /// A named generator such as `t1` or `x`.
    Gen(Arc<str>),
    /// The jet variable `d^{[n]}name`, `n ≥ 1`. Order-zero jets are the generator itself.
    Jet(Arc<str>, u32),
}

impl Variable {
    pub fn gen(name: &str) -> Self {
        Variable::Gen(Arc::from(name))
    }

    /// `d^{[n]}name`; `d^{[0]}name` is identified with the generator `name`.
    pub fn jet(name: &str, n: u32) -> Self {
        if n == 0 {
            Variable::gen(name)
        } else {
            Variable::Jet(Arc::from(name), n)
        }
    }

    pub fn is_omega(&self) -> bool {
        matches!(self, Variable::Omega(_))
    }

    /// Name used by the text renderer and the JSON schema.
    pub fn name(&self) -> String {
        match self {
            Variable::Omega(i) => format!("w{i}"),
            Variable::X(i) => format!("X{i}"),
            Variable::Y(i) => format!("Y{i}"),
            Variable::Pi => "pi".to_string(),
            Variable::Gen(s) => s.to_string(),
            Variable::Jet(s, n) => format!("d{n}:{s}"),
        }
    }

    pub fn latex(&self) -> String {
        match self {
            Variable::Omega(i) => format!("\\omega_{{{i}}}"),
            Variable::X(i) => format!("X_{{{i}}}"),
            Variable::Y(i) => format!("Y_{{{i}}}"),
            Variable::Pi => "\\pi".to_string(),
            Variable::Gen(s) => latex_name(s),
            Variable::Jet(s, n) => format!("d^{{[{n}]}}{}", latex_name(s)),
        }
    }

    /// Inverse of [`Variable::name`]. Names of the form `w<i>`, `X<i>`, `Y<i>`
    /// and `pi` are reserved and never parse as generators.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid variable name `{s}`"));
        if s.is_empty() {
            return Err(bad());
        }
        if s == "pi" || s == "π" {
            return Ok(Variable::Pi);
        }
        if let Some(rest) = s.strip_prefix('d') {
            if let Some((n, name)) = rest.split_once(':') {
                let n: u32 = n.parse().map_err(|_| bad())?;
                if name.is_empty() {
                    return Err(bad());
                }
                return Ok(Variable::jet(name, n));
            }
        }
        let indexed = |prefix: char| -> Option<u32> {
            let rest = s.strip_prefix(prefix)?;
            if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            rest.parse().ok()
        };
        if let Some(i) = indexed('w') {
            if i == 0 {
                return Err(bad());
            }
            return Ok(Variable::Omega(i));
        }
        if let Some(i) = indexed('X') {
            return Ok(Variable::X(i));
        }
        if let Some(i) = indexed('Y') {
            return Ok(Variable::Y(i));
        }
        if s.chars().all(|c| c.is_alphanumeric() || c == '_') {
            return Ok(Variable::gen(s));
        }
        Err(bad())
    }
}

fn latex_name(s: &str) -> String {
    // t12 -> t_{12}
    let split = s.find(|c: char| c.is_ascii_digit());
    match split {
        Some(i) if i > 0 && s[i..].bytes().all(|b| b.is_ascii_digit()) => {
            format!("{}_{{{}}}", &s[..i], &s[i..])
        }
        _ => s.to_string(),
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variable::Pi => f.write_str("π"),
            v => f.write_str(&v.name()),
        }
    }
}

impl fmt::Debug for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
