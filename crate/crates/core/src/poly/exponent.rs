use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};

use num_integer::Integer;

/// A nonnegative exponent in `Z[1/p]`, stored as a reduced fraction.
///
/// The denominator is always a power of the ambient prime. Because the
/// fraction is kept in lowest terms the representation is canonical without
/// knowing `p`, so equality and hashing are structural.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PExponent {
    num: u64,
    den: u64,
}

impl PExponent {
    pub const ZERO: PExponent = PExponent { num: 0, den: 1 };
    pub const ONE: PExponent = PExponent { num: 1, den: 1 };

    pub fn integer(n: u64) -> Self {
        PExponent { num: n, den: 1 }
    }

    /// `num / den`, reduced. Panics if `den == 0`.
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den != 0, "zero denominator in exponent");
        if num == 0 {
            return Self::ZERO;
        }
        let g = num.gcd(&den);
        PExponent {
            num: num / g,
            den: den / g,
        }
    }

    /// `num / p^denom_exp`.
    pub fn with_p_denominator(num: u64, p: u64, denom_exp: u32) -> Self {
        Self::new(num, p.checked_pow(denom_exp).expect("exponent denominator overflow"))
    }

    /// `q^s` for a possibly negative `s`.
    pub fn q_power(q: u64, s: i32) -> Self {
        let k = s.unsigned_abs();
        let qk = q.checked_pow(k).expect("q-power overflow");
        if s >= 0 {
            Self::integer(qk)
        } else {
            Self::new(1, qk)
        }
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }

    /// The `k` with `denominator = p^k`, or `None` if the denominator is not a power of `p`.
    pub fn denom_exp(&self, p: u64) -> Option<u32> {
        let mut d = self.den;
        let mut k = 0;
        while d > 1 {
            if !d.is_multiple_of(p) {
                return None;
            }
            d /= p;
            k += 1;
        }
        Some(k)
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn to_integer(&self) -> Option<u64> {
        self.is_integer().then_some(self.num)
    }

    /// Whether `self` is a nonnegative integer multiple of `unit`.
    pub fn is_multiple_of(&self, unit: PExponent) -> bool {
        if unit.is_zero() {
            return self.is_zero();
        }
        // self / unit = (num * unit.den) / (den * unit.num)
        let n = self.num as u128 * unit.den as u128;
        let d = self.den as u128 * unit.num as u128;
        n.is_multiple_of(d)
    }

    pub fn checked_sub(&self, other: PExponent) -> Option<PExponent> {
        match self.cmp(&other) {
            Ordering::Less => None,
            Ordering::Equal => Some(Self::ZERO),
            Ordering::Greater => {
                let l = self.den.lcm(&other.den);
                let a = self.num * (l / self.den);
                let b = other.num * (l / other.den);
                Some(Self::new(a - b, l))
            }
        }
    }
}

impl Add for PExponent {
    type Output = PExponent;

    fn add(self, rhs: PExponent) -> PExponent {
        if self.den == rhs.den {
            let num = self.num.checked_add(rhs.num).expect("exponent overflow");
            if self.den == 1 {
                return PExponent { num, den: 1 };
            }
            return Self::new(num, self.den);
        }
        let l = self.den.lcm(&rhs.den);
        let a = self.num.checked_mul(l / self.den).expect("exponent overflow");
        let b = rhs.num.checked_mul(l / rhs.den).expect("exponent overflow");
        Self::new(a.checked_add(b).expect("exponent overflow"), l)
    }
}

impl Mul for PExponent {
    type Output = PExponent;

    fn mul(self, rhs: PExponent) -> PExponent {
        if self.is_zero() || rhs.is_zero() {
            return Self::ZERO;
        }
        // cross-reduce before multiplying to keep the numbers small
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let num = (self.num / g1).checked_mul(rhs.num / g2).expect("exponent overflow");
        let den = (self.den / g2).checked_mul(rhs.den / g1).expect("exponent overflow");
        PExponent { num, den }
    }
}

impl Ord for PExponent {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.den == other.den {
            return self.num.cmp(&other.num);
        }
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl PartialOrd for PExponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for PExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<u64> for PExponent {
    fn from(n: u64) -> Self {
        Self::integer(n)
    }
}
