//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use lazard_witt::arith::{combined_series, Op, QKey};
use lazard_witt::lazard::{teichmuller, LazardElement};
use lazard_witt::{FpPoly, Params};

/// Peels `[d_i] π^i` off `a` degree by degree, lifting each digit at the full
/// precision with exponent `q^{N−1}` and returning `d_i^{q^i}`.
pub fn naive_coordinates(a: &LazardElement) -> Vec<FpPoly> {
    let params = *a.params();
    let n = params.precision() as usize;
    let mut rem = a.clone();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        for j in 0..i {
            assert!(rem.coeffs()[j].is_zero(), "digit {j} survived at step {i}");
        }
        let d = rem.coeffs()[i].clone();
        out.push(d.frobenius(params.q(), i as i32));
        let lift = teichmuller(&d, params).shift(i);
        rem = rem.sub(&lift).unwrap();
    }
    out
}

/// `Q_0, …, Q_n` recovered from `A ∗ B` by the naive peeling, without any table.
pub fn oracle_q(op: Op, n: u32, p: u64, q: u64, t: i32) -> Vec<FpPoly> {
    let key = QKey::new(op, n, p, q, t).unwrap();
    naive_coordinates(&combined_series(key).unwrap())
}

pub fn params(p: u64, q: u64, t: i32, n: u32) -> Params {
    Params::infinite(p, q, t, n).unwrap()
}

/// Truncated `Z[π]/(π^N)` with `p = Σ c_i π^i` for integer `c_i`: the image
/// of the universal ring under `ω_i ↦ c_i`, small enough to work with `i64` digits.
pub struct SpecializedRing {
    pub p: i64,
    pub relation: Vec<i64>,
}

impl SpecializedRing {
    fn normalize(&self, mut v: Vec<i64>) -> Vec<i64> {
        let n = v.len();
        for j in 0..n {
            let carry = v[j].div_euclid(self.p);
            v[j] = v[j].rem_euclid(self.p);
            for (i, c) in self.relation.iter().enumerate() {
                if j + i + 1 < n {
                    v[j + i + 1] += carry * c;
                }
            }
        }
        v
    }

    fn mul(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let n = a.len();
        let mut out = vec![0; n];
        for i in 0..n {
            for j in 0..n - i {
                out[i + j] += a[i] * b[j];
            }
        }
        self.normalize(out)
    }

    /// `Q_{N−1}(a, b)` at this specialisation, by peeling multiplicative lifts.
    /// Residues live in `F_p`, where `q`-th roots are trivial.
    pub fn last_coordinate(&self, op: Op, q: u64, a: &[i64], b: &[i64]) -> i64 {
        let n = a.len();
        let expand = |v: &[i64]| {
            let mut acc = vec![0; n];
            for (i, &d) in v.iter().enumerate() {
                let lift = self.shift(&self.teichmuller(d, q, n), i);
                acc = self.normalize(acc.iter().zip(&lift).map(|(u, w)| u + w).collect());
            }
            acc
        };
        let (x, y) = (expand(a), expand(b));
        let s = match op {
            Op::Add => self.normalize(x.iter().zip(&y).map(|(u, w)| u + w).collect()),
            Op::Mul => self.mul(&x, &y),
        };
        let mut rem = s;
        for i in 0..n {
            assert!(rem[..i].iter().all(|&d| d == 0));
            if i + 1 == n {
                return rem[i];
            }
            let lift = self.shift(&self.teichmuller(rem[i], q, n), i);
            rem = self.normalize(rem.iter().zip(&lift).map(|(u, v)| u - v).collect());
        }
        unreachable!()
    }

    fn teichmuller(&self, d: i64, q: u64, n: usize) -> Vec<i64> {
        let mut x = vec![0; n];
        x[0] = d;
        for _ in 1..n {
            let mut y = x.clone();
            for _ in 1..q {
                y = self.mul(&y, &x);
            }
            x = y;
        }
        x
    }

    fn shift(&self, a: &[i64], k: usize) -> Vec<i64> {
        let mut out = vec![0; a.len()];
        out[k..].copy_from_slice(&a[..a.len() - k]);
        out
    }
}
