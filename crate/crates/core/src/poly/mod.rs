//! Sparse multivariate polynomials over `F_p` and `Z` with exponents in `Z[1/p]`.

mod coeff;
mod exponent;
mod monomial;
mod polynomial;
mod render;
mod variable;

pub use coeff::{is_prime, p_valuation, CoeffRing, Domain, Integers, PrimeField};
pub use exponent::PExponent;
pub use monomial::Monomial;
pub use polynomial::{FpPoly, IntPoly, Poly};
pub use render::{FactorJson, PolyJson, TermJson};
pub use variable::Variable;

use num_bigint::BigInt;

/// The integer polynomial `C_q(X, Y)` defined by `p·C_q = X^q + Y^q − (X+Y)^q`.
///
/// Built directly from binomial coefficients: the coefficient of
/// `X^k Y^{q−k}` is `−binom(q, k)/p` for `0 < k < q`.
pub fn cq_polynomial(p: u64, q: u64, x: Variable, y: Variable) -> IntPoly {
    let pb = BigInt::from(p);
    let mut binom = BigInt::from(1u32);
    let mut terms = Vec::new();
    for k in 1..q {
        // binom(q, k) from binom(q, k-1)
        binom = binom * BigInt::from(q - k + 1) / BigInt::from(k);
        let c = -(&binom / &pb);
        debug_assert!((&binom % &pb) == BigInt::from(0));
        let m = Monomial::var(x.clone())
            .pow(k)
            .mul(&Monomial::var(y.clone()).pow(q - k));
        terms.push((m, c));
    }
    IntPoly::from_terms(Integers, terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c2_and_c3() {
        let c2 = cq_polynomial(2, 2, Variable::X(0), Variable::Y(0));
        assert_eq!(c2.to_string(), "-X0*Y0");
        let c3 = cq_polynomial(3, 3, Variable::X(0), Variable::Y(0));
        assert_eq!(c3.to_string(), "-X0^2*Y0 - X0*Y0^2");
    }

    #[test]
    fn defining_identity() {
        for (p, q) in [(2, 2), (3, 3), (2, 4), (5, 5), (3, 9)] {
            let x = IntPoly::int_var(Variable::X(0));
            let y = IntPoly::int_var(Variable::Y(0));
            let c = cq_polynomial(p, q, Variable::X(0), Variable::Y(0));
            let lhs = &c.scale(&BigInt::from(p)) + &(&x + &y).pow(q);
            let rhs = &x.pow(q) + &y.pow(q);
            assert_eq!(lhs, rhs, "p={p} q={q}");
        }
    }
}
