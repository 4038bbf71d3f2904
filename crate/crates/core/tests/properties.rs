use lazard_witt::lazard::{normalize, teichmuller, LazardElement, RawSeries};
use lazard_witt::poly::cq_polynomial;
use lazard_witt::{FpPoly, IntPoly, Integers, Monomial, PExponent, Params, Poly, PrimeField, Variable};
use num_bigint::BigInt;
use proptest::prelude::*;

const VARS: [fn() -> Variable; 4] = [
    || Variable::X(0),
    || Variable::X(1),
    || Variable::Y(0),
    || Variable::gen("a"),
];

/// (variable index, numerator, p-adic denominator exponent)
type RawMono = Vec<(usize, u64, u32)>;

fn raw_terms(max_terms: usize) -> impl Strategy<Value = Vec<(RawMono, i64)>> {
    let mono = prop::collection::vec((0..VARS.len(), 0u64..5, 0u32..2), 0..3);
    prop::collection::vec((mono, -9i64..10), 0..max_terms)
}

fn monomial(raw: &RawMono, p: u64) -> Monomial {
    Monomial::from_factors(
        raw.iter()
            .map(|&(v, num, den)| (VARS[v](), PExponent::with_p_denominator(num, p, den))),
    )
}

fn int_poly(raw: &[(RawMono, i64)], p: u64) -> IntPoly {
    IntPoly::from_terms(Integers, raw.iter().map(|(m, c)| (monomial(m, p), BigInt::from(*c))))
}

fn fp_poly(raw: &[(RawMono, i64)], p: u64) -> FpPoly {
    int_poly(raw, p).reduce_mod_p(p)
}

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5])
}

fn ring_laws<R: lazard_witt::CoeffRing>(a: &Poly<R>, b: &Poly<R>, c: &Poly<R>) {
    let zero = Poly::zero(a.ring().clone());
    let one = Poly::one(a.ring().clone());
    assert_eq!(&(a + b) + c, a + &(b + c));
    assert_eq!(a + b, b + a);
    assert_eq!(a + &zero, *a);
    assert!((a + &(-a)).is_zero());
    assert_eq!(&(a * b) * c, a * &(b * c));
    assert_eq!(a * b, b * a);
    assert_eq!(a * &one, *a);
    assert_eq!(a * &(b + c), &(a * b) + &(a * c));
    assert_eq!(a - b, a + &(-b));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn integer_polynomials_form_a_ring(p in prime(), a in raw_terms(4), b in raw_terms(4), c in raw_terms(4)) {
        ring_laws(&int_poly(&a, p), &int_poly(&b, p), &int_poly(&c, p));
    }

    #[test]
    fn fp_polynomials_form_a_ring(p in prime(), a in raw_terms(4), b in raw_terms(4), c in raw_terms(4)) {
        ring_laws(&fp_poly(&a, p), &fp_poly(&b, p), &fp_poly(&c, p));
    }

    #[test]
    fn reduction_mod_p_is_a_ring_map(p in prime(), a in raw_terms(4), b in raw_terms(4)) {
        let (a, b) = (int_poly(&a, p), int_poly(&b, p));
        prop_assert_eq!((&a + &b).reduce_mod_p(p), &a.reduce_mod_p(p) + &b.reduce_mod_p(p));
        prop_assert_eq!((&a * &b).reduce_mod_p(p), &a.reduce_mod_p(p) * &b.reduce_mod_p(p));
        // the canonical lift has digits in [0, p) and reduces back
        let f = a.reduce_mod_p(p);
        prop_assert_eq!(f.lift().reduce_mod_p(p), f.clone());
        let (d, carry) = a.split_mod_p(p);
        let rebuilt = &d.lift() + &carry.scale(&BigInt::from(p));
        prop_assert_eq!(rebuilt, a);
    }

    #[test]
    fn frobenius_is_a_ring_automorphism(p in prime(), e in 1u32..3, s in -2i32..=2, a in raw_terms(4), b in raw_terms(4)) {
        let q = p.pow(e);
        let (a, b) = (fp_poly(&a, p), fp_poly(&b, p));
        prop_assert_eq!((&a + &b).frobenius(q, s), &a.frobenius(q, s) + &b.frobenius(q, s));
        prop_assert_eq!((&a * &b).frobenius(q, s), &a.frobenius(q, s) * &b.frobenius(q, s));
        prop_assert_eq!(a.frobenius(q, s).frobenius(q, -s), a.clone());
        prop_assert_eq!(a.frobenius(q, 1), a.pow(q));
    }

    #[test]
    fn serialization_is_canonical(p in prime(), a in raw_terms(5)) {
        let f = fp_poly(&a, p);
        let mut reversed = f.terms().to_vec();
        reversed.reverse();
        let g = FpPoly::from_terms(PrimeField::new(p), reversed);
        let text = serde_json::to_string(&f.to_json(p).unwrap()).unwrap();
        prop_assert_eq!(&text, &serde_json::to_string(&g.to_json(p).unwrap()).unwrap());
        prop_assert_eq!(f.to_text(), g.to_text());
        let back = FpPoly::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(back, f);

        let z = int_poly(&a, p);
        let text = serde_json::to_string(&z.to_json(p).unwrap()).unwrap();
        prop_assert_eq!(IntPoly::from_json(&serde_json::from_str(&text).unwrap()).unwrap(), z);
    }
}

#[test]
fn cq_satisfies_its_defining_identity() {
    for (p, q) in [(2u64, 2u64), (3, 3), (2, 4), (5, 5), (3, 9)] {
        let x = IntPoly::int_var(Variable::X(0));
        let y = IntPoly::int_var(Variable::Y(0));
        let cq = cq_polynomial(p, q, Variable::X(0), Variable::Y(0));
        let lhs = cq.scale(&BigInt::from(p));
        let rhs = &(&x.pow(q) + &y.pow(q)) - &(&x + &y).pow(q);
        assert_eq!(lhs, rhs, "p = {p}, q = {q}");
    }
}

fn lazard_params() -> impl Strategy<Value = Params> {
    (
        prop::sample::select(vec![(2u64, 2u64), (3, 3), (2, 4)]),
        0i32..2,
        2u32..5,
    )
        .prop_map(|((p, q), t, n)| Params::infinite(p, q, t, n).unwrap())
}

/// Raw series in the residue variables and `ω_1, ω_2`.
fn raw_series(params: Params, raw: &[Vec<(RawMono, i64)>]) -> RawSeries {
    let p = params.p();
    let coeffs = raw
        .iter()
        .map(|c| {
            let f = int_poly(c, p);
            let w = IntPoly::int_var(Variable::Omega(1 + (c.len() % 2) as u32));
            if c.len() > 2 {
                &f * &w
            } else {
                f
            }
        })
        .collect();
    RawSeries::new(params, coeffs)
}

fn series_data() -> impl Strategy<Value = Vec<Vec<(RawMono, i64)>>> {
    prop::collection::vec(raw_terms(3), 1..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn normal_form_respects_ring_operations(params in lazard_params(), a in series_data(), b in series_data()) {
        let (ra, rb) = (raw_series(params, &a), raw_series(params, &b));
        let (na, nb) = (normalize(&ra), normalize(&rb));
        prop_assert_eq!(normalize(&ra.add(&rb).unwrap()), na.add(&nb).unwrap());
        prop_assert_eq!(normalize(&ra.mul(&rb).unwrap()), na.mul(&nb).unwrap());
        prop_assert_eq!(normalize(&na.to_raw()), na.clone());
        prop_assert!(na.sub(&na).unwrap().is_zero());
        for d in na.coeffs() {
            prop_assert!(d.terms().iter().all(|(_, c)| *c < params.p()));
        }
    }

    #[test]
    fn defining_relation_is_annihilated(params in lazard_params(), a in series_data()) {
        let rel = RawSeries::defining_relation(params);
        prop_assert!(normalize(&rel).is_zero());
        let ra = raw_series(params, &a);
        prop_assert_eq!(normalize(&ra.add(&rel.mul(&ra).unwrap()).unwrap()), normalize(&ra));
    }

    #[test]
    fn truncation_commutes_with_normalization(params in lazard_params(), a in series_data(), k in 1u32..5) {
        let k = k.min(params.precision());
        let ra = raw_series(params, &a);
        let low = params.with_precision(k).unwrap();
        let direct = normalize(&RawSeries::new(low, ra.coeffs().to_vec()));
        prop_assert_eq!(normalize(&ra).truncate(k).unwrap(), direct);
    }

    #[test]
    fn teichmuller_is_multiplicative(params in lazard_params(), a in prop::collection::vec((0..VARS.len(), 0u64..4, 0u32..2), 0..3), b in prop::collection::vec((0..VARS.len(), 0u64..4, 0u32..2), 0..3)) {
        let f = PrimeField::new(params.p());
        let r = FpPoly::monomial(f, monomial(&a, params.p()));
        let s = FpPoly::monomial(f, monomial(&b, params.p()));
        let tr = teichmuller(&r, params);
        prop_assert_eq!(tr.mul(&teichmuller(&s, params)).unwrap(), teichmuller(&(&r * &s), params));
        prop_assert_eq!(tr.coeffs()[0].clone(), r.clone());
        prop_assert_eq!(teichmuller(&r, params.with_precision(1).unwrap()), tr.truncate(1).unwrap());
        prop_assert_eq!(tr.truncate(2).unwrap(), teichmuller(&r, params.with_precision(2).unwrap()));
    }
}

#[test]
fn teichmuller_of_one_and_zero() {
    for n in 1..=4 {
        let params = Params::infinite(3, 3, 0, n).unwrap();
        let f = PrimeField::new(3);
        assert_eq!(teichmuller(&FpPoly::one(f), params), LazardElement::one(params));
        assert!(teichmuller(&FpPoly::zero(f), params).is_zero());
    }
}
