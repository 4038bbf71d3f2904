use std::sync::Arc;

use lazard_witt::jets::{
    eps_prime, evaluate_in_witt, lemma63_check, lemma63_sides, Expr, JetRing, LazardianJetRing, TruncatedSeries,
};
use lazard_witt::witt::{ResidueRing, WittVector};
use lazard_witt::{Error, IntPoly, Integers, PrimeField, Variable};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Small expression trees in `x`, `y` and integers, optionally with `π`.
fn expr(with_pi: bool) -> impl Strategy<Value = Expr> {
    let mut leaves = vec![
        Expr::gen("x"),
        Expr::gen("y"),
        Expr::Int(1),
        Expr::Int(2),
        Expr::Int(-1),
    ];
    if with_pi {
        leaves.push(Expr::Pi);
    }
    let leaf = prop::sample::select(leaves);
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::add(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::mul(a, b)),
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            (inner, 0u32..3).prop_map(|(a, k)| Expr::pow(a, k)),
        ]
    })
}

fn gens() -> Vec<Arc<str>> {
    vec![Arc::from("x"), Arc::from("y")]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// Leibniz recursion on the tree and substitution into the expanded
    /// polynomial are independent routes to the same jets.
    #[test]
    fn hs_jets_do_not_depend_on_the_presentation(e in expr(true), m in 0u32..4) {
        let jr = JetRing::new(Integers, gens(), m);
        let recursive = jr.hs_jets_expr(&e).unwrap();
        let substituted = jr.hs_jets(&e.to_poly(&Integers).unwrap()).unwrap();
        prop_assert_eq!(&recursive[..], substituted.coeffs());
    }

    #[test]
    fn phi_is_a_ring_map(a in prop::collection::vec(expr(false), 1..4), b in prop::collection::vec(expr(false), 1..4), m in 0u32..4) {
        let series = |v: &[Expr]| {
            let coeffs = v.iter().map(|e| e.to_poly(&Integers).unwrap()).collect();
            TruncatedSeries::new(Integers, m, coeffs)
        };
        let (a, b) = (series(&a), series(&b));
        let jr = JetRing::new(Integers, gens(), m);
        let (pa, pb) = (jr.phi(&a).unwrap(), jr.phi(&b).unwrap());
        prop_assert_eq!(jr.phi(&a.add(&b).unwrap()).unwrap(), pa.add(&pb).unwrap());
        prop_assert_eq!(jr.phi(&a.mul(&b).unwrap()).unwrap(), pa.mul(&pb).unwrap());
        // φ̄ retracts the structure map on the jets of A
        for n in 0..=m {
            let d = jr.hs_derive_on_a(&a, n).unwrap();
            prop_assert_eq!(jr.retraction_phibar(&d).unwrap(), jr.dn_on_a(&a, n).unwrap());
        }
    }

    #[test]
    fn lazardian_jets_do_not_depend_on_the_presentation(e in expr(false), (p, q, m) in prop::sample::select(vec![(2u64, 2u64, 2u32), (3, 3, 1), (2, 4, 1)]), t in 0i32..2) {
        let r = LazardianJetRing::new(p, q, t, m, gens()).unwrap();
        let expanded = Expr::from_poly(&e.to_poly(&Integers).unwrap()).unwrap();
        prop_assert_eq!(r.jets(&e).unwrap(), r.jets(&expanded).unwrap());
    }

    /// Specializing the universal `η′(e)` at a point agrees with evaluating
    /// `e` there, and `ε′` reads off the jets.
    #[test]
    fn eta_prime_specializes_to_evaluation(e in expr(true), seed in any::<u64>(), t in 0i32..2) {
        let (p, q, m) = (2u64, 2u64, 2u32);
        let len = m as usize + 1;
        let r = LazardianJetRing::new(p, q, t, m, gens()).unwrap();
        let eta = r.eta_prime(&e).unwrap();
        let jets = r.jets(&e).unwrap();
        for (n, jet) in jets.iter().enumerate() {
            prop_assert_eq!(&eps_prime(&eta, n).unwrap(), jet);
        }

        let k = Arc::new(ResidueRing::perfect(p, q, vec![Variable::gen("s")]).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut point = |_: ()| {
            let coords = (0..len).map(|_| k.random_element(&mut rng, 2, 3)).collect();
            WittVector::new(k.clone(), t, coords).unwrap()
        };
        let (wx, wy) = (point(()), point(()));
        let assign = |g: &str| match g {
            "x" => Some(wx.clone()),
            "y" => Some(wy.clone()),
            _ => None,
        };
        let specialized = r.specialize(&eta, k.clone(), &assign).unwrap();
        let direct = evaluate_in_witt(&e, k.clone(), t, len, &|g| {
            assign(g).ok_or_else(|| Error::Unsupported(g.to_string()))
        })
        .unwrap();
        prop_assert_eq!(specialized, direct);
    }
}

#[test]
fn structure_map_on_a_sample_element() {
    let jr = JetRing::new(Integers, vec![Arc::from("t1"), Arc::from("t2")], 2);
    let a = TruncatedSeries::from_poly(&Expr::parse("t1 + t2*pi").unwrap().to_poly(&Integers).unwrap(), 2).unwrap();
    let image = jr.urp_structure_map(&a).unwrap();
    assert_eq!(image.to_string(), "t1 + (t2 + d1:t1)·π + (d2:t1 + d1:t2)·π²");
    // π itself is fixed
    let pi = TruncatedSeries::pi_power(Integers, 2, 1);
    assert_eq!(jr.urp_structure_map(&pi).unwrap(), pi);
}

#[test]
fn hs_jets_over_fp_reduce_the_integer_jets() {
    let e = Expr::parse("(x + y)^3 - 2*x*pi").unwrap();
    let over_z = JetRing::new(Integers, gens(), 3).hs_jets_expr(&e).unwrap();
    let over_f3 = JetRing::new(PrimeField::new(3), gens(), 3).hs_jets_expr(&e).unwrap();
    for (a, b) in over_z.iter().zip(&over_f3) {
        assert_eq!(&a.reduce_mod_p(3), b);
    }
}

#[test]
fn out_of_range_requests_are_rejected() {
    let jr = JetRing::new(Integers, gens(), 2);
    assert!(jr.hs_derive(&IntPoly::int_var(Variable::gen("x")), 3).is_err());
    assert!(jr.hs_jets_expr(&Expr::Omega(1)).is_err());
    let r = LazardianJetRing::new(2, 2, 0, 1, gens()).unwrap();
    assert!(r.derive(&Expr::gen("x"), 2).is_err());
    assert!(r.jets(&Expr::gen("z")).is_err());
    assert!(r.jets(&Expr::Omega(2)).is_err());
    assert!(r.jets(&Expr::Omega(1)).is_ok());
}

#[test]
fn universal_identity_holds_in_low_orders() {
    for n in 0..=4 {
        assert!(lemma63_check(n), "n = {n}");
    }
    let (lhs, rhs, l, r) = lemma63_sides(1);
    assert_eq!((l, r), (4, 4));
    assert_eq!(lhs, rhs);
}
