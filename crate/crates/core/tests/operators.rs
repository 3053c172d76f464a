use crossdef::chainmap::{basis_tuples, mu1_closed_form, Mu1Params};
use crossdef::hopf::{
    build_action, build_d_action, f1_wrong, h1_coproduct, representation_check, udf_check, DVariant, Generator, HElement,
    OperatorFamily, BETA, D, DP, H1_DIM,
};
use crossdef::presets::{klein_dt, klein_trivial};
use crossdef::{CrossedElement, CrossedProduct, Error, GaussScalar, Polynomial};
use proptest::prelude::*;

fn polys(ctx: &CrossedProduct, s: [&str; 3]) -> [Polynomial; 3] {
    s.map(|p| ctx.parse_poly(p).unwrap())
}

fn d_sum<F: OperatorFamily>(fam: &F, u: &CrossedElement, v: &CrossedElement) -> CrossedElement {
    let ctx = fam.ctx();
    (0..3).fold(CrossedElement::zero(), |acc, i| {
        acc.add(&ctx.mul(&fam.apply(Generator::D(i), u), &fam.apply(Generator::DPrime(i), v)))
    })
}

#[test]
fn d_family_reproduces_mu1() {
    for ctx in [klein_dt(), klein_trivial()] {
        let p = polys(&ctx, ["x*z", "y", "x*y"]);
        let fam = build_d_action(&ctx, p.clone(), DVariant::Corrected);
        let params = Mu1Params::p_only(p);
        for pair in basis_tuples(&ctx, 2, 4) {
            let (u, v) = (CrossedElement::basis(pair[0].mono, pair[0].group), CrossedElement::basis(pair[1].mono, pair[1].group));
            assert_eq!(d_sum(&fam, &u, &v), mu1_closed_form(&ctx, &pair[0], &pair[1], &params).unwrap());
        }
    }
}

#[test]
fn d_family_as_printed_differs() {
    let ctx = klein_dt();
    let p = polys(&ctx, ["1", "0", "0"]);
    let fam = build_d_action(&ctx, p.clone(), DVariant::AsPrinted);
    let params = Mu1Params::p_only(p);
    let mismatch = basis_tuples(&ctx, 2, 3).into_iter().any(|pair| {
        let (u, v) = (CrossedElement::basis(pair[0].mono, pair[0].group), CrossedElement::basis(pair[1].mono, pair[1].group));
        d_sum(&fam, &u, &v) != mu1_closed_form(&ctx, &pair[0], &pair[1], &params).unwrap()
    });
    assert!(mismatch);
}

#[test]
fn representation_to_degree_six() {
    let ctx = klein_dt();
    let fam = build_action(&ctx, polys(&ctx, ["y^2", "1", "z^2"])).unwrap();
    for i in 0..3 {
        assert_eq!(representation_check(&fam, i, 6), None, "index {i}");
    }
}

#[test]
fn wrong_formula_fails_pentagon_only() {
    let r = udf_check(&f1_wrong(), 1);
    assert!(r.counit_left && r.counit_right);
    assert!(!r.pentagon);
    assert_eq!(r.pentagon_first_difference, Some(1));
}

#[test]
fn q_spaces_enforced() {
    let dt = klein_dt();
    let tr = klein_trivial();
    assert!(build_action(&dt, polys(&dt, ["y^4 + 2", "x^2", "1"])).is_ok());
    assert!(matches!(build_action(&dt, polys(&dt, ["y", "0", "0"])), Err(Error::ParameterOutOfSpace { .. })));
    assert!(matches!(build_action(&dt, polys(&dt, ["0", "y^2", "0"])), Err(Error::ParameterOutOfSpace { .. })));
    assert!(build_action(&tr, polys(&tr, ["y^3", "x", "z"])).is_ok());
    assert!(matches!(build_action(&tr, polys(&tr, ["1", "0", "0"])), Err(Error::ParameterOutOfSpace { .. })));
}

#[test]
fn coproduct_of_ddp() {
    // Δ(DD') = DD'⊗β - Dβ⊗D'β + D'⊗D + β⊗DD'
    let mut expected = HElement::zero(2);
    for (k, c) in [([D | DP, BETA], 1), ([D | BETA, DP | BETA], -1), ([DP, D], 1), ([BETA, D | DP], 1)] {
        expected.add_term(k.to_vec(), &GaussScalar::from_int(c));
    }
    assert_eq!(h1_coproduct(D | DP), expected);
    assert_eq!(h1_coproduct(D).mul(&h1_coproduct(DP)), expected);
}

fn h1_element() -> impl Strategy<Value = HElement> {
    prop::collection::vec((0..H1_DIM, -3i64..=3), 0..5).prop_map(|terms| {
        let mut e = HElement::zero(1);
        for (x, c) in terms {
            e.add_term(vec![x], &GaussScalar::from_int(c));
        }
        e
    })
}

fn coproduct(e: &HElement) -> HElement {
    let mut out = HElement::zero(2);
    for (k, c) in e.terms() {
        out.add_scaled(&h1_coproduct(k[0]), c);
    }
    out
}

proptest! {
    #[test]
    fn h1_associative(a in h1_element(), b in h1_element(), c in h1_element()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn coproduct_multiplicative(a in h1_element(), b in h1_element()) {
        prop_assert_eq!(coproduct(&a.mul(&b)), coproduct(&a).mul(&coproduct(&b)));
    }

    #[test]
    fn beta_is_an_involution(i in 0usize..3, e in prop::array::uniform3(0u32..4), g in 0u16..4) {
        let ctx = klein_dt();
        let fam = build_action(&ctx, polys(&ctx, ["1", "1", "1"])).unwrap();
        let u = CrossedElement::basis(crossdef::Monomial::new(e), crossdef::GroupElement(g));
        let b = Generator::Beta(i);
        prop_assert_eq!(fam.apply(b, &fam.apply(b, &u)), u);
    }
}
