use crossdef::deform::{center_relation, central_w, centrality_check, compare_w_square, w_square, StarContext};
use crossdef::presets::{klein_dt, klein_trivial};
use crossdef::{CrossedElement, CrossedProduct, GaussScalar, Monomial, Polynomial, TElement};
use proptest::prelude::*;

fn polys(ctx: &CrossedProduct, s: [&str; 3]) -> [Polynomial; 3] {
    s.map(|p| ctx.parse_poly(p).unwrap())
}

fn constant(ctx: &CrossedProduct, s: &str) -> TElement {
    TElement::constant(ctx.parse(s).unwrap())
}

#[test]
fn squares_stay_central() {
    let ctx = klein_dt();
    let star = StarContext::full(&ctx, polys(&ctx, ["1", "x^2", "z^2"])).unwrap();
    for s in ["x^2", "y^2", "z^2"] {
        assert!(centrality_check(&star, &constant(&ctx, s), 5).passed(), "{s}");
    }
    let r = centrality_check(&star, &constant(&ctx, "x*y*z"), 5);
    assert!(r.witness.is_some());
}

#[test]
fn w_square_shape() {
    let ctx = klein_dt();
    for q in [["1", "1", "1"], ["y^2", "x^4", "3"], ["y^2 + 1", "x^2", "z^2"]] {
        let star = StarContext::full(&ctx, polys(&ctx, q)).unwrap();
        let sq = w_square(&star).unwrap();
        assert!(sq.coeff(1).is_zero(), "{q:?}");
        assert_eq!(sq.t_degree(), Some(3), "{q:?}");
        assert!(compare_w_square(&star).unwrap().matches, "{q:?}");
    }
}

#[test]
fn w_square_scales() {
    let ctx = klein_dt();
    let at = |s: i64| {
        let q = polys(&ctx, ["y^2", "x^2", "z^4"]).map(|p| p.scale(&GaussScalar::from_int(s)));
        w_square(&StarContext::full(&ctx, q).unwrap()).unwrap()
    };
    let (one, two) = (at(1), at(2));
    assert_eq!(two.coeff(2), one.coeff(2).scale(&GaussScalar::from_int(4)));
    assert_eq!(two.coeff(3), one.coeff(3).scale(&GaussScalar::from_int(8)));
}

#[test]
fn relation_with_odd_power() {
    let r = center_relation(1, 0, 0, &GaussScalar::from_int(1)).unwrap();
    let origin = center_relation(0, 0, 0, &GaussScalar::from_int(1)).unwrap();
    assert!(r.realized_relation.contains("t^2*X^3"), "{}", r.realized_relation);
    assert_eq!(r.t2_coefficient, origin.t2_coefficient);
    assert!(r.notes.iter().all(|n| !n.contains("shape")), "{:?}", r.notes);
    let half = r.candidates.iter().find(|c| c.scaling == GaussScalar::from_ratio(1, 2)).unwrap();
    assert_eq!(half.t2_coefficient, GaussScalar::from_ratio(1, 16));
    assert_eq!(half.t3_coefficient, GaussScalar::gaussian(0, -1) * GaussScalar::from_ratio(1, 32));
}

#[test]
fn w_needs_discrete_torsion() {
    let ctx = klein_trivial();
    let star = StarContext::new(&ctx, polys(&ctx, ["y", "0", "0"]), &[0]).unwrap();
    assert!(central_w(&star).is_err());
}

fn element() -> impl Strategy<Value = CrossedElement> {
    prop::collection::vec((prop::array::uniform3(0u32..3), 0u16..4, -2i64..=2), 0..4).prop_map(|terms| {
        let mut u = CrossedElement::zero();
        for (e, g, c) in terms {
            u = u.add(&CrossedElement::term(Monomial::new(e), crossdef::GroupElement(g), GaussScalar::from_int(c)));
        }
        u
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn t_zero_is_undeformed(u in element(), v in element()) {
        let ctx = klein_dt();
        let star = StarContext::full(&ctx, polys(&ctx, ["1", "x^2", "1"])).unwrap();
        prop_assert_eq!(star.mul(&u, &v).coeff(0), ctx.mul(&u, &v));
    }

    #[test]
    fn unit_is_neutral(u in element()) {
        let ctx = klein_dt();
        let star = StarContext::full(&ctx, polys(&ctx, ["1", "1", "y^0"])).unwrap();
        let one = TElement::constant(CrossedElement::one());
        let t = TElement::constant(u);
        prop_assert_eq!(star.star_mul(&t, &one), t.clone());
        prop_assert_eq!(star.star_mul(&one, &t), t);
    }

    #[test]
    fn star_associative(u in element(), v in element(), w in element()) {
        let ctx = klein_dt();
        let star = StarContext::full(&ctx, polys(&ctx, ["y^2", "1", "z^2"])).unwrap();
        let (u, v, w) = (TElement::constant(u), TElement::constant(v), TElement::constant(w));
        prop_assert_eq!(
            star.star_mul(&star.star_mul(&u, &v), &w),
            star.star_mul(&u, &star.star_mul(&v, &w))
        );
    }
}
