//! Acceptance suite. Each test prints one `criterion N: PASS|FAIL` line.
//!
//! Run with `cargo test -p crossdef --test acceptance -- --nocapture` to see them.

use std::time::Instant;

use crossdef::chainmap::{basis_tuples, chain_map_check, cocycle_check, lift_basis, mu1_closed_form, Mu1Params};
use crossdef::cohomology::hh_graded;
use crossdef::deform::{associativity_check, center_relation, central_w, centrality_check, first_order_check, w_square, StarContext};
use crossdef::hopf::{
    bialgebra_check, build_action, build_d_action, f1, f_product, module_algebra_check, noncocommutativity_witness,
    operator_identity_check, udf_check, DVariant,
};
use crossdef::presets::{klein_dt, klein_trivial};
use crossdef::{CrossedProduct, GaussScalar, Monomial, Polynomial};

fn report(n: u32, ok: bool, start: Instant, detail: &str) {
    let verdict = if ok { "PASS" } else { "FAIL" };
    println!("criterion {n}: {verdict} ({:.1}s) {detail}", start.elapsed().as_secs_f64());
}

fn polys(ctx: &CrossedProduct, s: [&str; 3]) -> [Polynomial; 3] {
    s.map(|p| ctx.parse_poly(p).unwrap())
}

fn presets() -> [(CrossedProduct, bool); 2] {
    [(klein_trivial(), false), (klein_dt(), true)]
}

// Membership oracle: a space is spanned by `generator * (monomial in the squares)`.
fn in_span(m: [u32; 3], generators: &[[u32; 3]]) -> bool {
    generators
        .iter()
        .any(|g| (0..3).all(|v| m[v] >= g[v] && (m[v] - g[v]).is_multiple_of(2)))
}

// `C[v^2]` or `v C[v^2]` for a single variable `v`.
fn in_one_var(m: [u32; 3], v: usize, odd: bool) -> bool {
    (0..3).all(|u| if u == v { m[u] % 2 == u32::from(odd) } else { m[u] == 0 })
}

fn monomials(d: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in 0..=d {
        for b in 0..=d - a {
            out.push([a, b, d - a - b]);
        }
    }
    out
}

const SQ: [u32; 3] = [0, 0, 0];
const XYZ: [u32; 3] = [1, 1, 1];
const X: [u32; 3] = [1, 0, 0];
const Y: [u32; 3] = [0, 1, 0];
const Z: [u32; 3] = [0, 0, 1];
const YZ: [u32; 3] = [0, 1, 1];
const XZ: [u32; 3] = [1, 0, 1];
const XY: [u32; 3] = [1, 1, 0];

/// Expected dimension of the `sigma` part of invariant `HH^n` in degree `d`.
fn oracle(dt: bool, n: usize, sigma: &str, d: u32) -> usize {
    let count = |gens: &[[u32; 3]]| monomials(d).into_iter().filter(|m| in_span(*m, gens)).count();
    let line = |v: usize, odd: bool| monomials(d).into_iter().filter(|m| in_one_var(*m, v, odd)).count();
    // q_1 [a] in y-polynomials, q_2 [c] in x, q_3 [b] in z
    let var = match sigma {
        "a" => 1,
        "c" => 0,
        "b" => 2,
        _ => usize::MAX,
    };
    match (n, sigma) {
        (0 | 3, "1") => count(&[SQ, XYZ]),
        (1, "1") => count(&[X, YZ]) + count(&[Y, XZ]) + count(&[Z, XY]),
        (2, "1") => count(&[Y, XZ]) + count(&[X, YZ]) + count(&[Z, XY]),
        (2, _) => line(var, !dt),
        (3, _) => line(var, dt),
        _ => 0,
    }
}

#[test]
fn criterion_1_cohomology_tables() {
    let start = Instant::now();
    let mut bad = Vec::new();
    for (ctx, dt) in presets() {
        for n in 0..=3 {
            let r = hh_graded(&ctx, n, 8, true);
            for d in 0..=8 {
                for sigma in ["1", "a", "b", "c"] {
                    let (got, want) = (r.dim(sigma, d), oracle(dt, n, sigma, d));
                    if got != want {
                        bad.push(format!("{} HH^{n} {sigma} d={d}: {got} != {want}", ctx.name()));
                    }
                }
            }
            if n == 0 {
                assert_eq!(r.dim("1", 4), 6);
            }
        }
    }
    report(1, bad.is_empty(), start, &format!("{} mismatches", bad.len()));
    assert!(bad.is_empty(), "{bad:?}");
}

#[test]
fn criterion_2_preset_independence() {
    let start = Instant::now();
    let mut bad = Vec::new();
    for n in 0..=3 {
        let key = |ctx: &CrossedProduct| {
            let mut rows: Vec<_> = hh_graded(ctx, n, 8, false)
                .rows
                .into_iter()
                .map(|r| (r.sigma, r.multidegree, r.dim))
                .collect();
            rows.sort();
            rows
        };
        if key(&klein_trivial()) != key(&klein_dt()) {
            bad.push(n);
        }
    }
    report(2, bad.is_empty(), start, &format!("differing n: {bad:?}"));
    assert!(bad.is_empty());
}

#[test]
fn criterion_3_chain_maps() {
    let start = Instant::now();
    let mut checked = 0;
    let mut ok = true;
    for n in 1..=3 {
        let r = chain_map_check(n, 5).unwrap();
        checked += r.checked;
        ok &= r.passed();
    }
    report(3, ok && checked >= 3000, start, &format!("{checked} monomial tuples"));
    assert!(ok && checked >= 3000);
}

fn parameter_sets(ctx: &CrossedProduct) -> Vec<(&'static str, Mu1Params)> {
    vec![
        ("q=(1,1,1)", Mu1Params::q_only(polys(ctx, ["1", "1", "1"]))),
        ("p=(1,0,0)", Mu1Params::p_only(polys(ctx, ["1", "0", "0"]))),
        ("q=(y^2,x^2,z^2)", Mu1Params::q_only(polys(ctx, ["y^2", "x^2", "z^2"]))),
    ]
}

#[test]
fn criterion_4_double_derivation() {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut checked = 0;
    for (ctx, _) in presets() {
        let pairs = basis_tuples(&ctx, 2, 5);
        for (label, params) in parameter_sets(&ctx) {
            let f = params.to_cochain(&ctx).unwrap();
            checked += pairs.len();
            let hit = pairs.iter().find(|p| {
                lift_basis(&ctx, &f, &p[..]).unwrap() != mu1_closed_form(&ctx, &p[0], &p[1], &params).unwrap()
            });
            if let Some(p) = hit {
                bad.push(format!("{} {label} at ({}, {})", ctx.name(), ctx.basis_body(&p[0]), ctx.basis_body(&p[1])));
            }
        }
    }
    report(4, bad.is_empty(), start, &format!("{checked} pairs {bad:?}"));
    assert!(bad.is_empty());
}

#[test]
fn criterion_5_cocycle_identity() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for (ctx, _) in presets() {
        for (label, params) in parameter_sets(&ctx) {
            let r = cocycle_check(&ctx, |u, v| mu1_closed_form(&ctx, u, v, &params).unwrap(), 4);
            if let Some(w) = r.witness {
                failures.push(format!("{} {label} at {w:?}", ctx.name()));
            }
        }
    }
    report(5, failures.is_empty(), start, &format!("failing: {failures:?}"));
    assert!(failures.is_empty(), "{failures:?}");
}

#[test]
fn criterion_6_bialgebra_and_udf() {
    let start = Instant::now();
    let axioms = bialgebra_check();
    let axioms_ok = axioms.iter().all(|a| a.passed);
    let f1_ok = udf_check(&f1(), 1).passed();
    let f_ok = udf_check(&f_product(&[0, 1, 2]), 3).passed();
    let nc = noncocommutativity_witness();
    let ok = axioms_ok && f1_ok && f_ok && nc.differs;
    report(6, ok, start, &format!("axioms {axioms_ok}, F1 {f1_ok}, F {f_ok}, Δ(D) = {}", nc.coproduct));
    assert!(ok);
}

#[test]
fn criterion_7_module_algebra() {
    let start = Instant::now();
    let dt = klein_dt();
    let mut notes = Vec::new();
    let mut ok = true;
    for q in [["1", "1", "1"], ["y^2", "x^2", "z^2"]] {
        let fam = build_action(&dt, polys(&dt, q)).unwrap();
        let r = module_algebra_check(&fam, &[0, 1, 2], 4);
        ok &= r.passed();
        notes.push(format!("q={q:?} violations={}", r.violations.len()));
    }
    let d = build_d_action(&dt, polys(&dt, ["x*z", "0", "0"]), DVariant::Corrected);
    let r = module_algebra_check(&d, &[0, 1, 2], 4);
    let hit = r.violation("d1d1' = d1'd1").cloned();
    ok &= hit.is_some();
    notes.push(format!("d1d1' witness {:?}", hit.map(|v| v.witness)));

    let tr = klein_trivial();
    let fam = build_action(&tr, polys(&tr, ["y", "x", "z"])).unwrap();
    ok &= module_algebra_check(&fam, &[0], 4).passed();
    let r = module_algebra_check(&fam, &[0, 1, 2], 4);
    let hit = r.violation("D1D2 = D2D1").cloned();
    ok &= hit.is_some();
    notes.push(format!("D1D2 witness {:?}", hit.map(|v| v.witness)));
    report(7, ok, start, &notes.join("; "));
    assert!(ok);
}

#[test]
fn criterion_8_formal_deformation() {
    let start = Instant::now();
    let dt = klein_dt();
    let tr = klein_trivial();
    let stars = [
        ("klein-dt q=(1,1,1)", StarContext::full(&dt, polys(&dt, ["1", "1", "1"])).unwrap()),
        ("klein-dt q=(y^2,x^2,z^2)", StarContext::full(&dt, polys(&dt, ["y^2", "x^2", "z^2"])).unwrap()),
        ("klein-trivial F1 q1=y", StarContext::new(&tr, polys(&tr, ["y", "0", "0"]), &[0]).unwrap()),
        ("klein-trivial F1 q1=y^3", StarContext::new(&tr, polys(&tr, ["y^3", "0", "0"]), &[0]).unwrap()),
    ];
    let mut bad = Vec::new();
    for (label, star) in &stars {
        let a = associativity_check(star, 4);
        let f = first_order_check(star, 4).unwrap();
        if !a.passed() {
            bad.push(format!("{label} associativity at {:?}", a.witness));
        }
        if !f.passed() {
            bad.push(format!("{label} first order at {:?}", f.witness));
        }
    }
    report(8, bad.is_empty(), start, &format!("{bad:?}"));
    assert!(bad.is_empty());
}

#[test]
fn criterion_9_operator_identity() {
    let start = Instant::now();
    let dt = klein_dt();
    let mut ok = true;
    let mut checked = 0;
    for q in [["1", "1", "1"], ["y^2", "x^2", "z^2"]] {
        let fam = build_action(&dt, polys(&dt, q)).unwrap();
        let (n, w) = operator_identity_check(&fam, 5);
        checked += n;
        ok &= w.is_none();
    }
    report(9, ok, start, &format!("{checked} pairs"));
    assert!(ok);
}

#[test]
fn criterion_10_center() {
    let start = Instant::now();
    let dt = klein_dt();
    let star = StarContext::full(&dt, polys(&dt, ["1", "1", "1"])).unwrap();
    let w = central_w(&star).unwrap();
    let central = centrality_check(&star, &w, 5).passed();
    let no_t1 = w_square(&star).unwrap().coeff(1).is_zero();

    let r = center_relation(0, 0, 0, &GaussScalar::from_int(1)).unwrap();
    let shape = r.notes.iter().all(|n| !n.contains("target shape"));
    let nonzero = r.t2_coefficient != GaussScalar::from_int(0) && r.t3_coefficient != GaussScalar::from_int(0);
    let two = GaussScalar::from_int(2);
    let scaling = r.reproducing_scaling == Some(two.clone());
    let reproduced = r.candidates.iter().any(|c| {
        c.scaling == two && c.t2_coefficient == GaussScalar::from_int(1) && c.t3_coefficient == GaussScalar::gaussian(0, -2)
    });
    let zero = center_relation(0, 0, 0, &GaussScalar::from_int(0)).unwrap();
    let classical = zero.realized_relation == "W^2 = X*Y*Z";

    let flat = StarContext::full(&dt, polys(&dt, ["0", "0", "0"])).unwrap();
    let x2y2z2 = crossdef::CrossedElement::basis(Monomial::new([2, 2, 2]), dt.group().identity());
    let flat_ok = w_square(&flat).unwrap() == crossdef::TElement::constant(x2y2z2);

    let ok = central && no_t1 && shape && nonzero && scaling && reproduced && classical && flat_ok;
    report(
        10,
        ok,
        start,
        &format!("{}; scaling {:?}", r.realized_relation, r.reproducing_scaling.map(|s| s.to_string())),
    );
    assert!(ok);
}
