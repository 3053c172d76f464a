//! The eight-dimensional bialgebra `H_1`, tensor powers of it, universal
//! deformation formulas, and the operator actions on the Klein crossed products.
//!
//! `H_1` has basis words `D^a D'^b β^c` with `a, b, c ∈ {0, 1}`, indexed by
//! `a + 2b + 4c`. Tensor powers are sparse maps from tuples of such indices;
//! `H = H_1 ⊗ H_2 ⊗ H_3` occupies three consecutive slots.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Basis, CrossedElement, CrossedProduct, Monomial, Polynomial, TElement};
use crate::chainmap::basis_tuples;
use crate::error::{Error, Result};
use crate::group::{GroupElement, NVARS};
use crate::presets::{klein_kind, KleinKind};
use crate::scalars::GaussScalar;

pub const H1_DIM: u8 = 8;
pub const UNIT: u8 = 0;
pub const D: u8 = 1;
pub const DP: u8 = 2;
pub const BETA: u8 = 4;

const H1_NAMES: [&str; 8] = ["1", "D", "D'", "DD'", "β", "Dβ", "D'β", "DD'β"];

fn word(x: u8) -> (u8, u8, u8) {
    (x & 1, (x >> 1) & 1, (x >> 2) & 1)
}

pub fn h1_name(x: u8) -> &'static str {
    H1_NAMES[x as usize]
}

/// Product of two basis words as `sign * word`, or `None` when it vanishes.
pub fn h1_basis_mul(x: u8, y: u8) -> Option<(i64, u8)> {
    let (a1, b1, c1) = word(x);
    let (a2, b2, c2) = word(y);
    if a1 + a2 > 1 || b1 + b2 > 1 {
        return None;
    }
    let sign = if c1 * (a2 + b2) % 2 == 1 { -1 } else { 1 };
    Some((sign, (a1 + a2) | ((b1 + b2) << 1) | (((c1 + c2) % 2) << 2)))
}

pub fn h1_counit(x: u8) -> GaussScalar {
    let (a, b, _) = word(x);
    if a == 0 && b == 0 {
        GaussScalar::one()
    } else {
        GaussScalar::zero()
    }
}

/// Element of `H_1^{⊗ arity}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HElement {
    arity: usize,
    terms: BTreeMap<Vec<u8>, GaussScalar>,
}

impl HElement {
    pub fn zero(arity: usize) -> Self {
        HElement {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(arity: usize) -> Self {
        HElement::basis(vec![UNIT; arity])
    }

    pub fn basis(key: Vec<u8>) -> Self {
        let mut e = HElement::zero(key.len());
        e.add_term(key, &GaussScalar::one());
        e
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn add_term(&mut self, key: Vec<u8>, c: &GaussScalar) {
        assert_eq!(key.len(), self.arity, "arity mismatch");
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, other: &HElement, k: &GaussScalar) {
        for (key, c) in &other.terms {
            self.add_term(key.clone(), &(c * k));
        }
    }

    pub fn add(&self, other: &HElement) -> HElement {
        let mut out = self.clone();
        out.add_scaled(other, &GaussScalar::one());
        out
    }

    pub fn scale(&self, k: &GaussScalar) -> HElement {
        let mut out = HElement::zero(self.arity);
        out.add_scaled(self, k);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, &GaussScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &[u8]) -> GaussScalar {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    /// Slot-wise product; distinct slots commute.
    pub fn mul(&self, other: &HElement) -> HElement {
        assert_eq!(self.arity, other.arity, "arity mismatch");
        let mut out = HElement::zero(self.arity);
        for (k1, c1) in &self.terms {
            'pairs: for (k2, c2) in &other.terms {
                let mut key = Vec::with_capacity(self.arity);
                let mut sign = 1;
                for (x, y) in k1.iter().zip(k2) {
                    match h1_basis_mul(*x, *y) {
                        Some((s, z)) => {
                            sign *= s;
                            key.push(z);
                        }
                        None => {
                            continue 'pairs;
                        }
                    }
                }
                out.add_term(key, &(c1 * c2).scale_int(sign));
            }
        }
        out
    }

    /// `self ⊗ other`.
    pub fn tensor(&self, other: &HElement) -> HElement {
        let mut out = HElement::zero(self.arity + other.arity);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                let mut key = k1.clone();
                key.extend_from_slice(k2);
                out.add_term(key, &(c1 * c2));
            }
        }
        out
    }

    /// Applies the coproduct to the block of `block` slots starting at slot `block * pos`.
    pub fn coproduct_at(&self, block: usize, pos: usize) -> HElement {
        let start = block * pos;
        assert!(start + block <= self.arity, "block out of range");
        let mut out = HElement::zero(self.arity + block);
        for (key, c) in &self.terms {
            // expand slot by slot: list of (left block, right block, coeff)
            let mut parts: Vec<(Vec<u8>, Vec<u8>, GaussScalar)> = vec![(Vec::new(), Vec::new(), c.clone())];
            for &x in &key[start..start + block] {
                let dx = h1_coproduct(x);
                parts = parts
                    .into_iter()
                    .flat_map(|(l, r, k)| {
                        dx.terms()
                            .map(|(pair, v)| {
                                let mut l2 = l.clone();
                                let mut r2 = r.clone();
                                l2.push(pair[0]);
                                r2.push(pair[1]);
                                (l2, r2, &k * v)
                            })
                            .collect::<Vec<_>>()
                    })
                    .collect();
            }
            for (l, r, k) in parts {
                let mut new_key = key[..start].to_vec();
                new_key.extend(l);
                new_key.extend(r);
                new_key.extend_from_slice(&key[start + block..]);
                out.add_term(new_key, &k);
            }
        }
        out
    }

    /// Applies the counit to the block at `pos`, removing it.
    pub fn counit_at(&self, block: usize, pos: usize) -> HElement {
        let start = block * pos;
        let mut out = HElement::zero(self.arity - block);
        for (key, c) in &self.terms {
            let eps = key[start..start + block]
                .iter()
                .fold(GaussScalar::one(), |acc, &x| acc * h1_counit(x));
            let mut new_key = key[..start].to_vec();
            new_key.extend_from_slice(&key[start + block..]);
            out.add_term(new_key, &(c * &eps));
        }
        out
    }

    /// Swaps the two blocks of an element of `B ⊗ B`.
    pub fn flip(&self) -> HElement {
        let half = self.arity / 2;
        let mut out = HElement::zero(self.arity);
        for (key, c) in &self.terms {
            let mut k = key[half..].to_vec();
            k.extend_from_slice(&key[..half]);
            out.add_term(k, c);
        }
        out
    }
}

impl fmt::Display for HElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (key, c)) in self.terms.iter().enumerate() {
            let body = key.iter().map(|&x| h1_name(x)).collect::<Vec<_>>().join("⊗");
            write!(f, "{}", crate::algebra::render_term(c, &body, n == 0))?;
        }
        Ok(())
    }
}

impl fmt::Debug for HElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HElement({self})")
    }
}

/// Coproduct of a basis word of `H_1`, as an element of `H_1 ⊗ H_1`.
pub fn h1_coproduct(x: u8) -> HElement {
    let gen = |pairs: &[([u8; 2], i64)]| {
        let mut e = HElement::zero(2);
        for (k, c) in pairs {
            e.add_term(k.to_vec(), &GaussScalar::from_int(*c));
        }
        e
    };
    let (a, b, c) = word(x);
    let mut out = HElement::unit(2);
    if a == 1 {
        out = out.mul(&gen(&[([D, BETA], 1), ([UNIT, D], 1)]));
    }
    if b == 1 {
        out = out.mul(&gen(&[([DP, UNIT], 1), ([BETA, DP], 1)]));
    }
    if c == 1 {
        out = out.mul(&gen(&[([BETA, BETA], 1)]));
    }
    out
}

/// Polynomial in `t` with coefficients in a fixed tensor power.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HPoly {
    arity: usize,
    coeffs: BTreeMap<u32, HElement>,
}

impl HPoly {
    pub fn zero(arity: usize) -> Self {
        HPoly {
            arity,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(e: HElement) -> Self {
        HPoly::monomial(0, e)
    }

    pub fn monomial(k: u32, e: HElement) -> Self {
        let mut p = HPoly::zero(e.arity);
        p.add_at(k, &e);
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn add_at(&mut self, k: u32, e: &HElement) {
        let slot = self.coeffs.entry(k).or_insert_with(|| HElement::zero(self.arity));
        slot.add_scaled(e, &GaussScalar::one());
        if slot.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn add(&self, other: &HPoly) -> HPoly {
        let mut out = self.clone();
        for (k, e) in &other.coeffs {
            out.add_at(*k, e);
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &HElement)> {
        self.coeffs.iter().map(|(k, e)| (*k, e))
    }

    pub fn coeff(&self, k: u32) -> HElement {
        self.coeffs.get(&k).cloned().unwrap_or_else(|| HElement::zero(self.arity))
    }

    pub fn mul(&self, other: &HPoly) -> HPoly {
        let mut out = HPoly::zero(self.arity);
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                out.add_at(a + b, &x.mul(y));
            }
        }
        out
    }

    pub fn map(&self, arity: usize, f: impl Fn(&HElement) -> HElement) -> HPoly {
        let mut out = HPoly::zero(arity);
        for (k, e) in &self.coeffs {
            out.add_at(*k, &f(e));
        }
        out
    }

    /// Lowest power of `t` where `self` and `other` differ.
    pub fn first_difference(&self, other: &HPoly) -> Option<u32> {
        let keys: std::collections::BTreeSet<u32> = self.coeffs.keys().chain(other.coeffs.keys()).copied().collect();
        keys.into_iter().find(|k| self.coeff(*k) != other.coeff(*k))
    }
}

impl fmt::Display for HPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (n, (k, e)) in self.coeffs.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{e}")?,
                1 => write!(f, "t*({e})")?,
                k => write!(f, "t^{k}*({e})")?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomCheck {
    pub label: String,
    pub passed: bool,
    pub witness: Option<String>,
}

impl AxiomCheck {
    fn new(label: &str, witness: Option<String>) -> Self {
        AxiomCheck {
            label: label.into(),
            passed: witness.is_none(),
            witness,
        }
    }
}

/// Defining relations, algebra and coalgebra axioms, and compatibility of `H_1`.
pub fn bialgebra_check() -> Vec<AxiomCheck> {
    let b = |x: u8| HElement::basis(vec![x]);
    let all: Vec<u8> = (0..H1_DIM).collect();
    let neg = |e: &HElement| e.scale(&GaussScalar::from_int(-1));
    let mut out = Vec::new();

    let relations = [
        ("D*D = 0", b(D).mul(&b(D)), HElement::zero(1)),
        ("D'*D' = 0", b(DP).mul(&b(DP)), HElement::zero(1)),
        ("D*D' = D'*D", b(D).mul(&b(DP)), b(DP).mul(&b(D))),
        ("D*β = -β*D", b(D).mul(&b(BETA)), neg(&b(BETA).mul(&b(D)))),
        ("D'*β = -β*D'", b(DP).mul(&b(BETA)), neg(&b(BETA).mul(&b(DP)))),
        ("β*β = 1", b(BETA).mul(&b(BETA)), HElement::unit(1)),
    ];
    let w = relations.iter().find(|(_, l, r)| l != r).map(|(s, _, _)| s.to_string());
    out.push(AxiomCheck::new("relations", w));

    let mut w = None;
    'assoc: for &x in &all {
        for &y in &all {
            for &z in &all {
                if b(x).mul(&b(y)).mul(&b(z)) != b(x).mul(&b(y).mul(&b(z))) {
                    w = Some(format!("({}, {}, {})", h1_name(x), h1_name(y), h1_name(z)));
                    break 'assoc;
                }
            }
        }
    }
    out.push(AxiomCheck::new("associativity", w));

    let w = all
        .iter()
        .find(|&&x| b(UNIT).mul(&b(x)) != b(x) || b(x).mul(&b(UNIT)) != b(x))
        .map(|&x| h1_name(x).to_string());
    out.push(AxiomCheck::new("unit", w));

    let w = all
        .iter()
        .find(|&&x| {
            let d = h1_coproduct(x);
            d.coproduct_at(1, 0) != d.coproduct_at(1, 1)
        })
        .map(|&x| h1_name(x).to_string());
    out.push(AxiomCheck::new("coassociativity", w));

    let w = all
        .iter()
        .find(|&&x| {
            let d = h1_coproduct(x);
            d.counit_at(1, 0) != b(x) || d.counit_at(1, 1) != b(x)
        })
        .map(|&x| h1_name(x).to_string());
    out.push(AxiomCheck::new("counit", w));

    let mut w = None;
    let mut w_eps = None;
    for &x in &all {
        for &y in &all {
            let xy = b(x).mul(&b(y));
            let mut dxy = HElement::zero(2);
            let mut exy = GaussScalar::zero();
            for (k, c) in xy.terms() {
                dxy.add_scaled(&h1_coproduct(k[0]), c);
                exy += &(c * &h1_counit(k[0]));
            }
            if w.is_none() && dxy != h1_coproduct(x).mul(&h1_coproduct(y)) {
                w = Some(format!("({}, {})", h1_name(x), h1_name(y)));
            }
            if w_eps.is_none() && exy != h1_counit(x) * h1_counit(y) {
                w_eps = Some(format!("({}, {})", h1_name(x), h1_name(y)));
            }
        }
    }
    if h1_coproduct(UNIT) != HElement::unit(2) {
        w = Some("1".into());
    }
    out.push(AxiomCheck::new("coproduct is multiplicative", w));
    out.push(AxiomCheck::new("counit is multiplicative", w_eps));
    out
}

/// `1 ⊗ 1 + t D ⊗ D'` in `(H_1 ⊗ H_1)[t]`.
pub fn f1() -> HPoly {
    HPoly::constant(HElement::unit(2)).add(&HPoly::monomial(1, HElement::basis(vec![D, DP])))
}

/// `1 ⊗ 1 + t D ⊗ D`, which is not a deformation formula.
pub fn f1_wrong() -> HPoly {
    HPoly::constant(HElement::unit(2)).add(&HPoly::monomial(1, HElement::basis(vec![D, D])))
}

/// `F_i = 1 ⊗ 1 + t D_i ⊗ D_i'` inside `(H ⊗ H)[t]`, `H = H_1 ⊗ H_2 ⊗ H_3`.
pub fn f_index(i: usize) -> HPoly {
    let mut key = vec![UNIT; 6];
    key[i] = D;
    key[3 + i] = DP;
    HPoly::constant(HElement::unit(6)).add(&HPoly::monomial(1, HElement::basis(key)))
}

/// Ordered product of `F_i` over `indices`.
pub fn f_product(indices: &[usize]) -> HPoly {
    indices
        .iter()
        .fold(HPoly::constant(HElement::unit(6)), |acc, &i| acc.mul(&f_index(i)))
}

#[derive(Clone, Debug, Serialize)]
pub struct UdfReport {
    pub counit_left: bool,
    pub counit_right: bool,
    pub pentagon: bool,
    /// Lowest power of `t` at which the two sides of the pentagon differ.
    pub pentagon_first_difference: Option<u32>,
    pub failing: Option<String>,
}

impl UdfReport {
    pub fn passed(&self) -> bool {
        self.failing.is_none()
    }
}

/// Checks the counit and pentagon equations for `F ∈ (B ⊗ B)[t]`, `B = H_1^{⊗ block}`.
pub fn udf_check(f: &HPoly, block: usize) -> UdfReport {
    assert_eq!(f.arity(), 2 * block, "F must live in B ⊗ B");
    let unit = HPoly::constant(HElement::unit(block));
    let counit_left = f.map(block, |e| e.counit_at(block, 0)) == unit;
    let counit_right = f.map(block, |e| e.counit_at(block, 1)) == unit;
    let one = HElement::unit(block);
    let lhs = f
        .map(3 * block, |e| e.coproduct_at(block, 0))
        .mul(&f.map(3 * block, |e| e.tensor(&one)));
    let rhs = f
        .map(3 * block, |e| e.coproduct_at(block, 1))
        .mul(&f.map(3 * block, |e| one.tensor(e)));
    let diff = lhs.first_difference(&rhs);
    let failing = if !counit_left {
        Some("(ε ⊗ id)(F) = 1".to_string())
    } else if !counit_right {
        Some("(id ⊗ ε)(F) = 1".to_string())
    } else {
        diff.map(|k| format!("pentagon differs at t^{k}"))
    };
    UdfReport {
        counit_left,
        counit_right,
        pentagon: diff.is_none(),
        pentagon_first_difference: diff,
        failing,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NonCocommutativity {
    pub element: String,
    pub coproduct: String,
    pub flipped: String,
    pub differs: bool,
    pub beta_flip_invariant: bool,
    pub unit_flip_invariant: bool,
}

pub fn noncocommutativity_witness() -> NonCocommutativity {
    let d = h1_coproduct(D);
    let grouplike = |x: u8| h1_coproduct(x) == h1_coproduct(x).flip();
    NonCocommutativity {
        element: h1_name(D).into(),
        coproduct: d.to_string(),
        flipped: d.flip().to_string(),
        differs: d != d.flip(),
        beta_flip_invariant: grouplike(BETA),
        unit_flip_invariant: grouplike(UNIT),
    }
}

/// Generators `D_i`, `D_i'`, `β_i` with `i ∈ {0, 1, 2}` standing for indices 1 to 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    D(usize),
    DPrime(usize),
    Beta(usize),
}

impl Generator {
    pub fn index(self) -> usize {
        match self {
            Generator::D(i) | Generator::DPrime(i) | Generator::Beta(i) => i,
        }
    }

    pub fn all(i: usize) -> [Generator; 3] {
        [Generator::D(i), Generator::DPrime(i), Generator::Beta(i)]
    }
}

/// A linear action of the generators on `A`, given on basis symbols.
pub trait OperatorFamily: Sync {
    fn ctx(&self) -> &CrossedProduct;

    fn apply_basis(&self, g: Generator, b: &Basis) -> CrossedElement;

    /// Name of a generator in reports, e.g. `D1'`.
    fn label(&self, g: Generator) -> String {
        match g {
            Generator::D(i) => format!("D{}", i + 1),
            Generator::DPrime(i) => format!("D{}'", i + 1),
            Generator::Beta(i) => format!("β{}", i + 1),
        }
    }

    fn apply(&self, g: Generator, u: &CrossedElement) -> CrossedElement {
        let mut out = CrossedElement::zero();
        for (b, c) in u.terms() {
            out.add_scaled(&self.apply_basis(g, b), c);
        }
        out
    }

    /// Applies the word `D^a D'^b β^c` of copy `i` (rightmost factor first).
    fn apply_word(&self, i: usize, x: u8, u: &CrossedElement) -> CrossedElement {
        let (a, b, c) = word(x);
        let mut v = u.clone();
        if c == 1 {
            v = self.apply(Generator::Beta(i), &v);
        }
        if b == 1 {
            v = self.apply(Generator::DPrime(i), &v);
        }
        if a == 1 {
            v = self.apply(Generator::D(i), &v);
        }
        v
    }

    /// Applies a basis element of `H = H_1 ⊗ H_2 ⊗ H_3` as `op(w_1) ∘ op(w_2) ∘ op(w_3)`.
    fn apply_h(&self, key: &[u8], u: &CrossedElement) -> CrossedElement {
        key.iter()
            .enumerate()
            .rev()
            .fold(u.clone(), |v, (i, &x)| if x == UNIT { v } else { self.apply_word(i, x, &v) })
    }
}

fn element(b: &Basis) -> CrossedElement {
    CrossedElement::basis(b.mono, b.group)
}

fn parity(n: u32) -> i64 {
    i64::from(n % 2)
}

fn sign(n: u32) -> GaussScalar {
    GaussScalar::from_int(if n.is_multiple_of(2) { 1 } else { -1 })
}

/// Which polynomial spaces the `q_i` may come from.
fn q_space(kind: KleinKind, i: usize) -> (&'static str, usize, u32) {
    // (description, variable, required parity of its exponent)
    match (kind, i) {
        (KleinKind::DiscreteTorsion, 0) => ("C[y^2]", 1, 0),
        (KleinKind::DiscreteTorsion, 1) => ("C[x^2]", 0, 0),
        (KleinKind::DiscreteTorsion, _) => ("C[z^2]", 2, 0),
        (KleinKind::Trivial, 0) => ("y*C[y^2]", 1, 1),
        (KleinKind::Trivial, 1) => ("x*C[x^2]", 0, 1),
        (KleinKind::Trivial, _) => ("z*C[z^2]", 2, 1),
    }
}

/// The `D_i, D_i', β_i` action on a Klein crossed product, with parameters `q_1, q_2, q_3`.
#[derive(Clone, Debug)]
pub struct ActionFamily {
    ctx: CrossedProduct,
    kind: KleinKind,
    q: [Polynomial; 3],
    /// Group elements `a, c, b` paired with `q_1, q_2, q_3`.
    q_elements: [GroupElement; 3],
}

/// Builds the action, checking each `q_i` lies in the space allowed for the preset.
pub fn build_action(ctx: &CrossedProduct, q: [Polynomial; 3]) -> Result<ActionFamily> {
    let kind = klein_kind(ctx).ok_or(Error::WrongPreset {
        expected: "klein-dt or klein-trivial",
    })?;
    for (i, qi) in q.iter().enumerate() {
        let (space, var, par) = q_space(kind, i);
        let ok = qi.terms().all(|(m, _)| {
            (0..NVARS).all(|v| if v == var { m.exp(v) % 2 == par } else { m.exp(v) == 0 })
        });
        if !ok {
            return Err(Error::ParameterOutOfSpace {
                name: format!("q{}", i + 1),
                value: qi.to_string(),
                space,
            });
        }
    }
    let q_elements = [ctx.element("a")?, ctx.element("c")?, ctx.element("b")?];
    Ok(ActionFamily {
        ctx: ctx.clone(),
        kind,
        q,
        q_elements,
    })
}

impl ActionFamily {
    pub fn kind(&self) -> KleinKind {
        self.kind
    }

    pub fn q(&self) -> &[Polynomial; 3] {
        &self.q
    }

    /// `c * m * q_i * gbar_i * sigma`, or zero when `m` has a negative exponent.
    fn with_q(&self, i: usize, c: GaussScalar, e: [i64; NVARS], sigma: GroupElement) -> CrossedElement {
        let Some(m) = Monomial::from_signed(e) else {
            return CrossedElement::zero();
        };
        if c.is_zero() {
            return CrossedElement::zero();
        }
        let front = CrossedElement::from_poly(&Polynomial::monomial(m).mul(&self.q[i]), self.q_elements[i]);
        self.ctx
            .mul(&front, &CrossedElement::basis(Monomial::ONE, sigma))
            .scale(&c)
    }
}

fn plain(c: GaussScalar, e: [i64; NVARS], sigma: GroupElement) -> CrossedElement {
    match Monomial::from_signed(e) {
        Some(m) if !c.is_zero() => CrossedElement::term(m, sigma, c),
        _ => CrossedElement::zero(),
    }
}

impl OperatorFamily for ActionFamily {
    fn ctx(&self) -> &CrossedProduct {
        &self.ctx
    }

    fn apply_basis(&self, g: Generator, b: &Basis) -> CrossedElement {
        let [i, j, k] = b.mono.exps();
        let e = [i64::from(i), i64::from(j), i64::from(k)];
        let s = b.group;
        let ch = |v: usize| self.ctx.action().var_scalar(v, s);
        let bar = |n: u32| GaussScalar::from_int(parity(n));
        let shifted = |v: usize| {
            let mut f = e;
            f[v] -= 1;
            f
        };
        let u = CrossedElement::basis(b.mono, s);
        match g {
            Generator::D(0) => plain(bar(i) * ch(0), shifted(0), s),
            Generator::DPrime(0) => self.with_q(0, sign(i) * bar(k), shifted(2), s),
            Generator::D(1) => self.with_q(1, bar(j) * ch(2), shifted(1), s),
            Generator::DPrime(1) => plain(bar(k), shifted(2), s),
            Generator::D(2) => self.with_q(2, bar(i) * ch(1), shifted(0), s),
            Generator::DPrime(2) => plain(bar(j), shifted(1), s),
            Generator::Beta(0) => u.scale(&(sign(i) * ch(0))),
            Generator::Beta(1) => u.scale(&(sign(k) * ch(2))),
            Generator::Beta(2) => u.scale(&(sign(j) * ch(1))),
            _ => CrossedElement::zero(),
        }
    }
}

/// Which transcription of the `d_1, d_2` operators to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DVariant {
    /// Matches the infinitesimal deformation term by term.
    Corrected,
    /// Carries an extra factor of `z` in `d_1` and `d_2`.
    AsPrinted,
}

/// The `d_i, d_i', γ_i` operators built from `p_1, p_2, p_3`; they act with
/// integer (not mod 2) coefficients. `Generator::D`, `DPrime` and `Beta`
/// stand for `d_i`, `d_i'` and `γ_i`.
#[derive(Clone, Debug)]
pub struct DFamily {
    ctx: CrossedProduct,
    p: [Polynomial; 3],
    variant: DVariant,
}

pub fn build_d_action(ctx: &CrossedProduct, p: [Polynomial; 3], variant: DVariant) -> DFamily {
    DFamily {
        ctx: ctx.clone(),
        p,
        variant,
    }
}

impl DFamily {
    fn with_p(&self, i: usize, c: i64, scalar: GaussScalar, e: [i64; NVARS], sigma: GroupElement) -> CrossedElement {
        let Some(m) = Monomial::from_signed(e) else {
            return CrossedElement::zero();
        };
        if c == 0 {
            return CrossedElement::zero();
        }
        CrossedElement::from_poly(&Polynomial::monomial(m).mul(&self.p[i]), sigma).scale(&scalar.scale_int(c))
    }
}

impl OperatorFamily for DFamily {
    fn ctx(&self) -> &CrossedProduct {
        &self.ctx
    }

    fn label(&self, g: Generator) -> String {
        match g {
            Generator::D(i) => format!("d{}", i + 1),
            Generator::DPrime(i) => format!("d{}'", i + 1),
            Generator::Beta(i) => format!("γ{}", i + 1),
        }
    }

    fn apply_basis(&self, g: Generator, b: &Basis) -> CrossedElement {
        let [i, j, k] = b.mono.exps().map(i64::from);
        let s = b.group;
        let ch = |v: usize| self.ctx.action().var_scalar(v, s);
        let extra = i64::from(self.variant == DVariant::AsPrinted);
        let u = CrossedElement::basis(b.mono, s);
        match g {
            Generator::D(0) => self.with_p(0, i, ch(2), [i - 1, j, k + extra], s),
            Generator::D(1) => self.with_p(1, j, ch(2), [i, j - 1, k + extra], s),
            Generator::D(2) => self.with_p(2, i, ch(1), [i - 1, j, k], s),
            Generator::DPrime(0) | Generator::DPrime(1) => plain(GaussScalar::from_int(k), [i, j, k - 1], s),
            Generator::DPrime(2) => plain(GaussScalar::from_int(j), [i, j - 1, k], s),
            Generator::Beta(0) | Generator::Beta(1) => u.scale(&ch(2)),
            Generator::Beta(2) => u.scale(&ch(1)),
            _ => CrossedElement::zero(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub label: String,
    /// Rendered basis symbols at which the identity fails.
    pub witness: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ModuleAlgebraReport {
    pub indices: Vec<usize>,
    pub d_max: u32,
    pub checked_symbols: usize,
    pub checked_pairs: usize,
    pub violations: Vec<Violation>,
}

impl ModuleAlgebraReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violation(&self, label: &str) -> Option<&Violation> {
        self.violations.iter().find(|v| v.label == label)
    }
}

type UnaryCheck<'a> = (String, Box<dyn Fn(&CrossedElement) -> bool + Sync + 'a>);
type BinaryCheck<'a> = (String, Box<dyn Fn(&CrossedElement, &CrossedElement) -> bool + Sync + 'a>);

/// Verifies that `A` is a module algebra for the copies `indices` of `H_1`.
///
/// Pairs of total degree `<= d_max` test automorphisms and skew derivations;
/// symbols of degree `<= d_max` test the relations, cross-index commutation
/// and the vanishing products `D1 D3`, `D2 D3'`, `D1' D2'` (for indices present).
pub fn module_algebra_check<F: OperatorFamily>(family: &F, indices: &[usize], d_max: u32) -> ModuleAlgebraReport {
    use Generator::*;
    let ctx = family.ctx();
    let op = |g: Generator, u: &CrossedElement| family.apply(g, u);
    let name = |g: Generator| family.label(g);

    let mut binary: Vec<BinaryCheck> = Vec::new();
    for &i in indices {
        binary.push((
            format!("{} is multiplicative", name(Beta(i))),
            Box::new(move |u, v| op(Beta(i), &ctx.mul(u, v)) == ctx.mul(&op(Beta(i), u), &op(Beta(i), v))),
        ));
        binary.push((
            format!("{0}(uv) = {0}(u){1}(v) + u{0}(v)", name(D(i)), name(Beta(i))),
            Box::new(move |u, v| {
                op(D(i), &ctx.mul(u, v)) == ctx.mul(&op(D(i), u), &op(Beta(i), v)).add(&ctx.mul(u, &op(D(i), v)))
            }),
        ));
        binary.push((
            format!("{0}(uv) = {0}(u)v + {1}(u){0}(v)", name(DPrime(i)), name(Beta(i))),
            Box::new(move |u, v| {
                op(DPrime(i), &ctx.mul(u, v))
                    == ctx.mul(&op(DPrime(i), u), v).add(&ctx.mul(&op(Beta(i), u), &op(DPrime(i), v)))
            }),
        ));
    }

    let compose = move |gs: &[Generator], u: &CrossedElement| gs.iter().rev().fold(u.clone(), |v, g| op(*g, &v));
    let mut unary: Vec<UnaryCheck> = Vec::new();
    let eq = |lhs: Vec<Generator>, rhs: Vec<Generator>, s: i64| -> Box<dyn Fn(&CrossedElement) -> bool + Sync + '_> {
        Box::new(move |u| {
            let r = if rhs.is_empty() && s == 0 {
                CrossedElement::zero()
            } else {
                compose(&rhs, u).scale(&GaussScalar::from_int(s))
            };
            compose(&lhs, u) == r
        })
    };
    for &i in indices {
        let (d, dp, b) = (D(i), DPrime(i), Beta(i));
        unary.push((format!("{0}{0} = 0", name(d)), eq(vec![d, d], vec![], 0)));
        unary.push((format!("{0}{0} = 0", name(dp)), eq(vec![dp, dp], vec![], 0)));
        unary.push((format!("{0}{0} = id", name(b)), eq(vec![b, b], vec![], 1)));
        unary.push((format!("{}{} = {1}{0}", name(d), name(dp)), eq(vec![d, dp], vec![dp, d], 1)));
        unary.push((format!("{}{} = -{1}{0}", name(d), name(b)), eq(vec![d, b], vec![b, d], -1)));
        unary.push((format!("{}{} = -{1}{0}", name(dp), name(b)), eq(vec![dp, b], vec![b, dp], -1)));
    }
    for (n, &i) in indices.iter().enumerate() {
        for &j in &indices[n + 1..] {
            for g in Generator::all(i) {
                for h in Generator::all(j) {
                    unary.push((format!("{}{} = {1}{0}", name(g), name(h)), eq(vec![g, h], vec![h, g], 1)));
                }
            }
        }
    }
    for (a, b) in [(D(0), D(2)), (D(1), DPrime(2)), (DPrime(0), DPrime(1))] {
        if indices.contains(&a.index()) && indices.contains(&b.index()) {
            unary.push((format!("{}{} = 0", name(a), name(b)), eq(vec![a, b], vec![], 0)));
        }
    }

    let symbols = ctx.basis_symbols(d_max);
    let pairs = basis_tuples(ctx, 2, d_max);
    let mut violations = Vec::new();
    for (label, check) in &binary {
        let hit = pairs.par_iter().find_first(|p| !check(&element(&p[0]), &element(&p[1])));
        if let Some(p) = hit {
            violations.push(Violation {
                label: label.clone(),
                witness: p.iter().map(|b| ctx.basis_body(b)).collect(),
            });
        }
    }
    for (label, check) in &unary {
        if let Some(b) = symbols.par_iter().find_first(|b| !check(&element(b))) {
            violations.push(Violation {
                label: label.clone(),
                witness: vec![ctx.basis_body(b)],
            });
        }
    }
    ModuleAlgebraReport {
        indices: indices.to_vec(),
        d_max,
        checked_symbols: symbols.len(),
        checked_pairs: pairs.len(),
        violations,
    }
}

/// Checks that acting by a product of two words equals composing their actions,
/// for copy `i`, on basis symbols of degree `<= d_max`. Returns the first failure.
pub fn representation_check<F: OperatorFamily>(family: &F, i: usize, d_max: u32) -> Option<(String, String, String)> {
    let symbols = family.ctx().basis_symbols(d_max);
    for x in 0..H1_DIM {
        for y in 0..H1_DIM {
            let hit = symbols.par_iter().find_first(|b| {
                let u = element(b);
                let composed = family.apply_word(i, x, &family.apply_word(i, y, &u));
                let product = match h1_basis_mul(x, y) {
                    Some((s, z)) => family.apply_word(i, z, &u).scale(&GaussScalar::from_int(s)),
                    None => CrossedElement::zero(),
                };
                composed != product
            });
            if let Some(b) = hit {
                return Some((h1_name(x).into(), h1_name(y).into(), family.ctx().basis_body(b)));
            }
        }
    }
    None
}

/// `(m ∘ F)(u ⊗ v)` for `F ∈ (H ⊗ H)[t]` acting through `family`.
pub fn apply_udf<F: OperatorFamily>(family: &F, f: &HPoly, u: &CrossedElement, v: &CrossedElement) -> TElement {
    let ctx = family.ctx();
    let mut out = TElement::zero();
    for (k, e) in f.iter() {
        for (key, c) in e.terms() {
            let l = family.apply_h(&key[..3], u);
            if l.is_zero() {
                continue;
            }
            let r = family.apply_h(&key[3..], v);
            out.add_at(k, &ctx.mul(&l, &r), c);
        }
    }
    out
}

/// `uv + t sum_i D_i(u) D_i'(v) + t^2 D_2 D_3(u) D_2' D_3'(v)`.
pub fn truncated_operator_form<F: OperatorFamily>(family: &F, u: &CrossedElement, v: &CrossedElement) -> TElement {
    use Generator::*;
    let ctx = family.ctx();
    let op = |g: Generator, w: &CrossedElement| family.apply(g, w);
    let mut out = TElement::constant(ctx.mul(u, v));
    for i in 0..3 {
        out.add_at(1, &ctx.mul(&op(D(i), u), &op(DPrime(i), v)), &GaussScalar::one());
    }
    let l = op(D(1), &op(D(2), u));
    let r = op(DPrime(1), &op(DPrime(2), v));
    out.add_at(2, &ctx.mul(&l, &r), &GaussScalar::one());
    out
}

/// Compares the full product `F_1 F_2 F_3` with its truncated operator form on basis pairs.
pub fn operator_identity_check<F: OperatorFamily>(family: &F, d_max: u32) -> (usize, Option<[String; 2]>) {
    let ctx = family.ctx();
    let f = f_product(&[0, 1, 2]);
    let pairs = basis_tuples(ctx, 2, d_max);
    let hit = pairs.par_iter().find_first(|p| {
        let (u, v) = (element(&p[0]), element(&p[1]));
        apply_udf(family, &f, &u, &v) != truncated_operator_form(family, &u, &v)
    });
    (pairs.len(), hit.map(|p| [ctx.basis_body(&p[0]), ctx.basis_body(&p[1])]))
}
