use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::poly::{Monomial, Polynomial};
use crate::group::GroupElement;
use crate::scalars::GaussScalar;

/// Basis symbol `p * gbar` of the crossed product, `p` a monomial.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Basis {
    pub mono: Monomial,
    pub group: GroupElement,
}

impl Basis {
    pub fn new(mono: Monomial, group: GroupElement) -> Self {
        Basis { mono, group }
    }
}

/// Finite linear combination of basis symbols `x^i y^j z^k gbar`.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct CrossedElement {
    terms: BTreeMap<Basis, GaussScalar>,
}

impl CrossedElement {
    pub fn zero() -> Self {
        CrossedElement::default()
    }

    pub fn one() -> Self {
        CrossedElement::basis(Monomial::ONE, GroupElement::IDENTITY)
    }

    pub fn basis(mono: Monomial, group: GroupElement) -> Self {
        CrossedElement::term(mono, group, GaussScalar::one())
    }

    pub fn term(mono: Monomial, group: GroupElement, c: GaussScalar) -> Self {
        let mut e = CrossedElement::zero();
        e.add_term(Basis::new(mono, group), &c);
        e
    }

    /// `p * gbar`.
    pub fn from_poly(p: &Polynomial, group: GroupElement) -> Self {
        let mut e = CrossedElement::zero();
        for (m, c) in p.terms() {
            e.add_term(Basis::new(*m, group), c);
        }
        e
    }

    pub fn add_term(&mut self, b: Basis, c: &GaussScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &CrossedElement, k: &GaussScalar) {
        if k.is_zero() {
            return;
        }
        let unit = k.is_one();
        for (b, c) in other.terms() {
            if unit {
                self.add_term(*b, c);
            } else {
                self.add_term(*b, &(c * k));
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Basis, &GaussScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, b: &Basis) -> GaussScalar {
        self.terms.get(b).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &CrossedElement) -> CrossedElement {
        let mut out = self.clone();
        out.add_scaled(other, &GaussScalar::one());
        out
    }

    pub fn sub(&self, other: &CrossedElement) -> CrossedElement {
        let mut out = self.clone();
        out.add_scaled(other, &GaussScalar::from_int(-1));
        out
    }

    pub fn scale(&self, k: &GaussScalar) -> CrossedElement {
        let mut out = CrossedElement::zero();
        out.add_scaled(self, k);
        out
    }

    pub fn neg(&self) -> CrossedElement {
        self.scale(&GaussScalar::from_int(-1))
    }

    /// Applies `f` to each basis symbol, dropping terms where it returns `None`.
    pub fn map_basis(&self, f: impl Fn(&Basis) -> Option<(Basis, GaussScalar)>) -> CrossedElement {
        let mut out = CrossedElement::zero();
        for (b, c) in self.terms() {
            if let Some((b2, k)) = f(b) {
                out.add_term(b2, &(c * &k));
            }
        }
        out
    }

    /// The part supported on `gbar`, as a polynomial.
    pub fn component(&self, g: GroupElement) -> Polynomial {
        let mut p = Polynomial::zero();
        for (b, c) in self.terms() {
            if b.group == g {
                p.add_term(b.mono, c);
            }
        }
        p
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|b| b.mono.degree()).max()
    }
}

/// Polynomial in the deformation parameter `t` with crossed-product coefficients.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct TElement {
    coeffs: BTreeMap<u32, CrossedElement>,
}

impl TElement {
    pub fn zero() -> Self {
        TElement::default()
    }

    /// `u` placed in t-degree 0.
    pub fn constant(u: CrossedElement) -> Self {
        TElement::monomial(0, u)
    }

    /// `t^k * u`.
    pub fn monomial(k: u32, u: CrossedElement) -> Self {
        let mut e = TElement::zero();
        e.add_at(k, &u, &GaussScalar::one());
        e
    }

    pub fn add_at(&mut self, k: u32, u: &CrossedElement, scale: &GaussScalar) {
        if u.is_zero() || scale.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(k).or_default();
        slot.add_scaled(u, scale);
        if slot.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn add_scaled(&mut self, other: &TElement, scale: &GaussScalar) {
        for (k, u) in other.iter() {
            self.add_at(k, u, scale);
        }
    }

    pub fn add(&self, other: &TElement) -> TElement {
        let mut out = self.clone();
        out.add_scaled(other, &GaussScalar::one());
        out
    }

    pub fn sub(&self, other: &TElement) -> TElement {
        let mut out = self.clone();
        out.add_scaled(other, &GaussScalar::from_int(-1));
        out
    }

    pub fn scale(&self, k: &GaussScalar) -> TElement {
        let mut out = TElement::zero();
        out.add_scaled(self, k);
        out
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: u32) -> TElement {
        TElement {
            coeffs: self.coeffs.iter().map(|(d, u)| (d + k, u.clone())).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `t^k`.
    pub fn coeff(&self, k: u32) -> CrossedElement {
        self.coeffs.get(&k).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &CrossedElement)> {
        self.coeffs.iter().map(|(k, u)| (*k, u))
    }

    /// Highest power of `t` present.
    pub fn t_degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Lowest power of `t` present.
    pub fn t_order(&self) -> Option<u32> {
        self.coeffs.keys().next().copied()
    }

    /// Cauchy product in `t`, multiplying coefficient pairs with `star`.
    pub fn t_mul(&self, other: &TElement, star: impl Fn(&CrossedElement, &CrossedElement) -> TElement) -> TElement {
        let mut out = TElement::zero();
        for (a, u) in self.iter() {
            for (b, v) in other.iter() {
                out.add_scaled(&star(u, v).shift(a + b), &GaussScalar::one());
            }
        }
        out
    }
}

impl From<CrossedElement> for TElement {
    fn from(u: CrossedElement) -> Self {
        TElement::constant(u)
    }
}
