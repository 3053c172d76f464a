//! The polynomial ring `R = Q(i)[x,y,z]`, the crossed product `A = R #_alpha G`
//! and t-polynomials over `A`.
//!
//! Elements are plain sparse maps; the group, its action and the cocycle are
//! carried by [`CrossedProduct`] and passed to every operation that needs them.

mod element;
mod parse;
mod poly;

use std::fmt;

use num_traits::One;
use rayon::prelude::*;

pub use element::{Basis, CrossedElement, TElement};
pub use poly::{Monomial, Polynomial};
pub(crate) use poly::render_term;

use crate::error::{Error, Result};
use crate::group::{AbelianGroup, Cocycle, CocycleCheck, DiagonalAction, GroupElement};
use crate::scalars::GaussScalar;

/// The data `(G, action, alpha)` defining `R #_alpha G`.
#[derive(Clone, Debug)]
pub struct CrossedProduct {
    name: String,
    group: AbelianGroup,
    action: DiagonalAction,
    cocycle: Cocycle,
    alpha: Vec<GaussScalar>,
}

impl CrossedProduct {
    /// Validates the cocycle (totality, normalization, 2-cocycle identity).
    pub fn new(name: impl Into<String>, group: AbelianGroup, action: DiagonalAction, cocycle: Cocycle) -> Result<Self> {
        let check = cocycle.validate(&group)?;
        if !check.normalized {
            return Err(Error::InvalidGroup("cocycle is not normalized".into()));
        }
        if let Some((r, s, t)) = check.witness {
            return Err(Error::InvalidGroup(format!(
                "cocycle identity fails at ({}, {}, {})",
                group.name(r),
                group.name(s),
                group.name(t)
            )));
        }
        let alpha = group
            .elements()
            .flat_map(|g| group.elements().map(move |h| (g, h)))
            .map(|(g, h)| cocycle.get(g, h).cloned().expect("validated"))
            .collect();
        Ok(CrossedProduct {
            name: name.into(),
            group,
            action,
            cocycle,
            alpha,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn action(&self) -> &DiagonalAction {
        &self.action
    }

    pub fn cocycle(&self) -> &Cocycle {
        &self.cocycle
    }

    pub fn validate_cocycle(&self) -> CocycleCheck {
        self.cocycle.validate(&self.group).expect("validated at construction")
    }

    pub fn alpha(&self, g: GroupElement, h: GroupElement) -> &GaussScalar {
        &self.alpha[g.index() * self.group.order() + h.index()]
    }

    /// Looks up a group element by display name.
    pub fn element(&self, name: &str) -> Result<GroupElement> {
        self.group
            .by_name(name)
            .ok_or_else(|| Error::InvalidGroup(format!("no group element named {name:?}")))
    }

    pub fn monomial_scalar(&self, m: &Monomial, g: GroupElement) -> GaussScalar {
        self.action.monomial_scalar(m, g)
    }

    /// `(p gbar)(q hbar) = p (g.q) alpha(g,h) (gh)bar` on basis symbols.
    pub fn basis_mul(&self, u: &Basis, v: &Basis) -> (GaussScalar, Basis) {
        let k = self.action.monomial_exponent(&v.mono, u.group);
        let scalar = GaussScalar::pow_root_of_unity(k as i64) * self.alpha(u.group, v.group);
        (
            scalar,
            Basis::new(u.mono.mul(&v.mono), self.group.mul(u.group, v.group)),
        )
    }

    pub fn mul(&self, u: &CrossedElement, v: &CrossedElement) -> CrossedElement {
        let mut out = CrossedElement::zero();
        for (bu, cu) in u.terms() {
            for (bv, cv) in v.terms() {
                let (k, b) = self.basis_mul(bu, bv);
                out.add_term(b, &(&(cu * cv) * &k));
            }
        }
        out
    }

    /// `alpha(g, g^-1)^-1`, so that `(gbar)^-1 = alpha(g,g^-1)^-1 (g^-1)bar`.
    pub fn sigma_bar_inverse_scalar(&self, g: GroupElement) -> GaussScalar {
        self.alpha(g, self.group.inv(g)).inv().expect("cocycle values are units")
    }

    pub fn sigma_bar_inverse(&self, g: GroupElement) -> CrossedElement {
        CrossedElement::term(Monomial::ONE, self.group.inv(g), self.sigma_bar_inverse_scalar(g))
    }

    /// `gbar u (gbar)^-1`.
    pub fn inner_action(&self, g: GroupElement, u: &CrossedElement) -> CrossedElement {
        let gbar = CrossedElement::basis(Monomial::ONE, g);
        self.mul(&self.mul(&gbar, u), &self.sigma_bar_inverse(g))
    }

    /// Every basis symbol `x^i y^j z^k gbar` with `i+j+k <= d_max`, by degree then group.
    pub fn basis_symbols(&self, d_max: u32) -> Vec<Basis> {
        Monomial::up_to_degree(d_max)
            .into_iter()
            .flat_map(|m| self.group.elements().map(move |g| Basis::new(m, g)))
            .collect()
    }

    /// Returns the first basis symbol of degree `<= d_max` that does not commute with `u`.
    pub fn center_test(&self, u: &CrossedElement, d_max: u32) -> Option<Basis> {
        self.basis_symbols(d_max).into_par_iter().find_first(|b| {
            let e = CrossedElement::basis(b.mono, b.group);
            self.mul(u, &e) != self.mul(&e, u)
        })
    }

    /// `t_mul` with the undeformed product on every coefficient pair.
    pub fn t_mul_undeformed(&self, u: &TElement, v: &TElement) -> TElement {
        u.t_mul(v, |a, b| TElement::constant(self.mul(a, b)))
    }

    pub fn display<'a>(&'a self, u: &'a CrossedElement) -> DisplayCrossed<'a> {
        DisplayCrossed { ctx: self, u }
    }

    pub fn display_t<'a>(&'a self, u: &'a TElement) -> DisplayT<'a> {
        DisplayT { ctx: self, u }
    }

    /// Renders a basis symbol body like `x^2*y*[a]` (or `1` for the unit).
    pub fn basis_body(&self, b: &Basis) -> String {
        let g = if b.group == self.group.identity() {
            None
        } else {
            Some(format!("[{}]", self.group.name(b.group)))
        };
        match (b.mono == Monomial::ONE, g) {
            (true, None) => "1".into(),
            (true, Some(g)) => g,
            (false, None) => b.mono.to_string(),
            (false, Some(g)) => format!("{}*{}", b.mono, g),
        }
    }

    /// Parses the term grammar, e.g. `(2+1i)*x^2*y*z^3*[a] - 1/2*[b]`.
    pub fn parse(&self, s: &str) -> Result<CrossedElement> {
        parse::parse_element(s, &self.group)
    }

    /// Parses a polynomial (no group symbols other than `[1]`).
    pub fn parse_poly(&self, s: &str) -> Result<Polynomial> {
        parse::parse_polynomial(s, &self.group)
    }

    /// JSON array-of-terms: `[{"coeff": "1/2", "exponents": [1,0,0], "group": "a"}, ...]`.
    pub fn to_json(&self, u: &CrossedElement) -> serde_json::Value {
        serde_json::Value::Array(
            u.terms()
                .rev()
                .map(|(b, c)| {
                    serde_json::json!({
                        "coeff": c.to_string(),
                        "exponents": b.mono.exps(),
                        "group": self.group.name(b.group),
                    })
                })
                .collect(),
        )
    }

    pub fn from_json(&self, v: &serde_json::Value) -> Result<CrossedElement> {
        #[derive(serde::Deserialize)]
        struct Term {
            coeff: GaussScalar,
            exponents: [u32; 3],
            group: String,
        }
        let terms: Vec<Term> = serde_json::from_value(v.clone()).map_err(|e| Error::Json(e.to_string()))?;
        let mut out = CrossedElement::zero();
        for t in terms {
            out.add_term(Basis::new(Monomial::new(t.exponents), self.element(&t.group)?), &t.coeff);
        }
        Ok(out)
    }
}

pub struct DisplayCrossed<'a> {
    ctx: &'a CrossedProduct,
    u: &'a CrossedElement,
}

impl fmt::Display for DisplayCrossed<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.u.is_zero() {
            return write!(f, "0");
        }
        for (k, (b, c)) in self.u.terms().rev().enumerate() {
            write!(f, "{}", poly::render_term(c, &self.ctx.basis_body(b), k == 0))?;
        }
        Ok(())
    }
}

pub struct DisplayT<'a> {
    ctx: &'a CrossedProduct,
    u: &'a TElement,
}

impl fmt::Display for DisplayT<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.u.is_zero() {
            return write!(f, "0");
        }
        for (n, (k, c)) in self.u.iter().enumerate() {
            let body = self.ctx.display(c).to_string();
            let tpow = match k {
                0 => String::new(),
                1 => "t".into(),
                k => format!("t^{k}"),
            };
            if n > 0 {
                write!(f, " + ")?;
            }
            match (k, c.len()) {
                (0, _) => write!(f, "{body}")?,
                (_, 1) => {
                    let (b, s) = c.terms().next().expect("one term");
                    if s.is_one() {
                        if *b == Basis::new(Monomial::ONE, self.ctx.group.identity()) {
                            write!(f, "{tpow}")?
                        } else {
                            write!(f, "{tpow}*{}", self.ctx.basis_body(b))?
                        }
                    } else {
                        write!(f, "{tpow}*({body})")?
                    }
                }
                _ => write!(f, "{tpow}*({body})")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests;
