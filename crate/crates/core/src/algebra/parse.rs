//! Term grammar shared by polynomials and crossed-product elements.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := rational ['i'] | 'i' | var ['^' int] | '[' name ']' | '(' scalar ')'
//! ```

use num_traits::One;

use super::element::{Basis, CrossedElement};
use super::poly::{Monomial, Polynomial};
use crate::error::{Error, Result};
use crate::group::{AbelianGroup, GroupElement, VAR_NAMES};
use crate::scalars::{GaussScalar, ScalarParser};

struct TermParser<'s> {
    inner: ScalarParser<'s>,
}

impl<'s> TermParser<'s> {
    fn src(&self) -> &'s str {
        self.inner.src
    }

    fn peek(&self) -> Option<u8> {
        self.src().as_bytes().get(self.inner.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t')) {
            self.inner.pos += 1;
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::parse(self.src(), self.inner.pos, msg)
    }

    fn factor(
        &mut self,
        group: &AbelianGroup,
        coeff: &mut GaussScalar,
        mono: &mut Monomial,
        g: &mut Option<GroupElement>,
    ) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            Some(b'0'..=b'9') => {
                let q = self.inner.rational()?.expect("digit seen");
                let mut v = GaussScalar::new(q, Default::default());
                if self.peek() == Some(b'i') {
                    self.inner.pos += 1;
                    v = v * GaussScalar::i();
                }
                *coeff = &*coeff * &v;
            }
            Some(b'i') => {
                self.inner.pos += 1;
                *coeff = &*coeff * &GaussScalar::i();
            }
            Some(b'(') => {
                self.inner.pos += 1;
                let v = self.inner.sum()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.inner.pos += 1;
                *coeff = &*coeff * &v;
            }
            Some(b'[') => {
                let start = self.inner.pos + 1;
                let end = self.src()[start..]
                    .find(']')
                    .map(|k| start + k)
                    .ok_or_else(|| self.err("unterminated group symbol"))?;
                let name = self.src()[start..end].trim();
                let e = group
                    .by_name(name)
                    .ok_or_else(|| self.err(&format!("unknown group element {name:?}")))?;
                if g.is_some() {
                    return Err(self.err("at most one group symbol per term"));
                }
                *g = Some(e);
                self.inner.pos = end + 1;
            }
            Some(c) if VAR_NAMES.iter().any(|v| v.as_bytes()[0] == c) => {
                let v = VAR_NAMES.iter().position(|v| v.as_bytes()[0] == c).expect("matched");
                self.inner.pos += 1;
                let mut e = 1u32;
                if self.peek() == Some(b'^') {
                    self.inner.pos += 1;
                    let start = self.inner.pos;
                    while matches!(self.peek(), Some(b'0'..=b'9')) {
                        self.inner.pos += 1;
                    }
                    e = self.src()[start..self.inner.pos]
                        .parse()
                        .map_err(|_| Error::parse(self.src(), start, "expected exponent"))?;
                }
                let mut exps = [0u32; 3];
                exps[v] = e;
                *mono = mono.mul(&Monomial::new(exps));
            }
            _ => return Err(self.err("expected a factor")),
        }
        Ok(())
    }

    fn term(&mut self, group: &AbelianGroup) -> Result<(GaussScalar, Basis)> {
        let mut coeff = GaussScalar::one();
        let mut mono = Monomial::ONE;
        let mut g = None;
        loop {
            self.factor(group, &mut coeff, &mut mono, &mut g)?;
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.inner.pos += 1;
            } else {
                break;
            }
        }
        Ok((coeff, Basis::new(mono, g.unwrap_or(group.identity()))))
    }

    fn expr(&mut self, group: &AbelianGroup) -> Result<CrossedElement> {
        let mut out = CrossedElement::zero();
        self.skip_ws();
        let mut first = true;
        while self.inner.pos < self.src().len() {
            let negative = match self.peek() {
                Some(b'+') => {
                    self.inner.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.inner.pos += 1;
                    true
                }
                _ if first => false,
                _ => return Err(self.err("expected '+' or '-'")),
            };
            let (c, b) = self.term(group)?;
            out.add_term(b, &if negative { -c } else { c });
            first = false;
            self.skip_ws();
        }
        if first {
            return Err(self.err("empty expression"));
        }
        Ok(out)
    }
}

pub(crate) fn parse_element(s: &str, group: &AbelianGroup) -> Result<CrossedElement> {
    let mut p = TermParser {
        inner: ScalarParser { src: s, pos: 0 },
    };
    p.expr(group)
}

pub(crate) fn parse_polynomial(s: &str, group: &AbelianGroup) -> Result<Polynomial> {
    let e = parse_element(s, group)?;
    let mut p = Polynomial::zero();
    for (b, c) in e.terms() {
        if b.group != group.identity() {
            return Err(Error::parse(s, 0, "group symbol in a polynomial"));
        }
        p.add_term(b.mono, c);
    }
    Ok(p)
}
