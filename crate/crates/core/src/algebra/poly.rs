use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::group::{NVARS, VAR_NAMES};
use crate::scalars::GaussScalar;

/// Exponent vector `x^a y^b z^c`.
///
/// Ordered by graded reverse lexicographic order with `x > y > z`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial([u32; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    pub const fn new(e: [u32; NVARS]) -> Self {
        Monomial(e)
    }

    pub fn var(v: usize) -> Self {
        let mut e = [0; NVARS];
        e[v] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> [u32; NVARS] {
        self.0
    }

    pub fn exp(&self, v: usize) -> u32 {
        self.0[v]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a += b;
        }
        Monomial(e)
    }

    /// `self / other`, or `None` when an exponent would go negative.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a = a.checked_sub(b)?;
        }
        Some(Monomial(e))
    }

    /// Multiplies by `var^k` for signed `k`; negative exponents kill the term.
    pub fn shift(&self, v: usize, k: i64) -> Option<Monomial> {
        let mut e = self.0;
        let n = e[v] as i64 + k;
        if n < 0 {
            return None;
        }
        e[v] = n as u32;
        Some(Monomial(e))
    }

    /// Builds a monomial from signed exponents; `None` if any is negative.
    pub fn from_signed(e: [i64; NVARS]) -> Option<Monomial> {
        let mut out = [0u32; NVARS];
        for (o, x) in out.iter_mut().zip(e) {
            if x < 0 {
                return None;
            }
            *o = x as u32;
        }
        Some(Monomial(out))
    }

    /// All monomials of total degree exactly `d`, in descending term order.
    pub fn of_degree(d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        for a in (0..=d).rev() {
            for b in (0..=d - a).rev() {
                out.push(Monomial([a, b, d - a - b]));
            }
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    /// All monomials of total degree at most `d`, grouped by degree.
    pub fn up_to_degree(d: u32) -> Vec<Monomial> {
        (0..=d).flat_map(Monomial::of_degree).collect()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            // smaller exponent in the last differing variable is larger
            for v in (0..NVARS).rev() {
                match self.0[v].cmp(&other.0[v]) {
                    Ordering::Equal => continue,
                    o => return o.reverse(),
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for v in 0..NVARS {
            match self.0[v] {
                0 => {}
                1 => parts.push(VAR_NAMES[v].to_string()),
                e => parts.push(format!("{}^{}", VAR_NAMES[v], e)),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Renders `coeff * body` in the term grammar, where `body` is `"1"` for a bare scalar.
pub(crate) fn render_term(coeff: &GaussScalar, body: &str, first: bool) -> String {
    let (neg, mag) = if coeff.is_real() && coeff.re() < &num_rational::BigRational::zero() {
        (true, -coeff)
    } else {
        (false, coeff.clone())
    };
    let mag_str = if mag.is_real() {
        mag.to_string()
    } else {
        format!("({mag})")
    };
    let core = match (mag.is_one(), body == "1") {
        (true, true) => "1".to_string(),
        (true, false) => body.to_string(),
        (false, true) => mag_str,
        (false, false) => format!("{mag_str}*{body}"),
    };
    match (first, neg) {
        (true, false) => core,
        (true, true) => format!("-{core}"),
        (false, false) => format!(" + {core}"),
        (false, true) => format!(" - {core}"),
    }
}

/// Sparse polynomial in `x, y, z` over `Q(i)`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, GaussScalar>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::term(Monomial::ONE, GaussScalar::one())
    }

    pub fn constant(c: GaussScalar) -> Self {
        Polynomial::term(Monomial::ONE, c)
    }

    pub fn monomial(m: Monomial) -> Self {
        Polynomial::term(m, GaussScalar::one())
    }

    pub fn term(m: Monomial, c: GaussScalar) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(m, &c);
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: &GaussScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
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

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> GaussScalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(*m, c);
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(*m, &-c);
        }
        out
    }

    pub fn scale(&self, k: &GaussScalar) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in self.terms() {
            out.add_term(*m, &(c * k));
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m1, c1) in self.terms() {
            for (m2, c2) in other.terms() {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        (0..e).fold(Polynomial::one(), |acc, _| acc.mul(self))
    }

    /// Applies `f` to every monomial, dropping terms where it returns `None`.
    pub fn map_monomials(&self, f: impl Fn(&Monomial) -> Option<(Monomial, GaussScalar)>) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in self.terms() {
            if let Some((m2, k)) = f(m) {
                out.add_term(m2, &(c * &k));
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            write!(f, "{}", render_term(c, &m.to_string(), k == 0))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_order() {
        let x = Monomial::var(0);
        let y = Monomial::var(1);
        let z = Monomial::var(2);
        assert!(x > y && y > z);
        // x*z < y^2 in grevlex
        assert!(Monomial::new([1, 0, 1]) < Monomial::new([0, 2, 0]));
        assert!(Monomial::new([0, 0, 3]) > Monomial::new([2, 0, 0]));
        let d3 = Monomial::of_degree(3);
        assert_eq!(d3.len(), 10);
        assert!(d3.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn negative_exponents_kill() {
        let m = Monomial::new([1, 0, 2]);
        assert_eq!(m.shift(0, -1), Some(Monomial::new([0, 0, 2])));
        assert_eq!(m.shift(1, -1), None);
        assert_eq!(Monomial::from_signed([0, -1, 0]), None);
    }

    #[test]
    fn polynomial_arith_and_render() {
        let x = Polynomial::monomial(Monomial::var(0));
        let y = Polynomial::monomial(Monomial::var(1));
        let s = x.add(&y);
        let sq = s.mul(&s);
        assert_eq!(sq.to_string(), "x^2 + 2*x*y + y^2");
        assert!(s.sub(&s).is_zero());
        let c = Polynomial::constant(GaussScalar::gaussian(1, 1)).mul(&x);
        assert_eq!(c.to_string(), "(1 + i)*x");
        assert_eq!(x.scale(&GaussScalar::from_int(-1)).to_string(), "-x");
    }
}
