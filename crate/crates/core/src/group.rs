//! Finite abelian groups acting diagonally on `x, y, z`, and scalar 2-cocycles.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::Monomial;
use crate::error::{Error, Result};
use crate::scalars::GaussScalar;

/// Number of polynomial variables. The Koszul matrices and the operator
/// formulas are written for exactly three.
pub const NVARS: usize = 3;
pub const VAR_NAMES: [&str; NVARS] = ["x", "y", "z"];

/// Index of an element of an [`AbelianGroup`] in its mixed-radix enumeration.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct GroupElement(pub u16);

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// `Z/m_1 x ... x Z/m_r`, elements enumerated with the first factor varying fastest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    factors: Vec<u32>,
    names: Vec<String>,
}

impl AbelianGroup {
    pub fn new(factors: Vec<u32>) -> Result<Self> {
        if factors.contains(&0) {
            return Err(Error::InvalidGroup("cyclic factor of order 0".into()));
        }
        let order: u64 = factors.iter().map(|&m| m as u64).product();
        if order > u16::MAX as u64 {
            return Err(Error::InvalidGroup(format!("group of order {order} is too large")));
        }
        let mut g = AbelianGroup {
            factors,
            names: Vec::new(),
        };
        g.names = g
            .elements()
            .map(|e| {
                let r = g.residues(e);
                if r.iter().all(|&x| x == 0) {
                    "1".to_string()
                } else {
                    let parts: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                    format!("({})", parts.join(","))
                }
            })
            .collect();
        Ok(g)
    }

    /// Replaces the display names. Names must be distinct and must not contain `[` or `]`.
    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.order() {
            return Err(Error::InvalidGroup(format!(
                "{} names given for a group of order {}",
                names.len(),
                self.order()
            )));
        }
        for (k, n) in names.iter().enumerate() {
            if n.is_empty() || n.contains(['[', ']']) || names[..k].contains(n) {
                return Err(Error::InvalidGroup(format!("bad element name {n:?}")));
            }
        }
        self.names = names;
        Ok(self)
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.factors.iter().map(|&m| m as usize).product()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::IDENTITY
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + Clone {
        (0..self.order() as u16).map(GroupElement)
    }

    pub fn residues(&self, g: GroupElement) -> Vec<u32> {
        let mut idx = g.0 as u32;
        self.factors
            .iter()
            .map(|&m| {
                let r = idx % m;
                idx /= m;
                r
            })
            .collect()
    }

    pub fn from_residues(&self, residues: &[u32]) -> Result<GroupElement> {
        if residues.len() != self.factors.len() {
            return Err(Error::InvalidGroup(format!(
                "expected {} residues, got {}",
                self.factors.len(),
                residues.len()
            )));
        }
        let mut idx = 0u32;
        for (&r, &m) in residues.iter().zip(&self.factors).rev() {
            idx = idx * m + r % m;
        }
        Ok(GroupElement(idx as u16))
    }

    pub fn mul(&self, a: GroupElement, b: GroupElement) -> GroupElement {
        let (ra, rb) = (self.residues(a), self.residues(b));
        let sum: Vec<u32> = ra.iter().zip(&rb).map(|(x, y)| x + y).collect();
        self.from_residues(&sum).expect("same arity")
    }

    pub fn inv(&self, a: GroupElement) -> GroupElement {
        let r: Vec<u32> = self
            .residues(a)
            .iter()
            .zip(&self.factors)
            .map(|(&x, &m)| (m - x) % m)
            .collect();
        self.from_residues(&r).expect("same arity")
    }

    /// Generators `e_j` (residue 1 in factor `j`, 0 elsewhere).
    pub fn generators(&self) -> Vec<GroupElement> {
        (0..self.factors.len())
            .map(|j| {
                let mut r = vec![0; self.factors.len()];
                r[j] = 1;
                self.from_residues(&r).expect("same arity")
            })
            .collect()
    }

    pub fn name(&self, g: GroupElement) -> &str {
        &self.names[g.index()]
    }

    pub fn by_name(&self, name: &str) -> Option<GroupElement> {
        self.names.iter().position(|n| n == name).map(|k| GroupElement(k as u16))
    }
}

/// A character `v: G -> {1, i, -1, -i}` for each variable `v`, stored as the
/// exponent `k` with `v(g) = i^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalAction {
    exps: [Vec<u8>; NVARS],
}

impl DiagonalAction {
    /// Builds the characters from their values on the generators `e_j`.
    pub fn from_generator_values(group: &AbelianGroup, values: [Vec<GaussScalar>; NVARS]) -> Result<Self> {
        let mut exps: [Vec<u8>; NVARS] = Default::default();
        for (v, vals) in values.iter().enumerate() {
            let var = VAR_NAMES[v].to_string();
            if vals.len() != group.factors().len() {
                return Err(Error::InvalidCharacter {
                    var,
                    msg: format!("expected {} generator values", group.factors().len()),
                });
            }
            let mut gen_k = Vec::new();
            for (val, &m) in vals.iter().zip(group.factors()) {
                let k = val.root_of_unity_exponent().ok_or_else(|| Error::InvalidCharacter {
                    var: var.clone(),
                    msg: format!("{val} is not a 4th root of unity"),
                })?;
                if !(k as u32 * m).is_multiple_of(4) {
                    return Err(Error::InvalidCharacter {
                        var: var.clone(),
                        msg: format!("{val}^{m} != 1"),
                    });
                }
                gen_k.push(k as u32);
            }
            exps[v] = group
                .elements()
                .map(|g| {
                    let s: u32 = group.residues(g).iter().zip(&gen_k).map(|(r, k)| r * k).sum();
                    (s % 4) as u8
                })
                .collect();
        }
        Ok(DiagonalAction { exps })
    }

    /// Builds the action from a full table `table[v][g]` and checks that each
    /// row is a character valued in 4th roots of unity.
    pub fn from_table(group: &AbelianGroup, table: [Vec<GaussScalar>; NVARS]) -> Result<Self> {
        let mut exps: [Vec<u8>; NVARS] = Default::default();
        for (v, row) in table.iter().enumerate() {
            let var = VAR_NAMES[v].to_string();
            if row.len() != group.order() {
                return Err(Error::InvalidCharacter { var, msg: "table is not total".into() });
            }
            let ks: Option<Vec<u8>> = row.iter().map(|s| s.root_of_unity_exponent()).collect();
            let ks = ks.ok_or_else(|| Error::InvalidCharacter {
                var: var.clone(),
                msg: "value is not a 4th root of unity".into(),
            })?;
            for g in group.elements() {
                for h in group.elements() {
                    let gh = group.mul(g, h);
                    if (ks[g.index()] + ks[h.index()]) % 4 != ks[gh.index()] {
                        return Err(Error::InvalidCharacter {
                            var: var.clone(),
                            msg: format!(
                                "not multiplicative at ({}, {})",
                                group.name(g),
                                group.name(h)
                            ),
                        });
                    }
                }
            }
            exps[v] = ks;
        }
        Ok(DiagonalAction { exps })
    }

    /// `v(g)` for variable index `v`.
    pub fn var_scalar(&self, v: usize, g: GroupElement) -> GaussScalar {
        GaussScalar::pow_root_of_unity(self.exps[v][g.index()] as i64)
    }

    /// Exponent `k` with `m(g) = i^k`.
    pub fn monomial_exponent(&self, m: &Monomial, g: GroupElement) -> u8 {
        let s: u64 = (0..NVARS)
            .map(|v| m.exp(v) as u64 * self.exps[v][g.index()] as u64)
            .sum();
        (s % 4) as u8
    }

    /// `m(g) = prod_v v(g)^{m_v}`: the scalar by which `g` acts on the monomial `m`.
    pub fn monomial_scalar(&self, m: &Monomial, g: GroupElement) -> GaussScalar {
        GaussScalar::pow_root_of_unity(self.monomial_exponent(m, g) as i64)
    }
}

/// Result of [`Cocycle::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleCheck {
    pub normalized: bool,
    /// First triple `(rho, sigma, tau)` violating the 2-cocycle identity.
    pub witness: Option<(GroupElement, GroupElement, GroupElement)>,
}

impl CocycleCheck {
    pub fn is_valid(&self) -> bool {
        self.normalized && self.witness.is_none()
    }
}

/// Scalar-valued 2-cocycle given by an explicit table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle {
    n: usize,
    table: Vec<Option<GaussScalar>>,
}

impl Cocycle {
    pub fn trivial(group: &AbelianGroup) -> Self {
        let n = group.order();
        Cocycle {
            n,
            table: vec![Some(GaussScalar::one()); n * n],
        }
    }

    /// A table with no entries; fill with [`Cocycle::set`].
    pub fn empty(group: &AbelianGroup) -> Self {
        let n = group.order();
        Cocycle {
            n,
            table: vec![None; n * n],
        }
    }

    pub fn set(&mut self, a: GroupElement, b: GroupElement, value: GaussScalar) {
        self.table[a.index() * self.n + b.index()] = Some(value);
    }

    pub fn get(&self, a: GroupElement, b: GroupElement) -> Option<&GaussScalar> {
        self.table.get(a.index() * self.n + b.index())?.as_ref()
    }

    fn value(&self, group: &AbelianGroup, a: GroupElement, b: GroupElement) -> Result<&GaussScalar> {
        self.get(a, b)
            .ok_or_else(|| Error::MissingCocycleEntry(group.name(a).into(), group.name(b).into()))
    }

    /// Checks normalization and `a(s,t) a(r,st) = a(r,s) a(rs,t)` on all `|G|^3` triples.
    pub fn validate(&self, group: &AbelianGroup) -> Result<CocycleCheck> {
        if self.n != group.order() {
            return Err(Error::InvalidGroup("cocycle table size does not match group".into()));
        }
        let one = GaussScalar::one();
        let mut normalized = true;
        for g in group.elements() {
            let e = group.identity();
            if *self.value(group, e, g)? != one || *self.value(group, g, e)? != one {
                normalized = false;
            }
            for h in group.elements() {
                if self.value(group, g, h)?.is_zero() {
                    return Err(Error::InvalidGroup("cocycle value 0 is not a unit".into()));
                }
            }
        }
        for r in group.elements() {
            for s in group.elements() {
                for t in group.elements() {
                    let lhs = self.value(group, s, t)? * self.value(group, r, group.mul(s, t))?;
                    let rhs = self.value(group, r, s)? * self.value(group, group.mul(r, s), t)?;
                    if lhs != rhs {
                        return Ok(CocycleCheck {
                            normalized,
                            witness: Some((r, s, t)),
                        });
                    }
                }
            }
        }
        Ok(CocycleCheck {
            normalized,
            witness: None,
        })
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    #[test]
    fn klein_structure() {
        let g = AbelianGroup::new(vec![2, 2]).unwrap();
        assert_eq!(g.order(), 4);
        let a = g.from_residues(&[1, 0]).unwrap();
        let b = g.from_residues(&[0, 1]).unwrap();
        let c = g.mul(a, b);
        assert_eq!(g.residues(c), vec![1, 1]);
        assert_eq!(g.mul(c, c), g.identity());
        for e in g.elements() {
            assert_eq!(g.inv(e), e);
        }
        let z6 = AbelianGroup::new(vec![6]).unwrap();
        let two = z6.from_residues(&[2]).unwrap();
        assert_eq!(z6.residues(z6.inv(two)), vec![4]);
    }

    #[test]
    fn preset_cocycles_validate() {
        for p in [presets::klein_dt(), presets::klein_trivial()] {
            let check = p.cocycle().validate(p.group()).unwrap();
            assert!(check.is_valid(), "{}", p.name());
        }
    }

    #[test]
    fn flipped_entry_is_caught() {
        let p = presets::klein_dt();
        let g = p.group();
        let (a, b) = (g.by_name("a").unwrap(), g.by_name("b").unwrap());
        let mut bad = p.cocycle().clone();
        bad.set(a, b, GaussScalar::gaussian(0, -1));
        let check = bad.validate(g).unwrap();
        assert!(check.normalized);
        let (r, s, t) = check.witness.expect("violated triple");
        let al = |x, y| bad.get(x, y).unwrap().clone();
        assert_ne!(al(s, t) * al(r, g.mul(s, t)), al(r, s) * al(g.mul(r, s), t));
    }

    #[test]
    fn missing_entry_is_an_error() {
        let g = AbelianGroup::new(vec![2, 2]).unwrap();
        let mut c = Cocycle::empty(&g);
        c.set(g.identity(), g.identity(), GaussScalar::one());
        assert!(matches!(c.validate(&g), Err(Error::MissingCocycleEntry(..))));
    }

    #[test]
    fn discrete_torsion_is_antisymmetric_off_diagonal() {
        let p = presets::klein_dt();
        let g = p.group();
        for s in g.elements().skip(1) {
            for t in g.elements().skip(1) {
                if s != t {
                    let (ast, ats) = (p.cocycle().get(s, t).unwrap(), p.cocycle().get(t, s).unwrap());
                    assert_eq!(*ast, -ats);
                }
            }
        }
    }

    #[test]
    fn monomial_scalars() {
        let p = presets::klein_dt();
        let a = p.group().by_name("a").unwrap();
        let act = p.action();
        assert_eq!(act.monomial_scalar(&Monomial::new([1, 0, 0]), a), GaussScalar::from_int(-1));
        assert_eq!(act.monomial_scalar(&Monomial::new([1, 1, 1]), a), GaussScalar::one());
        for m in [[0, 0, 0], [3, 1, 4], [2, 5, 1]] {
            assert_eq!(act.monomial_scalar(&Monomial::new(m), p.group().identity()), GaussScalar::one());
        }
    }

    #[test]
    fn characters_are_multiplicative() {
        let p = presets::klein_dt();
        let g = p.group();
        for v in 0..NVARS {
            for s in g.elements() {
                for t in g.elements() {
                    assert_eq!(
                        p.action().var_scalar(v, g.mul(s, t)),
                        p.action().var_scalar(v, s) * p.action().var_scalar(v, t)
                    );
                }
            }
        }
    }

    #[test]
    fn bad_characters_rejected() {
        let g = AbelianGroup::new(vec![2]).unwrap();
        let one = || vec![GaussScalar::one()];
        // i has order 4, not dividing 2
        let r = DiagonalAction::from_generator_values(&g, [vec![GaussScalar::i()], one(), one()]);
        assert!(matches!(r, Err(Error::InvalidCharacter { .. })));
        let table = [
            vec![GaussScalar::one(), GaussScalar::i()],
            vec![GaussScalar::one(); 2],
            vec![GaussScalar::one(); 2],
        ];
        assert!(DiagonalAction::from_table(&g, table).is_err());
    }
}
