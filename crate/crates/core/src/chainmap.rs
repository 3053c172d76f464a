//! Comparison maps from the bar resolution of `R` to its Koszul resolution,
//! the lift of Koszul cochains to Hochschild cochains on `A`, and the closed
//! form of the resulting infinitesimal deformations for the Klein presets.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Basis, CrossedElement, CrossedProduct, Monomial, Polynomial};
use crate::cohomology::{Cochain, COMPONENTS};
use crate::error::{Error, Result};
use crate::group::{GroupElement, NVARS};
use crate::scalars::GaussScalar;

/// Element of `R ⊗ R`, i.e. of `R^e`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Tensor2 {
    terms: BTreeMap<(Monomial, Monomial), GaussScalar>,
}

impl Tensor2 {
    pub fn zero() -> Self {
        Tensor2::default()
    }

    pub fn pure(a: Monomial, b: Monomial) -> Self {
        let mut t = Tensor2::zero();
        t.add_term(a, b, &GaussScalar::one());
        t
    }

    pub fn add_term(&mut self, a: Monomial, b: Monomial, c: &GaussScalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((a, b)).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn add_scaled(&mut self, other: &Tensor2, k: &GaussScalar) {
        for ((a, b), c) in &other.terms {
            self.add_term(*a, *b, &(c * k));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Monomial, Monomial), &GaussScalar)> {
        self.terms.iter()
    }

    /// `(l ⊗ r) · t`, the `R^e` action `(l ⊗ r)(u ⊗ v) = lu ⊗ vr`.
    pub fn act(&self, l: &Monomial, r: &Monomial) -> Tensor2 {
        let mut out = Tensor2::zero();
        for ((a, b), c) in &self.terms {
            out.add_term(l.mul(a), b.mul(r), c);
        }
        out
    }

    /// `x_v ⊗ 1 - 1 ⊗ x_v` applied to `self`.
    fn koszul_gen(&self, v: usize) -> Tensor2 {
        let xv = Monomial::var(v);
        let mut out = self.act(&xv, &Monomial::ONE);
        out.add_scaled(&self.act(&Monomial::ONE, &xv), &GaussScalar::from_int(-1));
        out
    }
}

/// Element of the Koszul resolution in degree `n`: `(R^e)^{(1,3,3,1)[n]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KoszulChain {
    degree: usize,
    comps: Vec<Tensor2>,
}

impl KoszulChain {
    pub fn zero(degree: usize) -> Result<Self> {
        let n = COMPONENTS.get(degree).ok_or(Error::DegreeOutOfRange(degree))?.len();
        Ok(KoszulChain {
            degree,
            comps: vec![Tensor2::zero(); n],
        })
    }

    pub fn new(degree: usize, comps: Vec<Tensor2>) -> Result<Self> {
        let n = COMPONENTS.get(degree).ok_or(Error::DegreeOutOfRange(degree))?.len();
        if comps.len() != n {
            return Err(Error::DegreeOutOfRange(degree));
        }
        Ok(KoszulChain { degree, comps })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn components(&self) -> &[Tensor2] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Tensor2::is_zero)
    }

    fn add_scaled(&mut self, other: &KoszulChain, k: &GaussScalar) {
        for (a, b) in self.comps.iter_mut().zip(&other.comps) {
            a.add_scaled(b, k);
        }
    }

    fn act(&self, l: &Monomial, r: &Monomial) -> KoszulChain {
        KoszulChain {
            degree: self.degree,
            comps: self.comps.iter().map(|t| t.act(l, r)).collect(),
        }
    }

    /// The Koszul differential, lowering the degree by one.
    pub fn differential(&self) -> Result<KoszulChain> {
        let c = &self.comps;
        let lin = |terms: &[(&Tensor2, usize, i64)]| {
            let mut out = Tensor2::zero();
            for (t, v, s) in terms {
                out.add_scaled(&t.koszul_gen(*v), &GaussScalar::from_int(*s));
            }
            out
        };
        let comps = match self.degree {
            1 => vec![lin(&[(&c[0], 0, 1), (&c[1], 1, 1), (&c[2], 2, 1)])],
            2 => vec![
                lin(&[(&c[0], 2, -1), (&c[2], 1, -1)]),
                lin(&[(&c[1], 2, -1), (&c[2], 0, 1)]),
                lin(&[(&c[0], 0, 1), (&c[1], 1, 1)]),
            ],
            3 => vec![lin(&[(&c[0], 1, -1)]), lin(&[(&c[0], 0, 1)]), lin(&[(&c[0], 2, 1)])],
            n => return Err(Error::DegreeOutOfRange(n)),
        };
        KoszulChain::new(self.degree - 1, comps)
    }
}

/// Element of `R^{⊗(n+2)}`: sums of `a_0 ⊗ m_1 ⊗ ... ⊗ m_n ⊗ a_{n+1}` with monomial slots.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BarTensor {
    degree: usize,
    terms: BTreeMap<Vec<Monomial>, GaussScalar>,
}

impl BarTensor {
    pub fn zero(degree: usize) -> Self {
        BarTensor {
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// `1 ⊗ m_1 ⊗ ... ⊗ m_n ⊗ 1`.
    pub fn interior(ms: &[Monomial]) -> Self {
        let mut slots = vec![Monomial::ONE];
        slots.extend_from_slice(ms);
        slots.push(Monomial::ONE);
        let mut b = BarTensor::zero(ms.len());
        b.add_term(slots, &GaussScalar::one());
        b
    }

    pub fn add_term(&mut self, slots: Vec<Monomial>, c: &GaussScalar) {
        assert_eq!(slots.len(), self.degree + 2, "slot count");
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(slots.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&slots);
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Monomial>, &GaussScalar)> {
        self.terms.iter()
    }

    /// Bar differential `sum_i (-1)^i a_0 ⊗ ... ⊗ a_i a_{i+1} ⊗ ...`.
    pub fn differential(&self) -> Result<BarTensor> {
        if self.degree == 0 {
            return Err(Error::DegreeOutOfRange(0));
        }
        let mut out = BarTensor::zero(self.degree - 1);
        for (slots, c) in &self.terms {
            for i in 0..=self.degree {
                let mut s = slots[..i].to_vec();
                s.push(slots[i].mul(&slots[i + 1]));
                s.extend_from_slice(&slots[i + 2..]);
                let sign = if i % 2 == 0 { c.clone() } else { -c };
                out.add_term(s, &sign);
            }
        }
        Ok(out)
    }
}

fn mono(e: [i64; NVARS]) -> Option<Monomial> {
    Monomial::from_signed(e)
}

fn push(t: &mut Tensor2, l: [i64; NVARS], r: [i64; NVARS], sign: i64) {
    if let (Some(a), Some(b)) = (mono(l), mono(r)) {
        t.add_term(a, b, &GaussScalar::from_int(sign));
    }
}

fn exps(m: &Monomial) -> [i64; NVARS] {
    m.exps().map(i64::from)
}

/// `psi_n(1 ⊗ m_1 ⊗ ... ⊗ m_n ⊗ 1)`.
fn psi_interior(ms: &[Monomial]) -> Result<Vec<Tensor2>> {
    let mut out = vec![Tensor2::zero(); COMPONENTS.get(ms.len()).ok_or(Error::DegreeOutOfRange(ms.len()))?.len()];
    match ms {
        [] => out[0] = Tensor2::pure(Monomial::ONE, Monomial::ONE),
        [m] => {
            let [i, j, k] = exps(m);
            for l in 1..=i {
                push(&mut out[0], [i - l, j, k], [l - 1, 0, 0], 1);
            }
            for l in 1..=j {
                push(&mut out[1], [0, j - l, k], [i, l - 1, 0], 1);
            }
            for l in 1..=k {
                push(&mut out[2], [0, 0, k - l], [i, j, l - 1], 1);
            }
        }
        [m1, m2] => {
            let ([i, j, k], [r, s, t]) = (exps(m1), exps(m2));
            for m in 1..=t {
                for l in 1..=i {
                    push(&mut out[0], [i - l, j + s, k + t - m], [r + l - 1, 0, m - 1], 1);
                }
                for l in 1..=j + s {
                    push(&mut out[1], [0, j + s - l, k + t - m], [i + r, l - 1, m - 1], 1);
                }
                for l in 1..=s {
                    push(&mut out[1], [i, j + s - l, k + t - m], [r, l - 1, m - 1], -1);
                }
            }
            for m in 1..=s {
                for l in 1..=i {
                    push(&mut out[2], [i - l, j + s - m, k], [r + l - 1, m - 1, t], 1);
                }
            }
        }
        [m1, m2, m3] => {
            let ([i, j, k], [r, s, t], [u, v, w]) = (exps(m1), exps(m2), exps(m3));
            for n in 1..=v {
                for m in 1..=t {
                    for l in 1..=i {
                        push(&mut out[0], [i - l, j + s + n - 1, k + t - m], [r + u + l - 1, v - n, w + m - 1], -1);
                    }
                }
            }
        }
        _ => return Err(Error::DegreeOutOfRange(ms.len())),
    }
    Ok(out)
}

/// The comparison map `psi_n`, extended `R^e`-linearly over the boundary slots.
pub fn psi(n: usize, input: &BarTensor) -> Result<KoszulChain> {
    if input.degree != n || n > 3 {
        return Err(Error::DegreeOutOfRange(n));
    }
    let mut out = KoszulChain::zero(n)?;
    for (slots, c) in input.terms() {
        let inner = KoszulChain::new(n, psi_interior(&slots[1..=n])?)?;
        out.add_scaled(&inner.act(&slots[0], &slots[n + 1]), c);
    }
    Ok(out)
}

/// All `n`-tuples of monomials with total degree at most `d_max`.
pub fn monomial_tuples(n: usize, d_max: u32) -> Vec<Vec<Monomial>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for m in Monomial::up_to_degree(d_max) {
        for mut rest in monomial_tuples(n - 1, d_max - m.degree()) {
            rest.insert(0, m);
            out.push(rest);
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainMapReport {
    pub n: usize,
    pub d_max: u32,
    pub checked: usize,
    /// Exponent vectors of the first slot tuple `(a_0, m_1, ..., m_n, a_{n+1})` where the square fails to commute.
    pub witness: Option<Vec<[u32; NVARS]>>,
}

impl ChainMapReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// Checks `d_Koszul ∘ psi_n = psi_{n-1} ∘ d_bar` on every `a_0 ⊗ m_1 ⊗ ... ⊗ m_n ⊗ a_{n+1}`
/// of monomials with total degree `<= d_max`.
pub fn chain_map_check(n: usize, d_max: u32) -> Result<ChainMapReport> {
    if !(1..=3).contains(&n) {
        return Err(Error::DegreeOutOfRange(n));
    }
    let tuples = monomial_tuples(n + 2, d_max);
    let witness = tuples.par_iter().find_first(|ms| {
        let mut b = BarTensor::zero(n);
        b.add_term(ms.to_vec(), &GaussScalar::one());
        let lhs = psi(n, &b).and_then(|k| k.differential());
        let rhs = b.differential().and_then(|d| psi(n - 1, &d));
        lhs != rhs
    });
    Ok(ChainMapReport {
        n,
        d_max,
        checked: tuples.len(),
        witness: witness.map(|ms| ms.iter().map(Monomial::exps).collect()),
    })
}

fn embed(m: &Monomial) -> CrossedElement {
    CrossedElement::basis(*m, GroupElement::IDENTITY)
}

/// Evaluates a degree-`n` Koszul cochain on a Koszul chain: `u ⊗ v ↦ u f_i v`, summed.
pub fn pair(ctx: &CrossedProduct, f: &Cochain, k: &KoszulChain) -> Result<CrossedElement> {
    if f.degree() != k.degree() {
        return Err(Error::DegreeOutOfRange(f.degree()));
    }
    let mut out = CrossedElement::zero();
    for (fi, t) in f.components().iter().zip(k.components()) {
        for ((u, v), c) in t.terms() {
            let val = ctx.mul(&ctx.mul(&embed(u), fi), &embed(v));
            out.add_scaled(&val, c);
        }
    }
    Ok(out)
}

/// The Hochschild cochain attached to `f`, evaluated on basis symbols.
///
/// `f~(p_1 g_1 ⊗ ... ⊗ p_n g_n) = f(psi_n(1 ⊗ p_1 ⊗ g_1.p_2 ⊗ ... ⊗ (g_1...g_{n-1}).p_n ⊗ 1)) g_1 ... g_n`
pub fn lift_basis(ctx: &CrossedProduct, f: &Cochain, args: &[Basis]) -> Result<CrossedElement> {
    let n = f.degree();
    if !(1..=3).contains(&n) || args.len() != n {
        return Err(Error::DegreeOutOfRange(n));
    }
    let mut scalar = GaussScalar::one();
    let mut acting = ctx.group().identity();
    let mut slots = Vec::with_capacity(n);
    for b in args {
        scalar = scalar * ctx.monomial_scalar(&b.mono, acting);
        slots.push(b.mono);
        acting = ctx.group().mul(acting, b.group);
    }
    let k = psi(n, &BarTensor::interior(&slots))?;
    let mut out = pair(ctx, f, &k)?.scale(&scalar);
    for b in args {
        out = ctx.mul(&out, &CrossedElement::basis(Monomial::ONE, b.group));
    }
    Ok(out)
}

/// Multilinear extension of [`lift_basis`].
pub fn lift_cochain(ctx: &CrossedProduct, f: &Cochain, args: &[CrossedElement]) -> Result<CrossedElement> {
    fn go(
        ctx: &CrossedProduct,
        f: &Cochain,
        args: &[CrossedElement],
        chosen: &mut Vec<Basis>,
        coeff: GaussScalar,
        out: &mut CrossedElement,
    ) -> Result<()> {
        let Some((head, rest)) = args.split_first() else {
            out.add_scaled(&lift_basis(ctx, f, chosen)?, &coeff);
            return Ok(());
        };
        for (b, c) in head.terms() {
            chosen.push(*b);
            go(ctx, f, rest, chosen, &coeff * c, out)?;
            chosen.pop();
        }
        Ok(())
    }
    if args.len() != f.degree() {
        return Err(Error::DegreeOutOfRange(f.degree()));
    }
    let mut out = CrossedElement::zero();
    go(ctx, f, args, &mut Vec::new(), GaussScalar::one(), &mut out)?;
    Ok(out)
}

/// Parameters `(p_1, p_2, p_3; q_1 [a]; q_2 [c]; q_3 [b])` of a degree-2 class for the Klein presets.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Mu1Params {
    pub p: [Polynomial; 3],
    pub q: [Polynomial; 3],
}

/// Group elements paired with `q_1, q_2, q_3`.
pub const Q_ELEMENTS: [&str; 3] = ["a", "c", "b"];

impl Mu1Params {
    pub fn q_only(q: [Polynomial; 3]) -> Self {
        Mu1Params { p: Default::default(), q }
    }

    pub fn p_only(p: [Polynomial; 3]) -> Self {
        Mu1Params { p, q: Default::default() }
    }

    /// The Koszul 2-cochain `(p_1 + q_1 [a], p_2 + q_2 [c], p_3 + q_3 [b])`.
    pub fn to_cochain(&self, ctx: &CrossedProduct) -> Result<Cochain> {
        let mut comps = Vec::new();
        for k in 0..3 {
            let g = ctx.element(Q_ELEMENTS[k])?;
            let c = CrossedElement::from_poly(&self.p[k], ctx.group().identity())
                .add(&CrossedElement::from_poly(&self.q[k], g));
            comps.push(c);
        }
        Cochain::new(2, comps)
    }
}

/// The closed form of the infinitesimal deformation on a pair of basis symbols.
pub fn mu1_closed_form(ctx: &CrossedProduct, u: &Basis, v: &Basis, params: &Mu1Params) -> Result<CrossedElement> {
    let [i, j, k] = exps(&u.mono);
    let [l, m, n] = exps(&v.mono);
    let sign = |e: i64| GaussScalar::from_int(if e % 2 == 0 { 1 } else { -1 });
    let id = ctx.group().identity();
    let mut inner = CrossedElement::zero();
    let parts = [
        ([i + l - 1, j + m, k + n - 1], i * n, sign(l)),
        ([i + l, j + m - 1, k + n - 1], j * n, sign(m)),
        ([i + l - 1, j + m - 1, k + n], i * m, sign(l)),
    ];
    for (slot, (e, coeff, s)) in parts.into_iter().enumerate() {
        let Some(mono) = Monomial::from_signed(e) else {
            continue;
        };
        if coeff == 0 {
            continue;
        }
        let front = CrossedElement::basis(mono, id);
        let mut bracket = CrossedElement::from_poly(&params.p[slot], id).scale(&GaussScalar::from_int(coeff));
        if coeff % 2 != 0 {
            let g = ctx.element(Q_ELEMENTS[slot])?;
            bracket = bracket.add(&CrossedElement::from_poly(&params.q[slot], g).scale(&s));
        }
        inner = inner.add(&ctx.mul(&front, &bracket));
    }
    let sigma_tau = ctx.mul(
        &CrossedElement::basis(Monomial::ONE, u.group),
        &CrossedElement::basis(Monomial::ONE, v.group),
    );
    Ok(ctx.mul(&inner, &sigma_tau).scale(&ctx.monomial_scalar(&v.mono, u.group)))
}

/// Bilinear extension of a map on basis pairs.
pub fn bilinear(mu: impl Fn(&Basis, &Basis) -> CrossedElement, u: &CrossedElement, v: &CrossedElement) -> CrossedElement {
    let mut out = CrossedElement::zero();
    for (bu, cu) in u.terms() {
        for (bv, cv) in v.terms() {
            out.add_scaled(&mu(bu, bv), &(cu * cv));
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct CocycleReport {
    pub d_max: u32,
    pub checked: usize,
    /// First basis triple `(u, v, w)` violating the identity, rendered.
    pub witness: Option<[String; 3]>,
}

impl CocycleReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// All basis triples with total polynomial degree at most `d_max`.
pub fn basis_tuples(ctx: &CrossedProduct, n: usize, d_max: u32) -> Vec<Vec<Basis>> {
    let groups: Vec<GroupElement> = ctx.group().elements().collect();
    let mut out = Vec::new();
    for ms in monomial_tuples(n, d_max) {
        let mut partial: Vec<Vec<Basis>> = vec![Vec::new()];
        for m in &ms {
            partial = partial
                .into_iter()
                .flat_map(|p| {
                    groups.iter().map(move |g| {
                        let mut q = p.clone();
                        q.push(Basis::new(*m, *g));
                        q
                    })
                })
                .collect();
        }
        out.extend(partial);
    }
    out
}

/// Checks `mu(u,v)w + mu(uv,w) = mu(u,vw) + u mu(v,w)` on basis triples of degree `<= d_max`.
pub fn cocycle_check(
    ctx: &CrossedProduct,
    mu: impl Fn(&Basis, &Basis) -> CrossedElement + Sync,
    d_max: u32,
) -> CocycleReport {
    let triples = basis_tuples(ctx, 3, d_max);
    let e = |b: &Basis| CrossedElement::basis(b.mono, b.group);
    let witness = triples.par_iter().find_first(|t| {
        let (u, v, w) = (e(&t[0]), e(&t[1]), e(&t[2]));
        let m = |a: &CrossedElement, b: &CrossedElement| bilinear(&mu, a, b);
        let lhs = ctx.mul(&m(&u, &v), &w).add(&m(&ctx.mul(&u, &v), &w));
        let rhs = m(&u, &ctx.mul(&v, &w)).add(&ctx.mul(&u, &m(&v, &w)));
        lhs != rhs
    });
    CocycleReport {
        d_max,
        checked: triples.len(),
        witness: witness.map(|t| [0, 1, 2].map(|k| ctx.basis_body(&t[k]))),
    }
}
