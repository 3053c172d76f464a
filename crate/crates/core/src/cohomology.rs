//! Koszul cochains with coefficients in `A`, their differentials and group
//! action, and graded computation of `HH^n(R, A)` and its invariants `HH^n(A)`.
//!
//! A degree-`n` cochain has one component per `n`-subset of `{x, y, z}`:
//!
//! | degree | components        |
//! |--------|-------------------|
//! | 0      | `()`              |
//! | 1      | `x, y, z`         |
//! | 2      | `xz, yz, xy`      |
//! | 3      | `xyz`             |
//!
//! The differentials preserve the *weight* of a single-term cochain, namely
//! the exponent vector of its coefficient minus the indicator of its
//! component's subset. Each `(weight, group element)` slice is therefore a
//! subcomplex of dimension at most `(1, 3, 3, 1)` and is solved on its own.

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Basis, CrossedElement, CrossedProduct, Monomial};
use crate::error::{Error, Result};
use crate::group::{GroupElement, NVARS};
use crate::linalg::{self, Vector};
use crate::presets::KleinKind;
use crate::scalars::GaussScalar;

/// Variable subsets indexing the components in each degree.
pub const COMPONENTS: [&[&[usize]]; 4] = [&[&[]], &[&[0], &[1], &[2]], &[&[0, 2], &[1, 2], &[0, 1]], &[&[0, 1, 2]]];

pub const COMPONENT_LABELS: [&[&str]; 4] = [&["1"], &["x", "y", "z"], &["xz", "yz", "xy"], &["xyz"]];

/// A degree-`n` Koszul cochain: an element of `A^{(1,3,3,1)[n]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochain {
    degree: usize,
    comps: Vec<CrossedElement>,
}

impl Cochain {
    pub fn new(degree: usize, comps: Vec<CrossedElement>) -> Result<Self> {
        let expected = COMPONENTS.get(degree).ok_or(Error::DegreeOutOfRange(degree))?.len();
        if comps.len() != expected {
            return Err(Error::DegreeOutOfRange(degree));
        }
        Ok(Cochain { degree, comps })
    }

    pub fn zero(degree: usize) -> Result<Self> {
        let n = COMPONENTS.get(degree).ok_or(Error::DegreeOutOfRange(degree))?.len();
        Ok(Cochain {
            degree,
            comps: vec![CrossedElement::zero(); n],
        })
    }

    /// Single-term cochain with `u` in component `comp`.
    pub fn single(degree: usize, comp: usize, u: CrossedElement) -> Result<Self> {
        let mut c = Cochain::zero(degree)?;
        *c.comps.get_mut(comp).ok_or(Error::DegreeOutOfRange(degree))? = u;
        Ok(c)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn components(&self) -> &[CrossedElement] {
        &self.comps
    }

    pub fn component(&self, i: usize) -> &CrossedElement {
        &self.comps[i]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(CrossedElement::is_zero)
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.degree, other.degree);
        Cochain {
            degree: self.degree,
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn scale(&self, k: &GaussScalar) -> Cochain {
        Cochain {
            degree: self.degree,
            comps: self.comps.iter().map(|a| a.scale(k)).collect(),
        }
    }

    pub fn render(&self, ctx: &CrossedProduct) -> Vec<String> {
        self.comps.iter().map(|u| ctx.display(u).to_string()).collect()
    }
}

fn var_element(v: usize) -> CrossedElement {
    CrossedElement::basis(Monomial::var(v), GroupElement::IDENTITY)
}

/// `x_v u - u x_v`; on `p gbar` this is `(1 - x_v(g)) x_v p gbar`.
pub fn commutator(ctx: &CrossedProduct, v: usize, u: &CrossedElement) -> CrossedElement {
    let xv = var_element(v);
    ctx.mul(&xv, u).sub(&ctx.mul(u, &xv))
}

/// The transposed Koszul differential from degree `n` to `n + 1`.
pub fn koszul_differential(ctx: &CrossedProduct, c: &Cochain) -> Result<Cochain> {
    let [f, g, h] = [0, 1, 2].map(|v| move |u: &CrossedElement| commutator(ctx, v, u));
    let comps = match c.degree {
        0 => {
            let u = &c.comps[0];
            vec![f(u), g(u), h(u)]
        }
        1 => {
            let [u1, u2, u3] = [&c.comps[0], &c.comps[1], &c.comps[2]];
            vec![h(u1).neg().add(&f(u3)), h(u2).neg().add(&g(u3)), g(u1).neg().add(&f(u2))]
        }
        2 => {
            let [u1, u2, u3] = [&c.comps[0], &c.comps[1], &c.comps[2]];
            vec![g(u1).neg().add(&f(u2)).add(&h(u3))]
        }
        n => return Err(Error::DegreeOutOfRange(n)),
    };
    Cochain::new(c.degree + 1, comps)
}

/// Scalar `prod_{v in S} v(g^-1)` attached to a component subset.
fn component_character(ctx: &CrossedProduct, subset: &[usize], g: GroupElement) -> GaussScalar {
    let ginv = ctx.group().inv(g);
    let mut e = [0u32; NVARS];
    for &v in subset {
        e[v] = 1;
    }
    ctx.monomial_scalar(&Monomial::new(e), ginv)
}

/// The group action on cochains: character of the component times conjugation by `gbar`.
pub fn g_action(ctx: &CrossedProduct, g: GroupElement, c: &Cochain) -> Cochain {
    let comps = COMPONENTS[c.degree]
        .iter()
        .zip(&c.comps)
        .map(|(s, u)| ctx.inner_action(g, u).scale(&component_character(ctx, s, g)))
        .collect();
    Cochain {
        degree: c.degree,
        comps,
    }
}

/// Averages the action over the group.
pub fn invariant_projector(ctx: &CrossedProduct, c: &Cochain) -> Cochain {
    let mut acc = Cochain::zero(c.degree).expect("valid degree");
    for g in ctx.group().elements() {
        acc = acc.add(&g_action(ctx, g, c));
    }
    acc.scale(&GaussScalar::from_ratio(1, ctx.group().order() as i64))
}

/// One nonzero `(sigma, weight)` slice of a cohomology table.
#[derive(Clone, Debug, Serialize)]
pub struct SliceRow {
    pub n: usize,
    pub sigma: String,
    /// Polynomial degree of the cochain coefficients.
    pub degree: u32,
    /// Koszul weight: coefficient exponents minus the component indicator.
    pub multidegree: [i64; NVARS],
    pub dim: usize,
    /// Representatives, each as its list of rendered components.
    pub basis: Vec<Vec<String>>,
    #[serde(skip)]
    pub cochains: Vec<Cochain>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeSummary {
    pub degree: u32,
    /// `(sigma, dim)` for every group element, in enumeration order.
    pub by_sigma: Vec<(String, usize)>,
    pub total: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct GradedSubspaceReport {
    pub n: usize,
    pub preset: String,
    pub invariants_only: bool,
    pub d_max: u32,
    pub rows: Vec<SliceRow>,
    pub summary: Vec<DegreeSummary>,
}

impl GradedSubspaceReport {
    pub fn dim(&self, sigma: &str, degree: u32) -> usize {
        self.summary
            .iter()
            .find(|s| s.degree == degree)
            .and_then(|s| s.by_sigma.iter().find(|(g, _)| g == sigma))
            .map_or(0, |(_, d)| *d)
    }

    pub fn total(&self, degree: u32) -> usize {
        self.summary.iter().find(|s| s.degree == degree).map_or(0, |s| s.total)
    }
}

/// Coordinates of one slice in one cochain degree: `(component, monomial)` pairs,
/// sorted so that larger monomials come first.
fn slice_coords(n: usize, w: [i64; NVARS]) -> Vec<(usize, Monomial)> {
    let mut out: Vec<(usize, Monomial)> = COMPONENTS[n]
        .iter()
        .enumerate()
        .filter_map(|(i, s)| {
            let mut e = w;
            for &v in *s {
                e[v] += 1;
            }
            Monomial::from_signed(e).map(|m| (i, m))
        })
        .collect();
    out.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    out
}

struct Slice<'a> {
    ctx: &'a CrossedProduct,
    tau: GroupElement,
    w: [i64; NVARS],
}

impl Slice<'_> {
    fn to_cochain(&self, n: usize, v: &[GaussScalar]) -> Cochain {
        let mut c = Cochain::zero(n).expect("valid degree");
        for ((comp, m), x) in slice_coords(n, self.w).into_iter().zip(v) {
            c.comps[comp].add_term(Basis::new(m, self.tau), x);
        }
        c
    }

    fn to_vector(&self, c: &Cochain) -> Vector {
        slice_coords(c.degree, self.w)
            .into_iter()
            .map(|(comp, m)| c.comps[comp].coeff(&Basis::new(m, self.tau)))
            .collect()
    }

    fn dim(&self, n: usize) -> usize {
        slice_coords(n, self.w).len()
    }

    fn unit(&self, n: usize, i: usize) -> Vector {
        let mut v = vec![GaussScalar::zero(); self.dim(n)];
        v[i] = GaussScalar::one();
        v
    }

    /// Spanning set of the cochains under consideration in degree `n`.
    fn domain(&self, n: usize, invariants_only: bool) -> Vec<Vector> {
        let units: Vec<Vector> = (0..self.dim(n)).map(|i| self.unit(n, i)).collect();
        if !invariants_only {
            return units;
        }
        let projected: Vec<Vector> = units
            .iter()
            .map(|u| self.to_vector(&invariant_projector(self.ctx, &self.to_cochain(n, u))))
            .collect();
        linalg::span_basis(&projected, self.dim(n))
    }

    fn apply_d(&self, n: usize, v: &[GaussScalar]) -> Vector {
        let c = koszul_differential(self.ctx, &self.to_cochain(n, v)).expect("degree below 3");
        self.to_vector(&c)
    }

    fn cohomology(&self, n: usize, invariants_only: bool) -> Vec<Vector> {
        let dim = self.dim(n);
        let domain = self.domain(n, invariants_only);
        if domain.is_empty() {
            return Vec::new();
        }
        let kernel: Vec<Vector> = if n < 3 {
            let images: Vec<Vector> = domain.iter().map(|v| self.apply_d(n, v)).collect();
            let m = linalg::Matrix::from_columns(&images, self.dim(n + 1));
            m.kernel()
                .into_iter()
                .map(|c| {
                    let mut v = vec![GaussScalar::zero(); dim];
                    for (k, d) in c.iter().zip(&domain) {
                        for (x, y) in v.iter_mut().zip(d) {
                            *x += &(k * y);
                        }
                    }
                    v
                })
                .collect()
        } else {
            domain
        };
        let image: Vec<Vector> = if n > 0 {
            self.domain(n - 1, invariants_only)
                .iter()
                .map(|v| self.apply_d(n - 1, v))
                .collect()
        } else {
            Vec::new()
        };
        linalg::quotient_basis(&kernel, &image, dim)
    }
}

/// Weights `w` with entries `>= -1`, `|w| = s`, for which degree `n` has a coordinate.
fn weights(n: usize, s: i64) -> Vec<[i64; NVARS]> {
    let mut out = Vec::new();
    for a in -1..=s + 2 {
        for b in -1..=s + 2 - a {
            let c = s - a - b;
            if c < -1 {
                continue;
            }
            let w = [a, b, c];
            if !slice_coords(n, w).is_empty() {
                out.push(w);
            }
        }
    }
    out
}

/// Graded `HH^n(R, A)` (or `HH^n(A)` when `invariants_only`) for coefficient degrees `<= d_max`.
///
/// Degrees above 3 are identically zero and produce an empty table.
pub fn hh_graded(ctx: &CrossedProduct, n: usize, d_max: u32, invariants_only: bool) -> GradedSubspaceReport {
    let mut jobs = Vec::new();
    if n <= 3 {
        for d in 0..=d_max as i64 {
            for w in weights(n, d - n as i64) {
                for tau in ctx.group().elements() {
                    jobs.push((d as u32, w, tau));
                }
            }
        }
    }
    let rows: Vec<SliceRow> = jobs
        .into_par_iter()
        .filter_map(|(degree, w, tau)| {
            let slice = Slice { ctx, tau, w };
            let reps = slice.cohomology(n, invariants_only);
            if reps.is_empty() {
                return None;
            }
            let cochains: Vec<Cochain> = reps.iter().map(|v| slice.to_cochain(n, v)).collect();
            Some(SliceRow {
                n,
                sigma: ctx.group().name(tau).to_string(),
                degree,
                multidegree: w,
                dim: reps.len(),
                basis: cochains.iter().map(|c| c.render(ctx)).collect(),
                cochains,
            })
        })
        .collect();
    let summary = (0..=d_max)
        .map(|degree| {
            let by_sigma: Vec<(String, usize)> = ctx
                .group()
                .elements()
                .map(|g| {
                    let name = ctx.group().name(g).to_string();
                    let dim = rows
                        .iter()
                        .filter(|r| r.degree == degree && r.sigma == name)
                        .map(|r| r.dim)
                        .sum();
                    (name, dim)
                })
                .collect();
            let total = by_sigma.iter().map(|(_, d)| d).sum();
            DegreeSummary {
                degree,
                by_sigma,
                total,
            }
        })
        .collect();
    GradedSubspaceReport {
        n,
        preset: ctx.name().to_string(),
        invariants_only,
        d_max,
        rows,
        summary,
    }
}

/// Closed-form dimensions for the two Klein presets, by monomial counting.
pub mod closed_form {
    use serde::Serialize;

    use super::GradedSubspaceReport;
    use crate::algebra::Monomial;
    use crate::presets::KleinKind;

    fn parity(m: &Monomial) -> [u32; 3] {
        m.exps().map(|e| e % 2)
    }

    fn count(d: u32, allowed: &[[u32; 3]]) -> usize {
        Monomial::of_degree(d).iter().filter(|m| allowed.contains(&parity(m))).count()
    }

    const CENTER: [[u32; 3]; 2] = [[0, 0, 0], [1, 1, 1]];
    const LIKE_X: [[u32; 3]; 2] = [[1, 0, 0], [0, 1, 1]];
    const LIKE_Y: [[u32; 3]; 2] = [[0, 1, 0], [1, 0, 1]];
    const LIKE_Z: [[u32; 3]; 2] = [[0, 0, 1], [1, 1, 0]];

    /// Dimension of the `sigma`-part of `HH^n` in coefficient degree `d`.
    pub fn dim(kind: KleinKind, n: usize, sigma: &str, d: u32, invariants_only: bool) -> usize {
        let all = Monomial::of_degree(d).len();
        if !invariants_only {
            return match (n, sigma) {
                (0 | 3, "1") => all,
                (1 | 2, "1") => 3 * all,
                (2 | 3, "a" | "b" | "c") => 1,
                _ => 0,
            };
        }
        let dt = kind == KleinKind::DiscreteTorsion;
        // parity of d for which the fixed line of a nontrivial sigma survives
        let q_ok = |odd_for_dt: bool| ((d % 2 == 1) == odd_for_dt) == dt;
        match (n, sigma) {
            (0, "1") | (3, "1") => count(d, &CENTER),
            (1, "1") => count(d, &LIKE_X) + count(d, &LIKE_Y) + count(d, &LIKE_Z),
            (2, "1") => count(d, &LIKE_Y) + count(d, &LIKE_X) + count(d, &LIKE_Z),
            (2, "a" | "b" | "c") => usize::from(q_ok(false)),
            (3, "a" | "b" | "c") => usize::from(q_ok(true)),
            _ => 0,
        }
    }

    #[derive(Clone, Debug, Serialize)]
    pub struct Mismatch {
        pub degree: u32,
        pub sigma: String,
        pub computed: usize,
        pub expected: usize,
    }

    /// Every `(degree, sigma)` where the computed table disagrees with the closed form.
    pub fn compare(report: &GradedSubspaceReport, kind: KleinKind) -> Vec<Mismatch> {
        let mut out = Vec::new();
        for s in &report.summary {
            for (sigma, computed) in &s.by_sigma {
                let expected = dim(kind, report.n, sigma, s.degree, report.invariants_only);
                if *computed != expected {
                    out.push(Mismatch {
                        degree: s.degree,
                        sigma: sigma.clone(),
                        computed: *computed,
                        expected,
                    });
                }
            }
        }
        out
    }
}

/// `closed_form::compare` for presets recognized as Klein; `None` otherwise.
pub fn compare_with_closed_form(ctx: &CrossedProduct, report: &GradedSubspaceReport) -> Option<Vec<closed_form::Mismatch>> {
    crate::presets::klein_kind(ctx).map(|k: KleinKind| closed_form::compare(report, k))
}
