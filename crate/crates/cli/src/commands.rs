use anyhow::{anyhow, Result};
use serde::Serialize;
use serde_json::{json, Value};

use crossdef::chainmap::{chain_map_check, lift_cochain, mu1_closed_form, Mu1Params};
use crossdef::cohomology::{compare_with_closed_form, hh_graded};
use crossdef::deform::{center_relation, StarContext};
use crossdef::presets::{by_name, klein_kind, KleinKind};
use crossdef::{CrossedElement, CrossedProduct, Error, GaussScalar, Polynomial, TElement};

use crate::verify::{self, Check};
use crate::{Common, Format, Outcome, Params, UsageError};

/// Maps input-related library errors to [`UsageError`].
pub fn usage<T>(r: crossdef::Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { .. }
        | Error::UnknownPreset(_)
        | Error::ParameterOutOfSpace { .. }
        | Error::WrongPreset { .. }
        | Error::Json(_)
        | Error::DivisionByZero => UsageError(e.to_string()).into(),
        other => anyhow!(other),
    })
}

pub fn preset(common: &Common) -> Result<CrossedProduct> {
    usage(by_name(&common.preset))
}

pub fn kind(ctx: &CrossedProduct) -> Result<KleinKind> {
    klein_kind(ctx).ok_or_else(|| UsageError(format!("{} is not a Klein preset", ctx.name())).into())
}

/// `q` from the flags; with no `q` flag at all, the preset default.
pub fn q_params(ctx: &CrossedProduct, p: &Params) -> Result<[Polynomial; 3]> {
    let flags = [&p.q1, &p.q2, &p.q3];
    if flags.iter().all(|f| f.is_none()) {
        let default = match kind(ctx)? {
            KleinKind::DiscreteTorsion => ["1", "1", "1"],
            KleinKind::Trivial => ["y", "x", "z"],
        };
        return default.iter().map(|s| usage(ctx.parse_poly(s))).collect::<Result<Vec<_>>>().map(to_array);
    }
    parse_triple(ctx, flags)
}

pub fn p_params(ctx: &CrossedProduct, p: &Params) -> Result<[Polynomial; 3]> {
    parse_triple(ctx, [&p.p1, &p.p2, &p.p3])
}

pub fn p_given(p: &Params) -> bool {
    p.p1.is_some() || p.p2.is_some() || p.p3.is_some()
}

fn parse_triple(ctx: &CrossedProduct, flags: [&Option<String>; 3]) -> Result<[Polynomial; 3]> {
    flags
        .iter()
        .map(|f| match f {
            Some(s) => usage(ctx.parse_poly(s)),
            None => Ok(Polynomial::zero()),
        })
        .collect::<Result<Vec<_>>>()
        .map(to_array)
}

fn to_array(v: Vec<Polynomial>) -> [Polynomial; 3] {
    v.try_into().expect("three parameters")
}

pub fn render(common: &Common, default: Format, value: &impl Serialize, text: impl FnOnce() -> String) -> Result<String> {
    Ok(match common.format.unwrap_or(default) {
        Format::Json => serde_json::to_string_pretty(value)?,
        Format::Text => text(),
    })
}

pub fn t_json(ctx: &CrossedProduct, u: &TElement) -> Value {
    Value::Array(u.iter().map(|(k, c)| json!({ "t": k, "coeff": ctx.to_json(c) })).collect())
}

pub fn hh(common: &Common, dmax: u32) -> Result<Outcome> {
    let ctx = preset(common)?;
    let mut tables = Vec::new();
    let mut ok = true;
    let mut lines = Vec::new();
    for invariants_only in [false, true] {
        for n in 0..=3 {
            let report = hh_graded(&ctx, n, dmax, invariants_only);
            let mismatches = compare_with_closed_form(&ctx, &report);
            let verdict = match &mismatches {
                Some(m) if m.is_empty() => "match",
                Some(_) => "mismatch",
                None => "no closed form",
            };
            ok &= verdict != "mismatch";
            let space = if invariants_only { "HH^n(A)" } else { "HH^n(R,A)" }.replace('n', &n.to_string());
            for s in &report.summary {
                let parts: Vec<String> = s.by_sigma.iter().map(|(g, d)| format!("{g}:{d}")).collect();
                lines.push(format!("{space} degree {}: {} ({})", s.degree, s.total, parts.join(" ")));
            }
            lines.push(format!("{space} closed form: {verdict}"));
            let mut v = serde_json::to_value(&report)?;
            v["closed_form"] = json!(verdict);
            v["mismatches"] = serde_json::to_value(mismatches.unwrap_or_default())?;
            tables.push(v);
        }
    }
    let value = json!({ "preset": ctx.name(), "d_max": dmax, "tables": tables });
    let text = render(common, Format::Json, &value, || lines.join("\n"))?;
    Ok(Outcome { text, ok })
}

pub fn mu1(common: &Common, params: &Params, u: &str, v: &str) -> Result<Outcome> {
    let ctx = preset(common)?;
    let q = if [&params.q1, &params.q2, &params.q3].iter().all(|f| f.is_none()) {
        [Polynomial::zero(), Polynomial::zero(), Polynomial::zero()]
    } else {
        q_params(&ctx, params)?
    };
    let mu = Mu1Params {
        p: p_params(&ctx, params)?,
        q,
    };
    let (a, b) = (usage(ctx.parse(u))?, usage(ctx.parse(v))?);
    let mut value = CrossedElement::zero();
    for (x, c) in a.terms() {
        for (y, d) in b.terms() {
            value.add_scaled(&usage(mu1_closed_form(&ctx, x, y, &mu))?, &(c * d));
        }
    }
    let f = usage(mu.to_cochain(&ctx))?;
    let lifted = usage(lift_cochain(&ctx, &f, &[a.clone(), b.clone()]))?;
    let agrees = lifted == value;
    let shown = ctx.display(&value).to_string();
    let out = json!({
        "preset": ctx.name(),
        "u": ctx.display(&a).to_string(),
        "v": ctx.display(&b).to_string(),
        "value": shown,
        "terms": ctx.to_json(&value),
        "lift_agrees": agrees,
    });
    let text = render(common, Format::Text, &out, || shown.clone())?;
    Ok(Outcome { text, ok: agrees })
}

pub fn chainmap_check(common: &Common, dmax: u32) -> Result<Outcome> {
    preset(common)?;
    let reports = (1..=3).map(|n| usage(chain_map_check(n, dmax))).collect::<Result<Vec<_>>>()?;
    let ok = reports.iter().all(|r| r.passed());
    let text = render(common, Format::Json, &reports, || {
        reports
            .iter()
            .map(|r| {
                let verdict = if r.passed() { "pass".to_string() } else { format!("FAIL at {:?}", r.witness) };
                format!("psi_{}: {} tuples, {verdict}", r.n, r.checked)
            })
            .collect::<Vec<_>>()
            .join("\n")
    })?;
    Ok(Outcome { text, ok })
}

pub fn hopf_verify(common: &Common, params: &Params, dmax: u32) -> Result<Outcome> {
    let ctx = preset(common)?;
    let q = q_params(&ctx, params)?;
    let p = if p_given(params) { Some(p_params(&ctx, params)?) } else { None };
    let mut checks = verify::bialgebra_checks();
    checks.extend(verify::module_algebra_checks(&ctx, &q, p, dmax)?);
    finish_checks(common, checks)
}

pub fn finish_checks(common: &Common, checks: Vec<Check>) -> Result<Outcome> {
    let ok = checks.iter().all(|c| !c.unexpected());
    let summary = json!({ "ok": ok, "checks": checks });
    let text = render(common, Format::Json, &summary, || verify::text_table(&checks, ok))?;
    Ok(Outcome { text, ok })
}

pub fn deform_mul(common: &Common, params: &Params, indices: Option<Vec<usize>>, u: &str, v: &str) -> Result<Outcome> {
    let ctx = preset(common)?;
    let indices = match indices {
        Some(ix) => ix
            .into_iter()
            .map(|i| {
                (1..=3)
                    .contains(&i)
                    .then(|| i - 1)
                    .ok_or_else(|| anyhow!(UsageError(format!("index {i} is not in 1..3"))))
            })
            .collect::<Result<Vec<_>>>()?,
        None => match kind(&ctx)? {
            KleinKind::DiscreteTorsion => vec![0, 1, 2],
            KleinKind::Trivial => vec![0],
        },
    };
    let q = if [&params.q1, &params.q2, &params.q3].iter().all(|f| f.is_none()) {
        q_params(&ctx, params)?
    } else {
        parse_triple(&ctx, [&params.q1, &params.q2, &params.q3])?
    };
    let star = usage(StarContext::new(&ctx, q, &indices))?;
    let (a, b) = (usage(ctx.parse(u))?, usage(ctx.parse(v))?);
    let product = star.star_mul(&TElement::constant(a.clone()), &TElement::constant(b.clone()));
    let shown = ctx.display_t(&product).to_string();
    let out = json!({
        "preset": ctx.name(),
        "indices": indices.iter().map(|i| i + 1).collect::<Vec<_>>(),
        "u": ctx.display(&a).to_string(),
        "v": ctx.display(&b).to_string(),
        "product": shown,
        "terms": t_json(&ctx, &product),
    });
    let text = render(common, Format::Text, &out, || shown.clone())?;
    Ok(Outcome { text, ok: true })
}

pub fn center(common: &Common, i: u32, j: u32, k: u32, scaling: &str) -> Result<Outcome> {
    let ctx = preset(common)?;
    if kind(&ctx)? != KleinKind::DiscreteTorsion {
        return Err(UsageError("center needs the klein-dt preset".into()).into());
    }
    let s: GaussScalar = scaling
        .parse()
        .map_err(|e: Error| UsageError(format!("scaling: {e}")))?;
    let report = usage(center_relation(i, j, k, &s))?;
    let text = render(common, Format::Json, &report, || {
        let mut lines = vec![
            format!("realized: {}", report.realized_relation),
            format!("target:   {}", report.target_relation),
            format!("matches target: {}", report.matches_target),
        ];
        if let Some(s) = &report.reproducing_scaling {
            lines.push(format!("reproducing scaling: {s}"));
        }
        for c in &report.candidates {
            lines.push(format!("candidate {} (s = {}): {}", c.label, c.scaling, c.relation));
        }
        lines.extend(report.notes.iter().map(|n| format!("note: {n}")));
        lines.join("\n")
    })?;
    Ok(Outcome { text, ok: true })
}
