//! Named `(group, action, cocycle)` presets and their JSON description format.
//!
//! ```json
//! {
//!   "name": "klein-dt",
//!   "factors": [2, 2],
//!   "elements": ["1", "a", "b", "c"],
//!   "action": { "x": ["-1", "-1"], "y": ["1", "-1"], "z": ["-1", "1"] },
//!   "cocycle": { "default": "1", "entries": [["a", "b", "i"], ["b", "a", "-i"]] }
//! }
//! ```
//!
//! `elements` names the group elements in enumeration order (first cyclic
//! factor varying fastest) and may be omitted. `action` gives each variable's
//! character on the generators `e_1, ..., e_r`. Cocycle pairs not listed take
//! `default`; without a default every pair must be listed.

use serde::{Deserialize, Serialize};

use crate::algebra::CrossedProduct;
use crate::error::{Error, Result};
use crate::group::{AbelianGroup, Cocycle, DiagonalAction, VAR_NAMES};
use crate::scalars::GaussScalar;

pub const KLEIN_TRIVIAL: &str = "klein-trivial";
pub const KLEIN_DT: &str = "klein-dt";

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CocycleSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub default: Option<GaussScalar>,
    #[serde(default)]
    pub entries: Vec<(String, String, GaussScalar)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ActionSpec {
    pub x: Vec<GaussScalar>,
    pub y: Vec<GaussScalar>,
    pub z: Vec<GaussScalar>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PresetSpec {
    pub name: String,
    pub factors: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<String>>,
    pub action: ActionSpec,
    pub cocycle: CocycleSpec,
}

impl PresetSpec {
    pub fn build(&self) -> Result<CrossedProduct> {
        let mut group = AbelianGroup::new(self.factors.clone())?;
        if let Some(names) = &self.elements {
            group = group.with_names(names.clone())?;
        }
        let action = DiagonalAction::from_generator_values(
            &group,
            [self.action.x.clone(), self.action.y.clone(), self.action.z.clone()],
        )?;
        let mut cocycle = Cocycle::empty(&group);
        if let Some(d) = &self.cocycle.default {
            for g in group.elements() {
                for h in group.elements() {
                    cocycle.set(g, h, d.clone());
                }
            }
        }
        for (a, b, v) in &self.cocycle.entries {
            let ga = group
                .by_name(a)
                .ok_or_else(|| Error::InvalidGroup(format!("unknown element {a:?}")))?;
            let gb = group
                .by_name(b)
                .ok_or_else(|| Error::InvalidGroup(format!("unknown element {b:?}")))?;
            cocycle.set(ga, gb, v.clone());
        }
        CrossedProduct::new(self.name.clone(), group, action, cocycle)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Json(e.to_string()))
    }
}

fn klein_spec(name: &str, discrete_torsion: bool) -> PresetSpec {
    let s = |v: &str| v.parse::<GaussScalar>().expect("literal");
    let entries = if discrete_torsion {
        [("a", "b", "i"), ("b", "a", "-i"), ("b", "c", "i"), ("c", "b", "-i"), ("c", "a", "i"), ("a", "c", "-i")]
            .iter()
            .map(|(a, b, v)| (a.to_string(), b.to_string(), s(v)))
            .collect()
    } else {
        Vec::new()
    };
    PresetSpec {
        name: name.into(),
        factors: vec![2, 2],
        elements: Some(["1", "a", "b", "c"].iter().map(|n| n.to_string()).collect()),
        // a negates x and z, b negates x and y
        action: ActionSpec {
            x: vec![s("-1"), s("-1")],
            y: vec![s("1"), s("-1")],
            z: vec![s("-1"), s("1")],
        },
        cocycle: CocycleSpec {
            default: Some(s("1")),
            entries,
        },
    }
}

pub fn klein_trivial_spec() -> PresetSpec {
    klein_spec(KLEIN_TRIVIAL, false)
}

pub fn klein_dt_spec() -> PresetSpec {
    klein_spec(KLEIN_DT, true)
}

/// Klein four-group on `C[x,y,z]` with the trivial cocycle.
pub fn klein_trivial() -> CrossedProduct {
    klein_trivial_spec().build().expect("valid preset")
}

/// Klein four-group with the nontrivial (discrete torsion) cocycle.
pub fn klein_dt() -> CrossedProduct {
    klein_dt_spec().build().expect("valid preset")
}

pub fn by_name(name: &str) -> Result<CrossedProduct> {
    match name {
        KLEIN_TRIVIAL => Ok(klein_trivial()),
        KLEIN_DT => Ok(klein_dt()),
        other => Err(Error::UnknownPreset(other.into())),
    }
}

/// Which of the two Klein presets `ctx` is, judged by its cocycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KleinKind {
    Trivial,
    DiscreteTorsion,
}

/// Recognizes the Klein group with the standard action; anything else is `None`.
pub fn klein_kind(ctx: &CrossedProduct) -> Option<KleinKind> {
    let g = ctx.group();
    if g.factors() != [2, 2] {
        return None;
    }
    let (a, b) = (g.by_name("a")?, g.by_name("b")?);
    g.by_name("c")?;
    let reference = klein_trivial();
    for v in 0..VAR_NAMES.len() {
        for (e, re) in [(a, "a"), (b, "b")] {
            let r = reference.group().by_name(re)?;
            if ctx.action().var_scalar(v, e) != reference.action().var_scalar(v, r) {
                return None;
            }
        }
    }
    let alpha_ab = ctx.alpha(a, b);
    if *alpha_ab == GaussScalar::i() && *ctx.alpha(b, a) == -GaussScalar::i() {
        Some(KleinKind::DiscreteTorsion)
    } else if ctx.group().elements().all(|x| {
        ctx.group()
            .elements()
            .all(|y| ctx.alpha(x, y) == ctx.alpha(y, x))
    }) {
        Some(KleinKind::Trivial)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let spec = klein_dt_spec();
        let text = serde_json::to_string_pretty(&spec).unwrap();
        let back = PresetSpec::from_json(&text).unwrap().build().unwrap();
        let orig = klein_dt();
        for g in orig.group().elements() {
            for h in orig.group().elements() {
                assert_eq!(orig.alpha(g, h), back.alpha(g, h));
            }
        }
        assert_eq!(klein_kind(&back), Some(KleinKind::DiscreteTorsion));
        assert_eq!(klein_kind(&klein_trivial()), Some(KleinKind::Trivial));
    }

    #[test]
    fn incomplete_table_rejected() {
        let mut spec = klein_dt_spec();
        spec.cocycle.default = None;
        assert!(matches!(spec.build(), Err(Error::MissingCocycleEntry(..))));
    }

    #[test]
    fn broken_cocycle_rejected() {
        let mut spec = klein_dt_spec();
        spec.cocycle.entries[0].2 = "-i".parse().unwrap();
        assert!(spec.build().is_err());
        assert!(matches!(by_name("nope"), Err(Error::UnknownPreset(_))));
    }
}
