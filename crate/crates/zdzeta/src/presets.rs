//! Built-in example actions. The same specs ship as JSON files in the
//! repository's `specs/` directory; these constructors are the canonical
//! definitions.

use crate::action::{ActionSpec, Component, CurveComponent};
use crate::funcfield::{PolyFp, RatFunc};
use crate::multipoly::MultiPoly;

fn t_plus_one(p: u64) -> RatFunc {
    RatFunc::from_poly(PolyFp::new(p, vec![1, 1]))
}

fn ledrappier_curve() -> CurveComponent {
    CurveComponent::new(
        2,
        vec![RatFunc::t(2), t_plus_one(2)],
        vec![PolyFp::t(2), PolyFp::new(2, vec![1, 1])],
        1,
        Some(MultiPoly::parse(2, 2, "1:0,0; 1:1,0; 1:0,1").unwrap()),
    )
    .expect("builtin curve is valid")
}

/// The trivial action on a point: no components, every count is 1.
pub fn point() -> ActionSpec {
    ActionSpec::new(2, false, vec![]).unwrap()
}

/// The two-dimensional three-dot system: characteristic 2, images t and
/// t + 1 with both inverted.
pub fn ledrappier() -> ActionSpec {
    ActionSpec::new(2, false, vec![Component::Curve(ledrappier_curve())]).unwrap()
}

/// Shift extension of [`ledrappier`] to dimension three.
pub fn ledrappier3() -> ActionSpec {
    ActionSpec::new(3, true, vec![Component::Curve(ledrappier_curve())]).unwrap()
}

/// Single automorphism extending the full 2-shift: image t with t and
/// t - 1 inverted. Counts are 2^(n - nu(n)).
pub fn pshift() -> ActionSpec {
    let curve = CurveComponent::new(
        2,
        vec![RatFunc::t(2)],
        vec![PolyFp::t(2), PolyFp::new(2, vec![1, 1])],
        1,
        None,
    )
    .unwrap();
    ActionSpec::new(1, false, vec![Component::Curve(curve)]).unwrap()
}

/// The plain full 2-shift as a one-dimensional curve: image t, only t
/// inverted. Its zeta function is rational.
pub fn full2shift() -> ActionSpec {
    let curve = CurveComponent::new(2, vec![RatFunc::t(2)], vec![PolyFp::t(2)], 1, None).unwrap();
    ActionSpec::new(1, false, vec![Component::Curve(curve)]).unwrap()
}

/// Full two-dimensional 2-shift: a single principal component.
pub fn principal2() -> ActionSpec {
    ActionSpec::new(2, false, vec![Component::Principal { p: 2, mult: 1 }]).unwrap()
}

/// Positive-entropy mix: principal 2-component plus the three-dot curve.
pub fn mixed() -> ActionSpec {
    ActionSpec::new(
        2,
        false,
        vec![
            Component::Principal { p: 2, mult: 1 },
            Component::Curve(ledrappier_curve()),
        ],
    )
    .unwrap()
}

pub fn by_name(name: &str) -> Option<ActionSpec> {
    match name {
        "point" => Some(point()),
        "ledrappier" => Some(ledrappier()),
        "ledrappier3" => Some(ledrappier3()),
        "pshift" => Some(pshift()),
        "full2shift" => Some(full2shift()),
        "principal2" => Some(principal2()),
        "mixed" => Some(mixed()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_presets_build() {
        for name in [
            "point",
            "ledrappier",
            "ledrappier3",
            "pshift",
            "full2shift",
            "principal2",
            "mixed",
        ] {
            let spec = by_name(name).unwrap();
            assert!(spec.dim() >= 1);
        }
        assert!(by_name("nope").is_none());
    }
}
