//! Combinatorial description of a finite group action on a rational surface.
//!
//! A document lists the curve classes with nontrivial inertia (one per orbit
//! of curves), the point orbits where they meet, and the incidences between
//! them. Only quotient-side data enters: inertia orders, genera of quotient
//! curves and how many branches of each curve pass through each point orbit.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groupcoh::FiniteGroupSpec;

/// Decomposition group `D` of a curve together with a distinguished
/// generator of its inertia group `I`, all in group coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Decomposition {
    pub generators: Vec<Vec<i64>>,
    pub inertia: Vec<i64>,
}

/// How `D/I` acts on the curve: its isomorphism type plus free-text
/// fingerprints of the action and of the curve itself.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResidualDescriptor {
    pub order: u64,
    pub cyclic: bool,
    #[serde(default)]
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve_label: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveClass {
    pub id: String,
    /// Order of the (cyclic) inertia group.
    pub d: u64,
    /// Genus of the quotient of the curve by its decomposition group.
    pub g_quotient: u32,
    /// Genus of the curve on the surface itself.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g_upstairs: Option<u32>,
    /// Weight of the inertia generator on the normal bundle, a unit mod `d`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normal_character: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<Decomposition>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<ResidualDescriptor>,
    /// Point id -> element of `D` whose class in `D/I` is the local monodromy.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub monodromy: BTreeMap<String, Vec<i64>>,
}

impl CurveClass {
    /// A bare curve class with no optional data.
    pub fn new(id: impl Into<String>, d: u64, g_quotient: u32) -> Self {
        CurveClass {
            id: id.into(),
            d,
            g_quotient,
            g_upstairs: None,
            normal_character: None,
            decomposition: None,
            residual: None,
            monodromy: BTreeMap::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointOrbit {
    pub id: String,
    #[serde(
        rename = "fixed_by_G",
        default,
        skip_serializing_if = "Option::is_none"
    )]
    pub fixed_by_full_group: Option<bool>,
}

impl PointOrbit {
    pub fn new(id: impl Into<String>) -> Self {
        PointOrbit {
            id: id.into(),
            fixed_by_full_group: None,
        }
    }
}

/// `branches` local branches of `curve` pass through (a representative of) `point`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "(String, String, u32)", into = "(String, String, u32)")]
pub struct Incidence {
    pub point: String,
    pub curve: String,
    pub branches: u32,
}

impl From<(String, String, u32)> for Incidence {
    fn from((point, curve, branches): (String, String, u32)) -> Self {
        Incidence {
            point,
            curve,
            branches,
        }
    }
}

impl From<Incidence> for (String, String, u32) {
    fn from(i: Incidence) -> Self {
        (i.point, i.curve, i.branches)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionConfig {
    pub group: FiniteGroupSpec,
    pub has_fixed_point: bool,
    /// Derived from `group` when parsed or validated.
    #[serde(skip)]
    pub is_cyclic: bool,
    #[serde(default)]
    pub curves: Vec<CurveClass>,
    #[serde(default)]
    pub points: Vec<PointOrbit>,
    #[serde(default)]
    pub incidences: Vec<Incidence>,
    #[serde(default)]
    pub metadata: String,
}

/// A pattern that the point-sum criterion cannot certify. Never fatal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Warning {
    pub message: String,
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

/// Parses and validates a JSON document.
pub fn parse(document: &str) -> Result<ActionConfig> {
    let mut c: ActionConfig =
        serde_json::from_str(document).map_err(|e| Error::config(e.to_string()))?;
    c.validate()?;
    Ok(c)
}

/// Pretty JSON with the same field order as the input schema.
pub fn serialize(c: &ActionConfig) -> String {
    serde_json::to_string_pretty(c).expect("configs serialize")
}

fn check_unique<'a>(kind: &str, ids: impl Iterator<Item = &'a String>) -> Result<()> {
    let mut seen = HashSet::new();
    for id in ids {
        if !seen.insert(id) {
            return Err(Error::config(format!("duplicate id `{id}` among {kind}")));
        }
    }
    Ok(())
}

impl ActionConfig {
    /// A config with no curves or points.
    pub fn empty(group: FiniteGroupSpec, has_fixed_point: bool) -> Result<Self> {
        let mut c = ActionConfig {
            group,
            has_fixed_point,
            is_cyclic: false,
            curves: Vec::new(),
            points: Vec::new(),
            incidences: Vec::new(),
            metadata: String::new(),
        };
        c.validate()?;
        Ok(c)
    }

    pub fn curve(&self, id: &str) -> Option<&CurveClass> {
        self.curves.iter().find(|c| c.id == id)
    }

    /// Incidences of one curve, in document order.
    pub fn incidences_of(&self, curve: &str) -> impl Iterator<Item = &Incidence> {
        let curve = curve.to_string();
        self.incidences.iter().filter(move |i| i.curve == curve)
    }

    /// Checks every invariant and fills in derived fields.
    pub fn validate(&mut self) -> Result<()> {
        self.group
            .validate()
            .map_err(|e| Error::config(e.to_string()))?;
        self.is_cyclic = self.group.is_cyclic();
        if self.is_cyclic && !self.has_fixed_point {
            return Err(Error::config(
                "a cyclic group acting on a rational surface has a fixed point",
            ));
        }
        check_unique("curves", self.curves.iter().map(|c| &c.id))?;
        check_unique("points", self.points.iter().map(|p| &p.id))?;
        let order = self.group.order();
        let points: HashSet<&str> = self.points.iter().map(|p| p.id.as_str()).collect();
        for c in &self.curves {
            self.validate_curve(c, order, &points)?;
        }
        let mut pairs = HashSet::new();
        for inc in &self.incidences {
            if !points.contains(inc.point.as_str()) {
                return Err(Error::config(format!(
                    "incidence references unknown point `{}`",
                    inc.point
                )));
            }
            if self.curve(&inc.curve).is_none() {
                return Err(Error::config(format!(
                    "incidence references unknown curve `{}`",
                    inc.curve
                )));
            }
            if inc.branches == 0 {
                return Err(Error::config(format!(
                    "incidence ({}, {}) must have at least one branch",
                    inc.point, inc.curve
                )));
            }
            if !pairs.insert((&inc.point, &inc.curve)) {
                return Err(Error::config(format!(
                    "duplicate incidence ({}, {})",
                    inc.point, inc.curve
                )));
            }
        }
        Ok(())
    }

    fn validate_curve(&self, c: &CurveClass, order: u64, points: &HashSet<&str>) -> Result<()> {
        let id = &c.id;
        if c.d < 2 {
            return Err(Error::config(format!(
                "curve `{id}`: trivial inertia not allowed (d = {})",
                c.d
            )));
        }
        if !order.is_multiple_of(c.d) {
            return Err(Error::config(format!(
                "curve `{id}`: inertia order {} does not divide |G| = {order}",
                c.d
            )));
        }
        if let Some(u) = c.normal_character {
            if num_integer::gcd(u, c.d) != 1 {
                return Err(Error::config(format!(
                    "curve `{id}`: normal character {u} is not a unit mod {}",
                    c.d
                )));
            }
        }
        if let Some(r) = &c.residual {
            if r.order == 0 {
                return Err(Error::config(format!(
                    "curve `{id}`: residual group of order 0"
                )));
            }
        }
        let g = &self.group;
        let normalize = |x: &[i64]| {
            g.normalize(x)
                .map_err(|e| Error::config(format!("curve `{id}`: {e}")))
        };
        if let Some(dec) = &c.decomposition {
            let gamma = normalize(&dec.inertia)?;
            if g.element_order(&gamma) != c.d {
                return Err(Error::config(format!(
                    "curve `{id}`: inertia generator {:?} has order {}, expected {}",
                    dec.inertia,
                    g.element_order(&gamma),
                    c.d
                )));
            }
            let gens = dec
                .generators
                .iter()
                .map(|x| normalize(x))
                .collect::<Result<Vec<_>>>()?;
            let members = g.generated_subgroup(&gens);
            if !members.contains(&gamma) {
                return Err(Error::config(format!(
                    "curve `{id}`: inertia generator is not in the decomposition group"
                )));
            }
            if gens.iter().any(|x| !g.commute(x, &gamma)) {
                return Err(Error::config(format!(
                    "curve `{id}`: inertia generator is not central in the decomposition group"
                )));
            }
            if let Some(r) = &c.residual {
                let expected = members.len() as u64 / c.d;
                if r.order != expected {
                    return Err(Error::config(format!(
                        "curve `{id}`: residual order {} but |D/I| = {expected}",
                        r.order
                    )));
                }
            }
            for (p, mu) in &c.monodromy {
                if !members.contains(&normalize(mu)?) {
                    return Err(Error::config(format!(
                        "curve `{id}`: monodromy at `{p}` lies outside the decomposition group"
                    )));
                }
            }
        } else if !c.monodromy.is_empty() {
            return Err(Error::config(format!(
                "curve `{id}`: monodromy requires decomposition data"
            )));
        }
        for p in c.monodromy.keys() {
            if !points.contains(p.as_str()) {
                return Err(Error::config(format!(
                    "curve `{id}`: monodromy at unknown point `{p}`"
                )));
            }
        }
        Ok(())
    }
}

/// Patterns that are representable but not certified by the point-sum criterion.
pub fn validate_standard_form(c: &ActionConfig) -> Vec<Warning> {
    let mut out = Vec::new();
    for p in &c.points {
        if !c.incidences.iter().any(|i| i.point == p.id) {
            out.push(Warning {
                message: format!("point `{}` imposes no constraint", p.id),
            });
        }
    }
    for i in &c.incidences {
        if i.branches > 2 {
            out.push(Warning {
                message: format!(
                    "incidence ({}, {}) has {} branches: verify normal-crossing encoding",
                    i.point, i.curve, i.branches
                ),
            });
        }
    }
    for curve in &c.curves {
        for p in curve.monodromy.keys() {
            if !c
                .incidences
                .iter()
                .any(|i| &i.point == p && i.curve == curve.id)
            {
                out.push(Warning {
                    message: format!(
                        "curve `{}` records monodromy at `{p}` without an incidence",
                        curve.id
                    ),
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = r#"{
        "group": {"abelian": [6]},
        "has_fixed_point": true,
        "curves": [{"id": "C", "d": 3, "g_quotient": 1}],
        "points": [{"id": "p"}],
        "incidences": [["p", "C", 1]],
        "metadata": "toy"
    }"#;

    #[test]
    fn parses_and_derives() {
        let c = parse(SMALL).unwrap();
        assert!(c.is_cyclic);
        assert_eq!(c.curves[0].d, 3);
        assert_eq!(
            c.incidences[0],
            Incidence {
                point: "p".into(),
                curve: "C".into(),
                branches: 1
            }
        );
        assert!(validate_standard_form(&c).is_empty());
    }

    #[test]
    fn round_trip() {
        let c = parse(SMALL).unwrap();
        assert_eq!(parse(&serialize(&c)).unwrap(), c);
    }

    fn rejects(doc: &str, needle: &str) {
        let err = parse(doc).unwrap_err().to_string();
        assert!(err.contains(needle), "{err}");
    }

    #[test]
    fn invariant_violations() {
        rejects(
            &SMALL.replace(
                r#""points": [{"id": "p"}]"#,
                r#""points": [{"id": "p"}, {"id": "p"}]"#,
            ),
            "duplicate id",
        );
        rejects(
            &SMALL.replace(r#""d": 3"#, r#""d": 1"#),
            "trivial inertia not allowed",
        );
        rejects(&SMALL.replace(r#""d": 3"#, r#""d": 4"#), "does not divide");
        rejects(
            &SMALL.replace(r#"["p", "C", 1]"#, r#"["q", "C", 1]"#),
            "unknown point",
        );
        rejects(
            &SMALL.replace(r#""has_fixed_point": true"#, r#""has_fixed_point": false"#),
            "cyclic",
        );
        rejects(
            &SMALL.replace(r#""metadata""#, r#""extra": 1, "metadata""#),
            "unknown field",
        );
        rejects(
            &SMALL.replace(
                r#""g_quotient": 1"#,
                r#""g_quotient": 1, "normal_character": 3"#,
            ),
            "unit",
        );
    }

    #[test]
    fn warnings() {
        let c = parse(&SMALL.replace(r#"["p", "C", 1]"#, r#"["p", "C", 3]"#)).unwrap();
        assert!(validate_standard_form(&c)[0]
            .message
            .contains("verify normal-crossing encoding"));
        let c = parse(&SMALL.replace(r#""incidences": [["p", "C", 1]]"#, r#""incidences": []"#))
            .unwrap();
        assert!(validate_standard_form(&c)[0]
            .message
            .contains("imposes no constraint"));
    }

    #[test]
    fn decomposition_checks() {
        let doc = r#"{
            "group": {"abelian": [3, 3]},
            "has_fixed_point": true,
            "curves": [{"id": "E", "d": 3, "g_quotient": 0,
                        "decomposition": {"generators": [[1, 0], [0, 1]], "inertia": [1, 0]},
                        "residual": {"order": 3, "cyclic": true}}]
        }"#;
        parse(doc).unwrap();
        rejects(
            &doc.replace(r#""inertia": [1, 0]"#, r#""inertia": [0, 0]"#),
            "has order 1",
        );
        rejects(
            &doc.replace(r#""order": 3"#, r#""order": 9"#),
            "residual order",
        );
    }
}
