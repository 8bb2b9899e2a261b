//! Assembles `H^1(G, Pic X)` from the exact sequence
//!
//! ```text
//! Pic(X,G) -> Pic(X)^G --δ2--> H^2(G,k^×) -> Br([X/G]) -> H^1(G,Pic X) --δ3--> H^3(G,k^×)
//! ```
//!
//! When `G` fixes a point both connecting maps vanish and `H^2` injects into
//! the Brauer group, so `H^1` is the quotient `Br / H^2`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::brauer::{build_system, solve};
use crate::config::ActionConfig;
use crate::error::{Error, Result};
use crate::finabelian::{
    image, quotient, subgroups_isomorphic_to, CyclicSum, FinAbGroup, IntMatrixHom,
};
use crate::groupcoh::{alternating_pairing, cohomology, h2_pairs, FiniteGroupSpec, QZ};

/// Generator tuples examined when listing the quotients `Br / H^2`.
const CANDIDATE_BUDGET: u128 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum H1Pic {
    Exact {
        exact: FinAbGroup,
    },
    OrderOnly {
        order: u128,
        candidates: Vec<FinAbGroup>,
    },
    Undetermined {
        undetermined: String,
    },
}

impl H1Pic {
    pub fn exact(&self) -> Option<&FinAbGroup> {
        match self {
            H1Pic::Exact { exact } => Some(exact),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Amitsur {
    Zero(String),
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Delta3 {
    Zero(String),
    Nontrivial(String),
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub brauer: FinAbGroup,
    pub h2: FinAbGroup,
    pub h3: FinAbGroup,
    pub h1_pic: H1Pic,
    pub amitsur: Amitsur,
    pub delta3: Delta3,
    pub notes: Vec<String>,
}

/// Restriction of an `H^2` class to one curve, read as a character of `D/I`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueCharacter {
    pub curve_id: String,
    /// Value on each listed generator of the decomposition group.
    pub character: Vec<(Vec<i64>, QZ)>,
    /// Value at each marked point's monodromy.
    pub ramification: Vec<(String, QZ)>,
}

/// Character `x ↦ β(γ, x)` of `D/I`, where `γ` is the inertia generator
/// acting on the normal direction through the primitive root `e^{2πi/d}`.
pub fn h2_residue_character(
    c: &ActionConfig,
    beta: &[i64],
    curve_id: &str,
) -> Result<ResidueCharacter> {
    let FiniteGroupSpec::Abelian(moduli) = &c.group else {
        return Err(Error::Unsupported(format!(
            "residue characters for nonabelian {}",
            c.group
        )));
    };
    let curve = c
        .curve(curve_id)
        .ok_or_else(|| Error::config(format!("unknown curve `{curve_id}`")))?;
    let dec = curve
        .decomposition
        .as_ref()
        .ok_or_else(|| Error::config(format!("curve `{curve_id}` has no decomposition data")))?;
    let pairs = h2_pairs(moduli.len());
    if beta.len() != pairs.len() {
        return Err(Error::config(format!(
            "beta needs {} coefficients for {}, got {}",
            pairs.len(),
            c.group,
            beta.len()
        )));
    }
    let u = curve.normal_character.unwrap_or(1);
    let (_, inv, _) = ext_gcd(u as i64, curve.d as i64);
    let gamma = c.group.power(
        &c.group.normalize(&dec.inertia)?,
        inv.rem_euclid(curve.d as i64) as u64,
    );
    let chi = |x: &[i64]| alternating_pairing(moduli, beta, &gamma, x);
    Ok(ResidueCharacter {
        curve_id: curve_id.to_string(),
        character: dec.generators.iter().map(|x| (x.clone(), chi(x))).collect(),
        ramification: curve
            .monodromy
            .iter()
            .map(|(p, mu)| (p.clone(), chi(mu)))
            .collect(),
    })
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, s, t) = ext_gcd(b, a.rem_euclid(b));
        (g, t, s - a.div_euclid(b) * t)
    }
}

/// Order of the image of `H^2` in the ramification values recorded by the
/// monodromy data. A lower bound for the image of `H^2` in the Brauer group.
pub fn h2_ramification_bound(c: &ActionConfig) -> Result<u128> {
    let FiniteGroupSpec::Abelian(moduli) = &c.group else {
        return Ok(1);
    };
    let pairs = h2_pairs(moduli.len());
    let source: Vec<u64> = pairs
        .iter()
        .map(|&(i, j)| num_integer::gcd(moduli[i], moduli[j]))
        .collect();
    let mut targets = Vec::new();
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for curve in c
        .curves
        .iter()
        .filter(|cv| cv.decomposition.is_some() && !cv.monodromy.is_empty())
    {
        let mut block = vec![vec![0i64; pairs.len()]; curve.monodromy.len()];
        for k in 0..pairs.len() {
            let mut beta = vec![0i64; pairs.len()];
            beta[k] = 1;
            let ch = h2_residue_character(c, &beta, &curve.id)?;
            for (row, (_, v)) in block.iter_mut().zip(&ch.ramification) {
                row[k] = v.scaled(curve.d).expect("residue values are d-torsion") as i64;
            }
        }
        targets.extend(std::iter::repeat_n(curve.d, block.len()));
        rows.extend(block);
    }
    if rows.is_empty() || pairs.is_empty() {
        return Ok(1);
    }
    let h = IntMatrixHom::new(CyclicSum::new(source), CyclicSum::new(targets), rows)?;
    Ok(image(&h)?.order())
}

/// Isomorphism types of `brauer / S` over subgroups `S ≅ h2`, or `None` if
/// there are too many subgroups to list.
fn quotient_candidates(brauer: &FinAbGroup, h2: &FinAbGroup) -> Result<Option<Vec<FinAbGroup>>> {
    if brauer.has_squarefree_exponent() {
        // Every subgroup is a product of elementary abelian primary parts.
        if !h2.has_squarefree_exponent() {
            return Ok(Some(Vec::new()));
        }
        let mut factors = Vec::new();
        let h2_parts = h2.primary_decomposition();
        for (p, exps) in brauer.primary_decomposition() {
            let k = h2_parts.get(&p).map_or(0, Vec::len);
            if k > exps.len() {
                return Ok(Some(Vec::new()));
            }
            factors.extend(std::iter::repeat_n(p, exps.len() - k));
        }
        if h2_parts
            .keys()
            .any(|p| !brauer.primary_decomposition().contains_key(p))
        {
            return Ok(Some(Vec::new()));
        }
        return Ok(Some(vec![FinAbGroup::from_cyclic_factors(&factors)?]));
    }
    let Some(subs) = subgroups_isomorphic_to(brauer, h2, CANDIDATE_BUDGET) else {
        return Ok(None);
    };
    let ambient = CyclicSum::new(brauer.invariant_factors().to_vec());
    let mut types = BTreeSet::new();
    for s in &subs {
        types.insert(quotient(&ambient, s)?.invariant_factors().to_vec());
    }
    types
        .into_iter()
        .map(FinAbGroup::from_invariant_factors)
        .collect::<Result<Vec<_>>>()
        .map(Some)
}

pub fn compute_report(c: &ActionConfig, known_h1: Option<&FinAbGroup>) -> Result<InvariantReport> {
    let brauer = solve(&build_system(c))?.group;
    let table = cohomology(&c.group)?;
    let (h2, h3) = (table.h2, table.h3);
    let mut notes = Vec::new();

    if c.is_cyclic || c.group.is_cyclic() {
        notes.push(
            "cyclic group: delta2 and delta3 vanish, so H1(G, Pic X) = Br([X/G])".to_string(),
        );
        let h1 = brauer.clone();
        check_known(known_h1, &h1)?;
        return Ok(InvariantReport {
            brauer,
            h2,
            h3,
            h1_pic: H1Pic::Exact { exact: h1 },
            amitsur: Amitsur::Zero("G is cyclic".into()),
            delta3: Delta3::Zero("G is cyclic".into()),
            notes,
        });
    }

    if c.has_fixed_point {
        notes
            .push("fixed point: delta2 and delta3 vanish, so 0 -> H2 -> Br -> H1 -> 0".to_string());
        let (b, k) = (brauer.order(), h2.order());
        if b % k != 0 {
            return Err(Error::Inconsistent(format!(
                "|H2| = {k} does not divide |Br| = {b} although G has a fixed point"
            )));
        }
        let h1_pic = if h2.is_trivial() {
            notes.push("H2 is trivial".into());
            H1Pic::Exact {
                exact: brauer.clone(),
            }
        } else {
            match quotient_candidates(&brauer, &h2)? {
                Some(list) if list.is_empty() => {
                    return Err(Error::Inconsistent(format!(
                        "H2 = {h2} does not embed in Br = {brauer}"
                    )));
                }
                Some(list) if list.len() == 1 => {
                    notes
                        .push("every subgroup of Br isomorphic to H2 has the same quotient".into());
                    H1Pic::Exact {
                        exact: list.into_iter().next().expect("one candidate"),
                    }
                }
                Some(list) => H1Pic::OrderOnly {
                    order: b / k,
                    candidates: list,
                },
                None => {
                    notes.push("too many subgroups to list quotient candidates".into());
                    H1Pic::OrderOnly {
                        order: b / k,
                        candidates: Vec::new(),
                    }
                }
            }
        };
        if let Some(h1) = h1_pic.exact() {
            check_known(known_h1, h1)?;
        }
        return Ok(InvariantReport {
            brauer,
            h2,
            h3,
            h1_pic,
            amitsur: Amitsur::Zero("G has a fixed point".into()),
            delta3: Delta3::Zero("G has a fixed point".into()),
            notes,
        });
    }

    notes.push("no fixed point: delta2 and delta3 are not controlled".to_string());
    let lb = h2_ramification_bound(c)?;
    let amitsur = if lb == h2.order() {
        notes.push(format!(
            "H2 injects into the ramification data (image of order {lb})"
        ));
        Amitsur::Zero("H2 injects into Br([X/G])".into())
    } else {
        Amitsur::Unknown
    };
    let delta3 = match known_h1 {
        Some(h1) => {
            let quotient_bound = brauer.order() / lb;
            if h1.order() > quotient_bound {
                Delta3::Nontrivial(format!(
                    "|H1| = {} exceeds |Br| / |image of H2| <= {} / {lb}",
                    h1.order(),
                    brauer.order()
                ))
            } else {
                Delta3::Unknown
            }
        }
        None => Delta3::Unknown,
    };
    Ok(InvariantReport {
        brauer,
        h2,
        h3,
        h1_pic: H1Pic::Undetermined {
            undetermined: "delta2/delta3 not controlled without a fixed point".into(),
        },
        amitsur,
        delta3,
        notes,
    })
}

fn check_known(known: Option<&FinAbGroup>, computed: &FinAbGroup) -> Result<()> {
    match known {
        Some(k) if k != computed => Err(Error::Inconsistent(format!(
            "supplied H1 = {k} differs from the computed {computed}"
        ))),
        _ => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{CurveClass, Decomposition};

    fn square_config(d: u64) -> ActionConfig {
        let mut c = ActionConfig::empty(FiniteGroupSpec::Abelian(vec![d, d]), true).unwrap();
        let mut e = CurveClass::new("E", d, 0);
        e.decomposition = Some(Decomposition {
            generators: vec![vec![1, 0], vec![0, 1]],
            inertia: vec![1, 0],
        });
        c.curves.push(e);
        c.validate().unwrap();
        c
    }

    #[test]
    fn character_is_second_projection() {
        let c = square_config(3);
        let ch = h2_residue_character(&c, &[1], "E").unwrap();
        assert_eq!(
            ch.character,
            vec![(vec![1, 0], QZ::zero()), (vec![0, 1], QZ::new(1, 3))]
        );
        let zero = h2_residue_character(&c, &[0], "E").unwrap();
        assert!(zero.character.iter().all(|(_, v)| v.is_zero()));
    }

    #[test]
    fn normal_character_twists_generator() {
        let mut c = square_config(5);
        c.curves[0].normal_character = Some(2);
        let ch = h2_residue_character(&c, &[1], "E").unwrap();
        // γ = (inertia)^(2^-1 mod 5) = 3 * (1, 0)
        assert_eq!(ch.character[1].1, QZ::new(3, 5));
    }

    #[test]
    fn nonabelian_is_unsupported() {
        let c = ActionConfig::empty(FiniteGroupSpec::named("D8").unwrap(), true).unwrap();
        assert!(matches!(
            h2_residue_character(&c, &[], "E"),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn elementary_quotients() {
        let b = FinAbGroup::power(3, 3);
        let q = quotient_candidates(&b, &FinAbGroup::cyclic(3))
            .unwrap()
            .unwrap();
        assert_eq!(q, vec![FinAbGroup::power(3, 2)]);
        let q = quotient_candidates(
            &FinAbGroup::from_cyclic_factors(&[2, 4]).unwrap(),
            &FinAbGroup::cyclic(2),
        )
        .unwrap()
        .unwrap();
        assert_eq!(q, vec![FinAbGroup::power(2, 2), FinAbGroup::cyclic(4)]);
    }

    #[test]
    fn inconsistent_fixed_point() {
        // (Z/3)^2 with a fixed point but no curves: |H2| = 3 does not divide |Br| = 1.
        let c = ActionConfig::empty(FiniteGroupSpec::Abelian(vec![3, 3]), true).unwrap();
        assert!(matches!(
            compute_report(&c, None),
            Err(Error::Inconsistent(_))
        ));
    }

    #[test]
    fn json_shapes() {
        let h = H1Pic::OrderOnly {
            order: 4,
            candidates: vec![FinAbGroup::cyclic(4)],
        };
        assert_eq!(
            serde_json::to_string(&h).unwrap(),
            r#"{"order":4,"candidates":[[4]]}"#
        );
        let h = H1Pic::Exact {
            exact: FinAbGroup::power(3, 2),
        };
        assert_eq!(serde_json::to_string(&h).unwrap(), r#"{"exact":[3,3]}"#);
        assert_eq!(
            serde_json::to_string(&Delta3::Unknown).unwrap(),
            r#""unknown""#
        );
    }
}
