//! The residue congruence system whose solutions are `Br([X/G])`.
//!
//! Each (incidence, branch) carries an unknown ramification value `a` modulo
//! the inertia order `d` of its curve. The values along one curve sum to zero
//! mod `d`, and at every point orbit the values `a/d ∈ Q/Z` of all incident
//! branches sum to zero. Unramified classes on each quotient curve contribute
//! a free summand `(Z/d)^{2g′}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::config::ActionConfig;
use crate::error::{Error, Result};
use crate::finabelian::{
    classify_by_order_census, element_order, for_each_element, kernel_with_orders, CyclicSum,
    FinAbGroup, IntMatrixHom,
};

/// One ramification value: branch `branch` of `curve` at `point`, modulo `modulus`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Unknown {
    pub curve: String,
    pub point: String,
    pub branch: u32,
    pub modulus: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Congruence {
    /// `Σ a_k ≡ 0 (mod modulus)` over the unknowns of one curve.
    CurveReciprocity {
        curve: String,
        modulus: u64,
        terms: Vec<usize>,
    },
    /// `Σ c_k a_k ≡ 0 (mod modulus)` with `c_k = modulus / d_k`.
    PointSum {
        point: String,
        modulus: u64,
        terms: Vec<(usize, u64)>,
    },
}

impl Congruence {
    pub fn modulus(&self) -> u64 {
        match self {
            Congruence::CurveReciprocity { modulus, .. } | Congruence::PointSum { modulus, .. } => {
                *modulus
            }
        }
    }

    /// Coefficients `(unknown index, coefficient)`.
    pub fn coefficients(&self) -> Vec<(usize, u64)> {
        match self {
            Congruence::CurveReciprocity { terms, .. } => terms.iter().map(|&k| (k, 1)).collect(),
            Congruence::PointSum { terms, .. } => terms.clone(),
        }
    }

    pub fn holds(&self, values: &[i64]) -> bool {
        let m = self.modulus() as i128;
        let s: i128 = self
            .coefficients()
            .iter()
            .map(|&(k, c)| values[k] as i128 * c as i128)
            .sum();
        s.rem_euclid(m) == 0
    }
}

/// A block of `(Z/d)^count` unramified generators attached to one curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeBlock {
    pub curve: String,
    pub modulus: u64,
    pub count: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueSystem {
    pub free_part: FinAbGroup,
    pub free_blocks: Vec<FreeBlock>,
    pub unknowns: Vec<Unknown>,
    pub constraints: Vec<Congruence>,
}

/// A generator of the solution group. Ramified generators carry one value per
/// unknown; unramified ones carry a tag `(curve, index)` and zero values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueGenerator {
    pub order: u64,
    pub values: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub free_tag: Option<(String, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrauerResult {
    pub group: FinAbGroup,
    pub generators: Vec<ResidueGenerator>,
}

pub fn build_system(c: &ActionConfig) -> ResidueSystem {
    let mut unknowns = Vec::new();
    let mut constraints = Vec::new();
    let mut free_blocks = Vec::new();
    let mut free_moduli = Vec::new();
    for curve in &c.curves {
        let start = unknowns.len();
        for inc in c.incidences_of(&curve.id) {
            for b in 0..inc.branches {
                unknowns.push(Unknown {
                    curve: curve.id.clone(),
                    point: inc.point.clone(),
                    branch: b,
                    modulus: curve.d,
                });
            }
        }
        if unknowns.len() > start {
            constraints.push(Congruence::CurveReciprocity {
                curve: curve.id.clone(),
                modulus: curve.d,
                terms: (start..unknowns.len()).collect(),
            });
        }
        let count = 2 * curve.g_quotient;
        if count > 0 {
            free_blocks.push(FreeBlock {
                curve: curve.id.clone(),
                modulus: curve.d,
                count,
            });
            free_moduli.extend(std::iter::repeat_n(curve.d, count as usize));
        }
    }
    for p in &c.points {
        let incident: Vec<usize> = (0..unknowns.len())
            .filter(|&k| unknowns[k].point == p.id)
            .collect();
        if incident.is_empty() {
            continue;
        }
        let l = incident
            .iter()
            .fold(1u64, |acc, &k| num_integer::lcm(acc, unknowns[k].modulus));
        constraints.push(Congruence::PointSum {
            point: p.id.clone(),
            modulus: l,
            terms: incident
                .iter()
                .map(|&k| (k, l / unknowns[k].modulus))
                .collect(),
        });
    }
    ResidueSystem {
        free_part: FinAbGroup::from_cyclic_factors(&free_moduli).expect("positive moduli"),
        free_blocks,
        unknowns,
        constraints,
    }
}

impl ResidueSystem {
    pub fn is_satisfied(&self, values: &[i64]) -> bool {
        values.len() == self.unknowns.len() && self.constraints.iter().all(|c| c.holds(values))
    }

    fn constraint_hom(&self) -> Result<IntMatrixHom> {
        let source = CyclicSum::new(self.unknowns.iter().map(|u| u.modulus).collect());
        let target = CyclicSum::new(self.constraints.iter().map(Congruence::modulus).collect());
        let rows = self
            .constraints
            .iter()
            .map(|c| {
                let mut row = vec![0i64; self.unknowns.len()];
                for (k, coef) in c.coefficients() {
                    row[k] = (coef % c.modulus()) as i64;
                }
                row
            })
            .collect();
        IntMatrixHom::new(source, target, rows)
    }
}

/// Solution group: the kernel of the stacked constraints plus the free part.
pub fn solve(s: &ResidueSystem) -> Result<BrauerResult> {
    let (kernel, gens) = if s.unknowns.is_empty() {
        (FinAbGroup::trivial(), Vec::new())
    } else {
        kernel_with_orders(&s.constraint_hom()?)?
    };
    let mut generators: Vec<ResidueGenerator> = gens
        .into_iter()
        .map(|(order, values)| ResidueGenerator {
            order,
            values,
            free_tag: None,
        })
        .collect();
    for block in &s.free_blocks {
        for k in 0..block.count {
            generators.push(ResidueGenerator {
                order: block.modulus,
                values: vec![0; s.unknowns.len()],
                free_tag: Some((block.curve.clone(), k)),
            });
        }
    }
    if let Some(bad) = generators.iter().find(|g| !s.is_satisfied(&g.values)) {
        return Err(Error::Inconsistent(format!(
            "solver produced a non-solution {:?}",
            bad.values
        )));
    }
    Ok(BrauerResult {
        group: kernel.direct_sum(&s.free_part),
        generators,
    })
}

/// Largest product of unknown moduli that [`brute_force`] will enumerate.
pub const BRUTE_FORCE_LIMIT: u128 = 1_000_000;

/// Enumerates every assignment, keeps the solutions and classifies them by
/// their element-order census.
pub fn brute_force(s: &ResidueSystem) -> Result<FinAbGroup> {
    let size: u128 = s.unknowns.iter().map(|u| u.modulus as u128).product();
    if size > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            what: "brute force",
            detail: format!("{size} assignments > {BRUTE_FORCE_LIMIT}"),
        });
    }
    let moduli: Vec<i64> = s.unknowns.iter().map(|u| u.modulus as i64).collect();
    let mut census: BTreeMap<u64, u64> = BTreeMap::new();
    for_each_element(&moduli, |x| {
        if s.constraints.iter().all(|c| c.holds(x)) {
            *census.entry(element_order(x, &moduli)).or_default() += 1;
        }
    });
    Ok(classify_by_order_census(&census)?.direct_sum(&s.free_part))
}
