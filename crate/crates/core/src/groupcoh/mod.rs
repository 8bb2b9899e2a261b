//! Cohomology `H^i(G, k^×)` for `i = 1, 2, 3`.
//!
//! With trivial action, `H^i(G, k^×) ≅ H^i(G, μ_∞) ≅ H^i(G, Q/Z)` for `i > 0`,
//! so everything here is torsion arithmetic and no field is ever touched.
//! Abelian groups use closed formulas in the gcds of a cyclic decomposition;
//! `D8` is table-driven. [`bar_oracle`] recomputes the same groups from
//! explicit chain complexes.

mod bar;
mod group;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finabelian::{factorize, FinAbGroup};

pub use bar::{
    bar_oracle, literal_bar_homology, product_resolution_homology, BAR_ORACLE_MAX_ORDER,
};
pub use group::{FiniteGroupSpec, NamedGroup};

/// `H^1`, `H^2`, `H^3` with coefficients `k^×` (equivalently `Q/Z`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyTable {
    pub h1: FinAbGroup,
    pub h2: FinAbGroup,
    pub h3: FinAbGroup,
}

impl CohomologyTable {
    pub fn get(&self, i: u32) -> Option<&FinAbGroup> {
        match i {
            1 => Some(&self.h1),
            2 => Some(&self.h2),
            3 => Some(&self.h3),
            _ => None,
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

/// Closed-form cohomology of `G`.
///
/// For `G = ⊕ Z/m_i`:
/// `H^1 = ⊕ Z/m_i`, `H^2 = ⊕_{i<j} Z/gcd(m_i, m_j)`,
/// `H^3 = ⊕ Z/m_i ⊕ ⊕_{i<j} Z/gcd(m_i, m_j) ⊕ ⊕_{i<j<k} Z/gcd(m_i, m_j, m_k)`.
pub fn cohomology(g: &FiniteGroupSpec) -> Result<CohomologyTable> {
    g.validate()?;
    match g {
        FiniteGroupSpec::Abelian(m) => {
            let m: Vec<u64> = m.iter().copied().filter(|&x| x > 1).collect();
            let mut pairs = Vec::new();
            let mut triples = Vec::new();
            for i in 0..m.len() {
                for j in i + 1..m.len() {
                    pairs.push(gcd(m[i], m[j]));
                    for k in j + 1..m.len() {
                        triples.push(gcd(gcd(m[i], m[j]), m[k]));
                    }
                }
            }
            let h3: Vec<u64> = m.iter().chain(&pairs).chain(&triples).copied().collect();
            Ok(CohomologyTable {
                h1: FinAbGroup::from_cyclic_factors(&m)?,
                h2: FinAbGroup::from_cyclic_factors(&pairs)?,
                h3: FinAbGroup::from_cyclic_factors(&h3)?,
            })
        }
        FiniteGroupSpec::Named(NamedGroup::D8) => Ok(CohomologyTable {
            h1: FinAbGroup::power(2, 2),
            h2: FinAbGroup::cyclic(2),
            h3: FinAbGroup::from_cyclic_factors(&[2, 2, 4])?,
        }),
    }
}

/// Checks that the `ℓ`-primary part of `H^i(G)` is `H^i` of the `ℓ`-Sylow
/// subgroup, for every prime `ℓ` dividing `|G|`.
pub fn sylow_check(g: &FiniteGroupSpec, i: u32) -> Result<bool> {
    let FiniteGroupSpec::Abelian(m) = g else {
        return Err(Error::Unsupported(
            "Sylow comparison is implemented for abelian groups".into(),
        ));
    };
    let whole = cohomology(g)?;
    let whole_i = whole
        .get(i)
        .ok_or_else(|| Error::Unsupported(format!("degree {i}")))?;
    let order: u64 = m.iter().product();
    for (p, _) in factorize(order) {
        let sylow: Vec<u64> = m
            .iter()
            .map(|&x| {
                factorize(x)
                    .into_iter()
                    .find(|&(q, _)| q == p)
                    .map_or(1, |(q, e)| q.pow(e))
            })
            .filter(|&x| x > 1)
            .collect();
        let local = cohomology(&FiniteGroupSpec::Abelian(sylow))?;
        if whole_i.p_part(p) != *local.get(i).expect("degree checked above") {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A value of `Q/Z`, stored as `num/den` with `0 <= num < den` in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QZ {
    pub num: u64,
    pub den: u64,
}

impl QZ {
    pub fn new(num: i128, den: u64) -> Self {
        assert!(den > 0);
        let r = num.rem_euclid(den as i128) as u64;
        let g = gcd(r, den).max(1);
        if r == 0 {
            QZ { num: 0, den: 1 }
        } else {
            QZ {
                num: r / g,
                den: den / g,
            }
        }
    }

    pub fn zero() -> Self {
        QZ { num: 0, den: 1 }
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// The integer `n` with `self = n/d`, if `d * self = 0`.
    pub fn scaled(&self, d: u64) -> Option<u64> {
        d.is_multiple_of(self.den)
            .then(|| self.num * (d / self.den))
    }

    pub fn add(&self, other: &QZ) -> QZ {
        let l = num_integer::lcm(self.den, other.den);
        QZ::new(
            (self.num * (l / self.den) + other.num * (l / other.den)) as i128,
            l,
        )
    }
}

impl std::fmt::Display for QZ {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.num == 0 {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Index pairs `(i, j)`, `i < j`, in the order used for `H^2` coordinates.
pub fn h2_pairs(rank: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..rank {
        for j in i + 1..rank {
            out.push((i, j));
        }
    }
    out
}

/// The alternating pairing attached to `β = Σ c_ij e_ij ∈ H^2(⊕ Z/m_i, Q/Z)`:
/// `β(x, y) = Σ_{i<j} c_ij (x_i y_j − x_j y_i) / gcd(m_i, m_j)`.
pub fn alternating_pairing(moduli: &[u64], beta: &[i64], x: &[i64], y: &[i64]) -> QZ {
    let pairs = h2_pairs(moduli.len());
    assert_eq!(beta.len(), pairs.len(), "one coefficient per pair i < j");
    let dens: Vec<u64> = pairs
        .iter()
        .map(|&(i, j)| gcd(moduli[i], moduli[j]))
        .collect();
    let l = dens.iter().fold(1u64, |a, &b| num_integer::lcm(a, b));
    let mut acc: i128 = 0;
    for (k, &(i, j)) in pairs.iter().enumerate() {
        let wedge = x[i] as i128 * y[j] as i128 - x[j] as i128 * y[i] as i128;
        acc += beta[k] as i128 * wedge * (l / dens[k]) as i128;
    }
    QZ::new(acc, l)
}
