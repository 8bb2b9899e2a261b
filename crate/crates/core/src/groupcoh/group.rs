use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finabelian::{element_order, FinAbGroup};

/// Nonabelian groups known by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum NamedGroup {
    /// Dihedral group of order 8, `<r, s | r^4, s^2, srs = r^-1>`.
    /// Elements are written `r^a s^b` with coordinates `[a, b]`.
    D8,
}

impl FromStr for NamedGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "D8" => Ok(NamedGroup::D8),
            other => Err(Error::UnknownGroup(other.to_string())),
        }
    }
}

impl TryFrom<String> for NamedGroup {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<NamedGroup> for String {
    fn from(g: NamedGroup) -> Self {
        g.to_string()
    }
}

impl fmt::Display for NamedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedGroup::D8 => write!(f, "D8"),
        }
    }
}

/// A finite group: either `⊕ Z/m_i` for a list of cyclic orders (not
/// necessarily invariant factors; the empty list is the trivial group) or a
/// named group from the registry.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum FiniteGroupSpec {
    Abelian(Vec<u64>),
    Named(NamedGroup),
}

impl fmt::Display for FiniteGroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiniteGroupSpec::Abelian(m) if m.is_empty() => write!(f, "1"),
            FiniteGroupSpec::Abelian(m) => {
                let parts: Vec<String> = m.iter().map(|x| format!("Z/{x}")).collect();
                write!(f, "{}", parts.join(" + "))
            }
            FiniteGroupSpec::Named(n) => write!(f, "{n}"),
        }
    }
}

impl FiniteGroupSpec {
    pub fn named(name: &str) -> Result<Self> {
        Ok(FiniteGroupSpec::Named(name.parse()?))
    }

    pub fn validate(&self) -> Result<()> {
        if let FiniteGroupSpec::Abelian(m) = self {
            if let Some(&bad) = m.iter().find(|&&x| x < 2) {
                return Err(Error::InvalidGroup(format!("cyclic factor {bad} < 2")));
            }
        }
        self.checked_order().map(|_| ())
    }

    fn checked_order(&self) -> Result<u64> {
        match self {
            FiniteGroupSpec::Abelian(m) => m.iter().try_fold(1u64, |acc, &x| {
                acc.checked_mul(x)
                    .ok_or_else(|| Error::Overflow(format!("order of {self} exceeds u64")))
            }),
            FiniteGroupSpec::Named(NamedGroup::D8) => Ok(8),
        }
    }

    pub fn order(&self) -> u64 {
        self.checked_order().expect("group order overflows u64")
    }

    pub fn is_abelian(&self) -> bool {
        matches!(self, FiniteGroupSpec::Abelian(_))
    }

    pub fn is_cyclic(&self) -> bool {
        match self {
            FiniteGroupSpec::Abelian(m) => {
                FinAbGroup::from_cyclic_factors(m).is_ok_and(|g| g.is_cyclic())
            }
            FiniteGroupSpec::Named(_) => false,
        }
    }

    /// Number of coordinates of an element.
    pub fn coordinate_len(&self) -> usize {
        match self {
            FiniteGroupSpec::Abelian(m) => m.len(),
            FiniteGroupSpec::Named(NamedGroup::D8) => 2,
        }
    }

    fn coordinate_moduli(&self) -> Vec<i64> {
        match self {
            FiniteGroupSpec::Abelian(m) => m.iter().map(|&x| x as i64).collect(),
            FiniteGroupSpec::Named(NamedGroup::D8) => vec![4, 2],
        }
    }

    pub fn normalize(&self, x: &[i64]) -> Result<Vec<i64>> {
        if x.len() != self.coordinate_len() {
            return Err(Error::InvalidGroup(format!(
                "element {x:?} needs {} coordinates for {self}",
                self.coordinate_len()
            )));
        }
        Ok(x.iter()
            .zip(self.coordinate_moduli())
            .map(|(&v, m)| v.rem_euclid(m))
            .collect())
    }

    pub fn identity(&self) -> Vec<i64> {
        vec![0; self.coordinate_len()]
    }

    pub fn multiply(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        match self {
            FiniteGroupSpec::Abelian(m) => x
                .iter()
                .zip(y)
                .zip(m)
                .map(|((a, b), &mm)| (a + b).rem_euclid(mm as i64))
                .collect(),
            // (r^a s^b)(r^c s^d) = r^(a + (-1)^b c) s^(b + d)
            FiniteGroupSpec::Named(NamedGroup::D8) => {
                let sign = if x[1].rem_euclid(2) == 0 { 1 } else { -1 };
                vec![
                    (x[0] + sign * y[0]).rem_euclid(4),
                    (x[1] + y[1]).rem_euclid(2),
                ]
            }
        }
    }

    pub fn power(&self, x: &[i64], k: u64) -> Vec<i64> {
        let mut acc = self.identity();
        for _ in 0..k {
            acc = self.multiply(&acc, x);
        }
        acc
    }

    pub fn element_order(&self, x: &[i64]) -> u64 {
        match self {
            FiniteGroupSpec::Abelian(m) => {
                let m: Vec<i64> = m.iter().map(|&v| v as i64).collect();
                element_order(x, &m)
            }
            FiniteGroupSpec::Named(_) => {
                let id = self.identity();
                let mut acc = x.to_vec();
                let mut k = 1;
                while acc != id {
                    acc = self.multiply(&acc, x);
                    k += 1;
                }
                k
            }
        }
    }

    pub fn commute(&self, x: &[i64], y: &[i64]) -> bool {
        self.multiply(x, y) == self.multiply(y, x)
    }

    /// All elements, identity first.
    pub fn elements(&self) -> Vec<Vec<i64>> {
        let moduli = self.coordinate_moduli();
        let mut out = Vec::new();
        crate::finabelian::for_each_element(&moduli, |x| out.push(x.to_vec()));
        out
    }

    /// Closure of `gens` under multiplication.
    pub fn generated_subgroup(&self, gens: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let mut members = vec![self.identity()];
        let mut frontier = members.clone();
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = self.multiply(&x, g);
                if !members.contains(&y) {
                    members.push(y.clone());
                    frontier.push(y);
                }
            }
        }
        members.sort();
        members
    }
}
