//! Incompressible divisorial Burnside symbols and normalized fixed curves
//! with action (NFCA) for cyclic groups.

use serde::{Deserialize, Serialize};

use crate::config::{ActionConfig, CurveClass};
use crate::error::{Error, Result};
use crate::groupcoh::FiniteGroupSpec;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ResidualLabel {
    pub order: u64,
    pub cyclic: bool,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CurveLabel {
    pub genus: u32,
    pub label: String,
}

/// A divisorial symbol `(H, Z ↻ K, β)` on a surface.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BurnsideSymbol {
    /// Order of the cyclic generic stabilizer.
    #[serde(rename = "H")]
    pub h: u64,
    #[serde(rename = "Z")]
    pub z: ResidualLabel,
    #[serde(rename = "K")]
    pub k: CurveLabel,
    /// Weight of the faithful character of `H` on the normal bundle.
    pub beta: u64,
}

impl BurnsideSymbol {
    pub fn new(h: u64, z: ResidualLabel, k: CurveLabel, beta: u64) -> Result<Self> {
        if h < 2 {
            return Err(Error::config(format!("symbol stabilizer of order {h}")));
        }
        if num_integer::gcd(beta, h) != 1 {
            return Err(Error::config(format!(
                "symbol weight {beta} is not a unit mod {h}"
            )));
        }
        Ok(BurnsideSymbol {
            h,
            z,
            k,
            beta: beta % h,
        })
    }
}

/// A divisorial surface symbol is incompressible iff its curve has positive
/// genus or its residual group is noncyclic.
pub fn is_incompressible(s: &BurnsideSymbol) -> bool {
    s.k.genus > 0 || !s.z.cyclic
}

/// The incompressible part of the class of an action: a multiset of symbols,
/// kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncClass {
    pub group: FiniteGroupSpec,
    pub symbols: Vec<BurnsideSymbol>,
}

fn symbol_of(curve: &CurveClass) -> Result<BurnsideSymbol> {
    let id = &curve.id;
    let missing = |what: &str| Error::config(format!("curve `{id}` lacks {what}"));
    let genus = curve.g_upstairs.ok_or_else(|| missing("g_upstairs"))?;
    let residual = curve.residual.as_ref().ok_or_else(|| missing("residual"))?;
    let z = ResidualLabel {
        order: residual.order,
        cyclic: residual.cyclic,
        label: residual.label.clone(),
    };
    let k = CurveLabel {
        genus,
        label: residual.curve_label.clone().unwrap_or_default(),
    };
    let beta = curve.normal_character.unwrap_or(1);
    let s = BurnsideSymbol::new(curve.d, z, k, beta)?;
    if is_incompressible(&s) {
        if curve.decomposition.is_none() {
            return Err(missing("decomposition"));
        }
        if curve.normal_character.is_none() {
            return Err(missing("normal_character"));
        }
    }
    Ok(s)
}

pub fn inc_class(c: &ActionConfig) -> Result<IncClass> {
    let mut symbols = Vec::new();
    for curve in &c.curves {
        let s = symbol_of(curve)?;
        if is_incompressible(&s) {
            symbols.push(s);
        }
    }
    symbols.sort();
    Ok(IncClass {
        group: c.group.clone(),
        symbols,
    })
}

pub fn compare_inc(a: &IncClass, b: &IncClass) -> bool {
    a.group == b.group && a.symbols == b.symbols
}

/// The positive-genus curve pointwise fixed by `g^r` and how `g` acts on it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NfcaEntry {
    pub curve_id: String,
    pub genus: u32,
    pub curve_label: String,
    pub residual_label: String,
    /// `g` acts on the curve as this power of the residual generator.
    pub residual_power: u64,
}

impl NfcaEntry {
    fn same_labels(&self, other: &NfcaEntry) -> bool {
        (
            self.genus,
            &self.curve_label,
            &self.residual_label,
            self.residual_power,
        ) == (
            other.genus,
            &other.curve_label,
            &other.residual_label,
            other.residual_power,
        )
    }
}

/// Entries for `r = 1, …, m − 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Nfca {
    pub order: u64,
    pub generator_tag: u64,
    pub entries: Vec<Option<NfcaEntry>>,
}

/// NFCA of the generator `g = u · g₀`, where `g₀ = (1, …, 1)` generates the
/// cyclic group and `u` is the generator tag.
pub fn nfca(c: &ActionConfig, generator_tag: u64) -> Result<Nfca> {
    let g = &c.group;
    if !g.is_cyclic() {
        return Err(Error::Unsupported(format!(
            "NFCA of the noncyclic group {g}"
        )));
    }
    let m = g.order();
    if m > 1 && num_integer::gcd(generator_tag, m) != 1 {
        return Err(Error::config(format!(
            "generator tag {generator_tag} is not a unit mod {m}"
        )));
    }
    let g0 = vec![1i64; g.coordinate_len()];
    let gen = g.power(&g0, generator_tag % m.max(1));
    let mut entries: Vec<Option<NfcaEntry>> = vec![None; m.saturating_sub(1) as usize];
    for curve in &c.curves {
        let genus = curve.g_upstairs.unwrap_or(0);
        if genus == 0 {
            continue;
        }
        let inertia = match &curve.decomposition {
            Some(dec) => g.normalize(&dec.inertia)?,
            None => g
                .elements()
                .into_iter()
                .find(|x| g.element_order(x) == curve.d)
                .expect("cyclic groups have elements of every order dividing |G|"),
        };
        let fixed_by = g.generated_subgroup(&[inertia]);
        let residual = curve.residual.as_ref();
        for r in 1..m {
            if !fixed_by.contains(&g.power(&gen, r)) {
                continue;
            }
            let slot = &mut entries[(r - 1) as usize];
            if let Some(prev) = slot {
                return Err(Error::config(format!(
                    "curves `{}` and `{}` are both positive-genus curves fixed by g^{r}",
                    prev.curve_id, curve.id
                )));
            }
            *slot = Some(NfcaEntry {
                curve_id: curve.id.clone(),
                genus,
                curve_label: residual
                    .and_then(|x| x.curve_label.clone())
                    .unwrap_or_default(),
                residual_label: residual.map(|x| x.label.clone()).unwrap_or_default(),
                residual_power: generator_tag,
            });
        }
    }
    Ok(Nfca {
        order: m,
        generator_tag,
        entries,
    })
}

/// Componentwise equality of labels (curve ids are ignored).
pub fn compare_nfca(a: &Nfca, b: &Nfca) -> bool {
    a.order == b.order
        && a.entries.iter().zip(&b.entries).all(|(x, y)| match (x, y) {
            (None, None) => true,
            (Some(x), Some(y)) => x.same_labels(y),
            _ => false,
        })
}
