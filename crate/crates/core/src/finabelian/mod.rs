//! Finite and finitely generated abelian groups.
//!
//! Groups are carried in invariant-factor normal form ([`FinAbGroup`]);
//! homomorphisms between direct sums of cyclic groups are integer matrices
//! with per-coordinate moduli ([`IntMatrixHom`]). Every structural question
//! (kernels, images, quotients) reduces to a Smith normal form.

mod census;
mod snf;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use census::{classify_by_order_census, element_order};
pub(crate) use snf::{big_to_i64, smith, BigMat};
pub use snf::{snf, SmithForm};

/// Prime factorization by trial division; inputs are desk-scale.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// A finite abelian group `Z/d_1 ⊕ ... ⊕ Z/d_r` with `d_1 | d_2 | ... | d_r`
/// and every `d_i >= 2`. The empty list is the trivial group.
///
/// The representation is canonical, so structural equality is isomorphism.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct FinAbGroup {
    factors: Vec<u64>,
}

impl TryFrom<Vec<u64>> for FinAbGroup {
    type Error = Error;

    fn try_from(v: Vec<u64>) -> Result<Self> {
        FinAbGroup::from_invariant_factors(v)
    }
}

impl From<FinAbGroup> for Vec<u64> {
    fn from(g: FinAbGroup) -> Self {
        g.factors
    }
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        FinAbGroup {
            factors: Vec::new(),
        }
    }

    pub fn cyclic(n: u64) -> Self {
        assert!(n >= 1, "cyclic group of order 0 is not finite");
        if n == 1 {
            Self::trivial()
        } else {
            FinAbGroup { factors: vec![n] }
        }
    }

    /// `(Z/p)^rank`, or more generally `(Z/n)^rank`.
    pub fn power(n: u64, rank: usize) -> Self {
        Self::from_cyclic_factors(&vec![n; rank]).expect("positive modulus")
    }

    /// Accepts an already-normalized factor list, rejecting anything else.
    pub fn from_invariant_factors(factors: Vec<u64>) -> Result<Self> {
        if let Some(&bad) = factors.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidGroup(format!("invariant factor {bad} < 2")));
        }
        if let Some(w) = factors.windows(2).find(|w| w[1] % w[0] != 0) {
            return Err(Error::InvalidGroup(format!(
                "{} does not divide {}",
                w[0], w[1]
            )));
        }
        Ok(FinAbGroup { factors })
    }

    /// Normal form of `Z/m_1 ⊕ ... ⊕ Z/m_s` for an arbitrary list of positive moduli.
    pub fn from_cyclic_factors(moduli: &[u64]) -> Result<Self> {
        if moduli.contains(&0) {
            return Err(Error::NotFinite(moduli.iter().filter(|&&m| m == 0).count()));
        }
        // prime -> exponents of the primary summands
        let mut primary: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &m in moduli {
            for (p, e) in factorize(m) {
                primary.entry(p).or_default().push(e);
            }
        }
        let rank = primary.values().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![1u64; rank];
        for (p, mut exps) in primary {
            exps.sort_unstable();
            // largest exponents go to the largest invariant factors
            let offset = rank - exps.len();
            for (k, e) in exps.into_iter().enumerate() {
                let pe = checked_pow(p, e)?;
                factors[offset + k] = factors[offset + k].checked_mul(pe).ok_or_else(|| {
                    Error::Overflow(format!("invariant factor exceeds u64 ({p}^{e})"))
                })?;
            }
        }
        Ok(FinAbGroup { factors })
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }

    /// Group order. Panics with a diagnostic if it exceeds `u128`.
    pub fn order(&self) -> u128 {
        self.checked_order().expect("group order overflows u128")
    }

    pub fn checked_order(&self) -> Result<u128> {
        self.factors.iter().try_fold(1u128, |acc, &d| {
            acc.checked_mul(d as u128)
                .ok_or_else(|| Error::Overflow(format!("order of {self} exceeds u128")))
        })
    }

    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    /// True for `(Z/p)^r` (including the trivial group).
    pub fn is_elementary_abelian(&self) -> bool {
        match self.factors.first() {
            None => true,
            Some(&d) => {
                factorize(d).len() == 1
                    && factorize(d)[0].1 == 1
                    && self.factors.iter().all(|&f| f == d)
            }
        }
    }

    /// Every Sylow subgroup is elementary abelian (squarefree exponent).
    pub fn has_squarefree_exponent(&self) -> bool {
        factorize(self.exponent()).iter().all(|&(_, e)| e == 1)
    }

    /// Primary decomposition view: for each prime, its prime-power summands
    /// in increasing order.
    pub fn primary_decomposition(&self) -> BTreeMap<u64, Vec<u64>> {
        let mut out: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for &d in &self.factors {
            for (p, e) in factorize(d) {
                out.entry(p).or_default().push(p.pow(e));
            }
        }
        out
    }

    /// The `p`-primary component.
    pub fn p_part(&self, p: u64) -> FinAbGroup {
        let parts = self.primary_decomposition().remove(&p).unwrap_or_default();
        FinAbGroup::from_cyclic_factors(&parts).expect("prime powers are positive")
    }

    pub fn direct_sum(&self, other: &FinAbGroup) -> FinAbGroup {
        let all: Vec<u64> = self.factors.iter().chain(&other.factors).copied().collect();
        FinAbGroup::from_cyclic_factors(&all).expect("factors are positive")
    }

    /// Counts elements by order, enumerating the whole group.
    pub fn order_census(&self) -> BTreeMap<u64, u64> {
        let moduli: Vec<i64> = self.factors.iter().map(|&d| d as i64).collect();
        let mut census = BTreeMap::new();
        for_each_element(&moduli, |x| {
            *census.entry(element_order(x, &moduli)).or_insert(0) += 1;
        });
        census
    }
}

fn checked_pow(p: u64, e: u32) -> Result<u64> {
    p.checked_pow(e)
        .ok_or_else(|| Error::Overflow(format!("{p}^{e} exceeds u64")))
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let mut i = 0;
        let mut first = true;
        while i < self.factors.len() {
            let d = self.factors[i];
            let run = self.factors[i..].iter().take_while(|&&x| x == d).count();
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if run == 1 {
                write!(f, "Z/{d}")?;
            } else {
                write!(f, "(Z/{d})^{run}")?;
            }
            i += run;
        }
        Ok(())
    }
}

/// Calls `f` on every element of `⊕ Z/m_i` (all moduli positive), in
/// lexicographic order.
pub fn for_each_element(moduli: &[i64], mut f: impl FnMut(&[i64])) {
    let mut x = vec![0i64; moduli.len()];
    loop {
        f(&x);
        let mut k = 0;
        loop {
            if k == moduli.len() {
                return;
            }
            x[k] += 1;
            if x[k] < moduli[k] {
                break;
            }
            x[k] = 0;
            k += 1;
        }
    }
}

/// `⊕ Z/m_i` with a fixed basis; a modulus of 0 marks a free coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclicSum {
    moduli: Vec<u64>,
}

impl CyclicSum {
    pub fn new(moduli: Vec<u64>) -> Self {
        CyclicSum { moduli }
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn dim(&self) -> usize {
        self.moduli.len()
    }

    pub fn is_finite(&self) -> bool {
        !self.moduli.contains(&0)
    }

    /// Isomorphism type (finite case).
    pub fn structure(&self) -> Result<FinAbGroup> {
        FinAbGroup::from_cyclic_factors(&self.moduli)
    }

    /// Canonical representative: finite coordinates in `[0, m)`.
    pub fn reduce(&self, x: &[i64]) -> Vec<i64> {
        x.iter()
            .zip(&self.moduli)
            .map(|(&v, &m)| if m == 0 { v } else { v.rem_euclid(m as i64) })
            .collect()
    }

    fn relation_columns(&self) -> Vec<Vec<BigInt>> {
        let n = self.dim();
        self.moduli
            .iter()
            .enumerate()
            .filter(|(_, &m)| m != 0)
            .map(|(j, &m)| {
                let mut v = vec![BigInt::zero(); n];
                v[j] = BigInt::from(m);
                v
            })
            .collect()
    }
}

/// Homomorphism `⊕ Z/s_j -> ⊕ Z/t_i` given by an integer matrix
/// (rows index the target).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntMatrixHom {
    source: CyclicSum,
    target: CyclicSum,
    entries: Vec<Vec<i64>>,
}

impl IntMatrixHom {
    /// Checks shape and well-definedness: `s_j * A[i][j] ≡ 0 (mod t_i)`.
    pub fn new(source: CyclicSum, target: CyclicSum, entries: Vec<Vec<i64>>) -> Result<Self> {
        if entries.len() != target.dim() {
            return Err(Error::MalformedHom(format!(
                "{} rows for a target of dimension {}",
                entries.len(),
                target.dim()
            )));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != source.dim() {
                return Err(Error::MalformedHom(format!(
                    "row {i} has {} entries, source has dimension {}",
                    row.len(),
                    source.dim()
                )));
            }
            let t = target.moduli[i] as i128;
            for (j, &a) in row.iter().enumerate() {
                let s = source.moduli[j] as i128;
                // A free target coordinate only receives a torsion source through a 0 entry.
                let ok = if t == 0 {
                    s == 0 || a == 0
                } else {
                    (s * a as i128).rem_euclid(t) == 0
                };
                if !ok {
                    return Err(Error::MalformedHom(format!(
                        "entry ({i},{j}) = {a}: source order {s} does not map into target modulus {t}"
                    )));
                }
            }
        }
        Ok(IntMatrixHom {
            source,
            target,
            entries,
        })
    }

    pub fn source(&self) -> &CyclicSum {
        &self.source
    }

    pub fn target(&self) -> &CyclicSum {
        &self.target
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        let raw: Vec<i64> = self
            .entries
            .iter()
            .map(|row| {
                let v: i128 = row
                    .iter()
                    .zip(x)
                    .map(|(&a, &b)| a as i128 * b as i128)
                    .sum();
                v as i64
            })
            .collect();
        self.target.reduce(&raw)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &IntMatrixHom) -> Result<IntMatrixHom> {
        if inner.target != self.source {
            return Err(Error::MalformedHom(
                "composition of incompatible homomorphisms".into(),
            ));
        }
        let (m, k, n) = (self.target.dim(), self.source.dim(), inner.source.dim());
        let mut out = vec![vec![0i64; n]; m];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let mut acc: i128 = 0;
                for l in 0..k {
                    acc += self.entries[i][l] as i128 * inner.entries[l][j] as i128;
                }
                let t = self.target.moduli[i] as i128;
                if t != 0 {
                    acc = acc.rem_euclid(t);
                }
                *cell = i64::try_from(acc)
                    .map_err(|_| Error::Overflow("composite entry exceeds i64".into()))?;
            }
        }
        IntMatrixHom::new(inner.source.clone(), self.target.clone(), out)
    }

    fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.source.dim())
            .map(|j| {
                self.entries
                    .iter()
                    .map(|row| BigInt::from(row[j]))
                    .collect()
            })
            .collect()
    }
}

/// A subgroup of a [`CyclicSum`] given by generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subgroup {
    ambient: CyclicSum,
    generators: Vec<Vec<i64>>,
}

impl Subgroup {
    pub fn new(ambient: CyclicSum, generators: Vec<Vec<i64>>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.len() != ambient.dim()) {
            return Err(Error::NotContained(format!(
                "generator {g:?} has the wrong length for an ambient of dimension {}",
                ambient.dim()
            )));
        }
        let generators = generators.iter().map(|g| ambient.reduce(g)).collect();
        Ok(Subgroup {
            ambient,
            generators,
        })
    }

    pub fn ambient(&self) -> &CyclicSum {
        &self.ambient
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    fn spanning_columns(&self) -> Vec<Vec<BigInt>> {
        let mut cols: Vec<Vec<BigInt>> = self
            .generators
            .iter()
            .map(|g| g.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        cols.extend(self.ambient.relation_columns());
        cols
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        if x.len() != self.ambient.dim() {
            return false;
        }
        let cols = self.spanning_columns();
        let g = BigMat::from_columns(self.ambient.dim(), &cols);
        let s = smith(&g);
        let y = s
            .left
            .mul_vec(&x.iter().map(|&v| BigInt::from(v)).collect::<Vec<_>>());
        y.iter().enumerate().all(|(k, yk)| {
            if k < s.rank {
                (yk % &s.diagonal[k]).is_zero()
            } else {
                yk.is_zero()
            }
        })
    }

    /// Isomorphism type of the subgroup.
    pub fn structure(&self) -> Result<FinAbGroup> {
        let summands = lattice_quotient(
            self.ambient.dim(),
            &self.spanning_columns(),
            &self.ambient.relation_columns(),
        )?;
        finite_from_summands(&summands)
    }
}

/// One cyclic summand of a lattice quotient; `order == 0` means infinite cyclic.
#[derive(Clone, Debug)]
pub(crate) struct Summand {
    pub order: BigInt,
    pub generator: Vec<BigInt>,
}

/// Structure of `L / R` inside `Z^dim`, where `L` is spanned by `gens` and
/// `R ⊆ L` by `rels`. Trivial summands are dropped.
pub(crate) fn lattice_quotient(
    dim: usize,
    gens: &[Vec<BigInt>],
    rels: &[Vec<BigInt>],
) -> Result<Vec<Summand>> {
    let g = BigMat::from_columns(dim, gens);
    let s = smith(&g);
    let r = s.rank;
    let mut coords = BigMat::zeros(r, rels.len());
    for (j, rel) in rels.iter().enumerate() {
        let y = s.left.mul_vec(rel);
        for (k, yk) in y.into_iter().enumerate() {
            if k < r {
                let (q, rem) = yk.div_rem(&s.diagonal[k]);
                if !rem.is_zero() {
                    return Err(Error::NotContained(format!(
                        "relation {j} is outside the lattice"
                    )));
                }
                coords.set(k, j, q);
            } else if !yk.is_zero() {
                return Err(Error::NotContained(format!(
                    "relation {j} is outside the lattice"
                )));
            }
        }
    }
    let s2 = smith(&coords);
    let mut out = Vec::new();
    for k in 0..r {
        let order = s2.diagonal.get(k).cloned().unwrap_or_else(BigInt::zero);
        if order.is_one() {
            continue;
        }
        // generator = sum_i (basis_i) * left2_inv[i][k], basis_i = left_inv[:, i] * d_i
        let mut generator = vec![BigInt::zero(); dim];
        for i in 0..r {
            let c = s2.left_inv.get(i, k) * &s.diagonal[i];
            if c.is_zero() {
                continue;
            }
            for (row, slot) in generator.iter_mut().enumerate() {
                *slot += s.left_inv.get(row, i) * &c;
            }
        }
        out.push(Summand {
            order: order.abs(),
            generator,
        });
    }
    Ok(out)
}

fn finite_from_summands(summands: &[Summand]) -> Result<FinAbGroup> {
    let free = summands.iter().filter(|s| s.order.is_zero()).count();
    if free > 0 {
        return Err(Error::NotFinite(free));
    }
    let orders = summands
        .iter()
        .map(|s| {
            u64::try_from(&s.order)
                .map_err(|_| Error::Overflow(format!("summand order {} exceeds u64", s.order)))
        })
        .collect::<Result<Vec<_>>>()?;
    FinAbGroup::from_cyclic_factors(&orders)
}

/// Kernel of `h`, as an isomorphism type plus generators inside the source,
/// one per nontrivial cyclic summand of the Smith reduction.
pub fn kernel(h: &IntMatrixHom) -> Result<(FinAbGroup, Subgroup)> {
    let (groups, gens) = kernel_summands(h)?;
    let sub = Subgroup::new(h.source.clone(), gens)?;
    Ok((groups, sub))
}

/// A generator together with its order.
pub type OrderedGenerator = (u64, Vec<i64>);

/// Kernel generators paired with their orders.
pub fn kernel_with_orders(h: &IntMatrixHom) -> Result<(FinAbGroup, Vec<OrderedGenerator>)> {
    let summands = kernel_lattice(h)?;
    let group = finite_from_summands(&summands)?;
    let gens = summands
        .iter()
        .map(|s| {
            let order =
                u64::try_from(&s.order).map_err(|_| Error::Overflow("kernel order".into()))?;
            let v = s
                .generator
                .iter()
                .map(big_to_i64)
                .collect::<Result<Vec<_>>>()?;
            Ok((order, h.source.reduce(&v)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((group, gens))
}

fn kernel_summands(h: &IntMatrixHom) -> Result<(FinAbGroup, Vec<Vec<i64>>)> {
    let (group, gens) = kernel_with_orders(h)?;
    Ok((group, gens.into_iter().map(|(_, g)| g).collect()))
}

fn kernel_lattice(h: &IntMatrixHom) -> Result<Vec<Summand>> {
    let n = h.source.dim();
    let m = h.target.dim();
    // x is in the lifted kernel iff A x + T y = 0 for some integer y.
    let mut cols = h.columns();
    cols.extend(h.target.relation_columns());
    let stacked = BigMat::from_columns(m, &cols);
    let s = smith(&stacked);
    let mut gens: Vec<Vec<BigInt>> = (s.rank..stacked.cols)
        .map(|k| (0..n).map(|i| s.right.get(i, k).clone()).collect())
        .collect();
    let rels = h.source.relation_columns();
    gens.extend(rels.iter().cloned());
    lattice_quotient(n, &gens, &rels)
}

pub fn image(h: &IntMatrixHom) -> Result<FinAbGroup> {
    let rels = h.target.relation_columns();
    let mut gens = h.columns();
    gens.extend(rels.iter().cloned());
    let summands = lattice_quotient(h.target.dim(), &gens, &rels)?;
    finite_from_summands(&summands)
}

pub fn cokernel(h: &IntMatrixHom) -> Result<FinAbGroup> {
    let m = h.target.dim();
    let mut rels = h.columns();
    rels.extend(h.target.relation_columns());
    let summands = lattice_quotient(m, &unit_columns(m), &rels)?;
    finite_from_summands(&summands)
}

/// `ambient / sub`.
pub fn quotient(ambient: &CyclicSum, sub: &Subgroup) -> Result<FinAbGroup> {
    if sub.ambient != *ambient {
        return Err(Error::NotContained(
            "subgroup lives in a different ambient group".into(),
        ));
    }
    let n = ambient.dim();
    let rels = sub.spanning_columns();
    let summands = lattice_quotient(n, &unit_columns(n), &rels)?;
    finite_from_summands(&summands)
}

pub fn direct_sum(a: &FinAbGroup, b: &FinAbGroup) -> FinAbGroup {
    a.direct_sum(b)
}

pub fn is_elementary_abelian(g: &FinAbGroup) -> bool {
    g.is_elementary_abelian()
}

pub fn order(g: &FinAbGroup) -> u128 {
    g.order()
}

fn unit_columns(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|j| {
            let mut v = vec![BigInt::zero(); n];
            v[j] = BigInt::one();
            v
        })
        .collect()
}

/// Every subgroup of `g` (given with its standard basis) isomorphic to `shape`,
/// deduplicated by membership; `None` if more than `budget` generator tuples
/// would have to be examined.
pub fn subgroups_isomorphic_to(
    g: &FinAbGroup,
    shape: &FinAbGroup,
    budget: u128,
) -> Option<Vec<Subgroup>> {
    let ambient = CyclicSum::new(g.invariant_factors().to_vec());
    let k = shape.rank();
    let size = g.order();
    if size.checked_pow(k as u32).is_none_or(|n| n > budget) {
        return None;
    }
    let moduli: Vec<i64> = g.invariant_factors().iter().map(|&d| d as i64).collect();
    let mut elems = Vec::with_capacity(size as usize);
    for_each_element(&moduli, |x| elems.push(x.to_vec()));
    let mut found: Vec<(Vec<Vec<i64>>, Subgroup)> = Vec::new();
    let mut idx = vec![0usize; k];
    loop {
        let gens: Vec<Vec<i64>> = idx.iter().map(|&i| elems[i].clone()).collect();
        let sub = Subgroup::new(ambient.clone(), gens).expect("lengths match");
        if sub.structure().ok().as_ref() == Some(shape) {
            let members = enumerate_members(&sub, &moduli);
            if !found.iter().any(|(m, _)| *m == members) {
                found.push((members, sub));
            }
        }
        let mut pos = 0;
        loop {
            if pos == k {
                return Some(found.into_iter().map(|(_, s)| s).collect());
            }
            idx[pos] += 1;
            if idx[pos] < elems.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

fn enumerate_members(sub: &Subgroup, moduli: &[i64]) -> Vec<Vec<i64>> {
    let mut members = vec![vec![0i64; moduli.len()]];
    let mut frontier = members.clone();
    while let Some(x) = frontier.pop() {
        for g in sub.generators() {
            let y: Vec<i64> = x
                .iter()
                .zip(g)
                .zip(moduli)
                .map(|((a, b), m)| (a + b).rem_euclid(*m))
                .collect();
            if !members.contains(&y) {
                members.push(y.clone());
                frontier.push(y);
            }
        }
    }
    members.sort();
    members
}
