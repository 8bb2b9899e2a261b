//! Group homology from explicit chain complexes.
//!
//! `H^i(G, Q/Z) ≅ Hom(H_i(G, Z), Q/Z)`, and a finite abelian group is
//! isomorphic to its dual, so both routes below return `H_i(G, Z)`.

use std::collections::HashMap;

use num_traits::{One, Signed, ToPrimitive};

use super::group::FiniteGroupSpec;
use crate::error::{Error, Result};
use crate::finabelian::{smith, BigMat, FinAbGroup};

/// Largest group order accepted by [`bar_oracle`].
pub const BAR_ORACLE_MAX_ORDER: u64 = 32;

/// Work bound `rows * cols * min(rows, cols)` for the literal route.
const LITERAL_BUDGET: u128 = 450_000_000;

fn literal_cost(order: u64, i: u32) -> u128 {
    let b = order.saturating_sub(1) as u128;
    let rows = b.pow(i);
    let cols = b.pow(i + 1);
    rows * cols * rows.min(cols)
}

/// `H^i(G, Q/Z)` for `1 <= i <= 3` and `|G| <= 32`.
///
/// Uses the normalized bar complex when it is small enough and otherwise (for
/// abelian `G`) the tensor product of the periodic resolutions of the cyclic
/// factors.
pub fn bar_oracle(g: &FiniteGroupSpec, i: u32) -> Result<FinAbGroup> {
    g.validate()?;
    if !(1..=3).contains(&i) {
        return Err(Error::Unsupported(format!("bar oracle degree {i}")));
    }
    let order = g.order();
    if order > BAR_ORACLE_MAX_ORDER {
        return Err(Error::TooLarge {
            what: "bar oracle",
            detail: format!("|G| = {order} > {BAR_ORACLE_MAX_ORDER}"),
        });
    }
    match g {
        FiniteGroupSpec::Abelian(m) if literal_cost(order, i) > LITERAL_BUDGET => {
            product_resolution_homology(m, i)
        }
        _ => literal_bar_homology(g, i),
    }
}

/// Dense matrix over `Z/N`, row-major, entries in `[0, N)`.
struct ModMat {
    rows: usize,
    cols: usize,
    n: u64,
    data: Vec<u32>,
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, s, t) = ext_gcd(b, a.rem_euclid(b));
        (g, t, s - (a.div_euclid(b)) * t)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

impl ModMat {
    #[inline]
    fn at(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j] as u64
    }

    #[inline]
    fn put(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = (v % self.n) as u32;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize, from_row: usize) {
        if a != b {
            for i in from_row..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `(row_p, row_q) <- (s row_p + t row_q, u row_p + v row_q)` on columns `>= from`.
    fn mix_rows(&mut self, p: usize, q: usize, [s, t, u, v]: [u64; 4], from: usize) {
        let n = self.n;
        for j in from..self.cols {
            let (x, y) = (self.at(p, j), self.at(q, j));
            if x == 0 && y == 0 {
                continue;
            }
            self.put(p, j, (s * x + t * y) % n);
            self.put(q, j, (u * x + v * y) % n);
        }
    }

    fn mix_cols(&mut self, p: usize, q: usize, [s, t, u, v]: [u64; 4], from: usize) {
        let n = self.n;
        for i in from..self.rows {
            let (x, y) = (self.at(i, p), self.at(i, q));
            if x == 0 && y == 0 {
                continue;
            }
            self.put(i, p, (s * x + t * y) % n);
            self.put(i, q, (u * x + v * y) % n);
        }
    }

    fn neg(&self, x: u64) -> u64 {
        (self.n - x % self.n) % self.n
    }

    /// Bezout coefficients taking `(a, b)` to `(gcd, 0)`, reduced mod `N`.
    fn bezout(&self, a: u64, b: u64) -> ([u64; 4], u64) {
        let (g, s, t) = ext_gcd(a as i64, b as i64);
        let n = self.n as i64;
        let (a1, b1) = (a as i64 / g, b as i64 / g);
        let red = |x: i64| x.rem_euclid(n) as u64;
        ([red(s), red(t), red(-b1), red(a1)], g as u64)
    }

    /// A unit `u` with `u * a ≡ gcd(a, N)`.
    fn normalizing_unit(&self, a: u64) -> u64 {
        let g = gcd(a, self.n);
        let n1 = self.n / g;
        let (_, s, _) = ext_gcd((a / g) as i64, n1 as i64);
        let mut u = s.rem_euclid(n1 as i64) as u64;
        while gcd(u, self.n) != 1 {
            u += n1;
        }
        u
    }

    /// Diagonalizes by unimodular operations and returns the cyclic orders of
    /// the cokernel over `Z/N`, one per row.
    fn cokernel_orders(mut self) -> Vec<u64> {
        let n = self.n;
        let mut orders = Vec::with_capacity(self.rows);
        let mut k = 0;
        while k < self.rows.min(self.cols) {
            let mut best: Option<(u64, usize, usize)> = None;
            'scan: for i in k..self.rows {
                for j in k..self.cols {
                    let v = self.at(i, j);
                    if v != 0 {
                        let g = gcd(v, n);
                        if best.is_none_or(|(bg, _, _)| g < bg) {
                            best = Some((g, i, j));
                            if g == 1 {
                                break 'scan;
                            }
                        }
                    }
                }
            }
            let Some((_, pi, pj)) = best else { break };
            self.swap_rows(k, pi);
            self.swap_cols(k, pj, k);
            let u = self.normalizing_unit(self.at(k, k));
            for j in k..self.cols {
                let x = self.at(k, j);
                self.put(k, j, x * u);
            }
            loop {
                for i in k + 1..self.rows {
                    let b = self.at(i, k);
                    if b == 0 {
                        continue;
                    }
                    let a = self.at(k, k);
                    if b.is_multiple_of(a) {
                        let q = self.neg(b / a);
                        self.mix_rows(i, k, [1, q, 0, 1], k);
                    } else {
                        let (m, _) = self.bezout(a, b);
                        self.mix_rows(k, i, m, k);
                    }
                }
                let mut dirty = false;
                for j in k + 1..self.cols {
                    let b = self.at(k, j);
                    if b == 0 {
                        continue;
                    }
                    let a = self.at(k, k);
                    if b.is_multiple_of(a) {
                        self.put(k, j, 0);
                    } else {
                        let (m, _) = self.bezout(a, b);
                        self.mix_cols(k, j, m, k);
                        dirty = true;
                    }
                }
                if !dirty {
                    break;
                }
            }
            orders.push(gcd(self.at(k, k), n));
            k += 1;
        }
        orders.extend(std::iter::repeat_n(n, self.rows - k));
        orders
    }
}

/// Torsion of a cokernel known modulo `N`, where every torsion order is a
/// proper divisor of `N`: the summands of order exactly `N` are free.
fn torsion_from_mod_orders(orders: &[u64], n: u64) -> Result<FinAbGroup> {
    let whole = FinAbGroup::from_cyclic_factors(orders)?;
    let torsion: Vec<u64> = whole
        .invariant_factors()
        .iter()
        .copied()
        .filter(|&f| f != n)
        .collect();
    FinAbGroup::from_invariant_factors(torsion)
}

/// `H_i(G, Z)` from the normalized inhomogeneous bar complex.
///
/// The boundary `C_{i+1} → C_i` is reduced modulo `|G|^2`, which is enough
/// because `|G|` annihilates `H_i` for `i >= 1`.
pub fn literal_bar_homology(g: &FiniteGroupSpec, i: u32) -> Result<FinAbGroup> {
    g.validate()?;
    if i == 0 {
        return Err(Error::Unsupported("degree 0".into()));
    }
    let order = g.order();
    if order == 1 {
        return Ok(FinAbGroup::trivial());
    }
    let cost = literal_cost(order, i);
    if cost > 4 * LITERAL_BUDGET {
        return Err(Error::TooLarge {
            what: "bar complex",
            detail: format!("|G| = {order}, degree {i}"),
        });
    }
    let elements = g.elements();
    let index: HashMap<&[i64], usize> = elements
        .iter()
        .enumerate()
        .map(|(k, e)| (e.as_slice(), k))
        .collect();
    let size = elements.len();
    // Non-identity elements are numbered 0..b via index - 1.
    let mul: Vec<usize> = (0..size * size)
        .map(|k| {
            index[g
                .multiply(&elements[k / size], &elements[k % size])
                .as_slice()]
        })
        .collect();
    let b = size - 1;
    let n = order * order;
    let rows = b.pow(i);
    let cols = b.pow(i + 1);
    let mut mat = ModMat {
        rows,
        cols,
        n,
        data: vec![0; rows * cols],
    };

    let len = (i + 1) as usize;
    let mut tuple = vec![0usize; len];
    let encode = |t: &[usize]| t.iter().fold(0usize, |acc, &x| acc * b + x);
    let mut face = Vec::with_capacity(len);
    for col in 0..cols {
        let mut rest = col;
        for slot in tuple.iter_mut().rev() {
            *slot = rest % b;
            rest /= b;
        }
        for f in 0..=len {
            face.clear();
            if f == 0 {
                face.extend_from_slice(&tuple[1..]);
            } else if f == len {
                face.extend_from_slice(&tuple[..len - 1]);
            } else {
                let prod = mul[(tuple[f - 1] + 1) * size + tuple[f] + 1];
                if prod == 0 {
                    continue;
                }
                face.extend_from_slice(&tuple[..f - 1]);
                face.push(prod - 1);
                face.extend_from_slice(&tuple[f + 1..]);
            }
            let row = encode(&face);
            let cur = mat.at(row, col);
            let next = if f % 2 == 0 { cur + 1 } else { cur + n - 1 };
            mat.put(row, col, next);
        }
    }
    torsion_from_mod_orders(&mat.cokernel_orders(), n)
}

fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut tail in compositions(total - first, parts - 1) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

/// `H_i(⊕ Z/m_j, Z)` from the tensor product of the 2-periodic resolutions
/// of the cyclic factors. After tensoring with `Z`, the factor `Z/m` has
/// differential `0` out of odd degrees and `m` out of positive even degrees.
pub fn product_resolution_homology(moduli: &[u64], i: u32) -> Result<FinAbGroup> {
    FiniteGroupSpec::Abelian(moduli.to_vec()).validate()?;
    if i == 0 {
        return Err(Error::Unsupported("degree 0".into()));
    }
    let i = i as usize;
    let r = moduli.len();
    let source = compositions(i + 1, r);
    let target = compositions(i, r);
    if source.is_empty() || target.is_empty() {
        return Ok(FinAbGroup::trivial());
    }
    let index: HashMap<&[usize], usize> = target
        .iter()
        .enumerate()
        .map(|(k, c)| (c.as_slice(), k))
        .collect();
    let mut entries = vec![vec![0i64; source.len()]; target.len()];
    for (col, c) in source.iter().enumerate() {
        let mut degree_before = 0;
        for j in 0..r {
            let k = c[j];
            if k >= 2 && k % 2 == 0 {
                let mut face = c.clone();
                face[j] -= 1;
                let sign = if degree_before % 2 == 0 { 1 } else { -1 };
                entries[index[face.as_slice()]][col] += sign * moduli[j] as i64;
            }
            degree_before += k;
        }
    }
    let sm = smith(&BigMat::from_i64(target.len(), source.len(), &entries));
    let mut torsion = Vec::new();
    for d in sm
        .diagonal
        .iter()
        .filter(|d| !d.is_one() && d.is_positive())
    {
        torsion.push(
            d.to_u64()
                .ok_or_else(|| Error::Overflow(format!("invariant factor {d}")))?,
        );
    }
    FinAbGroup::from_invariant_factors(torsion)
}
