//! Isomorphism type from an element-order census.
//!
//! For a finite abelian group the number of elements of order dividing `p^k`
//! is `p^(sum_i min(e_i, k))`, which pins down the exponents `e_i` of every
//! primary part. This is independent of any matrix reduction and serves as
//! an oracle for it.

use std::collections::BTreeMap;

use num_integer::Integer;

use super::{factorize, FinAbGroup};
use crate::error::{Error, Result};

/// Order of `x` in `⊕ Z/m_i` (all moduli positive).
pub fn element_order(x: &[i64], moduli: &[i64]) -> u64 {
    x.iter().zip(moduli).fold(1u64, |acc, (&v, &m)| {
        let g = v.rem_euclid(m).gcd(&m);
        acc.lcm(&((m / g) as u64))
    })
}

fn exact_log(mut n: u64, p: u64) -> Option<u32> {
    let mut k = 0;
    while n > 1 {
        if !n.is_multiple_of(p) {
            return None;
        }
        n /= p;
        k += 1;
    }
    Some(k)
}

/// Rebuilds the isomorphism type from `order -> number of elements`.
pub fn classify_by_order_census(census: &BTreeMap<u64, u64>) -> Result<FinAbGroup> {
    let bad = || Error::InvalidGroup("census is not that of a finite abelian group".into());
    let total: u64 = census.values().sum();
    if total == 0 || census.get(&1) != Some(&1) {
        return Err(bad());
    }
    let mut moduli = Vec::new();
    for (p, e) in factorize(total) {
        // rank_k = number of cyclic p-summands of order >= p^k
        let mut prev = 0u32;
        let mut ranks = Vec::new();
        for k in 1..=e {
            let pk = p.pow(k);
            let n: u64 = census
                .iter()
                .filter(|(o, _)| pk % **o == 0)
                .map(|(_, c)| c)
                .sum();
            let log = exact_log(n, p).ok_or_else(bad)?;
            ranks.push(log.checked_sub(prev).ok_or_else(bad)?);
            prev = log;
        }
        if prev != e {
            return Err(bad());
        }
        for k in 1..=e as usize {
            let here = ranks[k - 1];
            let next = ranks.get(k).copied().unwrap_or(0);
            let exactly = here.checked_sub(next).ok_or_else(bad)?;
            moduli.extend(std::iter::repeat_n(p.pow(k as u32), exactly as usize));
        }
    }
    FinAbGroup::from_cyclic_factors(&moduli)
}
