//! Configurations for the de Jonquières family: `Z/2n` generated by `α`,
//! where `α^n` is an involution fixing a hyperelliptic curve `C` of genus
//! `(rn − 2)/2` and `α` induces an order-`n` automorphism of `C`.

use crate::config::{
    ActionConfig, CurveClass, Decomposition, Incidence, PointOrbit, ResidualDescriptor,
};
use crate::error::{Error, Result};
use crate::groupcoh::FiniteGroupSpec;

/// Genus of `C/⟨α⟩` for the given number of fixed points.
fn quotient_genus(r: u32, fixed: u32) -> Result<u32> {
    let bad = |why: &str| {
        Err(Error::config(format!(
            "dJ(r = {r}, fixed = {fixed}): {why}"
        )))
    };
    match fixed {
        4 if r.is_multiple_of(2) && r >= 2 => Ok((r - 2) / 2),
        2 if r % 2 == 1 => Ok((r - 1) / 2),
        0 if r.is_multiple_of(2) => Ok(r / 2),
        4 | 0 => bad("parity violation, r must be even"),
        2 => bad("parity violation, r must be odd"),
        _ => bad("fixed must be 0, 2 or 4"),
    }
}

/// Rank of `H^1(G, Pic X) = (Z/2)^rank`.
pub fn expected_rank(r: u32, fixed: u32) -> u32 {
    match fixed {
        4 => r - 2,
        2 => r - 1,
        _ => r,
    }
}

pub fn generate_dj(n: u32, r: u32, fixed: u32) -> Result<ActionConfig> {
    if n == 0 || r == 0 {
        return Err(Error::config(format!(
            "dJ needs n, r >= 1 (got n = {n}, r = {r})"
        )));
    }
    let g_quotient = quotient_genus(r, fixed)?;
    if !(r * n).is_multiple_of(2) {
        return Err(Error::config(format!(
            "parity violation: rn = {} must be even",
            r * n
        )));
    }
    let genus = (r * n - 2) / 2;
    let order = 2 * n as u64;
    let mut curve = CurveClass::new("C", 2, g_quotient);
    curve.g_upstairs = Some(genus);
    curve.normal_character = Some(1);
    curve.decomposition = Some(Decomposition {
        generators: vec![vec![1]],
        inertia: vec![n as i64],
    });
    curve.residual = Some(ResidualDescriptor {
        order: n as u64,
        cyclic: true,
        label: format!("order {n} automorphism of the hyperelliptic curve"),
        curve_label: Some(format!("hyperelliptic genus {genus}")),
    });
    let points: Vec<PointOrbit> = (1..=fixed)
        .map(|k| PointOrbit::new(format!("q{k}")))
        .collect();
    let incidences = points
        .iter()
        .map(|p| Incidence {
            point: p.id.clone(),
            curve: "C".into(),
            branches: 1,
        })
        .collect();
    let rank = expected_rank(r, fixed);
    let twos = serde_json::to_string(&vec![2; rank as usize]).expect("serializable");
    let mut nfca: Vec<Option<u32>> = vec![None; order as usize - 1];
    if genus > 0 {
        nfca[n as usize - 1] = Some(genus);
    }
    let metadata = format!(
        "de Jonquieres family n = {n}, r = {r}, {fixed} fixed points; the fixed points are forced to zero residue.\n\
         expect brauer = {twos}\n\
         expect h1_pic = {twos}\n\
         expect nfca_genus = {}\n\
         expect inc_count = {}",
        serde_json::to_string(&nfca).expect("serializable"),
        u32::from(genus > 0),
    );
    let mut c = ActionConfig {
        group: FiniteGroupSpec::Abelian(vec![order]),
        has_fixed_point: true,
        is_cyclic: true,
        curves: vec![curve],
        points,
        incidences,
        metadata,
    };
    c.validate()?;
    Ok(c)
}

/// All `(n, r, fixed)` with `n <= max_n`, `r <= max_r` accepted by [`generate_dj`].
pub fn dj_grid(max_n: u32, max_r: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for r in 1..=max_r {
            for fixed in [0, 2, 4] {
                if generate_dj(n, r, fixed).is_ok() {
                    out.push((n, r, fixed));
                }
            }
        }
    }
    out
}
