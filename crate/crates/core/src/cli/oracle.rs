//! Randomized cross-checks: `solve` against `brute_force` and the closed-form
//! cohomology against the chain-complex oracle.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::brauer::{brute_force, build_system, solve};
use crate::config::{ActionConfig, CurveClass, Incidence, PointOrbit};
use crate::groupcoh::{bar_oracle, cohomology, FiniteGroupSpec};

/// Every modulus up to 6 divides 60.
const AMBIENT_ORDER: u64 = 60;

/// A random config over `Z/60` with at most `max_unknowns` residue unknowns,
/// inertia orders in `2..=6` and a random incidence graph.
pub fn random_residue_config(rng: &mut impl Rng, max_unknowns: u32) -> ActionConfig {
    let mut c = ActionConfig::empty(FiniteGroupSpec::Abelian(vec![AMBIENT_ORDER]), true)
        .expect("valid group");
    let curves = rng.gen_range(1..=3);
    for k in 0..curves {
        c.curves.push(CurveClass::new(
            format!("C{k}"),
            rng.gen_range(2..=6),
            rng.gen_range(0..=1),
        ));
    }
    let points = rng.gen_range(1..=4);
    c.points = (0..points)
        .map(|k| PointOrbit::new(format!("p{k}")))
        .collect();
    let mut pairs: Vec<(usize, usize)> = (0..points)
        .flat_map(|p| (0..curves).map(move |q| (p, q)))
        .collect();
    pairs.shuffle(rng);
    let mut used = 0;
    for (p, q) in pairs {
        if used >= max_unknowns || !rng.gen_bool(0.6) {
            continue;
        }
        let branches = if used + 2 <= max_unknowns && rng.gen_bool(0.15) {
            2
        } else {
            1
        };
        used += branches;
        c.incidences.push(Incidence {
            point: format!("p{p}"),
            curve: format!("C{q}"),
            branches,
        });
    }
    c.validate().expect("random configs are valid");
    c
}

/// A random abelian group of order at most 32, as a list of cyclic factors.
pub fn random_small_group(rng: &mut impl Rng) -> Vec<u64> {
    loop {
        let len = rng.gen_range(1..=4);
        let m: Vec<u64> = (0..len).map(|_| rng.gen_range(2..=8)).collect();
        if m.iter().product::<u64>() <= 32 {
            return m;
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Trial {
    pub index: u64,
    pub kind: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// `count` residue trials followed by `count` cohomology trials.
pub fn oracle(seed: u64, count: u64) -> Vec<Trial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for index in 0..count {
        let c = random_residue_config(&mut rng, 6);
        let s = build_system(&c);
        let (passed, detail) = match (solve(&s), brute_force(&s)) {
            (Ok(a), Ok(b)) => (a.group == b, format!("solve {} / brute force {b}", a.group)),
            (a, b) => (false, format!("{:?} / {:?}", a.err(), b.err())),
        };
        out.push(Trial {
            index,
            kind: "residue",
            passed,
            detail,
        });
    }
    for index in 0..count {
        let m = random_small_group(&mut rng);
        let i = rng.gen_range(1..=3);
        let g = FiniteGroupSpec::Abelian(m.clone());
        let (passed, detail) = match (cohomology(&g), bar_oracle(&g, i)) {
            (Ok(t), Ok(b)) => {
                let f = t.get(i).expect("degree in range");
                (
                    *f == b,
                    format!("{g}, degree {i}: formula {f} / complex {b}"),
                )
            }
            (a, b) => (false, format!("{:?} / {:?}", a.err(), b.err())),
        };
        out.push(Trial {
            index,
            kind: "cohomology",
            passed,
            detail,
        });
    }
    out
}
