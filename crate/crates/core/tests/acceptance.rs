use std::process::ExitCode;
use std::time::Instant;

use equicohom::brauer::{brute_force, build_system, solve, BRUTE_FORCE_LIMIT};
use equicohom::burnside::{
    compare_inc, compare_nfca, inc_class, is_incompressible, nfca, BurnsideSymbol, CurveLabel,
    ResidualLabel,
};
use equicohom::cli::{
    default_fixtures_dir, expectations, generate_dj, load_fixtures, random_residue_config, run,
    Fixture, EXIT_INCONSISTENT,
};
use equicohom::config::{serialize, ActionConfig, CurveClass, Incidence, PointOrbit};
use equicohom::groupcoh::{bar_oracle, cohomology, FiniteGroupSpec};
use equicohom::report::{compute_report, Delta3, H1Pic};
use equicohom::FinAbGroup;
use num_integer::Integer;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn group(f: &[u64]) -> FinAbGroup {
    FinAbGroup::from_cyclic_factors(f).unwrap()
}

fn fixture<'a>(all: &'a [Fixture], name: &str) -> &'a ActionConfig {
    &all.iter()
        .find(|f| f.name == name)
        .unwrap_or_else(|| panic!("fixture {name}"))
        .config
}

/// Homology of a product of cyclic groups in degrees 1..=3 (at most three factors).
fn expected_abelian(m: &[u64]) -> [FinAbGroup; 3] {
    let mut pairs = Vec::new();
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            pairs.push(m[i].gcd(&m[j]));
        }
    }
    let mut h3: Vec<u64> = m.to_vec();
    h3.extend(&pairs);
    if m.len() == 3 {
        h3.push(m[0].gcd(&m[1]).gcd(&m[2]));
    }
    [group(m), group(&pairs), group(&h3)]
}

fn criterion_1() -> Outcome {
    let mut cases: Vec<Vec<u64>> = (1..=12).map(|m| vec![m]).collect();
    for a in 1..=8 {
        for b in 1..=8 {
            cases.push(vec![a, b]);
        }
    }
    for a in 1..=4 {
        for b in 1..=4 {
            for c in 1..=4 {
                cases.push(vec![a, b, c]);
            }
        }
    }
    for m in &cases {
        let factors: Vec<u64> = m.iter().copied().filter(|&x| x > 1).collect();
        let t = cohomology(&FiniteGroupSpec::Abelian(factors)).map_err(|e| e.to_string())?;
        let want = expected_abelian(m);
        ensure([t.h1.clone(), t.h2.clone(), t.h3.clone()] == want, || {
            format!("table mismatch for {m:?}")
        })?;
    }
    let d8 = cohomology(&FiniteGroupSpec::named("D8").unwrap()).map_err(|e| e.to_string())?;
    ensure(d8.h2 == group(&[2]) && d8.h3 == group(&[2, 2, 4]), || {
        "D8 table".into()
    })?;

    let start = Instant::now();
    let mut groups = Vec::new();
    fn partitions(rest: u64, min: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rest == 1 {
            out.push(cur.clone());
        }
        for k in min.max(2)..=rest {
            if rest.is_multiple_of(k) {
                cur.push(k);
                partitions(rest / k, k, cur, out);
                cur.pop();
            }
        }
    }
    for n in 1..=32 {
        partitions(n, 2, &mut Vec::new(), &mut groups);
    }
    for m in groups {
        let g = FiniteGroupSpec::Abelian(m.clone());
        let t = cohomology(&g).map_err(|e| e.to_string())?;
        for i in [2, 3] {
            let b = bar_oracle(&g, i).map_err(|e| e.to_string())?;
            ensure(t.get(i) == Some(&b), || {
                format!("oracle mismatch for {m:?} degree {i}")
            })?;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs <= 60.0, || format!("oracle portion took {secs:.1} s"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut seen = 0;
    for n in 1..=5u32 {
        for r in 1..=6u32 {
            for fixed in [0u32, 2, 4] {
                let parity_ok =
                    if fixed == 2 { r % 2 == 1 } else { r % 2 == 0 } && (r * n) % 2 == 0;
                let generated = generate_dj(n, r, fixed);
                ensure(generated.is_ok() == parity_ok, || {
                    format!("dJ n={n} r={r} fixed={fixed}: parity handling")
                })?;
                let Ok(c) = generated else { continue };
                seen += 1;
                let rank = match fixed {
                    4 => r - 2,
                    2 => r - 1,
                    _ => r,
                };
                let got = compute_report(&c, None).map_err(|e| e.to_string())?;
                ensure(
                    got.h1_pic.exact() == Some(&FinAbGroup::power(2, rank as usize)),
                    || format!("dJ n={n} r={r} fixed={fixed}: {:?}", got.h1_pic),
                )?;
            }
        }
    }
    ensure(seen > 0, || "empty grid".into())?;
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 1.0, || format!("grid took {secs:.2} s"))
}

fn criterion_3() -> Outcome {
    for p in [2u64, 3, 5] {
        for genus in 0..=3u32 {
            for solo in 0..=2 {
                let mut c = ActionConfig::empty(FiniteGroupSpec::Abelian(vec![p]), true).unwrap();
                c.curves.push(CurveClass::new("C", p, genus));
                for k in 0..solo {
                    c.points.push(PointOrbit::new(format!("x{k}")));
                    c.incidences.push(Incidence {
                        point: format!("x{k}"),
                        curve: "C".into(),
                        branches: 1,
                    });
                }
                c.validate().map_err(|e| e.to_string())?;
                let r = compute_report(&c, None).map_err(|e| e.to_string())?;
                let want = FinAbGroup::power(p, 2 * genus as usize);
                ensure(r.h1_pic.exact() == Some(&want), || {
                    format!("p={p} g={genus} solo={solo}: {:?}", r.h1_pic)
                })?;
            }
        }
    }
    Ok(())
}

fn criterion_4(all: &[Fixture]) -> Outcome {
    let timed = |name: &str, known: Option<&FinAbGroup>| {
        let start = Instant::now();
        let r = compute_report(fixture(all, name), known).map_err(|e| format!("{name}: {e}"))?;
        let secs = start.elapsed().as_secs_f64();
        ensure(secs < 1.0, || format!("{name} took {secs:.2} s"))?;
        Ok::<_, String>(r)
    };
    let r = timed("case_3_6_1", None)?;
    ensure(r.brauer.is_trivial(), || {
        format!("case_3_6_1: Br = {}", r.brauer)
    })?;
    let r = timed("case_2_6", None)?;
    ensure(
        r.brauer == group(&[3, 3]) && r.h1_pic.exact() == Some(&group(&[3, 3])),
        || "case_2_6".into(),
    )?;
    let r = timed("case_3_33_1", None)?;
    ensure(
        r.brauer == group(&[3, 3]) && r.h1_pic.exact() == Some(&group(&[3])),
        || "case_3_33_1".into(),
    )?;
    let r = timed("case_3_333", None)?;
    ensure(
        r.brauer == group(&[3, 3, 3])
            && r.h2 == group(&[3, 3, 3])
            && r.h3 == FinAbGroup::power(3, 7),
        || {
            format!(
                "case_3_333: Br = {}, H2 = {}, H3 = {}",
                r.brauer, r.h2, r.h3
            )
        },
    )?;
    let r = timed("case_3_333", Some(&group(&[3])))?;
    ensure(matches!(r.delta3, Delta3::Nontrivial(_)), || {
        "case_3_333 with known H1 = Z/3".into()
    })?;
    let r = timed("case_D8", None)?;
    ensure(
        r.brauer == group(&[2, 2]) && r.h1_pic.exact() == Some(&group(&[2])),
        || "case_D8".into(),
    )
}

fn criterion_5(all: &[Fixture]) -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for k in 0..200 {
        let s = build_system(&random_residue_config(&mut rng, 6));
        let a = solve(&s).map_err(|e| e.to_string())?.group;
        let b = brute_force(&s).map_err(|e| e.to_string())?;
        ensure(a == b, || {
            format!("random system {k}: solve {a}, brute force {b}")
        })?;
    }
    let mut enumerated = 0;
    for f in all {
        let s = build_system(&f.config);
        let size: u128 = s.unknowns.iter().map(|u| u.modulus as u128).product();
        if size > BRUTE_FORCE_LIMIT {
            continue;
        }
        enumerated += 1;
        let a = solve(&s).map_err(|e| e.to_string())?.group;
        let b = brute_force(&s).map_err(|e| e.to_string())?;
        ensure(a == b, || format!("{}: solve {a}, brute force {b}", f.name))?;
    }
    ensure(enumerated > 0, || {
        "no fixture small enough to enumerate".into()
    })?;
    let secs = start.elapsed().as_secs_f64();
    ensure(secs <= 30.0, || format!("took {secs:.1} s"))
}

fn criterion_6(all: &[Fixture]) -> Outcome {
    let sym = |genus, cyclic| {
        let z = ResidualLabel {
            order: 4,
            cyclic,
            label: String::new(),
        };
        BurnsideSymbol::new(
            2,
            z,
            CurveLabel {
                genus,
                label: String::new(),
            },
            1,
        )
        .unwrap()
    };
    ensure(is_incompressible(&sym(1, true)), || "positive genus".into())?;
    ensure(is_incompressible(&sym(0, false)), || {
        "noncyclic residual".into()
    })?;
    ensure(!is_incompressible(&sym(0, true)), || {
        "rational curve, cyclic residual".into()
    })?;

    let a = fixture(all, "exa_iota_a");
    let b = fixture(all, "exa_iota_b");
    let inc = |c| inc_class(c).map_err(|e| e.to_string());
    ensure(compare_inc(&inc(a)?, &inc(b)?), || {
        "iota pair: inc classes differ".into()
    })?;
    let conj = expectations(&a.metadata).map_err(|e| e.to_string())?;
    ensure(
        conj.get("conjugate").and_then(|v| v["value"].as_bool()) == Some(false),
        || "iota pair: metadata does not mark non-conjugacy".into(),
    )?;

    for name in ["dj_n2_r2_f4", "dj_n2_r4_f4"] {
        let c = fixture(all, name);
        let (n, r) = (
            c.group.order() as usize / 2,
            c.curves[0].g_upstairs.unwrap() as usize,
        );
        let entries = nfca(c, 1).map_err(|e| e.to_string())?.entries;
        let e = entries
            .get(n - 1)
            .cloned()
            .flatten()
            .ok_or(format!("{name}: no NFCA entry at index {n}"))?;
        ensure(e.genus as usize == r, || {
            format!("{name}: genus {}", e.genus)
        })?;
        ensure(
            entries
                .iter()
                .enumerate()
                .all(|(k, e)| (k == n - 1) == e.is_some()),
            || format!("{name}: stray entries"),
        )?;
    }

    let cyclic: Vec<&Fixture> = all.iter().filter(|f| f.config.group.is_cyclic()).collect();
    for (i, x) in cyclic.iter().enumerate() {
        for y in &cyclic[i + 1..] {
            if x.config.group.order() != y.config.group.order() {
                continue;
            }
            if compare_inc(&inc(&x.config)?, &inc(&y.config)?) {
                let nx = nfca(&x.config, 1).map_err(|e| e.to_string())?;
                let ny = nfca(&y.config, 1).map_err(|e| e.to_string())?;
                ensure(compare_nfca(&nx, &ny), || {
                    format!("{} ~ {} but NFCA differs", x.name, y.name)
                })?;
            }
        }
    }
    Ok(())
}

fn criterion_7(all: &[Fixture]) -> Outcome {
    for f in all.iter().filter(|f| f.config.has_fixed_point) {
        let r = compute_report(&f.config, None).map_err(|e| format!("{}: {e}", f.name))?;
        let h1 = match &r.h1_pic {
            H1Pic::Exact { exact } => exact.order(),
            H1Pic::OrderOnly { order, .. } => *order,
            H1Pic::Undetermined { .. } => return Err(format!("{}: undetermined", f.name)),
        };
        ensure(h1 * r.h2.order() == r.brauer.order(), || {
            format!("{}: |H1||H2| != |Br|", f.name)
        })?;
    }
    // Fixed point claimed, no curves: Br = 0 while H2 = Z/3.
    let c = ActionConfig::empty(FiniteGroupSpec::Abelian(vec![3, 3]), true).unwrap();
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("inconsistent.json");
    std::fs::write(&path, serialize(&c)).map_err(|e| e.to_string())?;
    let out = run(["equicohom".into(), "report".into(), path.into_os_string()]);
    ensure(out.code == EXIT_INCONSISTENT, || {
        format!("exit code {}: {}", out.code, out.stderr)
    })
}

fn main() -> ExitCode {
    let all = match load_fixtures(&default_fixtures_dir()) {
        Ok(all) => all,
        Err(e) => {
            println!("fixtures: {e}");
            return ExitCode::FAILURE;
        }
    };
    let results = [
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(&all),
        criterion_5(&all),
        criterion_6(&all),
        criterion_7(&all),
    ];
    let mut failed = false;
    for (k, r) in results.iter().enumerate() {
        match r {
            Ok(()) => println!("criterion {}: PASS", k + 1),
            Err(why) => {
                failed = true;
                println!("criterion {}: FAIL ({why})", k + 1);
            }
        }
    }
    if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
