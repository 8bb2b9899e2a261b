//! Fixture reproduction suite.
//!
//! Expected values live in each fixture's `metadata` as lines of the form
//! `expect <key> = <json>`.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;

use super::dj::{dj_grid, expected_rank, generate_dj};
use crate::brauer::{brute_force, build_system, solve, BRUTE_FORCE_LIMIT};
use crate::burnside::{compare_inc, compare_nfca, inc_class, nfca};
use crate::config::{parse, validate_standard_form, ActionConfig};
use crate::error::{Error, Result};
use crate::finabelian::FinAbGroup;
use crate::report::{compute_report, Delta3, H1Pic};

/// Fixtures the suite refuses to run without.
pub const REQUIRED_FIXTURES: [&str; 9] = [
    "case_2_6",
    "case_3_333",
    "case_3_33_1",
    "case_3_6_1",
    "case_D8",
    "dj_n2_r2_f4",
    "dj_n2_r4_f4",
    "exa_iota_a",
    "exa_iota_b",
];

pub fn default_fixtures_dir() -> PathBuf {
    match std::env::var_os("EQUICOHOM_FIXTURES") {
        Some(dir) => PathBuf::from(dir),
        None => PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures")),
    }
}

/// `expect <key> = <json>` lines of a metadata string.
pub fn expectations(metadata: &str) -> Result<BTreeMap<String, Value>> {
    let mut out = BTreeMap::new();
    for line in metadata.lines() {
        let Some(rest) = line.trim().strip_prefix("expect ") else {
            continue;
        };
        let (key, json) = rest
            .split_once('=')
            .ok_or_else(|| Error::config(format!("malformed expectation `{line}`")))?;
        let value: Value = serde_json::from_str(json.trim())
            .map_err(|e| Error::config(format!("expectation `{}`: {e}", key.trim())))?;
        out.insert(key.trim().to_string(), value);
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub fixture: String,
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

pub struct Fixture {
    pub name: String,
    pub config: ActionConfig,
    pub expect: BTreeMap<String, Value>,
}

pub fn load_fixture(path: &Path) -> Result<Fixture> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::config(format!("{}: {e}", path.display())))?;
    let config = parse(&text).map_err(|e| Error::config(format!("{}: {e}", path.display())))?;
    let expect = expectations(&config.metadata)?;
    let name = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or_default()
        .to_string();
    Ok(Fixture {
        name,
        config,
        expect,
    })
}

/// Every `*.json` fixture in `dir`, sorted by name.
pub fn load_fixtures(dir: &Path) -> Result<Vec<Fixture>> {
    let entries =
        fs::read_dir(dir).map_err(|e| Error::config(format!("{}: {e}", dir.display())))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    let fixtures = paths
        .iter()
        .map(|p| load_fixture(p))
        .collect::<Result<Vec<_>>>()?;
    for name in REQUIRED_FIXTURES {
        if !fixtures.iter().any(|f| f.name == name) {
            return Err(Error::config(format!(
                "missing fixture `{name}` in {}",
                dir.display()
            )));
        }
    }
    Ok(fixtures)
}

fn group_of(v: &Value) -> Result<FinAbGroup> {
    let factors: Vec<u64> =
        serde_json::from_value(v.clone()).map_err(|e| Error::config(e.to_string()))?;
    FinAbGroup::from_cyclic_factors(&factors)
}

struct Recorder<'a> {
    fixture: &'a str,
    checks: Vec<Check>,
}

impl Recorder<'_> {
    fn record(&mut self, check: &str, outcome: Result<(bool, String)>) {
        let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
        self.checks.push(Check {
            fixture: self.fixture.to_string(),
            check: check.to_string(),
            passed,
            detail,
        });
    }
}

fn compare(expected: &FinAbGroup, actual: &FinAbGroup) -> (bool, String) {
    (
        expected == actual,
        format!("expected {expected}, got {actual}"),
    )
}

fn check_fixture(f: &Fixture, all: &[Fixture]) -> Vec<Check> {
    let mut rec = Recorder {
        fixture: &f.name,
        checks: Vec::new(),
    };
    let c = &f.config;

    let warnings: Vec<String> = validate_standard_form(c)
        .into_iter()
        .map(|w| w.message)
        .collect();
    let predicted: Vec<String> = match f.expect.get("warnings") {
        Some(v) => serde_json::from_value(v.clone()).unwrap_or_default(),
        None => Vec::new(),
    };
    let ok = warnings.len() == predicted.len()
        && warnings
            .iter()
            .zip(&predicted)
            .all(|(w, p)| w.contains(p.as_str()));
    rec.record("warnings", Ok((ok, format!("{warnings:?}"))));

    let report = compute_report(c, None);
    for key in ["brauer", "h2", "h3"] {
        if let Some(v) = f.expect.get(key) {
            let outcome = report.as_ref().map_err(Clone::clone).and_then(|r| {
                let actual = match key {
                    "brauer" => &r.brauer,
                    "h2" => &r.h2,
                    _ => &r.h3,
                };
                Ok(compare(&group_of(v)?, actual))
            });
            rec.record(key, outcome);
        }
    }
    if let Some(v) = f.expect.get("h1_pic") {
        let outcome = report
            .as_ref()
            .map_err(Clone::clone)
            .and_then(|r| match (v, &r.h1_pic) {
                (Value::String(s), H1Pic::Undetermined { .. }) if s == "undetermined" => {
                    Ok((true, "undetermined".into()))
                }
                (Value::Array(_), H1Pic::Exact { exact }) => Ok(compare(&group_of(v)?, exact)),
                (_, other) => Ok((
                    false,
                    format!(
                        "expected {v}, got {}",
                        serde_json::to_string(other).unwrap_or_default()
                    ),
                )),
            });
        rec.record("h1_pic", outcome);
    }
    if let Ok(r) = &report {
        if c.has_fixed_point {
            let ok = match &r.h1_pic {
                H1Pic::Exact { exact } => exact.order() * r.h2.order() == r.brauer.order(),
                H1Pic::OrderOnly { order, .. } => order * r.h2.order() == r.brauer.order(),
                H1Pic::Undetermined { .. } => false,
            };
            rec.record(
                "exactness",
                Ok((
                    ok,
                    format!("|Br| = {}, |H2| = {}", r.brauer.order(), r.h2.order()),
                )),
            );
        }
    }
    if let Some(v) = f.expect.get("known_h1_delta3") {
        let outcome = (|| {
            let known = group_of(&v["known_h1"])?;
            let want = v["delta3"].as_str().unwrap_or_default();
            let r = compute_report(c, Some(&known))?;
            let got = match &r.delta3 {
                Delta3::Zero(_) => "zero",
                Delta3::Nontrivial(_) => "nontrivial",
                Delta3::Unknown => "unknown",
            };
            Ok((got == want, format!("expected {want}, got {got}")))
        })();
        rec.record("known_h1_delta3", outcome);
    }

    let system = build_system(c);
    let size: u128 = system.unknowns.iter().map(|u| u.modulus as u128).product();
    if size <= BRUTE_FORCE_LIMIT {
        let outcome = (|| {
            let a = solve(&system)?.group;
            let b = brute_force(&system)?;
            Ok(compare(&b, &a))
        })();
        rec.record("solve_vs_brute_force", outcome);
    }

    if let Some(v) = f.expect.get("inc_count") {
        let outcome = inc_class(c).map(|i| {
            let want = v.as_u64().unwrap_or(u64::MAX);
            (
                i.symbols.len() as u64 == want,
                format!("expected {want}, got {}", i.symbols.len()),
            )
        });
        rec.record("inc_count", outcome);
    }
    if let Some(v) = f.expect.get("inc_equal") {
        let other = v.as_str().unwrap_or_default();
        let outcome = (|| {
            let o = all
                .iter()
                .find(|g| g.name == other)
                .ok_or_else(|| Error::config(format!("no fixture `{other}`")))?;
            let eq = compare_inc(&inc_class(c)?, &inc_class(&o.config)?);
            Ok((eq, format!("inc({}) = inc({other}): {eq}", f.name)))
        })();
        rec.record("inc_equal", outcome);
    }
    if let Some(v) = f.expect.get("nfca_genus") {
        let outcome = (|| {
            let want: Vec<Option<u32>> =
                serde_json::from_value(v.clone()).map_err(|e| Error::config(e.to_string()))?;
            let got: Vec<Option<u32>> = nfca(c, 1)?
                .entries
                .iter()
                .map(|e| e.as_ref().map(|e| e.genus))
                .collect();
            Ok((want == got, format!("expected {want:?}, got {got:?}")))
        })();
        rec.record("nfca_genus", outcome);
    }
    if let Some(rest) = f.name.strip_prefix("dj_") {
        let outcome = (|| {
            let nums: Vec<u32> = rest
                .split('_')
                .map(|s| s[1..].parse().unwrap_or(0))
                .collect();
            let generated = generate_dj(nums[0], nums[1], nums[2])?;
            Ok((
                generated == *c,
                "fixture matches the dJ generator".to_string(),
            ))
        })();
        rec.record("generator", outcome);
    }
    rec.checks
}

/// Inc-equality implies NFCA-equality for every pair of cyclic fixtures of
/// the same order.
fn check_pairs(all: &[Fixture]) -> Vec<Check> {
    let mut rec = Recorder {
        fixture: "pairs",
        checks: Vec::new(),
    };
    let cyclic: Vec<&Fixture> = all.iter().filter(|f| f.config.group.is_cyclic()).collect();
    let mut ok = true;
    let mut detail = Vec::new();
    for (i, a) in cyclic.iter().enumerate() {
        for b in &cyclic[i + 1..] {
            let (Ok(ia), Ok(ib)) = (inc_class(&a.config), inc_class(&b.config)) else {
                continue;
            };
            if compare_inc(&ia, &ib) {
                let same = match (nfca(&a.config, 1), nfca(&b.config, 1)) {
                    (Ok(x), Ok(y)) => compare_nfca(&x, &y),
                    _ => false,
                };
                ok &= same;
                detail.push(format!("{}~{}:{}", a.name, b.name, same));
            }
        }
    }
    rec.record("inc_implies_nfca", Ok((ok, detail.join(" "))));
    rec.checks
}

/// `H^1(G, Pic X)` over the dJ grid.
fn check_dj_grid() -> Vec<Check> {
    let mut rec = Recorder {
        fixture: "dj_grid",
        checks: Vec::new(),
    };
    for (n, r, fixed) in dj_grid(5, 6) {
        let outcome = (|| {
            let c = generate_dj(n, r, fixed)?;
            let got = compute_report(&c, None)?;
            let want = FinAbGroup::power(2, expected_rank(r, fixed) as usize);
            Ok(match got.h1_pic.exact() {
                Some(h) => compare(&want, h),
                None => (false, "not exact".into()),
            })
        })();
        rec.record(&format!("n={n} r={r} fixed={fixed}"), outcome);
    }
    rec.checks
}

/// Runs every check; fails only if the fixtures cannot be loaded.
pub fn paper_suite(dir: &Path) -> Result<Vec<Check>> {
    let fixtures = load_fixtures(dir)?;
    let mut checks = Vec::new();
    for f in &fixtures {
        checks.extend(check_fixture(f, &fixtures));
    }
    checks.extend(check_pairs(&fixtures));
    checks.extend(check_dj_grid());
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expectation_lines() {
        let e =
            expectations("some prose\nexpect brauer = [3, 3]\n  expect h1_pic = \"undetermined\"")
                .unwrap();
        assert_eq!(e["brauer"], serde_json::json!([3, 3]));
        assert_eq!(e["h1_pic"], serde_json::json!("undetermined"));
        assert!(expectations("expect brauer [3]").is_err());
    }
}
