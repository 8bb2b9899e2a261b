use equicohom::cli::{default_fixtures_dir, load_fixtures};
use equicohom::config::{parse, serialize, validate_standard_form};

#[test]
fn fixtures_round_trip() {
    for f in load_fixtures(&default_fixtures_dir()).unwrap() {
        let text = serialize(&f.config);
        assert_eq!(parse(&text).unwrap(), f.config, "{}", f.name);
        assert_eq!(serialize(&parse(&text).unwrap()), text);
    }
}

#[test]
fn fixtures_have_only_predicted_warnings() {
    for f in load_fixtures(&default_fixtures_dir()).unwrap() {
        let predicted = f
            .expect
            .get("warnings")
            .and_then(|v| v.as_array())
            .map_or(0, Vec::len);
        assert_eq!(
            validate_standard_form(&f.config).len(),
            predicted,
            "{}",
            f.name
        );
    }
}

#[test]
fn documented_fixture_shape() {
    let f = load_fixtures(&default_fixtures_dir())
        .unwrap()
        .into_iter()
        .find(|f| f.name == "case_2_6")
        .unwrap();
    assert_eq!(f.config.curves.len(), 1);
    assert_eq!(
        (f.config.curves[0].d, f.config.curves[0].g_quotient),
        (3, 1)
    );
    assert!(f.config.incidences.is_empty());
}

#[test]
fn diagnostics_carry_position() {
    let err = parse("{\n  \"group\": {\"abelian\": [2]},\n  \"has_fixed_point\": tru\n}")
        .unwrap_err()
        .to_string();
    assert!(err.contains("line ") && err.contains("column "), "{err}");
}
