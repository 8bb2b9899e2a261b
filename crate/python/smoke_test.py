"""Smoke test for the equicohom extension module.

Build and install first:
    pip install maturin
    maturin build --release -m crates/python/Cargo.toml -o dist
    pip install dist/equicohom-*.whl
"""

from pathlib import Path

import equicohom as eq

FIXTURES = Path(__file__).resolve().parent.parent / "crates" / "core" / "fixtures"


def main() -> None:
    h1, h2, h3 = eq.cohomology([3, 3, 3])
    assert h2 == eq.FinAbGroup([3, 3, 3])
    assert h3.rank == 7
    assert eq.bar_oracle([2, 4], 3) == eq.cohomology([2, 4])[2]
    assert eq.cohomology("D8")[1] == eq.FinAbGroup([2])

    cfg = eq.ActionConfig.load(FIXTURES / "case_3_33_1.json")
    assert eq.brauer(cfg) == eq.FinAbGroup([3, 3])
    assert eq.brauer(cfg) == eq.brute_force(cfg)
    r = eq.report(cfg)
    assert r["h1_pic"] == {"exact": [3]}, r

    big = eq.ActionConfig.load(FIXTURES / "case_3_333.json")
    r = eq.report(big, known_h1=eq.FinAbGroup([3]))
    assert "nontrivial" in r["delta3"], r

    a = eq.ActionConfig.load(FIXTURES / "exa_iota_a.json")
    b = eq.ActionConfig.load(FIXTURES / "exa_iota_b.json")
    assert eq.compare_inc(a, b)
    assert [e and e["genus"] for e in eq.nfca(a)["entries"]] == [None, 4, None]

    dj = eq.de_jonquieres(2, 4, 4)
    assert eq.report(dj)["h1_pic"] == {"exact": [2, 2]}
    assert eq.ActionConfig.from_json(dj.to_json()).to_json() == dj.to_json()

    try:
        eq.report(eq.ActionConfig.from_json('{"group": {"abelian": [3, 3]}, "has_fixed_point": true}'))
    except eq.InconsistentError:
        pass
    else:
        raise AssertionError("expected InconsistentError")
    try:
        eq.cohomology("Q8")
    except eq.ConfigError:
        pass
    else:
        raise AssertionError("expected ConfigError")

    print("smoke test passed")


if __name__ == "__main__":
    main()
