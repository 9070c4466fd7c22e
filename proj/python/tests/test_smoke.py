import math
import os
from pathlib import Path

import pytest

import sskit

FIXTURES = Path(os.environ.get("SSKIT_FIXTURES", Path(__file__).resolve().parents[2] / "fixtures"))


def test_subdivision_counts():
    for n in range(1, 5):
        x = sskit.sd_simplex(n).complex
        assert x.count(0) == 2 ** (n + 1) - 1
        assert x.nondegenerate_count(n) == math.factorial(n + 1)


def test_complex_round_trip_and_errors():
    x = sskit.load_complex(str(FIXTURES / "delta2.sset"))
    assert x.violations() == []
    assert sskit.parse_complex(x.to_text()).to_text() == x.to_text()
    assert len(sskit.load_complex(str(FIXTURES / "broken_identity.ssset")).violations()) == 3
    with pytest.raises(sskit.ParseError, match="line 6"):
        sskit.load_complex(str(FIXTURES / "bad_index.ssset"))
    assert issubclass(sskit.ParseError, sskit.Error)


def test_ex_and_m_map():
    interval = sskit.standard_simplex(1, 2)
    level = sskit.ex_level(interval, 1)
    assert len(level) == 5
    assert {0b01: 0, 0b10: 1, 0b11: 1} in level
    assert len(sskit.ex_eq_level(interval, 1)) == 3
    for k in range(3):
        assert sskit.m_map_injective(sskit.standard_simplex(2, 1), k)
    with pytest.raises(sskit.BudgetExceeded):
        sskit.ex_level(sskit.standard_simplex(2, 1), 2, budget=3)


def test_kan():
    for text in sskit.category_fixtures():
        nerve = sskit.nerve(sskit.materialize(sskit.parse_presentation(text)), 3)
        report = sskit.check_inner_kan(nerve, 3)
        assert report.passed() and report.unique_fillers()
    report = sskit.check_kan(sskit.standard_simplex(1, 2), 2)
    assert not report.passed()
    witnesses = [w for r in report.results if (r.n, r.j) == (2, 0) for w in r.witnesses]
    assert witnesses[0].startswith("Lambda^2_0")


def test_localization():
    arrow = sskit.materialize(sskit.parse_presentation("cat\nobj 0\nobj 1\narr f 0 1\n"))
    loc = sskit.localize(arrow, [arrow.find_arrow("f")])
    assert loc.arrow_count == 4
    assert all(loc.is_iso(f) for f in range(loc.arrow_count))
    report = sskit.verify_max_localization(2, arrow)
    assert report["ok"] and report["left"] == report["right"] == 3
    assert all(ok for _, ok in sskit.verify_stab_fixtures())


def test_collars():
    rng = sskit.Sampler(1)
    for _ in range(200):
        x = rng.simplex_point(4)
        assert abs(sum(sskit.partition_g(x)) - 1) <= 1e-9
        assert sskit.verify_partition_support(x) == (True, True)
    report = sskit.verify_coherence([0], [0, 1], [0, 1, 2], samples=32, steps=64, seed=5)
    assert report.passed and report.max_residual <= 1e-6
    again = sskit.verify_coherence([0], [0, 1], [0, 1, 2], samples=32, steps=64, seed=5)
    assert again.residuals == report.residuals


def test_movies():
    field, ok = sskit.movie_verify("q*s", "p dq")
    assert ok
    assert field == "(p + s) d/dp + (q + sigma) d/dsigma"
    assert sskit.liouville_field("p dq + sigma ds") == "p d/dp + sigma d/dsigma"
    with pytest.raises(sskit.Error, match="non-Darboux"):
        sskit.liouville_field("p dq")
    assert len(sskit.movie_fixtures()) == 20
    assert sskit.verify_movie_fixtures()


def test_cli():
    code, out, _ = sskit.cli(["--machine", "movie-verify", "--h", "q*s"])
    assert code == 0
    assert "result pass" in out.splitlines()
    code, _, err = sskit.cli(["sd", "--bogus"])
    assert code == 2
