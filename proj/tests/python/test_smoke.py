import json
import math

import pytest

import approxstable as ax


def test_example1_threshold():
    market = ax.gen_example1()
    assert market.validate() == []
    assert ax.find_stable(market, 1.99) is None
    witness = ax.find_stable(market, 2.0)
    assert witness is not None
    assert ax.is_stable(market, witness, 2.0)
    best, _ = ax.best_alpha(market)
    assert best == 2.0


def test_example2_threshold():
    market = ax.gen_example2()
    best, matching = ax.best_alpha(market)
    assert abs(best - (1.0 + math.sqrt(17.0)) / 4.0) < 1e-6
    assert ax.min_alpha(market, matching) == pytest.approx(best)


def test_gda_meets_certified_alpha():
    market = ax.gen_example1(rendering="matroid_pair")
    alpha = ax.certified_alpha(market, "greedy_matroid")
    assert alpha == 2.0
    matching, trace = ax.run_gda(market, alg="greedy_matroid", tie_break="fifo")
    assert ax.is_stable(market, matching, alpha)
    assert json.loads(trace)["rounds"] >= 1


def test_json_round_trip():
    market = ax.gen_random(seed=7, doctors=6, hospitals=2, constraint="kmatroid", k=2)
    text = market.to_json()
    again = ax.market_from_json(text)
    assert again.to_json() == text

    matching, _ = ax.run_gda(market)
    parsed = ax.matching_from_json(market, matching.to_json(market))
    assert parsed.pairs(market) == matching.pairs(market)


def test_pack_and_report():
    market = ax.gen_example2()
    chosen, value = ax.solve_pack(market, "h1")
    assert chosen == ["d3", "d4"]
    assert value == pytest.approx(10.0 + 2.0 * math.sqrt(17.0))

    report = json.loads(ax.alpha_stability_check(market, ax.find_stable(market, 2.0), 2.0))
    assert report["verdict"] == "stable"
    assert {row["hospital"] for row in report["per_hospital"]} == {"h1", "h2"}


def test_lower_bound_generators():
    market, alpha = ax.gen_thm62(k=2)
    assert alpha == pytest.approx(1.9)
    assert ax.find_stable(market, alpha) is None

    market63, info = ax.gen_thm63(rho=1, eps=0.3)
    assert (info["r"], info["m"]) == (3, 2)
    assert len(market63.doctors) == 7
    assert info["alpha"] == pytest.approx(1.0 / 0.6)
    assert info["blocks"] == [[["d1", "d2", "d3"], ["d4", "d5", "d6"]]]


def test_validation_errors_surface():
    market = ax.gen_example1()
    with pytest.raises(ax.ValidationError):
        ax.market_from_json("{\"doctors\": [\"a\"]}")
    with pytest.raises(ValueError):
        ax.market_from_json(market.to_json()).utility_value("h1", ["nope"])
