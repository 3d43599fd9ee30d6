"""Smoke tests for the compiled module: one probe per major surface."""

import os
from fractions import Fraction

import pytest

import cslab


def trace(horizon, events=()):
    return cslab.SubjectTrace(horizon, list(events))


def test_pairing_round_trip():
    assert cslab.pair_index(0, 0) == 0
    assert cslab.pair_index(1, 1) == 4
    for p in range(2000):
        n, k = cslab.unpair_index(p)
        assert cslab.pair_index(n, k) == p
    assert cslab.dyadic(3) == Fraction(1, 8)


def test_box_and_sequences():
    t = trace(8, [(3, "A", "affirm")])
    assert t.box(3, "A")
    assert not t.box(2, "A")
    r = cslab.brouwer1948_r(t, "A")
    assert r.prefix(4) == [Fraction(0), Fraction(0), Fraction(1, 8), Fraction(1, 8)]
    verdict = cslab.apart(cslab.constant(0), r, 8)
    assert verdict["status"] == "established"
    assert verdict["side"] == "right"
    assert verdict["certificate"]["witnessed_gap"] == Fraction(1, 8)


def test_undecided_stays_unknown():
    t = trace(10)
    r = cslab.brouwer1948_r(t, "A")
    verdict = cslab.apart(cslab.constant(0), r, 10)
    assert verdict["status"] == "unknown"
    assert verdict["depth"] == 10
    with pytest.raises(cslab.HorizonError):
        r.approx(30)


def test_heyting_and_checking():
    even = trace(8, [(4, "A", "doubleneg")])
    r, s = cslab.heyting_pair(even, "A")
    assert s.at(5) == Fraction(1, 16)
    assert cslab.apart(cslab.constant(0), s, 8)["status"] == "established"
    cond = cslab.conditional_checking("sqrt2", trace(8, [(3, "A", "affirm")]), "A")
    assert cond.at(4) == Fraction(7, 5)


def test_embedding_and_omega():
    half = cslab.dyadic_embed([1])
    assert abs(half.approx(30) - Fraction(1, 2)) <= Fraction(1, 2**30)
    sixth = cslab.dyadic_embed([1], tail=2)
    assert abs(sixth.approx(30) - Fraction(1, 6)) <= Fraction(1, 2**30)

    lo, hi, exact = cslab.omega(1, Fraction(3, 4))
    assert exact and lo == Fraction(1, 4)
    x, (slo, shi, _) = cslab.tangency_search(1, Fraction(1, 2**20))
    assert abs(x - Fraction(2, 3)) < Fraction(1, 10**5)
    assert abs((slo + shi) / 2 - Fraction(353553391, 10**9)) < Fraction(1, 10**6)


def test_bks_surface():
    t = trace(10, [(4, "A", "affirm")])
    alpha = cslab.alpha_from_trace(t, "A")
    assert alpha == [0, 0, 0, 1, 1, 1, 1, 1, 1, 1]
    assert cslab.dedup(alpha) == [0, 0, 0, 1, 0, 0, 0, 0, 0, 0]
    report = cslab.verify_bks_clauses(alpha, t, "A")
    assert report["strong_ok"]
    w = cslab.random_witness(t, "A", 42)
    assert w[:3] == [0, 0, 0] and w[3] > 0 and len(set(w[3:])) == 1


def test_logic_surface():
    t = trace(6, [(3, "A", "affirm")])
    assert cslab.eval_trace(t, "box[3](A)")
    assert not cslab.eval_trace(t, "box[2](A)")
    assert cslab.parse_formula("box[2]( A )->~ A") == "box[2](A) -> ~A"

    branch = cslab.check_branching("A | ~A", depth=3)
    assert not branch["forced_at_root"]
    niekus = cslab.check_branching(
        "G[2](box[1](A) | ~box[1](A)) -> box[1](A) | ~box[1](A)", depth=4
    )
    assert not niekus["valid"]

    found = cslab.countermodel_search("A | ~A", 31)
    assert found["found"] and found["worlds"] <= 31
    exhausted = cslab.countermodel_search("~~(A | ~A)", 31)
    assert not exhausted["found"]

    suite = cslab.check_axiom_suite(5, 1)
    assert suite["all_pass"]


def test_scenarios_when_available():
    scenario_dir = os.environ.get("CSLAB_SCENARIOS")
    if not scenario_dir:
        pytest.skip("CSLAB_SCENARIOS not set")
    ran = 0
    for name in sorted(os.listdir(scenario_dir)):
        if not name.endswith(".json"):
            continue
        code, lines = cslab.run_scenario(os.path.join(scenario_dir, name))
        assert code == 0, f"{name}: {lines}"
        ran += 1
    assert ran >= 12


def test_omega_csv(tmp_path):
    out = tmp_path / "omega.csv"
    cslab.emit_omega_csv(4, 8, str(out))
    text = out.read_text()
    assert text.startswith("x,sum_omega,tangent_pos,tangent_neg")
    assert "0.750000000000,0.250000000000" in text
