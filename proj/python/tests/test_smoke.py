from fractions import Fraction

import pytest

import bunkbed


def test_version():
    assert bunkbed.__version__


def test_resistance():
    assert bunkbed.resistance("C4", 0, 2) == 1
    assert bunkbed.resistance("C4", 0, 1) == Fraction(3, 4)
    assert bunkbed.resistance({"n": 2, "edges": [[0, 1, "1"]]}, 0, 1) == 1


def test_rc_prob():
    assert bunkbed.rc_connection_prob("K2", Fraction(1, 2), 2, 0, 1) == Fraction(1, 3)


def test_pseudoinverse_k3():
    P = bunkbed.pseudoinverse("K3")
    assert P[0][0] == Fraction(2, 9)
    assert P[0][1] == Fraction(-1, 9)


def test_graph_round_trip():
    g = bunkbed.graph("fig4-left")
    assert g["n"] == 4
    assert "K4" in bunkbed.named_graphs()


def test_run_request():
    r = bunkbed.run_request({"kind": "bunkbed", "graph": "K3", "grid": {"q": ["2"]}})
    assert r["verdict"] == "holds"
    assert Fraction(r["quantities"]["min_difference"]) >= 0
    assert bunkbed.run_request({"kind": "root143"})["verdict"] == "holds"


def test_table2_small():
    row = bunkbed.table2_row(3)
    assert row["inward"] == ["0.70", "1.08"]


def test_errors():
    with pytest.raises(Exception):
        bunkbed.resistance("nope", 0, 1)
    with pytest.raises(Exception):
        bunkbed.run_request({"kind": "nope"})
