import pytest

import config
from evaluation import reproduce
from evaluation.claims import CLAIMS, SUITE_NAMES, claim_for


def test_every_suite_has_a_claim():
    assert len(SUITE_NAMES) == len(set(SUITE_NAMES)) == len(CLAIMS)
    with pytest.raises(ValueError, match="Unknown suite"):
        claim_for("nope")


@pytest.mark.parametrize("name, kwargs", [
    ("detdeg", {"max_n": 3}),
    ("gcd", {"max_n": 8}),
    ("goodlabel", {"max_n": 4}),
    ("bl1", {"max_n": 5}),
    ("blocks", {"max_n": 5}),
    ("hook", {"max_n": 4}),
    ("center-gen", {}),
])
def test_suite_passes(name, kwargs):
    suite = reproduce.run_suite(name, **kwargs)
    assert suite["rows"]
    assert suite["findings"] == []
    assert suite["passed"]


def test_prime_column_four_blocks():
    suite = reproduce.run_suite("blocks-rprime", max_n=12, r_values=(3,))
    by_n = {row["n"]: row["actual"] for row in suite["rows"]}
    assert by_n[6] == 1 and by_n[12] == 1
    assert by_n[9] == 0
    assert suite["passed"]


def test_rprime_rejects_composite_r():
    with pytest.raises(ValueError, match="prime"):
        reproduce.run_suite("blocks-rprime", max_n=6, r_values=(4,))


def test_centrality_suite_small_grid():
    suite = reproduce.run_suite("centrality", max_n=4)
    families = {row["family"] for row in suite["rows"]}
    assert {"det", "za", "even", "chain"} <= families
    assert suite["findings"] == []


def test_oracle_suite(monkeypatch):
    monkeypatch.setattr(config, "RANDOM_CASES", 40)
    suite = reproduce.run_suite("oracle")
    assert len(suite["rows"]) == 43
    assert suite["passed"]


def test_goodlabel_skips_bad_moduli():
    suite = reproduce.run_suite("goodlabel", max_n=3, moduli=(3,))
    assert all(row["m"] == 3 for row in suite["rows"])
    assert all(not (row["n"] == 3 and row["r"] == 3) or row["expected"] == 27 for row in suite["rows"])


def test_cells_keep_order_with_workers(monkeypatch):
    serial = reproduce.run_suite("gcd", max_n=4)
    monkeypatch.setattr(config, "WORKERS", 2)
    parallel = reproduce.run_suite("gcd", max_n=4)
    assert parallel["rows"] == serial["rows"]


def test_unknown_suite():
    with pytest.raises(ValueError, match="Unknown suite"):
        reproduce.run_suite("nope")


def test_empty_grid_rejected():
    with pytest.raises(ValueError, match="no cells"):
        reproduce.run_suite("detdeg", max_n=2, moduli=(2,))
