import pytest

from core.bundle import extract_invariants
from services.verification import (
    faulty_nielsen_number,
    grid_pairs,
    pair_checks,
    run_verification,
)


def test_grid_covers_every_combo():
    pairs = list(grid_pairs(6, 6))
    combos = [pair.combo for pair in pairs]
    assert len(pairs) == 13 * 13 + 13 * 2 + 13 + 2
    assert len(set(combos)) == 4
    assert all(pair.q == 0 for pair in pairs if pair.domain is not pair.codomain)


@pytest.mark.parametrize(
    "spec",
    [("K", "K", 4, 1), ("K", "K", -7, 0), ("T", "T", 6, 4), ("T", "T", 0, 0), ("K", "T", 0, 5), ("T", "K", 0, 0)],
)
def test_single_pair_checks_agree(make_pair, spec):
    results = pair_checks(make_pair(*spec), window=10)
    assert all(outcome is not False for outcome in results.values()), results


def test_not_applicable_checks_are_skipped(make_pair):
    results = pair_checks(make_pair("T", "T", 3, 2), window=10)
    assert results["involution_identity"] is None
    assert results["klein_wraps"] is None
    assert results["torus_wraps"] is True


def test_small_grid_passes():
    summary = run_verification(qmax=6, rmax=6, window=20)
    assert summary.ok, {name: t.failures for name, t in summary.tallies.items() if t.failed}
    assert summary.pairs == 210
    assert summary.tallies["dold_coherence"].passed == 1
    assert summary.tallies["root_invariant_injective"].passed == 1


def test_injected_fault_is_detected():
    summary = run_verification(qmax=4, rmax=4, window=10, nielsen=faulty_nielsen_number)
    assert not summary.ok
    assert summary.tallies["nielsen_is_reidemeister"].failed > 0
    assert "KK(q=2, r=1)" in summary.tallies["nielsen_is_reidemeister"].failures


def test_window_must_be_positive():
    with pytest.raises(ValueError):
        run_verification(qmax=2, rmax=2, window=0)


def test_process_pool_matches_serial_run():
    serial = run_verification(qmax=3, rmax=3, window=5)
    pooled = run_verification(qmax=3, rmax=3, window=5, workers=2)
    assert {n: (t.passed, t.skipped) for n, t in serial.tallies.items()} == {
        n: (t.passed, t.skipped) for n, t in pooled.tallies.items()
    }


def test_extraction_roundtrip_check(make_pair):
    assert pair_checks(make_pair("T", "T", 16, 3), window=10)["extract_roundtrip"] is True
    assert pair_checks(make_pair("K", "K", -15, 1), window=10)["extract_roundtrip"] is True
    assert pair_checks(make_pair("T", "T", 21, 3), window=10)["extract_roundtrip"] is None


def test_wrong_extraction_is_detected(monkeypatch):
    def truncated(evaluator, domain, codomain):
        q, r = extract_invariants(evaluator, domain, codomain)
        return q % 8, r

    monkeypatch.setattr("services.verification.extract_invariants", truncated)
    summary = run_verification(qmax=9, rmax=1, window=5)
    assert not summary.ok
    tally = summary.tallies["extract_roundtrip"]
    assert tally.failures[0] == "TT(q=-9, r=-1)"
    assert tally.passed > 0
