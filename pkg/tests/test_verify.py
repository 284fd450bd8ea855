from permbij.bijections import SOURCE
from permbij.permcore import avoiders
from permbij.verify import (
    SUITES,
    _alpha_chunk,
    _chunks,
    _merge,
    _run_chunks,
    default_workers,
    run_suite,
)


def test_worker_pool_gives_same_report():
    words = avoiders(6, SOURCE)
    serial = _merge(_run_chunks(_alpha_chunk, _chunks(words), 1))
    pooled = _merge(_run_chunks(_alpha_chunk, _chunks(words), 2))
    assert serial == pooled


def test_default_workers_reads_environment(monkeypatch):
    monkeypatch.setenv("PERMBIJ_WORKERS", "3")
    assert default_workers() == 3
    monkeypatch.setenv("PERMBIJ_WORKERS", "junk")
    assert default_workers() == 1


def test_every_suite_runs_at_small_size():
    expected_failures = {"adjacency", "saturation-equation", "section-2.1"}
    for name in SUITES:
        res = run_suite(name, 6)
        assert res.passed == (name not in expected_failures), res.report()
        assert res.report().startswith(name)
