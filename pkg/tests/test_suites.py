import pytest

from polyverse.suites import (
    LAWS,
    InstanceGenConfig,
    Report,
    SUITES,
    UnknownSuiteError,
    run_suite,
)


def test_unknown_suite_raises():
    with pytest.raises(UnknownSuiteError):
        run_suite("nope", InstanceGenConfig())


def test_config_bounds_validated():
    with pytest.raises(ValueError):
        InstanceGenConfig(count=0)
    with pytest.raises(ValueError):
        InstanceGenConfig(max_set_size=-1)
    with pytest.raises(ValueError):
        InstanceGenConfig(enumeration_cap=0)


def test_every_record_carries_a_registered_law():
    cfg = InstanceGenConfig(seed=1, count=3, max_set_size=2)
    for name in ("unique-adjustment", "type-isos", "slice-reduction"):
        rep = run_suite(name, cfg)
        for record in rep.records:
            assert record["law"] in LAWS
            assert LAWS[record["law"]]


def test_exit_codes():
    cfg = InstanceGenConfig(seed=1, count=3, max_set_size=2)
    rep = run_suite("unique-adjustment", cfg)
    assert rep.exit_code() == 0

    failing = Report("demo", cfg)
    failing.check("pentagon", "x", False)
    assert failing.exit_code() == 1

    starved = Report("demo", cfg)
    starved.skip("pentagon", "x", "over cap")
    assert starved.exit_code() == 3


def test_all_suites_runnable_small():
    cfg = InstanceGenConfig(seed=5, count=2, max_set_size=2)
    for name in SUITES:
        rep = run_suite(name, cfg)
        assert rep.failed == 0, (name, [r for r in rep.records if r["status"] == "fail"])


def test_unit_whisker_extensions_match_carrier():
    """Both unit-law composites act on the carrier's extension with fibres
    of the same cardinality as the carrier's own extension."""
    from polyverse.finset import FinFamily, FinSet, TERMINAL
    from polyverse.naturalmodel import mk_bool_universe, monad_law_cells, poly_of
    from polyverse.poly import extend

    u = mk_bool_universe()
    cells = monad_law_cells(u)
    X = FinFamily(TERMINAL, {"*": FinSet(["x", "y"])})
    base = extend(poly_of(u), X).fibre("*")
    for name in ("eta_p", "p_eta"):
        cell = cells[name]
        assert cell.src == poly_of(u)
        assert len(extend(cell.src, X).fibre("*")) == len(base)
