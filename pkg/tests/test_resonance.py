from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gkzfactors.cones import Configuration
from gkzfactors import resonance as rs
from gkzfactors.errors import DomainError

A23 = Configuration([[2, 3]])
AW = Configuration([[1, 1, 0], [0, 1, 2]])
A54 = Configuration([[1, 0, 0, 1], [0, 1, 0, 1], [0, 0, 1, -1]])
A46 = Configuration([[1, 0, 1], [0, 2, 1]])


def test_classify_examples():
    p = rs.classify(A46, (0, 0))
    assert not p.is_nonresonant and p.is_weak and p.is_semi
    p = rs.classify(A23, (Fraction(1, 2),))
    assert p.is_nonresonant
    p = rs.classify(A54, (0, 0, 0))
    assert p.is_weak and p.is_semi and len(p.resonant_facets) == 4


def test_in_res():
    assert rs.in_res(A23, (7,))
    assert not rs.in_res(A23, (Fraction(1, 2),))
    assert rs.in_res(AW, (Fraction(1, 3), 5))


def test_in_res_domain_error():
    with pytest.raises(DomainError):
        rs.in_res(A23, (1, 2))
    config = Configuration([[1, 2], [0, 0]])
    with pytest.raises(DomainError):
        rs.classify(config, (0, 1))  # outside the column span


def test_sres_line_fixture():
    got = {g for g in range(-6, 7) if rs.in_sres(A23, (g,))}
    assert got == set(range(-6, 0)) | {1}


def test_sres_wedge_probes():
    assert rs.in_sres(AW, (0, Fraction(7, 3)))
    assert not rs.in_sres(AW, (Fraction(1, 2), Fraction(1, 2)))
    assert rs.in_sres(AW, (-2, Fraction(1, 3)))
    assert rs.in_sres(AW, (Fraction(5, 1), -2))
    assert not rs.in_sres(AW, (1, Fraction(1, 2)))


def test_dres_line_fixture():
    got = {g for g in range(-6, 7) if rs.in_dres(A23, (g,)).is_true}
    assert got == {2, 3, 4, 5, 6}
    out = rs.in_dres(A23, (-2,))
    assert out.verdict == "false_up_to_bounds"
    assert out.bounds.get("certified")  # the stratum reduction is complete


def test_dres_wedge_probes():
    assert rs.in_dres(AW, (3, Fraction(1, 2))).is_true
    assert rs.in_dres(AW, (Fraction(1, 2), 2)).is_true
    assert rs.in_dres(AW, (Fraction(1, 2), Fraction(1, 3))).verdict == "false"


def test_dres_normal_cross_check_path():
    # a normal configuration takes the exact facet-test branch
    assert rs.in_dres(A54, (1, 0, 0)).is_true
    assert rs.in_dres(A54, (0, 0, 0)).verdict == "false"


def test_signed_facet_sets():
    assert not rs.in_SRes(A23, (1,))      # contrast with sres
    assert rs.in_sres(A23, (1,))
    assert rs.in_SRes(A23, (-4,))
    assert not rs.in_SRes(AW, (0, Fraction(1, 2)))
    assert not rs.in_DRes(AW, (0, Fraction(1, 2)))
    got = {g for g in range(-6, 7) if rs.in_DRes(A23, (g,))}
    assert got == set(range(1, 7))
    got = {g for g in range(-6, 7) if rs.in_SRes(A23, (g,))}
    assert got == set(range(-6, 0))


def test_wres():
    assert rs.in_wres(A23, (1,)).verdict == "true"
    assert rs.in_wres(A23, (Fraction(1, 2),)).verdict == "false"
    # normal and weak-nonresonant: definite false
    assert rs.in_wres(A54, (0, 0, 0)).verdict == "false"


def test_region_scan():
    grid = rs.region_scan(A23, "sres", [(-6, 6)], 1)
    got = sorted(int(c["gamma"][0]) for c in grid if c["verdict"] == "true")
    assert got == [-6, -5, -4, -3, -2, -1, 1]
    assert rs.region_scan(A23, "sres", [(3, 2)], 1) == []
    grid = rs.region_scan(AW, "res", [(0, 1), (0, 1)], Fraction(1, 2))
    assert len(grid) == 9
    with pytest.raises(DomainError):
        rs.region_scan(A23, "nonsense", [(0, 1)], 1)


def test_region_scan_outside_span():
    config = Configuration([[1, 2], [0, 0]])
    grid = rs.region_scan(config, "res", [(0, 1), (0, 1)], 1)
    verdicts = {tuple(c["gamma"]): c["verdict"] for c in grid}
    assert verdicts[(0, 1)] == "outside"
    assert verdicts[(1, 0)] in ("true", "false")


small_configs = st.integers(1, 2).flatmap(
    lambda n: st.integers(1, 3).flatmap(
        lambda N: st.lists(
            st.lists(st.integers(-2, 3), min_size=N, max_size=N),
            min_size=n, max_size=n)))
small_gammas = st.lists(st.integers(-3, 3), min_size=1, max_size=2)


@settings(max_examples=25, deadline=None)
@given(small_configs, small_gammas, st.integers(1, 3))
def test_implication_chain_random(rows, gamma_raw, denom):
    if all(all(x == 0 for x in r) for r in rows):
        return
    config = Configuration(rows)
    if config.rank == 0:
        return
    # build a parameter inside the span from random lattice coefficients
    gamma = tuple(
        sum(Fraction(c, denom) * Fraction(b[i])
            for c, b in zip(gamma_raw, config.lattice_basis))
        for i in range(config.n))
    prof = rs.classify(config, gamma)
    sres = rs.in_sres(config, gamma)
    dres = rs.in_dres(config, gamma)
    wres = rs.in_wres(config, gamma)
    res = rs.in_res(config, gamma)
    # one-sided implications valid for every configuration
    if not sres:
        assert prof.is_semi
    if dres.is_true:
        assert rs.in_DRes(config, gamma)
    # chain: sres ⊆ wres ⊆ res
    if sres:
        assert wres.verdict == "true"
    if wres.verdict == "true":
        assert res
    # equivalences under normality
    if config.is_normal()[0]:
        assert sres == (not prof.is_semi)
        assert dres.is_true == rs.in_DRes(config, gamma)
        assert (wres.verdict == "true") == (not prof.is_weak)
