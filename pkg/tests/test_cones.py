import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gkzfactors.cones import Configuration
from gkzfactors.errors import DomainError

A23 = Configuration([[2, 3]])
A46 = Configuration([[1, 0, 1], [0, 2, 1]])
AW = Configuration([[1, 1, 0], [0, 1, 2]])
A54 = Configuration([[1, 0, 0, 1], [0, 1, 0, 1], [0, 0, 1, -1]])

small_configs = st.integers(1, 3).flatmap(
    lambda n: st.integers(1, 4).flatmap(
        lambda N: st.lists(
            st.lists(st.integers(-3, 3), min_size=N, max_size=N),
            min_size=n, max_size=n)))


def test_faces_of_identity():
    for n in (1, 2, 3):
        rows = [[int(i == j) for j in range(n)] for i in range(n)]
        assert len(Configuration(rows).all_faces()) == 2 ** n


def test_facets_fixture_values():
    assert [f.face.indices for f in A54.facets()] == \
        [(0, 2), (0, 3), (1, 2), (1, 3)]
    # facet of the coprime pair is the empty face with the identity functional
    (f,) = A23.facets()
    assert f.face.indices == ()
    assert f.value((1,)) == 1
    # wedge facets: the two boundary rays
    assert sorted(f.face.indices for f in AW.facets()) == [(0,), (2,)]


def test_facet_functional_axioms_on_fixtures():
    for config in (A23, A46, AW, A54):
        for f in config.facets():
            vals = [f.value(c) for c in config.cols]
            assert all(v >= 0 and v.denominator == 1 for v in vals)
            assert {j for j, v in enumerate(vals) if v == 0} == \
                set(f.face.indices)
            # primitivity: the functional hits 1 on the column lattice
            from math import gcd
            g = 0
            for b in config.lattice_basis:
                g = gcd(g, int(f.value(b)))
            assert g == 1


def test_face_codims():
    faces = {f.indices: f.codim for f in A46.all_faces()}
    assert faces == {(0, 1, 2): 0, (0,): 1, (1,): 1, (): 2}


def test_simplicial_family():
    f1, f2 = (A46.face((0,)), A46.face((1,)))
    assert A46.is_simplicial_family([f1, f2])
    facets54 = [A54.face(i) for i in ((0, 2), (0, 3), (1, 2), (1, 3))]
    assert not A54.is_simplicial_family(facets54)
    assert A54.is_simplicial_family([])


def test_hilbert_basis_and_normality():
    assert sorted(A46.saturation_hilbert_basis()) == [(0, 1), (1, 0)]
    assert A46.is_normal()[0] is False and A46.is_normal()[1] == (0, 1)
    assert A54.is_normal()[0] is True
    normal, hole = A23.is_normal()
    assert not normal and hole == (1,)
    assert sorted(A23.saturation_hilbert_basis()) == [(1,)]


def test_saturated_configuration_is_normal():
    for config in (A23, A46, AW):
        sat = config.saturated()
        assert sat.is_normal()[0] is True


def test_semigroup_member():
    assert A46.semigroup_member((3, 4))
    assert not A46.semigroup_member((0, 1))
    assert A46.semigroup_member((0, 0))


def test_non_pointed_configuration():
    config = Configuration([[1, -1, 0], [0, 0, 1]])
    assert not config.is_pointed()
    assert config.minimal_face().indices != ()
    # the unit direction is invertible, so every lattice point on the line is in
    assert config.semigroup_member((-5, 0))
    assert config.semigroup_member((3, 2))
    assert not config.semigroup_member((0, -1))
    hb = config.saturation_hilbert_basis()
    assert hb  # lifts plus the unit directions


def test_face_span_lattice_saturated():
    # QF ∩ ZA for the doubled column is generated by the primitive vector
    basis = A46.face_span_lattice(A46.face((1,)))
    assert sorted(tuple(abs(x) for x in b) for b in basis) == [(0, 1)]


def test_face_rejects_non_face():
    with pytest.raises(DomainError):
        A46.face((2,))  # interior column is not a face


@settings(max_examples=40, deadline=None)
@given(small_configs)
def test_facet_axioms_random(rows):
    if all(all(x == 0 for x in r) for r in rows):
        return
    config = Configuration(rows)
    if config.rank == 0:
        return
    from math import gcd
    for f in config.facets():
        vals = [f.value(c) for c in config.cols]
        assert all(v >= 0 and v.denominator == 1 for v in vals)
        assert {j for j, v in enumerate(vals) if v == 0} == set(f.face.indices)
        g = 0
        for b in config.lattice_basis:
            g = gcd(g, int(f.value(b)))
        assert g == 1


@settings(max_examples=30, deadline=None)
@given(small_configs)
def test_face_lattice_closed_under_intersection(rows):
    if all(all(x == 0 for x in r) for r in rows):
        return
    config = Configuration(rows)
    if config.rank == 0:
        return
    index_sets = {f.indices for f in config.all_faces()}
    for a in index_sets:
        for b in index_sets:
            assert tuple(sorted(set(a) & set(b))) in index_sets
