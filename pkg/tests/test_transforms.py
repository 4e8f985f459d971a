from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from solvnorm.classifier import validate
from solvnorm.datum import SphericalDatum, character_ambient, expand_active_set
from solvnorm.enumerator import sober_torus
from solvnorm.errors import CenterNotRegularSimple, RootSystemMismatch
from solvnorm.lattice import IntegerLattice
from solvnorm.normalizer import normalizer_report
from solvnorm.rootsys import reflect
from solvnorm.transforms import (
    conjugacy_chain,
    conjugacy_test,
    elementary_transformation,
    legal_centers,
    orbit,
    transformed_active_roots,
)

from helpers import catalog, full_with, rs, sl3

THIRD = Fraction(1, 3)


def test_sl3_transform():
    out = elementary_transformation(sl3(), 0)
    assert out.datum.M == ((1, 0),)
    # r_alpha1(omega1 - omega2) = omega1 - omega2 - alpha1 = -omega1
    expected = IntegerLattice.from_generators(character_ambient(out.rs), [(THIRD - 1, -THIRD)])
    assert out.ker_tau == expected
    assert validate(out).valid


def test_sl3_orbit_and_chain():
    assert len(orbit(sl3())) == 2
    assert conjugacy_chain(sl3(), elementary_transformation(sl3(), 0)) == [0]
    assert conjugacy_chain(sl3(), sl3()) == []


def test_b2_transform_is_trivial():
    full = sober_torus(SphericalDatum.make(rs("B2"), [(1, 1)], [0]))
    assert elementary_transformation(full, 1) == full


def test_fixed_point_orbits():
    a1 = sober_torus(SphericalDatum.make(rs("A2"), [(1, 0)], [0]))
    assert orbit(a1) == [a1]
    empty = full_with(rs("A2"), [], [])
    assert orbit(empty) == [empty]
    a2 = sober_torus(SphericalDatum.make(rs("A2"), [(0, 1)], [1]))
    assert not conjugacy_test(a1, a2)


def test_center_must_be_regular_simple():
    with pytest.raises(CenterNotRegularSimple):
        elementary_transformation(sl3(), 1)
    d = SphericalDatum.make(rs("A2"), [(1, 0), (0, 1)], [0, 1], [[0, 1]])
    with pytest.raises(CenterNotRegularSimple):
        elementary_transformation(sober_torus(d), 0)


def test_mismatched_systems():
    with pytest.raises(RootSystemMismatch):
        conjugacy_test(sl3(), full_with(rs("A2"), [], []))


@st.composite
def datum_with_center(draw):
    spec = draw(st.sampled_from(["A3", "B3", "C3", "G2", "A4", "D4", "B4"]))
    lattice = draw(st.sampled_from(["adjoint", "simply_connected"]))
    options = [f for f in catalog(spec, lattice, True) if legal_centers(f)]
    full = draw(st.sampled_from(options))
    return full, draw(st.sampled_from(legal_centers(full)))


@settings(max_examples=120, deadline=None)
@given(datum_with_center())
def test_transform_laws(case):
    full, d = case
    out = elementary_transformation(full, d)
    assert validate(out).valid
    assert expand_active_set(out).labels == transformed_active_roots(full, d)
    expected = {reflect(full.rs, d, b) for b in expand_active_set(full).psi if b != full.rs.simple_roots[d]}
    assert set(expand_active_set(out).psi) == expected | {full.rs.simple_roots[d]}
    assert d in legal_centers(out)
    assert elementary_transformation(out, d) == full
    assert normalizer_report(out).quotient_NH == normalizer_report(full).quotient_NH


@pytest.mark.parametrize("spec", ["A3", "B3", "G2"])
def test_orbit_is_an_equivalence_class(spec):
    for full in catalog(spec, "simply_connected", True)[:25]:
        members = orbit(full)
        reports = {normalizer_report(m).quotient_NH for m in members}
        assert len(reports) == 1
        for m in members:
            assert conjugacy_test(m, full)
            assert sorted(x.key() for x in orbit(m)) == sorted(x.key() for x in members)
