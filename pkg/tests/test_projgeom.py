from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from isocircles.exceptions import DegenerateInputError
from isocircles.exceptions import ProjectionCenterError
from isocircles.projgeom import AffinePoint3
from isocircles.projgeom import ProjPoint4
from isocircles.projgeom import iso_proj
from isocircles.projgeom import iso_unproj
from isocircles.projgeom import on_cylinder
from isocircles.projgeom import on_line_l

coords = st.fractions(min_value=-20, max_value=20, max_denominator=20)


def test_projective_equality():
    assert ProjPoint4(1, 2, 3, 4, 5) == ProjPoint4(-2, -4, -6, -8, -10)
    assert ProjPoint4([1, 0, 0, 0, 1]) != ProjPoint4(1, 0, 0, 0, 2)
    assert hash(ProjPoint4(1, 2, 0, 0, 3)) == hash(ProjPoint4(2, 4, 0, 0, 6))


def test_invalid_points():
    with pytest.raises(DegenerateInputError):
        ProjPoint4(0, 0, 0, 0, 0)
    with pytest.raises(ValueError):
        ProjPoint4(1, 2, 3)
    with pytest.raises(TypeError):
        ProjPoint4(0.5, 0, 0, 0, 1)


def test_line_l():
    p = ProjPoint4(0, 0, 7, 1, 1)
    assert on_line_l(p)
    assert on_cylinder(p)
    with pytest.raises(ProjectionCenterError) as e:
        iso_proj(p)
    assert e.value.details == {'point': ['0', '0', '7', '1', '1']}


def test_cylinder_needs_finite_point():
    assert not on_cylinder(ProjPoint4(0, 0, 1, 0, 0))
    assert not on_cylinder(ProjPoint4(1, 1, 0, 0, 1))


@given(coords, coords, coords)
def test_projection_inverse(x, y, z):
    """
    Verify unprojection lands on the cylinder away from the line l and
    projects back to the same point
    """
    a = AffinePoint3(x, y, z)
    p = iso_unproj(a)
    assert on_cylinder(p)
    assert not on_line_l(p)
    assert iso_proj(p) == a


def test_projection_known_points():
    assert iso_proj(ProjPoint4(0, 2, 4, -1, 1)) == AffinePoint3(0, 1, 2)
    assert iso_unproj(AffinePoint3(1, 0, Fraction(1, 2))) == ProjPoint4(2, 0, 1, 0, 2)
    assert AffinePoint3(1, 2, 3).top_view() == (1, 2)
    assert AffinePoint3(Fraction(1, 2), 0, -1).to_json() == ['1/2', '0', '-1']
