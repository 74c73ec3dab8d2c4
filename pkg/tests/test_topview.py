from fractions import Fraction

import pytest

from isocircles.bilinfrac import UV
from isocircles.bilinfrac import Mat2C
from isocircles.bilinfrac import Moebius
from isocircles.exceptions import DegenerateInputError
from isocircles.exceptions import DualConicError
from isocircles.exceptions import NoEnvelopeError
from isocircles.exceptions import TopViewDegenerateError
from isocircles.polyring import U
from isocircles.polyring import V
from isocircles.polyring import BiPoly
from isocircles.rng import SplitMix64
from isocircles.rng import random_parabolic_surface
from isocircles.scalars import GaussianRational
from isocircles.surface import IsoCircleSurface
from isocircles.surface import ParabolicSurface
from isocircles.topview import CIRCLE
from isocircles.topview import CONCENTRIC_CIRCLES
from isocircles.topview import LINE
from isocircles.topview import LINEAR_FAMILY
from isocircles.topview import PARALLEL_LINES
from isocircles.topview import POINT
from isocircles.topview import SAMPLE_VALUES
from isocircles.topview import SMOOTH_CONIC
from isocircles.topview import TWO_PENCILS
from isocircles.topview import BasePoints
from isocircles.topview import CircleFamily
from isocircles.topview import Cyclic
from isocircles.topview import GeneralizedCircle
from isocircles.topview import HermForm
from isocircles.topview import cyclic_transform
from isocircles.topview import dual_conic_param1
from isocircles.topview import dual_conic_residual
from isocircles.topview import envelope_cyclic
from isocircles.topview import family_lines
from isocircles.topview import family_product
from isocircles.topview import family_sum
from isocircles.topview import linear_envelope
from isocircles.topview import moebius_image_circle
from isocircles.topview import rational_points
from isocircles.topview import sum_envelope
from isocircles.topview import tangency_points
from isocircles.topview import top2_pipeline

I = GaussianRational(0, 1)
UNIT = GeneralizedCircle.unit_circle()
#: v -> i v + 2, the line Re w = 2
RE_TWO = (I, 2, 0, 1)
#: v -> (v - i) / (v + i), the unit circle
ONTO_UNIT = (1, -I, 1, I)


def _cyclic(terms):
    return Cyclic(BiPoly(terms))


RADIUS_TWO = _cyclic({(2, 0): 1, (0, 2): 1, (0, 0): -4})


@pytest.mark.parametrize('circle, z, expected', [
    (UNIT, I, True),
    (UNIT, 2, False),
    (UNIT, GaussianRational(Fraction(3, 5), Fraction(-4, 5)), True),
    (GeneralizedCircle.line(0, 1, 0), 5, True),
    (GeneralizedCircle.line(0, 1, 0), I, False),
    (GeneralizedCircle.line(1, 0, -2), 2 + 7 * I, True),
    (GeneralizedCircle.from_center_radius(1 + I, 4), 3 + I, True),
])
def test_contains(circle, z, expected):
    assert circle.contains(z) is expected


def test_contains_float():
    assert UNIT.contains(complex(0.6, 0.8), tol=1e-9)
    assert not UNIT.contains(complex(0.6, 0.81), tol=1e-9)


def test_circle_geometry():
    c = GeneralizedCircle.from_center_radius(GaussianRational(1, -2), 9)
    assert c.center() == GaussianRational(1, -2)
    assert c.radius_sq() == 9
    assert c.has_real_locus()
    assert not GeneralizedCircle(1, 0, 1).has_real_locus()
    with pytest.raises(DegenerateInputError):
        GeneralizedCircle.line(1, 1, 0).center()
    with pytest.raises(DegenerateInputError):
        GeneralizedCircle(0, 0, 0)


def test_from_moebius_data():
    line = GeneralizedCircle.from_moebius_data(*RE_TWO)
    assert line.is_line()
    assert line.contains(2 + 5 * I)
    assert line.same_as(GeneralizedCircle.line(1, 0, -2))

    assert GeneralizedCircle.from_moebius_data(*ONTO_UNIT).same_as(UNIT)

    with pytest.raises(DegenerateInputError):
        GeneralizedCircle.from_moebius_data(1, 2, 2, 4)


@pytest.mark.parametrize('circle', [
    UNIT,
    GeneralizedCircle.from_center_radius(GaussianRational(1, 2), 25),
    GeneralizedCircle.line(2, -1, 3),
])
def test_moebius_data_round_trip(circle):
    points = rational_points(circle)
    assert len(set(points)) == 3
    assert all(circle.contains(z) for z in points)
    assert GeneralizedCircle.from_moebius_data(*circle.to_moebius_data()).same_as(circle)


def test_rational_points_empty_locus():
    with pytest.raises(DegenerateInputError):
        rational_points(GeneralizedCircle(1, 0, 1))


@pytest.mark.parametrize('matrix, expected', [
    (Mat2C.identity(), UNIT),
    (Mat2C.swap(), UNIT),
    (Mat2C(1, 1, 0, 1), GeneralizedCircle.from_center_radius(1, 1)),
    (Mat2C(2, 0, 0, 1), GeneralizedCircle.from_center_radius(0, 4)),
])
def test_moebius_image_circle(matrix, expected):
    assert moebius_image_circle(Moebius(matrix), UNIT).same_as(expected)


def test_family_product_worked_example():
    family = family_product(UNIT, RE_TWO)
    assert family.A == HermForm(0, 0, -1)
    assert family.B == HermForm(0, 0, 0)
    assert family.C == HermForm(1, 0, -4)
    assert family.discriminant() == 4 * (U ** 2 + V ** 2 - 4)
    assert envelope_cyclic(family) == RADIUS_TWO


def test_family_members():
    family = family_product(UNIT, RE_TWO)
    member = GeneralizedCircle.from_form(family.member(1))
    assert member.center() == 0
    assert member.radius_sq() == 5
    assert family.derivative(3) == HermForm(0, 0, -6)


def test_pencil_has_no_envelope():
    family = family_product(UNIT, ONTO_UNIT)
    with pytest.raises(NoEnvelopeError) as e:
        envelope_cyclic(family)
    assert e.value.reason == 'pencil'


def test_linear_family(diagnostics):
    """
    Circles ``v (z + zbar) + z zbar - 1 = 0`` all pass through the base
    points (0, 1) and (0, -1)
    """
    family = CircleFamily(HermForm(), HermForm(0, 1, 0), HermForm(1, 0, -1))
    envelope = envelope_cyclic(family)
    assert isinstance(envelope, BasePoints)
    assert envelope.kind == LINEAR_FAMILY
    assert len(envelope.points) == 2
    assert envelope.points[0] == pytest.approx((0, -1))
    assert envelope.points[1] == pytest.approx((0, 1))
    for x, y in envelope.points:
        for v in (0, 1, -3):
            assert family.member(v).evaluate(complex(x, y)) == pytest.approx(0, abs=1e-9)
    assert [d['code'] for d in diagnostics.entries] == ['linear_family']


def test_linear_family_of_parallel_lines():
    line = GeneralizedCircle.line(1, 0, 0)
    envelope, shape = sum_envelope(line, (1, 0, 0, 1))
    assert envelope == BasePoints(LINEAR_FAMILY, [])
    assert shape == LINEAR_FAMILY


def test_linear_envelope_errors():
    with pytest.raises(DegenerateInputError):
        linear_envelope(family_product(UNIT, RE_TWO))
    same = CircleFamily(HermForm(), HermForm(1, 0, -1), HermForm(2, 0, -2))
    with pytest.raises(NoEnvelopeError):
        envelope_cyclic(same)


def test_family_data_must_be_exact():
    with pytest.raises(TypeError):
        family_product(UNIT, (1j, 2, 0, 1))
    with pytest.raises(DegenerateInputError):
        family_sum(UNIT, (1, 2, 2, 4))


@pytest.mark.parametrize('data, cyclic, shape', [
    ((3, -3 * I, 1, I), _cyclic({
        (4, 0): 1, (2, 2): 2, (0, 4): 1, (2, 0): -20, (0, 2): -20, (0, 0): 64,
    }), CONCENTRIC_CIRCLES),
    ((1, 0, 0, 1), _cyclic({(0, 2): 1, (0, 0): -1}), PARALLEL_LINES),
    ((1, -I, 1, I), _cyclic({(4, 0): 1, (2, 2): 2, (0, 4): 1, (2, 0): -4, (0, 2): -4}), CIRCLE),
])
def test_sum_envelope(data, cyclic, shape):
    assert sum_envelope(UNIT, data) == (cyclic, shape)


def test_cyclic_normalization():
    c = _cyclic({(2, 0): -3, (0, 2): -3, (0, 0): 12})
    assert c == RADIUS_TWO
    assert str(c) == 'x^2 + y^2 - 4'
    assert (c.a, c.b, c.c) == (0, 0, 0)
    assert c.vector()[3] == 1
    assert Cyclic.from_vector(c.vector()) == c


@pytest.mark.parametrize('poly', [
    BiPoly(),
    U ** 3,
    U ** 4,
    U ** 2 + V ** 2 * I,
    U ** 5,
])
def test_cyclic_shape_rejected(poly):
    with pytest.raises(DegenerateInputError):
        Cyclic(poly)


def test_cyclic_contains():
    assert RADIUS_TWO.contains(0, 2)
    assert RADIUS_TWO.contains(Fraction(6, 5), Fraction(8, 5))
    assert not RADIUS_TWO.contains(1, 1)
    assert RADIUS_TWO.contains(2 ** 0.5, 2 ** 0.5)


@pytest.mark.parametrize('matrix, expected', [
    (Mat2C.identity(), RADIUS_TWO),
    (Mat2C(1, 1, 0, 1), _cyclic({(2, 0): 1, (0, 2): 1, (1, 0): -2, (0, 0): -3})),
    (Mat2C.swap(), _cyclic({(2, 0): 1, (0, 2): 1, (0, 0): Fraction(-1, 4)})),
    (Mat2C(I, 0, 0, 1), RADIUS_TWO),
])
def test_cyclic_transform(matrix, expected):
    assert cyclic_transform(Moebius(matrix), RADIUS_TWO) == expected


def test_cyclic_transform_needs_exact_map():
    with pytest.raises(TypeError):
        cyclic_transform(Moebius(Mat2C(1.5, 0, 0, 1)), RADIUS_TWO)


def test_tangency_points():
    family = family_product(UNIT, RE_TWO)
    points = tangency_points(family, 0)
    assert len(points) == 8
    assert all(RADIUS_TWO.contains(x, y) for x, y in points)
    assert tangency_points(family, 1) == []


def test_family_lines():
    s = ParabolicSurface(U, V, 1 + U * V, 0)
    assert family_lines(s, 'v', [2]) == [(-4, -1, 2)]
    assert family_lines(s, 'u', [2]) == [(1, 4, -2)]


def test_dual_conic_smooth():
    s = ParabolicSurface(U, V, 1 + U * V, 0)
    conic = dual_conic_param1(s)
    assert conic.kind == SMOOTH_CONIC
    h = Fraction(-1, 2)
    assert conic.matrix == [[0, h, 0], [h, 0, 0], [0, 0, 1]]
    for line in family_lines(s, 'v') + family_lines(s, 'u', [Fraction(5, 3)]):
        assert dual_conic_residual(conic.matrix, line) == 0


def test_dual_conic_too_few_lines():
    s = ParabolicSurface(U, V, 1 + U * V, 0)
    with pytest.raises(DualConicError):
        dual_conic_param1(s, SAMPLE_VALUES[:4])


def test_dual_conic_shared_by_both_families():
    """
    Verify the conic fitted to one family is tangent to lines of both
    families at parameters the fit never saw
    """
    rng = SplitMix64(21)
    for _ in range(20):
        s = random_parabolic_surface(rng)
        conic = dual_conic_param1(s)
        if conic.matrix is None:
            continue
        fresh = [rng.rational(9) for _ in range(4)]
        for line in family_lines(s, 'u', fresh) + family_lines(s, 'v', fresh):
            assert dual_conic_residual(conic.matrix, line) == 0


def test_dual_conic_two_pencils():
    conic = dual_conic_param1(ParabolicSurface(U, V, 1, 0))
    assert conic.kind == TWO_PENCILS
    assert conic.matrix == [[0, 1, 0], [1, 0, 0], [0, 0, 0]]
    assert conic.points == [(1, 0, 0), (0, 1, 0)]


def test_dual_conic_degenerate():
    line = dual_conic_param1(ParabolicSurface(U, 0, 1, 0))
    assert line.kind == LINE
    assert line.line == (0, 1, 0)

    point = dual_conic_param1(ParabolicSurface(0, 0, 1, U))
    assert point.kind == POINT


def test_top2_translated_lines(diagnostics):
    report = top2_pipeline(IsoCircleSurface(1, U, V, 0, 0))
    assert report.classification.tag == 'U_PLUS_V'
    assert (report.envelope1, report.envelope2, report.same_cyclic) == (None, None, None)
    assert 'no_envelope' in [d['code'] for d in diagnostics.entries]


def test_top2_worked_family():
    """
    Top view ``(u - i)(i v + 2) / (u + i)``: unit circles times points of
    Re w = 2, and the other way round.
    """
    s = IsoCircleSurface(U, 2 * U + V, U * V - 2, -1, 0)
    report = top2_pipeline(s)
    assert report.classification.tag == UV
    assert report.classification.exact
    assert report.envelope1 == RADIUS_TWO
    assert report.envelope2 == RADIUS_TWO
    assert report.same_cyclic is True


def test_top2_float_mode(diagnostics):
    report = top2_pipeline(IsoCircleSurface(U, 2 * U + V, U * V - 2, -1, 0), mode='float')
    assert report.classification.tag == UV
    assert report.envelope1 is None
    assert 'float_fallback' in [d['code'] for d in diagnostics.entries]


def test_top2_constant_top_view():
    with pytest.raises(TopViewDegenerateError) as e:
        top2_pipeline(IsoCircleSurface(1, 2, 3, 0, U))
    assert e.value.details == {'tag': 'ZERO'}
