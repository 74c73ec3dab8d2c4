from fractions import Fraction

import pytest

from isocircles import codec
from isocircles.bilinfrac import Mat2C
from isocircles.exceptions import SchemaError
from isocircles.polyring import U
from isocircles.polyring import V
from isocircles.polyring import BiPoly
from isocircles.scalars import GaussianRational
from isocircles.surface import IsoCircleSurface
from isocircles.surface import ParabolicSurface
from isocircles.topview import Cyclic
from isocircles.topview import GeneralizedCircle

I = GaussianRational(0, 1)
POLY_U = {'terms': [[1, 0, '1']]}
POLY_V = {'terms': [[0, 1, '1']]}
POLY_ONE = {'terms': [[0, 0, 1]]}
UNIT_DOC = {'alpha': '1', 'beta': ['0', '0'], 'gamma': '-1'}


def test_decode_poly():
    assert codec.decode_poly({'terms': [[1, 1, '1'], [0, 0, '-1/2']]}) == \
        U * V - Fraction(1, 2)
    assert codec.decode_poly({'terms': [[1, 0, '1', '2']], 'field': 'Q(i)'}) == (1 + 2 * I) * U
    assert codec.decode_poly({'terms': [[0, 2, 3], [1, 0, '0.25']]}) == \
        3 * V ** 2 + U * Fraction(1, 4)
    assert codec.decode_poly({'terms': []}) == BiPoly()


def test_encode_poly():
    doc = codec.encode_poly(U * V - Fraction(1, 2))
    assert doc['field'] == 'Q'
    assert sorted(doc['terms']) == [[0, 0, '-1/2'], [1, 1, '1']]
    assert codec.encode_poly(I * U)['field'] == 'Q(i)'


@pytest.mark.parametrize('doc, path', [
    ([], '$'),
    ({'terms': [[1, 1, 0]]}, '$.terms[0]'),
    ({'terms': [[1, 1, '1'], [1, 1, '2']]}, '$.terms[1]'),
    ({'terms': [[1, 1, 0.5]]}, '$.terms[0][2]'),
    ({'terms': [[-1, 0, '1']]}, '$.terms[0][0]'),
    ({'terms': [[True, 0, '1']]}, '$.terms[0][0]'),
    ({'terms': [[1, 0]]}, '$.terms[0]'),
    ({'terms': [[1, 0, 'x']]}, '$.terms[0][2]'),
    ({'terms': [[1, 0, '1/0']]}, '$.terms[0][2]'),
    ({'terms': [], 'extra': 1}, '$'),
    ({'field': 'Q'}, '$'),
    ({'terms': [[1, 0, '1']], 'field': 'R'}, '$.field'),
    ({'terms': [[1, 0, 'i']], 'field': 'Q'}, '$.field'),
])
def test_decode_poly_rejects(doc, path):
    with pytest.raises(SchemaError) as e:
        codec.decode_poly(doc, '$')
    assert e.value.details['path'] == path
    assert e.value.to_dict()['tag'] == 'codec/schema'


def test_decode_poly_bound():
    with pytest.raises(SchemaError) as e:
        codec.decode_poly({'terms': [[2, 0, '1']]}, '$.P', bound=(1, 1))
    assert e.value.details['path'] == '$.P'
    assert e.value.original is not None


def test_loads():
    assert codec.loads('{"a": [1]}') == {'a': [1]}
    with pytest.raises(SchemaError):
        codec.loads('{"a": ')


def test_decode_surface():
    s = codec.decode_surface({'kind': 'param1', 'P': POLY_U, 'Q': POLY_V, 'R': POLY_ONE})
    assert s == ParabolicSurface(U, V, 1, 0)

    doc = {'kind': 'param2', 'P0': POLY_ONE, 'P1': POLY_U, 'P2': POLY_V,
           'P3': {'terms': []}, 'Z': {'terms': [[1, 1, '1']]}}
    s = codec.decode_surface(doc)
    assert s == IsoCircleSurface(1, U, V, 0, U * V)
    assert codec.decode_surface(codec.encode_surface(s)) == s


@pytest.mark.parametrize('doc', [
    {'kind': 'param3'},
    {'kind': 'param1', 'P': POLY_U, 'Q': POLY_V},
    {'kind': 'param1', 'P': POLY_U, 'Q': POLY_V, 'R': POLY_ONE, 'T': POLY_ONE},
    'param1',
])
def test_decode_surface_rejects(doc):
    with pytest.raises(SchemaError):
        codec.decode_surface(doc, '$')


def test_decode_tuple():
    with pytest.raises(SchemaError) as e:
        codec.decode_tuple([POLY_U] * 4, '$')
    assert e.value.details['path'] == '$'

    with pytest.raises(SchemaError):
        codec.decode_tuple([POLY_U] * 4 + [{'terms': [[0, 0, '0']]}], '$')


def test_decode_tparam_defaults():
    P, Q, R, T, X3 = codec.decode_tparam({'P': POLY_U, 'Q': POLY_V, 'R': POLY_ONE})
    assert (P, Q, R) == (U, V, BiPoly.constant(1))
    assert T == BiPoly.constant(1)
    assert not X3


def test_decode_bilinfrac():
    F = codec.decode_bilinfrac({'A': [['0', '1'], ['i', '0']], 'B': [[0, 0], [0, 1]]})
    assert F.A == Mat2C(0, 1, I, 0)
    assert F.B == Mat2C(0, 0, 0, 1)
    assert codec.decode_bilinfrac(codec.encode_bilinfrac(F)).A == F.A

    with pytest.raises(SchemaError) as e:
        codec.decode_bilinfrac({'A': [['1', '0'], ['0', '1']], 'B': [[0, 0], [0, 0]]}, '$')
    assert e.value.details['path'] == '$.B'

    with pytest.raises(SchemaError):
        codec.decode_bilinfrac({'A': [['1', '0']], 'B': [[0, 0], [0, 1]]}, '$')


def test_circles():
    assert codec.decode_circle(UNIT_DOC).same_as(GeneralizedCircle.unit_circle())
    assert codec.encode_circle(GeneralizedCircle.unit_circle()) == UNIT_DOC
    with pytest.raises(SchemaError):
        codec.decode_circle({'alpha': '0', 'beta': ['0', '0'], 'gamma': '0'}, '$')


def test_decode_family():
    kind, omega1, data2 = codec.decode_family(
        {'omega1': UNIT_DOC, 'omega2': ['i', 2, 0, 1]}, '$')
    assert kind == codec.FAMILY_PRODUCT
    assert omega1.same_as(GeneralizedCircle.unit_circle())
    assert data2 == (I, 2, 0, 1)

    kind, _, data2 = codec.decode_family({'family': 'sum', 'omega1': UNIT_DOC,
                                          'omega2': UNIT_DOC}, '$')
    assert kind == codec.FAMILY_SUM
    assert GeneralizedCircle.from_moebius_data(*data2).same_as(GeneralizedCircle.unit_circle())

    with pytest.raises(SchemaError) as e:
        codec.decode_family({'family': 'difference', 'omega1': UNIT_DOC,
                             'omega2': UNIT_DOC}, '$')
    assert e.value.details['path'] == '$.family'


def test_cyclic():
    c = Cyclic(BiPoly({(2, 0): 1, (0, 2): 1, (0, 0): -4}))
    doc = codec.encode_cyclic(c)
    assert doc['equation'] == 'x^2 + y^2 - 4'
    assert codec.decode_cyclic(doc['vector'], '$') == c
    assert codec.encode_cyclic(None) is None
    with pytest.raises(SchemaError):
        codec.decode_cyclic(doc['vector'][:-1], '$')
    with pytest.raises(SchemaError):
        codec.decode_cyclic(['0'] * 15, '$')


def test_make_report():
    report = codec.make_report(codec.STATUS_OK, {'x': 1})
    assert report == {'status': 'ok', 'payload': {'x': 1}, 'diagnostics': [], 'meta': {}}
    error = {'tag': 'codec/schema'}
    assert codec.make_report(codec.STATUS_ERROR, error=error)['error'] == error


def test_dump_report_is_canonical():
    first = codec.make_report('ok', {'b': 1, 'a': [1]}, meta={'seed': 3})
    second = codec.make_report('ok', {'a': [1], 'b': 1}, meta={'seed': 3})
    text = codec.dump_report(first)
    assert text == codec.dump_report(second)
    assert text.endswith('\n')
    assert text.index('"diagnostics"') < text.index('"meta"') < text.index('"payload"')
