"""
JSON documents read and written by the command line.

Scalars are strings: rationals as ``"n/d"``, Gaussian rationals as
``"a+bi"`` (see :func:`~isocircles.scalars.format_complex`); plain JSON
integers are accepted too. Floats are rejected wherever exact input is
required.

    >>> decode_poly({'terms': [[1, 1, '1'], [0, 0, '-1/2']]})
    BiPoly('u*v - 1/2')
    >>> encode_poly(decode_poly({'terms': [[1, 0, '2i']]}))
    {'field': 'Q(i)', 'terms': [[1, 0, '2i']]}

Every violation raises :class:`~isocircles.exceptions.SchemaError`.
"""
import json

import six

from .bilinfrac import BilinFrac
from .bilinfrac import Mat2C
from .exceptions import IsoCirclesError
from .exceptions import SchemaError
from .metalogger import dumps
from .polyring import FIELD_Q
from .polyring import FIELD_QI
from .polyring import BiPoly
from .projgeom import AffinePoint3
from .projgeom import ProjPoint4
from .scalars import GaussianRational
from .scalars import format_complex
from .scalars import parse_complex
from .scalars import parse_rational
from .surface import CylinderTuple
from .surface import IsoCircleSurface
from .surface import ParabolicSurface
from .topview import BasePoints
from .topview import Cyclic
from .topview import GeneralizedCircle

STATUS_OK = 'ok'
STATUS_ERROR = 'error'

FAMILY_PRODUCT = 'product'
FAMILY_SUM = 'sum'


def loads(text):
    """
    Parse a JSON document.

    Raises:
        SchemaError: ``text`` is not valid JSON
    """
    try:
        return json.loads(text)
    except ValueError as e:
        raise SchemaError('Invalid JSON: {}'.format(e), original=e)


def _fail(path, message, original=None):
    raise SchemaError('{}: {}'.format(path or '$', message), original=original, path=path or '$')


def _object(doc, path, required=(), optional=()):
    if not isinstance(doc, dict):
        _fail(path, 'expected an object')
    missing = [k for k in required if k not in doc]
    if missing:
        _fail(path, 'missing key(s) {}'.format(', '.join(missing)))
    unknown = sorted(set(doc) - set(required) - set(optional))
    if unknown:
        _fail(path, 'unknown key(s) {}'.format(', '.join(unknown)))
    return doc


def _array(doc, path, length=None):
    if not isinstance(doc, list):
        _fail(path, 'expected an array')
    if length is not None and len(doc) != length:
        _fail(path, 'expected {} entries, got {}'.format(length, len(doc)))
    return doc


def _exact_text(x, path):
    if isinstance(x, bool) or not isinstance(x, six.integer_types + six.string_types):
        _fail(path, 'expected an exact number as string or integer, got {!r}'.format(x))
    return x


def decode_rational(x, path=''):
    try:
        return parse_rational(_exact_text(x, path))
    except (ValueError, ZeroDivisionError) as e:
        _fail(path, 'not a rational: {!r}'.format(x), e)


def decode_complex(x, path=''):
    """
    Exact complex scalar, returned as Fraction when real.
    """
    try:
        z = parse_complex(_exact_text(x, path))
    except (ValueError, ZeroDivisionError) as e:
        _fail(path, 'not a Gaussian rational: {!r}'.format(x), e)
    return z.re if z.im == 0 else z


def _exponent(x, path):
    if isinstance(x, bool) or not isinstance(x, six.integer_types) or x < 0:
        _fail(path, 'expected a nonnegative integer exponent, got {!r}'.format(x))
    return x


def decode_poly(doc, path='', bound=None):
    """
    ``{"field": "Q" | "Q(i)", "terms": [[du, dv, coeff], ...]}``.

    A term may also be written ``[du, dv, re, im]``. Zero coefficients and
    repeated exponents are rejected; ``field`` is optional and checked
    against the coefficients when present.
    """
    doc = _object(doc, path, required=('terms',), optional=('field',))
    coeffs = {}
    for k, term in enumerate(_array(doc['terms'], path + '.terms')):
        tpath = '{}.terms[{}]'.format(path, k)
        _array(term, tpath)
        if len(term) == 3:
            c = decode_complex(term[2], tpath + '[2]')
        elif len(term) == 4:
            c = GaussianRational(decode_rational(term[2], tpath + '[2]'),
                                 decode_rational(term[3], tpath + '[3]'))
        else:
            _fail(tpath, 'a term has 3 or 4 entries')
        key = (_exponent(term[0], tpath + '[0]'), _exponent(term[1], tpath + '[1]'))
        if not c:
            _fail(tpath, 'zero coefficients are not allowed')
        if key in coeffs:
            _fail(tpath, 'repeated exponent {}'.format(list(key)))
        coeffs[key] = c
    try:
        p = BiPoly(coeffs, bound=bound)
    except IsoCirclesError as e:
        _fail(path, str(e), e)
    field = doc.get('field')
    if field is not None and field not in (FIELD_Q, FIELD_QI):
        _fail(path + '.field', 'unknown field {!r}'.format(field))
    if field == FIELD_Q and p.field != FIELD_Q:
        _fail(path + '.field', 'complex coefficients in a polynomial over Q')
    return p


def encode_poly(p):
    return {
        'field': p.field,
        'terms': [[a, b, format_complex(c)] for (a, b), c in p.terms()],
    }


def decode_point3(doc, path=''):
    coords = _array(doc, path, 3)
    return AffinePoint3(*(decode_rational(x, '{}[{}]'.format(path, k))
                          for k, x in enumerate(coords)))


def decode_point5(doc, path=''):
    coords = _array(doc, path, 5)
    values = [decode_rational(x, '{}[{}]'.format(path, k)) for k, x in enumerate(coords)]
    try:
        return ProjPoint4(*values)
    except IsoCirclesError as e:
        _fail(path, str(e), e)


def decode_surface(doc, path=''):
    """
    ``{"kind": "param1", "P", "Q", "R", "Z"}`` or
    ``{"kind": "param2", "P0", "P1", "P2", "P3", "Z"}``; ``Z`` defaults to 0.
    """
    if not isinstance(doc, dict):
        _fail(path, 'expected an object')
    kind = doc.get('kind')
    if kind == ParabolicSurface.kind:
        cls = ParabolicSurface
    elif kind == IsoCircleSurface.kind:
        cls = IsoCircleSurface
    else:
        _fail(path + '.kind', 'expected "param1" or "param2", got {!r}'.format(kind))
    names = cls.fields[:-1]
    _object(doc, path, required=('kind',) + names, optional=('Z',))
    polys = [decode_poly(doc[name], '{}.{}'.format(path, name)) for name in names]
    Z = decode_poly(doc['Z'], path + '.Z') if 'Z' in doc else BiPoly()
    return cls(*(polys + [Z]))


def encode_surface(s):
    d = {'kind': s.kind}
    for name, p in zip(s.fields, s.polys()):
        d[name] = encode_poly(p)
    return d


def decode_tuple(doc, path=''):
    """
    Array of five polynomials ``X1 .. X5``.
    """
    polys = [decode_poly(p, '{}[{}]'.format(path, k)) for k, p in enumerate(_array(doc, path, 5))]
    return CylinderTuple(*polys)


def encode_tuple(t):
    return [encode_poly(p) for p in t.polys()]


def decode_tparam(doc, path=''):
    """
    ``{"P", "Q", "R", "T", "X3"}``; ``T`` defaults to 1 and ``X3`` to 0.

    Returns:
        tuple: ``(P, Q, R, T, X3)``
    """
    _object(doc, path, required=('P', 'Q', 'R'), optional=('T', 'X3'))
    P, Q, R = (decode_poly(doc[k], '{}.{}'.format(path, k)) for k in ('P', 'Q', 'R'))
    T = decode_poly(doc['T'], path + '.T') if 'T' in doc else BiPoly.constant(1)
    X3 = decode_poly(doc['X3'], path + '.X3') if 'X3' in doc else BiPoly()
    return P, Q, R, T, X3


def encode_witness(w):
    return {name: encode_poly(p) for name, p in zip(w._fields, w)}


def decode_matrix(doc, path=''):
    rows = _array(doc, path, 2)
    entries = []
    for i, row in enumerate(rows):
        for j, x in enumerate(_array(row, '{}[{}]'.format(path, i), 2)):
            entries.append(decode_complex(x, '{}[{}][{}]'.format(path, i, j)))
    return Mat2C(*entries)


def decode_bilinfrac(doc, path=''):
    """
    ``{"A": [[a11, a10], [a01, a00]], "B": ...}``.
    """
    _object(doc, path, required=('A', 'B'))
    A, B = decode_matrix(doc['A'], path + '.A'), decode_matrix(doc['B'], path + '.B')
    try:
        return BilinFrac(A, B)
    except IsoCirclesError as e:
        _fail(path + '.B', str(e), e)


def encode_bilinfrac(F):
    return {'A': F.A.to_json(), 'B': F.B.to_json()}


def decode_circle(doc, path=''):
    """
    ``{"alpha": "1", "beta": ["0", "0"], "gamma": "-1"}``.
    """
    _object(doc, path, required=('alpha', 'beta', 'gamma'))
    beta = _array(doc['beta'], path + '.beta', 2)
    alpha = decode_rational(doc['alpha'], path + '.alpha')
    gamma = decode_rational(doc['gamma'], path + '.gamma')
    re_part = decode_rational(beta[0], path + '.beta[0]')
    im_part = decode_rational(beta[1], path + '.beta[1]')
    try:
        return GeneralizedCircle(alpha, GaussianRational(re_part, im_part), gamma)
    except IsoCirclesError as e:
        _fail(path, str(e), e)


def encode_circle(w):
    q = GaussianRational(w.q.real, w.q.imag)
    return {
        'alpha': format_complex(w.p),
        'beta': [format_complex(q.re), format_complex(q.im)],
        'gamma': format_complex(w.r),
    }


def decode_moebius_data(doc, path=''):
    """
    Four complex values ``(a, b, c, d)``.
    """
    return tuple(decode_complex(x, '{}[{}]'.format(path, k))
                 for k, x in enumerate(_array(doc, path, 4)))


def decode_circle_or_data(doc, path=''):
    """
    Moebius data of a circle given either as ``(a, b, c, d)`` or as a circle.
    """
    if isinstance(doc, list):
        return decode_moebius_data(doc, path)
    circle = decode_circle(doc, path)
    try:
        return circle.to_moebius_data()
    except IsoCirclesError as e:
        _fail(path, str(e), e)


def decode_family(doc, path=''):
    """
    ``{"family": "product" | "sum", "omega1": circle, "omega2": circle or data}``.

    Returns:
        tuple: ``(kind, omega1, data2)``
    """
    _object(doc, path, required=('omega1', 'omega2'), optional=('family',))
    kind = doc.get('family', FAMILY_PRODUCT)
    if kind not in (FAMILY_PRODUCT, FAMILY_SUM):
        _fail(path + '.family', 'expected "product" or "sum", got {!r}'.format(kind))
    omega1 = decode_circle(doc['omega1'], path + '.omega1')
    return kind, omega1, decode_circle_or_data(doc['omega2'], path + '.omega2')


def decode_cyclic(doc, path=''):
    """
    Dense vector of the 15 coefficients in the order of
    :attr:`~isocircles.topview.Cyclic.MONOMIALS`.
    """
    values = [decode_rational(x, '{}[{}]'.format(path, k))
              for k, x in enumerate(_array(doc, path, len(Cyclic.MONOMIALS)))]
    try:
        return Cyclic.from_vector(values)
    except IsoCirclesError as e:
        _fail(path, str(e), e)


def encode_cyclic(c):
    if c is None:
        return None
    return {
        'equation': c.format(),
        'vector': [format_complex(x) for x in c.vector()],
    }


def encode_envelope(envelope):
    """
    A cyclic, or ``{"kind": "linear_family", "points": [[x, y], ...]}`` for
    the base points of a family linear in ``v``.
    """
    if isinstance(envelope, BasePoints):
        return {'kind': envelope.kind,
                'points': [[float(x), float(y)] for x, y in envelope.points]}
    return encode_cyclic(envelope)


def encode_family(fam):
    return {name: {'p': format_complex(f.p), 'q': format_complex(f.q), 'r': format_complex(f.r)}
            for name, f in zip(fam._fields, fam)}


def encode_class(cls):
    return cls.to_dict()


def encode_dual_conic(dc):
    return {
        'kind': dc.kind,
        'matrix': [[format_complex(x) for x in row] for row in dc.matrix] if dc.matrix else None,
        'points': [[format_complex(x) for x in p] for p in dc.points if p is not None],
        'line': [format_complex(x) for x in dc.line] if dc.line else None,
    }


def encode_topview(report):
    return {
        'classification': encode_class(report.classification),
        'envelope1': encode_cyclic(report.envelope1),
        'envelope2': encode_cyclic(report.envelope2),
        'same_cyclic': report.same_cyclic,
    }


def make_report(status, payload=None, diagnostics=None, meta=None, error=None):
    """
    Report document ``{"status", "payload", "diagnostics", "meta", "error"?}``.
    """
    report = {
        'status': status,
        'payload': payload,
        'diagnostics': list(diagnostics or []),
        'meta': dict(meta or {}),
    }
    if error is not None:
        report['error'] = error
    return report


def dump_report(report):
    """
    Serialized report; equal reports give equal bytes.
    """
    return dumps(report) + '\n'
