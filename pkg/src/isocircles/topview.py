"""
Top views: generalized circles, quadratic circle families, their
envelopes (cyclics) and the dual conics of parabolic surfaces.

A generalized circle is the zero set of the hermitian form
``alpha z zbar + beta z + conj(beta) zbar + gamma`` with real ``alpha``
and ``gamma``. A quadratic family ``A v^2 + B v + C`` of such forms has
the envelope ``B^2 - 4 A C = 0``, a cyclic.

    >>> omega1 = GeneralizedCircle.unit_circle()
    >>> family = family_product(omega1, (GaussianRational(0, 1), 2, 0, 1))
    >>> envelope_cyclic(family)
    Cyclic('x^2 + y^2 - 4')
"""
import math
from collections import namedtuple
from fractions import Fraction

import numpy

from .bilinfrac import TAG_U
from .bilinfrac import TAG_V
from .bilinfrac import U_PLUS_V
from .bilinfrac import UV
from .bilinfrac import ZERO as TAG_ZERO
from .bilinfrac import Mat2C
from .bilinfrac import Moebius
from .bilinfrac import classify
from .bilinfrac import moebius_apply
from .bilinfrac import topview_map
from .exceptions import DegenerateInputError
from .exceptions import DualConicError
from .exceptions import InconsistencyError
from .exceptions import NoEnvelopeError
from .exceptions import PoleError
from .exceptions import TopViewDegenerateError
from .logger import log
from .polyring import U
from .polyring import V
from .polyring import BiPoly
from .scalars import GaussianRational
from .scalars import exact_matrix
from .scalars import format_complex
from .scalars import from_sympy
from .scalars import is_exact
from .scalars import rational_sqrt
from .scalars import simplify
from .scalars import to_rational

#: Default tolerance of floating point membership and tangency checks
DEFAULT_TOL = 1e-9

I = GaussianRational(0, 1)

CONCENTRIC_CIRCLES = 'concentric_circles'
CIRCLE = 'circle'
PARALLEL_LINES = 'parallel_lines'
LINEAR_FAMILY = 'linear_family'

SMOOTH_CONIC = 'smooth_conic'
TWO_PENCILS = 'two_pencils'
LINE = 'line'
POINT = 'point'

#: Parameter values used to sample line families and tangency points
SAMPLE_VALUES = tuple(Fraction(k) for k in (0, 1, -1, 2, -2, 3, -3))


def _real(x):
    if is_exact(x):
        return to_rational(x)
    return complex(x).real


def _cplx(x):
    if is_exact(x):
        x = simplify(x)
        return Fraction(x) if isinstance(x, int) else x
    return complex(x)


def _conj(x):
    return x.conjugate()


class HermForm(object):
    """
    Real valued form ``p z zbar + q z + conj(q) zbar + r``.

    Args:
        p: Real coefficient of ``z zbar``
        q: Complex coefficient of ``z``
        r: Real constant
    """
    __slots__ = ('p', 'q', 'r')

    def __init__(self, p=0, q=0, r=0):
        self.p = _real(p)
        self.q = _cplx(q)
        self.r = _real(r)

    def is_exact(self):
        return is_exact(self.p) and is_exact(self.q) and is_exact(self.r)

    def vector(self):
        """
        Returns:
            tuple: ``(p, Re q, Im q, r)``
        """
        return self.p, self.q.real, self.q.imag, self.r

    def is_zero(self, tol=0):
        if self.is_exact():
            return not any(self.vector())
        return all(abs(x) <= tol for x in self.vector())

    def __add__(self, other):
        return HermForm(self.p + other.p, self.q + other.q, self.r + other.r)

    def __sub__(self, other):
        return HermForm(self.p - other.p, self.q - other.q, self.r - other.r)

    def __neg__(self):
        return HermForm(-self.p, -self.q, -self.r)

    def scale(self, k):
        """
        Multiply by the real number ``k``.
        """
        return HermForm(self.p * k, self.q * k, self.r * k)

    def evaluate(self, z):
        if is_exact(z):
            z = GaussianRational(z.real, z.imag) if not isinstance(z, GaussianRational) else z
            value = self.p * z.norm() + 2 * (self.q * z).real + self.r
            return Fraction(value)
        z = complex(z)
        return float(self.p) * abs(z) ** 2 + 2 * (complex(self.q) * z).real + float(self.r)

    def to_xy(self):
        """
        The form as a polynomial in ``x`` and ``y`` (variables ``u`` and
        ``v`` of :class:`~isocircles.polyring.BiPoly`), ``z = x + i y``.
        """
        return BiPoly({
            (2, 0): self.p,
            (0, 2): self.p,
            (1, 0): 2 * self.q.real,
            (0, 1): -2 * self.q.imag,
            (0, 0): self.r,
        })

    def to_float(self):
        p, qr, qi, r = self.vector()
        return float(p), float(qr), float(qi), float(r)

    def __eq__(self, other):
        if not isinstance(other, HermForm):
            return NotImplemented
        return self.vector() == other.vector()

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash(self.vector())

    def __repr__(self):
        return '%s(%s, %s, %s)' % (
            self.__class__.__name__, format_complex(self.p), format_complex(self.q),
            format_complex(self.r))


class GeneralizedCircle(HermForm):
    """
    Circle or line ``alpha z zbar + beta z + conj(beta) zbar + gamma = 0``.

    Raises:
        DegenerateInputError: All coefficients are zero
    """
    __slots__ = ()

    def __init__(self, alpha, beta, gamma):
        super(GeneralizedCircle, self).__init__(alpha, beta, gamma)
        if self.is_zero():
            raise DegenerateInputError('A generalized circle needs a nonzero coefficient')

    @property
    def alpha(self):
        return self.p

    @property
    def beta(self):
        return self.q

    @property
    def gamma(self):
        return self.r

    @classmethod
    def unit_circle(cls):
        return cls(1, 0, -1)

    @classmethod
    def from_center_radius(cls, center, radius_sq):
        """
        Circle ``|z - center|^2 = radius_sq``.
        """
        center = _cplx(center)
        return cls(1, -_conj(center), (center * _conj(center)).real - radius_sq)

    @classmethod
    def line(cls, a, b, c):
        """
        Line ``a x + b y + c = 0``, encoded as ``beta = (a - b i) / 2``.

            >>> GeneralizedCircle.line(0, 1, 0).contains(5)
            True
        """
        return cls(0, GaussianRational(Fraction(a) / 2, -Fraction(b) / 2), c)

    @classmethod
    def from_form(cls, form):
        return cls(form.p, form.q, form.r)

    @classmethod
    def from_moebius_data(cls, a, b, c, d):
        """
        Image of the real line under ``v -> (a v + b) / (c v + d)``.

        Raises:
            DegenerateInputError: ``a d - b c = 0``
        """
        a, b, c, d = (_cplx(x) for x in (a, b, c, d))
        _check_data(a, b, c, d)
        i = I if all(is_exact(x) for x in (a, b, c, d)) else 1j
        return cls(
            i * (c * _conj(d) - _conj(c) * d),
            i * (d * _conj(a) - _conj(b) * c),
            i * (a * _conj(b) - _conj(a) * b))

    def is_line(self):
        return self.p == 0

    def has_real_locus(self):
        """
        ``|beta|^2 - alpha gamma >= 0``.
        """
        if self.is_exact():
            return _norm(self.q) - self.p * self.r >= 0
        return abs(complex(self.q)) ** 2 - float(self.p) * float(self.r) >= 0

    def center(self):
        if self.is_line():
            raise DegenerateInputError('A line has no center')
        return -_conj(self.q) / self.p

    def radius_sq(self):
        c = self.center()
        return _norm(c) - self.r / self.p

    def contains(self, z, tol=0):
        return circle_contains(self, z, tol)

    def same_as(self, other):
        """
        Whether both equations agree up to a nonzero real factor.
        """
        a, b = self.vector(), other.vector()
        return all(a[i] * b[j] == a[j] * b[i] for i in range(4) for j in range(i + 1, 4))

    def to_moebius_data(self):
        """
        Moebius data ``(a, b, c, d)`` whose image of the real line is this
        circle, through three rational points of smallest height.

        Raises:
            DegenerateInputError: Empty real locus or no rational point found
        """
        z1, z2, z3 = rational_points(self, 3)
        return z3 * (z2 - z1), z1 * (z3 - z2), z2 - z1, z3 - z2


def _norm(z):
    if isinstance(z, GaussianRational):
        return z.norm()
    if is_exact(z):
        return Fraction(z) * Fraction(z)
    return abs(complex(z)) ** 2


def _check_data(a, b, c, d):
    det = a * d - b * c
    if det == 0:
        raise DegenerateInputError(
            'Moebius data ({}, {}, {}, {}) is degenerate'.format(
                *(format_complex(x) for x in (a, b, c, d))))


def circle_contains(w, z, tol=0):
    """
    Whether ``z`` satisfies the equation of ``w``: exactly for exact
    inputs, within ``tol`` relative to the size of the terms otherwise.
    """
    value = w.evaluate(z)
    if is_exact(value) and w.is_exact() and is_exact(z):
        return value == 0
    z = complex(z)
    p, qr, qi, r = w.to_float()
    scale = abs(p) * abs(z) ** 2 + 2 * math.hypot(qr, qi) * abs(z) + abs(r)
    return abs(value) <= tol * max(1.0, scale)


def _height_order(limit):
    seen = set()
    for h in range(limit + 1):
        for den in range(1, h + 1):
            for num in range(-h, h + 1):
                if max(abs(num), den) != h:
                    continue
                x = Fraction(num, den)
                if x not in seen:
                    seen.add(x)
                    yield x
        if h == 0:
            seen.add(Fraction(0))
            yield Fraction(0)


def rational_points(w, count=3, height=24):
    """
    ``count`` distinct rational points of ``w``, smallest height first.

    Raises:
        DegenerateInputError: Fewer points were found
    """
    p, q, r = w.p, w.q, w.r
    qr, qi = Fraction(q.real), Fraction(q.imag)
    points = []
    if p == 0:
        values = [Fraction(k) for k in (0, 1, -1, 2, -2)][:max(count, 3)]
        for t in values:
            if qi != 0:
                points.append(GaussianRational(t, (2 * qr * t + r) / (2 * qi)))
            else:
                points.append(GaussianRational(-r / (2 * qr), t))
        return points[:count]

    if not w.has_real_locus():
        raise DegenerateInputError('Circle {!r} has no real points'.format(w))
    first = None
    for x in _height_order(height):
        s = rational_sqrt(qi * qi - p * (p * x * x + 2 * qr * x + r))
        if s is not None:
            first = (x, (qi + s) / p)
            break
    if first is None:
        raise DegenerateInputError(
            'No rational point of height at most {} on {!r}'.format(height, w))
    x0, y0 = first
    points.append(GaussianRational(x0, y0))
    directions = [(Fraction(0), Fraction(1))] + [(Fraction(1), m) for m in _height_order(height)]
    for dx, dy in directions:
        t = -(2 * p * (x0 * dx + y0 * dy) + 2 * qr * dx - 2 * qi * dy) / (p * (dx * dx + dy * dy))
        if t == 0:
            continue
        z = GaussianRational(x0 + t * dx, y0 + t * dy)
        if z not in points:
            points.append(z)
        if len(points) == count:
            return points
    raise DegenerateInputError('Found only {} rational points on {!r}'.format(len(points), w))


def moebius_image_circle(f, w):
    """
    Image of ``w`` under ``f``: with ``N = adj(M)`` the image has the
    hermitian matrix ``N* H N`` where ``H = [[alpha, conj(beta)], [beta, gamma]]``.
    """
    A, B, C, D = f.m.adj().entries()
    alpha, beta, gamma = w.p, w.q, w.r
    row_a = (_conj(B) * alpha + _conj(D) * beta, _conj(B) * _conj(beta) + _conj(D) * gamma)
    h00 = (_conj(A) * alpha + _conj(C) * beta) * A + (_conj(A) * _conj(beta) + _conj(C) * gamma) * C
    h10 = row_a[0] * A + row_a[1] * C
    h11 = row_a[0] * B + row_a[1] * D
    return GeneralizedCircle(_real(h00), h10, _real(h11))


class CircleFamily(namedtuple('CircleFamily', ['A', 'B', 'C'])):
    """
    Quadratic family ``A v^2 + B v + C`` of hermitian forms.
    """
    __slots__ = ()

    def member(self, v):
        return self.A.scale(v * v) + self.B.scale(v) + self.C

    def derivative(self, v):
        """
        ``2 A v + B``, the derivative of the member equation in ``v``.
        """
        return self.A.scale(2 * v) + self.B

    def discriminant(self):
        """
        ``B^2 - 4 A C`` as a polynomial in ``x`` and ``y``.
        """
        a, b, c = (form.to_xy() for form in self)
        return b * b - 4 * a * c

    def span_rank(self):
        return exact_matrix([form.vector() for form in self]).rank()


def _v_poly(a, b):
    return BiPoly({(0, 1): a, (0, 0): b})


def _family_from_polys(zz, z, const):
    forms = [HermForm(zz.coeff(0, k), z.coeff(0, k), const.coeff(0, k)) for k in (2, 1, 0)]
    return CircleFamily(*forms)


def _data_polys(data):
    a, b, c, d = (_cplx(x) for x in data)
    if not all(is_exact(x) for x in (a, b, c, d)):
        raise TypeError('Circle families need exact Moebius data')
    _check_data(a, b, c, d)
    return (_v_poly(a, b), _v_poly(_conj(a), _conj(b)),
            _v_poly(c, d), _v_poly(_conj(c), _conj(d)))


def family_product(w1, data):
    """
    Family ``{w * omega1 : w in omega2}`` where ``omega2`` is the image of
    the real line under ``v -> (a v + b) / (c v + d)``.

    Args:
        w1 (GeneralizedCircle): ``omega1``
        data (tuple): ``(a, b, c, d)`` with ``a d - b c != 0``

    Returns:
        CircleFamily: Members ``A v^2 + B v + C``
    """
    num, num_c, den, den_c = _data_polys(data)
    return _family_from_polys(
        den * den_c * w1.p,
        num_c * den * w1.q,
        num * num_c * w1.r)


def family_sum(w1, data):
    """
    Family ``{w + omega1 : w in omega2}``, ``omega2`` given as in
    :func:`family_product`.
    """
    num, num_c, den, den_c = _data_polys(data)
    alpha, beta, gamma = w1.p, w1.q, w1.r
    pcc = den * den_c
    return _family_from_polys(
        pcc * alpha,
        pcc * beta - num_c * den * alpha,
        num * num_c * alpha - num * den_c * beta - num_c * den * _conj(beta) + pcc * gamma)


class Cyclic(object):
    """
    Real curve ``a (x^2+y^2)^2 + (x^2+y^2)(b x + c y) + Q(x, y) = 0`` with
    ``Q`` of degree at most 2, scaled so that its graded-lex leading
    coefficient is 1.

    Raises:
        DegenerateInputError: The polynomial is zero, complex or not of
            that shape
    """
    __slots__ = ('poly',)

    #: Monomials of the dense coefficient vector, degree by degree
    MONOMIALS = tuple((i, d - i) for d in range(5) for i in range(d, -1, -1))

    def __init__(self, poly, normalize=True):
        if not poly:
            raise DegenerateInputError('A cyclic needs a nonzero polynomial')
        if poly.field != 'Q':
            raise DegenerateInputError('A cyclic has real coefficients')
        _check_cyclic_shape(poly)
        self.poly = poly.monic() if normalize else poly

    @classmethod
    def from_vector(cls, values):
        if len(values) != len(cls.MONOMIALS):
            raise DegenerateInputError('A cyclic has {} coefficients, got {}'.format(
                len(cls.MONOMIALS), len(values)))
        return cls(BiPoly(dict(zip(cls.MONOMIALS, values))))

    def vector(self):
        return [self.poly.coeff(*m) for m in self.MONOMIALS]

    @property
    def a(self):
        return self.poly.coeff(4, 0)

    @property
    def b(self):
        return self.poly.coeff(3, 0)

    @property
    def c(self):
        return self.poly.coeff(2, 1)

    def quadratic_part(self):
        return BiPoly({k: v for k, v in self.poly.coeffs.items() if sum(k) <= 2})

    def evaluate(self, x, y):
        return self.poly(x, y)

    def contains(self, x, y, tol=DEFAULT_TOL):
        """
        Whether ``(x, y)`` lies on the curve, within ``tol`` relative to the
        size of the terms for floating point coordinates.
        """
        if is_exact(x) and is_exact(y):
            return self.poly(x, y) == 0
        x, y = float(x), float(y)
        value = self.poly(x, y)
        scale = sum(abs(float(c)) * abs(x) ** i * abs(y) ** j for (i, j), c in self.poly.terms())
        return abs(value) <= tol * max(1.0, scale)

    def zform(self):
        """
        The curve as a polynomial in ``z`` and ``zbar`` (variables ``u`` and ``v``).
        """
        return self.poly.compose((U + V) * Fraction(1, 2), (U - V) * (-I / 2))

    def format(self):
        return self.poly.format(names=('x', 'y'))

    def __eq__(self, other):
        if not isinstance(other, Cyclic):
            return NotImplemented
        return self.poly == other.poly

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash(self.poly)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return "Cyclic('%s')" % self.format()


def _check_cyclic_shape(poly):
    if poly.total_degree() > 4:
        raise DegenerateInputError('{} has degree above 4'.format(poly))
    c = poly.coeff
    a = c(4, 0)
    if (c(2, 2), c(0, 4), c(3, 1), c(1, 3)) != (2 * a, a, 0, 0):
        raise DegenerateInputError(
            'Quartic part of {} is not a multiple of (x^2+y^2)^2'.format(poly))
    if c(1, 2) != c(3, 0) or c(0, 3) != c(2, 1):
        raise DegenerateInputError('Cubic part of {} is not (x^2+y^2)(b x + c y)'.format(poly))


def _pencil_roots_real(family):
    """
    For a family spanning two dimensions, whether the discriminant
    restricted to the span has real roots, i.e. some member is stationary.
    """
    vectors = [exact_matrix([form.vector()]) for form in family]
    basis = []
    for vec in vectors:
        if any(vec):
            candidate = basis + [vec]
            if exact_matrix([list(b) for b in candidate]).rank() == len(candidate):
                basis = candidate
        if len(basis) == 2:
            break
    system = exact_matrix([list(b) for b in basis]).T
    coords = []
    for vec in vectors:
        solution, _ = system.gauss_jordan_solve(vec.T)
        coords.append([from_sympy(x) for x in solution])
    (a1, a2), (b1, b2), (c1, c2) = coords
    qss = b1 * b1 - 4 * a1 * c1
    qst = 2 * b1 * b2 - 4 * (a1 * c2 + a2 * c1)
    qtt = b2 * b2 - 4 * a2 * c2
    return qst * qst - 4 * qss * qtt >= 0


class BasePoints(namedtuple('BasePoints', ['kind', 'points'])):
    """
    Envelope of a family ``B v + C`` linear in ``v``. Eliminating ``v``
    from a member and its derivative ``B`` leaves ``B = C = 0``, the real
    base points every member passes through, as float ``(x, y)`` pairs.
    """
    __slots__ = ()


def linear_envelope(fam, tol=DEFAULT_TOL):
    """
    Base points of a family with ``A = 0``.

        >>> family = CircleFamily(HermForm(), HermForm(0, 1, 0), HermForm(1, 0, -1))
        >>> [(abs(round(x, 9)), round(y, 9)) for x, y in linear_envelope(family).points]
        [(0.0, -1.0), (0.0, 1.0)]

    Raises:
        DegenerateInputError: ``A`` is not zero
        NoEnvelopeError: All members are the same circle
    """
    if not fam.A.is_zero(tol):
        raise DegenerateInputError('Family is quadratic in v')
    points = _intersect_forms(_unit(fam.B.to_float()), _unit(fam.C.to_float()), tol)
    if points is None:
        raise NoEnvelopeError('All members of the family are the same circle')
    return BasePoints(LINEAR_FAMILY, sorted(points))


def envelope_cyclic(fam):
    """
    Envelope ``B^2 - 4 A C = 0`` of a quadratic family. A family linear in
    ``v`` gets its :class:`BasePoints` instead, with a ``linear_family``
    diagnostic.

    Raises:
        NoEnvelopeError: The family lies in a pencil without stationary
            members (including an identically vanishing discriminant)
    """
    disc = fam.discriminant()
    if not disc:
        raise NoEnvelopeError('B^2 - 4AC vanishes identically, the family is a pencil')
    if fam.A.is_zero():
        log.diagnostic('Family is linear in v, its envelope is the base points of B and C',
                       code='linear_family')
        return linear_envelope(fam)
    rank = fam.span_rank()
    if rank <= 1 or (rank == 2 and not _pencil_roots_real(fam)) or disc.is_constant():
        raise NoEnvelopeError('Family lies in a pencil of circles')
    return Cyclic(disc)


def sum_envelope_shape(c):
    """
    Shape of the envelope of a sum family: ``concentric_circles``,
    ``circle`` or ``parallel_lines``.
    """
    if c.a != 0:
        x0, y0 = -c.b / (4 * c.a), -c.c / (4 * c.a)
        return CIRCLE if c.poly(x0, y0) == 0 else CONCENTRIC_CIRCLES
    q20, q11, q02 = c.poly.coeff(2, 0), c.poly.coeff(1, 1), c.poly.coeff(0, 2)
    if q11 == 0 and q20 == q02 and q20 != 0:
        return CIRCLE
    if q11 * q11 == 4 * q20 * q02:
        return PARALLEL_LINES
    log.diagnostic('Sum envelope {cyclic} has none of the expected shapes', cyclic=str(c),
                   code='unexpected_shape')
    return None


def sum_envelope(w1, data):
    """
    Envelope of :func:`family_sum` and its shape.

    Returns:
        tuple: ``(Cyclic, shape)``, or ``(BasePoints, "linear_family")``
        when ``omega1`` is a line
    """
    envelope = envelope_cyclic(family_sum(w1, data))
    if isinstance(envelope, BasePoints):
        return envelope, envelope.kind
    return envelope, sum_envelope_shape(envelope)


def cyclic_transform(f, c):
    """
    Image of a cyclic under the Moebius map ``f``: substitute
    ``z = f^-1(w)`` into the ``(z, zbar)`` form and clear denominators.

        >>> circle = Cyclic(BiPoly({(2, 0): 1, (0, 2): 1, (0, 0): -4}))
        >>> cyclic_transform(Moebius(Mat2C.swap()), circle)
        Cyclic('x^2 + y^2 - 1/4')
    """
    if not f.m.is_exact():
        raise TypeError('cyclic_transform needs an exact Moebius map')
    g = c.zform()
    a, b, cc, d = f.m.adj().entries()
    num, den = a * U + b, cc * U + d
    num_c, den_c = _conj(a) * V + _conj(b), _conj(cc) * V + _conj(d)
    dz, dzb = g.degree('u'), g.degree('v')
    total = BiPoly()
    for (j, k), coeff in g.coeffs.items():
        total = total + num ** j * den ** (dz - j) * num_c ** k * den_c ** (dzb - k) * coeff
    xy = total.compose(U + V * I, U - V * I)
    if xy.imag_part():
        raise InconsistencyError('Transformed cyclic {} is not real'.format(xy))
    return Cyclic(xy.real_part())


def _sample_form(e, n):
    p, qr, qi, r = e
    if abs(p) > 0:
        cx, cy = -qr / p, qi / p
        rad_sq = cx * cx + cy * cy - r / p
        if rad_sq < 0:
            return []
        rad = math.sqrt(rad_sq)
        angles = numpy.linspace(0, 2 * math.pi, n, endpoint=False)
        return [(cx + rad * math.cos(t), cy + rad * math.sin(t)) for t in angles]
    lx, ly = 2 * qr, -2 * qi
    n2 = lx * lx + ly * ly
    x0, y0 = -r * lx / n2, -r * ly / n2
    return [(x0 - ly * (k - n // 2), y0 + lx * (k - n // 2)) for k in range(n)]


def _unit(e):
    m = max(abs(x) for x in e)
    return tuple(x / m for x in e) if m else e


def _intersect_forms(e1, e2, tol):
    """
    Real intersection points of two forms, ``None`` when they are proportional.
    """
    if abs(e1[0]) < abs(e2[0]):
        e1, e2 = e2, e1
    pb, qrb, qib, rb = e1
    po, qro, qio, ro = e2
    if abs(pb) <= tol:
        a1, b1, c1 = 2 * qrb, -2 * qib, rb
        a2, b2, c2 = 2 * qro, -2 * qio, ro
        det = a1 * b2 - a2 * b1
        if abs(det) <= tol:
            if abs(a1 * c2 - a2 * c1) <= tol and abs(b1 * c2 - b2 * c1) <= tol:
                return None
            return []
        return [((b1 * c2 - b2 * c1) / det, (c1 * a2 - c2 * a1) / det)]
    lx = 2 * (pb * qro - po * qrb)
    ly = -2 * (pb * qio - po * qib)
    l0 = pb * ro - po * rb
    if abs(lx) <= tol and abs(ly) <= tol:
        return None if abs(l0) <= tol else []
    n2 = lx * lx + ly * ly
    x0, y0 = -l0 * lx / n2, -l0 * ly / n2
    dx, dy = -ly, lx
    roots = numpy.roots([
        pb * (dx * dx + dy * dy),
        2 * pb * (x0 * dx + y0 * dy) + 2 * qrb * dx - 2 * qib * dy,
        pb * (x0 * x0 + y0 * y0) + 2 * qrb * x0 - 2 * qib * y0 + rb,
    ])
    points = []
    for t in roots:
        t = complex(t)
        if abs(t.imag) <= 1e-6 * max(1.0, abs(t.real)):
            points.append((x0 + t.real * dx, y0 + t.real * dy))
    return points


def tangency_points(fam, v, tol=DEFAULT_TOL, samples=8):
    """
    Real points where the member ``v`` of ``fam`` touches the envelope:
    the common points of the member and ``2 A v + B``. A stationary member
    (derivative form zero or proportional to the member) is sampled at
    ``samples`` points instead.

    Returns:
        list: ``(x, y)`` float pairs
    """
    member = fam.member(v)
    deriv = fam.derivative(v)
    e1 = _unit(member.to_float())
    if deriv.is_zero(tol):
        return _sample_form(e1, samples)
    points = _intersect_forms(e1, _unit(deriv.to_float()), tol)
    if points is None:
        return _sample_form(e1, samples)
    return points


DualConic = namedtuple('DualConic', ['kind', 'matrix', 'points', 'line'])


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _axpy(t, x, y):
    return tuple(t * xi + yi for xi, yi in zip(x, y))


def family_lines(s, axis, values=SAMPLE_VALUES):
    """
    Lines ``(l1, l2, l3)`` carrying the top views of the parabolas
    ``axis = t`` of a :class:`~isocircles.surface.ParabolicSurface`.
    Curves whose top view is a point give ``(0, 0, 0)``.
    """
    def vec(a, b):
        return tuple(p.coeff(a, b) for p in (s.P, s.Q, s.R))

    kuv, ku, kv, k1 = vec(1, 1), vec(1, 0), vec(0, 1), vec(0, 0)
    if axis == 'v':
        return [_cross(_axpy(t, kuv, ku), _axpy(t, kv, k1)) for t in values]
    return [_cross(_axpy(t, kuv, kv), _axpy(t, ku, k1)) for t in values]


def dual_conic_residual(matrix, line):
    """
    ``l^T C l``.
    """
    return sum(line[i] * matrix[i][j] * line[j] for i in range(3) for j in range(3))


def _normalize_point(p):
    pivot = next(x for x in reversed(p) if x != 0)
    return tuple(x / pivot for x in p)


def _family_point(lines):
    null = exact_matrix(lines).nullspace()
    if len(null) != 1:
        return None
    return _normalize_point([from_sympy(x) for x in null[0]])


def _normalize_conic(matrix):
    pivot = next(matrix[i][j] for i, j in ((2, 2), (1, 1), (0, 0), (1, 2), (0, 2), (0, 1))
                 if matrix[i][j] != 0)
    return [[x / pivot for x in row] for row in matrix]


def _fit_dual_conic(lines):
    rows = [[l1 * l1, l2 * l2, l3 * l3, 2 * l1 * l2, 2 * l1 * l3, 2 * l2 * l3]
            for l1, l2, l3 in lines]
    null = exact_matrix(rows).nullspace()
    if len(null) != 1:
        raise DualConicError(
            'Top view lines determine {} independent conics'.format(len(null)),
            lines=len(lines))
    c11, c22, c33, c12, c13, c23 = (from_sympy(x) for x in null[0])
    return _normalize_conic([[c11, c12, c13], [c12, c22, c23], [c13, c23, c33]])


def _pencil_conic(p, q):
    """
    ``(p q^T + q p^T) / 2``: lines through ``p`` or ``q``.
    """
    return _normalize_conic(
        [[Fraction(p[i] * q[j] + q[i] * p[j], 2) for j in range(3)] for i in range(3)])


def _rank(lines):
    return exact_matrix(lines).rank() if lines else 0


def dual_conic_param1(s, values=SAMPLE_VALUES):
    """
    Conic tangent to the top views of both families of parabolas.

    The conic ``c11 l1^2 + c22 l2^2 + c33 l3^2 + 2 c12 l1 l2 + 2 c13 l1 l3
    + 2 c23 l2 l3 = 0`` is fitted to the lines of one family (``v = t``
    unless those are concurrent) and the lines of the other family are
    checked against it. The first nonzero of ``c33, c22, c11, c23, c13,
    c12`` is scaled to 1.

    Returns:
        DualConic: ``kind`` is ``smooth_conic`` (with ``matrix``),
        ``two_pencils`` (with ``matrix`` and the two ``points``), ``line``
        or ``point``

    Raises:
        DualConicError: The fitted family does not determine a unique
            conic, or the other family is not tangent to it
    """
    lines_v = [l for l in family_lines(s, 'v', values) if any(l)]
    lines_u = [l for l in family_lines(s, 'u', values) if any(l)]
    lines = lines_v + lines_u
    if not lines:
        return DualConic(POINT, None, [], None)
    stacked = _rank(lines)
    if stacked == 1:
        return DualConic(LINE, None, [], _normalize_point(lines[0]))
    if stacked == 2:
        return DualConic(POINT, None, [_family_point(lines)], None)

    if _rank(lines_v) == 3 or _rank(lines_u) == 3:
        fitted, other = (lines_v, lines_u) if _rank(lines_v) == 3 else (lines_u, lines_v)
        matrix = _fit_dual_conic(fitted)
        rank = exact_matrix(matrix).rank()
        if rank != 3:
            raise DualConicError('Dual conic of rank {}'.format(rank))
        off = [l for l in other if dual_conic_residual(matrix, l) != 0]
        if off:
            raise DualConicError('Lines of the second family are not tangent to the conic',
                                 lines=len(off))
        return DualConic(SMOOTH_CONIC, matrix, [], None)

    points = [_family_point(lines_v), _family_point(lines_u)] if lines_v and lines_u else [None]
    if None in points:
        raise DualConicError('Degenerate dual conic without two pencil points')
    return DualConic(TWO_PENCILS, _pencil_conic(*points), points, None)


TopViewReport = namedtuple(
    'TopViewReport', ['classification', 'envelope1', 'envelope2', 'same_cyclic'])


def _envelope_or_none(family, name):
    try:
        envelope = envelope_cyclic(family)
    except NoEnvelopeError as e:
        log.diagnostic('Family {name} has no envelope: {reason}', name=name, reason=e.reason,
                       code='no_envelope')
        return None
    return envelope if isinstance(envelope, Cyclic) else None


def _tangency_on(family, back, cyclic, tol):
    checked, ok = 0, True
    for v in SAMPLE_VALUES:
        for x, y in tangency_points(family, v, tol):
            try:
                w = moebius_apply(back, complex(x, y), tol)
            except PoleError:
                continue
            checked += 1
            ok = ok and cyclic.contains(w.real, w.imag, tol)
    return checked, ok


def top2_pipeline(s, tol=DEFAULT_TOL, mode='exact'):
    """
    Classify the top view of an :class:`~isocircles.surface.IsoCircleSurface`
    and compute the envelopes of the top views of both families of
    isotropic circles.

    Returns:
        TopViewReport: Classification, envelopes transported back to the
        top view plane (``None`` where a family has no envelope) and
        whether tangency samples of each envelope lie on the other one

    Raises:
        TopViewDegenerateError: The top view map is equivalent to ``u``,
            ``v`` or ``0``
    """
    cls = classify(topview_map(s), mode=mode)
    if cls.tag in (TAG_U, TAG_V, TAG_ZERO):
        raise TopViewDegenerateError(
            'Top view map is equivalent to {}'.format(cls.tag), tag=cls.tag)
    if not cls.exact:
        log.diagnostic('Witnesses are floating point, envelopes are not computed',
                       code='float_fallback')
        return TopViewReport(cls, None, None, None)

    data1 = cls.C.m.adj().entries()
    data2 = cls.D.m.adj().entries()
    omega1 = GeneralizedCircle.from_moebius_data(*data1)
    omega2 = GeneralizedCircle.from_moebius_data(*data2)
    builder = family_product if cls.tag == UV else family_sum
    family1, family2 = builder(omega1, data2), builder(omega2, data1)

    back = Moebius(cls.M.m.adj())
    envelopes = []
    for family, name in ((family1, 'v-curves'), (family2, 'u-curves')):
        cyclic = _envelope_or_none(family, name)
        envelopes.append(cyclic_transform(back, cyclic) if cyclic is not None else None)

    same = None
    if None not in envelopes:
        float_back = Moebius(back.m.to_float())
        checked1, ok1 = _tangency_on(family1, float_back, envelopes[1], tol)
        checked2, ok2 = _tangency_on(family2, float_back, envelopes[0], tol)
        if checked1 + checked2:
            same = ok1 and ok2
        else:
            log.diagnostic('No real tangency points to compare envelopes', code='no_tangency')
    return TopViewReport(cls, envelopes[0], envelopes[1], same)
