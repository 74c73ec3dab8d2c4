"""
Surfaces with two parabolas or two isotropic circles through each point.

A surface is given either by polynomial parametrization data
(:class:`ParabolicSurface`, :class:`IsoCircleSurface`) or by a
:class:`CylinderTuple` ``(X1 : ... : X5)`` on the cylinder
``X1^2 + X2^2 + X4^2 = X5^2``, which :func:`~isocircles.projgeom.iso_proj`
maps back to R^3. This module builds tuples from parametrization data,
splits tuples back into ``(P, Q, R, T)`` and samples isoparametric curves.

    >>> t = compose_tparam(U + 1, V - 1, U * V + 2, ONE)
    >>> decompose_tparam(t)
    TParamWitness(P=BiPoly('u + 1'), Q=BiPoly('v - 1'), R=BiPoly('u*v + 2'), T=BiPoly('1'))
"""
from collections import namedtuple
from fractions import Fraction

from .exceptions import BidegreeError
from .exceptions import CylinderIdentityError
from .exceptions import DegenerateInputError
from .exceptions import DivisibilityError
from .exceptions import HypothesisViolatedError
from .exceptions import InconsistencyError
from .exceptions import NotParabolicFamilyError
from .exceptions import PoleError
from .exceptions import SamplingError
from .logger import log
from .polyring import ONE
from .polyring import U
from .polyring import V
from .polyring import ZERO
from .polyring import BiPoly
from .polyring import divide_exact
from .polyring import flip
from .polyring import gcd3
from .projgeom import AffinePoint3
from .projgeom import ProjPoint4
from .scalars import exact_matrix

LINEAR = (1, 1)
QUADRATIC = (2, 2)

#: Minimum number of points for :func:`classify_isocurve`
MIN_SAMPLES = 7

#: Charts searched by :func:`normalize_for_parabolas`, in order
CHARTS = ((), ('u',), ('v',), ('u', 'v'))

VERTICAL_PARABOLA = 'vertical_parabola'
ISOTROPIC_ELLIPSE = 'isotropic_ellipse'
LINE = 'line'
POINT = 'point'
OTHER = 'other'


def _poly(p, name, bound):
    if not isinstance(p, BiPoly):
        p = BiPoly.constant(p)
    if not p.fits(bound):
        raise BidegreeError(
            '{} = {} has bidegree {}, expected at most {}'.format(
                name, p, tuple(p.bidegree()), bound),
            name=name, bidegree=list(p.bidegree()), bound=list(bound))
    return p.with_bound(*bound)


def _rank_le1(polys):
    """
    Whether the polynomials are pairwise proportional.
    """
    nonzero = [p for p in polys if p]
    if not nonzero:
        return True
    base = nonzero[0]
    lc = base.leading_coeff()
    return all(p * lc == base * p.coeff(*base.leading_term()[0]) for p in nonzero[1:])


class ParabolicSurface(object):
    """
    Surface ``(P/R, Q/R, Z/R^2)``.

    Args:
        P (BiPoly): In ``R_{1,1}``
        Q (BiPoly): In ``R_{1,1}``
        R (BiPoly): Nonzero, in ``R_{1,1}``
        Z (BiPoly): In ``R_{2,2}``

    Raises:
        BidegreeError: A polynomial exceeds its bound
        DegenerateInputError: ``R`` is zero
    """
    kind = 'param1'
    fields = ('P', 'Q', 'R', 'Z')

    def __init__(self, P, Q, R, Z):
        self.P = _poly(P, 'P', LINEAR)
        self.Q = _poly(Q, 'Q', LINEAR)
        self.R = _poly(R, 'R', LINEAR)
        self.Z = _poly(Z, 'Z', QUADRATIC)
        if not self.R:
            raise DegenerateInputError('R must be a nonzero polynomial')

    def polys(self):
        return self.P, self.Q, self.R, self.Z

    def evaluate(self, u, v):
        return eval_param1(self, u, v)

    def __eq__(self, other):
        if not isinstance(other, ParabolicSurface):
            return NotImplemented
        return self.polys() == other.polys()

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    __hash__ = None

    def __repr__(self):
        return 'ParabolicSurface(P={}, Q={}, R={}, Z={})'.format(*self.polys())


class IsoCircleSurface(object):
    """
    Surface ``((P0P1 - P2P3)/N, (P1P3 + P0P2)/N, Z/N)`` with
    ``N = P0^2 + P3^2``.

    Args:
        P0, P1, P2, P3 (BiPoly): In ``R_{1,1}``
        Z (BiPoly): In ``R_{2,2}``

    Raises:
        BidegreeError: A polynomial exceeds its bound
        DegenerateInputError: ``P0^2 + P3^2`` is the zero polynomial
    """
    kind = 'param2'
    fields = ('P0', 'P1', 'P2', 'P3', 'Z')

    def __init__(self, P0, P1, P2, P3, Z):
        self.P0 = _poly(P0, 'P0', LINEAR)
        self.P1 = _poly(P1, 'P1', LINEAR)
        self.P2 = _poly(P2, 'P2', LINEAR)
        self.P3 = _poly(P3, 'P3', LINEAR)
        self.Z = _poly(Z, 'Z', QUADRATIC)
        if not (self.P0 ** 2 + self.P3 ** 2):
            raise DegenerateInputError('P0^2 + P3^2 must be a nonzero polynomial')

    def polys(self):
        return self.P0, self.P1, self.P2, self.P3, self.Z

    def denominator(self):
        return self.P0 ** 2 + self.P3 ** 2

    def evaluate(self, u, v):
        return eval_param2(self, u, v)

    def __eq__(self, other):
        if not isinstance(other, IsoCircleSurface):
            return NotImplemented
        return self.polys() == other.polys()

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    __hash__ = None

    def __repr__(self):
        return 'IsoCircleSurface(P0={}, P1={}, P2={}, P3={}, Z={})'.format(*self.polys())


class CylinderTuple(object):
    """
    Five polynomials of ``R_{2,2}`` with ``X1^2 + X2^2 + X4^2 = X5^2``.

    Raises:
        BidegreeError: A polynomial is outside ``R_{2,2}``
        DegenerateInputError: ``X5`` is zero
        CylinderIdentityError: The identity does not hold exactly
    """
    __slots__ = ('X1', 'X2', 'X3', 'X4', 'X5')

    def __init__(self, X1, X2, X3, X4, X5):
        self.X1 = _poly(X1, 'X1', QUADRATIC)
        self.X2 = _poly(X2, 'X2', QUADRATIC)
        self.X3 = _poly(X3, 'X3', QUADRATIC)
        self.X4 = _poly(X4, 'X4', QUADRATIC)
        self.X5 = _poly(X5, 'X5', QUADRATIC)
        if not self.X5:
            raise DegenerateInputError('X5 must be a nonzero polynomial')
        residual = self.residual()
        if residual:
            raise CylinderIdentityError(
                'X1^2 + X2^2 + X4^2 - X5^2 = {} is not zero'.format(residual),
                residual=str(residual))

    def polys(self):
        return self.X1, self.X2, self.X3, self.X4, self.X5

    def __iter__(self):
        return iter(self.polys())

    def residual(self):
        return self.X1 ** 2 + self.X2 ** 2 + self.X4 ** 2 - self.X5 ** 2

    def at(self, u, v):
        """
        Point of the cylinder at parameters ``(u, v)``.

        Raises:
            PoleError: All five coordinates vanish
        """
        coords = [X(u, v) for X in self.polys()]
        if not any(coords):
            raise PoleError('Tuple vanishes at ({}, {})'.format(u, v), location=(u, v))
        return ProjPoint4(*coords)

    def flip(self, axis):
        """
        Reparametrize by the reciprocal of ``axis``.
        """
        return CylinderTuple(*[flip(X, axis, 2) for X in self.polys()])

    def is_degenerate(self):
        """
        Whether the top view ``(X1 : X2 : X5 - X4)`` is constant, i.e. the
        surface collapses into a vertical line or a point.
        """
        return _rank_le1((self.X1, self.X2, self.X5 - self.X4))

    def __eq__(self, other):
        if not isinstance(other, CylinderTuple):
            return NotImplemented
        return self.polys() == other.polys()

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    __hash__ = None

    def __repr__(self):
        return 'CylinderTuple({})'.format(', '.join(str(X) for X in self.polys()))


class TParamWitness(namedtuple('TParamWitness', ['P', 'Q', 'R', 'T'])):
    """
    Polynomials ``P, Q, R, T`` reproducing a tuple through :func:`compose_tparam`.
    """
    __slots__ = ()

    def recompose(self, X3=None):
        return compose_tparam(self.P, self.Q, self.R, self.T, X3=X3)


def _pole(kind, u, v):
    log.diagnostic('Pole of {kind} at ({u}, {v})', kind=kind, u=u, v=v, code='pole_hit')
    return PoleError('{} has a pole at ({}, {})'.format(kind, u, v), location=(u, v))


def eval_param1(s, u, v):
    """
    Point ``(P/R, Q/R, Z/R^2)`` at ``(u, v)``.

    Raises:
        PoleError: ``R(u, v) = 0``
    """
    r = s.R(u, v)
    if r == 0:
        raise _pole('param1', u, v)
    return AffinePoint3(s.P(u, v) / r, s.Q(u, v) / r, s.Z(u, v) / (r * r))


def eval_param2(s, u, v):
    """
    Point of an :class:`IsoCircleSurface` at ``(u, v)``.

    Raises:
        PoleError: ``P0^2 + P3^2`` vanishes at ``(u, v)``
    """
    p0, p1, p2, p3 = (p(u, v) for p in (s.P0, s.P1, s.P2, s.P3))
    n = p0 * p0 + p3 * p3
    if n == 0:
        raise _pole('param2', u, v)
    return AffinePoint3((p0 * p1 - p2 * p3) / n, (p1 * p3 + p0 * p2) / n, s.Z(u, v) / n)


def tparam_polys(P, Q, R, T, X3=None):
    """
    ``(2PRT, 2QRT, X3, (P^2+Q^2-R^2)T, (P^2+Q^2+R^2)T)`` as plain polynomials,
    without any check of the cylinder identity.
    """
    P, Q, R, T = (_as_poly(x) for x in (P, Q, R, T))
    sq = P ** 2 + Q ** 2
    return (2 * P * R * T, 2 * Q * R * T, _as_poly(X3), (sq - R ** 2) * T, (sq + R ** 2) * T)


def pythagorean_polys(P0, P1, P2, P3, T, X3=None):
    """
    Coordinates of a Pythagorean parametrization::

        X1 = 2(P0P1 - P2P3)T       X2 = 2(P1P3 + P0P2)T
        X4 = (P1^2 + P2^2 - P0^2 - P3^2)T
        X5 = (P0^2 + P1^2 + P2^2 + P3^2)T
    """
    P0, P1, P2, P3, T = (_as_poly(x) for x in (P0, P1, P2, P3, T))
    a, b = P0 ** 2 + P3 ** 2, P1 ** 2 + P2 ** 2
    return (2 * (P0 * P1 - P2 * P3) * T, 2 * (P1 * P3 + P0 * P2) * T, _as_poly(X3),
            (b - a) * T, (a + b) * T)


def compose_tparam(P, Q, R, T, X3=None, constant_t=False):
    """
    Cylinder tuple of :func:`tparam_polys`.

    Args:
        P, Q, R, T (BiPoly): Factors
        X3 (BiPoly): Third coordinate, zero when omitted
        constant_t (bool): Require ``T`` to be a constant, as surface level
            constructions do

    Raises:
        HypothesisViolatedError: ``constant_t`` is set and ``T`` is not constant
        BidegreeError: A coordinate leaves ``R_{2,2}``
        DegenerateInputError: ``X5`` vanishes
    """
    if constant_t and not _as_poly(T).is_constant():
        raise HypothesisViolatedError('T = {} must be constant'.format(T))
    return CylinderTuple(*tparam_polys(P, Q, R, T, X3))


def compose_pythagorean(P0, P1, P2, P3, T, X3=None):
    """
    Cylinder tuple of :func:`pythagorean_polys`.
    """
    return CylinderTuple(*pythagorean_polys(P0, P1, P2, P3, T, X3))


def _as_poly(p):
    if p is None:
        return ZERO
    if isinstance(p, BiPoly):
        return p
    return BiPoly.constant(p)


def _check_degenerate(t, source):
    if t.is_degenerate():
        log.diagnostic('Lift of {source} has a constant top view', source=source,
                       code='degenerate_tuple')
    return t


def lift_param1(s):
    """
    ``(2PR : 2QR : 2Z : P^2+Q^2-R^2 : P^2+Q^2+R^2)``, the cylinder tuple of
    a :class:`ParabolicSurface`.
    """
    return _check_degenerate(compose_tparam(s.P, s.Q, s.R, ONE, X3=2 * s.Z), 'param1')


def lift_param2(s):
    """
    Cylinder tuple of an :class:`IsoCircleSurface`, third coordinate ``2Z``.
    """
    return _check_degenerate(
        compose_pythagorean(s.P0, s.P1, s.P2, s.P3, ONE, X3=2 * s.Z), 'param2')


def decompose_tparam(t):
    """
    Recover ``(P, Q, R, T)`` with ``compose_tparam(P, Q, R, T)`` equal to ``t``.

    With ``D = gcd(X1, X2, X5 - X4)``: ``P = X1/D``, ``Q = X2/D``,
    ``R = (X5 - X4)/D`` and ``T = D/(2R)``. The witness is scaled so that
    ``R`` is monic.

    Raises:
        HypothesisViolatedError: ``D`` has degree 0 in ``u`` or in ``v``
        InconsistencyError: ``R`` does not divide ``D``
    """
    X1, X2, X3, X4, X5 = t.polys()
    if not X1 and not X2:
        if X4 == -X5:
            return TParamWitness(ZERO, ZERO, ONE, X5)
        return TParamWitness(ONE, ZERO, ZERO, X4)

    W = X5 - X4
    D = gcd3(X1, X2, W)
    if D.degree('u') < 1 or D.degree('v') < 1:
        raise HypothesisViolatedError(
            'gcd(X1, X2, X5 - X4) = {} needs degree at least 1 in u and v'.format(D),
            gcd=str(D))
    P, Q, R = divide_exact(X1, D), divide_exact(X2, D), divide_exact(W, D)
    try:
        T = divide_exact(D, R).scale(Fraction(1, 2))
    except DivisibilityError as e:
        raise InconsistencyError('R = {} does not divide D = {}: {}'.format(R, D, e))

    c = 1 / R.leading_coeff()
    witness = TParamWitness(P.scale(c), Q.scale(c), R.scale(c), T.scale(1 / (c * c)))
    if witness.recompose(X3) != t:
        raise InconsistencyError('Witness {} does not reproduce the tuple'.format(witness))
    log.debug('Decomposed tuple with gcd {gcd}', gcd=str(D))
    return witness


def _chart_ok(t):
    if not t.X1 and not t.X2:
        return True
    D = gcd3(t.X1, t.X2, t.X5 - t.X4)
    return D.degree('u') >= 1 and D.degree('v') >= 1


def normalize_chart(t):
    """
    Like :func:`normalize_for_parabolas`, also returning the flips applied.

    Returns:
        tuple: ``(CylinderTuple, flips)``
    """
    for flips in CHARTS:
        candidate = t
        for axis in flips:
            candidate = candidate.flip(axis)
        if _chart_ok(candidate):
            if flips:
                log.info('Tuple normalized by flipping {axes}', axes=','.join(flips))
            return candidate, flips
    raise NotParabolicFamilyError(
        'No reciprocal chart gives gcd(X1, X2, X5 - X4) of degree at least 1 in u and v')


def normalize_for_parabolas(t):
    """
    First of the charts ``identity, 1/u, 1/v, 1/u and 1/v`` in which
    ``gcd(X1, X2, X5 - X4)`` has degree at least 1 in both ``u`` and ``v``.

    Raises:
        NotParabolicFamilyError: No chart qualifies
    """
    return normalize_chart(t)[0]


def extract_param1(t):
    """
    :class:`ParabolicSurface` whose lift has the same points as ``t``.

    Raises:
        NotParabolicFamilyError: See :func:`normalize_for_parabolas`
        HypothesisViolatedError: The recovered ``T`` is not a nonzero constant
    """
    t = normalize_for_parabolas(t)
    w = decompose_tparam(t)
    if not w.T.is_constant() or not w.T:
        raise HypothesisViolatedError('T = {} is not a nonzero constant'.format(w.T))
    return ParabolicSurface(w.P, w.Q, w.R, t.X3.scale(1 / (2 * w.T.constant_value())))


def _grid():
    yield Fraction(0)
    k = 1
    while True:
        yield Fraction(k)
        yield Fraction(-k)
        k += 1


def isocurve_sample(s, axis, value, n=MIN_SAMPLES):
    """
    ``n`` points of the curve ``axis = value``, the free parameter running
    through ``0, 1, -1, 2, -2, ...`` and skipping poles.

    Args:
        s: :class:`ParabolicSurface` or :class:`IsoCircleSurface`
        axis (str): ``u`` or ``v``, the parameter held fixed
        value: Fixed parameter value
        n (int): Number of points, at least 7

    Raises:
        SamplingError: Fewer than ``n`` pole free parameters among the
            first ``10 n`` grid values
    """
    if n < MIN_SAMPLES:
        raise SamplingError('At least {} samples are needed, got {}'.format(MIN_SAMPLES, n))
    if axis not in ('u', 'v'):
        raise ValueError('Unknown axis {!r}'.format(axis))
    value = Fraction(value)
    points = []
    grid = _grid()
    for _ in range(10 * n):
        k = next(grid)
        u, v = (value, k) if axis == 'u' else (k, value)
        try:
            points.append(s.evaluate(u, v))
        except PoleError:
            continue
        if len(points) == n:
            return points
    raise SamplingError(
        'Only {} pole free samples of {} = {} in {} attempts'.format(
            len(points), axis, value, 10 * n),
        found=len(points), wanted=n)


def _rank(rows):
    return exact_matrix(rows).rank()


def classify_isocurve(pts):
    """
    Classify sampled points of a curve as ``vertical_parabola``,
    ``isotropic_ellipse``, ``line``, ``point`` or ``other``.

    Collinear top views with ``z`` an exact quadratic of the position
    along the line give a vertical parabola; concyclic top views on a
    plane give an isotropic ellipse.

        >>> classify_isocurve([AffinePoint3(1, k, 1 + k * k) for k in range(7)])
        'vertical_parabola'

    Raises:
        DegenerateInputError: Fewer than 7 points
    """
    pts = list(pts)
    if len(pts) < MIN_SAMPLES:
        raise DegenerateInputError(
            'At least {} points are needed, got {}'.format(MIN_SAMPLES, len(pts)))
    if all(p == pts[0] for p in pts):
        return POINT
    if _rank([[p.x, p.y, p.z, 1] for p in pts]) <= 2:
        return LINE
    if _rank([[p.x, p.y, 1] for p in pts]) <= 2:
        s = [p.x for p in pts] if len({p.x for p in pts}) > 1 else [p.y for p in pts]
        if len(set(s)) < 3:
            return OTHER
        system = exact_matrix([[t * t, t, 1] for t in s])
        rhs = exact_matrix([[p.z] for p in pts])
        try:
            solution, _ = system.gauss_jordan_solve(rhs)
        except ValueError:
            return OTHER
        return VERTICAL_PARABOLA if solution[0] != 0 else OTHER
    concyclic = _rank([[p.x * p.x + p.y * p.y, p.x, p.y, 1] for p in pts]) <= 3
    planar = _rank([[p.x, p.y, p.z, 1] for p in pts]) <= 3
    if concyclic and planar:
        return ISOTROPIC_ELLIPSE
    return OTHER
