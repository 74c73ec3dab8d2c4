"""
Complex 2x2 matrices, Moebius maps and bilinear-fractional maps.

A bilinear-fractional map is stored as two matrices laid out as::

    A = [[a11, a10],        F(u, v) = (u, 1) A (v, 1)^T / (u, 1) B (v, 1)^T
         [a01, a00]]

:func:`classify` reduces such a map to one of ``uv``, ``u + v``, ``u``,
``v``, ``0`` and returns Moebius witnesses ``M, C, D`` with
``f_M(F(f_C(u), f_D(v)))`` equal to the canonical polynomial.

    >>> F = BilinFrac(Mat2C(2, 0, 0, 3), Mat2C.identity())
    >>> classify(F).tag
    'UV'
"""
from collections import namedtuple
from fractions import Fraction

import numpy

from .exceptions import BidegreeError
from .exceptions import DegenerateInputError
from .exceptions import PoleError
from .logger import log
from .polyring import BiPoly
from .scalars import GaussianRational
from .scalars import format_complex
from .scalars import gaussian_sqrt
from .scalars import is_exact
from .scalars import simplify

#: Default tolerance of the floating point fallback
DEFAULT_TOL = 1e-12

UV = 'UV'
U_PLUS_V = 'U_PLUS_V'
TAG_U = 'U'
TAG_V = 'V'
ZERO = 'ZERO'
TAGS = (UV, U_PLUS_V, TAG_U, TAG_V, ZERO)

DISTINCT = 'distinct'
SCALAR = 'scalar'
BLOCK = 'block'


def _scalar(x):
    if is_exact(x):
        x = simplify(x)
        return Fraction(x) if isinstance(x, int) else x
    return complex(x)


def _is_zero(x, tol=0):
    if is_exact(x):
        return x == 0
    return abs(x) <= tol


class Mat2C(object):
    """
    Matrix ``[[a, b], [c, d]]`` with exact or floating complex entries.
    """
    __slots__ = ('a', 'b', 'c', 'd')

    def __init__(self, a, b, c, d):
        self.a, self.b, self.c, self.d = (_scalar(x) for x in (a, b, c, d))

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 1)

    @classmethod
    def swap(cls):
        """
        ``I = [[0, 1], [1, 0]]``, the matrix of ``z -> 1/z``.
        """
        return cls(0, 1, 1, 0)

    @classmethod
    def from_rows(cls, rows):
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    def entries(self):
        return self.a, self.b, self.c, self.d

    def rows(self):
        return [[self.a, self.b], [self.c, self.d]]

    def is_exact(self):
        return all(is_exact(x) for x in self.entries())

    def to_float(self):
        return Mat2C(*(complex(x) for x in self.entries()))

    def det(self):
        return self.a * self.d - self.b * self.c

    def trace(self):
        return self.a + self.d

    @property
    def T(self):
        return Mat2C(self.a, self.c, self.b, self.d)

    def adj(self):
        """
        Adjugate ``[[d, -b], [-c, a]]``; the inverse up to ``det``.
        """
        return Mat2C(self.d, -self.b, -self.c, self.a)

    def inverse(self):
        """
        Raises:
            DegenerateInputError: The matrix is singular
        """
        det = self.det()
        if _is_zero(det):
            raise DegenerateInputError('Singular matrix {!r}'.format(self))
        return self.adj().scale(1 / det)

    def scale(self, k):
        return Mat2C(*(x * k for x in self.entries()))

    def __add__(self, other):
        return Mat2C(*(x + y for x, y in zip(self.entries(), other.entries())))

    def __sub__(self, other):
        return Mat2C(*(x - y for x, y in zip(self.entries(), other.entries())))

    def __mul__(self, other):
        if not isinstance(other, Mat2C):
            return self.scale(other)
        a, b, c, d = self.entries()
        e, f, g, h = other.entries()
        return Mat2C(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def row_times(self, x):
        """
        Row vector ``x`` times this matrix.
        """
        return (x[0] * self.a + x[1] * self.c, x[0] * self.b + x[1] * self.d)

    def is_zero(self, tol=0):
        return all(_is_zero(x, tol) for x in self.entries())

    def is_scalar(self, tol=0):
        return _is_zero(self.b, tol) and _is_zero(self.c, tol) and _is_zero(self.a - self.d, tol)

    def max_abs(self):
        return max(abs(complex(x)) for x in self.entries())

    def __eq__(self, other):
        if not isinstance(other, Mat2C):
            return NotImplemented
        return self.entries() == other.entries()

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash(self.entries())

    def to_json(self):
        return [[format_complex(x) for x in row] for row in self.rows()]

    def __repr__(self):
        return 'Mat2C(%s)' % ', '.join(format_complex(x) for x in self.entries())


class Moebius(object):
    """
    ``f_M(z) = (a z + b) / (c z + d)``.

    Raises:
        DegenerateInputError: ``det M = 0``
    """
    __slots__ = ('m',)

    def __init__(self, m, tol=DEFAULT_TOL):
        if _is_zero(m.det(), tol * max(1.0, m.max_abs() ** 2)):
            raise DegenerateInputError('Moebius matrix {!r} is singular'.format(m))
        self.m = m

    @classmethod
    def identity(cls):
        return cls(Mat2C.identity())

    def __call__(self, z, tol=0):
        return moebius_apply(self, z, tol)

    def inverse(self):
        return Moebius(self.m.adj())

    def __repr__(self):
        return 'Moebius({!r})'.format(self.m)


def moebius_apply(f, z, tol=0):
    """
    ``(a z + b) / (c z + d)``.

    Raises:
        PoleError: ``c z + d`` vanishes
    """
    a, b, c, d = f.m.entries()
    den = c * z + d
    if _is_zero(den, tol):
        raise PoleError('Moebius map has a pole at {}'.format(format_complex(z)), location=(z,))
    return (a * z + b) / den


def moebius_compose(n, m):
    """
    ``f_N o f_M = f_{NM}``.
    """
    return Moebius(n.m * m.m)


class BilinFrac(object):
    """
    Bilinear-fractional map ``F^A_B``.

    Args:
        A (Mat2C): Numerator coefficients
        B (Mat2C): Nonzero denominator coefficients

    Raises:
        DegenerateInputError: ``B`` is zero
    """
    __slots__ = ('A', 'B')

    def __init__(self, A, B):
        if B.is_zero():
            raise DegenerateInputError('Denominator matrix B must be nonzero')
        self.A = A
        self.B = B

    def is_exact(self):
        return self.A.is_exact() and self.B.is_exact()

    def to_float(self):
        return BilinFrac(self.A.to_float(), self.B.to_float())

    @staticmethod
    def _form(m, u, v):
        return m.a * u * v + m.b * u + m.c * v + m.d

    def evaluate(self, u, v, tol=0):
        """
        Raises:
            PoleError: The denominator vanishes at ``(u, v)``
        """
        den = self._form(self.B, u, v)
        if _is_zero(den, tol):
            raise PoleError('Bilinear-fractional map has a pole at ({}, {})'.format(
                format_complex(u), format_complex(v)), location=(u, v))
        return self._form(self.A, u, v) / den

    __call__ = evaluate

    def numerator(self):
        return _matrix_poly(self.A)

    def denominator(self):
        return _matrix_poly(self.B)

    def __repr__(self):
        return 'BilinFrac(A={!r}, B={!r})'.format(self.A, self.B)


def _matrix_poly(m):
    return BiPoly({(1, 1): m.a, (1, 0): m.b, (0, 1): m.c, (0, 0): m.d})


def transform(F, C, D):
    """
    ``F(f_C(u), f_D(v))`` as ``F^{C^T A D}_{C^T B D}``.
    """
    c, d = C.m, D.m
    return BilinFrac(c.T * F.A * d, c.T * F.B * d)


def moebius_after(f, F):
    """
    ``f o F`` as a bilinear-fractional map.
    """
    a, b, c, d = f.m.entries()
    return BilinFrac(F.A.scale(a) + F.B.scale(b), F.A.scale(c) + F.B.scale(d))


def equivalent_map(F, f, f_u, f_v):
    """
    ``f(F(f_u(u), f_v(v)))``.
    """
    return moebius_after(f, transform(F, f_u, f_v))


def _rank1_split(m, tol=0):
    """
    Write a rank one matrix as the outer product ``(alpha, beta)^T (gamma, delta)``.
    """
    if not (_is_zero(m.a, tol) and _is_zero(m.b, tol)):
        gamma, delta = m.a, m.b
        beta = m.c / m.a if not _is_zero(m.a, tol) else m.d / m.b
        return (Fraction(1), beta), (gamma, delta)
    return (Fraction(0), Fraction(1)), (m.c, m.d)


def rank1_factor(P):
    """
    Factor ``P`` in ``C_{1,1}`` as ``Q(u) * R(v)``.

        >>> rank1_factor(BiPoly({(1, 1): 1, (1, 0): 1, (0, 1): 1, (0, 0): 1}))
        (BiPoly('u + 1'), BiPoly('v + 1'))

    Returns:
        tuple: ``(Q, R)`` with ``Q`` in ``C_{1,0}`` and ``R`` in ``C_{0,1}``, or
        ``None`` when ``c00 c11 - c10 c01 != 0``

    Raises:
        DegenerateInputError: ``P`` is zero
        BidegreeError: ``P`` is outside ``C_{1,1}``
    """
    if not P:
        raise DegenerateInputError('Cannot factor the zero polynomial')
    if not P.fits((1, 1)):
        raise BidegreeError('{} is not in C_{{1,1}}'.format(P), bidegree=list(P.bidegree()))
    m = Mat2C(P.coeff(1, 1), P.coeff(1, 0), P.coeff(0, 1), P.coeff(0, 0))
    if m.det() != 0:
        return None
    (alpha, beta), (gamma, delta) = _rank1_split(m)
    return (BiPoly({(1, 0): alpha, (0, 0): beta}), BiPoly({(0, 1): gamma, (0, 0): delta}))


Jordan = namedtuple('Jordan', ['X', 'J', 'kind', 'exact'])


def _left_eigenvector(m, lam, tol=0):
    first = (m.c, lam - m.a)
    second = (lam - m.d, m.b)
    if is_exact(lam) and m.is_exact():
        return first if any(first) else second
    return max(first, second, key=lambda x: abs(complex(x[0])) + abs(complex(x[1])))


def _float_eigenvalues(m):
    values = numpy.linalg.eigvals(numpy.array([[m.a, m.b], [m.c, m.d]], dtype=complex))
    return sorted((complex(x) for x in values), key=lambda z: (z.real, z.imag))


def jordan_2x2(M, tol=DEFAULT_TOL):
    """
    Jordan form ``J = X M X^-1``.

    Eigenvalues are computed exactly when they are Gaussian rationals and
    with numpy otherwise. In floating point, eigenvalues count as distinct
    only when they are more than ``10 tol`` apart.

    Returns:
        Jordan: ``(X, J, kind, exact)`` with ``kind`` one of ``distinct``,
        ``scalar``, ``block``
    """
    exact = M.is_exact()
    if exact:
        root = gaussian_sqrt(M.trace() ** 2 - 4 * M.det())
        if root is None:
            log.diagnostic('Eigenvalues of {matrix} are irrational, using floating point',
                           matrix=repr(M), code='float_fallback')
            exact = False
            M = M.to_float()
    scale = max(1.0, M.max_abs())
    eps = 0 if exact else tol * scale

    if M.is_scalar(eps):
        return Jordan(Mat2C.identity(), Mat2C(M.a, 0, 0, M.a), SCALAR, exact)

    if exact:
        lam, mu = (M.trace() + root) / 2, (M.trace() - root) / 2
        distinct = root != 0
    else:
        lam, mu = _float_eigenvalues(M)
        gap = abs(lam - mu)
        distinct = gap > 10 * eps
        if eps < gap <= 10 * eps:
            log.diagnostic('Eigenvalue gap {gap} is within ten times the tolerance',
                           gap=gap, code='ill_conditioned')

    if distinct:
        x1 = _left_eigenvector(M, lam, eps)
        x2 = _left_eigenvector(M, mu, eps)
        return Jordan(Mat2C(x1[0], x1[1], x2[0], x2[1]), Mat2C(lam, 0, 0, mu), DISTINCT, exact)

    lam = M.trace() / 2
    N = M - Mat2C(lam, 0, 0, lam)
    x1 = (1, 0) if not (_is_zero(N.a, eps) and _is_zero(N.b, eps)) else (0, 1)
    x2 = N.row_times(x1)
    return Jordan(Mat2C(x1[0], x1[1], x2[0], x2[1]), Mat2C(lam, 1, 0, lam), BLOCK, exact)


def canonical_value(tag, u, v):
    """
    Value of the canonical polynomial of ``tag`` at ``(u, v)``.
    """
    if tag == UV:
        return u * v
    if tag == U_PLUS_V:
        return u + v
    if tag == TAG_U:
        return u
    if tag == TAG_V:
        return v
    return 0


class CanonicalClass(namedtuple('CanonicalClass', ['tag', 'M', 'C', 'D', 'exact'])):
    """
    Result of :func:`classify`: ``f_M(F(f_C(u), f_D(v)))`` equals the
    canonical polynomial of ``tag``.
    """
    __slots__ = ()

    def witness_value(self, F, u, v, tol=0):
        return moebius_apply(self.M, F(self.C(u, tol), self.D(v, tol), tol), tol)

    def residual(self, F, samples, tol=0):
        """
        Largest witness residual over ``samples``; pole hits are skipped.
        Floating point residuals are relative to the canonical value.

        Returns:
            tuple: ``(residual, checked)``
        """
        worst, checked = 0, 0
        for u, v in samples:
            try:
                value = self.witness_value(F, u, v, tol)
            except PoleError:
                continue
            target = canonical_value(self.tag, u, v)
            diff = value - target
            if is_exact(diff):
                err = abs(complex(diff)) if diff != 0 else 0
            else:
                err = abs(diff) / max(1.0, abs(complex(target)))
            worst = max(worst, err)
            checked += 1
        return worst, checked

    def to_dict(self):
        return {
            'tag': self.tag,
            'M': self.M.m.to_json(),
            'C': self.C.m.to_json(),
            'D': self.D.m.to_json(),
            'exact': self.exact,
        }


def _canonical(tag, M, C, D, exact):
    return CanonicalClass(tag, Moebius(M), Moebius(C), Moebius(D), exact)


def _classify_rank1(F, eps, exact):
    A, B = F.A, F.B
    identity = Mat2C.identity()
    if A.is_zero(eps):
        return _canonical(ZERO, identity, identity, identity, exact)
    (alpha, beta), (gamma, delta) = _rank1_split(A, eps)
    (alpha2, beta2), (gamma2, delta2) = _rank1_split(B, eps)
    Mu = Mat2C(alpha, beta, alpha2, beta2)
    Mv = Mat2C(gamma, delta, gamma2, delta2)
    u_varies = not _is_zero(Mu.det(), eps)
    v_varies = not _is_zero(Mv.det(), eps)

    def constant(m):
        return m.a / m.c if not _is_zero(m.c, eps) else m.b / m.d

    if u_varies and v_varies:
        return _canonical(UV, identity, Mu.adj(), Mv.adj(), exact)
    if u_varies:
        k = constant(Mv)
        return _canonical(TAG_U, Mat2C(1, 0, 0, k), Mu.adj(), identity, exact)
    if v_varies:
        k = constant(Mu)
        return _canonical(TAG_V, Mat2C(1, 0, 0, k), identity, Mv.adj(), exact)
    k = constant(Mu) * constant(Mv)
    return _canonical(ZERO, Mat2C(1, -k, 0, 1), identity, identity, exact)


def classify(F, tol=DEFAULT_TOL, mode='exact'):
    """
    Reduce ``F`` to one of ``uv``, ``u + v``, ``u``, ``v``, ``0``.

    Args:
        F (BilinFrac): Map to classify
        tol (float): Tolerance of floating point decisions
        mode (str): ``exact`` or ``float``; exact inputs fall back to
            floating point on their own when eigenvalues are irrational

    Returns:
        CanonicalClass: Tag and witnesses
    """
    if mode == 'float' or not F.is_exact():
        F = F.to_float()
    exact = F.is_exact()
    scale = max(1.0, F.A.max_abs(), F.B.max_abs())
    eps = 0 if exact else tol * scale * scale
    det_a, det_b = F.A.det(), F.B.det()

    if not _is_zero(det_b, eps):
        jordan = jordan_2x2(F.A * F.B.inverse(), tol)
        X, J, kind = jordan.X, jordan.J, jordan.kind
        D = F.B.inverse() * X.inverse()
        lam = J.a
        if kind == DISTINCT:
            result = _canonical(UV, Mat2C(-1, J.d, 1, -lam), X.T, D, jordan.exact)
        elif kind == SCALAR:
            result = _canonical(ZERO, Mat2C(1, -lam, 0, 1), X.T, D, jordan.exact)
        else:
            result = _canonical(U_PLUS_V, Mat2C(0, 1, 1, -lam), X.T * Mat2C.swap(), D,
                                jordan.exact)
    elif not _is_zero(det_a, eps):
        inner = classify(BilinFrac(F.B, F.A), tol, mode)
        result = inner._replace(M=Moebius(inner.M.m * Mat2C.swap()))
    else:
        result = _classify_rank1(F, eps, exact)

    log.debug('Classified map as {tag}', tag=result.tag, exact=result.exact)
    return result


def topview_map(s):
    """
    Top view ``x + i y`` of an :class:`~isocircles.surface.IsoCircleSurface`
    as the map ``(P1 + i P2) / (P0 - i P3)``.
    """
    i = GaussianRational(0, 1)
    num = s.P1 + s.P2 * i
    den = s.P0 - s.P3 * i
    return BilinFrac(
        Mat2C(num.coeff(1, 1), num.coeff(1, 0), num.coeff(0, 1), num.coeff(0, 0)),
        Mat2C(den.coeff(1, 1), den.coeff(1, 0), den.coeff(0, 1), den.coeff(0, 0)))
