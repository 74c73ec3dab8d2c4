"""
Exact bivariate polynomials.

:class:`BiPoly` is an immutable polynomial in ``u`` and ``v`` over the
rationals (field ``Q``) or the Gaussian rationals (field ``Q(i)``).
Mixing the two promotes to ``Q(i)``.

    >>> p = (U + 1) * (V + 1)
    >>> p
    BiPoly('u*v + u + v + 1')
    >>> p.bidegree()
    Bidegree(u=1, v=1)
    >>> p(2, 3)
    Fraction(12, 1)
    >>> divide_exact(p, U + 1)
    BiPoly('v + 1')
    >>> gcd((U + V) * U, (U + V) * V)
    BiPoly('u + v')
"""
from collections import namedtuple
from fractions import Fraction

from .exceptions import BidegreeError
from .exceptions import DegenerateInputError
from .exceptions import DivisibilityError
from .logger import log
from .scalars import GaussianRational
from .scalars import format_complex
from .scalars import format_rational
from .scalars import is_exact
from .scalars import simplify

FIELD_Q = 'Q'
FIELD_QI = 'Q(i)'

_AXES = {'u': 0, 'v': 1}


def _axis_index(axis):
    try:
        return _AXES[axis]
    except KeyError:
        raise ValueError('Unknown axis {!r}, expected "u" or "v"'.format(axis))


class Bidegree(namedtuple('Bidegree', ['u', 'v'])):
    """
    Actual maximal exponents of a polynomial. The zero polynomial reports
    ``(0, 0)`` with :attr:`is_zero` set.
    """
    def __new__(cls, u, v, is_zero=False):
        self = super(Bidegree, cls).__new__(cls, u, v)
        self.is_zero = is_zero
        return self

    def fits(self, bound):
        return self.u <= bound[0] and self.v <= bound[1]


def _grlex_key(exponents):
    a, b = exponents
    return (a + b, a)


def _normalize_coeff(c):
    if not is_exact(c):
        raise TypeError('BiPoly coefficients must be exact scalars, got {!r}'.format(c))
    c = simplify(c)
    if isinstance(c, int):
        c = Fraction(c)
    return c


class BiPoly(object):
    """
    Polynomial in ``u`` and ``v`` with exact coefficients.

    Args:
        coeffs (dict): Maps ``(deg_u, deg_v)`` to a coefficient. Zero
            coefficients are dropped.
        bound (tuple): Optional declared bidegree cap ``(i, j)``; checked
            on construction and kept until the next arithmetic operation.

    Raises:
        BidegreeError: A term exceeds ``bound``
    """
    __slots__ = ('_coeffs', '_bound', '_hash')

    def __init__(self, coeffs=None, bound=None):
        data = {}
        for key, c in (coeffs or {}).items():
            a, b = int(key[0]), int(key[1])
            if a < 0 or b < 0:
                raise ValueError('Negative exponent in term {!r}'.format(key))
            c = _normalize_coeff(c)
            if c:
                data[(a, b)] = c
        self._coeffs = data
        self._bound = None
        self._hash = None
        if bound is not None:
            self._check_bound(bound)
            self._bound = (int(bound[0]), int(bound[1]))

    @classmethod
    def constant(cls, c):
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, a, b, c=1):
        return cls({(a, b): c})

    @classmethod
    def from_terms(cls, terms, bound=None):
        """
        Build from ``(deg_u, deg_v, coeff)`` triples; repeated exponents add up.
        """
        data = {}
        for a, b, c in terms:
            data[(a, b)] = data.get((a, b), 0) + c
        return cls(data, bound=bound)

    @property
    def coeffs(self):
        return dict(self._coeffs)

    @property
    def bound(self):
        return self._bound

    @property
    def field(self):
        """
        ``'Q(i)'`` when a coefficient has a nonzero imaginary part, else ``'Q'``.
        """
        if any(isinstance(c, GaussianRational) for c in self._coeffs.values()):
            return FIELD_QI
        return FIELD_Q

    def terms(self):
        """
        Returns:
            list: ``((deg_u, deg_v), coeff)`` pairs, graded-lex descending
        """
        return sorted(self._coeffs.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def coeff(self, a, b):
        return self._coeffs.get((a, b), Fraction(0))

    def is_zero(self):
        return not self._coeffs

    def __bool__(self):
        return bool(self._coeffs)

    __nonzero__ = __bool__

    def is_constant(self):
        return all(key == (0, 0) for key in self._coeffs)

    def constant_value(self):
        """
        Value of a constant polynomial.

        Raises:
            ValueError: Polynomial is not constant
        """
        if not self.is_constant():
            raise ValueError('{} is not constant'.format(self))
        return self.coeff(0, 0)

    def degree(self, axis):
        i = _axis_index(axis)
        return max((key[i] for key in self._coeffs), default=0)

    def low_degree(self, axis):
        """
        Lowest exponent of ``axis`` among the terms, 0 for the zero polynomial.
        """
        i = _axis_index(axis)
        return min((key[i] for key in self._coeffs), default=0)

    def bidegree(self):
        if not self._coeffs:
            return Bidegree(0, 0, is_zero=True)
        return Bidegree(self.degree('u'), self.degree('v'))

    def total_degree(self):
        return max((a + b for a, b in self._coeffs), default=0)

    def fits(self, bound):
        return self.bidegree().fits(bound)

    def _check_bound(self, bound):
        if not self.fits(bound):
            raise BidegreeError(
                'Polynomial {} of bidegree {} exceeds bound {}'.format(
                    self, tuple(self.bidegree()), tuple(bound)),
                bidegree=list(self.bidegree()),
                bound=list(bound))

    def with_bound(self, i, j):
        """
        Copy of this polynomial declared to lie in ``R_{i,j}``.

        Raises:
            BidegreeError: The polynomial does not fit
        """
        return BiPoly(self._coeffs, bound=(i, j))

    def leading_term(self):
        """
        Graded-lex leading term, ``u`` before ``v``.

        Returns:
            tuple: ``((deg_u, deg_v), coeff)``

        Raises:
            DegenerateInputError: Zero polynomial
        """
        if not self._coeffs:
            raise DegenerateInputError('Zero polynomial has no leading term')
        key = max(self._coeffs, key=_grlex_key)
        return key, self._coeffs[key]

    def leading_coeff(self):
        return self.leading_term()[1]

    def monic(self):
        """
        Scale so the graded-lex leading coefficient is 1. The zero
        polynomial is returned unchanged.
        """
        if not self._coeffs:
            return self
        return self.scale(1 / self.leading_coeff())

    def coeff_u(self, i):
        """
        Coefficient of ``u**i`` as a polynomial in ``v``.
        """
        return BiPoly({(0, b): c for (a, b), c in self._coeffs.items() if a == i})

    def coeff_v(self, j):
        """
        Coefficient of ``v**j`` as a polynomial in ``u``.
        """
        return BiPoly({(a, 0): c for (a, b), c in self._coeffs.items() if b == j})

    def conjugate(self):
        return BiPoly({k: c.conjugate() for k, c in self._coeffs.items()})

    def real_part(self):
        return BiPoly({k: c.real for k, c in self._coeffs.items()})

    def imag_part(self):
        return BiPoly({k: c.imag for k, c in self._coeffs.items()})

    def derivative(self, axis):
        i = _axis_index(axis)
        data = {}
        for key, c in self._coeffs.items():
            e = key[i]
            if e:
                new_key = (key[0] - 1, key[1]) if i == 0 else (key[0], key[1] - 1)
                data[new_key] = c * e
        return BiPoly(data)

    def scale(self, c):
        if not is_exact(c):
            raise TypeError('Can only scale by an exact scalar, got {!r}'.format(c))
        return BiPoly({k: v * c for k, v in self._coeffs.items()})

    def evaluate(self, u, v):
        """
        Substitute scalars for ``u`` and ``v``. Exact scalars give an exact
        result; ``float`` or ``complex`` arguments evaluate in floating point.
        """
        total = 0
        for (a, b), c in self._coeffs.items():
            total = total + c * u ** a * v ** b
        if is_exact(total):
            total = simplify(total)
            return Fraction(total) if isinstance(total, int) else total
        return total

    __call__ = evaluate

    def compose(self, x, y):
        """
        Substitute polynomials (or scalars) ``x`` for ``u`` and ``y`` for ``v``.
        """
        x, y = _coerce(x), _coerce(y)
        powers_x, powers_y = _powers(x, self.degree('u')), _powers(y, self.degree('v'))
        total = ZERO
        for (a, b), c in self._coeffs.items():
            total = total + powers_x[a] * powers_y[b] * c
        return total

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        data = dict(self._coeffs)
        for k, c in other._coeffs.items():
            data[k] = data.get(k, 0) + c
        return BiPoly(data)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({k: -c for k, c in self._coeffs.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        data = {}
        for (a1, b1), c1 in self._coeffs.items():
            for (a2, b2), c2 in other._coeffs.items():
                key = (a1 + a2, b1 + b2)
                data[key] = data.get(key, 0) + c1 * c2
        return BiPoly(data)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self._coeffs == other._coeffs

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._coeffs.items()))
        return self._hash

    def format(self, names=('u', 'v')):
        """
        Render with the given variable names.

            >>> (U ** 2 * V - 3 * V + Fraction(1, 2)).format(names=('x', 'y'))
            'x^2*y - 3*y + 1/2'
        """
        if not self._coeffs:
            return '0'
        pieces = []
        for (a, b), c in self.terms():
            mono = '*'.join(
                name if e == 1 else '%s^%d' % (name, e)
                for name, e in zip(names, (a, b)) if e)
            if isinstance(c, GaussianRational):
                negative, coef = False, '(%s)' % format_complex(c)
            else:
                negative, mag = c < 0, abs(c)
                coef = '' if mag == 1 and mono else format_rational(mag)
            term = '*'.join(t for t in (coef, mono) if t)
            if not pieces:
                pieces.append('-' + term if negative else term)
            else:
                pieces.append(('- ' if negative else '+ ') + term)
        return ' '.join(pieces)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return "BiPoly('%s')" % self.format()


def _coerce(x):
    if isinstance(x, BiPoly):
        return x
    if is_exact(x):
        return BiPoly.constant(x)
    return NotImplemented


def _powers(x, n):
    result = [ONE]
    for _ in range(n):
        result.append(result[-1] * x)
    return result


ZERO = BiPoly()
ONE = BiPoly.constant(1)
U = BiPoly.monomial(1, 0)
V = BiPoly.monomial(0, 1)


def arith(p, q=None, kind='add'):
    """
    Apply one ring operation.

    Args:
        p (BiPoly): Left operand
        q: Right operand (a BiPoly, or a scalar for ``scale``); unused by ``neg``
        kind (str): ``add``, ``sub``, ``mul``, ``neg`` or ``scale``

    Returns:
        BiPoly: Result without a declared bound
    """
    if kind == 'add':
        return p + q
    if kind == 'sub':
        return p - q
    if kind == 'mul':
        return p * q
    if kind == 'neg':
        return -p
    if kind == 'scale':
        return p.scale(q)
    raise ValueError('Unknown operation {!r}'.format(kind))


def evaluate(p, u, v):
    return p.evaluate(u, v)


def bidegree(p):
    return p.bidegree()


# Polynomials in ``v`` alone are BiPoly instances with only ``u**0`` terms.

def _lc_v(p):
    d = p.degree('v')
    return d, p.coeff(0, d)


def _divmod_v(a, b):
    if not b:
        raise DegenerateInputError('Division by the zero polynomial')
    db, lb = _lc_v(b)
    quotient = ZERO
    while a and a.degree('v') >= db:
        da, la = _lc_v(a)
        t = BiPoly.monomial(0, da - db, la / lb)
        quotient = quotient + t
        a = a - t * b
    return quotient, a


def _gcd_v(a, b):
    while b:
        a, b = b, _divmod_v(a, b)[1]
    return a.monic()


def _content_u(p):
    content = ZERO
    for i in range(p.degree('u') + 1):
        c = p.coeff_u(i)
        if c:
            content = _gcd_v(content, c)
            if content.is_constant():
                break
    return content


def _divide_by_v_poly(p, c):
    if c.is_constant():
        return p.scale(1 / c.constant_value())
    result = ZERO
    for i in range(p.degree('u') + 1):
        q, r = _divmod_v(p.coeff_u(i), c)
        if r:
            raise DivisibilityError('{} does not divide {}'.format(c, p))
        result = result + q * U ** i
    return result


def _primitive_part(p):
    if not p:
        return p
    return _divide_by_v_poly(p, _content_u(p))


def _prem_u(a, b):
    db = b.degree('u')
    lb = b.coeff_u(db)
    while a and a.degree('u') >= db:
        da = a.degree('u')
        la = a.coeff_u(da)
        a = lb * a - la * U ** (da - db) * b
    return a


def gcd(p, q):
    """
    Greatest common divisor, normalized so the graded-lex leading
    coefficient is 1.

    Computed as ``gcd(contents) * gcd(primitive parts)`` viewing the
    polynomials as univariate in ``u`` over ``K[v]``; the primitive parts
    go through a primitive remainder sequence.

        >>> gcd(2 * U, 2 * V)
        BiPoly('1')

    Raises:
        DegenerateInputError: Both inputs are zero
    """
    if not p and not q:
        raise DegenerateInputError('gcd of two zero polynomials')
    if not q:
        return p.monic()
    if not p:
        return q.monic()

    content = _gcd_v(_content_u(p), _content_u(q))
    a, b = _primitive_part(p), _primitive_part(q)
    if a.degree('u') < b.degree('u'):
        a, b = b, a
    steps = 0
    while True:
        if not b:
            g = a
            break
        if b.degree('u') == 0:
            g = ONE
            break
        a, b = b, _primitive_part(_prem_u(a, b))
        steps += 1
    result = (content * _primitive_part(g)).monic()
    log.debug('gcd of bidegrees {left} and {right} in {steps} steps',
              left=tuple(p.bidegree()), right=tuple(q.bidegree()), steps=steps)
    return result


def gcd3(f1, f2, f3):
    """
    ``gcd(gcd(f1, f2), f3)``; zero inputs are skipped.

    Raises:
        DegenerateInputError: All inputs are zero
    """
    nonzero = [f for f in (f1, f2, f3) if f]
    if not nonzero:
        raise DegenerateInputError('gcd of three zero polynomials')
    g = nonzero[0].monic()
    for f in nonzero[1:]:
        if g.is_constant():
            break
        g = gcd(g, f)
    return g


def divide_exact(p, d):
    """
    Exact quotient ``p / d``.

    Raises:
        DegenerateInputError: ``d`` is zero
        DivisibilityError: ``d`` does not divide ``p``
    """
    if not d:
        raise DegenerateInputError('Division by the zero polynomial')
    dd = d.degree('u')
    ld = d.coeff_u(dd)
    quotient, rest = ZERO, p
    while rest:
        dr = rest.degree('u')
        if dr < dd:
            raise DivisibilityError('{} does not divide {}'.format(d, p))
        t, r = _divmod_v(rest.coeff_u(dr), ld)
        if r:
            raise DivisibilityError('{} does not divide {}'.format(d, p))
        t = t * U ** (dr - dd)
        quotient = quotient + t
        rest = rest - t * d
    return quotient


def flip(p, axis, cap):
    """
    ``axis**cap * p`` with ``axis`` replaced by its reciprocal: the
    coefficients are reversed along ``axis`` up to degree ``cap``.

        >>> flip(U * V + 1, 'v', 2)
        BiPoly('u*v + v^2')

    Raises:
        BidegreeError: ``p`` has degree above ``cap`` along ``axis``
    """
    i = _axis_index(axis)
    if p.degree(axis) > cap:
        raise BidegreeError(
            'Cannot flip {} along {} with cap {}'.format(p, axis, cap),
            degree=p.degree(axis), cap=cap)
    if i == 0:
        return BiPoly({(cap - a, b): c for (a, b), c in p.coeffs.items()})
    return BiPoly({(a, cap - b): c for (a, b), c in p.coeffs.items()})
