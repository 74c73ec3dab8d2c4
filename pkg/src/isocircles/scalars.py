"""
Exact scalars.

Rationals are :class:`fractions.Fraction`. Gaussian rationals are
:class:`GaussianRational`, a pair of fractions that mixes freely with
``int`` and ``Fraction``; mixing with ``complex`` or ``float`` drops to
floating point, which is how the float fallback paths are entered.

    >>> z = GaussianRational(1, 2)
    >>> z * z.conjugate()
    GaussianRational('5')
    >>> format_complex(z / 2)
    '1/2+i'
"""
import cmath
import math
import re
from fractions import Fraction

import sympy

_EXACT_TYPES = (int, Fraction)


class GaussianRational(object):
    """
    Element ``re + im*i`` of Q(i).

    Args:
        re: Real part (anything :class:`fractions.Fraction` accepts)
        im: Imaginary part
    """
    __slots__ = ('re', 'im')

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @property
    def real(self):
        return self.re

    @property
    def imag(self):
        return self.im

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def norm(self):
        """
        Returns:
            Fraction: ``re**2 + im**2``
        """
        return self.re * self.re + self.im * self.im

    def is_real(self):
        return self.im == 0

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    __nonzero__ = __bool__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __add__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational(self.re + other.re, self.im + other.im)
        if isinstance(other, _EXACT_TYPES):
            return GaussianRational(self.re + other, self.im)
        if isinstance(other, (complex, float)):
            return complex(self) + other
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re)
        if isinstance(other, _EXACT_TYPES):
            return GaussianRational(self.re * other, self.im * other)
        if isinstance(other, (complex, float)):
            return complex(self) * other
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError('GaussianRational division by zero')
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if isinstance(other, GaussianRational):
            return self * other.inverse()
        if isinstance(other, _EXACT_TYPES):
            if other == 0:
                raise ZeroDivisionError('GaussianRational division by zero')
            return GaussianRational(self.re / other, self.im / other)
        if isinstance(other, (complex, float)):
            return complex(self) / other
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, _EXACT_TYPES):
            return GaussianRational(other) * self.inverse()
        if isinstance(other, (complex, float)):
            return other / complex(self)
        return NotImplemented

    __div__ = __truediv__
    __rdiv__ = __rtruediv__

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (self ** -n).inverse()
        result, base = GaussianRational(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, _EXACT_TYPES):
            return self.im == 0 and self.re == other
        if isinstance(other, (complex, float)):
            return complex(self) == other
        return NotImplemented

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return "GaussianRational('%s')" % format_complex(self)

    def __str__(self):
        return format_complex(self)


def is_exact(x):
    """
    Returns:
        bool: Whether ``x`` is an exact scalar (int, Fraction, GaussianRational)
    """
    return isinstance(x, (int, Fraction, GaussianRational))


def to_gaussian(x):
    """
    Convert an exact scalar to :class:`GaussianRational`.
    """
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, _EXACT_TYPES):
        return GaussianRational(x)
    raise TypeError('Not an exact scalar: {!r}'.format(x))


def to_rational(x):
    """
    Convert an exact scalar with zero imaginary part to Fraction.
    """
    if isinstance(x, GaussianRational):
        if x.im != 0:
            raise ValueError('Scalar {} is not real'.format(x))
        return x.re
    return Fraction(x)


def simplify(x):
    """
    Demote a real :class:`GaussianRational` to Fraction, leave others alone.
    """
    if isinstance(x, GaussianRational) and x.im == 0:
        return x.re
    return x


def rational_sqrt(q):
    """
    Exact square root of a nonnegative rational, or ``None``.

        >>> rational_sqrt(Fraction(9, 4))
        Fraction(3, 2)
        >>> rational_sqrt(2) is None
        True
    """
    q = Fraction(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def gaussian_sqrt(z):
    """
    Exact square root in Q(i), or ``None`` when it leaves the field.

    Solves ``(x + yi)**2 = a + bi`` through ``x**2 = (a + |z|)/2``.
    """
    z = to_gaussian(z)
    a, b = z.re, z.im
    modulus = rational_sqrt(a * a + b * b)
    if modulus is None:
        return None
    x = rational_sqrt((a + modulus) / 2)
    if x is None:
        return None
    if x != 0:
        return GaussianRational(x, b / (2 * x))
    y = rational_sqrt((modulus - a) / 2)
    if y is None:
        return None
    return GaussianRational(0, y)


def complex_sqrt(z):
    return cmath.sqrt(complex(z))


def height(x):
    """
    Height of an exact scalar: the largest absolute numerator or denominator.
    """
    if isinstance(x, GaussianRational):
        return max(height(x.re), height(x.im))
    x = Fraction(x)
    return max(abs(x.numerator), x.denominator)


def format_rational(q):
    """
        >>> format_rational(Fraction(-3, 4))
        '-3/4'
    """
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return '%d/%d' % (q.numerator, q.denominator)


def parse_rational(text):
    """
    Parse ``"num/den"``, an integer or a decimal string into a Fraction.
    """
    if isinstance(text, bool):
        raise ValueError('Not a rational: {!r}'.format(text))
    if isinstance(text, int):
        return Fraction(text)
    return Fraction(str(text).strip())


def _format_float(x):
    return '{:.17g}'.format(x)


def format_complex(z):
    """
    Format a scalar as ``re``, ``im i`` or ``re+im i`` with rational or
    float parts.

        >>> format_complex(GaussianRational(0, -1))
        '-i'
        >>> format_complex(GaussianRational(Fraction(1, 2), Fraction(3, 2)))
        '1/2+3/2i'
    """
    if isinstance(z, GaussianRational):
        re_part, im_part, fmt = z.re, z.im, format_rational
    elif isinstance(z, _EXACT_TYPES):
        return format_rational(z)
    else:
        z = complex(z)
        re_part, im_part, fmt = z.real, z.imag, _format_float
    if im_part == 0:
        return fmt(re_part)
    if im_part == 1:
        im_text = 'i'
    elif im_part == -1:
        im_text = '-i'
    else:
        im_text = fmt(im_part) + 'i'
    if re_part == 0:
        return im_text
    if not im_text.startswith('-'):
        im_text = '+' + im_text
    return fmt(re_part) + im_text


_COMPLEX_RE = re.compile(
    r'^\s*(?:(?P<re>[+-]?[0-9./eE]+)(?![0-9./eE]*i))?'
    r'\s*(?:(?P<im>[+-]?(?:[0-9./eE]+)?)i)?\s*$')


def parse_complex(text):
    """
    Parse the output of :func:`format_complex` back into an exact scalar.

        >>> parse_complex('1/2-3i')
        GaussianRational('1/2-3i')
        >>> parse_complex('-i')
        GaussianRational('-i')
    """
    if isinstance(text, int) and not isinstance(text, bool):
        return GaussianRational(text)
    match = _COMPLEX_RE.match(str(text))
    if not match or not (match.group('re') or match.group('im') is not None):
        raise ValueError('Not a complex number: {!r}'.format(text))
    re_part = Fraction(match.group('re')) if match.group('re') else Fraction(0)
    im_text = match.group('im')
    if im_text is None:
        im_part = Fraction(0)
    elif im_text in ('', '+'):
        im_part = Fraction(1)
    elif im_text == '-':
        im_part = Fraction(-1)
    else:
        im_part = Fraction(im_text)
    return GaussianRational(re_part, im_part)


def to_sympy(q):
    """
    Convert an exact rational to :class:`sympy.Rational`.
    """
    q = to_rational(q)
    return sympy.Rational(q.numerator, q.denominator)


def from_sympy(r):
    """
    Convert a sympy rational back to Fraction.
    """
    r = sympy.Rational(r)
    return Fraction(int(r.p), int(r.q))


def exact_matrix(rows):
    """
    Build a :class:`sympy.Matrix` over the rationals from nested rows of
    exact scalars.
    """
    return sympy.Matrix([[to_sympy(x) for x in row] for row in rows])
