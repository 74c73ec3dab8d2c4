"""
Points of projective 4-space, the cylinder ``x1^2 + x2^2 + x4^2 = x5^2``,
the line ``l`` and the isotropic stereographic projection.

    >>> iso_proj(ProjPoint4(2, 0, 0, 0, 2))
    AffinePoint3(x=Fraction(1, 1), y=Fraction(0, 1), z=Fraction(0, 1))
    >>> iso_unproj(AffinePoint3(0, 0, 5))
    ProjPoint4(0, 0, 10, -1, 1)
"""
from collections import namedtuple
from fractions import Fraction
from itertools import combinations

from .exceptions import DegenerateInputError
from .exceptions import ProjectionCenterError
from .scalars import format_complex
from .scalars import is_exact
from .scalars import simplify


def _exact(x):
    if not is_exact(x):
        raise TypeError('Expected an exact scalar, got {!r}'.format(x))
    x = simplify(x)
    return Fraction(x) if isinstance(x, int) else x


class AffinePoint3(namedtuple('AffinePoint3', ['x', 'y', 'z'])):
    """
    Point of R^3 with exact coordinates.
    """
    __slots__ = ()

    def __new__(cls, x, y, z):
        return super(AffinePoint3, cls).__new__(cls, _exact(x), _exact(y), _exact(z))

    def top_view(self):
        """
        Returns:
            tuple: ``(x, y)``
        """
        return self.x, self.y

    def to_json(self):
        return [format_complex(c) for c in self]


class ProjPoint4(object):
    """
    Point ``(x1 : x2 : x3 : x4 : x5)``; equality is up to a nonzero scalar.

    Raises:
        DegenerateInputError: All coordinates are zero
    """
    __slots__ = ('coords',)

    def __init__(self, *coords):
        if len(coords) == 1 and isinstance(coords[0], (list, tuple)):
            coords = tuple(coords[0])
        if len(coords) != 5:
            raise ValueError('A point of RP^4 has 5 coordinates, got {}'.format(len(coords)))
        coords = tuple(_exact(c) for c in coords)
        if not any(coords):
            raise DegenerateInputError('(0:0:0:0:0) is not a projective point')
        self.coords = coords

    def __getitem__(self, i):
        return self.coords[i]

    def __iter__(self):
        return iter(self.coords)

    def __eq__(self, other):
        if not isinstance(other, ProjPoint4):
            return NotImplemented
        return all(
            self.coords[i] * other.coords[j] == self.coords[j] * other.coords[i]
            for i, j in combinations(range(5), 2))

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        pivot = next(c for c in self.coords if c)
        return hash(tuple(c / pivot for c in self.coords))

    def __repr__(self):
        return 'ProjPoint4(%s)' % ', '.join(format_complex(c) for c in self.coords)

    def to_json(self):
        return [format_complex(c) for c in self.coords]


def on_cylinder(p):
    """
    Whether ``p`` lies on the cylinder with ``x5 != 0``.
    """
    x1, x2, _, x4, x5 = p.coords
    return x5 != 0 and x1 * x1 + x2 * x2 + x4 * x4 == x5 * x5


def on_line_l(p):
    """
    Whether ``p`` lies on the line ``x1 = x2 = 0, x4 = x5``.
    """
    x1, x2, _, x4, x5 = p.coords
    return x1 == 0 and x2 == 0 and x4 == x5


def iso_proj(p):
    """
    Isotropic stereographic projection from the cylinder to R^3.

    Raises:
        ProjectionCenterError: ``x5 - x4`` vanishes
    """
    x1, x2, x3, x4, x5 = p.coords
    w = x5 - x4
    if w == 0:
        raise ProjectionCenterError(
            'Point {!r} projects to infinity'.format(p), point=p.to_json())
    return AffinePoint3(x1 / w, x2 / w, x3 / w)


def iso_unproj(a):
    """
    Inverse projection ``(2x : 2y : 2z : x^2+y^2-1 : x^2+y^2+1)``.
    """
    x, y, z = a
    r = x * x + y * y
    return ProjPoint4(2 * x, 2 * y, 2 * z, r - 1, r + 1)
