"""
Reproducible random instances.

:class:`SplitMix64` is the 64-bit split-mix generator: the state advances
by the golden gamma ``0x9E3779B97F4A7C15`` and each output is the state
passed through two xor-shift-multiply rounds. Equal seeds give equal
streams on every platform, so a seed in a request pins down every
random instance built from it.

    >>> rng = SplitMix64(0)
    >>> hex(rng.next_u64())
    '0xe220a8397b1dcdaf'
"""
import zlib
from fractions import Fraction

from .bilinfrac import TAG_U
from .bilinfrac import TAG_V
from .bilinfrac import U_PLUS_V
from .bilinfrac import UV
from .bilinfrac import ZERO as TAG_ZERO
from .bilinfrac import BilinFrac
from .bilinfrac import Mat2C
from .bilinfrac import Moebius
from .bilinfrac import equivalent_map
from .exceptions import DegenerateInputError
from .polyring import BiPoly
from .projgeom import AffinePoint3
from .scalars import GaussianRational
from .surface import IsoCircleSurface
from .surface import ParabolicSurface

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15

#: Default seed of command line runs
DEFAULT_SEED = 0xC0FFEE

#: Canonical maps ``(A, B)`` of each classifier tag
CANONICAL_MAPS = {
    UV: (Mat2C(1, 0, 0, 0), Mat2C(0, 0, 0, 1)),
    U_PLUS_V: (Mat2C(0, 1, 1, 0), Mat2C(0, 0, 0, 1)),
    TAG_U: (Mat2C(0, 1, 0, 0), Mat2C(0, 0, 0, 1)),
    TAG_V: (Mat2C(0, 0, 1, 0), Mat2C(0, 0, 0, 1)),
    TAG_ZERO: (Mat2C(0, 0, 0, 0), Mat2C(0, 0, 0, 1)),
}


def mix64(z):
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class SplitMix64(object):
    """
    Args:
        seed (int): Any integer, reduced modulo ``2**64``
    """
    __slots__ = ('state',)

    def __init__(self, seed=DEFAULT_SEED):
        self.state = int(seed) & MASK64

    def next_u64(self):
        self.state = (self.state + GAMMA) & MASK64
        return mix64(self.state)

    def fork(self, label):
        """
        Independent generator for ``label``, derived from the current state
        without advancing it.
        """
        return SplitMix64(mix64(self.state ^ zlib.crc32(label.encode('utf8'))))

    def randint(self, lo, hi):
        """
        Integer in ``[lo, hi]``.
        """
        if hi < lo:
            raise ValueError('Empty range [{}, {}]'.format(lo, hi))
        return lo + self.next_u64() % (hi - lo + 1)

    def choice(self, seq):
        return seq[self.randint(0, len(seq) - 1)]

    def rational(self, height=5, nonzero=False):
        """
        Rational with numerator and denominator of absolute value at most ``height``.
        """
        while True:
            q = Fraction(self.randint(-height, height), self.randint(1, height))
            if q or not nonzero:
                return q

    def gaussian(self, height=5, nonzero=False):
        while True:
            z = GaussianRational(self.rational(height), self.rational(height))
            if z or not nonzero:
                return z


def random_poly(rng, bound=(1, 1), height=5, gaussian=False, nonzero=False):
    """
    Dense random polynomial within ``bound``.
    """
    draw = rng.gaussian if gaussian else rng.rational
    while True:
        p = BiPoly({(a, b): draw(height)
                    for a in range(bound[0] + 1) for b in range(bound[1] + 1)})
        if p or not nonzero:
            return p


def random_full_linear(rng, height=5):
    """
    Polynomial of ``R_{1,1}`` with all four coefficients nonzero.
    """
    return BiPoly({(a, b): rng.rational(height, nonzero=True) for a in (0, 1) for b in (0, 1)})


def random_parabolic_surface(rng, height=5):
    return ParabolicSurface(
        random_full_linear(rng, height),
        random_full_linear(rng, height),
        random_full_linear(rng, height),
        random_poly(rng, (2, 2), height))


def random_isocircle_surface(rng, height=5):
    while True:
        polys = [random_poly(rng, (1, 1), height) for _ in range(4)]
        if polys[0] or polys[3]:
            return IsoCircleSurface(*(polys + [random_poly(rng, (2, 2), height)]))


def random_matrix(rng, height=5):
    return Mat2C(*(rng.gaussian(height) for _ in range(4)))


def random_moebius(rng, height=5):
    while True:
        m = random_matrix(rng, height)
        if m.det() != 0:
            return Moebius(m)


def random_moebius_data(rng, height=5):
    """
    ``(a, b, c, d)`` with ``a d - b c != 0``.
    """
    return random_moebius(rng, height).m.entries()


def random_bilinfrac(rng, height=5):
    """
    Map with Gaussian rational entries of height at most ``height``.
    """
    while True:
        B = random_matrix(rng, height)
        if not B.is_zero():
            return BilinFrac(random_matrix(rng, height), B)


def random_equivalent(rng, F, height=3):
    """
    ``f(F(f_u(u), f_v(v)))`` for random Moebius ``f, f_u, f_v``.
    """
    return equivalent_map(
        F, random_moebius(rng, height), random_moebius(rng, height), random_moebius(rng, height))


def random_canonical_bilinfrac(rng, tag, height=3):
    """
    A map equivalent to the canonical polynomial of ``tag``.
    """
    A, B = CANONICAL_MAPS[tag]
    while True:
        try:
            return random_equivalent(rng, BilinFrac(A, B), height)
        except DegenerateInputError:
            # the outer map sent a constant map to infinity
            continue


def random_point3(rng, height=9):
    return AffinePoint3(rng.rational(height), rng.rational(height), rng.rational(height))
