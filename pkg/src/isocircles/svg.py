"""
SVG rendering of circle families and their envelopes.

Members are drawn as one ``<path>`` each (circles as two arcs, lines
clipped to the view box); the envelope is drawn as a separately stroked
path through tangency samples. World coordinates are kept, with ``y``
flipped by a group transform.

    >>> from isocircles.scalars import GaussianRational
    >>> from isocircles.topview import GeneralizedCircle, family_product
    >>> data = (GaussianRational(0, 1), 2, 0, 1)
    >>> fam = family_product(GeneralizedCircle.unit_circle(), data)
    >>> render_family_svg(fam).startswith('<svg')
    True
"""
import math
from fractions import Fraction

from .logger import log
from .topview import DEFAULT_TOL
from .topview import SAMPLE_VALUES
from .topview import tangency_points

SVG_NS = 'http://www.w3.org/2000/svg'

#: Parameter values whose tangency points trace the envelope
ENVELOPE_VALUES = tuple(Fraction(k, 4) for k in range(-24, 25))

MEMBER_STYLE = {'fill': 'none', 'stroke': '#4a6fa5', 'stroke_width': 1,
                'vector_effect': 'non-scaling-stroke'}
ENVELOPE_STYLE = {'fill': 'none', 'stroke': '#c0392b', 'stroke_width': 4,
                  'stroke_linecap': 'round', 'vector_effect': 'non-scaling-stroke'}


def demangle(k):
    return k.rstrip('_').replace('_', '-')


def rounder(x, prec=6):
    if isinstance(x, float):
        xr = round(x, prec)
        return int(xr) if xr % 1 == 0 else xr
    return x


def props_repr(d):
    return ' '.join('{}="{}"'.format(demangle(k), rounder(v)) for k, v in sorted(d.items()))


class Element(object):
    """
    An SVG element rendered to a string.
    """

    def __init__(self, tag, children=None, **attr):
        self.tag = tag
        self.children = list(children or [])
        self.attr = attr

    def svg(self):
        props = props_repr(self.attr)
        pre = ' ' if props else ''
        if not self.children:
            return '<{}{}{} />'.format(self.tag, pre, props)
        inner = '\n'.join(c.svg() for c in self.children)
        return '<{0}{1}{2}>\n{3}\n</{0}>'.format(self.tag, pre, props, inner)

    def __repr__(self):
        return '{}: {}'.format(self.tag, props_repr(self.attr))


def _fmt(x):
    return str(rounder(float(x)))


def circle_path(cx, cy, rad):
    """
    Closed path of two half arcs.
    """
    r = _fmt(rad)
    return 'M {} {} A {r} {r} 0 1 0 {} {} A {r} {r} 0 1 0 {} {} Z'.format(
        _fmt(cx + rad), _fmt(cy), _fmt(cx - rad), _fmt(cy), _fmt(cx + rad), _fmt(cy), r=r)


def clip_line(a, b, c, box):
    """
    Segment of ``a x + b y + c = 0`` inside ``box = (xmin, ymin, xmax, ymax)``,
    or ``None``.
    """
    xmin, ymin, xmax, ymax = box
    points = []
    if b:
        for x in (xmin, xmax):
            y = -(a * x + c) / b
            if ymin <= y <= ymax:
                points.append((x, y))
    if a:
        for y in (ymin, ymax):
            x = -(b * y + c) / a
            if xmin <= x <= xmax:
                points.append((x, y))
    if len(points) < 2:
        return None
    points.sort()
    return points[0], points[-1]


def _member_shape(form, tol):
    p, qr, qi, r = form.to_float()
    scale = max(1.0, abs(p), abs(qr), abs(qi), abs(r))
    if abs(p) > tol * scale:
        cx, cy = -qr / p, qi / p
        rad_sq = cx * cx + cy * cy - r / p
        if rad_sq <= 0:
            return None
        return 'circle', (cx, cy, math.sqrt(rad_sq))
    if abs(qr) <= tol * scale and abs(qi) <= tol * scale:
        return None
    return 'line', (2 * qr, -2 * qi, r)


def _view_box(shapes, points, pad=0.1):
    xs, ys = [], []
    for kind, args in shapes:
        if kind == 'circle':
            cx, cy, rad = args
            xs += [cx - rad, cx + rad]
            ys += [cy - rad, cy + rad]
    for x, y in points:
        xs.append(x)
        ys.append(y)
    if not xs:
        return -2.0, -2.0, 2.0, 2.0
    xmin, xmax, ymin, ymax = min(xs), max(xs), min(ys), max(ys)
    side = max(xmax - xmin, ymax - ymin, 1.0)
    cx, cy = (xmin + xmax) / 2, (ymin + ymax) / 2
    half = side * (0.5 + pad)
    return cx - half, cy - half, cx + half, cy + half


def envelope_samples(family, values=ENVELOPE_VALUES, tol=DEFAULT_TOL):
    """
    Tangency points of the members ``values`` of ``family``.
    """
    points = []
    for v in values:
        points.extend(tangency_points(family, v, tol))
    return points


def render_family_svg(family, envelope=None, values=SAMPLE_VALUES, size=400, tol=DEFAULT_TOL):
    """
    Render the members ``values`` of ``family`` and, when ``envelope`` is
    given, the tangency samples of the envelope.

    Args:
        family (CircleFamily): Quadratic family of circles
        envelope: :class:`~isocircles.topview.Cyclic` of the family or ``None``
        values: Member parameters to draw
        size (int): Width and height in pixels
        tol (float): Tolerance deciding whether a member is a line

    Returns:
        str: The SVG document
    """
    shapes = []
    for v in values:
        shape = _member_shape(family.member(v), tol)
        if shape is None:
            log.debug('Member {v} has no real locus, skipped', v=str(v))
            continue
        shapes.append(shape)

    samples = []
    if envelope is not None:
        samples = [(x, y) for x, y in envelope_samples(family, tol=tol)
                   if envelope.contains(x, y, math.sqrt(tol))]

    box = _view_box(shapes, samples)
    xmin, ymin, xmax, ymax = box
    paths = []
    for kind, args in shapes:
        if kind == 'circle':
            d = circle_path(*args)
        else:
            segment = clip_line(args[0], args[1], args[2], box)
            if segment is None:
                continue
            (x1, y1), (x2, y2) = segment
            d = 'M {} {} L {} {}'.format(_fmt(x1), _fmt(y1), _fmt(x2), _fmt(y2))
        paths.append(Element('path', d=d, class_='member', **MEMBER_STYLE))
    if samples:
        d = ' '.join('M {} {} h 0'.format(_fmt(x), _fmt(y)) for x, y in sorted(samples))
        paths.append(Element('path', d=d, class_='envelope', **ENVELOPE_STYLE))

    group = Element('g', paths, transform='scale(1,-1)')
    root = Element(
        'svg', [group], xmlns=SVG_NS, width=size, height=size,
        viewBox='{} {} {} {}'.format(
            _fmt(xmin), _fmt(-ymax), _fmt(xmax - xmin), _fmt(ymax - ymin)))
    return root.svg() + '\n'
