"""
Seeded property suites over every module.

Each property draws its instances from its own :class:`~isocircles.rng.SplitMix64`
stream, forked from the master seed by name, so a property reproduces
the same instances whether it runs alone or with the others.

    >>> run_selftest(scale='smoke', only=['rank1-criterion'])['properties']
    [{'name': 'rank1-criterion', 'checked': 81, 'skipped': 0}]
"""
from collections import OrderedDict
from fractions import Fraction
from itertools import product

from . import bilinfrac
from . import projgeom
from . import surface
from . import topview
from .exceptions import DegenerateInputError
from .exceptions import DualConicError
from .exceptions import IsoCirclesError
from .exceptions import NoEnvelopeError
from .exceptions import SamplingError
from .exceptions import SelfTestFailure
from .logger import log
from .polyring import BiPoly
from .rng import DEFAULT_SEED
from .rng import SplitMix64
from .rng import random_bilinfrac
from .rng import random_canonical_bilinfrac
from .rng import random_equivalent
from .rng import random_full_linear
from .rng import random_moebius_data
from .rng import random_parabolic_surface
from .rng import random_point3
from .rng import random_poly
from .scalars import GaussianRational
from .scalars import format_complex

SMOKE = 'smoke'
FULL = 'full'
SCALES = (SMOKE, FULL)

#: Witness residual allowed when a classification fell back to floating point
FLOAT_RESIDUAL = 1e-9
#: Denominators below this count as poles when checking floating point witnesses
POLE_TOL = 1e-6
WITNESS_SAMPLES = 100

PROPERTIES = OrderedDict()


def prop(name, count, scaled=True):
    """
    Register a property run ``count`` times at full scale and a tenth of
    that at smoke scale (unless ``scaled`` is false).
    """
    def decorator(f):
        PROPERTIES[name] = (f, count, scaled)
        return f
    return decorator


def _fail(name, message, **counterexample):
    raise SelfTestFailure(
        '{}: {}'.format(name, message), property=name,
        counterexample={k: _show(v) for k, v in counterexample.items()})


def _show(value):
    if isinstance(value, (list, tuple)):
        return [_show(v) for v in value]
    if isinstance(value, (Fraction, GaussianRational, int)):
        return format_complex(value)
    return str(value)


def _shrink(polys, still_fails):
    """
    Greedily drop terms from ``polys`` while ``still_fails`` holds.

    Only whole terms are removed: coefficients are never made smaller
    and the number of polynomials never changes, so the result is a
    local minimum, not the smallest counterexample. Properties that need
    real shrinking belong in the hypothesis tests under ``tests/``; this
    runs inside the command line, where the same ``--seed`` must give the
    same report.
    """
    polys = list(polys)
    changed = True
    while changed:
        changed = False
        for i, p in enumerate(polys):
            for key in sorted(p.coeffs):
                smaller = p.coeffs
                del smaller[key]
                candidate = polys[:i] + [BiPoly(smaller)] + polys[i + 1:]
                if still_fails(candidate):
                    polys, changed = candidate, True
                    break
            if changed:
                break
    return polys


def _identity_fails(build):
    def check(polys):
        X1, X2, _, X4, X5 = build(*polys)
        return bool(X1 ** 2 + X2 ** 2 + X4 ** 2 - X5 ** 2)
    return check


@prop('cylinder-identity', 1000)
def check_cylinder_identity(rng, count):
    for _ in range(count):
        P, Q, R = (random_poly(rng) for _ in range(3))
        T = BiPoly.constant(rng.rational(nonzero=True))
        fails = _identity_fails(lambda *p: surface.tparam_polys(*p))
        if fails([P, Q, R, T]):
            _fail('cylinder-identity', 'X1^2 + X2^2 + X4^2 - X5^2 is not zero for a tparam tuple',
                  tparam=_shrink([P, Q, R, T], fails))
        polys = [random_poly(rng) for _ in range(4)]
        fails = _identity_fails(lambda *p: surface.pythagorean_polys(*(list(p) + [1])))
        if fails(polys):
            _fail('cylinder-identity',
                  'X1^2 + X2^2 + X4^2 - X5^2 is not zero for a Pythagorean tuple',
                  pythagorean=_shrink(polys, fails))
    return count, 0


@prop('tparam-round-trip', 500)
def check_tparam_round_trip(rng, count):
    checked, skipped = 0, 0
    while checked < count:
        P, Q = random_poly(rng), random_poly(rng)
        R = random_full_linear(rng)
        T = BiPoly.constant(rng.rational(nonzero=True))
        try:
            t = surface.compose_tparam(P, Q, R, T)
        except DegenerateInputError:
            skipped += 1
            continue
        try:
            witness = surface.decompose_tparam(t)
        except IsoCirclesError as e:
            _fail('tparam-round-trip', 'decompose failed: {}'.format(e), tparam=[P, Q, R, T])
        if witness.recompose(t.X3) != t:
            _fail('tparam-round-trip', 'recomposition differs', tparam=[P, Q, R, T],
                  witness=list(witness))
        checked += 1
    return checked, skipped


@prop('projection-inverse', 1000)
def check_projection_inverse(rng, count):
    for _ in range(count):
        a = random_point3(rng)
        p = projgeom.iso_unproj(a)
        if not projgeom.on_cylinder(p) or projgeom.iso_proj(p) != a:
            _fail('projection-inverse', 'iso_proj(iso_unproj(a)) != a', point=list(a))
    return count, 0


def _samples(rng, n):
    return [(rng.rational(7), rng.rational(7)) for _ in range(n)]


def _check_witness(name, F, expected_tag, samples):
    cls = bilinfrac.classify(F)
    if cls.tag not in bilinfrac.TAGS:
        _fail(name, 'unknown tag {}'.format(cls.tag), A=F.A.to_json(), B=F.B.to_json())
    if expected_tag is not None and cls.tag != expected_tag:
        _fail(name, 'expected {}, classified as {}'.format(expected_tag, cls.tag),
              A=F.A.to_json(), B=F.B.to_json())
    worst, checked = cls.residual(F, samples, POLE_TOL)
    limit = 0 if cls.exact else FLOAT_RESIDUAL
    if worst > limit or not checked:
        _fail(name, 'witness residual {} over {} samples'.format(worst, checked),
              A=F.A.to_json(), B=F.B.to_json(), tag=cls.tag)
    return cls


@prop('classifier-witness', 1000)
def check_classifier_witness(rng, count):
    for k in range(count):
        samples = _samples(rng, WITNESS_SAMPLES)
        # every fifth instance is built from a known canonical map
        if k % 5 == 4:
            tag = rng.choice(bilinfrac.TAGS)
            _check_witness('classifier-witness', random_canonical_bilinfrac(rng, tag), tag, samples)
        else:
            _check_witness('classifier-witness', random_bilinfrac(rng), None, samples)
    return count, 0


@prop('classifier-equivalence', 500)
def check_classifier_equivalence(rng, count):
    checked, skipped = 0, 0
    while checked < count:
        if checked % 2:
            F = random_canonical_bilinfrac(rng, rng.choice(bilinfrac.TAGS))
        else:
            F = random_bilinfrac(rng)
        try:
            G = random_equivalent(rng, F)
        except DegenerateInputError:
            skipped += 1
            continue
        tags = bilinfrac.classify(F).tag, bilinfrac.classify(G).tag
        if tags[0] != tags[1]:
            _fail('classifier-equivalence', 'equivalent maps classified as {} and {}'.format(*tags),
                  A=F.A.to_json(), B=F.B.to_json())
        checked += 1
    return checked, skipped


def _dual_conic_worked_example():
    u, v = BiPoly.monomial(1, 0), BiPoly.monomial(0, 1)
    s = surface.ParabolicSurface(u, v, u * v + 1, BiPoly())
    dc = topview.dual_conic_param1(s)
    half = Fraction(-1, 2)
    expected = [[0, half, 0], [half, 0, 0], [0, 0, 1]]
    if dc.kind != topview.SMOOTH_CONIC or dc.matrix != expected:
        _fail('dual-conic', 'P=u, Q=v, R=1+uv gives {}'.format(dc.kind),
              matrix=dc.matrix or [])


@prop('dual-conic', 200)
def check_dual_conic(rng, count):
    _dual_conic_worked_example()
    for _ in range(count):
        s = random_parabolic_surface(rng)
        try:
            dc = topview.dual_conic_param1(s)
        except DualConicError as e:
            _fail('dual-conic', str(e), surface=list(s.polys()))
        if dc.kind not in (topview.SMOOTH_CONIC, topview.TWO_PENCILS):
            _fail('dual-conic', 'degenerate outcome {}'.format(dc.kind), surface=list(s.polys()))
        # the fit used SAMPLE_VALUES only
        fresh = [rng.rational(7) for _ in range(5)]
        lines = topview.family_lines(s, 'u', fresh) + topview.family_lines(s, 'v', fresh)
        for line in lines:
            if topview.dual_conic_residual(dc.matrix, line) != 0:
                _fail('dual-conic', 'line off the dual conic', surface=list(s.polys()),
                      line=list(line))
    return count, 0


@prop('envelope-worked-example', 1, scaled=False)
def check_envelope_worked_example(rng, count):
    omega1 = topview.GeneralizedCircle.unit_circle()
    fam = topview.family_product(omega1, (GaussianRational(0, 1), 2, 0, 1))
    expected = (topview.HermForm(0, 0, -1), topview.HermForm(), topview.HermForm(1, 0, -4))
    if tuple(fam) != expected:
        _fail('envelope-worked-example', 'unexpected family', family=list(fam))
    cyclic = topview.envelope_cyclic(fam)
    circle = topview.Cyclic(BiPoly({(2, 0): 1, (0, 2): 1, (0, 0): -4}))
    if cyclic != circle:
        _fail('envelope-worked-example', 'envelope is {}'.format(cyclic))
    return 1, 0


def _envelope(fam):
    try:
        envelope = topview.envelope_cyclic(fam)
    except NoEnvelopeError:
        return None
    return envelope if isinstance(envelope, topview.Cyclic) else None


@prop('envelope-coincidence', 50)
def check_envelope_coincidence(rng, count):
    checked, skipped = 0, 0
    while checked < count:
        data1, data2 = random_moebius_data(rng, 3), random_moebius_data(rng, 3)
        omega1 = topview.GeneralizedCircle.from_moebius_data(*data1)
        omega2 = topview.GeneralizedCircle.from_moebius_data(*data2)
        fam1 = topview.family_product(omega1, data2)
        fam2 = topview.family_product(omega2, data1)
        env1, env2 = _envelope(fam1), _envelope(fam2)
        if env1 is None or env2 is None:
            skipped += 1
            continue
        for fam, other in ((fam1, env2), (fam2, env1)):
            for v in topview.SAMPLE_VALUES:
                for x, y in topview.tangency_points(fam, v):
                    if not other.contains(x, y, FLOAT_RESIDUAL):
                        _fail('envelope-coincidence',
                              'tangency point ({}, {}) is off the other envelope'.format(x, y),
                              data1=list(data1), data2=list(data2))
        checked += 1
    return checked, skipped


@prop('parabolic-isocurves', 100)
def check_parabolic_isocurves(rng, count):
    skipped = 0
    for _ in range(count):
        s = random_parabolic_surface(rng)
        for axis, value in product('uv', (0, 1)):
            try:
                pts = surface.isocurve_sample(s, axis, value)
            except SamplingError:
                skipped += 1
                continue
            shape = surface.classify_isocurve(pts)
            if shape == surface.ISOTROPIC_ELLIPSE:
                _fail('parabolic-isocurves', 'isocurve {} = {} is an isotropic ellipse'.format(
                    axis, value), surface=list(s.polys()))
            if shape != surface.VERTICAL_PARABOLA:
                log.diagnostic('Isocurve {axis} = {value} is degenerate: {shape}', axis=axis,
                               value=value, shape=shape, code='degenerate_isocurve')
    return count, skipped


@prop('rank1-criterion', 81, scaled=False)
def check_rank1_criterion(rng, count):
    values = (0, 1, GaussianRational(0, 1))
    for c11, c10, c01, c00 in product(values, repeat=4):
        P = BiPoly({(1, 1): c11, (1, 0): c10, (0, 1): c01, (0, 0): c00})
        if not P:
            try:
                bilinfrac.rank1_factor(P)
            except DegenerateInputError:
                continue
            _fail('rank1-criterion', 'zero polynomial was factored')
        factors = bilinfrac.rank1_factor(P)
        singular = c00 * c11 - c10 * c01 == 0
        if singular != (factors is not None):
            _fail('rank1-criterion', 'factorization disagrees with c00 c11 - c10 c01',
                  poly=P)
        if factors is not None and factors[0] * factors[1] != P:
            _fail('rank1-criterion', 'factors do not multiply back', poly=P,
                  factors=list(factors))
    return count, 0


def _count(full, scaled, scale):
    if scale == FULL or not scaled:
        return full
    return max(1, full // 10)


def run_selftest(scale=SMOKE, seed=DEFAULT_SEED, only=None):
    """
    Run the registered properties.

    Args:
        scale (str): ``smoke`` runs a tenth of the full counts
        seed (int): Master seed
        only (list): Names of the properties to run, all when ``None``

    Returns:
        dict: ``{"scale", "seed", "properties": [{"name", "checked", "skipped"}]}``

    Raises:
        SelfTestFailure: A property failed; details carry the property name
            and a counterexample
    """
    if scale not in SCALES:
        raise ValueError('Unknown scale {!r}'.format(scale))
    unknown = sorted(set(only or ()) - set(PROPERTIES))
    if unknown:
        raise ValueError('Unknown properties {}'.format(', '.join(unknown)))
    master = SplitMix64(seed)
    results = []
    for name, (check, full, scaled) in PROPERTIES.items():
        if only is not None and name not in only:
            continue
        count = _count(full, scaled, scale)
        log.info('Running {name} on {count} instances', name=name, count=count)
        checked, skipped = check(master.fork(name), count)
        results.append({'name': name, 'checked': checked, 'skipped': skipped})
    return {'scale': scale, 'seed': seed, 'properties': results}
