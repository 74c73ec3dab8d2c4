"""
Command line front end.

Every command reads one JSON document (a path, ``-`` for stdin, or the
document itself) and writes one JSON report::

    {"diagnostics": [...], "meta": {...}, "payload": {...}, "status": "ok"}

Exit codes: 0 on success, 1 when a domain error stopped the command, 2
when the input or the flags do not parse. Reports are serialized with
sorted keys, so equal requests give byte-identical reports.
"""
import argparse
import io
import logging
import sys
from collections import namedtuple

from . import __version__
from . import codec
from .bilinfrac import classify
from .bilinfrac import topview_map
from .exceptions import IsoCirclesError
from .exceptions import SchemaError
from .metalogger import DiagnosticCollector
from .metalogger import MetaAwareLogger
from .metalogger import RunMetaManager
from .polyring import BiPoly
from .projgeom import iso_proj
from .projgeom import on_cylinder
from .projgeom import on_line_l
from .rng import DEFAULT_SEED
from .selftest import SCALES
from .selftest import SMOKE
from .selftest import run_selftest
from .surface import IsoCircleSurface
from .surface import ParabolicSurface
from .surface import classify_isocurve
from .surface import compose_pythagorean
from .surface import compose_tparam
from .surface import decompose_tparam
from .surface import isocurve_sample
from .surface import lift_param1
from .surface import lift_param2
from .surface import normalize_chart
from .svg import render_family_svg
from .topview import DEFAULT_TOL
from .topview import Cyclic
from .topview import dual_conic_param1
from .topview import envelope_cyclic
from .topview import family_product
from .topview import family_sum
from .topview import sum_envelope_shape
from .topview import top2_pipeline

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_PARSE = 2

MODES = ('exact', 'float')

CommandRequest = namedtuple(
    'CommandRequest', ['command', 'input', 'output', 'mode', 'tol', 'seed', 'svg', 'scale'])
CommandRequest.__new__.__defaults__ = (None, '-', 'exact', DEFAULT_TOL, DEFAULT_SEED, None, SMOKE)

meta_manager = RunMetaManager()
log = MetaAwareLogger(meta_manager.get_meta)

COMMANDS = {}


def command(name, needs_input=True):
    def decorator(f):
        COMMANDS[name] = (f, needs_input)
        return f
    return decorator


def _surface(doc, kind=None):
    s = codec.decode_surface(doc, '$')
    if kind is not None and s.kind != kind:
        raise SchemaError('$.kind: expected "{}", got "{}"'.format(kind, s.kind), path='$.kind')
    return s


@command('construct')
def cmd_construct(doc, req):
    """
    ``{"kind": "tparam", "P", "Q", "R", "T"?, "X3"?}`` or
    ``{"kind": "pythagorean", "P0", ..., "P3", "T"?, "X3"?}``.
    """
    if not isinstance(doc, dict):
        raise SchemaError('$: expected an object', path='$')
    kind = doc.get('kind')
    body = {k: v for k, v in doc.items() if k != 'kind'}
    if kind == 'tparam':
        P, Q, R, T, X3 = codec.decode_tparam(body, '$')
        t = compose_tparam(P, Q, R, T, X3=X3)
    elif kind == 'pythagorean':
        names = ('P0', 'P1', 'P2', 'P3')
        codec._object(body, '$', required=names, optional=('T', 'X3'))
        polys = [codec.decode_poly(body[k], '$.' + k) for k in names]
        T = codec.decode_poly(body['T'], '$.T') if 'T' in body else BiPoly.constant(1)
        X3 = codec.decode_poly(body['X3'], '$.X3') if 'X3' in body else BiPoly()
        t = compose_pythagorean(*(polys + [T]), X3=X3)
    else:
        raise SchemaError('$.kind: expected "tparam" or "pythagorean", got {!r}'.format(kind),
                          path='$.kind')
    return {'tuple': codec.encode_tuple(t)}


@command('lift')
def cmd_lift(doc, req):
    s = _surface(doc)
    t = lift_param1(s) if isinstance(s, ParabolicSurface) else lift_param2(s)
    return {'tuple': codec.encode_tuple(t)}


@command('decompose')
def cmd_decompose(doc, req):
    t = codec.decode_tuple(doc, '$')
    return {'witness': codec.encode_witness(decompose_tparam(t))}


@command('normalize')
def cmd_normalize(doc, req):
    t, flips = normalize_chart(codec.decode_tuple(doc, '$'))
    return {'flips': list(flips), 'tuple': codec.encode_tuple(t)}


@command('classify-map')
def cmd_classify_map(doc, req):
    """
    A map ``{"A", "B"}`` or an ``param2`` surface, classified through its top view.
    """
    if isinstance(doc, dict) and 'kind' in doc:
        F = topview_map(_surface(doc, IsoCircleSurface.kind))
    else:
        F = codec.decode_bilinfrac(doc, '$')
    return {'class': codec.encode_class(classify(F, tol=req.tol, mode=req.mode))}


@command('dual-conic')
def cmd_dual_conic(doc, req):
    return {'dual_conic': codec.encode_dual_conic(dual_conic_param1(_surface(doc, 'param1')))}


@command('topview')
def cmd_topview(doc, req):
    report = top2_pipeline(_surface(doc, 'param2'), tol=req.tol, mode=req.mode)
    return {'topview': codec.encode_topview(report)}


def _family(doc):
    kind, omega1, data2 = codec.decode_family(doc, '$')
    builder = family_product if kind == codec.FAMILY_PRODUCT else family_sum
    return kind, builder(omega1, data2)


def _write_svg(req, family, cyclic):
    text = render_family_svg(family, cyclic, tol=req.tol)
    with io.open(req.svg, 'w', encoding='utf8') as f:
        f.write(text)
    log.info('Wrote {path}', path=req.svg)
    return text


@command('envelope')
def cmd_envelope(doc, req):
    kind, fam = _family(doc)
    envelope = envelope_cyclic(fam)
    cyclic = envelope if isinstance(envelope, Cyclic) else None
    payload = {'family': codec.encode_family(fam), 'envelope': codec.encode_envelope(envelope)}
    if kind == codec.FAMILY_SUM:
        payload['shape'] = envelope.kind if cyclic is None else sum_envelope_shape(cyclic)
    if req.svg:
        _write_svg(req, fam, cyclic)
    return payload


@command('render-svg')
def cmd_render_svg(doc, req):
    _, fam = _family(doc)
    try:
        cyclic = envelope_cyclic(fam)
    except IsoCirclesError as e:
        log.info('Rendering without envelope: {error}', error=str(e))
        cyclic = None
    if not isinstance(cyclic, Cyclic):
        cyclic = None
    if req.svg:
        _write_svg(req, fam, cyclic)
        return {'svg': req.svg, 'envelope': cyclic is not None}
    return {'svg': render_family_svg(fam, cyclic, tol=req.tol), 'envelope': cyclic is not None}


def _verify_tuple(doc):
    polys = [codec.decode_poly(p, '$.tuple[{}]'.format(k))
             for k, p in enumerate(codec._array(doc, '$.tuple', 5))]
    X1, X2, _, X4, X5 = polys
    residual = X1 ** 2 + X2 ** 2 + X4 ** 2 - X5 ** 2
    return {'cylinder_identity': not residual, 'residual': codec.encode_poly(residual)}


def _verify_point(doc):
    p = codec.decode_point5(doc, '$.point')
    result = {'on_cylinder': on_cylinder(p), 'on_line_l': on_line_l(p)}
    if result['on_cylinder'] and not result['on_line_l']:
        result['projection'] = iso_proj(p).to_json()
    return result


def _verify_surface(doc):
    s = _surface(doc)
    curves = []
    for axis in ('u', 'v'):
        for value in (0, 1):
            shape = classify_isocurve(isocurve_sample(s, axis, value))
            curves.append({'axis': axis, 'value': value, 'shape': shape})
    return {'isocurves': curves}


@command('verify')
def cmd_verify(doc, req):
    """
    ``{"tuple": [...]}`` checks the cylinder identity, ``{"point": [...]}``
    checks a point of RP^4 and ``{"surface": {...}}`` classifies isocurves.
    """
    codec._object(doc, '$', optional=('tuple', 'point', 'surface'))
    if len(doc) != 1:
        raise SchemaError('$: expected exactly one of tuple, point, surface', path='$')
    (key, value), = doc.items()
    return {'tuple': _verify_tuple, 'point': _verify_point, 'surface': _verify_surface}[key](value)


@command('selftest', needs_input=False)
def cmd_selftest(doc, req):
    return run_selftest(scale=req.scale, seed=req.seed)


def _read_input(source, stdin):
    if source == '-':
        return stdin.read()
    if source.lstrip().startswith(('{', '[')):
        return source
    try:
        with io.open(source, encoding='utf8') as f:
            return f.read()
    except IOError as e:
        raise SchemaError('Can not read {}: {}'.format(source, e), original=e, path=source)


def _check_request(req):
    if req.command not in COMMANDS:
        raise SchemaError('Unknown command {!r}'.format(req.command))
    if req.mode not in MODES:
        raise SchemaError('Unknown mode {!r}'.format(req.mode))
    if not req.tol > 0:
        raise SchemaError('tol must be positive, got {}'.format(req.tol))
    if req.scale not in SCALES:
        raise SchemaError('Unknown scale {!r}'.format(req.scale))


def run(req, stdin=None):
    """
    Execute a :class:`CommandRequest`.

    Returns:
        tuple: ``(report, exit_code)``; the report is a dict ready for
        :func:`~isocircles.codec.dump_report`
    """
    meta = meta_manager.set_meta(
        command=req.command, mode=req.mode, tol=req.tol, seed=req.seed,
        scale=req.scale if req.command == 'selftest' else None)
    with DiagnosticCollector() as diagnostics:
        try:
            _check_request(req)
            handler, needs_input = COMMANDS[req.command]
            doc = codec.loads(_read_input(req.input, stdin or sys.stdin)) if needs_input else None
            log.info('Running {command}', command=req.command)
            payload = handler(doc, req)
        except SchemaError as e:
            log.info('Rejected input: {error}', error=str(e))
            status, payload, error, code = codec.STATUS_ERROR, None, e.to_dict(), EXIT_PARSE
        except IsoCirclesError as e:
            log.info('Stopped by {tag}: {error}', tag=e.tag, error=str(e))
            status, payload, error, code = codec.STATUS_ERROR, None, e.to_dict(), EXIT_DOMAIN
        else:
            status, error, code = codec.STATUS_OK, None, EXIT_OK
    report = codec.make_report(status, payload, diagnostics.entries, meta.to_dict(), error)
    return report, code


def build_parser():
    parser = argparse.ArgumentParser(
        prog='isocircles',
        description='Exact computations on surfaces with two parabolas or two isotropic '
                    'circles through each point.')
    parser.add_argument('--version', action='version', version='%(prog)s ' + __version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--mode', choices=MODES, default='exact')
    common.add_argument('--tol', type=float, default=DEFAULT_TOL,
                        help='tolerance of floating point decisions (default %(default)s)')
    common.add_argument('--seed', type=lambda s: int(s, 0), default=DEFAULT_SEED,
                        help='64-bit seed, decimal or 0x-prefixed (default 0xC0FFEE)')
    common.add_argument('--out', default='-', help='report path, - for stdout')
    common.add_argument('--svg', help='write an SVG rendering to this path')
    common.add_argument('-v', '--verbose', action='store_true', help='log to stderr')

    subparsers = parser.add_subparsers(dest='command')
    subparsers.required = True
    for name, (_, needs_input) in sorted(COMMANDS.items()):
        sub = subparsers.add_parser(name, parents=[common])
        if needs_input:
            sub.add_argument('input', help='JSON document: a path, - for stdin, or inline JSON')
        if name == 'selftest':
            sub.add_argument('--scale', choices=SCALES, default=SMOKE)
    return parser


def _write_report(text, path, stdout):
    if path == '-':
        stdout.write(text)
        return
    with io.open(path, 'w', encoding='utf8') as f:
        f.write(text)


def main(argv=None, stdin=None, stdout=None):
    """
    Console entry point.

    Returns:
        int: Exit code
    """
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_PARSE
    if args.verbose:
        logging.basicConfig(level=logging.INFO, stream=sys.stderr,
                            format='%(name)s:%(levelname)s:%(message)s')
    req = CommandRequest(
        command=args.command,
        input=getattr(args, 'input', None),
        output=args.out,
        mode=args.mode,
        tol=args.tol,
        seed=args.seed,
        svg=args.svg,
        scale=getattr(args, 'scale', SMOKE))
    report, code = run(req, stdin)
    _write_report(codec.dump_report(report), req.output, stdout)
    return code
