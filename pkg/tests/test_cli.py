import io
import json

import pytest

from isocircles import codec
from isocircles.bilinfrac import UV
from isocircles.cli import EXIT_DOMAIN
from isocircles.cli import EXIT_OK
from isocircles.cli import EXIT_PARSE
from isocircles.cli import CommandRequest
from isocircles.cli import main
from isocircles.cli import run
from isocircles.polyring import ONE
from isocircles.polyring import U
from isocircles.polyring import V
from isocircles.rng import DEFAULT_SEED
from isocircles.surface import CylinderTuple
from isocircles.surface import IsoCircleSurface
from isocircles.surface import ParabolicSurface
from isocircles.surface import VERTICAL_PARABOLA
from isocircles.surface import compose_tparam
from isocircles.topview import CONCENTRIC_CIRCLES
from isocircles.topview import SMOOTH_CONIC

UNIT_DOC = {'alpha': '1', 'beta': ['0', '0'], 'gamma': '-1'}
WORKED_FAMILY = {'omega1': UNIT_DOC, 'omega2': ['i', 2, 0, 1]}
WORKED_SURFACE = IsoCircleSurface(U, 2 * U + V, U * V - 2, -1, 0)


def poly_doc(p):
    return codec.encode_poly(p)


def run_cli(argv, stdin=''):
    """
    Run the command line and return ``(exit_code, report, raw_output)``.
    """
    out = io.StringIO()
    code = main(argv, io.StringIO(stdin), out)
    text = out.getvalue()
    return code, json.loads(text) if text else None, text


def run_doc(command, doc, *flags):
    return run_cli([command] + list(flags) + ['-'], json.dumps(doc))


def test_construct_then_decompose():
    doc = {'kind': 'tparam', 'P': poly_doc(U + 1), 'Q': poly_doc(V - 1), 'R': poly_doc(U * V + 2)}
    code, report, _ = run_doc('construct', doc)
    assert code == EXIT_OK
    assert report['status'] == 'ok'
    t = codec.decode_tuple(report['payload']['tuple'])
    assert t == compose_tparam(U + 1, V - 1, U * V + 2, ONE)

    code, report, _ = run_doc('decompose', report['payload']['tuple'])
    assert code == EXIT_OK
    witness = report['payload']['witness']
    assert sorted(witness) == ['P', 'Q', 'R', 'T']
    assert codec.decode_poly(witness['R']) == U * V + 2
    assert codec.decode_poly(witness['P']) == U + 1


def test_construct_pythagorean():
    doc = {'kind': 'pythagorean', 'P0': poly_doc(ONE), 'P1': poly_doc(U), 'P2': poly_doc(V),
           'P3': {'terms': []}}
    code, report, _ = run_doc('construct', doc)
    assert code == EXIT_OK
    r = U ** 2 + V ** 2
    assert codec.decode_tuple(report['payload']['tuple']) == \
        CylinderTuple(2 * U, 2 * V, 0, r - 1, r + 1)


def test_construct_unknown_kind():
    code, report, _ = run_doc('construct', {'kind': 'circle'})
    assert code == EXIT_PARSE
    assert report['error']['details']['path'] == '$.kind'


def test_decompose_hypothesis_violated():
    r = U ** 2 + V ** 2
    doc = [poly_doc(p) for p in (2 * U, 2 * V, 0 * U, r - 1, r + 1)]
    code, report, _ = run_doc('decompose', doc)
    assert code == EXIT_DOMAIN
    assert report['status'] == 'error'
    assert report['payload'] is None
    assert report['error']['tag'] == 'surface/hypothesis-violated'


def test_lift():
    s = IsoCircleSurface(1, U, V, 0, U * V)
    code, report, _ = run_doc('lift', codec.encode_surface(s))
    assert code == EXIT_OK
    r = U ** 2 + V ** 2
    assert codec.decode_tuple(report['payload']['tuple']) == \
        CylinderTuple(2 * U, 2 * V, 2 * U * V, r - 1, r + 1)


def test_normalize():
    t0 = compose_tparam(U + 1, V + 1, U * V, ONE)
    code, report, _ = run_doc('normalize', codec.encode_tuple(t0.flip('v')))
    assert code == EXIT_OK
    assert report['payload']['flips'] == ['v']
    assert codec.decode_tuple(report['payload']['tuple']) == t0


@pytest.mark.parametrize('doc', [
    {'A': [['2', '0'], ['0', '3']], 'B': [['1', '0'], ['0', '1']]},
    codec.encode_surface(WORKED_SURFACE),
])
def test_classify_map(doc):
    code, report, _ = run_doc('classify-map', doc)
    assert code == EXIT_OK
    cls = report['payload']['class']
    assert cls['tag'] == UV
    assert cls['exact'] is True


def test_classify_map_rejects_param1():
    doc = codec.encode_surface(ParabolicSurface(U, V, 1, 0))
    code, report, _ = run_doc('classify-map', doc)
    assert code == EXIT_PARSE
    assert report['error']['tag'] == 'codec/schema'


def test_dual_conic():
    s = ParabolicSurface(U, V, 1 + U * V, 0)
    code, report, _ = run_doc('dual-conic', codec.encode_surface(s))
    assert code == EXIT_OK
    conic = report['payload']['dual_conic']
    assert conic['kind'] == SMOOTH_CONIC
    assert conic['matrix'] == [['0', '-1/2', '0'], ['-1/2', '0', '0'], ['0', '0', '1']]


def test_topview():
    code, report, _ = run_doc('topview', codec.encode_surface(WORKED_SURFACE))
    assert code == EXIT_OK
    topview = report['payload']['topview']
    assert topview['classification']['tag'] == UV
    assert topview['envelope1']['equation'] == 'x^2 + y^2 - 4'
    assert topview['envelope2']['equation'] == 'x^2 + y^2 - 4'
    assert topview['same_cyclic'] is True


def test_topview_float_mode():
    code, report, _ = run_doc('topview', codec.encode_surface(WORKED_SURFACE), '--mode', 'float')
    assert code == EXIT_OK
    assert report['payload']['topview']['envelope1'] is None
    assert 'float_fallback' in [d['code'] for d in report['diagnostics']]
    assert report['meta']['mode'] == 'float'


def test_envelope():
    code, report, _ = run_doc('envelope', WORKED_FAMILY)
    assert code == EXIT_OK
    payload = report['payload']
    assert payload['envelope']['equation'] == 'x^2 + y^2 - 4'
    assert 'shape' not in payload
    assert sorted(payload['family']) == ['A', 'B', 'C']


def test_envelope_sum_shape():
    doc = {'family': 'sum', 'omega1': UNIT_DOC, 'omega2': ['3', '-3i', '1', 'i']}
    code, report, _ = run_doc('envelope', doc)
    assert code == EXIT_OK
    assert report['payload']['shape'] == CONCENTRIC_CIRCLES


def test_envelope_of_pencil():
    doc = {'omega1': UNIT_DOC, 'omega2': ['1', '-i', '1', 'i']}
    code, report, _ = run_doc('envelope', doc)
    assert code == EXIT_DOMAIN
    assert report['error']['tag'] == 'topview/no-envelope'
    assert report['error']['details'] == {'reason': 'pencil'}


def test_envelope_of_linear_family():
    line = {'alpha': '0', 'beta': ['1/2', '0'], 'gamma': '0'}
    doc = {'family': 'sum', 'omega1': line, 'omega2': ['1', '0', '0', '1']}
    code, report, _ = run_doc('envelope', doc)
    assert code == EXIT_OK
    payload = report['payload']
    assert payload['envelope'] == {'kind': 'linear_family', 'points': []}
    assert payload['shape'] == 'linear_family'
    assert 'linear_family' in [d['code'] for d in report['diagnostics']]


def test_envelope_writes_svg(tmpdir):
    path = str(tmpdir.join('family.svg'))
    code, report, _ = run_doc('envelope', WORKED_FAMILY, '--svg', path)
    assert code == EXIT_OK
    with io.open(path, encoding='utf8') as f:
        text = f.read()
    assert text.startswith('<svg')
    assert 'class="envelope"' in text


def test_render_svg_inline():
    code, report, _ = run_doc('render-svg', WORKED_FAMILY)
    assert code == EXIT_OK
    assert report['payload']['envelope'] is True
    assert report['payload']['svg'].startswith('<svg')

    pencil = {'omega1': UNIT_DOC, 'omega2': ['1', '-i', '1', 'i']}
    code, report, _ = run_doc('render-svg', pencil)
    assert code == EXIT_OK
    assert report['payload']['envelope'] is False


def test_verify_point():
    code, report, _ = run_doc('verify', {'point': ['0', '0', '7', '1', '1']})
    assert code == EXIT_OK
    assert report['payload'] == {'on_cylinder': True, 'on_line_l': True}

    code, report, _ = run_doc('verify', {'point': ['2', '0', '1', '0', '2']})
    assert report['payload']['projection'] == ['1', '0', '1/2']


def test_verify_tuple():
    r = U ** 2 + V ** 2
    doc = {'tuple': [poly_doc(p) for p in (2 * U, 2 * V, 0 * U, r - 1, r + 1)]}
    code, report, _ = run_doc('verify', doc)
    assert code == EXIT_OK
    assert report['payload']['cylinder_identity'] is True

    doc['tuple'][0] = poly_doc(U)
    code, report, _ = run_doc('verify', doc)
    assert report['payload']['cylinder_identity'] is False
    assert report['payload']['residual']['terms']


def test_verify_surface():
    doc = {'surface': codec.encode_surface(ParabolicSurface(U, V, 1, U ** 2 + V ** 2))}
    code, report, _ = run_doc('verify', doc)
    assert code == EXIT_OK
    shapes = [c['shape'] for c in report['payload']['isocurves']]
    assert shapes == [VERTICAL_PARABOLA] * 4


@pytest.mark.parametrize('doc', [
    {},
    {'point': ['0', '0', '0', '0', '1'], 'tuple': []},
    {'circle': []},
])
def test_verify_rejects(doc):
    code, report, _ = run_doc('verify', doc)
    assert code == EXIT_PARSE


@pytest.mark.parametrize('argv, stdin', [
    (['envelope', '-'], '{'),
    (['envelope', '-'], '{"omega1": 1, "omega2": []}'),
    (['envelope', '--tol', '0', '-'], json.dumps(WORKED_FAMILY)),
    (['envelope', '/nonexistent/family.json'], ''),
])
def test_parse_errors(argv, stdin):
    code, report, _ = run_cli(argv, stdin)
    assert code == EXIT_PARSE
    assert report['status'] == 'error'
    assert report['error']['tag'] == 'codec/schema'


@pytest.mark.parametrize('argv', [
    [],
    ['unknown'],
    ['envelope', '--mode', 'symbolic', '-'],
    ['selftest', '--scale', 'huge'],
])
def test_bad_flags(argv):
    code, report, _ = run_cli(argv)
    assert code == EXIT_PARSE
    assert report is None


def test_inline_and_file_input(tmpdir):
    inline = run_cli(['envelope', json.dumps(WORKED_FAMILY)])
    path = tmpdir.join('family.json')
    path.write(json.dumps(WORKED_FAMILY))
    from_file = run_cli(['envelope', str(path)])
    assert inline[0] == from_file[0] == EXIT_OK
    assert inline[2] == from_file[2]


def test_out_file(tmpdir):
    path = str(tmpdir.join('report.json'))
    code, report, text = run_doc('envelope', WORKED_FAMILY, '--out', path)
    assert code == EXIT_OK
    assert text == ''
    with io.open(path, encoding='utf8') as f:
        assert json.load(f)['status'] == 'ok'


def test_reports_are_deterministic():
    first = run_doc('topview', codec.encode_surface(WORKED_SURFACE))[2]
    second = run_doc('topview', codec.encode_surface(WORKED_SURFACE))[2]
    assert first == second
    assert first.endswith('\n')


def test_report_meta():
    code, report, _ = run_doc('envelope', WORKED_FAMILY, '--seed', '0x10')
    assert report['meta'] == {'command': 'envelope', 'mode': 'exact', 'seed': 16, 'tol': 1e-9}


def test_run_request():
    report, code = run(CommandRequest('envelope', json.dumps(WORKED_FAMILY)))
    assert code == EXIT_OK
    assert report['meta']['seed'] == DEFAULT_SEED
