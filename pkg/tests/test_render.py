import pytest

from psc.errors import GraphError
from psc.graph import load_graph
from psc.protocol import resolve_data
from psc.render import RenderSpec, parse_pathset, render_svg


@pytest.fixture(scope="module")
def patch():
    return load_graph(resolve_data("patch_2x5.psc")).decorated


def test_plain_render(patch):
    svg = render_svg(RenderSpec(patch))
    assert svg.count("<polygon") == patch.n_stabilizers
    assert svg.count('r="4"') == patch.n_sigma
    assert svg.rstrip().endswith("</svg>")


def test_overlay(patch):
    spec = parse_pathset(patch, "# comment\nloop 0 1 6 5 0\nanyon x 0.W\n")
    assert len(spec.wilson) == 1 and spec.anyons == {"x": patch.parse_corner("0.W")}
    svg = render_svg(spec)
    assert 'stroke="#c0392b"' in svg


def test_bad_overlay(patch):
    with pytest.raises(GraphError):
        parse_pathset(patch, "circle 1 2\n")
    with pytest.raises(GraphError):
        render_svg(RenderSpec(patch, anyons={"a": 999}))
