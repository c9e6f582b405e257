import random

import pytest

from graphgen import random_psc_graph
from psc import kasteleyn as K
from psc.errors import EndpointMismatch, InvalidPath, SegmentNotOnFace
from psc.graph import load_graph
from psc.protocol import resolve_data


@pytest.fixture(scope="module")
def patch():
    return load_graph(resolve_data("patch_2x5.psc")).decorated


def test_solver_on_random_graphs():
    rnd = random.Random(7)
    for _ in range(30):
        dg = random_psc_graph(rnd, 40).decorated
        o = K.find_kasteleyn(dg)
        assert K.verify_kasteleyn(dg, o)
        # gauge flips at a vertex preserve the condition
        v = rnd.randrange(dg.n_vertices)
        assert K.verify_kasteleyn(dg, K.gauge_K(o, v, dg))


def test_single_flip_breaks_condition(patch):
    o = K.find_kasteleyn(patch)
    e = next(iter(o.head))
    assert not K.verify_kasteleyn(patch, o.flipped([e]))


def test_orientation_text_roundtrip(patch):
    o = K.find_kasteleyn(patch)
    assert K.Orientation.from_text(patch, o.to_text(patch)) == o
    with pytest.raises(InvalidPath):
        K.Orientation.from_text(patch, "arrow 0.E\n")


def test_face_loop_flux_law(patch):
    # a plaquette loop encloses no anyon: wk = -1 in every gauge
    o = K.find_kasteleyn(patch)
    for f in patch.plaquettes:
        loop = K.face_loop(patch, f)
        assert K.wk(loop, o) == -1 == K.simple_loop_wk(patch, loop)
        assert K.enclosed_sigma(patch, loop) == 0


def test_lift_and_reverse(patch):
    line = K.lift_canonical(patch, ["0.W", "1", "2", "7.S"])
    assert line.is_canonical and patch.partner[line.vertices[0]] < 0
    o = K.find_kasteleyn(patch)
    rhat, r, s_hat, s_r = K.reverse(line)
    assert K.wk(rhat, o) == s_hat * K.wk(line, o)
    assert K.wk(r, o) == s_r * K.wk(line, o)
    assert (r.vertices[0], r.vertices[-1]) == (line.vertices[-1], line.vertices[0])


def test_deform_face_sign(patch):
    o = K.find_kasteleyn(patch)
    line = K.lift_canonical(patch, ["0.W", "1", "2", "3.N"])
    done = 0
    for f in patch.plaquettes:
        cyc = patch.faces[f]
        for i in range(len(line.vertices) - 1):
            for j in range(i + 1, len(line.vertices)):
                try:
                    new, sign = K.deform_face(patch, line, i, j, f)
                except SegmentNotOnFace:
                    continue
                assert set(line.vertices[i : j + 1]) <= set(cyc)
                assert K.wk(line, o) == sign * K.wk(new, o)
                assert K.line_ratio(patch, line, new) == K.line_ratio(patch, new, line)
                done += 1
    assert done > 0


def test_deform_rejects_outer_face(patch):
    line = K.lift_canonical(patch, ["0.W", "1.N"])
    with pytest.raises(SegmentNotOnFace):
        K.deform_face(patch, line, 0, 1, patch.outer_face)


def test_line_ratio_needs_common_ends(patch):
    a = K.lift_canonical(patch, ["0.W", "1.N"])
    b = K.lift_canonical(patch, ["0.W", "5.E"])
    with pytest.raises(EndpointMismatch):
        K.line_ratio(patch, a, b)


def test_split_cycles():
    assert K.split_cycles([1, 2, 3, 1]) == [[1, 2, 3, 1]]
    assert K.split_cycles([1, 2, 1, 3, 4, 1]) == [[1, 2, 1], [1, 3, 4, 1]]
