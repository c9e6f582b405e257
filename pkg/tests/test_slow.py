"""Slow checks, enabled with ``PSC_SLOW=1``."""

import os

import pytest

from graphgen import enumerate_small, flux_law_check, format_small, load_small

pytestmark = pytest.mark.skipif(not os.environ.get("PSC_SLOW"), reason="set PSC_SLOW=1 to run")


def test_small_graph_file_is_current():
    shipped = [format_small(n, e) for n, e in load_small()]
    fresh = [format_small(n, e) for n, e in enumerate_small()]
    assert shipped == fresh


def test_flux_law_with_digons():
    loops = bad = 0
    for gi, (n, sedges) in enumerate(enumerate_small(max_mult=2)):
        nl, nb = flux_law_check(n, sedges, gi, gauges=20)
        loops += nl
        bad += nb
    assert loops > 0 and bad == 0
