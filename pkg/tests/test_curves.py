import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hylab.curves import CompoundCurve
from hylab.errors import InputError


def test_segment_length_and_points():
    g = CompoundCurve.segment(0, 3 + 4j)
    assert g.total_length == pytest.approx(5)
    assert g.point(0, 2.5) == pytest.approx(1.5 + 2j)


def test_json_round_trip():
    text = '{"pieces": [[[0, 0], [1, 1], [2, 1]], [[3, 0], [3, 2]]], "class": {"name": "monotone"}}'
    g = CompoundCurve.from_json(text)
    assert len(g) == 2
    assert g.curve_class.name == "monotone"
    h = CompoundCurve.from_dict(g.to_dict())
    np.testing.assert_allclose(h.all_vertices(), g.all_vertices())


@pytest.mark.parametrize("text", ['{"pieces": []}', '{"pieces": [[[0, 0]]]}', '{"segments": []}',
                                  '{"pieces": [[[0, 0], [1, 1]]], "colour": 1}', "[1, 2"])
def test_bad_curves(text):
    with pytest.raises(InputError):
        CompoundCurve.from_json(text)


@given(st.lists(st.tuples(st.floats(-50, 50), st.floats(-50, 50)), min_size=2, max_size=12, unique=True))
def test_sample_weights_integrate_length(verts):
    g = CompoundCurve([verts])
    nodes = g.sample(order=8)
    assert nodes.weights.sum() == pytest.approx(g.total_length, rel=1e-12)
    assert np.all(nodes.weights > 0)


def test_graded_sampling_resolves_origin():
    nodes = CompoundCurve.ray(0.3, 0.0, 100.0).sample(order=4)
    # a smooth integrand with a log singularity at 0: int_0^1 log(s) ds = -1 over the first unit
    s = nodes.s
    mask = s < 1
    w = nodes.weights[mask]
    assert np.sum(w * np.log(s[mask])) == pytest.approx(-1.0 - 0.0, abs=2e-2)
    assert math.isclose(float(np.abs(nodes.z).max()), 100.0, rel_tol=1e-2)
