import json

import pytest
import numpy as np
import jax.numpy as jnp

from cvqmem.utils import (
    DataTracer,
    pinvh_sqrt,
    psd_part,
    top_eigh,
    is_symmetric,
    gauss_legendre,
    square_grid,
    uniform_phases,
    format_number,
    round_floats,
    write_csv,
    write_json,
)


def test_data_tracer():
    tracer = DataTracer()
    for x in (0.1, 0.2, 0.2, 0.3):
        tracer.append(x)
    assert len(tracer) == 4
    assert tracer[-1] == pytest.approx(0.3)
    np.testing.assert_allclose(tracer.time, [0, 1, 2, 3])
    assert tracer.mean() == pytest.approx(0.2)
    assert tracer.is_non_decreasing()
    tracer.append(0.29)
    assert not tracer.is_non_decreasing()
    assert tracer.is_non_decreasing(tol=0.02)
    assert tracer.best() == pytest.approx(0.3)
    assert DataTracer().uncertainty() is None


def test_data_tracer_save(tmp_path):
    tracer = DataTracer()
    tracer.append(0.5, step=3)
    tracer.append(0.7)
    assert tracer.uncertainty() == pytest.approx(0.1)
    path = tmp_path / "trace.txt"
    tracer.save(str(path))
    np.testing.assert_allclose(np.loadtxt(path), [[3, 0.5], [4, 0.7]])


def test_pinvh_sqrt():
    H = jnp.diag(jnp.array([4.0, 1.0, 0.0]))
    X = pinvh_sqrt(H)
    np.testing.assert_allclose(X, np.diag([0.5, 1.0, 0.0]), atol=1e-12)
    np.testing.assert_allclose(X @ H @ X, np.diag([1.0, 1.0, 0.0]), atol=1e-12)


def test_psd_part_and_top_eigh():
    H = jnp.array([[1.0, 0.0], [0.0, -0.5]])
    np.testing.assert_allclose(psd_part(H), np.diag([1.0, 0.0]), atol=1e-15)
    val, vec = top_eigh(jnp.diag(jnp.array([0.2, 0.9])))
    assert float(val) == pytest.approx(0.9)
    np.testing.assert_allclose(jnp.abs(vec), [0.0, 1.0], atol=1e-15)
    assert is_symmetric(H, 1e-12)


def test_gauss_legendre():
    nodes, weights = gauss_legendre(5, -2.0, 2.0)
    assert weights.sum() == pytest.approx(4.0)
    # exact for polynomials of degree 2n - 1
    assert np.sum(weights * nodes**8) == pytest.approx(2 * 2**9 / 9)
    with pytest.raises(ValueError):
        gauss_legendre(0, 0.0, 1.0)


def test_square_grid():
    nodes, weights = square_grid(3.8, 4)
    assert nodes.shape == (16, 2)
    assert float(weights.sum()) == pytest.approx(1.0)
    # second moment of the uniform density on [-d, d]
    assert float(weights @ nodes[:, 0] ** 2) == pytest.approx(3.8**2 / 3)
    with pytest.raises(ValueError):
        square_grid(-1.0, 4)


def test_uniform_phases():
    np.testing.assert_allclose(uniform_phases(4), [0.0, 45.0, 90.0, 135.0])


def test_output(tmp_path):
    assert format_number(0.1 + 0.2) == "0.3"
    assert format_number(True) == "true"
    assert round_floats({"a": [1 / 3, 2]}) == {"a": [0.333333333333, 2]}
    path = write_csv(str(tmp_path / "sub" / "t.csv"), ("a", "b"), [(1.0, "x")])
    assert open(path).read() == "a,b\n1,x\n"
    path = write_json(str(tmp_path / "t.json"), {"b": 1.0, "a": 2})
    assert json.loads(open(path).read()) == {"a": 2, "b": 1.0}
