import math

import numpy as np
import pytest

import mlie


def heisenberg():
    return mlie.MetricLieAlgebra(mlie.make_algebra("L3_2"), np.eye(3))


def test_catalog_names():
    assert len(mlie.algebra_names()) == 14
    assert len(mlie.metric_variants()) == 10


def test_heisenberg_ricci():
    m = heisenberg()
    assert np.allclose(m.ricci_via_definition(), np.diag([-0.5, -0.5, 0.5]), atol=1e-14)
    assert np.allclose(m.ricci_general(), m.ricci_via_definition(), atol=1e-14)
    report = m.classify()
    assert report["verdict"] == "NotEinstein"
    assert report["einstein_lambda"] is None


def test_custom_algebra_and_errors():
    a = mlie.LieAlgebra(3, {(0, 1): [0.0, 0.0, 1.0]})
    assert a == mlie.make_algebra("L3_2")
    assert a.is_nilpotent()
    with pytest.raises(ValueError):
        mlie.LieAlgebra(3, {(0, 1): [0.0, 0.0, 1.0], (0, 2): [1.0, 0.0, 0.0]})
    with pytest.raises(mlie.BadParams):
        mlie.make_metric("L3_2", "m32", {"alpha": 0.0})
    with pytest.raises(KeyError):
        mlie.make_algebra("L9_9")


def test_catalog_metrics():
    flat = mlie.make_metric("L3_2", "m32", {"alpha": 1.0})
    assert flat.classify()["verdict"] == "Flat"
    assert flat.signature() == (1, 2, 0)
    curved = mlie.make_metric("L4_3", "m43", {"a": 0.0, "b": 0.0, "eps": 1.0})
    assert curved.classify()["verdict"] == "RicciFlat"
    assert np.abs(curved.curvature_tensor()).max() > 1e-3
    ex8 = mlie.make_metric("EX8")
    report = ex8.classify()
    assert report["verdict"] == "Einstein"
    assert math.isclose(report["einstein_lambda"], 0.5, rel_tol=1e-12)
    assert ex8.center_tag() == "EuclideanNondegenerate"
    assert ex8.derived_tag() == "LorentzianNondegenerate"


def test_curvature_tensor_shape_and_sign():
    t = heisenberg().curvature_tensor()
    assert t.shape == (3, 3, 3, 3)
    # Sectional curvature <R(e1,e2)e2, e1> of span(e1, e2) is -3/4, and K = -R.
    assert math.isclose(t[0, 1, 1, 0], 0.75, rel_tol=1e-14)


def test_derivations():
    a = mlie.make_algebra("L3_2")
    d = a.nonzero_trace_derivation()
    assert np.trace(d) == 2.0
    assert a.derivation_defect(mlie.listed_derivation("L3_2")) == 0.0
    assert len(a.derivations()) == 6


def test_double_extension_round_trip():
    alpha = 1.5
    data = mlie.ExtensionData(np.array([[0, -alpha], [alpha, 0]]), np.array([[0, alpha], [0, 0]]), 0.0, np.zeros(2))
    assert data.admissibility()["is_einstein"]
    m = data.extend()
    assert m.classify()["verdict"] == "RicciFlat"
    recovered, basis, residual = mlie.decompose(m)
    assert recovered.v_dim == 2
    assert residual < 1e-10
    assert basis.shape == (4, 4)
    assert mlie.decompose(mlie.make_metric("EX6")) is None


def test_two_step():
    m = mlie.two_step(1, 2, np.zeros(2), np.ones((2, 1)), np.array([[0, math.sqrt(2)], [-math.sqrt(2), 0]]))
    assert np.abs(m.ricci_via_definition()).max() < 1e-12
    with pytest.raises(mlie.ConstraintViolation):
        mlie.two_step(0, 2, np.zeros(2), np.zeros((2, 0)), np.array([[0, 1.0], [-1.0, 0]]))


def test_search_is_deterministic():
    a = mlie.make_algebra("L3_2")
    r1 = mlie.search(a, minus=1, plus=2, seed=7)
    r2 = mlie.search(a, minus=1, plus=2, seed=7, threads=1)
    assert r1["converged"]
    assert r1["residual"] <= 1e-6
    assert np.array_equal(r1["gram"], r2["gram"])


def test_parse_file_and_verify():
    a, g, comment = mlie.parse_algebra_file('{"dim": 2, "brackets": [], "metric": [[-1, 0], [0, 1]]}')
    assert a.dim == 2
    assert g[0, 0] == -1.0
    assert comment == ""
    assert mlie.verify(["flatness"]) == {2: True}
