"""scikit-learn conventions for DifferenceBasis."""

import doctest

import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

import lindiff.estimator
from lindiff import DifferenceBasis, parse_expression, parse_ring


def test_get_set_params_and_clone():
    est = DifferenceBasis(ring="x,y; u", mode="janet-like", criteria=("C2",))
    params = est.get_params()
    assert params["mode"] == "janet-like" and params["criteria"] == ("C2",)
    est.set_params(order="lex")
    twin = clone(est)
    assert twin.get_params() == est.get_params()
    assert not hasattr(twin, "basis_")


def test_fit_transform():
    est = DifferenceBasis(ring="n; f")
    out = est.fit("f[n+1] - f[n] - f[n-1]").transform("f[n+2]")
    assert out == [parse_expression("f[n+1] + f[n]", parse_ring("n; f"))]
    assert [m.shift for m in est.masters()] == [(0,), (1,)]
    assert est.hilbert_series().coefficients(3) == [1, 1, 0, 0]
    assert est.hilbert_polynomial()(10) == 0


def test_fit_accepts_lists_and_affine_rhs():
    est = DifferenceBasis(ring="x,y; u").fit(["u[x+1,y] - u[x,y]", "u[x,y+1] - u[x,y] = 2"])
    assert len(est.basis_) == 2
    assert est.rhs_[1] == est.ring_.field(2)


def test_relations_param():
    est = DifferenceBasis(ring="n; f", relations=["f[0]"]).fit("f[n+2] - f[n+1] - f[n]")
    assert [str(p) for p in est.transform(["f[n+2]"])] == ["f[n+1]"]
    assert [m.shift for m in est.masters()] == [(1,)]


def test_not_fitted():
    with pytest.raises(NotFittedError):
        DifferenceBasis(ring="n; f").transform("f[n]")


def test_invalid_params():
    with pytest.raises(ValueError):
        DifferenceBasis(ring="n; f", order="weighted").fit("f[n+1]")
    with pytest.raises(TypeError):
        DifferenceBasis(ring=42).fit("f[n+1]")


def test_docstring_example():
    failures, _ = doctest.testmod(lindiff.estimator, verbose=False)
    assert failures == 0
