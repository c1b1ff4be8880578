import numpy as np
import pytest

from qdelta import kernels
from qdelta._rules import GAUSS_WEIGHTS, KRONROD_WEIGHTS, NODES
from qdelta.errors import BranchCutError

PY = kernels.get_backend("python")
try:
    CY = kernels.get_backend("cython")
except ImportError:  # extension not built
    CY = None

needs_ext = pytest.mark.skipif(CY is None, reason="compiled extension not built")


def test_rule_tables():
    assert np.isclose(KRONROD_WEIGHTS.sum(), 2.0, atol=1e-15)
    assert np.isclose(GAUSS_WEIGHTS.sum(), 2.0, atol=1e-15)
    assert np.allclose(NODES, -NODES[::-1])
    # 7-point Gauss is exact for degree 13, Kronrod 15 for degree 22
    for p in range(0, 23, 2):
        assert np.isclose(KRONROD_WEIGHTS @ NODES**p, 2.0 / (p + 1), atol=1e-14)
    assert np.isclose(GAUSS_WEIGHTS @ NODES**12, 2.0 / 13, atol=1e-14)


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")


@needs_ext
def test_qexp_real_equivalence():
    rng = np.random.default_rng(0)
    x = rng.normal(scale=5, size=2000)
    for q in (0.5, 1.1, 1.5, 1.9, 2.0, 3.0):
        np.testing.assert_allclose(CY.qexp_real(q, x), PY.qexp_real(q, x), rtol=1e-14, atol=0)


@needs_ext
def test_qexp_complex_equivalence():
    rng = np.random.default_rng(1)
    z = rng.normal(size=2000) + 1j * rng.normal(scale=10, size=2000)
    for q in (1.1, 1.5, 1.9):
        np.testing.assert_allclose(CY.qexp_complex(q, z), PY.qexp_complex(q, z), rtol=1e-13)


@needs_ext
def test_lorentzian_and_reduce_equivalence():
    k = np.linspace(-5, 5, 1001)
    np.testing.assert_allclose(CY.lorentzian(1.5, 1e-2, k), PY.lorentzian(1.5, 1e-2, k), rtol=1e-15)
    rng = np.random.default_rng(2)
    fv = rng.normal(size=(50, 15)) + 1j * rng.normal(size=(50, 15))
    hw = rng.uniform(0.1, 1, size=50)
    for a, b in zip(CY.gk15_reduce(fv, hw), PY.gk15_reduce(fv, hw)):
        np.testing.assert_allclose(a, b, rtol=1e-13)
    for a, b in zip(CY.gk15_reduce(fv.real.copy(), hw), PY.gk15_reduce(fv.real.copy(), hw)):
        np.testing.assert_allclose(a, b, rtol=1e-13)


@pytest.mark.parametrize("mod", [PY] + ([CY] if CY is not None else []),
                         ids=lambda m: m.__name__.rsplit(".", 1)[-1])
def test_branch_cut_raises(mod):
    # q=1.5: base 1 + (1-q) z = -1 when z = 4
    with pytest.raises(BranchCutError):
        mod.qexp_complex(1.5, np.array([4.0 + 0j]))


@pytest.mark.parametrize("mod", [PY] + ([CY] if CY is not None else []),
                         ids=lambda m: m.__name__.rsplit(".", 1)[-1])
def test_qexp_values(mod):
    assert mod.qexp_real(2.0, np.array([-1.0]))[0] == pytest.approx(0.5, rel=1e-15)
    assert mod.qexp_real(3.0, np.array([1.0]))[0] == 0.0
    assert abs(mod.qexp_complex(1.5, np.array([2j]))[0] - 0.5j) < 1e-12
