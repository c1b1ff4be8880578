import math

import numpy as np
import pytest

from qdelta.errors import BranchCutError, DomainError
from qdelta.qcalc import (
    Bump,
    QParam,
    SumOfBumps,
    check_entropy_q,
    entropy_maximality_check,
    gaussian_density,
    q_exp,
    q_exp_complex,
    q_gaussian_norm,
    q_gaussian_pdf,
    q_gaussian_variance,
    shannon_entropy,
    tsallis_entropy,
    uniform_density,
)

LOG2 = math.log(2.0)


class TestQExp:
    def test_origin(self):
        assert q_exp(1.5, 0.0) == 1.0

    def test_hand_value(self):
        assert q_exp(2.0, -1.0) == pytest.approx(0.5, rel=1e-15)
        assert q_exp(1.5, -3.0) == pytest.approx(2.5**-2, rel=1e-15)

    def test_cutoff(self):
        assert q_exp(3.0, 1.0) == 0.0

    def test_classical_limit(self):
        assert q_exp(1.0, 1.0) == pytest.approx(math.e, rel=1e-15)
        errs = [abs(q_exp(1 + d, 1.0) - math.e) for d in (1e-2, 1e-4, 1e-6)]
        assert errs[0] > errs[1] > errs[2] and errs[2] < 1e-5

    def test_vectorised(self):
        x = np.linspace(-3, 1.5, 7)  # below the pole at x = 2
        out = q_exp(1.5, x)
        assert out.shape == x.shape
        assert np.all(np.diff(out) > 0)

    def test_nan(self):
        with pytest.raises(DomainError):
            q_exp(1.5, float("nan"))

    def test_complex(self):
        assert q_exp_complex(1.5, 0j) == 1 + 0j
        assert abs(q_exp_complex(1.5, 2j) - 0.5j) < 1e-12
        x = np.linspace(-5, 5, 11)
        np.testing.assert_allclose(q_exp_complex(1.5, 1j * x), (1 - 0.5j * x) ** -2, rtol=1e-13)

    def test_complex_matches_real(self):
        x = np.linspace(-5, 1.5, 9)
        np.testing.assert_allclose(q_exp_complex(1.5, x + 0j).real, q_exp(1.5, x), rtol=1e-13)

    def test_branch_cut(self):
        with pytest.raises(BranchCutError):
            q_exp_complex(1.5, 4.0 + 0j)


def test_qparam_roles():
    assert QParam(1.5).for_delta() == 1.5
    with pytest.raises(DomainError):
        QParam(2.0).for_delta()
    with pytest.raises(DomainError):
        QParam(1.0).for_entropy()
    assert QParam(1.0).for_entropy(limit_mode=True) == 1.0
    with pytest.raises(DomainError):
        check_entropy_q(-1.0)


class TestEntropy:
    def test_uniform_unit(self):
        for q in (0.5, 1.5, 2.0, 3.0):
            assert abs(tsallis_entropy(q, uniform_density(0, 1))) < 1e-14

    def test_uniform_two(self):
        assert tsallis_entropy(2.0, uniform_density(0, 2)) == pytest.approx(0.5, rel=1e-13)
        # closed form (1 - 2**(1-q)) / (q - 1)
        for q in (0.5, 1.5, 3.0):
            assert tsallis_entropy(q, uniform_density(0, 2)) == pytest.approx((1 - 2 ** (1 - q)) / (q - 1), rel=1e-12)

    def test_central_difference_limit(self):
        f = uniform_density(0, 2)
        h = 0.5 * (tsallis_entropy(1 + 1e-4, f) + tsallis_entropy(1 - 1e-4, f))
        assert abs(h - LOG2) < 1e-6

    def test_shannon(self):
        assert abs(shannon_entropy(uniform_density(0, 1))) < 1e-15
        assert shannon_entropy(uniform_density(0, 2)) == pytest.approx(LOG2, rel=1e-13)
        assert shannon_entropy(gaussian_density()) == pytest.approx(0.5 * math.log(2 * math.pi * math.e), rel=1e-10)

    def test_gaussian_tsallis_closed_form(self):
        # ∫ N(0,1)^q = (2π)^{(1-q)/2} / sqrt(q)
        for q in (0.5, 1.5, 2.5):
            exact = (1 - (2 * math.pi) ** ((1 - q) / 2) / math.sqrt(q)) / (q - 1)
            assert tsallis_entropy(q, gaussian_density()) == pytest.approx(exact, rel=1e-10)

    def test_q_one_needs_limit_mode(self):
        with pytest.raises(DomainError):
            tsallis_entropy(1.0, uniform_density(0, 2))
        assert tsallis_entropy(1.0, uniform_density(0, 2), limit_mode=True) == pytest.approx(LOG2)

    def test_return_error(self):
        v, e = tsallis_entropy(1.5, gaussian_density(), return_error=True)
        assert e >= 0 and math.isfinite(v)

    def test_bad_density(self):
        with pytest.raises(DomainError):
            uniform_density(1, 0)
        with pytest.raises(DomainError):
            gaussian_density(0.0)


class TestQGaussian:
    @pytest.mark.parametrize("q", [1.01, 1.2, 1.5, 2.0, 2.5, 2.9])
    @pytest.mark.parametrize("beta", [0.5, 1.0, 3.0])
    def test_normalised(self, q, beta):
        f = q_gaussian_pdf(q, beta)
        assert f.integrate(f.pdf).value == pytest.approx(1.0, rel=1e-8)

    @pytest.mark.parametrize("q", [1.1, 1.3, 1.5])
    def test_variance(self, q):
        f = q_gaussian_pdf(q, 1.0)
        m2 = f.integrate(lambda x: x * x * f.pdf(x)).value
        assert m2 == pytest.approx(q_gaussian_variance(q, 1.0), rel=1e-8)

    def test_classical_limit(self):
        f = q_gaussian_pdf(1.0, 0.5, limit_mode=True)
        assert f.pdf(np.array([0.0]))[0] == pytest.approx((2 * math.pi) ** -0.5, rel=1e-14)
        # continuity in q
        assert q_gaussian_norm(1 + 1e-9, 0.5) == pytest.approx((2 * math.pi) ** -0.5, rel=1e-8)

    def test_domain(self):
        for q in (1.0, 3.0, 0.5):
            with pytest.raises(DomainError):
                q_gaussian_norm(q, 1.0)
        with pytest.raises(DomainError):
            q_gaussian_norm(1.5, -1.0)
        assert q_gaussian_variance(2.0, 1.0) == math.inf


class TestMaximality:
    def test_zero_scale(self):
        rep = entropy_maximality_check(1.5, 1.0, scale=0.0)
        assert all(r.delta == 0.0 for r in rep.rows)

    def test_passes(self):
        rep = entropy_maximality_check(1.5, 1.0, scale=1e-2)
        assert rep.passed
        assert all(r.delta <= 1e-10 for r in rep.rows)
        assert all(abs(r.mass_residual) <= 1e-12 for r in rep.rows)

    def test_second_order(self):
        bump = [SumOfBumps((Bump(-1.0, 0.5), Bump(1.0, 0.5)), "pair")]
        a = entropy_maximality_check(1.3, 1.0, bump, scale=2e-2).rows[0].delta
        b = entropy_maximality_check(1.3, 1.0, bump, scale=1e-2).rows[0].delta
        assert 3.0 <= a / b <= 5.0

    def test_domain(self):
        with pytest.raises(DomainError):
            entropy_maximality_check(1.8, 1.0)
