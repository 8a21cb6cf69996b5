import math

import numpy as np
import pytest

from cslcs import InputError, arratia_steele, closed_form, solve
from cslcs.fit import (
    LUEKER_UPPER,
    aux,
    multi_starts,
    residuals,
)

PRINTED = (0.407025, 0.457987, 0.561206, 0.528838)


class TestAux:
    def test_r2_always_zero(self):
        assert aux(0.3, 0.4, 0.5, 0.6).r2 == 0.0

    def test_printed_solution_q_half(self):
        a = aux(*PRINTED)
        assert a.q0 == pytest.approx(0.5, abs=1e-5)
        assert a.q1 == pytest.approx(0.5, abs=1e-5)

    def test_equal_p_collapses_q0(self):
        for u in (0.1, 0.4, 0.9):
            assert aux(u, 0.37, 0.37, 0.5).q0 == pytest.approx(0.37, abs=1e-15)

    def test_domain(self):
        with pytest.raises(InputError):
            aux(1.0, 0.5, 0.5, 0.5)
        with pytest.raises(InputError):
            aux(0.5, 1.5, 0.5, 0.5)


class TestResiduals:
    def test_printed_solution_small(self):
        e = residuals(*PRINTED)
        assert np.abs(e).max() < 5e-5

    def test_arratia_steele_point(self):
        u = math.sqrt(2) - 1
        e = residuals(u, 0.5, 0.5, 0.5)
        assert abs(e[0]) < 1e-15
        assert abs(e[1]) < 1e-15
        assert np.abs(e[2:]).max() > 1e-3

    def test_constructed_e2_zero(self):
        # pick p2, set u from E1, then p0 = p1 = p solving E2 exactly
        p2 = 0.4
        u = math.sqrt(1 - p2) / (1 + math.sqrt(1 - p2))
        ub = 1 - u
        p = (0.5 - ub * ub * p2) / (2 * u * ub + u * u)
        e = residuals(u, p, p, p2)
        assert abs(e[0]) < 1e-15
        assert abs(e[1]) < 1e-15


class TestClosedForm:
    def test_printed_digits(self):
        sol = closed_form()
        assert sol.u == pytest.approx(0.407025, abs=5e-7)
        assert sol.gamma == pytest.approx(0.814050, abs=1e-6)
        assert sol.p0 == pytest.approx(0.457987, abs=5e-7)
        assert sol.p1 == pytest.approx(0.561206, abs=5e-7)
        assert sol.p2 == pytest.approx(0.528838, abs=5e-7)

    def test_residuals_tiny(self):
        assert max(abs(r) for r in closed_form().residuals) < 1e-12

    def test_admissible(self):
        sol = closed_form()
        assert sol.admissible()
        assert not sol.exceeds_lueker_upper_bound

    def test_radical_value(self):
        expected = (
            math.sqrt(7.0 / 3.0)
            - math.sqrt((23.0 - 5.0 * math.sqrt(21.0)) / 6.0)
            - 1.0
        )
        assert closed_form().u == expected


class TestSolve:
    def test_default_start(self):
        sol = solve()
        cf = closed_form()
        assert sol.u == pytest.approx(cf.u, abs=1e-6)
        assert sol.gamma == pytest.approx(cf.gamma, abs=2e-6)
        for name in ("p0", "p1", "p2"):
            assert getattr(sol, name) == pytest.approx(getattr(cf, name), abs=1e-6)

    def test_e2_consistency(self):
        assert abs(solve().residuals[1]) < 1e-10

    def test_multi_start_agreement(self):
        reference = solve()
        for start in multi_starts():
            sol = solve(start)
            assert sol.u == pytest.approx(reference.u, abs=1e-8)
            assert sol.p0 == pytest.approx(reference.p0, abs=1e-8)
            assert sol.p1 == pytest.approx(reference.p1, abs=1e-8)
            assert sol.p2 == pytest.approx(reference.p2, abs=1e-8)

    def test_report_dict(self):
        d = solve().to_dict()
        assert d["admissible"] is True
        assert len(d["residuals"]) == 5
        assert set(d) >= {"u", "gamma", "p0", "p1", "p2", "q0", "q1", "r0", "r1"}


class TestArratiaSteele:
    def test_values(self):
        sol = arratia_steele()
        assert sol.u == pytest.approx(math.sqrt(2) - 1, abs=1e-12)
        assert sol.gamma == pytest.approx(2 * (math.sqrt(2) - 1), abs=1e-12)
        assert sol.gamma == pytest.approx(0.828427, abs=5e-7)

    def test_e1_zero(self):
        assert abs(arratia_steele().residuals[0]) < 1e-15

    def test_flagged_above_lueker_bound(self):
        sol = arratia_steele()
        assert sol.gamma > LUEKER_UPPER
        assert sol.exceeds_lueker_upper_bound

    def test_linking_equations_fail(self):
        e = arratia_steele().residuals
        assert max(abs(v) for v in e[2:]) > 1e-3


class TestJacobianConsistency:
    def test_fd_matches_residual_differences(self):
        from cslcs.fit import _jacobian_fd, _newton_system

        x = np.array([0.41, 0.46, 0.56, 0.53])
        jac = _jacobian_fd(x)
        for h in (1e-5, 1e-6):
            for j in range(4):
                xp = x.copy()
                xp[j] += h
                approx = (_newton_system(xp) - _newton_system(x)) / h
                assert np.abs(approx - jac[:, j]).max() < 200 * h
