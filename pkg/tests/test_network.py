from pathlib import Path

import numpy as np
import pytest

from cslcs import (
    CellType,
    InputError,
    Seed,
    SiteSequence,
    bottom_output_particles,
    cell_type,
    crossing_report,
    dualize,
    evolve_step_ic,
    independence_test,
    lcs_dp,
    random_string,
    step_initial_condition,
)

DATA = Path(__file__).parent / "data"


class TestCellType:
    def test_match(self):
        assert cell_type(0, 0) is CellType.MATCH
        assert cell_type(1, 1) is CellType.MATCH

    def test_mismatch(self):
        assert cell_type(1, 0) is CellType.MISMATCH
        assert cell_type(0, 1) is CellType.MISMATCH

    def test_2x2_parity(self):
        for bits in range(16):
            a = [(bits >> 0) & 1, (bits >> 1) & 1]
            b = [(bits >> 2) & 1, (bits >> 3) & 1]
            total = sum(int(cell_type(ai, bj)) for ai in a for bj in b)
            assert total % 2 == 0


class TestSiteSequence:
    def test_counts(self):
        s = SiteSequence(np.array([1, 0, 1, 1], dtype=np.uint8), origin=-2)
        assert s.particle_count() == 3
        assert s.hole_count() == 1
        assert s.particles_at_or_above(0) == 2
        assert s.particles_at_or_above(-2) == 3

    def test_value_at(self):
        s = SiteSequence(np.array([1, 0], dtype=np.uint8), origin=-1)
        assert s.value_at(-1) == 1
        assert s.value_at(0) == 0
        with pytest.raises(InputError):
            s.value_at(1)

    def test_ascii(self):
        s = step_initial_condition(-2, 4)
        assert s.to_ascii() == "**.."


class TestEvolution:
    def test_worked_example_crossing(self):
        state = evolve_step_ic("1000", "0100", 4)
        assert state.particles_at_or_above(0) == 1

    def test_golden_trace(self):
        trace = []
        evolve_step_ic("1000", "0100", 4, trace=trace)
        expected = (DATA / "trace_4x4.txt").read_text().splitlines()
        assert trace == expected

    def test_conservation_every_halfstep(self):
        a = random_string(16, Seed(3, 0))
        b = random_string(16, Seed(3, 1))
        trace = []
        evolve_step_ic(a, b, 8, trace=trace)
        counts = {line.count("*") for line in trace}
        assert len(counts) == 1

    def test_requires_long_enough_strings(self):
        with pytest.raises(InputError):
            evolve_step_ic("101", "010", 4)

    def test_all_mismatch_sorts(self):
        # a all ones vs b all zeros: every cell sorts, the step profile
        # marches but the particle count never changes
        state = evolve_step_ic("1" * 8, "0" * 8, 8)
        assert state.particle_count() == step_initial_condition(
            state.origin, state.values.size
        ).particle_count()


class TestCrossingReport:
    def test_worked_example(self):
        a = random_string(8, Seed(0, 0))
        b = random_string(8, Seed(0, 1))
        a = type(a)(np.concatenate([[1, 0, 0, 0], a.bits[4:]]))
        b = type(b)(np.concatenate([[0, 1, 0, 0], b.bits[4:]]))
        rep = crossing_report(a, b, 4, 4)
        assert rep.l == lcs_dp(a[:4], b[:4]).length
        assert rep.exact

    def test_k_zero(self):
        a = random_string(8, Seed(1, 0))
        b = random_string(8, Seed(1, 1))
        rep = crossing_report(a, b, 4, 0)
        assert rep.l == 0
        assert rep.particles_at_or_above == 0

    def test_exactness_random(self):
        for t in range(25):
            n = 4 + t % 8
            a = random_string(2 * n, Seed(11, 2 * t))
            b = random_string(2 * n, Seed(11, 2 * t + 1))
            for k in range(2 * n + 1):
                assert crossing_report(a, b, n, k).exact

    def test_out_of_range_k(self):
        a = random_string(8, Seed(2, 0))
        with pytest.raises(InputError):
            crossing_report(a, a, 4, 9)


class TestBottomOutput:
    def test_worked_example(self):
        assert bottom_output_particles("1000", "0100") == 3

    def test_identical_strings(self):
        assert bottom_output_particles("0110", "0110") == 4

    def test_empty(self):
        assert bottom_output_particles("", "101") == 0

    def test_equals_dp(self):
        for t in range(40):
            a = random_string(5 + t % 20, Seed(13, 2 * t))
            b = random_string(3 + (t * 7) % 25, Seed(13, 2 * t + 1))
            assert bottom_output_particles(a, b) == lcs_dp(a, b).length


class TestDuality:
    def test_involution(self):
        s = SiteSequence(np.array([1, 0, 0, 1, 1], dtype=np.uint8), origin=-3)
        assert dualize(dualize(s)) == s

    def test_step_ic_self_dual(self):
        s = step_initial_condition(-6, 12)
        assert dualize(s) == s

    def test_particle_hole_exchange(self):
        s = SiteSequence(np.array([1, 1, 0], dtype=np.uint8), origin=-1)
        assert dualize(s).particle_count() == s.hole_count()

    def test_commutes_with_evolution(self):
        for t in range(10):
            a = random_string(12, Seed(21, 2 * t))
            b = random_string(12, Seed(21, 2 * t + 1))
            assert dualize(evolve_step_ic(a, b, 6)) == evolve_step_ic(b, a, 6)


class TestIndependence:
    def test_trial_floor(self):
        with pytest.raises(InputError):
            independence_test(100)

    def test_report(self):
        report = independence_test(2 * 10**4, seed=5)
        assert report["parity_violations"] == 0
        assert report["quad_determined_fraction"] == 1.0
        assert report["quad_dependence_detected"]
        for stats in report["triples"].values():
            assert stats["p_value"] > 1e-3
            assert sum(stats["counts"]) == 2 * 10**4
