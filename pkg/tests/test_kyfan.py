import math
import random

import pytest

from meanineq import catalog
from meanineq.kyfan import (KYFAN_IDS, KyFanSample, all_slacks, bridge_slacks,
                            classic_slacks, complement_ratio_probe,
                            compute_stats, refinement_slacks)
from meanineq.ratio import OrderedQuad, ratio_value
from meanineq.report import EQUALITY, HOLDS, VIOLATED, HypothesisViolation
from meanineq.rng import SampleStream, sample_kyfan_values


def stats_of(values):
    return compute_stats(KyFanSample(values))


class TestSampleAndStats:
    def test_domain_rejection(self):
        for bad in ([0.0, 0.1], [0.6], [-0.1], [float("nan")], []):
            with pytest.raises(ValueError):
                KyFanSample(bad)
        KyFanSample([0.5])     # right endpoint included

    def test_worked_stats(self):
        s = stats_of([0.1, 0.2])
        assert s.a == pytest.approx(0.15, abs=1e-16)
        assert s.g == pytest.approx(math.sqrt(0.02), rel=1e-15)
        assert s.a_prime == pytest.approx(0.85, abs=1e-15)
        assert s.g_prime == pytest.approx(math.sqrt(0.72), rel=1e-15)

    def test_single_and_constant(self):
        s = stats_of([0.3])
        assert s.a == s.g == 0.3 and s.a_prime == s.g_prime == 0.7
        s = stats_of([0.5, 0.5])
        assert s.a == s.g == s.a_prime == s.g_prime == 0.5
        assert s.all_equal

    def test_complement_sum(self):
        rng = random.Random(7)
        for _ in range(200):
            n = rng.randint(1, 50)
            s = stats_of([rng.uniform(1e-6, 0.5) for _ in range(n)])
            assert abs(s.a + s.a_prime - 1.0) <= 2 * 2.0 ** -52

    def test_invariant_ordering(self):
        rng = random.Random(8)
        for _ in range(200):
            n = rng.randint(2, 30)
            s = stats_of([rng.uniform(1e-6, 0.5) for _ in range(n)])
            assert 0 < s.g <= s.a <= 0.5 <= s.a_prime <= 1.0
            assert s.g_prime <= s.a_prime
            if not s.all_equal:
                # ordering used by the refinement chains
                assert s.a_prime > s.g_prime > s.a > s.g > 0

    def test_permutation_invariance(self):
        vals = [0.1, 0.25, 0.4, 0.32, 0.07]
        s1 = stats_of(vals)
        s2 = stats_of(list(reversed(vals)))
        assert (s1.a, s1.g, s1.a_prime, s1.g_prime) == (s2.a, s2.g, s2.a_prime, s2.g_prime)
        r1 = all_slacks(s1)
        r2 = all_slacks(s2)
        for id in r1:
            assert r1[id].slacks == r2[id].slacks


class TestClassicSlacks:
    def test_all_equal_collapse(self):
        reports = classic_slacks(stats_of([0.37, 0.37, 0.37]))
        for rep in reports.values():
            assert rep.slacks == (0.0,) * len(rep.slacks)
            assert rep.verdict == EQUALITY

    def test_two_element_power_identity(self):
        # (A^2 - G^2) equals ((x1-x2)/2)^2 on both sides: slack is pure roundoff
        rng = random.Random(9)
        for _ in range(300):
            x1, x2 = rng.uniform(1e-6, 0.5), rng.uniform(1e-6, 0.5)
            rep = classic_slacks(stats_of([x1, x2]))["EQ20"]
            assert abs(rep.slacks[0]) <= 1e-15
            assert rep.verdict == EQUALITY

    def test_worked_pair(self):
        reports = classic_slacks(stats_of([0.1, 0.2]))
        s = stats_of([0.1, 0.2])
        expect18 = (math.log(s.a / s.g)) - (math.log(s.a_prime / s.g_prime))
        assert reports["EQ18"].slacks[0] == pytest.approx(expect18, rel=1e-12)
        assert reports["EQ18"].slacks[0] > 0
        assert reports["EQ19"].slacks[0] > 0

    def test_strictness_off_manifold(self):
        rng = random.Random(10)
        for _ in range(200):
            n = rng.randint(3, 12)
            vals = [rng.uniform(1e-3, 0.5) for _ in range(n)]
            if max(vals) - min(vals) < 1e-3:
                continue
            for id, rep in classic_slacks(stats_of(vals)).items():
                if id == "EQ20" and n <= 2:
                    continue
                assert rep.verdict in (HOLDS, EQUALITY)
                assert min(rep.slacks) > -1e-12


class TestRefinements:
    def test_eq21_worked(self):
        s = stats_of([0.1, 0.2])
        rep = refinement_slacks(s)["EQ21"]
        expect = ((s.a + s.g) * math.log(s.a / s.g)
                  - (s.a_prime + s.g_prime) * math.log(s.a_prime / s.g_prime))
        assert rep.slacks[0] == pytest.approx(expect, rel=1e-10)
        assert rep.slacks[0] > 0

    def test_eq22_equality_on_constant(self):
        reports = refinement_slacks(stats_of([0.25, 0.25]))
        assert set(reports) == {"EQ21", "EQ22"}
        for rep in reports.values():
            assert rep.verdict == EQUALITY

    def test_strict_ids_reject_constant(self):
        s = stats_of([0.25, 0.25])
        with pytest.raises(HypothesisViolation):
            complement_ratio_probe(s, 1.0)

    def test_all_hold_on_samples(self):
        stream = SampleStream(41, "test/kyfan")
        nstream = SampleStream(41, "test/kyfan-n")
        for i in range(400):
            n = 2 + nstream.words(i, 1)[0] % 19
            stats = compute_stats(KyFanSample(sample_kyfan_values(stream, i, n)))
            for id, rep in all_slacks(stats).items():
                assert rep.verdict in (HOLDS, EQUALITY), (id, rep.slacks)
        assert set(all_slacks(stats)) == set(KYFAN_IDS)

    def test_eq25_and_eq26_worked(self):
        s = stats_of([0.1, 0.2, 0.3])
        reps = refinement_slacks(s)
        # EQ25: brute-force both sides
        n = 3
        lhs = (s.a_prime ** n - s.g_prime ** n) / (s.a ** n - s.g ** n)
        rhs = (s.a_prime ** n * s.g_prime ** n * math.log(s.a_prime / s.g_prime)) / (
            s.a ** n * s.g ** n * math.log(s.a / s.g))
        assert reps["EQ25"].slacks[0] == pytest.approx(math.log(rhs) - math.log(lhs),
                                                       rel=1e-9)
        assert reps["EQ25"].slacks[0] > 0
        # EQ26: recompute every member directly and check the ordering
        r, rp = math.log(s.a / s.g), math.log(s.a_prime / s.g_prime)
        lnsq = 0.5 * math.log(s.a_prime * s.g_prime / (s.a * s.g))
        from meanineq.means import identric_mean
        ln_ir = math.log(identric_mean(s.a_prime, s.g_prime)
                         / identric_mean(s.a, s.g))
        m0a = lhs * (s.a * s.g / (s.a_prime * s.g_prime)) ** (n / 2.0)
        m0b = ((s.a_prime - s.g_prime) / (s.a - s.g)) * math.sqrt(
            s.a * s.g / (s.a_prime * s.g_prime))
        mid = rp / r
        m2 = ((s.a_prime - s.g_prime) / (s.a - s.g)) * ln_ir / lnsq
        m3a = (s.a_prime - s.g_prime) / (s.a - s.g)
        m3b = ln_ir / lnsq
        assert max(m0a, m0b) < mid < m2 < min(m3a, m3b) < 1.0
        assert all(x > 0 for x in reps["EQ26"].slacks)


class TestProbeAndBridge:
    def test_probe_worked_values(self):
        s = stats_of([0.1, 0.2])
        assert complement_ratio_probe(s, 0.0) == pytest.approx(
            math.log(s.a_prime / s.g_prime) / math.log(s.a / s.g), rel=1e-10)
        assert complement_ratio_probe(s, 0.0) == pytest.approx(0.029428, abs=1e-6)
        assert complement_ratio_probe(s, 1.0) == pytest.approx(0.17158, abs=1e-5)
        assert complement_ratio_probe(s, -2.0) < complement_ratio_probe(s, 0.0)

    def test_probe_delegates_to_ratio(self):
        s = stats_of([0.11, 0.17, 0.31])
        quad = OrderedQuad(s.a_prime, s.g_prime, s.a, s.g)
        for x in (-3.0, -1.0, 0.0, 0.4, 2.0):
            assert complement_ratio_probe(s, x) == ratio_value(quad, x)

    def test_probe_minus_n_below_zero_value(self):
        rng = random.Random(11)
        for _ in range(100):
            n = rng.randint(2, 15)
            vals = [rng.uniform(1e-3, 0.5) for _ in range(n)]
            s = stats_of(vals)
            if s.all_equal:
                continue
            assert complement_ratio_probe(s, -float(n)) < complement_ratio_probe(s, 0.0)

    def test_bridge_agreement(self):
        stream = SampleStream(43, "test/bridge")
        nstream = SampleStream(43, "test/bridge-n")
        for i in range(300):
            n = 2 + nstream.words(i, 1)[0] % 19
            stats = compute_stats(KyFanSample(sample_kyfan_values(stream, i, n)))
            for name, (kv, cv) in bridge_slacks(stats).items():
                assert abs(kv - cv) <= 1e-12 * max(1.0, abs(kv)), (name, kv, cv)

    def test_contraction_to_mean_collapses_slacks(self):
        base = [0.1, 0.2, 0.4]
        mean = sum(base) / 3.0
        prev = None
        for t in (1.0, 0.5, 0.25, 0.125, 0.0625):
            vals = [(1 - t) * mean + t * x for x in base]
            reps = all_slacks(stats_of(vals))
            worst = max(max(rep.slacks) for rep in reps.values())
            margin18 = reps["EQ18"].slacks[0]
            if prev is not None:
                assert margin18 < prev
            prev = margin18
        assert prev < 1e-3
