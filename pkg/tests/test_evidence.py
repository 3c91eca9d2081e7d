import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dsclust.evidence import (
    CONFLICT_CEILING,
    MAX_FRAME_SIZE,
    Frame,
    FocalSet,
    FrameMismatchError,
    MassFunction,
    SimpleSupport,
    clamp_conflict,
    cluster_conflict,
    combine_conjunctive,
    conflict_weight,
    intersect,
    pairwise_conflict,
)
from conftest import enumerate_combination, enumerated_conflict, evidence_lists


def sup(frame, members, mass):
    return SimpleSupport(FocalSet.from_members(frame, members), mass)


class TestFrame:
    def test_full_bits(self):
        assert Frame(1).full_bits == 0b1
        assert Frame(4).full_bits == 0b1111

    def test_nonempty_subsets_counts_and_order(self):
        subsets = list(Frame(3).nonempty_subsets())
        assert subsets == list(range(1, 8))

    def test_bits_members_roundtrip(self):
        f = Frame(5)
        for bits in f.nonempty_subsets():
            assert f.bits_of(f.members_of(bits)) == bits

    def test_rejects_bad_sizes(self):
        with pytest.raises(ValueError):
            Frame(0)
        with pytest.raises(ValueError):
            Frame(MAX_FRAME_SIZE + 1)
        with pytest.raises(TypeError):
            Frame(2.0)

    def test_rejects_out_of_range_member(self):
        with pytest.raises(ValueError):
            Frame(3).bits_of([4])


class TestFocalSet:
    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            FocalSet(Frame(3), 0)

    def test_rejects_bits_outside_frame(self):
        with pytest.raises(ValueError):
            FocalSet(Frame(2), 0b100)

    def test_members(self):
        fs = FocalSet.from_members(Frame(4), [4, 2])
        assert fs.bits == 0b1010
        assert fs.members == (2, 4)


class TestSimpleSupport:
    @pytest.mark.parametrize("mass", [0.0, 1.0, -0.1, 1.5])
    def test_rejects_mass_outside_open_interval(self, mass):
        with pytest.raises(ValueError):
            sup(Frame(2), [1], mass)

    def test_frame_property(self):
        f = Frame(3)
        assert sup(f, [2], 0.5).frame == f


class TestPairwiseConflict:
    def test_disjoint_pair_multiplies_masses(self):
        f = Frame(3)
        assert pairwise_conflict(sup(f, [1], 0.4), sup(f, [2, 3], 0.5)) == 0.2

    def test_overlapping_pair_has_no_conflict(self):
        f = Frame(3)
        assert pairwise_conflict(sup(f, [1, 2], 0.9), sup(f, [2, 3], 0.9)) == 0.0

    def test_frame_mismatch_raises(self):
        with pytest.raises(FrameMismatchError):
            pairwise_conflict(sup(Frame(2), [1], 0.5), sup(Frame(3), [1], 0.5))

    def test_intersect(self):
        f = Frame(3)
        assert intersect(FocalSet(f, 0b011), FocalSet(f, 0b110)) == 0b010


class TestConflictWeight:
    def test_zero_iff_zero(self):
        assert conflict_weight(0.0) == 0.0
        assert conflict_weight(1e-300) > 0.0

    def test_matches_log(self):
        assert conflict_weight(0.5) == pytest.approx(math.log(2.0), rel=1e-15)

    def test_saturates_near_one(self):
        assert conflict_weight(1.0 - 1e-13) == conflict_weight(CONFLICT_CEILING)
        assert math.isfinite(conflict_weight(CONFLICT_CEILING))

    def test_rejects_one_and_outside(self):
        for c in (1.0, -0.1, 1.1):
            with pytest.raises(ValueError):
                conflict_weight(c)

    def test_clamp_lets_certain_conflict_through(self):
        assert clamp_conflict(1.0) == CONFLICT_CEILING
        assert clamp_conflict(0.3) == 0.3
        with pytest.raises(ValueError):
            clamp_conflict(1.0 + 1e-9)

    @given(st.floats(0.0, 0.999))
    def test_monotone(self, c):
        assert conflict_weight(c + 1e-6) > conflict_weight(c)


class TestMassFunction:
    def test_vacuous(self):
        m = MassFunction.vacuous(Frame(3))
        assert m.mass(0b111) == 1.0
        assert m.conflict == 0.0

    def test_rejects_bad_total(self):
        with pytest.raises(ValueError):
            MassFunction(Frame(2), {0b01: 0.5, 0b10: 0.6})

    def test_rejects_negative_mass(self):
        with pytest.raises(ValueError):
            MassFunction(Frame(2), {0b01: -0.5, 0b10: 1.5})

    def test_rejects_bits_outside_frame(self):
        with pytest.raises(ValueError):
            MassFunction(Frame(2), {0b100: 1.0})

    def test_empty_set_entry_is_conflict(self):
        m = MassFunction(Frame(2), {0: 0.25, 0b11: 0.75})
        assert m.conflict == 0.25


class TestCombination:
    def test_two_disjoint_singletons(self):
        # Worked by hand: focal products land on the four combinations.
        f = Frame(2)
        acc = MassFunction.vacuous(f)
        acc = combine_conjunctive(acc, sup(f, [1], 0.4))
        acc = combine_conjunctive(acc, sup(f, [2], 0.5))
        assert acc.conflict == pytest.approx(0.2, abs=1e-15)
        assert acc.mass(0b01) == pytest.approx(0.2, abs=1e-15)
        assert acc.mass(0b10) == pytest.approx(0.3, abs=1e-15)
        assert acc.mass(0b11) == pytest.approx(0.3, abs=1e-15)

    def test_overlapping_evidence_never_conflicts(self):
        f = Frame(3)
        acc = MassFunction.vacuous(f)
        for members, mass in ([1, 2], 0.9), ([2, 3], 0.8), ([2], 0.99):
            acc = combine_conjunctive(acc, sup(f, members, mass))
        assert acc.conflict == 0.0
        assert acc.total() == pytest.approx(1.0, abs=1e-12)

    def test_frame_mismatch_raises(self):
        acc = MassFunction.vacuous(Frame(2))
        with pytest.raises(FrameMismatchError):
            combine_conjunctive(acc, sup(Frame(3), [1], 0.5))

    @settings(max_examples=200)
    @given(evidence_lists(min_len=2, max_len=6))
    def test_fold_matches_enumeration(self, evidence):
        # Same quantity, two routes: incremental fold vs 2^k expansion.
        enumerated = enumerate_combination(evidence)
        acc = MassFunction.vacuous(evidence[0].frame)
        for e in evidence:
            acc = combine_conjunctive(acc, e)
        for bits, mass in enumerated.items():
            if mass > 1e-12:
                assert acc.mass(bits) == pytest.approx(mass, abs=1e-12)
        assert acc.total() == pytest.approx(1.0, abs=1e-9)

    @settings(max_examples=200)
    @given(evidence_lists(min_len=0, max_len=6))
    def test_cluster_conflict_matches_enumeration(self, evidence):
        assert cluster_conflict(evidence) == pytest.approx(
            enumerated_conflict(evidence), abs=1e-12)

    @settings(max_examples=150)
    @given(evidence_lists(min_len=2, max_len=5), st.data())
    def test_conflict_nondecreasing_under_growth(self, evidence, data):
        partial = cluster_conflict(evidence[:-1])
        assert cluster_conflict(evidence) >= partial - 1e-15

    def test_singleton_and_empty_cluster(self):
        f = Frame(2)
        assert cluster_conflict([]) == 0.0
        assert cluster_conflict([sup(f, [1], 0.999)]) == 0.0

    def test_mass_floor_keeps_totals_honest(self):
        # Many strong overlapping pieces drive side entries under the floor;
        # the fold sweeps them into the frame entry rather than dropping them.
        f = Frame(10)
        acc = MassFunction.vacuous(f)
        for i in range(40):
            members = [1 + (i % 9), 10]
            acc = combine_conjunctive(acc, sup(f, members, 0.999999))
        assert acc.total() == pytest.approx(1.0, abs=1e-9)
        assert acc.conflict == 0.0
