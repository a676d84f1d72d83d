import random

import pytest
from hypothesis import given, strategies as st

from cycdec import (
    EdgeMultiset,
    GraphSpec,
    LengthSeq,
    MalformedCycleError,
    NotEvenError,
    OverfullError,
    Packing,
    canonicalize_cycle,
    classify_leave,
    compute_leave,
    left as L,
    right as R,
)
from conftest import packing_with_leave, random_packing


def C(*vs):
    return canonicalize_cycle(vs)


class TestCanonicalize:
    def test_four_cycle_rotated_reflected(self):
        assert C(R(0), L(0), R(1), L(1)) == C(L(0), R(0), L(1), R(1))

    def test_two_cycle(self):
        assert C(R(0), L(0)).vertices == (L(0), R(0))

    def test_repeated_vertex_rejected(self):
        with pytest.raises(MalformedCycleError):
            C(L(0), R(0), L(0), R(1))

    def test_odd_length_rejected(self):
        with pytest.raises(MalformedCycleError):
            canonicalize_cycle([L(0), R(0), L(1)])

    def test_non_alternating_rejected(self):
        with pytest.raises(MalformedCycleError):
            canonicalize_cycle([L(0), L(1), R(0), R(1)])

    def test_idempotent(self):
        c = C(L(2), R(1), L(0), R(5))
        assert canonicalize_cycle(c.vertices) == c

    @given(st.data())
    def test_rotation_reflection_invariance(self, data):
        n = data.draw(st.integers(min_value=1, max_value=5))
        lefts = data.draw(
            st.lists(
                st.integers(0, 9), min_size=n, max_size=n, unique=True
            )
        )
        rights = data.draw(
            st.lists(
                st.integers(0, 9), min_size=n, max_size=n, unique=True
            )
        )
        seq = []
        for i in range(n):
            seq.extend([L(lefts[i]), R(rights[i])])
        base = canonicalize_cycle(seq)
        rot = data.draw(st.integers(0, 2 * n - 1))
        rotated = seq[rot:] + seq[:rot]
        if data.draw(st.booleans()):
            rotated = rotated[::-1]
        assert canonicalize_cycle(rotated) == base


class TestComputeLeave:
    def test_k22_single_four_cycle(self):
        spec = GraphSpec(1, 2, 2)
        lv = compute_leave(spec, [C(L(0), R(0), L(1), R(1))])
        assert lv.size == 0

    def test_empty_cycles(self):
        spec = GraphSpec(2, 2, 2)
        lv = compute_leave(spec, [])
        assert all(lv.mult(i, j) == 2 for i in range(2) for j in range(2))

    def test_overfull(self):
        spec = GraphSpec(1, 2, 2)
        with pytest.raises(OverfullError):
            compute_leave(spec, [C(L(0), R(0), L(1), R(1)), C(L(0), R(0))])

    def test_roundtrip_on_random_packings(self):
        rng = random.Random(11)
        for _ in range(30):
            spec = GraphSpec(
                rng.randint(1, 2), rng.randint(2, 4), rng.randint(2, 4)
            )
            p = random_packing(rng, spec)
            assert compute_leave(spec, p.cycles) == p.leave


class TestClassifyLeave:
    def test_two_chain_with_doubled_pair(self):
        lv = EdgeMultiset({(0, 0): 2, (1, 0): 1, (1, 1): 1, (2, 1): 1, (2, 0): 1})
        st_ = classify_leave(lv)
        assert len(st_.components) == 1
        comp = st_.components[0]
        assert comp.kind == "chain"
        assert comp.cycle_lengths() == (2, 4)
        assert comp.links == (R(0),)

    def test_two_ring_sharing_two_lefts(self):
        lv = EdgeMultiset(
            {(0, 0): 1, (1, 0): 1, (1, 1): 1, (0, 1): 1,
             (0, 2): 1, (1, 2): 1, (1, 3): 1, (0, 3): 1}
        )
        st_ = classify_leave(lv)
        comp = st_.components[0]
        assert comp.kind == "ring"
        assert set(comp.links) == {L(0), L(1)}
        assert comp.cycle_lengths() == (4, 4)

    def test_empty_leave(self):
        assert classify_leave(EdgeMultiset()) .components == ()

    def test_odd_degree_rejected(self):
        with pytest.raises(NotEvenError):
            classify_leave(EdgeMultiset({(0, 0): 1}))

    def test_degree_six_is_other(self):
        lv = EdgeMultiset({(0, 0): 2, (0, 1): 2, (0, 2): 2})
        assert classify_leave(lv).components[0].kind == "other"

    def test_long_chain(self):
        # doubled pair, then two 4-cycles in a row
        lv = EdgeMultiset(
            {(0, 0): 2, (1, 0): 1, (1, 1): 1, (2, 1): 1, (2, 0): 1,
             (2, 2): 1, (3, 2): 1, (3, 3): 1, (2, 3): 1}
        )
        comp = classify_leave(lv).components[0]
        assert comp.kind == "chain"
        assert comp.cycle_lengths() == (2, 4, 4)
        assert comp.links == (R(0), L(2))

    def test_three_ring(self):
        # three 4-cycles pairwise linked at L0, L1, L2 cyclically
        lv = EdgeMultiset(
            {(0, 0): 1, (1, 0): 1, (1, 1): 1, (0, 1): 1,
             (1, 2): 1, (2, 2): 1, (2, 3): 1, (1, 3): 1,
             (2, 4): 1, (0, 4): 1, (0, 5): 1, (2, 5): 1}
        )
        comp = classify_leave(lv).components[0]
        assert comp.kind == "ring"
        assert sorted(comp.cycle_lengths()) == [4, 4, 4]
        assert set(comp.links) == {L(0), L(1), L(2)}

    def test_degree_table_sums_to_twice_size(self):
        rng = random.Random(5)
        for _ in range(20):
            spec = GraphSpec(2, rng.randint(2, 4), rng.randint(2, 4))
            p = random_packing(rng, spec)
            st_ = classify_leave(p.leave)
            assert sum(st_.degrees.values()) == 2 * p.leave.size

    def test_relabel_invariance(self):
        rng = random.Random(23)
        for _ in range(25):
            spec = GraphSpec(rng.randint(1, 2), 4, 5)
            p = random_packing(rng, spec)
            st_ = classify_leave(p.leave)
            per_l = rng.sample(range(4), 4)
            per_r = rng.sample(range(5), 5)
            relab = {}
            for (i, j), c in p.leave.items():
                relab[(per_l[i], per_r[j])] = c
            st2 = classify_leave(EdgeMultiset(relab))
            assert st_.kinds() == st2.kinds()
            assert sorted(c.size for c in st_.components) == sorted(
                c.size for c in st2.components
            )


class TestLengthSeq:
    def test_of_sorts(self):
        assert LengthSeq.of([6, 2, 4]).lengths == (2, 4, 6)

    def test_rejects_odd(self):
        with pytest.raises(ValueError):
            LengthSeq.of([3, 4])

    def test_nu_and_total(self):
        M = LengthSeq.of([2, 2, 4, 6])
        assert M.nu(2) == 2 and M.nu(8) == 0 and M.total == 14


class TestPacking:
    def test_leave_respected_by_fixture(self):
        spec = GraphSpec(2, 3, 3)
        p = packing_with_leave(spec, {(0, 0): 2})
        assert p.leave.mult(0, 0) == 2
        assert compute_leave(spec, p.cycles) == p.leave

    def test_from_cycles_decomposition_flag(self):
        spec = GraphSpec(1, 2, 2)
        p = Packing.from_cycles(spec, [C(L(0), R(0), L(1), R(1))])
        assert p.is_decomposition()
