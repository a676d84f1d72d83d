import pytest

from cycdec import (
    EdgeMultiset,
    GraphSpec,
    LengthSeq,
    check_necessary,
    decompose_multiset,
    decomposable_lengths,
    even_partitions,
    oracle_decide,
    oracle_enumerate,
    verify_decomposition,
)


class TestDecide:
    def test_k22_single_four_cycle(self):
        res = oracle_decide(GraphSpec(1, 2, 2), LengthSeq.of([4]))
        assert res.status == "exists"
        assert verify_decomposition(
            GraphSpec(1, 2, 2), res.certificate, LengthSeq.of([4])
        )

    def test_3k22_all_doubled_pairs_refuted(self):
        res = oracle_decide(GraphSpec(3, 2, 2), LengthSeq.of([2] * 6))
        assert res.status == "not-exists"

    def test_2k23_mixed(self):
        spec = GraphSpec(2, 2, 3)
        M = LengthSeq.of([2, 2, 4, 4])
        res = oracle_decide(spec, M)
        assert res.status == "exists"
        assert verify_decomposition(spec, res.certificate, M)

    def test_sum_mismatch_is_not_exists(self):
        res = oracle_decide(GraphSpec(1, 2, 2), LengthSeq.of([2]))
        assert res.status == "not-exists"

    def test_timeout_is_a_value(self):
        res = oracle_decide(GraphSpec(2, 5, 5), LengthSeq.of([2] * 25), budget=0.0)
        assert res.status == "timeout"
        assert res.certificate is None

    def test_certificates_always_verify(self):
        for lam, v, u in [(1, 2, 2), (2, 2, 2), (2, 2, 3), (1, 3, 3), (2, 3, 3)]:
            spec = GraphSpec(lam, v, u)
            for parts in even_partitions(spec.edge_count):
                M = LengthSeq(parts)
                res = oracle_decide(spec, M)
                if res.status == "exists":
                    assert verify_decomposition(spec, res.certificate, M), parts


class TestEnumerate:
    def test_2k22_census(self):
        found = [M.lengths for M in decomposable_lengths(GraphSpec(2, 2, 2))]
        assert found == [(2, 2, 2, 2), (4, 4)]

    def test_1k22(self):
        assert [M.lengths for M in decomposable_lengths(GraphSpec(1, 2, 2))] == [(4,)]

    def test_1k23_odd_degrees(self):
        assert decomposable_lengths(GraphSpec(1, 2, 3)) == []

    def test_enumerate_reports_every_candidate(self):
        rows = oracle_enumerate(GraphSpec(2, 2, 2))
        assert [M.lengths for M, _ in rows] == list(even_partitions(8))

    def test_exists_implies_necessary(self):
        for lam, v, u in [(1, 2, 2), (2, 2, 2), (3, 2, 2), (2, 2, 3), (1, 3, 3)]:
            spec = GraphSpec(lam, v, u)
            for M, res in oracle_enumerate(spec):
                if res.status == "exists":
                    assert check_necessary(spec, M)


class TestDecomposeMultiset:
    def test_partitions_an_explicit_leave(self):
        lv = EdgeMultiset({(0, 0): 2, (1, 0): 1, (1, 1): 1, (2, 1): 1, (2, 0): 1})
        got = decompose_multiset(3, 3, lv, [2, 4])
        assert got is not None
        assert sorted(len(c) for c in got) == [2, 4]

    def test_infeasible_split_returns_none(self):
        lv = EdgeMultiset(
            {(0, 0): 1, (1, 0): 1, (1, 1): 1, (2, 1): 1, (2, 2): 1, (0, 2): 1}
        )
        assert decompose_multiset(3, 3, lv, [2, 4]) is None


def test_even_partitions_exact():
    assert list(even_partitions(8)) == [
        (2, 2, 2, 2),
        (2, 2, 4),
        (2, 6),
        (4, 4),
        (8,),
    ]
    assert list(even_partitions(7)) == []
    assert list(even_partitions(0)) == [()]
