"""Enumeration oracle and injection checks for the splitting maps."""

import pytest

from regover.combinatorics import (
    Constraint,
    Overpartition,
    OverpartitionError,
    UnsupportedCaseError,
    count_overpartitions,
    enumerate_overpartitions,
    f1_map,
    f2_map,
    f3_map,
    verify_lemma,
)
from regover.qseries import pk

KS = list(range(2, 10))


def op(*parts):
    return Overpartition(tuple(parts))


class TestOverpartition:
    def test_canonical_order(self):
        o = op((1, False), (3, False), (3, True), (1, True))
        assert o.parts == ((3, True), (3, False), (1, True), (1, False))

    def test_weight(self):
        assert op((4, True), (1, False)).weight == 5
        assert op().weight == 0

    def test_duplicate_overline_rejected(self):
        with pytest.raises(OverpartitionError):
            op((2, True), (2, True))

    def test_nonpositive_size_rejected(self):
        with pytest.raises(OverpartitionError):
            op((0, False))


class TestEnumeration:
    def test_weight_zero(self):
        assert enumerate_overpartitions(0) == (op(),)

    def test_weight_one(self):
        assert set(enumerate_overpartitions(1)) == {op((1, False)), op((1, True))}

    def test_no_duplicates_and_constraint(self):
        c = Constraint(k_regular=3, forbid_twos=True)
        ops = enumerate_overpartitions(9, c)
        assert len(set(ops)) == len(ops)
        for o in ops:
            assert c.satisfied_by(o)
            assert o.weight == 9

    def test_forbid_allows_overlined_copy(self):
        c = Constraint(forbid_twos=True)
        ops = enumerate_overpartitions(2, c)
        assert op((2, True)) in ops
        assert op((2, False)) not in ops

    @pytest.mark.parametrize("n", range(0, 13))
    def test_count_matches_enumeration(self, n):
        for c in (
            Constraint(),
            Constraint(k_regular=2),
            Constraint(k_regular=4, forbid_ones=True),
            Constraint(forbid_twos=True),
            Constraint(k_regular=3, forbid_ones=True, forbid_twos=True),
        ):
            assert count_overpartitions(n, c) == len(enumerate_overpartitions(n, c))

    @pytest.mark.parametrize("k", KS)
    def test_counts_agree_with_series(self, k):
        c = Constraint(k_regular=k)
        for n in range(26):
            assert count_overpartitions(n, c) == pk(k, n)

    @pytest.mark.parametrize("k", [2, 3, 5])
    def test_removal_identities(self, k):
        # these two decompositions drive the inductive arguments and pin
        # down the "no j's = no plain j's" convention
        free = Constraint(k_regular=k)
        no2 = Constraint(k_regular=k, forbid_twos=True)
        no12 = Constraint(k_regular=k, forbid_ones=True, forbid_twos=True)
        for n in range(2, 20):
            if k > 2:  # for k=2 no part equals 2 at all, so nothing to remove
                assert count_overpartitions(n, free) == count_overpartitions(
                    n, no2
                ) + count_overpartitions(n - 2, free)
            assert count_overpartitions(n, no2) == count_overpartitions(
                n, no12
            ) + count_overpartitions(n - 1, no2)


class TestF2:
    def test_single_one(self):
        pair = f2_map(op((1, False)), 2)
        assert pair.left == op()
        assert pair.right == op((1, False))

    def test_overlined_three(self):
        pair = f2_map(op((3, True)), 2)
        assert pair.left == op((1, True), (1, False))
        assert pair.right == op((1, True))

    def test_precondition_rejects_plain_two(self):
        with pytest.raises(OverpartitionError):
            f2_map(op((2, False), (1, False)), 3)

    def test_precondition_rejects_divisible_part(self):
        with pytest.raises(OverpartitionError):
            f2_map(op((3, False)), 3)

    @pytest.mark.parametrize("k", KS)
    def test_exhaustive_injective(self, k):
        for a in range(1, 21):
            rep = verify_lemma("2.2", k, a)
            assert rep.injective, rep.to_dict()
            assert rep.codomain_ok, rep.to_dict()
            # strict inequality is an equality at a=2 for every k except 3:
            # the codomain then has exactly two extra slots and both are hit
            expect = not (a == 2 and k != 3)
            assert rep.holds == expect, rep.to_dict()

    # small weights where no codomain element of the witness shape exists
    # (parity/regularity obstructions), verified by exhaustive enumeration
    NO_WITNESS = {2: {1, 2, 3, 5}, 3: {1, 2, 4}, 4: {1, 2, 5}}

    @pytest.mark.parametrize("k", KS)
    def test_witness_unattained(self, k):
        missing = self.NO_WITNESS.get(k, {1, 2})
        for a in range(1, 21):
            rep = verify_lemma("2.2", k, a)
            assert (rep.unattained_witness is not None) == (
                a not in missing
            ), rep.to_dict()


class TestF3:
    def test_two_trailing_ones(self):
        pair = f3_map(op((5, False), (1, False), (1, False)), 2)
        assert pair.left == op((5, False))
        assert pair.right == op((2, False))

    def test_s1_r1(self):
        pair = f3_map(op((1, True), (1, False), (3, False)), 2)
        assert pair.left == op((3, False))
        assert pair.right == op((2, True))

    def test_trailing_overlined_two(self):
        pair = f3_map(op((5, False), (2, True)), 3)
        assert pair.left == op((5, False))
        assert pair.right == op((1, False), (1, False))

    @pytest.mark.parametrize("k", KS)
    def test_exhaustive_injective(self, k):
        for a in range(1, 21):
            rep = verify_lemma("2.3", k, a)
            assert rep.injective, rep.to_dict()
            # for k=2 the split-off part 2 is itself divisible by k, so the
            # stated codomain cannot receive it; images stay distinct though
            assert rep.codomain_ok == (k != 2), rep.to_dict()
            expect = k != 2 or a >= 6
            assert rep.holds == expect, rep.to_dict()

    NO_WITNESS = {2: {1, 2, 4}, 3: {1, 3}, 4: {1, 4}}

    @pytest.mark.parametrize("k", KS)
    def test_witness_unattained(self, k):
        missing = self.NO_WITNESS.get(k, {1})
        for a in range(1, 21):
            rep = verify_lemma("2.3", k, a)
            assert (rep.unattained_witness is not None) == (
                a not in missing
            ), rep.to_dict()


class TestF1:
    def test_y_zero_plain_split(self):
        # (5,3) with k=7, a=5, b=3: i=2, x=3, y=0
        pair = f1_map(op((5, False), (3, False)), 7, 5, 3)
        assert pair.left == op((5, False))
        assert pair.right == op((3, False))

    def test_case5_overlined_example(self):
        # k=7, y=7, part >= k+2 and overlined -> left tail (4 overlined, 3)
        lam = op((9, True), (8, False))
        # b such that x = 2, y = 7 at i = 1: tail after = 8, x = b - 8
        pair = f1_map(lam, 7, 7, 10)
        assert (4, True) in pair.left.parts and (3, False) in pair.left.parts

    def test_small_k_unsupported(self):
        with pytest.raises(UnsupportedCaseError):
            f1_map(op((5, False)), 3, 2, 3)

    @pytest.mark.parametrize("k", [5, 6, 7, 8, 9])
    def test_exhaustive_injective(self, k):
        for total in range(2, 19):
            for b in range(1, total):
                a = total - b
                rep = verify_lemma("2.1", k, a, b)
                assert rep.holds, rep.to_dict()
                assert rep.injective, rep.to_dict()
                assert rep.codomain_ok, rep.to_dict()
                # the open y=1 corner arises only when the whole first part
                # must move, i.e. at a = 1
                if a >= 2:
                    assert rep.unsupported == 0 and rep.mode == "map"
                else:
                    assert rep.mode in ("map", "map+cardinality")

    @pytest.mark.parametrize("k", [2, 3, 4])
    def test_cardinality_fallback(self, k):
        for total in range(2, 19):
            for b in range(1, total):
                a = total - b
                rep = verify_lemma("2.1", k, a, b)
                assert rep.mode == "cardinality"
                # k=2, a=2: no 2-regular overpartition of 2 avoids plain 1's,
                # so the left factor is 0 and the product bound fails
                expect = not (k == 2 and a == 2)
                assert rep.holds == expect, rep.to_dict()


class TestLemma24:
    @pytest.mark.parametrize("k", KS)
    def test_range(self, k):
        for total in range(k + 1, 25):
            for b in range(3, total):
                a = total - b
                if a < 1:
                    continue
                rep = verify_lemma("2.4", k, a, b)
                # k=2 equalities at a=2, b in {3,4,5}; strict everywhere else
                expect = not (k == 2 and a == 2 and b <= 5)
                assert rep.holds == expect, rep.to_dict()

    def test_out_of_range_rejected(self):
        with pytest.raises(OverpartitionError):
            verify_lemma("2.4", 5, 1, 2)


class TestTheorem11Boundary:
    def test_weak_at_a_b_one(self):
        rep = verify_lemma("2.1", 2, 1, 1)
        assert rep.lhs >= rep.rhs

    def test_subadditivity_at_k3_boundary(self):
        assert pk(3, 2) * pk(3, 1) > pk(3, 3)


def test_report_serialization():
    rep = verify_lemma("2.2", 2, 5)
    data = rep.to_dict()
    assert data["lemma"] == "2.2"
    assert data["k"] == 2 and data["a"] == 5 and data["b"] == 1
    assert isinstance(rep.to_json(), str)
