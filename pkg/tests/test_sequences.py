import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import problems, seq_pairs, vanishing, contexts
from oracles import rho_all_j, rho_hat_clipped
from llsgraph import (
    BNProblem,
    ContextMismatch,
    InvalidSequence,
    VanishingSeq,
    all_sequences,
    complement,
    dominates,
    merge_max,
    rho,
    rho_hat,
)


def V(entries, d):
    return VanishingSeq(tuple(entries), d)


class TestVanishingSeq:
    @pytest.mark.parametrize(
        "entries, d, message",
        [
            ((0, 2, 2), 6, "not strictly increasing"),
            ((3, 1), 6, "not strictly increasing"),
            ((-1, 2), 6, "below 0"),
            ((0, 7), 6, "above d"),
            ((), 6, "at least one entry"),
            ((0, 1, 2), 1, "exceeds degree"),
        ],
    )
    def test_rejects_invalid(self, entries, d, message):
        with pytest.raises(InvalidSequence, match=message):
            V(entries, d)

    def test_rejects_non_integers(self):
        with pytest.raises(InvalidSequence):
            V((0, 1.5), 3)

    def test_context(self):
        s = V((0, 2, 3), 6)
        assert (s.r, s.d) == (2, 6)
        assert str(s) == "(0,2,3)"

    def test_all_sequences_counts_and_order(self):
        seqs = all_sequences(2, 6)
        assert len(seqs) == 35
        assert seqs == sorted(seqs)
        assert all_sequences(3, 2) == []

    def test_json_round_trip(self):
        s = V((1, 3, 6), 6)
        assert VanishingSeq.from_json(json.loads(json.dumps(s.to_json())), 6) == s


class TestBNProblem:
    def test_coerces_sequences(self):
        p = BNProblem(2, 2, 6, (0, 2, 3), [0, 3, 5])
        assert isinstance(p.b, VanishingSeq)

    def test_rejects_length_mismatch(self):
        with pytest.raises(ContextMismatch):
            BNProblem(2, 1, 6, (0, 2, 3), (0, 3, 5))

    def test_rejects_degree_mismatch(self):
        with pytest.raises(ContextMismatch):
            BNProblem(2, 2, 6, V((0, 2, 3), 7), (0, 3, 5))

    def test_rejects_negative_genus(self):
        with pytest.raises(InvalidSequence):
            BNProblem(-1, 0, 1, (0,), (0,))

    def test_json_round_trip(self):
        p = BNProblem(2, 2, 6, (0, 2, 3), (0, 3, 5))
        data = json.loads(json.dumps(p.to_json()))
        assert data == {"g": 2, "r": 2, "d": 6, "a": [0, 2, 3], "b": [0, 3, 5]}
        assert BNProblem.from_json(data) == p


class TestRho:
    def test_disconnected_example(self):
        assert rho(BNProblem(2, 2, 6, (0, 2, 3), (0, 3, 5))) == 1

    def test_identity_case(self):
        assert rho(BNProblem(0, 0, 0, (0,), (0,))) == 0

    def test_small_pencil(self):
        # both the formula and the all-j sum give 0 here
        assert rho_all_j(3, 1, 4, (0, 2), (1, 2)) == 0
        assert rho(BNProblem(3, 1, 4, (0, 2), (1, 2))) == 0

    @given(problems())
    def test_matches_all_j_form(self, p):
        assert rho(p) == rho_all_j(p.g, p.r, p.d, p.a, p.b)

    @given(problems())
    def test_symmetric(self, p):
        assert rho(p) == rho(p.swapped())


class TestRhoHat:
    def test_disconnected_example(self):
        assert rho_hat(BNProblem(2, 2, 6, (0, 2, 3), (0, 3, 5))) == 0

    def test_cross_pair_merge(self):
        assert rho_hat(BNProblem(1, 2, 6, (0, 2, 3), (1, 4, 6))) == -1

    @given(st.integers(0, 6), st.integers(0, 4), st.integers(0, 6))
    def test_unramified_nonspecial_is_g(self, g, r, extra):
        d = r + g + extra
        base = tuple(range(r + 1))
        assert rho_hat(BNProblem(g, r, d, base, base)) == g

    @given(problems())
    def test_matches_clipped_form(self, p):
        assert rho_hat(p) == rho_hat_clipped(p.g, p.r, p.d, p.a, p.b)

    @given(problems())
    def test_at_most_rho(self, p):
        assert rho_hat(p) <= rho(p)

    @given(problems())
    def test_equals_rho_when_special(self, p):
        if p.d <= p.r + p.g:
            assert rho_hat(p) == rho(p)

    @given(problems())
    def test_symmetric(self, p):
        assert rho_hat(p) == rho_hat(p.swapped())


class TestComplement:
    @pytest.mark.parametrize(
        "d, s, expected",
        [(6, (1, 3, 6), (0, 3, 5)), (6, (0, 3, 6), (0, 3, 6)), (5, (0, 2, 4), (1, 3, 5))],
    )
    def test_examples(self, d, s, expected):
        assert complement(V(s, d)) == V(expected, d)

    @given(st.data())
    def test_involution(self, data):
        r, d = data.draw(contexts())
        s = data.draw(vanishing(r, d))
        c = complement(s)
        assert complement(c) == s
        assert all(s[j] + c[r - j] == d for j in range(r + 1))


class TestDominanceAndMerge:
    def test_dominates_examples(self):
        assert dominates(V((2, 3, 6), 6), V((1, 3, 6), 6))
        assert not dominates(V((1, 4, 5), 6), V((2, 3, 6), 6))
        s = V((1, 4, 5), 6)
        assert dominates(s, s)

    def test_context_mismatch(self):
        with pytest.raises(ContextMismatch):
            dominates(V((0, 1), 3), V((0, 1), 4))
        with pytest.raises(ContextMismatch):
            merge_max(V((0, 1), 3), V((0, 1, 2), 3))

    @pytest.mark.parametrize(
        "s, t, expected",
        [((1, 3, 6), (2, 3, 6), (2, 3, 6)), ((1, 3, 6), (1, 3, 6), (1, 3, 6)),
         ((1, 3, 6), (1, 4, 5), (1, 4, 6))],
    )
    def test_merge_examples(self, s, t, expected):
        assert merge_max(V(s, 6), V(t, 6)) == V(expected, 6)

    @given(st.data())
    def test_lattice_laws(self, data):
        r, d = data.draw(contexts())
        s, t, u = (data.draw(vanishing(r, d)) for _ in range(3))
        m = merge_max(s, t)
        assert m == merge_max(t, s)
        assert merge_max(m, u) == merge_max(s, merge_max(t, u))
        assert merge_max(s, s) == s
        assert dominates(m, s) and dominates(m, t)
        # least upper bound: anything above both is above the merge
        if dominates(u, s) and dominates(u, t):
            assert dominates(u, m)

    @given(seq_pairs())
    def test_dominance_is_partial_order(self, pair):
        s, t = pair
        if dominates(s, t) and dominates(t, s):
            assert s == t
