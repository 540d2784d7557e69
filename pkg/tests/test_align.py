import itertools
import random

from critfix.align import DEL, INS, KEEP, SUB, EditOp, align, alignment_cost, edit_distance
from critfix.lang import VOCAB_LEXEMES

from oracles import brute_force_distance, plain_dp_distance


class TestEditDistance:
    def test_identity(self):
        s = ("a", "b", "c")
        assert edit_distance(s, s) == 0

    def test_single_substitution(self):
        assert edit_distance(("a", "b", "c"), ("a", "x", "c")) == 1

    def test_hand_traced_case(self):
        # full DP table worked by hand: del a, keep b, keep c, ins e, keep d, ins f
        assert edit_distance(("a", "b", "c", "d"), ("b", "c", "e", "d", "f")) == 3

    def test_empty_sides(self):
        assert edit_distance((), ()) == 0
        assert edit_distance((), ("a", "b")) == 2
        assert edit_distance(("a", "b", "c"), ()) == 3

    def test_exhaustive_vs_brute_force(self):
        alphabet = ("a", "b", "c")
        seqs = [
            s for n in range(0, 5) for s in itertools.product(alphabet, repeat=n)
        ]
        for a in seqs:
            for b in seqs:
                assert edit_distance(a, b) == brute_force_distance(a, b), (a, b)

    def test_random_vs_plain_dp(self):
        rng = random.Random(4242)
        for _ in range(10_000):
            a = tuple(rng.choice(VOCAB_LEXEMES) for _ in range(rng.randint(0, 12)))
            b = tuple(rng.choice(VOCAB_LEXEMES) for _ in range(rng.randint(0, 12)))
            assert edit_distance(a, b) == plain_dp_distance(a, b), (a, b)

    def test_metric_properties_exhaustive(self):
        alphabet = ("a", "b", "c")
        seqs = [
            s for n in range(0, 5) for s in itertools.product(alphabet, repeat=n)
        ]
        dist = {}
        for a in seqs:
            for b in seqs:
                dist[a, b] = edit_distance(a, b)
        for a in seqs:
            assert dist[a, a] == 0
            for b in seqs:
                if a != b:
                    assert dist[a, b] > 0  # identity of indiscernibles
                assert dist[a, b] == dist[b, a]  # symmetry
        for a in seqs:
            for b in seqs:
                dab = dist[a, b]
                for c in seqs:
                    assert dab <= dist[a, c] + dist[c, b]


class TestAlign:
    def test_identity_alignment(self):
        assert align(("a", "b"), ("a", "b")) == [
            EditOp(KEEP, "a", None),
            EditOp(KEEP, "b", None),
        ]

    def test_single_deletion(self):
        assert align(("a", "b"), ("a",)) == [
            EditOp(KEEP, "a", None),
            EditOp(DEL, "b", None),
        ]

    def test_hand_traced_traceback(self):
        # traceback through the hand-computed table with the KEEP>SUB>DEL>INS rule
        got = align(("a", "b", "c", "d"), ("b", "c", "e", "d", "f"))
        assert got == [
            EditOp(DEL, "a", None),
            EditOp(KEEP, "b", None),
            EditOp(KEEP, "c", None),
            EditOp(INS, None, "e"),
            EditOp(KEEP, "d", None),
            EditOp(INS, None, "f"),
        ]
        assert alignment_cost(got) == 3

    def test_empty_sides(self):
        assert align((), ("a",)) == [EditOp(INS, None, "a")]
        assert align(("a",), ()) == [EditOp(DEL, "a", None)]

    def test_cost_matches_distance_random(self):
        rng = random.Random(777)
        for _ in range(10_000):
            a = tuple(rng.choice(VOCAB_LEXEMES) for _ in range(rng.randint(0, 12)))
            b = tuple(rng.choice(VOCAB_LEXEMES) for _ in range(rng.randint(0, 12)))
            events = align(a, b)
            assert alignment_cost(events) == edit_distance(a, b), (a, b)

    def test_alignment_reconstructs_target(self):
        rng = random.Random(778)
        for _ in range(2_000):
            a = tuple(rng.choice(VOCAB_LEXEMES) for _ in range(rng.randint(0, 10)))
            b = tuple(rng.choice(VOCAB_LEXEMES) for _ in range(rng.randint(0, 10)))
            out = []
            src = []
            for e in align(a, b):
                if e.op == KEEP:
                    out.append(e.src)
                    src.append(e.src)
                elif e.op == SUB:
                    out.append(e.new)
                    src.append(e.src)
                elif e.op == DEL:
                    src.append(e.src)
                else:
                    out.append(e.new)
            assert tuple(out) == b
            assert tuple(src) == a

    def test_pure_function(self):
        a = ("x", "=", "(", "a")
        b = ("x", "=", "a")
        assert align(a, b) == align(a, b)

    def test_sub_has_distinct_new_token(self):
        rng = random.Random(9)
        for _ in range(2_000):
            a = tuple(rng.choice(VOCAB_LEXEMES) for _ in range(rng.randint(1, 8)))
            b = tuple(rng.choice(VOCAB_LEXEMES) for _ in range(rng.randint(1, 8)))
            for e in align(a, b):
                if e.op == SUB:
                    assert e.src != e.new
