import collections
import random

import pytest

from critfix.align import edit_distance
from critfix.corpus import generate_good
from critfix.lang import DEDENT, INDENT, critic, seq_from_text
from critfix.noiser import NoiseSpec, make_synthetic_pairs, synthetic_corrupt
from critfix.seeds import derive


class TestSyntheticCorrupt:
    def test_single_drop_effect(self):
        # seed hunting is fine here: we assert the mechanics of one edit
        y = ("a", "b", "c")
        spec = NoiseSpec(min_edits=1, max_edits=1)
        for seed in range(200):
            out = synthetic_corrupt(y, spec, seed)
            if len(out) == 2:
                assert out in {("b", "c"), ("a", "c"), ("a", "b")}
                break
        else:
            pytest.fail("no drop observed in 200 seeds")

    def test_distance_bounded_by_max_edits(self):
        spec = NoiseSpec()
        y = generate_good(1, seed=4)[0]
        for seed in range(300):
            out = synthetic_corrupt(y, spec, seed)
            assert edit_distance(y, out) <= 3

    def test_deterministic(self):
        y = generate_good(1, seed=6)[0]
        spec = NoiseSpec()
        assert synthetic_corrupt(y, spec, 11) == synthetic_corrupt(y, spec, 11)

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            NoiseSpec(min_edits=3, max_edits=1)
        with pytest.raises(ValueError):
            NoiseSpec(min_edits=0)

    def test_op_uniformity(self):
        # over many single-edit corruptions each op appears 1/3 +/- 0.01
        y = tuple(["x", "=", "1"] * 10)
        spec = NoiseSpec(min_edits=1, max_edits=1)
        counts = collections.Counter()
        n = 100_000
        for seed in range(n):
            out = synthetic_corrupt(y, spec, seed)
            if len(out) < len(y):
                counts["drop"] += 1
            elif len(out) > len(y):
                counts["insert"] += 1
            else:
                counts["replace"] += 1
        for op in ("drop", "insert", "replace"):
            assert abs(counts[op] / n - 1 / 3) < 0.01, counts

    def test_coordinated_pair_insertions_are_rare(self):
        # the human channel's H5/H8 signature (a matched <I>/<D> or paren
        # pair insertion) occurs well under 0.1% of the time under random
        # noise, so the two distributions stay distinguishable
        y = generate_good(1, seed=8)[0]
        spec = NoiseSpec()
        hits = 0
        n = 100_000
        base = collections.Counter(y)
        for seed in range(n):
            out = synthetic_corrupt(y, spec, seed)
            if len(out) < len(y) + 2:
                continue
            added = collections.Counter(out) - base
            if (added[INDENT] and added[DEDENT]) or (added["("] and added[")"]):
                # both halves inserted; require the open before the close
                first_i = min(
                    (k for k, t in enumerate(out) if t in (INDENT, "(")), default=-1
                )
                last_d = max(
                    (k for k, t in enumerate(out) if t in (DEDENT, ")")), default=-1
                )
                if 0 <= first_i < last_d:
                    hits += 1
        assert hits / n < 0.001, hits


class TestMakeSyntheticPairs:
    def test_pair_shape_and_filter(self):
        good = generate_good(50, seed=10)
        spec = NoiseSpec()
        pairs = make_synthetic_pairs(good, spec, seed=1)
        assert 0 < len(pairs) <= 50 * spec.copies_per_good
        for p in pairs:
            assert p.provenance == "synthetic"
            assert p.round == 0
            assert critic(p.bad).verdict == 0
            assert critic(p.good).good
            assert 1 <= edit_distance(p.bad, p.good) <= 3

    def test_copies_bound_for_single_input(self):
        y = generate_good(1, seed=12)
        pairs = make_synthetic_pairs(y, NoiseSpec(), seed=2)
        assert len(pairs) <= 8
        assert all(p.good == y[0] for p in pairs)

    def test_still_good_corruptions_discarded(self):
        # a replace that yields another valid program must not produce a pair
        y = seq_from_text("a = x <NL> b = y <NL>")
        spec = NoiseSpec(min_edits=1, max_edits=1)
        pairs = make_synthetic_pairs([y], spec, seed=3)
        for p in pairs:
            assert not critic(p.bad).good

    def test_survival_rate_band(self):
        # most uniform corruptions break a program; a sizable majority of
        # the 8 copies per input should survive the still-good filter
        good = generate_good(1000, seed=13)
        pairs = make_synthetic_pairs(good, NoiseSpec(), seed=4)
        assert 6000 <= len(pairs) <= 8000, len(pairs)

    def test_determinism(self):
        good = generate_good(20, seed=14)
        a = make_synthetic_pairs(good, NoiseSpec(), seed=5)
        b = make_synthetic_pairs(good, NoiseSpec(), seed=5)
        assert a == b
