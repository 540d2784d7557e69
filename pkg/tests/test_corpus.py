import collections

import pytest

from critfix.align import edit_distance
from critfix.corpus import (
    HUMAN_RULES,
    build_corpus,
    corpus_manifest,
    generate_good,
    human_corrupt,
    human_corrupt_traced,
    load_corpus,
    save_corpus,
)
from critfix.lang import DEDENT, INDENT, NL, critic, seq_from_text
from critfix.seeds import derive


class TestGenerateGood:
    def test_seeded_determinism(self):
        assert generate_good(1, seed=7) == generate_good(1, seed=7)

    def test_all_valid_and_in_length_band(self):
        for s in generate_good(100, seed=3):
            assert critic(s).good
            assert 10 <= len(s) <= 128

    def test_blocks_appear(self):
        got = generate_good(1000, seed=1)
        assert any(INDENT in s for s in got)
        # blocks should be common, not incidental
        assert sum(1 for s in got if INDENT in s) > 300

    def test_prefix_stability(self):
        # item i depends only on (seed, i)
        assert generate_good(50, seed=9) == generate_good(80, seed=9)[:50]


class TestHumanChannel:
    def test_weights_sum_to_one(self):
        assert sum(r.weight for r in HUMAN_RULES) == pytest.approx(1.0)
        assert all(r.weight > 0 for r in HUMAN_RULES)

    def test_h5_spec_example(self):
        # the coordinated indent/dedent wrap of a plain line
        y = seq_from_text("x = 1 <NL> y = 2 <NL>")
        out = y[:3] + (INDENT,) + y[3:6] + (DEDENT,) + y[6:]
        # build it via the channel primitive to confirm the analysis holds
        from critfix.corpus import _apply_rule
        import random

        got = _apply_rule("H5", y, random.Random(0))
        assert got is not None
        c = critic(got)
        assert c.category.minor == "unexpected-indent"
        assert INDENT in got and (DEDENT in got or got.index(INDENT) == 0)

    def test_h1_deletes_nested_close(self):
        from critfix.corpus import _apply_rule
        import random

        y = seq_from_text("x = f ( g ( a ) ) <NL>")
        got = _apply_rule("H1", y, random.Random(0))
        assert got is not None
        assert len(got) == len(y) - 1
        assert critic(got).category.minor == "unclosed-left-nested"

    def test_output_always_bad_and_close(self):
        goods = generate_good(300, seed=5)
        for i, y in enumerate(goods):
            bad, rule = human_corrupt_traced(y, derive(17, i))
            assert not critic(bad).good
            assert edit_distance(bad, y) <= 2
            assert rule in {r.name for r in HUMAN_RULES}

    def test_deterministic(self):
        y = generate_good(1, seed=2)[0]
        assert human_corrupt(y, 99) == human_corrupt(y, 99)

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            human_corrupt(seq_from_text("f ( x"), 1)

    def test_nested_flat_outcome_ratio(self):
        # Monte-Carlo over 10,000 corruptions of a mixed corpus: critic
        # outcomes for nested vs flat unclosed parens land at 10 +/- 2
        goods = generate_good(10_000, seed=7)
        minors = collections.Counter()
        for i, y in enumerate(goods):
            bad, _ = human_corrupt_traced(y, derive(7007, i))
            minors[critic(bad).category.minor] += 1
        ratio = minors["unclosed-left-nested"] / minors["unclosed-left-flat"]
        assert 8.0 <= ratio <= 12.0, f"got {ratio:.2f} ({dict(minors)})"


class TestBuildCorpus:
    def test_small_build_invariants(self):
        corpus = build_corpus(10, 2, 2, seed=3)
        assert len(corpus.good) == 10
        assert len(corpus.bad_pool) == 2
        assert len(corpus.bad_test) == 2
        for s in corpus.good:
            assert critic(s).good
        for s in corpus.bad_pool + corpus.bad_test:
            assert not critic(s).good
        assert not (set(corpus.bad_pool) & set(corpus.bad_test))

    def test_truth_mapping_invariants(self):
        corpus = build_corpus(5, 30, 30, seed=12)
        all_bad = corpus.bad_pool + corpus.bad_test
        assert sorted(corpus.truth) == list(range(60))
        for j, bad in enumerate(all_bad):
            orig, rule = corpus.truth[j]
            assert critic(orig).good
            assert edit_distance(bad, orig) <= 4

    def test_deterministic(self):
        a = build_corpus(8, 3, 3, seed=21)
        b = build_corpus(8, 3, 3, seed=21)
        assert a.good == b.good
        assert a.bad_pool == b.bad_pool
        assert a.bad_test == b.bad_test
        assert a.truth == b.truth

    def test_counts_validated(self):
        with pytest.raises(ValueError):
            build_corpus(0, 1, 1, seed=0)

    def test_roundtrip_and_hash(self, tmp_path):
        corpus = build_corpus(6, 4, 4, seed=33)
        manifest = save_corpus(corpus, tmp_path)
        loaded = load_corpus(tmp_path)
        assert loaded.good == corpus.good
        assert loaded.bad_pool == corpus.bad_pool
        assert loaded.bad_test == corpus.bad_test
        assert loaded.truth == corpus.truth
        assert corpus_manifest(loaded)["hash"] == manifest["hash"]

    def test_hash_mismatch_detected(self, tmp_path):
        corpus = build_corpus(6, 2, 2, seed=34)
        save_corpus(corpus, tmp_path)
        good_file = tmp_path / "good.jsonl"
        lines = good_file.read_text().splitlines()
        lines[0] = lines[0].replace("tokens", "tokens", 1)  # no-op guard
        good_file.write_text(
            "\n".join([lines[0].replace('"id": 0', '"id": 0').replace("pass", "x")] + lines[1:])
            + "\n"
        )
        # a real content change must trip the manifest hash
        text = good_file.read_text().replace(" x ", " y ", 1)
        if text == good_file.read_text():
            text = text.replace(" a ", " b ", 1)
        good_file.write_text(text)
        with pytest.raises(ValueError):
            load_corpus(tmp_path)


class TestCategoryMix:
    def test_indentation_plurality_on_seeded_build(self):
        corpus = build_corpus(50, 300, 300, seed=7)
        majors = collections.Counter(
            critic(s).category.major for s in corpus.bad_test
        )
        assert majors.most_common(1)[0][0] == "IndentationError"
