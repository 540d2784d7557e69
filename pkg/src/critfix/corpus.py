"""Corpus construction: good-program sampling, the hidden human-error
channel, and train/test assembly.

The human channel is the stand-in for the deployment error distribution.
It is visible only to corpus construction and evaluation oracles; training
algorithms see its outputs but never the rules or the truth mapping.

Each channel rule picks a site, applies a small token edit, and keeps the
result only when the critic assigns the intended error category; a rule
with no site that produces its intended category is inapplicable on that
program and the draw falls through to the next rule by weight.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass, field
from pathlib import Path

from .align import edit_distance
from .lang import (
    HEADER_KEYWORDS,
    IDENTIFIERS,
    NL,
    INDENT,
    DEDENT,
    critic,
    seq_from_text,
    seq_to_text,
)
from .seeds import derive

_GOOD_TAG = 0x600D
_BAD_TAG = 0xBAD

_IDS = sorted(IDENTIFIERS)
_LITS = ["0", "1", "2", '"s"']
_BINOPS = ["==", "+", "-", "*", "<", ">"]

MIN_LEN = 10
MAX_LEN = 128


@dataclass(frozen=True)
class HumanChannelRule:
    name: str
    weight: float
    applies: str  # description of the sites the rule can fire on


HUMAN_RULES = (
    HumanChannelRule("H1", 0.17, "drop ')' of a pair whose open sits inside another open bracket"),
    HumanChannelRule("H2", 0.017, "drop ')' of a non-nested pair"),
    HumanChannelRule("H3", 0.07, "insert a spurious ')'"),
    HumanChannelRule("H4", 0.28, "drop the <I> that opens a block"),
    HumanChannelRule("H5", 0.14, "wrap a non-header line in a spurious <I>/<D> pair"),
    HumanChannelRule("H6", 0.10, "drop the ':' of a header line"),
    HumanChannelRule("H7", 0.12, "drop a comma inside a bracket region, 2:1 toward multi-line regions"),
    HumanChannelRule("H8", 0.103, "wrap a parenthesized atom in a redundant '( )' pair"),
)

_RULE_CATEGORY = {
    "H1": "unclosed-left-nested",
    "H2": "unclosed-left-flat",
    "H3": "redundant-right",
    "H4": "expected-indent",
    "H5": "unexpected-indent",
    "H6": "missing-colon",
    "H8": "redundant-paren-pair",
}


@dataclass
class Corpus:
    good: list
    bad_pool: list
    bad_test: list
    truth: dict = field(repr=False)  # bad id -> (original seq, rule name)
    seed: int = 0

    def bad_id(self, which: str, index: int) -> int:
        return index if which == "pool" else len(self.bad_pool) + index


# ---------------------------------------------------------------------------
# good-program sampler
# ---------------------------------------------------------------------------


def _gen_atom(rng, depth, allow_paren=True):
    if depth >= 3:
        return [rng.choice(_IDS)] if rng.random() < 0.7 else [rng.choice(_LITS)]
    r = rng.random()
    if r < 0.22:  # call
        toks = [rng.choice(_IDS), "("]
        toks.extend(_gen_args(rng, depth + 1))
        toks.append(")")
        return toks
    if r < 0.30:  # list
        toks = ["["]
        toks.extend(_gen_args(rng, depth + 1, min_elems=1))
        toks.append("]")
        return toks
    if r < 0.35 and allow_paren:  # parenthesized expression
        toks = ["("]
        toks.extend(_gen_expr(rng, depth + 1, bare_paren_ok=False))
        toks.append(")")
        return toks
    if r < 0.72:
        return [rng.choice(_IDS)]
    return [rng.choice(_LITS)]


def _gen_expr(rng, depth, bare_paren_ok=True):
    n_atoms = rng.choices((1, 2, 3), weights=(0.60, 0.28, 0.12))[0]
    toks = _gen_atom(rng, depth, allow_paren=bare_paren_ok or n_atoms > 1)
    for _ in range(n_atoms - 1):
        toks.append(rng.choice(_BINOPS))
        toks.extend(_gen_atom(rng, depth))
    return toks


def _gen_args(rng, depth, min_elems=0):
    n = rng.choices((0, 1, 2, 3), weights=(0.20, 0.50, 0.24, 0.06))[0]
    n = max(n, min_elems)
    if n == 0:
        return []
    parts = [_gen_expr(rng, depth) for _ in range(n)]
    toks = []
    multiline = n >= 2 and rng.random() < 0.25
    break_after = rng.randrange(n - 1) if multiline else -1
    for k, part in enumerate(parts):
        if k:
            toks.append(",")
            if k - 1 == break_after:
                toks.append(NL)
        toks.extend(part)
    return toks


def _gen_simple(rng):
    r = rng.random()
    if r < 0.50:
        return [rng.choice(_IDS), "="] + _gen_expr(rng, 0)
    if r < 0.70:
        toks = [rng.choice(_IDS), "("]
        toks.extend(_gen_args(rng, 1))
        toks.append(")")
        return toks
    if r < 0.85:
        if rng.random() < 0.3:
            return ["return"]
        return ["return"] + _gen_expr(rng, 1)
    if r < 0.93:
        return ["pass"]
    return ["raise"] + _gen_expr(rng, 1)


_TAIL_BIAS = 0.70  # chance the final statement is call-shaped
_TAIL_NESTED = 0.45  # ... and of those, the chance the call is nested


def _gen_tail_simple(rng):
    """Assignment of a call: the favored shape for a program's final
    statement.  Flat leaf calls leave an isolated paren pair with nothing
    after it; nested calls leave a paren pair inside another."""
    toks = [rng.choice(_IDS), "=", rng.choice(_IDS), "("]
    if rng.random() < _TAIL_NESTED:
        toks.extend((rng.choice(_IDS), "(", rng.choice(_IDS), ")"))
    else:
        for k in range(rng.choice((1, 1, 2))):
            if k:
                toks.append(",")
            toks.append(rng.choice(_IDS) if rng.random() < 0.7 else rng.choice(_LITS))
    toks.append(")")
    return toks


def _gen_header(rng):
    r = rng.random()
    if r < 0.30:
        params = rng.sample(_IDS, rng.choices((0, 1, 2), weights=(0.2, 0.5, 0.3))[0])
        toks = ["def", rng.choice(_IDS), "("]
        for k, p in enumerate(params):
            if k:
                toks.append(",")
            toks.append(p)
        toks.extend((")", ":"))
        return toks, False
    if r < 0.58:
        return ["if"] + _gen_expr(rng, 1) + [":"], r >= 0.48  # last tenth gets an else
    if r < 0.80:
        return ["for", rng.choice(_IDS), "in"] + _gen_expr(rng, 1) + [":"], False
    return ["while"] + _gen_expr(rng, 1) + [":"], False


def _gen_block(rng, tail=False):
    header, with_else = _gen_header(rng)
    toks = header + [NL, INDENT]
    n_body = rng.choices((1, 2, 3), weights=(0.6, 0.3, 0.1))[0]
    for k in range(n_body):
        if k:
            toks.append(NL)
        last = k == n_body - 1 and not with_else
        toks.extend(_gen_tail_simple(rng) if tail and last else _gen_simple(rng))
    toks.extend((NL, DEDENT))
    if with_else:
        toks.extend(("else", ":", NL, INDENT))
        toks.extend(_gen_tail_simple(rng) if tail else _gen_simple(rng))
        toks.extend((NL, DEDENT))
    return toks


def _gen_program(rng):
    toks = []
    n_items = rng.choices((2, 3, 4, 5), weights=(0.50, 0.30, 0.15, 0.05))[0]
    tail_at = n_items - 1 if rng.random() < _TAIL_BIAS else -1
    for k in range(n_items):
        tail = k == tail_at
        if rng.random() < 0.40:
            toks.extend(_gen_block(rng, tail=tail))
        else:
            toks.extend(_gen_tail_simple(rng) if tail else _gen_simple(rng))
            toks.append(NL)
    return toks


def generate_good(n: int, seed: int) -> list[tuple[str, ...]]:
    """Sample n well-formed programs of 10-128 tokens, deterministically."""
    out = []
    for i in range(n):
        rng = random.Random(derive(seed, _GOOD_TAG, i))
        for attempt in range(1000):
            toks = _gen_program(rng)
            if MIN_LEN <= len(toks) <= MAX_LEN and critic(tuple(toks)).good:
                out.append(tuple(toks))
                break
        else:
            raise RuntimeError(
                f"could not sample a valid program for item {i} in 1000 attempts"
            )
    return out


# ---------------------------------------------------------------------------
# human-error channel
# ---------------------------------------------------------------------------


def _matched_pairs(s):
    """(open_idx, close_idx, kind, nested_at_open) for well-matched pairs."""
    stack = []
    pairs = []
    for i, t in enumerate(s):
        if t == "(" or t == "[":
            stack.append((t, i))
        elif t == ")" or t == "]":
            want = "(" if t == ")" else "["
            if stack and stack[-1][0] == want:
                _, o = stack.pop()
                pairs.append((o, i, want, bool(stack)))
            elif stack:
                stack.pop()
    return pairs


def _logical_lines(s):
    """Dicts describing logical lines: start, nl (terminator index or None),
    first/last content lexemes, is_header."""
    n = len(s)
    lines = []
    depth = 0
    start = 0
    first = last = None
    i = 0
    while i < n:
        t = s[i]
        if t == NL and depth == 0:
            lines.append(
                {
                    "start": start,
                    "nl": i,
                    "first": first,
                    "last": last,
                    "is_header": first in HEADER_KEYWORDS and last == ":",
                    "colon": i_last_colon(s, start, i, last),
                }
            )
            start = i + 1
            first = last = None
            i += 1
            continue
        if t not in (NL, INDENT, DEDENT):
            if t == "(" or t == "[":
                depth += 1
            elif t == ")" or t == "]":
                depth = max(0, depth - 1)
            if first is None:
                first = t
            last = t
        i += 1
    if start < n:
        lines.append(
            {
                "start": start,
                "nl": None,
                "first": first,
                "last": last,
                "is_header": first in HEADER_KEYWORDS and last == ":",
                "colon": i_last_colon(s, start, n, last),
            }
        )
    return lines


def i_last_colon(s, start, end, last):
    if last != ":":
        return None
    for k in range(end - 1, start - 1, -1):
        if s[k] == ":":
            return k
    return None


def _comma_sites(s):
    """(index, spans_nl) for commas inside bracket regions."""
    match = {o: c for o, c, _, _ in _matched_pairs(s)}
    stack = []
    sites = []
    for i, t in enumerate(s):
        if t == "(" or t == "[":
            stack.append(i)
        elif t == ")" or t == "]":
            if stack:
                stack.pop()
        elif t == "," and stack:
            o = stack[-1]
            c = match.get(o, len(s))
            spans = any(s[k] == NL for k in range(o, min(c + 1, len(s))))
            sites.append((i, spans))
    return sites


def _try(s, candidate, want_minor):
    c = critic(candidate)
    if not c.good and c.category.minor == want_minor:
        return candidate
    return None


def _apply_rule(rule_name, s, rng):
    """Apply one channel rule; None when no site yields the intended category."""
    want = _RULE_CATEGORY.get(rule_name)
    if rule_name == "H1" or rule_name == "H2":
        need_nested = rule_name == "H1"
        sites = [
            (o, c)
            for o, c, kind, nested in _matched_pairs(s)
            if kind == "(" and nested == need_nested
        ]
        rng.shuffle(sites)
        for _o, c in sites[:10]:
            got = _try(s, s[:c] + s[c + 1 :], want)
            if got:
                return got
        return None
    if rule_name == "H3":
        positions = list(range(len(s) + 1))
        rng.shuffle(positions)
        for p in positions[:10] + [len(s)]:
            got = _try(s, s[:p] + (")",) + s[p:], want)
            if got:
                return got
        return None
    if rule_name == "H4":
        sites = [i for i, t in enumerate(s) if t == INDENT]
        rng.shuffle(sites)
        for i in sites[:10]:
            got = _try(s, s[:i] + s[i + 1 :], want)
            if got:
                return got
        return None
    if rule_name == "H5":
        sites = [ln for ln in _logical_lines(s) if not ln["is_header"]]
        rng.shuffle(sites)
        for ln in sites[:10]:
            i = ln["start"]
            out = s[:i] + (INDENT,) + s[i:]
            j = (ln["nl"] + 2) if ln["nl"] is not None else len(out)
            out = out[:j] + (DEDENT,) + out[j:]
            got = _try(s, out, want)
            if got:
                return got
        return None
    if rule_name == "H6":
        sites = [ln["colon"] for ln in _logical_lines(s) if ln["is_header"]]
        rng.shuffle(sites)
        for i in sites[:10]:
            got = _try(s, s[:i] + s[i + 1 :], want)
            if got:
                return got
        return None
    if rule_name == "H7":
        multi = [i for i, spans in _comma_sites(s) if spans]
        single = [i for i, spans in _comma_sites(s) if not spans]
        rng.shuffle(multi)
        rng.shuffle(single)
        for _ in range(10):
            if multi and (not single or rng.random() < 2 / 3):
                i, pool = multi.pop(), "multi"
            elif single:
                i, pool = single.pop(), "single"
            else:
                return None
            want7 = "missing-comma-multi-line" if pool == "multi" else "missing-comma-single-line"
            got = _try(s, s[:i] + s[i + 1 :], want7)
            if got:
                return got
        return None
    if rule_name == "H8":
        sites = [(o, c) for o, c, kind, _ in _matched_pairs(s) if kind == "("]
        rng.shuffle(sites)
        for o, c in sites[:10]:
            out = s[:o] + ("(",) + s[o : c + 1] + (")",) + s[c + 1 :]
            got = _try(s, out, want)
            if got:
                return got
        return None
    raise ValueError(rule_name)


def _weighted_order(rng):
    remaining = list(HUMAN_RULES)
    order = []
    while remaining:
        total = sum(r.weight for r in remaining)
        x = rng.random() * total
        acc = 0.0
        for k, r in enumerate(remaining):
            acc += r.weight
            if x < acc or k == len(remaining) - 1:
                order.append(remaining.pop(k))
                break
    return order


def human_corrupt_traced(y, seed: int):
    """One human-channel corruption of a good program; returns (bad, rule)."""
    if not critic(y).good:
        raise ValueError("human_corrupt requires a good program")
    rng = random.Random(derive(seed, _BAD_TAG))
    for rule in _weighted_order(rng):
        got = _apply_rule(rule.name, y, rng)
        if got is not None:
            return got, rule.name
    # guaranteed fallback: a spurious ')' at the very end is always flagged
    out = y + (")",)
    assert not critic(out).good
    return out, "H3"


def human_corrupt(y, seed: int):
    return human_corrupt_traced(y, seed)[0]


# ---------------------------------------------------------------------------
# corpus assembly and persistence
# ---------------------------------------------------------------------------


def build_corpus(
    n_good: int = 20_000,
    n_bad_pool: int = 2_000,
    n_bad_test: int = 2_000,
    seed: int = 0,
) -> Corpus:
    if min(n_good, n_bad_pool, n_bad_test) < 1:
        raise ValueError("all corpus section sizes must be >= 1")
    total = n_good + n_bad_pool + n_bad_test
    programs = generate_good(total, seed)
    good = programs[:n_good]
    truth = {}
    pool_set = set()
    bad_pool = []
    bad_test = []
    for j in range(n_bad_pool + n_bad_test):
        orig = programs[n_good + j]
        bad, rule = human_corrupt_traced(orig, derive(seed, _BAD_TAG, j))
        if j >= n_bad_pool:
            attempt = 1
            while bad in pool_set:  # keep pool and test disjoint
                bad, rule = human_corrupt_traced(orig, derive(seed, _BAD_TAG, j, attempt))
                attempt += 1
        if j < n_bad_pool:
            bad_pool.append(bad)
            pool_set.add(bad)
        else:
            bad_test.append(bad)
        truth[j] = (orig, rule)
        assert edit_distance(bad, orig) <= 4
    return Corpus(good, bad_pool, bad_test, truth, seed)


def corpus_manifest(corpus: Corpus) -> dict:
    h = hashlib.sha256()
    for section in (corpus.good, corpus.bad_pool, corpus.bad_test):
        for s in section:
            h.update(seq_to_text(s).encode())
            h.update(b"\n")
    for j in sorted(corpus.truth):
        orig, rule = corpus.truth[j]
        h.update(f"{j}\t{rule}\t{seq_to_text(orig)}\n".encode())
    return {
        "n_good": len(corpus.good),
        "n_bad_pool": len(corpus.bad_pool),
        "n_bad_test": len(corpus.bad_test),
        "seed": corpus.seed,
        "hash": h.hexdigest(),
    }


def save_corpus(corpus: Corpus, outdir) -> dict:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    def dump(name, seqs, id_offset=0):
        with open(outdir / name, "w") as fh:
            for i, s in enumerate(seqs):
                fh.write(json.dumps({"id": id_offset + i, "tokens": seq_to_text(s)}) + "\n")

    dump("good.jsonl", corpus.good)
    dump("bad_pool.jsonl", corpus.bad_pool)
    dump("bad_test.jsonl", corpus.bad_test, id_offset=len(corpus.bad_pool))
    with open(outdir / "truth.jsonl", "w") as fh:
        for j in sorted(corpus.truth):
            orig, rule = corpus.truth[j]
            fh.write(
                json.dumps({"bad_id": j, "orig_tokens": seq_to_text(orig), "rule": rule}) + "\n"
            )
    manifest = corpus_manifest(corpus)
    with open(outdir / "manifest.json", "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return manifest


def _read_jsonl(path):
    out = []
    with open(path) as fh:
        for line in fh:
            if line.strip():
                out.append(json.loads(line))
    return out


def load_corpus(indir) -> Corpus:
    indir = Path(indir)
    good = [seq_from_text(o["tokens"]) for o in _read_jsonl(indir / "good.jsonl")]
    bad_pool = [seq_from_text(o["tokens"]) for o in _read_jsonl(indir / "bad_pool.jsonl")]
    bad_test = [seq_from_text(o["tokens"]) for o in _read_jsonl(indir / "bad_test.jsonl")]
    truth = {}
    for o in _read_jsonl(indir / "truth.jsonl"):
        truth[o["bad_id"]] = (seq_from_text(o["orig_tokens"]), o["rule"])
    with open(indir / "manifest.json") as fh:
        manifest = json.load(fh)
    corpus = Corpus(good, bad_pool, bad_test, truth, manifest["seed"])
    if corpus_manifest(corpus)["hash"] != manifest["hash"]:
        raise ValueError(f"corpus at {indir} does not match its manifest hash")
    return corpus
