"""Context-conditioned edit-event model with a beam decoder.

One model class serves both directions: a fixer is trained bad->good, a
breaker good->bad.  Training aligns each pair, extracts per-position edit
events (KEEP / SUB / DEL / INS) keyed by the (previous, next) source-token
context, and accumulates counts.  Event probabilities are add-alpha
smoothed over the full event space per context, so every decode score is
finite.

Decoding is a left-to-right beam over source positions.  Because event
contexts depend only on the (fixed) source sequence, a candidate's score
is the all-KEEP score plus independent per-edit deltas; the beam tracks
edit sets against a shared running KEEP baseline, which makes untouched
positions nearly free.  Ties in score prefer fewer edits, then the
lexicographically smallest output, so decoding is a pure function.

Counts stay exact under fine-tuning: the decay factor 0.5 keeps every
count a dyadic rational, which float64 and JSON round-trip losslessly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import log
from typing import NamedTuple, Optional

from .align import align
from .lang import VOCAB_LEXEMES
from .pairs import BTPair

FIX = "bad->good"
BREAK = "good->bad"

START = "<S>"
END = "</S>"

_V = len(VOCAB_LEXEMES)
EVENT_SPACE = _V + _V + _V * (_V - 1) + _V  # KEEP(s), DEL(s), SUB(s->t), INS(t)

_VOCAB_LEX_SORTED = tuple(sorted(VOCAB_LEXEMES))

_DEL, _SUB, _INS = 0, 1, 2


class Candidate(NamedTuple):
    output: tuple[str, ...]
    score: float
    n_edits: int


@dataclass(eq=False)
class EditModel:
    counts: dict  # (prev, next) -> {event tuple -> count}
    alpha: float = 0.1
    decay: float = 0.5
    max_edits: int = 4
    beam: int = 10
    _totals: dict = field(default_factory=dict, repr=False)
    _pos_cache: dict = field(default_factory=dict, repr=False)
    _gap_cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._totals = {ctx: sum(evs.values()) for ctx, evs in self.counts.items()}

    def __eq__(self, other):
        if not isinstance(other, EditModel):
            return NotImplemented
        return (
            self.counts == other.counts
            and self.alpha == other.alpha
            and self.decay == other.decay
            and self.max_edits == other.max_edits
            and self.beam == other.beam
        )

    # -- smoothed option tables, memoized per model ------------------------

    def _denom(self, ctx):
        return log(self._totals.get(ctx, 0) + self.alpha * EVENT_SPACE)

    def _position_options(self, prev, src, nxt):
        key = (prev, src, nxt)
        hit = self._pos_cache.get(key)
        if hit is not None:
            return hit
        ctx = (prev, nxt)
        evs = self.counts.get(ctx, {})
        denom = self._denom(ctx)
        a = self.alpha
        keep_lp = log(evs.get(("KEEP", src), 0) + a) - denom
        floor = log(a) - denom
        opts = [(log(evs.get(("DEL", src), 0) + a) - denom - keep_lp, _DEL, "")]
        seen = set()
        for ev, c in evs.items():
            if ev[0] == "SUB" and ev[1] == src:
                opts.append((log(c + a) - denom - keep_lp, _SUB, ev[2]))
                seen.add(ev[2])
        fill = self.beam - min(len(seen), self.beam)
        if fill:
            fdelta = floor - keep_lp
            for t in _VOCAB_LEX_SORTED:
                if t != src and t not in seen:
                    opts.append((fdelta, _SUB, t))
                    fill -= 1
                    if not fill:
                        break
        opts.sort(key=lambda o: (-o[0], o[1], o[2]))
        result = (keep_lp, tuple(opts[: self.beam + 1]))
        self._pos_cache[key] = result
        return result

    def _gap_options(self, prev, nxt):
        key = (prev, nxt)
        hit = self._gap_cache.get(key)
        if hit is not None:
            return hit
        evs = self.counts.get(key, {})
        denom = self._denom(key)
        a = self.alpha
        opts = []
        seen = set()
        for ev, c in evs.items():
            if ev[0] == "INS":
                opts.append((log(c + a) - denom, ev[1]))
                seen.add(ev[1])
        fill = self.beam - min(len(seen), self.beam)
        if fill:
            floor = log(a) - denom
            for t in _VOCAB_LEX_SORTED:
                if t not in seen:
                    opts.append((floor, t))
                    fill -= 1
                    if not fill:
                        break
        opts.sort(key=lambda o: (-o[0], o[1]))
        result = tuple(opts[: self.beam])
        self._gap_cache[key] = result
        return result


def _extract_events(src, events):
    """(ctx, event) pairs for one aligned pair; ctx straddles the source."""
    n = len(src)
    out = []
    i = 0
    for e in events:
        if e.op == "INS":
            ctx = (src[i - 1] if i else START, src[i] if i < n else END)
            out.append((ctx, ("INS", e.new)))
            continue
        ctx = (src[i - 1] if i else START, src[i + 1] if i + 1 < n else END)
        if e.op == "KEEP":
            out.append((ctx, ("KEEP", e.src)))
        elif e.op == "DEL":
            out.append((ctx, ("DEL", e.src)))
        else:
            out.append((ctx, ("SUB", e.src, e.new)))
        i += 1
    return out


def train(pairs, direction: str, base: Optional[EditModel] = None) -> EditModel:
    """Accumulate edit-event counts from aligned pairs.

    With `base`, starts from base.counts scaled by base.decay (fine-tuning);
    `base` itself is never mutated.  Pairs with identical sides are invalid
    training data and raise ValueError.
    """
    if direction not in (FIX, BREAK):
        raise ValueError(f"unknown direction {direction!r}")
    pairs = list(pairs)
    if not pairs:
        raise ValueError("cannot train on an empty pair set")
    if base is not None:
        d = base.decay
        counts = {ctx: {ev: c * d for ev, c in evs.items()} for ctx, evs in base.counts.items()}
        hyper = dict(alpha=base.alpha, decay=base.decay, max_edits=base.max_edits, beam=base.beam)
    else:
        counts = {}
        hyper = {}
    for p in pairs:
        bad, good = (p.source, p.target) if isinstance(p, BTPair) else (p.bad, p.good)
        src, tgt = (bad, good) if direction == FIX else (good, bad)
        if src == tgt:
            raise ValueError("training pair with identical sides (upstream filter bug)")
        for ctx, ev in _extract_events(src, align(src, tgt)):
            d = counts.get(ctx)
            if d is None:
                d = counts[ctx] = {}
            d[ev] = d.get(ev, 0) + 1
    return EditModel(counts, **hyper)


def decode(model: EditModel, src) -> list[Candidate]:
    """Beam search over source positions; up to `beam` distinct outputs in
    non-increasing score order (ties: fewer edits, then output order)."""
    src = tuple(src)
    n = len(src)
    width = model.beam
    max_e = model.max_edits
    base = 0.0
    # state: (relative score, n_edits, edits); edits entries (pos, kind, token)
    states = [(0.0, 0, ())]
    for g in range(n + 1):
        prev = src[g - 1] if g else START
        nxt = src[g] if g < n else END
        ins_opts = model._gap_options(prev, nxt)
        if ins_opts:
            best_d = ins_opts[0][0]
            frontier = states
            for _ in range(max_e):
                full = len(states) >= width
                bar = states[-1][0] if full else None
                if full and frontier[0][0] + best_d < bar:
                    break
                new = []
                for s, e, ed in frontier:
                    if e >= max_e:
                        continue
                    if full and s + best_d < bar:
                        break
                    for d, tok in ins_opts:
                        ns = s + d
                        if full and ns < bar:
                            break
                        new.append((ns, e + 1, ed + ((g, _INS, tok),)))
                if not new:
                    break
                states = sorted(states + new, key=_state_key)[:width]
                frontier = sorted(new, key=_state_key)
        if g < n:
            pnxt = src[g + 1] if g + 1 < n else END
            keep_lp, edit_opts = model._position_options(prev, src[g], pnxt)
            base += keep_lp
            full = len(states) >= width
            bar = states[-1][0] if full else None
            best_d = edit_opts[0][0]
            if not (full and states[0][0] + best_d < bar):
                new = []
                for s, e, ed in states:
                    if e >= max_e:
                        continue
                    if full and s + best_d < bar:
                        break
                    for d, kind, tok in edit_opts:
                        ns = s + d
                        if full and ns < bar:
                            break
                        new.append((ns, e + 1, ed + ((g, kind, tok),)))
                if new:
                    states = sorted(states + new, key=_state_key)[:width]
    # materialize, dedupe by output keeping the best, order canonically
    best = {}
    for s, e, ed in states:
        out = _apply_edits(src, ed)
        cur = best.get(out)
        if cur is None or (s, -e) > (cur[0], -cur[1]):
            best[out] = (s, e)
    final = [Candidate(out, base + s, e) for out, (s, e) in best.items()]
    final.sort(key=lambda c: (-c.score, c.n_edits, c.output))
    return final[:width]


def _state_key(st):
    return (-st[0], st[1], st[2])


def _apply_edits(src, edits):
    if not edits:
        return src
    out = []
    i = 0
    for p, kind, tok in edits:
        if kind == _INS:
            out.extend(src[i:p])
            i = p
            out.append(tok)
        elif kind == _DEL:
            out.extend(src[i:p])
            i = p + 1
        else:
            out.extend(src[i:p])
            out.append(tok)
            i = p + 1
    out.extend(src[i:])
    return tuple(out)


# -- serialization ----------------------------------------------------------


def save_model(model: EditModel, path) -> None:
    rows = []
    for (prev, nxt), evs in sorted(model.counts.items()):
        for ev, c in sorted(evs.items()):
            op = ev[0]
            src = ev[1] if op != "INS" else None
            new = ev[2] if op == "SUB" else (ev[1] if op == "INS" else None)
            rows.append([prev, nxt, op, src, new, c])
    payload = {
        "version": 1,
        "alpha": model.alpha,
        "decay": model.decay,
        "max_edits": model.max_edits,
        "beam": model.beam,
        "counts": rows,
    }
    with open(path, "w") as fh:
        json.dump(payload, fh)
        fh.write("\n")


def load_model(path) -> EditModel:
    with open(path) as fh:
        payload = json.load(fh)
    if payload.get("version") != 1:
        raise ValueError(f"unsupported model file version in {path}")
    counts: dict = {}
    for prev, nxt, op, src, new, c in payload["counts"]:
        if op == "INS":
            ev = ("INS", new)
        elif op == "SUB":
            ev = ("SUB", src, new)
        else:
            ev = (op, src)
        counts.setdefault((prev, nxt), {})[ev] = c
    return EditModel(
        counts,
        alpha=payload["alpha"],
        decay=payload["decay"],
        max_edits=payload["max_edits"],
        beam=payload["beam"],
    )
