"""Uniform random corruption used to build the initial synthetic pairs.

Each corruption applies 1-3 independent edits (drop / insert / replace,
chosen uniformly), with positions uniform over valid slots and new tokens
uniform over the vocabulary.  Replace never picks the incumbent token, so
every edit has an effect; a multi-edit corruption can still cancel out or
stay well-formed, and such still-good outputs are discarded when building
training pairs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .lang import VOCAB_LEXEMES, critic
from .pairs import SYNTHETIC, RepairPair
from .seeds import derive

_NOISE_TAG = 0x7015E


@dataclass(frozen=True)
class NoiseSpec:
    min_edits: int = 1
    max_edits: int = 3
    copies_per_good: int = 8

    def __post_init__(self):
        if not (1 <= self.min_edits <= self.max_edits):
            raise ValueError("need 1 <= min_edits <= max_edits")

    OPS = ("drop", "insert", "replace")


def synthetic_corrupt(y, spec: NoiseSpec, seed: int):
    """Apply k ~ U[min_edits, max_edits] uniform edits; deterministic in seed."""
    rng = random.Random(derive(seed, _NOISE_TAG))
    toks = list(y)
    k = rng.randint(spec.min_edits, spec.max_edits)
    for _ in range(k):
        op = NoiseSpec.OPS[rng.randrange(3)]
        if op == "drop" and toks:
            toks.pop(rng.randrange(len(toks)))
        elif op == "insert" or not toks:
            toks.insert(rng.randint(0, len(toks)), rng.choice(VOCAB_LEXEMES))
        else:
            pos = rng.randrange(len(toks))
            new = rng.choice(VOCAB_LEXEMES)
            while new == toks[pos]:
                new = rng.choice(VOCAB_LEXEMES)
            toks[pos] = new
    return tuple(toks)


def make_synthetic_pairs(good, spec: NoiseSpec, seed: int) -> list[RepairPair]:
    """copies_per_good corruptions per program; still-good outputs discarded."""
    pairs = []
    for i, y in enumerate(good):
        for j in range(spec.copies_per_good):
            bad = synthetic_corrupt(y, spec, derive(seed, i, j))
            if not critic(bad).good:
                pairs.append(RepairPair(bad, y, SYNTHETIC, 0))
    return pairs
