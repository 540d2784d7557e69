"""Shared pair records and their JSONL wire format."""

from __future__ import annotations

import json
from typing import NamedTuple

from .lang import seq_from_text, seq_to_text

SYNTHETIC = "synthetic"
FIXER_GENERATED = "fixer-generated"
BREAKER_GENERATED = "breaker-generated"


class RepairPair(NamedTuple):
    bad: tuple[str, ...]
    good: tuple[str, ...]
    provenance: str
    round: int


class BTPair(NamedTuple):
    """Backtranslation-mode pair: no critic guarantees on either side."""

    source: tuple[str, ...]
    target: tuple[str, ...]
    round: int


def dump_pairs(pairs, path):
    with open(path, "w") as fh:
        for p in pairs:
            fh.write(
                json.dumps(
                    {
                        "bad": seq_to_text(p.bad),
                        "good": seq_to_text(p.good),
                        "prov": p.provenance,
                        "round": p.round,
                    }
                )
                + "\n"
            )


def load_pairs(path):
    out = []
    with open(path) as fh:
        for line in fh:
            if not line.strip():
                continue
            obj = json.loads(line)
            out.append(
                RepairPair(
                    seq_from_text(obj["bad"]),
                    seq_from_text(obj["good"]),
                    obj["prov"],
                    obj["round"],
                )
            )
    return out
