"""Token-level Levenshtein distance and minimal-cost alignments.

Both functions run a banded dynamic program with doubling band radius
(exact for any distance: the band grows until it provably contains every
optimal path), so near pairs cost O(n * d) instead of O(n * m).

`align` extracts one canonical minimal alignment.  Ties are broken by
scanning backward through the DP table with the fixed precedence
KEEP > SUB > DEL > INS, which makes it a pure function of its inputs.
"""

from __future__ import annotations

from typing import NamedTuple, Optional

KEEP = "KEEP"
SUB = "SUB"
DEL = "DEL"
INS = "INS"

class EditOp(NamedTuple):
    op: str
    src: Optional[str]  # absent for INS
    new: Optional[str]  # present for SUB/INS


def alignment_cost(events: list[EditOp]) -> int:
    return sum(1 for e in events if e.op != KEEP)


def _banded_rows(a, b, radius):
    """DP rows limited to |i - j| <= radius; cells off band act as +inf."""
    n, m = len(a), len(b)
    inf = n + m + 7
    hi0 = min(m, radius)
    row_prev = list(range(hi0 + 1))
    rows = [(0, row_prev)]
    lo_prev, hi_prev = 0, hi0
    for i in range(1, n + 1):
        lo = i - radius
        if lo < 0:
            lo = 0
        hi = i + radius
        if hi > m:
            hi = m
        ai = a[i - 1]
        row = []
        append = row.append
        for j in range(lo, hi + 1):
            if j == 0:
                append(i)
                continue
            jm1 = j - 1
            if lo_prev <= jm1 <= hi_prev:
                best = row_prev[jm1 - lo_prev]
                if ai != b[jm1]:
                    best += 1
            else:
                best = inf
            if lo_prev <= j <= hi_prev:
                d = row_prev[j - lo_prev] + 1
                if d < best:
                    best = d
            if j > lo:
                d = row[-1] + 1
                if d < best:
                    best = d
            append(best)
        rows.append((lo, row))
        lo_prev, hi_prev, row_prev = lo, hi, row
    return rows


def _solve(a, b):
    n, m = len(a), len(b)
    if n == 0:
        return m, None, 0
    if m == 0:
        return n, None, 0
    radius = max(2, abs(n - m))
    top = max(n, m)
    while True:
        rows = _banded_rows(a, b, radius)
        lo, row = rows[n]
        d = row[m - lo]  # index valid whenever radius >= |n - m|
        if d <= radius or radius >= top:
            return d, rows, radius
        radius = min(top, radius * 2)


def edit_distance(a: tuple[str, ...], b: tuple[str, ...]) -> int:
    """Levenshtein distance with unit insert/delete/substitute costs."""
    d, _, _ = _solve(a, b)
    return d


def align(a: tuple[str, ...], b: tuple[str, ...]) -> list[EditOp]:
    """One minimal-cost alignment of `a` into `b` as a list of EditOps."""
    n, m = len(a), len(b)
    if n == 0:
        return [EditOp(INS, None, t) for t in b]
    if m == 0:
        return [EditOp(DEL, t, None) for t in a]
    _, rows, _ = _solve(a, b)

    inf = n + m + 7

    def cell(i, j):
        if j < 0 or i < 0:
            return inf
        lo, row = rows[i]
        if lo <= j < lo + len(row):
            return row[j - lo]
        return inf

    events = []
    i, j = n, m
    while i > 0 or j > 0:
        v = cell(i, j)
        if i > 0 and j > 0 and a[i - 1] == b[j - 1] and cell(i - 1, j - 1) == v:
            events.append(EditOp(KEEP, a[i - 1], None))
            i -= 1
            j -= 1
        elif i > 0 and j > 0 and a[i - 1] != b[j - 1] and cell(i - 1, j - 1) == v - 1:
            events.append(EditOp(SUB, a[i - 1], b[j - 1]))
            i -= 1
            j -= 1
        elif i > 0 and cell(i - 1, j) == v - 1:
            events.append(EditOp(DEL, a[i - 1], None))
            i -= 1
        else:
            events.append(EditOp(INS, None, b[j - 1]))
            j -= 1
    events.reverse()
    return events
