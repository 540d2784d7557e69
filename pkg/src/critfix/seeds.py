"""Deterministic seed derivation.

Every randomized operation in the package takes an integer seed and derives
per-item seeds through `derive`, a splitmix64-style mixer folded over the
(seed, *path) components.  Deriving item seeds instead of sharing one RNG
stream means work can be split across processes (or reordered) without
changing any output.
"""

_MASK = (1 << 64) - 1


def _mix(z: int) -> int:
    # splitmix64 finalizer
    z = (z + 0x9E3779B97F4A7C15) & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return (z ^ (z >> 31)) & _MASK


def derive(seed: int, *path: int) -> int:
    """Derive a 64-bit sub-seed from a root seed and an index path."""
    z = _mix(seed & _MASK)
    for p in path:
        z = _mix(z ^ _mix(p & _MASK))
    return z
