"""Branch-space combinatorics at finite depth.

A branch of depth ``m`` is a tuple ``(v_0, ..., v_{m-1})`` with
``1 <= v_n <= counts[n]``.  Values are 1-based throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

Branch = tuple  # tuple[int, ...]


class DepthError(ValueError):
    """Raised when the truncation depth cannot hold the requested family."""


@dataclass(frozen=True)
class ClassCounts:
    """Number of classes of each relation, ``counts[n] = h(n)``."""

    counts: tuple

    def __post_init__(self):
        if len(self.counts) == 0:
            raise ValueError("class counts must be nonempty")
        for n, c in enumerate(self.counts):
            if int(c) != c or c < 1:
                raise ValueError(f"class count at {n} must be a positive integer, got {c!r}")

    @property
    def m(self) -> int:
        return len(self.counts)

    @property
    def strictly_increasing(self) -> bool:
        return all(a < b for a, b in zip(self.counts, self.counts[1:]))

    @property
    def all_at_least_two(self) -> bool:
        return all(c >= 2 for c in self.counts)

    def __getitem__(self, n):
        return self.counts[n]

    def __len__(self):
        return len(self.counts)

    def __iter__(self):
        return iter(self.counts)

    def truncate(self, m: int) -> "ClassCounts":
        if m > len(self.counts):
            raise DepthError(f"depth {m} exceeds the {len(self.counts)} available class counts")
        return ClassCounts(self.counts[:m])


def validate_counts(raw: Sequence[int], require_strict: bool = False) -> ClassCounts:
    """Check a raw sequence of class counts and wrap it.

    With ``require_strict`` the sequence must be strictly increasing, which is
    what the graph encoding needs; without it any positive counts are accepted
    (the block-partition route only needs every entry to be at least 2).
    """
    raw = tuple(raw)
    if not raw:
        raise ValueError("class counts must be nonempty")
    cc = ClassCounts(tuple(int(c) for c in raw))
    if require_strict and not cc.strictly_increasing:
        raise ValueError(f"class counts {list(raw)} are not strictly increasing")
    return cc


def default_counts(m: int) -> ClassCounts:
    """The smallest strictly increasing counts with ``h(0) = 2``."""
    return ClassCounts(tuple(n + 2 for n in range(m)))


def check_branch(values: Sequence[int], counts: ClassCounts) -> Branch:
    values = tuple(values)
    if len(values) != len(counts):
        raise ValueError(f"branch has length {len(values)}, expected {len(counts)}")
    for n, v in enumerate(values):
        if not 1 <= v <= counts[n]:
            raise ValueError(f"branch value {v} at coordinate {n} outside 1..{counts[n]}")
    return values


def thresholds(counts: ClassCounts, k: int) -> list:
    """Return ``N_0..N_{k-1}`` where ``N_i`` is the least ``N`` with ``counts[N] > i``.

    From ``N_i`` on, every coordinate has room for ``i + 1`` distinct values.
    """
    if not counts.strictly_increasing:
        raise ValueError("thresholds need strictly increasing class counts")
    if k < 0:
        raise ValueError("k must be non-negative")
    out = []
    n = 0
    for i in range(k):
        while n < len(counts) and counts[n] <= i:
            n += 1
        if n == len(counts):
            raise DepthError(
                f"depth too small: no coordinate among {len(counts)} has more than {i} classes"
            )
        out.append(n)
    return out


@dataclass(frozen=True)
class BranchFamily:
    """Pairwise eventually-different branches ``f_0..f_{k-1}``."""

    counts: ClassCounts
    members: tuple
    thresholds: tuple

    @property
    def k(self) -> int:
        return len(self.members)

    @property
    def m(self) -> int:
        return len(self.counts)

    @property
    def cutoff(self) -> int:
        return self.thresholds[-1] if self.thresholds else 0

    def __getitem__(self, i) -> Branch:
        return self.members[i]

    def to_json(self) -> dict:
        return {
            "counts": list(self.counts),
            "k": self.k,
            "m": self.m,
            "members": [list(f) for f in self.members],
        }


def build_family(counts: ClassCounts, k: int, m: int) -> BranchFamily:
    """Greedy family: ``f_i`` is 1 below ``N_i`` and the least unused value from ``N_i`` on."""
    if m > len(counts):
        raise DepthError(f"depth {m} exceeds the {len(counts)} available class counts")
    counts = counts.truncate(m)
    ns = thresholds(counts, k)
    cutoff = ns[-1] if ns else 0
    if m < cutoff + 2:
        raise DepthError(f"depth {m} is below cutoff + 2 = {cutoff + 2}")
    members = []
    for i in range(k):
        f = []
        for n in range(m):
            if n < ns[i]:
                f.append(1)
                continue
            used = {g[n] for g in members}
            v = 1
            while v in used:
                v += 1
            f.append(v)
        members.append(tuple(f))
    return BranchFamily(counts, tuple(members), tuple(ns))


def interleave(fam: BranchFamily, i: int, j: int) -> Branch:
    """``d_{i,j}``: ``f_i`` on even coordinates, ``f_j`` on odd ones."""
    if i == j:
        raise ValueError(f"interleave needs distinct indices, got ({i}, {j})")
    if not (0 <= i < fam.k and 0 <= j < fam.k):
        raise IndexError(f"indices ({i}, {j}) out of range for a family of {fam.k}")
    fi, fj = fam[i], fam[j]
    return tuple(fi[n] if n % 2 == 0 else fj[n] for n in range(fam.m))


def tail_equal(f: Sequence[int], g: Sequence[int], c: int) -> bool:
    """True iff ``f`` and ``g`` agree on every coordinate in ``[c, m)``."""
    if len(f) != len(g):
        raise ValueError(f"branch lengths differ: {len(f)} vs {len(g)}")
    if not 0 <= c <= len(f):
        raise ValueError(f"cutoff {c} outside 0..{len(f)}")
    return all(f[n] == g[n] for n in range(c, len(f)))


def tail_class(f: Sequence[int], counts: ClassCounts, c: int) -> list:
    """Every branch agreeing with ``f`` on ``[c, m)``, in lexicographic order.

    This is the depth-``m`` stand-in for the class of ``f`` under eventual
    equality: the low coordinates range freely.
    """
    tail = tuple(f[c:])
    heads = product(*(range(1, counts[n] + 1) for n in range(c)))
    return [tuple(h) + tail for h in heads]
