"""Reducts: block coarsening to strictly increasing class counts, and two-class
relations read off the prefix tree of a unary-predicate structure."""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import prod
from typing import Optional, Sequence

from .branches import ClassCounts
from .structures import EqStructure, meet_partition


@dataclass(frozen=True)
class BlockPartition:
    """Consecutive intervals ``[start, end)`` with strictly increasing class-count products."""

    blocks: tuple
    products: tuple
    dropped: Optional[tuple] = None

    def indices(self, n: int) -> range:
        return range(*self.blocks[n])

    def __len__(self):
        return len(self.blocks)

    def to_json(self) -> dict:
        return {
            "blocks": [list(b) for b in self.blocks],
            "products": list(self.products),
            "dropped": list(self.dropped) if self.dropped else None,
        }

    def compose(self, outer: "BlockPartition") -> "BlockPartition":
        """The partition obtained by grouping this partition's blocks along ``outer``."""
        blocks, products = [], []
        for s, e in outer.blocks:
            blocks.append((self.blocks[s][0], self.blocks[e - 1][1]))
            products.append(prod(self.products[s:e]))
        return BlockPartition(tuple(blocks), tuple(products))


def block_partition(counts: ClassCounts) -> BlockPartition:
    """Greedy shortest blocks whose products strictly increase.

    Each block is the shortest interval after the previous one whose product
    exceeds the previous block's product (the first must exceed 1).  A trailing
    stretch that cannot reach that product is dropped and reported.
    """
    for n, c in enumerate(counts):
        if c < 2:
            raise ValueError(f"class count {c} at {n} is below 2")
    blocks, products = [], []
    start, last = 0, 1
    while start < len(counts):
        end, p = start, 1
        while end < len(counts) and p <= last:
            p *= counts[end]
            end += 1
        if p <= last:
            return BlockPartition(tuple(blocks), tuple(products), (start, len(counts)))
        blocks.append((start, end))
        products.append(p)
        start, last = end, p
    return BlockPartition(tuple(blocks), tuple(products))


def coarsen(S: EqStructure, bp: BlockPartition) -> EqStructure:
    """One relation per block, the meet of the block's relations."""
    rows, names = [], []
    for s, e in bp.blocks:
        if not (0 <= s < e <= S.m):
            raise IndexError(f"block [{s}, {e}) outside relations 0..{S.m - 1}")
        rows.append(meet_partition(S, range(s, e)).labels)
        names.append("E*" + "".join(f"_{n}" for n in range(s, e)))
    return EqStructure(S.size, tuple(rows), S.origin, tuple(names))


@dataclass(frozen=True)
class UnaryStructure:
    """Elements described by their memberships in ``U_0..U_{m-1}``."""

    size: int
    m: int
    bits: tuple

    def __post_init__(self):
        bits = tuple(tuple(int(b) for b in row) for row in self.bits)
        if len(bits) != self.size:
            raise ValueError(f"{len(bits)} bit rows for {self.size} elements")
        for row in bits:
            if len(row) != self.m or any(b not in (0, 1) for b in row):
                raise ValueError(f"bit row {list(row)} is not a 0/1 sequence of length {self.m}")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def all_patterns(cls, m: int) -> "UnaryStructure":
        rows = [tuple((x >> (m - 1 - i)) & 1 for i in range(m)) for x in range(2**m)]
        return cls(len(rows), m, tuple(rows))

    def to_json(self) -> dict:
        return {"size": self.size, "predicates": self.m, "bits": [list(r) for r in self.bits]}

    @classmethod
    def from_json(cls, doc: dict) -> "UnaryStructure":
        try:
            return cls(int(doc["size"]), int(doc["predicates"]), tuple(tuple(r) for r in doc["bits"]))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed unary structure document: {exc}") from None


def load_unary(path) -> UnaryStructure:
    with open(path) as fh:
        return UnaryStructure.from_json(json.load(fh))


def node_formula(eta: Sequence[int]):
    """The tree formula for node ``eta``: ``U_i(x)`` holds exactly when ``eta[i] == 1``."""
    eta = tuple(eta)
    return lambda bits: all(bits[i] == eta[i] for i in range(len(eta)))


def delta_value(U: UnaryStructure, n: int, x: int) -> int:
    """0 if ``x`` goes left at level ``n`` of the tree, 1 if it goes right.

    Going left means: every level-``n`` node whose formula ``x`` satisfies has
    its 0-child satisfied too.  In a unary structure ``x`` satisfies exactly
    one level-``n`` node, its own bit prefix, so only that node needs checking.
    """
    if not 0 <= n < U.m:
        raise IndexError(f"predicate index {n} outside 0..{U.m - 1}")
    if not 0 <= x < U.size:
        raise IndexError(f"element {x} outside 0..{U.size - 1}")
    bits = U.bits[x]
    prefix = bits[:n]
    left = node_formula(prefix + (0,))(bits)
    right = node_formula(prefix + (1,))(bits)
    if left == right:
        raise AssertionError(f"element {x} is not split by level {n}")
    return 0 if left else 1


def cb_reduct(U: UnaryStructure) -> EqStructure:
    """Equivalence relations ``E_n``: same side at level ``n`` of the tree."""
    rows = tuple(tuple(delta_value(U, n, x) for x in range(U.size)) for n in range(U.m))
    return EqStructure(U.size, rows)
