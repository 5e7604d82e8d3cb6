"""Finite structures whose relations are all equivalence relations.

Each relation is stored as a row of class labels, one per element, normalized
so labels appear as 0, 1, 2, ... in order of first occurrence.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations, product
from math import prod
from typing import Iterable, Optional, Sequence

from . import kernels
from .branches import ClassCounts, check_branch

CROSSCUT_MAX_RELATIONS = 16
ISO_MAX_SIZE = 64

TAGS = ("A", "B")


class BoundError(ValueError):
    """An exponential procedure was asked to run beyond its configured bound."""


@dataclass(frozen=True)
class Partition:
    labels: tuple
    count: int

    def classes(self) -> list:
        out = [[] for _ in range(self.count)]
        for u, lab in enumerate(self.labels):
            out[lab].append(u)
        return out

    def class_sizes(self) -> Counter:
        return Counter(Counter(self.labels).values())


@dataclass(frozen=True)
class EqStructure:
    """A finite structure in the language ``{E_0, ..., E_{m-1}}``.

    ``origin`` optionally records, per element, the ``(branch, tag)`` pair it
    was built from; it is a certificate only and plays no part in the
    relations themselves.
    """

    size: int
    labels: tuple
    origin: Optional[tuple] = None
    names: Optional[tuple] = None
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        rows = tuple(tuple(kernels.normalize(row)) for row in self.labels)
        for n, row in enumerate(rows):
            if len(row) != self.size:
                raise ValueError(f"relation {n} has {len(row)} labels for {self.size} elements")
        object.__setattr__(self, "labels", rows)
        if self.origin is not None:
            origin = tuple((tuple(b), t) for b, t in self.origin)
            if len(origin) != self.size:
                raise ValueError("certificate length does not match structure size")
            for _, t in origin:
                if t not in TAGS:
                    raise ValueError(f"unknown tag {t!r}")
            object.__setattr__(self, "origin", origin)
        if self.names is None:
            object.__setattr__(self, "names", tuple(f"E{n}" for n in range(len(rows))))
        elif len(self.names) != len(rows):
            raise ValueError("one name per relation required")

    @property
    def m(self) -> int:
        return len(self.labels)

    def class_count(self, n: int) -> int:
        row = self.labels[n]
        return max(row) + 1 if row else 0

    # -- serialization --------------------------------------------------

    def to_json(self) -> dict:
        doc = {
            "size": self.size,
            "relations": [
                {"name": name, "labels": list(row)} for name, row in zip(self.names, self.labels)
            ],
        }
        if self.origin is not None:
            doc["branches"] = [list(b) for b, _ in self.origin]
            doc["tags"] = [t for _, t in self.origin]
        if self.meta:
            doc.update(self.meta)
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "EqStructure":
        try:
            size = int(doc["size"])
            rels = doc["relations"]
            labels = tuple(tuple(int(x) for x in r["labels"]) for r in rels)
            names = tuple(str(r.get("name", f"E{n}")) for n, r in enumerate(rels))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed structure document: {exc}") from None
        origin = None
        if "branches" in doc:
            branches = doc["branches"]
            tags = doc.get("tags", ["A"] * len(branches))
            if len(tags) != len(branches):
                raise ValueError("branches and tags differ in length")
            origin = tuple((tuple(int(x) for x in b), t) for b, t in zip(branches, tags))
        meta = {k: v for k, v in doc.items() if k not in ("size", "relations", "branches", "tags")}
        return cls(size, labels, origin, names, meta)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


@dataclass(frozen=True)
class IsoWitness:
    mapping: tuple

    def __getitem__(self, u):
        return self.mapping[u]

    def __len__(self):
        return len(self.mapping)


def build_ambient(counts: ClassCounts, elements: Iterable) -> EqStructure:
    """Structure on tagged branches: ``E_n`` relates two elements iff their branches agree at ``n``."""
    elements = [(check_branch(b, counts), t) for b, t in elements]
    seen = set()
    for e in elements:
        if e[1] not in TAGS:
            raise ValueError(f"unknown tag {e[1]!r}")
        if e in seen:
            raise ValueError(f"duplicate element {e[1].lower()}_{list(e[0])}")
        seen.add(e)
    labels = tuple(tuple(b[n] for b, _ in elements) for n in range(len(counts)))
    return EqStructure(len(elements), labels, tuple(elements))


def full_branch_structure(counts: ClassCounts) -> EqStructure:
    """One ``A``-element per branch of the whole (finite) branch space."""
    branches = product(*(range(1, c + 1) for c in counts))
    return build_ambient(counts, ((b, "A") for b in branches))


def meet_partition(S: EqStructure, F: Iterable[int]) -> Partition:
    """Common refinement of the relations indexed by ``F``.

    An empty ``F`` gives the one-class partition.
    """
    F = sorted(set(F))
    for n in F:
        if not 0 <= n < S.m:
            raise IndexError(f"relation index {n} outside 0..{S.m - 1}")
    labels = kernels.meet_labels([S.labels[n] for n in F], S.size)
    return Partition(tuple(labels), (max(labels) + 1) if labels else 0)


def e_infinity(S: EqStructure) -> Partition:
    return meet_partition(S, range(S.m))


def check_cross_cutting(S: EqStructure, counts: ClassCounts, max_relations: int = CROSSCUT_MAX_RELATIONS):
    """Verify every nonempty meet has the product number of classes.

    Returns ``(True, None)`` or ``(False, F)`` with the first failing index set
    in order of increasing size.
    """
    if S.m > max_relations:
        raise BoundError(f"{S.m} relations exceed the cross-cut bound of {max_relations}")
    if len(counts) != S.m:
        raise ValueError(f"{len(counts)} class counts for {S.m} relations")
    for r in range(1, S.m + 1):
        for F in combinations(range(S.m), r):
            if meet_partition(S, F).count != prod(counts[n] for n in F):
                return False, F
    return True, None


def check_witness(S: EqStructure, T: EqStructure, mapping: Sequence[int]) -> bool:
    """Independent check that ``mapping`` is an isomorphism from ``S`` onto ``T``.

    Works from the raw labels pair by pair; shares no code with the search.
    """
    if S.size != T.size or S.m != T.m or len(mapping) != S.size:
        return False
    if sorted(mapping) != list(range(T.size)):
        return False
    for n in range(S.m):
        s, t = S.labels[n], T.labels[n]
        for u in range(S.size):
            for w in range(u + 1, S.size):
                if (s[u] == s[w]) != (t[mapping[u]] == t[mapping[w]]):
                    return False
    return True


def _class_members(row):
    groups = {}
    for u, lab in enumerate(row):
        groups.setdefault(lab, []).append(u)
    return groups


def _refine_colors(S: EqStructure, T: EqStructure):
    """Colour refinement run jointly on both structures so colours are comparable."""
    einf_s, einf_t = e_infinity(S), e_infinity(T)
    parts = []
    for X, einf in ((S, einf_s), (T, einf_t)):
        members = [_class_members(row) for row in X.labels]
        esz = Counter(einf.labels)
        init = [
            (esz[einf.labels[u]],) + tuple(len(members[n][X.labels[n][u]]) for n in range(X.m))
            for u in range(X.size)
        ]
        parts.append((X, members, init))

    def compress(keys_s, keys_t):
        table = {key: i for i, key in enumerate(sorted(set(keys_s) | set(keys_t)))}
        return [table[k] for k in keys_s], [table[k] for k in keys_t], len(table)

    cs, ct, ncol = compress(parts[0][2], parts[1][2])
    while True:
        keys = []
        for (X, members, _), col in zip(parts, (cs, ct)):
            keys.append(
                [
                    (col[u],)
                    + tuple(
                        tuple(sorted(col[w] for w in members[n][X.labels[n][u]]))
                        for n in range(X.m)
                    )
                    for u in range(X.size)
                ]
            )
        ns, nt, nnew = compress(keys[0], keys[1])
        if nnew == ncol:
            return cs, ct
        cs, ct, ncol = ns, nt, nnew


def _size_profile(X: EqStructure):
    per_rel = tuple(tuple(sorted(Counter(row).values())) for row in X.labels)
    return per_rel, tuple(sorted(Counter(e_infinity(X).labels).values()))


def find_isomorphism(
    S: EqStructure, T: EqStructure, prune: bool = True, max_size: int = ISO_MAX_SIZE
) -> Optional[IsoWitness]:
    """Search for an isomorphism ``S -> T``; None when there is none.

    With ``prune`` the search first compares class-size profiles and then
    restricts each element's candidates by colour refinement.  Without it every
    target element is a candidate and only the pairwise relation check runs.
    Either way the result is deterministic.
    """
    if S.size > max_size or T.size > max_size:
        raise BoundError(f"structure sizes {S.size}/{T.size} exceed the bound of {max_size}")
    if S.m != T.m:
        raise ValueError(f"relation counts differ: {S.m} vs {T.m}")
    if S.size != T.size:
        return None
    n = S.size
    if prune:
        if _size_profile(S) != _size_profile(T):
            return None
        cs, ct = _refine_colors(S, T)
        if Counter(cs) != Counter(ct):
            return None
        by_color = {}
        for v, c in enumerate(ct):
            by_color.setdefault(c, []).append(v)
        order = sorted(range(n), key=lambda u: (len(by_color[cs[u]]), cs[u], u))
        cand_lists = [by_color[cs[u]] for u in order]
    else:
        order = list(range(n))
        cand_lists = [list(range(n))] * n
    cand_start = [0]
    cand_flat = []
    for lst in cand_lists:
        cand_flat.extend(lst)
        cand_start.append(len(cand_flat))
    mapping = kernels.backtrack(
        [list(r) for r in S.labels], [list(r) for r in T.labels], order, cand_start, cand_flat, n
    )
    return None if mapping is None else IsoWitness(tuple(mapping))


def load_structure(path) -> EqStructure:
    with open(path) as fh:
        return EqStructure.from_json(json.load(fh))


def save_structure(S: EqStructure, path) -> None:
    with open(path, "w") as fh:
        json.dump(S.to_json(), fh, sort_keys=True)
        fh.write("\n")
