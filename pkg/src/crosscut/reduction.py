"""Graphs into cross-cutting equivalence structures, and back.

Vertex ``i`` becomes the tail class of ``f_i`` (singleton ``E_inf``-classes);
a directed edge ``(i, j)`` becomes the tail class of ``d_{i,j}``, each branch
carried by a pair ``a_d, b_d`` that no relation separates.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, replace
from itertools import permutations, product
from typing import Optional, Sequence

from .branches import (
    BranchFamily,
    ClassCounts,
    DepthError,
    build_family,
    default_counts,
    interleave,
    tail_class,
    thresholds,
)
from .group_action import induced_map, respecting_element
from .structures import EqStructure, IsoWitness, build_ambient, check_witness, e_infinity

GRAPH_ISO_MAX_VERTICES = 8


class MalformedEncoding(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    vertices: int
    edges: frozenset
    directed: bool = True

    def __post_init__(self):
        edges = frozenset((int(i), int(j)) for i, j in self.edges)
        for i, j in edges:
            if i == j:
                raise ValueError(f"loop edge ({i}, {j}) in an irreflexive graph")
            if not (0 <= i < self.vertices and 0 <= j < self.vertices):
                raise ValueError(f"edge ({i}, {j}) outside vertices 0..{self.vertices - 1}")
        if not self.directed:
            edges = edges | {(j, i) for i, j in edges}
        object.__setattr__(self, "edges", edges)

    def sorted_edges(self) -> list:
        return sorted(self.edges)

    def relabel(self, sigma: Sequence[int]) -> "Graph":
        return Graph(self.vertices, frozenset((sigma[i], sigma[j]) for i, j in self.edges), self.directed)

    def to_json(self) -> dict:
        return {"vertices": self.vertices, "edges": [list(e) for e in self.sorted_edges()], "directed": self.directed}

    @classmethod
    def from_json(cls, doc: dict) -> "Graph":
        try:
            return cls(int(doc["vertices"]), frozenset(tuple(e) for e in doc["edges"]), bool(doc.get("directed", True)))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed graph document: {exc}") from None


def load_graph(path) -> Graph:
    with open(path) as fh:
        return Graph.from_json(json.load(fh))


def all_digraphs(k: int):
    """Every directed irreflexive graph on ``k`` vertices, in a fixed order."""
    pairs = [(i, j) for i in range(k) for j in range(k) if i != j]
    for bits in product((0, 1), repeat=len(pairs)):
        yield Graph(k, frozenset(p for p, b in zip(pairs, bits) if b))


def is_graph_isomorphism(G: Graph, H: Graph, sigma: Sequence[int]) -> bool:
    if G.vertices != H.vertices or sorted(sigma) != list(range(G.vertices)):
        return False
    return G.relabel(sigma).edges == H.edges


def graph_isomorphisms(G: Graph, H: Graph):
    """All vertex bijections carrying ``G`` onto ``H``, by brute force."""
    if G.vertices != H.vertices or len(G.edges) != len(H.edges):
        return
    if G.vertices > GRAPH_ISO_MAX_VERTICES:
        raise ValueError(f"brute-force graph isomorphism capped at {GRAPH_ISO_MAX_VERTICES} vertices")
    for sigma in permutations(range(G.vertices)):
        if G.relabel(sigma).edges == H.edges:
            yield sigma


def find_graph_isomorphism(G: Graph, H: Graph) -> Optional[tuple]:
    return next(graph_isomorphisms(G, H), None)


@dataclass(frozen=True)
class ReductionParams:
    """Class counts, vertex count and depth, plus the derived branch family.

    ``closure`` controls whether every branch is accompanied by its whole tail
    class (all variants below the cutoff).  Without it only the canonical
    representatives are used and the low coordinates can tell the vertices
    apart, which breaks isomorphism invariance once the cutoff is positive.
    """

    counts: ClassCounts
    k: int
    m: int
    family: BranchFamily
    closure: bool = True

    @property
    def cutoff(self) -> int:
        return self.family.cutoff

    @property
    def thresholds(self) -> tuple:
        return self.family.thresholds

    def to_json(self) -> dict:
        return {
            "counts": list(self.counts),
            "k": self.k,
            "m": self.m,
            "cutoff": self.cutoff,
            "thresholds": list(self.thresholds),
            "closure": self.closure,
        }


def make_params(k: int, counts: Optional[Sequence[int]] = None, m: Optional[int] = None, closure: bool = True):
    """Build parameters, filling in defaults.

    Default counts are ``n + 2``; default depth is ``max(4, N_{k-1} + 2)``,
    shortened to the supplied counts when those are explicit and too few.
    """
    if k < 0:
        raise ValueError("vertex count must be non-negative")
    if counts is None:
        c = max(0, k - 2)
        m = max(4, c + 2) if m is None else m
        cc = default_counts(m)
    else:
        cc = ClassCounts(tuple(int(x) for x in counts))
        if not cc.strictly_increasing:
            raise ValueError(f"class counts {list(cc)} are not strictly increasing")
        ns = thresholds(cc, k)
        c = ns[-1] if ns else 0
        if m is None:
            m = min(len(cc), max(4, c + 2))
        if m > len(cc):
            raise DepthError(f"depth {m} exceeds the {len(cc)} supplied class counts")
        cc = cc.truncate(m)
    fam = build_family(cc, k, m)
    return ReductionParams(cc, k, m, fam, closure)


def _expand(P: ReductionParams, f):
    return tail_class(f, P.counts, P.cutoff) if P.closure else [f]


def encode(G: Graph, P: ReductionParams):
    """Return ``(structure, roles)``.

    ``roles[u]`` is ``("vertex", i)`` or ``("edge", i, j)``.  The structure
    carries the branch/tag certificate and the parameters in its metadata.
    """
    if G.vertices != P.k:
        raise ValueError(f"graph has {G.vertices} vertices, parameters expect {P.k}")
    elements, roles = [], []
    for i in range(P.k):
        for b in _expand(P, P.family[i]):
            elements.append((b, "A"))
            roles.append(("vertex", i))
    for i, j in G.sorted_edges():
        for b in _expand(P, interleave(P.family, i, j)):
            elements.extend([(b, "A"), (b, "B")])
            roles.extend([("edge", i, j)] * 2)
    S = build_ambient(P.counts, elements)
    return replace(S, meta={"params": P.to_json()}), tuple(roles)


def _decode(S: EqStructure, P: ReductionParams):
    if S.m != P.m:
        raise MalformedEncoding(f"structure has {S.m} relations, parameters expect {P.m}")
    c, m = P.cutoff, P.m
    einf = e_infinity(S)
    classes = einf.classes()
    big = [cl for cl in classes if len(cl) > 2]
    if big:
        raise MalformedEncoding(f"E_inf class of size {len(big[0])} (elements {big[0]})")

    def tail_key(u):
        return tuple(S.labels[n][u] for n in range(c, m))

    groups = {}
    for cl in classes:
        if len(cl) == 1:
            groups.setdefault(tail_key(cl[0]), []).append(cl[0])

    def sort_key(item):
        key, members = item
        if S.origin is not None:
            return (0, min(S.origin[u][0][c:] for u in members))
        return (1, key)

    ordered = sorted(groups.items(), key=sort_key)
    vkeys = [key for key, _ in ordered]
    vgroups = [sorted(members) for _, members in ordered]

    def match(key, parity):
        idx = [n - c for n in range(c, m) if n % 2 == parity]
        hits = [v for v, vk in enumerate(vkeys) if all(vk[t] == key[t] for t in idx)]
        return hits

    edges = set()
    for cl in classes:
        if len(cl) != 2:
            continue
        key = tail_key(cl[0])
        ev, od = match(key, 0), match(key, 1)
        if len(ev) != 1 or len(od) != 1:
            raise MalformedEncoding(
                f"doubleton {cl} matches {len(ev)} vertices on the even tail and {len(od)} on the odd tail"
            )
        if ev[0] == od[0]:
            raise MalformedEncoding(f"doubleton {cl} decodes to a loop at vertex {ev[0]}")
        edges.add((ev[0], od[0]))
    return Graph(len(vgroups), frozenset(edges)), vgroups


def decode(S: EqStructure, P: ReductionParams) -> Graph:
    """Read a graph back off a structure using its relations only.

    Vertices are the tail classes of singleton ``E_inf``-classes, numbered in
    lexicographic order of their branches (or of their tail labels when the
    structure has no certificate).
    """
    return _decode(S, P)[0]


def decode_with_groups(S: EqStructure, P: ReductionParams):
    return _decode(S, P)


def transport_iso(G: Graph, H: Graph, sigma: Sequence[int], P: ReductionParams) -> IsoWitness:
    """Turn a graph isomorphism ``G -> H`` into a structure isomorphism of their encodings."""
    sigma = tuple(int(x) for x in sigma)
    if not is_graph_isomorphism(G, H, sigma):
        raise ValueError(f"{list(sigma)} is not an isomorphism between the given graphs")
    SG, _ = encode(G, P)
    SH, _ = encode(H, P)
    g = respecting_element(P.family, sigma)
    mapping = induced_map(g, SG, SH)
    if not check_witness(SG, SH, mapping):
        raise AssertionError("transported map failed the witness check")
    return IsoWitness(tuple(mapping))


def relabel_through_certificate(decoded: Graph, groups, roles) -> Graph:
    """Rename decoded vertices to the original indices recorded in ``roles``."""
    back = []
    for members in groups:
        origins = {roles[u] for u in members}
        if len(origins) != 1:
            raise MalformedEncoding(f"decoded vertex spans several originals: {sorted(origins)}")
        back.append(origins.pop()[1])
    return decoded.relabel(back)


def roundtrip(G: Graph, P: ReductionParams, check_iso: bool = True) -> dict:
    S, roles = encode(G, P)
    H, groups = decode_with_groups(S, P)
    exact = relabel_through_certificate(H, groups, roles).edges == G.edges and H.vertices == G.vertices
    iso = None
    if check_iso and G.vertices <= GRAPH_ISO_MAX_VERTICES:
        iso = find_graph_isomorphism(G, H) is not None
    hist = Counter(len(cl) for cl in e_infinity(S).classes())
    return {
        "verdict": "pass" if exact and iso is not False else "fail",
        "exact": exact,
        "isomorphic": iso,
        "size": S.size,
        "histogram": dict(sorted(hist.items())),
        "params": P.to_json(),
    }
