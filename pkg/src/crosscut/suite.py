"""The acceptance battery, runnable from the command line."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from itertools import permutations
from math import prod

from .branches import ClassCounts, interleave, tail_equal
from .group_action import act, joint_thresholds, respecting_element
from .reduction import (
    all_digraphs,
    encode,
    find_graph_isomorphism,
    graph_isomorphisms,
    make_params,
    roundtrip,
    transport_iso,
)
from .reducts import UnaryStructure, block_partition, cb_reduct
from .structures import (
    check_cross_cutting,
    check_witness,
    e_infinity,
    find_isomorphism,
    full_branch_structure,
    meet_partition,
)

SEED = 20240601


@dataclass
class Result:
    number: int
    name: str
    passed: bool
    detail: str
    elapsed: float = 0.0
    limit: float = None

    def line(self, timings=False) -> str:
        s = f"criterion {self.number} [{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.detail}"
        if timings:
            s += f" ({self.elapsed:.2f}s"
            s += f" / limit {self.limit:g}s)" if self.limit else ")"
        return s


def _timed(number, name, limit, fn):
    t0 = time.perf_counter()
    ok, detail = fn()
    dt = time.perf_counter() - t0
    if limit is not None and dt >= limit:
        ok = False
        detail += f"; exceeded {limit:g}s"
    return Result(number, name, ok, detail, dt, limit)


def roundtrip_battery():
    fails = total = 0
    for k in (3, 4):
        P = make_params(k)
        for G in all_digraphs(k):
            total += 1
            r = roundtrip(G, P)
            if r["verdict"] != "pass":
                fails += 1
    return fails == 0, f"{total} graphs, {fails} failures"


def iff_verdicts(prune=True):
    """Structure-isomorphism verdicts for every ordered pair of 3-vertex digraphs."""
    P = make_params(3)
    graphs = list(all_digraphs(3))
    enc = [encode(G, P)[0] for G in graphs]
    out = {}
    for a, G in enumerate(graphs):
        for b, H in enumerate(graphs):
            w = find_isomorphism(enc[a], enc[b], prune=prune)
            if w is not None and not check_witness(enc[a], enc[b], w.mapping):
                raise AssertionError(f"invalid witness for pair {(a, b)}")
            out[a, b] = (w is not None, find_graph_isomorphism(G, H) is not None)
    return out


def iff_battery(prune=True):
    v = iff_verdicts(prune)
    bad = sum(1 for s, g in v.values() if s != g)
    iso = sum(1 for s, _ in v.values() if s)
    return bad == 0, f"{len(v)} pairs, {iso} isomorphic, {bad} disagreements"


def respect_battery():
    P = make_params(4)
    fam, ns = P.family, P.thresholds
    lit_fail = c3_fail = joint_fail = 0
    for sigma in permutations(range(4)):
        g = respecting_element(fam, sigma)
        images = [act(g, f) for f in fam.members]
        lit_fail += sum(not tail_equal(images[i], fam[sigma[i]], ns[i]) for i in range(4))
        jt = joint_thresholds(fam, sigma)
        joint_fail += sum(not tail_equal(images[i], fam[sigma[i]], jt[i]) for i in range(4))
        for i in range(4):
            for j in range(4):
                if i == j:
                    continue
                cut = max(ns[i], ns[j], ns[sigma[i]], ns[sigma[j]])
                d = act(g, interleave(fam, i, j))
                c3_fail += not tail_equal(d, interleave(fam, sigma[i], sigma[j]), cut)
    detail = (
        f"{24 * 16} checks; vertex checks at N_i: {lit_fail} failures; pair checks: {c3_fail} failures"
        f" (vertex checks at max(N_i, N_sigma(i)): {joint_fail} failures)"
    )
    return lit_fail == 0 and c3_fail == 0, detail


def transport_battery():
    P = make_params(3)
    total = bad = 0
    for G in all_digraphs(3):
        SG, _ = encode(G, P)
        for sigma in graph_isomorphisms(G, G):
            total += 1
            try:
                w = transport_iso(G, G, sigma, P)
            except (AssertionError, ValueError):
                bad += 1
                continue
            bad += not check_witness(SG, SG, w.mapping)
    return bad == 0, f"{total} automorphisms, {bad} failures"


def crosscut_battery():
    counts = ClassCounts((2, 3, 4))
    S = full_branch_structure(counts)
    ok, failing = check_cross_cutting(S, counts)
    got = []
    for F in ((0,), (1,), (2,), (0, 1), (0, 2), (1, 2), (0, 1, 2)):
        got.append(meet_partition(S, F).count)
    want = [prod(counts[n] for n in F) for F in ((0,), (1,), (2,), (0, 1), (0, 2), (1, 2), (0, 1, 2))]
    ok = ok and got == want == [2, 3, 4, 6, 8, 12, 24]
    return ok, f"class counts {got}" + ("" if failing is None else f", first failing F={failing}")


def blocks_battery():
    bp = block_partition(ClassCounts((2,) * 6))
    ok = bp.blocks == ((0, 1), (1, 3), (3, 6)) and bp.products == (2, 4, 8)
    rng = random.Random(SEED)
    bad = 0
    for _ in range(200):
        counts = ClassCounts(tuple(rng.randint(2, 9) for _ in range(rng.randint(1, 20))))
        bp2 = block_partition(counts)
        tiles = bp2.blocks
        end = tiles[-1][1] if tiles else 0
        good = all(a < b for a, b in zip(bp2.products, bp2.products[1:]))
        good &= bool(tiles) and tiles[0][0] == 0 and all(s < e for s, e in tiles)
        good &= all(tiles[t][1] == tiles[t + 1][0] for t in range(len(tiles) - 1))
        good &= all(p == prod(counts[s:e]) for (s, e), p in zip(tiles, bp2.products))
        good &= bp2.dropped is None if end == len(counts) else bp2.dropped == (end, len(counts))
        bad += not good
    return ok and bad == 0, f"six 2s -> blocks {[list(b) for b in bp.blocks]} products {list(bp.products)}; 200 random, {bad} violations"


def cb_battery():
    U = UnaryStructure.all_patterns(3)
    S = cb_reduct(U)
    counts = [S.class_count(n) for n in range(3)]
    meet = e_infinity(S).count
    ok = counts == [2, 2, 2] and meet == 8
    rng = random.Random(SEED)
    bad = 0
    for _ in range(100):
        m = rng.randint(1, 6)
        rows = [tuple(rng.randint(0, 1) for _ in range(m)) for _ in range(rng.randint(1, 12))]
        T = cb_reduct(UnaryStructure(len(rows), m, tuple(rows)))
        bad += any(T.class_count(n) > 2 for n in range(m))
    return ok and bad == 0, f"full pattern structure: classes {counts}, meet {meet}; 100 random, {bad} violations"


def oracle_battery():
    with_p = iff_verdicts(prune=True)
    without = iff_verdicts(prune=False)
    diff = sum(1 for key in with_p if with_p[key] != without[key])
    return diff == 0, f"{len(with_p)} pairs re-run without pruning, {diff} verdict changes"


CRITERIA = [
    (1, "encode/decode round trip", 10.0, roundtrip_battery),
    (2, "iff over 3-vertex pairs", 60.0, iff_battery),
    (3, "respecting elements", 1.0, respect_battery),
    (4, "transported automorphisms", None, transport_battery),
    (5, "cross-cutting counts", None, crosscut_battery),
    (6, "block partition", None, blocks_battery),
    (7, "two-class reduct", None, cb_battery),
    (8, "pruning-free oracle", None, oracle_battery),
]


def run_suite(only=None, prune=True):
    """Run the criteria (all, or those numbered in ``only``).

    ``prune=False`` runs criterion 2 with the unpruned isomorphism search.
    """
    results = []
    for number, name, limit, fn in CRITERIA:
        if only and number not in only:
            continue
        if number == 2 and not prune:
            fn = lambda: iff_battery(prune=False)  # noqa: E731
        results.append(_timed(number, name, limit, fn))
    return results
