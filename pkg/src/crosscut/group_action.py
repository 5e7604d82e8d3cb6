"""The truncated product of symmetric groups and its action on branches."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .branches import Branch, BranchFamily, ClassCounts
from .structures import check_witness


class ClosureError(ValueError):
    """A branch image falls outside the structure being acted on."""

    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


@dataclass(frozen=True)
class GroupElement:
    """One permutation per coordinate.

    ``perms[n][v - 1]`` is the image of ``v`` under the ``n``-th permutation
    (values are 1-based, like branch values).
    """

    perms: tuple

    def __post_init__(self):
        for n, p in enumerate(self.perms):
            if sorted(p) != list(range(1, len(p) + 1)):
                raise ValueError(f"coordinate {n}: {list(p)} is not a permutation of 1..{len(p)}")

    @classmethod
    def identity(cls, counts: ClassCounts) -> "GroupElement":
        return cls(tuple(tuple(range(1, c + 1)) for c in counts))

    @classmethod
    def from_maps(cls, maps: Sequence[Sequence[int]]) -> "GroupElement":
        return cls(tuple(tuple(int(x) for x in p) for p in maps))

    @property
    def m(self) -> int:
        return len(self.perms)

    @property
    def degrees(self) -> tuple:
        return tuple(len(p) for p in self.perms)

    def __call__(self, f: Branch) -> Branch:
        return act(self, f)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        """``(g * h)`` acts as ``h`` first, then ``g``."""
        if self.degrees != other.degrees:
            raise ValueError("cannot compose group elements over different class counts")
        return GroupElement(
            tuple(tuple(p[q[v] - 1] for v in range(len(q))) for p, q in zip(self.perms, other.perms))
        )

    def inverse(self) -> "GroupElement":
        inv = []
        for p in self.perms:
            q = [0] * len(p)
            for v, w in enumerate(p, start=1):
                q[w - 1] = v
            inv.append(tuple(q))
        return GroupElement(tuple(inv))

    def serialize(self) -> str:
        return "\n".join(" ".join(str(x) for x in p) for p in self.perms)

    @classmethod
    def parse(cls, text: str) -> "GroupElement":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        return cls(tuple(tuple(int(x) for x in ln.split()) for ln in lines))


def act(g: GroupElement, f: Sequence[int]) -> Branch:
    """Coordinate-wise image of ``f``."""
    if len(f) != g.m:
        raise ValueError(f"branch length {len(f)} does not match group depth {g.m}")
    out = []
    for n, v in enumerate(f):
        p = g.perms[n]
        if not 1 <= v <= len(p):
            raise ValueError(f"branch value {v} at coordinate {n} outside 1..{len(p)}")
        out.append(p[v - 1])
    return tuple(out)


def joint_thresholds(fam: BranchFamily, sigma: Sequence[int]) -> list:
    """``max(N_i, N_sigma(i))`` for each ``i``.

    From this coordinate on, ``respecting_element`` moves ``f_i`` exactly onto
    ``f_sigma(i)``.
    """
    ns = fam.thresholds
    return [max(ns[i], ns[sigma[i]]) for i in range(fam.k)]


def _check_sigma(sigma, k):
    sigma = tuple(int(x) for x in sigma)
    if sorted(sigma) != list(range(k)):
        raise ValueError(f"{list(sigma)} is not a permutation of 0..{k - 1}")
    return sigma


def respecting_element(fam: BranchFamily, sigma: Sequence[int]) -> GroupElement:
    """Build a group element carrying the tail class of each ``f_i`` to that of ``f_sigma(i)``.

    At coordinate ``n`` the constraint ``f_j(n) -> f_sigma(j)(n)`` is imposed for
    every ``j`` with ``n >= max(N_j, N_sigma(j))``.  Both the sources and the
    targets of the imposed constraints are then pairwise distinct, so the
    partial map is injective; it is completed by pairing leftover sources with
    leftover targets in increasing order.
    """
    sigma = _check_sigma(sigma, fam.k)
    ns = fam.thresholds
    perms = []
    for n in range(fam.m):
        h = fam.counts[n]
        img = {}
        hit = set()
        for j in range(fam.k):
            if n < ns[j] or n < ns[sigma[j]]:
                continue
            src, dst = fam[j][n], fam[sigma[j]][n]
            if src in img or dst in hit:
                raise AssertionError(
                    f"inconsistent constraints at coordinate {n}: {src}->{dst} clashes with {img}"
                )
            img[src] = dst
            hit.add(dst)
        free_src = [v for v in range(1, h + 1) if v not in img]
        free_dst = [v for v in range(1, h + 1) if v not in hit]
        img.update(zip(free_src, free_dst))
        perms.append(tuple(img[v] for v in range(1, h + 1)))
    return GroupElement(tuple(perms))


def induced_map(g: GroupElement, source, target=None) -> list:
    """The element map ``a_f -> a_{g.f}``, ``b_f -> b_{g.f}`` from ``source`` into ``target``.

    Both structures must carry branch/tag certificates.  Raises
    ``ClosureError`` naming the first element whose image is missing.
    """
    target = source if target is None else target
    if source.origin is None or target.origin is None:
        raise ValueError("induced maps need structures with branch certificates")
    where = {(b, t): idx for idx, (b, t) in enumerate(target.origin)}
    mapping = []
    for b, t in source.origin:
        image = (act(g, b), t)
        if image not in where:
            raise ClosureError(
                f"image of {t.lower()}_{list(b)} is {t.lower()}_{list(image[0])}, not in the structure",
                witness=b,
            )
        mapping.append(where[image])
    return mapping


def induced_automorphism(g: GroupElement, structure) -> list:
    """Apply ``g`` to every element of ``structure`` and confirm the result is an automorphism."""
    mapping = induced_map(g, structure)
    if not check_witness(structure, structure, mapping):
        raise AssertionError("induced map is not an automorphism")
    return mapping
