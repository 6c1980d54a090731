"""Set families, Kneser hypergraphs, colorability defect, and chromatic number."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

from .errors import PreconditionError, TheoremViolationError
from .groups import FiniteGroup, make_cyclic
from .zerosum import zero_sum_hyperedge

__all__ = [
    "SetFamily",
    "UniformHypergraph",
    "kneser_hypergraph",
    "colorability_defect",
    "colorability_defect_brute_force",
    "upward_closure",
    "verify_cd_zero_sum",
    "CdVerification",
    "chromatic_number",
]


@dataclass(frozen=True)
class SetFamily:
    """A family of nonempty subsets of the ground set {0, ..., ground_size-1}."""

    ground_size: int
    members: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        seen = set()
        for s in self.members:
            if not s:
                raise PreconditionError("empty member sets are not allowed")
            if not all(0 <= x < self.ground_size for x in s):
                raise PreconditionError(f"member {sorted(s)} leaves the ground set")
            if s in seen:
                raise PreconditionError(f"duplicate member {sorted(s)}")
            seen.add(s)

    @staticmethod
    def of(ground_size: int, sets: Sequence[Sequence[int]]) -> "SetFamily":
        return SetFamily(ground_size, tuple(frozenset(s) for s in sets))

    @staticmethod
    def k_subsets(m: int, k: int) -> "SetFamily":
        return SetFamily.of(m, list(itertools.combinations(range(m), k)))

    @cached_property
    def member_masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << x for x in s) for s in self.members)


@dataclass(frozen=True)
class UniformHypergraph:
    """An n-uniform hypergraph on vertices 0..vertex_count-1."""

    vertex_count: int
    uniformity: int
    edges: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        seen = set()
        for e in self.edges:
            if len(set(e)) != self.uniformity or list(e) != sorted(e):
                raise PreconditionError(
                    f"edge {e} is not a sorted {self.uniformity}-set of distinct vertices"
                )
            if not all(0 <= v < self.vertex_count for v in e):
                raise PreconditionError(f"edge {e} leaves the vertex set")
            if e in seen:
                raise PreconditionError(f"duplicate edge {e}")
            seen.add(e)

    @staticmethod
    def of(vertex_count: int, uniformity: int, edges: Sequence[Sequence[int]]) -> "UniformHypergraph":
        return UniformHypergraph(
            vertex_count, uniformity, tuple(tuple(sorted(e)) for e in edges)
        )

    @staticmethod
    def complete(vertex_count: int, uniformity: int) -> "UniformHypergraph":
        return UniformHypergraph.of(
            vertex_count, uniformity, list(itertools.combinations(range(vertex_count), uniformity))
        )


def kneser_hypergraph(family: SetFamily, n: int) -> UniformHypergraph:
    """Vertices are the family members; hyperedges are n pairwise-disjoint members."""
    if n < 2:
        raise PreconditionError("Kneser uniformity must be >= 2")
    masks = family.member_masks
    edges = []
    for combo in itertools.combinations(range(len(masks)), n):
        union = 0
        for i in combo:
            if union & masks[i]:
                break
            union |= masks[i]
        else:
            edges.append(combo)
    return UniformHypergraph.of(len(family.members), n, edges)


def colorability_defect(family: SetFamily, n: int) -> int:
    """Ground size minus the largest total size of n disjoint member-free subsets.

    Branch and bound over assignments of each ground element to one of the n
    parts or to "unused", with interchangeable parts de-duplicated by opening
    part i+1 only after part i holds an element (so the least elements of the
    nonempty parts increase).  A part may never contain a family member.
    """
    if n < 1:
        raise PreconditionError("part count must be >= 1")
    m = family.ground_size
    members = family.member_masks
    best = 0

    def violates(mask: int) -> bool:
        return any(mem & ~mask == 0 for mem in members)

    parts = [0] * n

    def search(elem: int, used: int, opened: int) -> None:
        nonlocal best
        if used + (m - elem) <= best:
            return
        if elem == m:
            best = max(best, used)
            return
        bit = 1 << elem
        limit = min(opened + 1, n)
        for i in range(limit):
            grown = parts[i] | bit
            if not violates(grown):
                parts[i] = grown
                search(elem + 1, used + 1, max(opened, i + 1))
                parts[i] &= ~bit
        search(elem + 1, used, opened)

    search(0, 0, 0)
    return m - best


def colorability_defect_brute_force(family: SetFamily, n: int) -> int:
    """Oracle: direct enumeration of all part assignments."""
    m = family.ground_size
    members = family.member_masks
    best = 0
    for assignment in itertools.product(range(n + 1), repeat=m):
        masks = [0] * n
        used = 0
        for elem, part in enumerate(assignment):
            if part:
                masks[part - 1] |= 1 << elem
                used += 1
        if used > best and all(
            not (mem & ~mask == 0) for mask in masks for mem in members
        ):
            best = used
    return m - best


def upward_closure(family: SetFamily) -> SetFamily:
    """Add all supersets of each member (within the ground set)."""
    m = family.ground_size
    out: set[frozenset[int]] = set()
    universe = set(range(m))
    for s in family.members:
        rest = sorted(universe - s)
        for k in range(len(rest) + 1):
            for extra in itertools.combinations(rest, k):
                out.add(s | set(extra))
    return SetFamily(m, tuple(sorted(out, key=lambda f: (len(f), sorted(f)))))


@dataclass(frozen=True)
class CdVerification:
    """Outcome of the defect-based zero-sum guarantee check."""

    defect: int
    guarantee_met: bool
    hyperedge: Optional[tuple[int, ...]]


def verify_cd_zero_sum(
    family: SetFamily, n: int, coloring: Sequence[int], group: Optional[FiniteGroup] = None
) -> CdVerification:
    """Search the Kneser hypergraph of the family for a zero-sum hyperedge.

    The colorability defect is computed and reported; when it reaches 2n-1
    a zero-sum hyperedge is guaranteed, and failing to find one raises
    TheoremViolationError.  Below the threshold, None is a legal outcome.
    """
    group = group or make_cyclic(n)
    defect = colorability_defect(family, n)
    guarantee = defect >= 2 * n - 1
    hypergraph = kneser_hypergraph(family, n)
    edge = zero_sum_hyperedge(hypergraph, coloring, group)
    if guarantee and edge is None:
        raise TheoremViolationError(
            f"defect {defect} >= {2 * n - 1} but no zero-sum hyperedge was found"
        )
    return CdVerification(defect=defect, guarantee_met=guarantee, hyperedge=edge)


def chromatic_number(hypergraph: UniformHypergraph) -> int:
    """Least number of colors leaving no hyperedge monochromatic, by exact search.

    Intended for small instances (at most ~20 vertices); color symmetry is
    broken by allowing vertex v only colors up to one past the maximum used
    so far.
    """
    nv = hypergraph.vertex_count
    if nv > 24:
        raise PreconditionError("exact chromatic number supported for at most 24 vertices")
    if not hypergraph.edges:
        return 1
    edges_ending_at: dict[int, list[tuple[int, ...]]] = {v: [] for v in range(nv)}
    for e in hypergraph.edges:
        edges_ending_at[e[-1]].append(e)

    colors = [0] * nv

    def colorable(v: int, c: int, max_used: int) -> bool:
        if v == nv:
            return True
        for color in range(min(max_used + 2, c)):
            colors[v] = color
            if all(
                any(colors[w] != color for w in e[:-1]) for e in edges_ending_at[v]
            ) and colorable(v + 1, c, max(max_used, color)):
                return True
        return False

    for c in itertools.count(1):
        if colorable(0, c, -1):
            return c
    raise AssertionError("unreachable")
