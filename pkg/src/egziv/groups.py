"""Finite groups as validated Cayley tables, with elements 0..n-1."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .errors import GroupAxiomError, PreconditionError

__all__ = [
    "FiniteGroup",
    "make_cyclic",
    "from_cayley_table",
    "direct_product",
    "symmetric_group",
    "klein_four",
    "product_ordering",
]


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group of order n given by its full multiplication table.

    Elements are the indices 0..n-1; ``table[g][h]`` is the product g*h.
    Instances are only created through the validated constructors below,
    so every FiniteGroup in circulation satisfies the group axioms.
    """

    order: int
    table: tuple[tuple[int, ...], ...]
    identity: int
    inverse: tuple[int, ...]
    name: str = field(default="", compare=False)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def elements(self) -> range:
        return range(self.order)

    def product(self, items: Sequence[int]) -> int:
        """Left-to-right product of a sequence of elements (identity if empty)."""
        acc = self.identity
        row = self.table
        for x in items:
            acc = row[acc][x]
        return acc

    @cached_property
    def is_abelian(self) -> bool:
        t = self.table
        n = self.order
        return all(t[a][b] == t[b][a] for a in range(n) for b in range(a + 1, n))

    @cached_property
    def is_standard_cyclic(self) -> bool:
        """True when the table is literally addition mod n (element g is the integer g)."""
        t = self.table
        n = self.order
        return all(t[a][b] == (a + b) % n for a in range(n) for b in range(n))

    def is_cyclic(self) -> bool:
        return any(self.element_order(g) == self.order for g in self.elements())

    def element_order(self, g: int) -> int:
        acc = g
        k = 1
        while acc != self.identity:
            acc = self.table[acc][g]
            k += 1
        return k

    def __repr__(self) -> str:
        label = self.name or f"order-{self.order} group"
        return f"FiniteGroup({label})"


def make_cyclic(n: int) -> FiniteGroup:
    """Return Z/n with addition mod n; identity 0, inverse of g is (-g) mod n."""
    if n < 1:
        raise PreconditionError(f"group order must be >= 1, got {n}")
    table = tuple(tuple((g + h) % n for h in range(n)) for g in range(n))
    inverse = tuple((-g) % n for g in range(n))
    return FiniteGroup(order=n, table=table, identity=0, inverse=inverse, name=f"Z/{n}")


def from_cayley_table(table: Sequence[Sequence[int]], name: str = "") -> FiniteGroup:
    """Validate an n x n multiplication table and build the group.

    Raises GroupAxiomError naming the offending row/column/triple when the
    table is not a Latin square, lacks a two-sided identity, or fails
    associativity.
    """
    n = len(table)
    if n < 1:
        raise PreconditionError("empty Cayley table")
    rows = []
    for i, row in enumerate(table):
        row = tuple(int(x) for x in row)
        if len(row) != n:
            raise GroupAxiomError(f"row {i} has length {len(row)}, expected {n}")
        for x in row:
            if not 0 <= x < n:
                raise GroupAxiomError(f"entry {x} in row {i} out of range 0..{n - 1}")
        rows.append(row)
    tab = tuple(rows)

    all_elems = frozenset(range(n))
    for i in range(n):
        if frozenset(tab[i]) != all_elems:
            raise GroupAxiomError(f"row {i} is not a permutation of 0..{n - 1}")
        col = frozenset(tab[r][i] for r in range(n))
        if col != all_elems:
            raise GroupAxiomError(f"column {i} is not a permutation of 0..{n - 1}")

    identity = None
    for e in range(n):
        if all(tab[e][g] == g and tab[g][e] == g for g in range(n)):
            identity = e
            break
    if identity is None:
        raise GroupAxiomError("no two-sided identity element")

    for a in range(n):
        for b in range(n):
            ab = tab[a][b]
            row_ab = tab[ab]
            row_a = tab[a]
            row_b = tab[b]
            for c in range(n):
                if row_ab[c] != row_a[row_b[c]]:
                    raise GroupAxiomError(
                        f"associativity fails on triple ({a},{b},{c}): "
                        f"({a}*{b})*{c}={row_ab[c]} but {a}*({b}*{c})={row_a[row_b[c]]}"
                    )

    inverse = [0] * n
    for g in range(n):
        inverse[g] = tab[g].index(identity)

    return FiniteGroup(order=n, table=tab, identity=identity, inverse=tuple(inverse), name=name)


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """Direct product with element (a, b) encoded as a*|h| + b."""
    m = h.order
    n = g.order * m

    def enc(a: int, b: int) -> int:
        return a * m + b

    table = [[0] * n for _ in range(n)]
    for a1 in g.elements():
        for b1 in h.elements():
            for a2 in g.elements():
                for b2 in h.elements():
                    table[enc(a1, b1)][enc(a2, b2)] = enc(g.mul(a1, a2), h.mul(b1, b2))
    name = f"{g.name}x{h.name}" if g.name and h.name else ""
    return from_cayley_table(table, name=name)


def klein_four() -> FiniteGroup:
    grp = direct_product(make_cyclic(2), make_cyclic(2))
    return FiniteGroup(grp.order, grp.table, grp.identity, grp.inverse, name="V4")


def symmetric_group(k: int) -> FiniteGroup:
    """The symmetric group on k symbols, elements indexed by itertools.permutations order.

    Index 0 is the identity permutation; composition is (p*q)(x) = p(q(x)).
    """
    perms = list(itertools.permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    table = [
        [index[tuple(p[q[x]] for x in range(k))] for q in perms]
        for p in perms
    ]
    return from_cayley_table(table, name=f"S{k}")


def product_ordering(
    group: FiniteGroup, g_list: Sequence[int], h_list: Sequence[int]
) -> tuple[int, ...]:
    """Reorder the quotients of two orderings of one subset so they multiply to 1.

    Given two orderings (g_i) and (h_i) of the same m-element subset, set
    x_i = inv(g_i) * h_i.  The returned permutation pi of 0..m-1 satisfies
    x_pi[0] * x_pi[1] * ... * x_pi[m-1] = identity.

    The construction chases chains: starting from an unused position i,
    repeatedly step to the position whose g-value equals the current
    h-value; each chain closes into a cycle whose x-product telescopes to
    the identity, and the cycles are emitted in order of their smallest
    position.
    """
    m = len(g_list)
    if len(h_list) != m:
        raise PreconditionError("g_list and h_list must have equal length")
    for x in itertools.chain(g_list, h_list):
        if not 0 <= x < group.order:
            raise PreconditionError(f"element {x} outside group of order {group.order}")
    if set(g_list) != set(h_list) or len(set(g_list)) != m:
        raise PreconditionError("g_list and h_list must order the same m-element subset")

    position_of_g = {g: i for i, g in enumerate(g_list)}
    seen = [False] * m
    order: list[int] = []
    for start in range(m):
        if seen[start]:
            continue
        i = start
        while not seen[i]:
            seen[i] = True
            order.append(i)
            i = position_of_g[h_list[i]]
    return tuple(order)
