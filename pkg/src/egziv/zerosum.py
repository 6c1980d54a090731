"""Zero-sum subsequence solvers: EGZ, Olson, Hall decompositions, and variants."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .errors import PreconditionError, TheoremViolationError
from .groups import FiniteGroup

__all__ = [
    "GroupSequence",
    "ZeroSumWitness",
    "HallDecomposition",
    "ConstrainedWitness",
    "egz_find",
    "olson_find",
    "hall_decompose",
    "partial_transversal",
    "constrained_egz",
    "zero_sum_hyperedge",
    "ordering_with_identity_product",
    "is_prime",
]


@dataclass(frozen=True)
class GroupSequence:
    """An ordered sequence of elements of a finite group.

    Positions are 0-based in the API; the JSON layer renders them 1-based.
    """

    group: FiniteGroup
    items: tuple[int, ...]

    def __post_init__(self) -> None:
        n = self.group.order
        for x in self.items:
            if not 0 <= x < n:
                raise PreconditionError(f"sequence item {x} outside group of order {n}")

    def __len__(self) -> int:
        return len(self.items)


@dataclass(frozen=True)
class ZeroSumWitness:
    """n positions whose elements multiply to the identity in some order.

    ``indices`` is strictly increasing; ``ordering`` is the same index set
    permuted into a product-one order (equal to ``indices`` for abelian
    groups).  ``increasing_works`` records whether the increasing order
    itself already multiplies to the identity; only *some* ordering is
    guaranteed to exist.
    """

    indices: tuple[int, ...]
    ordering: tuple[int, ...]
    increasing_works: bool

    def verify(self, seq: GroupSequence) -> bool:
        """Re-multiply the selected elements directly."""
        g = seq.group
        if list(self.indices) != sorted(set(self.indices)):
            return False
        if sorted(self.ordering) != list(self.indices):
            return False
        return g.product([seq.items[i] for i in self.ordering]) == g.identity


@dataclass(frozen=True)
class HallDecomposition:
    """Permutations b, c of Z/n with a_i = b_i - c_i for each position."""

    b: tuple[int, ...]
    c: tuple[int, ...]

    def verify(self, items: Sequence[int], n: int) -> bool:
        if sorted(self.b) != list(range(n)) or sorted(self.c) != list(range(n)):
            return False
        return all((self.b[i] - self.c[i]) % n == items[i] % n for i in range(n))


@dataclass(frozen=True)
class ConstrainedWitness:
    """EGZ witness with prescribed differences along adjacent odd/even pairs.

    ``indices`` is 0-based here; "position i is odd" in the constraint refers
    to the 1-based position i+1.
    """

    indices: tuple[int, ...]
    b: tuple[int, ...]

    def verify(self, items: Sequence[int], p: int, d: Sequence[int]) -> bool:
        idx, b = self.indices, self.b
        if len(idx) != p or list(idx) != sorted(set(idx)):
            return False
        if len(set(b)) != p:
            return False
        if {(items[idx[j]] + b[j]) % p for j in range(p)} != set(range(p)):
            return False
        for j in range(p - 1):
            if (idx[j] + 1) % 2 == 1 and idx[j + 1] == idx[j] + 1:
                if b[j + 1] != (b[j] + d[j]) % p:
                    return False
        return True


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in range(2, int(n**0.5) + 1):
        if n % q == 0:
            return False
    return True


# -- cyclic-group solver ------------------------------------------------------


def _cyclic_zero_sum_indices(items: Sequence[int], n: int) -> Optional[list[int]]:
    """Lexicographically least n-subset of positions summing to 0 mod n.

    Uses suffix reachability masks: bit s of reach[i][k] says "some k
    positions of items[i:] sum to s mod n".  A greedy forward pass over the
    masks then yields the least index set without backtracking.
    """
    length = len(items)
    if length < n:
        return None
    full = (1 << n) - 1
    reach = [[0] * (n + 1) for _ in range(length + 1)]
    reach[length][0] = 1
    for i in range(length - 1, -1, -1):
        a = items[i] % n
        row = reach[i]
        nxt = reach[i + 1]
        row[0] = 1
        if a:
            for k in range(1, n + 1):
                m = nxt[k - 1]
                row[k] = nxt[k] | (((m << a) | (m >> (n - a))) & full)
        else:
            for k in range(1, n + 1):
                row[k] = nxt[k] | nxt[k - 1]
    if not reach[0][n] & 1:
        return None
    chosen: list[int] = []
    s = 0
    k = n
    i = 0
    while k:
        s2 = (s + items[i]) % n
        if reach[i + 1][k - 1] >> ((n - s2) % n) & 1:
            chosen.append(i)
            s = s2
            k -= 1
        i += 1
    return chosen


def egz_find(seq: GroupSequence) -> Optional[ZeroSumWitness]:
    """Find n positions of a Z/n sequence summing to 0 mod n.

    For sequences of length >= 2n-1 a witness is guaranteed; not finding one
    at that length raises TheoremViolationError (an implementation bug).
    Shorter sequences may legitimately yield None.
    """
    group = seq.group
    n = group.order
    if not group.is_standard_cyclic:
        raise PreconditionError("egz_find requires the standard cyclic group Z/n")
    idx = _cyclic_zero_sum_indices(seq.items, n)
    if idx is None:
        if len(seq.items) >= 2 * n - 1:
            raise TheoremViolationError(
                f"no zero-sum subsequence in a length-{len(seq.items)} sequence over Z/{n}"
            )
        return None
    indices = tuple(idx)
    return ZeroSumWitness(indices=indices, ordering=indices, increasing_works=True)


# -- general-group solver -----------------------------------------------------


@lru_cache(maxsize=None)
def _left_shift_tables(group: FiniteGroup) -> tuple[tuple[int, ...], ...]:
    """ltrans[g][mask] = { g*s : bit s set in mask } as a bitmask, per element g."""
    n = group.order
    tables = []
    for g in range(n):
        row = group.table[g]
        tbl = [0] * (1 << n)
        for mask in range(1, 1 << n):
            low = mask & -mask
            tbl[mask] = tbl[mask ^ low] | (1 << row[low.bit_length() - 1])
        tables.append(tuple(tbl))
    return tuple(tables)


def _abelian_zero_sum_indices(items: Sequence[int], group: FiniteGroup) -> Optional[list[int]]:
    """Same suffix-reachability scheme as Z/n, but over an arbitrary abelian group."""
    n = group.order
    length = len(items)
    if length < n:
        return None
    ltrans = _left_shift_tables(group)
    reach = [[0] * (n + 1) for _ in range(length + 1)]
    reach[length][0] = 1 << group.identity
    for i in range(length - 1, -1, -1):
        shift = ltrans[items[i]]
        row = reach[i]
        nxt = reach[i + 1]
        row[0] = nxt[0]
        for k in range(1, n + 1):
            row[k] = nxt[k] | shift[nxt[k - 1]]
    ident_bit = 1 << group.identity
    if not reach[0][n] & ident_bit:
        return None
    chosen: list[int] = []
    acc = group.identity
    k = n
    i = 0
    inv = group.inverse
    table = group.table
    while k:
        acc2 = table[acc][items[i]]
        # remaining product must equal inverse(acc2) for the total to be 1
        if reach[i + 1][k - 1] >> inv[acc2] & 1:
            chosen.append(i)
            acc = acc2
            k -= 1
        i += 1
    return chosen


def _ordering_reach(values: Sequence[int], group: FiniteGroup) -> list[int]:
    """reach[mask] = bitmask of products achievable by some ordering of the masked values."""
    n = len(values)
    ltrans = _left_shift_tables(group)
    reach = [0] * (1 << n)
    reach[0] = 1 << group.identity
    for mask in range(1, 1 << n):
        m = mask
        acc = 0
        while m:
            low = m & -m
            i = low.bit_length() - 1
            acc |= ltrans[values[i]][reach[mask ^ low]]
            m ^= low
        reach[mask] = acc
    return reach


def ordering_with_identity_product(
    group: FiniteGroup, values: Sequence[int]
) -> Optional[tuple[int, ...]]:
    """Lexicographically least ordering of positions 0..m-1 whose product is 1, if any."""
    m = len(values)
    reach = _ordering_reach(values, group)
    ident = group.identity
    if not reach[(1 << m) - 1] >> ident & 1:
        return None
    order: list[int] = []
    mask = (1 << m) - 1
    acc = ident
    table, inv = group.table, group.inverse
    while mask:
        rest = mask
        while rest:
            low = rest & -rest
            i = low.bit_length() - 1
            acc2 = table[acc][values[i]]
            if reach[mask ^ low] >> inv[acc2] & 1:
                order.append(i)
                acc = acc2
                mask ^= low
                break
            rest ^= low
    return tuple(order)


def olson_find(seq: GroupSequence) -> Optional[ZeroSumWitness]:
    """Find n distinct positions whose elements, in some order, multiply to 1.

    Works over any finite group of order n.  Abelian groups use the fast
    subset-sum reachability path; nonabelian groups enumerate index subsets
    lexicographically and decide each one by ordering-reachability over
    subsets of the chosen positions (cached per value multiset).
    """
    group = seq.group
    n = group.order
    items = seq.items
    ident = group.identity

    if group.is_abelian:
        idx = _abelian_zero_sum_indices(items, group)
        if idx is not None:
            indices = tuple(idx)
            return ZeroSumWitness(indices=indices, ordering=indices, increasing_works=True)
    else:
        feasible_multiset: dict[tuple[int, ...], bool] = {}
        for combo in itertools.combinations(range(len(items)), n):
            values = tuple(items[i] for i in combo)
            key = tuple(sorted(values))
            ok = feasible_multiset.get(key)
            if ok is None:
                ok = bool(_ordering_reach(values, group)[(1 << n) - 1] >> ident & 1)
                feasible_multiset[key] = ok
            if not ok:
                continue
            local = ordering_with_identity_product(group, values)
            assert local is not None
            ordering = tuple(combo[i] for i in local)
            increasing = group.product(values) == ident
            return ZeroSumWitness(indices=combo, ordering=ordering, increasing_works=increasing)

    if len(items) >= 2 * n - 1:
        raise TheoremViolationError(
            f"no identity-product subsequence of length {n} in a "
            f"length-{len(items)} sequence over a group of order {n}"
        )
    return None


# -- Hall decompositions and partial transversals -----------------------------


def partial_transversal(a: Sequence[int], p: int) -> tuple[int, ...]:
    """Pairwise distinct b_i with {a_i + b_i} = {0, ..., p-2}, for prime p.

    Takes a length-(p-1) sequence over Z/p.  Existence is guaranteed for
    prime p; the lexicographically least b is returned by backtracking.
    """
    if not is_prime(p):
        raise PreconditionError(f"modulus {p} is not prime")
    if len(a) != p - 1:
        raise PreconditionError(f"expected length {p - 1}, got {len(a)}")
    for x in a:
        if not 0 <= x < p:
            raise PreconditionError(f"entry {x} outside Z/{p}")

    used_b = [False] * p
    used_target = [False] * p
    b: list[int] = []

    def extend(i: int) -> bool:
        if i == p - 1:
            return True
        for v in range(p):
            if used_b[v]:
                continue
            t = (a[i] + v) % p
            if t == p - 1 or used_target[t]:
                continue
            used_b[v] = used_target[t] = True
            b.append(v)
            if extend(i + 1):
                return True
            used_b[v] = used_target[t] = False
            b.pop()
        return False

    if not extend(0):
        raise TheoremViolationError(f"no partial transversal for {tuple(a)} mod {p}")
    return tuple(b)


def hall_decompose(seq: GroupSequence) -> Optional[HallDecomposition]:
    """Write a length-n zero-sum Z/n sequence as a difference of two permutations.

    Returns None exactly when the sequence does not sum to 0 mod n.  For
    prime n the decomposition is built constructively from a partial
    transversal of the first n-1 entries, with the last coordinate forced;
    composite n falls back to direct backtracking search.
    """
    group = seq.group
    n = group.order
    a = seq.items
    if len(a) != n:
        raise PreconditionError(f"expected a length-{n} sequence over Z/{n}, got length {len(a)}")
    if sum(a) % n != 0:
        return None
    if n == 1:
        return HallDecomposition(b=(0,), c=(0,))

    if is_prime(n):
        beta = partial_transversal(a[: n - 1], n)
        missing = (set(range(n)) - set(beta)).pop()
        c = beta + (missing,)
        b = tuple((a[i] + c[i]) % n for i in range(n))
        return HallDecomposition(b=b, c=c)

    used_c = [False] * n
    used_b = [False] * n
    c: list[int] = []

    def extend(i: int) -> bool:
        if i == n:
            return True
        for v in range(n):
            if used_c[v]:
                continue
            bv = (a[i] + v) % n
            if used_b[bv]:
                continue
            used_c[v] = used_b[bv] = True
            c.append(v)
            if extend(i + 1):
                return True
            used_c[v] = used_b[bv] = False
            c.pop()
        return False

    if not extend(0):
        raise TheoremViolationError(f"zero-sum sequence {a} admits no permutation difference")
    ctup = tuple(c)
    return HallDecomposition(b=tuple((a[i] + ctup[i]) % n for i in range(n)), c=ctup)


# -- constrained EGZ ----------------------------------------------------------


def constrained_egz(
    seq: GroupSequence, d: Sequence[int]
) -> ConstrainedWitness:
    """EGZ witness whose permutation part obeys prescribed adjacent differences.

    For a length-(2p-1) sequence over Z/p (p prime) and nonzero d_1..d_{p-1},
    returns positions i_1 < ... < i_p and pairwise distinct b_1..b_p with
    {a_{i_j} + b_j} = Z/p such that b_{j+1} = b_j + d_j whenever the 1-based
    position i_j is odd and i_{j+1} = i_j + 1.
    """
    group = seq.group
    p = group.order
    a = seq.items
    if not is_prime(p):
        raise PreconditionError(f"modulus {p} is not prime")
    if len(a) != 2 * p - 1:
        raise PreconditionError(f"expected length {2 * p - 1}, got {len(a)}")
    if len(d) != p - 1:
        raise PreconditionError(f"expected {p - 1} constraint differences, got {len(d)}")
    for x in d:
        if x % p == 0:
            raise PreconditionError("constraint differences must be nonzero")

    for idx in itertools.combinations(range(2 * p - 1), p):
        # slot j+1 is forced from slot j when 1-based idx[j] is odd and adjacent
        forced = [
            (idx[j] % 2 == 0 and idx[j + 1] == idx[j] + 1) for j in range(p - 1)
        ]
        b = _extend_b(a, idx, forced, d, p)
        if b is not None:
            return ConstrainedWitness(indices=idx, b=b)
    raise TheoremViolationError(
        f"no constrained witness for sequence {a} with differences {tuple(d)} mod {p}"
    )


def _extend_b(
    a: Sequence[int],
    idx: tuple[int, ...],
    forced: Sequence[bool],
    d: Sequence[int],
    p: int,
) -> Optional[tuple[int, ...]]:
    used_b = [False] * p
    used_img = [False] * p
    b: list[int] = []

    def place(j: int, v: int) -> bool:
        img = (a[idx[j]] + v) % p
        if used_b[v] or used_img[img]:
            return False
        used_b[v] = used_img[img] = True
        b.append(v)
        return True

    def unplace(j: int) -> None:
        v = b.pop()
        used_b[v] = False
        used_img[(a[idx[j]] + v) % p] = False

    def extend(j: int) -> bool:
        if j == p:
            return True
        if j > 0 and forced[j - 1]:
            v = (b[j - 1] + d[j - 1]) % p
            if place(j, v):
                if extend(j + 1):
                    return True
                unplace(j)
            return False
        for v in range(p):
            if place(j, v):
                if extend(j + 1):
                    return True
                unplace(j)
        return False

    return tuple(b) if extend(0) else None


# -- hyperedge search ---------------------------------------------------------


def zero_sum_hyperedge(
    hypergraph, coloring: Sequence[int], group: FiniteGroup
) -> Optional[tuple[int, ...]]:
    """First hyperedge whose colors multiply to the identity in some order.

    ``hypergraph`` must be n-uniform with n = |group|.  For abelian groups
    the order of multiplication is immaterial; otherwise an ordering search
    over the n colors decides each edge.  Returns None when no hyperedge
    qualifies (a legal outcome).
    """
    n = group.order
    if hypergraph.uniformity != n:
        raise PreconditionError(
            f"hypergraph is {hypergraph.uniformity}-uniform but the group has order {n}"
        )
    ident = group.identity
    abelian = group.is_abelian
    for edge in hypergraph.edges:
        colors = [coloring[v] for v in edge]
        if abelian:
            if group.product(colors) == ident:
                return tuple(edge)
        else:
            if _ordering_reach(colors, group)[(1 << n) - 1] >> ident & 1:
                return tuple(edge)
    return None
