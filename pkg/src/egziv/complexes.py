"""Abstract simplicial complexes: joins, chessboards, box complexes, group actions."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence

from .errors import PreconditionError, StructureError
from .groups import FiniteGroup, make_cyclic

__all__ = [
    "SimplicialComplex",
    "SimplicialMap",
    "ComplexAction",
    "discrete_points",
    "full_simplex",
    "simplex_boundary",
    "join",
    "n_fold_join",
    "deleted_join",
    "chessboard",
    "box_complex",
    "permutation_avoidance_complex",
    "barycentric_subdivision",
    "action_is_free",
    "chessboard_row_action",
    "simplex_rotation_action",
    "enumerate_equivariant_simplicial_maps",
    "is_surjective_onto_facets",
]


def _pair_label(a: object, b: object) -> str:
    return f"({a},{b})"


def _inclusion_maximal(faces: Iterable[frozenset[int]]) -> list[frozenset[int]]:
    by_size = sorted(set(faces), key=len, reverse=True)
    kept: list[frozenset[int]] = []
    for f in by_size:
        if not any(f < g for g in kept):
            kept.append(f)
    return kept


@dataclass(frozen=True)
class SimplicialComplex:
    """A finite abstract simplicial complex stored by its inclusion-maximal facets.

    ``vertices`` holds opaque string labels; facets are sorted tuples of
    vertex indices.  Faces (all subsets of facets, including the empty face)
    are materialized on demand only.  Vertices not covered by any facet are
    carried as labels but are not faces.
    """

    vertices: tuple[str, ...]
    facets: tuple[tuple[int, ...], ...]
    includes_empty_face: bool = True

    def __post_init__(self) -> None:
        nv = len(self.vertices)
        if len(set(self.vertices)) != nv:
            raise StructureError("duplicate vertex labels")
        seen = set()
        for f in self.facets:
            if list(f) != sorted(set(f)):
                raise StructureError(f"facet {f} is not a sorted duplicate-free tuple")
            if f and not (0 <= f[0] and f[-1] < nv):
                raise StructureError(f"facet {f} references missing vertices")
            seen.add(frozenset(f))
        for f in seen:
            for g in seen:
                if f < g:
                    raise StructureError(
                        f"facet {tuple(sorted(f))} is contained in facet {tuple(sorted(g))}"
                    )

    @staticmethod
    def from_facets(
        vertices: Sequence[str], facets: Iterable[Sequence[int]]
    ) -> "SimplicialComplex":
        canon = sorted({tuple(sorted(set(f))) for f in facets})
        return SimplicialComplex(vertices=tuple(vertices), facets=tuple(canon))

    @staticmethod
    def from_faces(
        vertices: Sequence[str], faces: Iterable[Iterable[int]]
    ) -> "SimplicialComplex":
        """Build from an arbitrary face list by keeping the inclusion-maximal ones."""
        maximal = [f for f in _inclusion_maximal(frozenset(f) for f in faces) if f]
        return SimplicialComplex.from_facets(vertices, [tuple(sorted(f)) for f in maximal])

    @property
    def dim(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    @cached_property
    def face_set(self) -> frozenset[tuple[int, ...]]:
        """All faces as sorted tuples, including the empty tuple."""
        out: set[tuple[int, ...]] = {()}
        for f in self.facets:
            for k in range(1, len(f) + 1):
                out.update(itertools.combinations(f, k))
        return frozenset(out)

    @cached_property
    def faces_by_dim(self) -> dict[int, list[tuple[int, ...]]]:
        by_dim: dict[int, list[tuple[int, ...]]] = {}
        for face in self.face_set:
            if face:
                by_dim.setdefault(len(face) - 1, []).append(face)
        for d in by_dim:
            by_dim[d].sort()
        return by_dim

    def f_vector(self) -> tuple[int, ...]:
        by_dim = self.faces_by_dim
        if not by_dim:
            return ()
        return tuple(len(by_dim.get(d, [])) for d in range(max(by_dim) + 1))

    def has_face(self, face: Iterable[int]) -> bool:
        want = set(face)
        return any(want.issubset(f) for f in self.facets)

    def label_index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.vertices)}

    def __repr__(self) -> str:
        return f"SimplicialComplex({len(self.vertices)} vertices, {len(self.facets)} facets)"


@dataclass(frozen=True)
class SimplicialMap:
    """A vertex map between complexes sending every facet to a face of the target."""

    source: SimplicialComplex
    target: SimplicialComplex
    vertex_map: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.vertex_map) != len(self.source.vertices):
            raise StructureError("vertex_map length does not match source vertex count")
        nt = len(self.target.vertices)
        for v in self.vertex_map:
            if not 0 <= v < nt:
                raise StructureError(f"vertex image {v} outside target")

    def validate_simplicial(self) -> None:
        vm = self.vertex_map
        for f in self.source.facets:
            image = {vm[v] for v in f}
            if not self.target.has_face(image):
                raise StructureError(
                    f"image {tuple(sorted(image))} of facet {f} is not a face of the target"
                )

    def image_of(self, face: Iterable[int]) -> tuple[int, ...]:
        vm = self.vertex_map
        return tuple(sorted({vm[v] for v in face}))


def simplicial_map(
    source: SimplicialComplex,
    target: SimplicialComplex,
    vertex_map: Sequence[int],
    check: bool = True,
) -> SimplicialMap:
    m = SimplicialMap(source=source, target=target, vertex_map=tuple(vertex_map))
    if check:
        m.validate_simplicial()
    return m


@dataclass(frozen=True)
class ComplexAction:
    """A group acting on a complex by one vertex permutation per element."""

    complex: SimplicialComplex
    group: FiniteGroup
    vertex_perms: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        nv = len(self.complex.vertices)
        n = self.group.order
        if len(self.vertex_perms) != n:
            raise StructureError(f"expected {n} vertex permutations, got {len(self.vertex_perms)}")
        for g, perm in enumerate(self.vertex_perms):
            if sorted(perm) != list(range(nv)):
                raise StructureError(f"map for element {g} is not a vertex permutation")
        ident = self.vertex_perms[self.group.identity]
        if ident != tuple(range(nv)):
            raise StructureError("identity element does not act as the identity permutation")
        for g in range(n):
            pg = self.vertex_perms[g]
            for h in range(n):
                ph = self.vertex_perms[h]
                pgh = self.vertex_perms[self.group.mul(g, h)]
                if any(pg[ph[v]] != pgh[v] for v in range(nv)):
                    raise StructureError(f"permutations violate the Cayley table at ({g},{h})")
        facet_set = {frozenset(f) for f in self.complex.facets}
        for g in range(n):
            pg = self.vertex_perms[g]
            for f in self.complex.facets:
                if frozenset(pg[v] for v in f) not in facet_set:
                    raise StructureError(f"element {g} does not map facets to facets")


# -- elementary constructors --------------------------------------------------


def discrete_points(k: int) -> SimplicialComplex:
    """k isolated vertices."""
    return SimplicialComplex.from_facets([str(i) for i in range(k)], [(i,) for i in range(k)])


def full_simplex(k: int) -> SimplicialComplex:
    """The full simplex on k vertices (a single facet)."""
    if k < 1:
        raise PreconditionError("full_simplex needs at least one vertex")
    return SimplicialComplex.from_facets([str(i) for i in range(k)], [tuple(range(k))])


def simplex_boundary(k: int) -> SimplicialComplex:
    """Boundary of the (k-1)-simplex: all proper subsets of k vertices."""
    if k < 2:
        raise PreconditionError("simplex_boundary needs at least two vertices")
    facets = itertools.combinations(range(k), k - 1)
    return SimplicialComplex.from_facets([str(i) for i in range(k)], facets)


# -- joins ---------------------------------------------------------------------


def _tagged(complexes: Sequence[SimplicialComplex]) -> tuple[list[str], list[list[int]]]:
    """Disjoint-union vertex labels (v, i) and per-factor index offsets."""
    labels: list[str] = []
    offsets: list[list[int]] = []
    for i, k in enumerate(complexes):
        base = len(labels)
        offsets.append([base + v for v in range(len(k.vertices))])
        labels.extend(_pair_label(lab, i) for lab in k.vertices)
    return labels, offsets


def _join_of(complexes: Sequence[SimplicialComplex]) -> SimplicialComplex:
    labels, offsets = _tagged(complexes)
    factor_facets = [k.facets if k.facets else ((),) for k in complexes]
    facets = []
    for combo in itertools.product(*factor_facets):
        face: list[int] = []
        for i, f in enumerate(combo):
            face.extend(offsets[i][v] for v in f)
        facets.append(tuple(sorted(face)))
    return SimplicialComplex.from_faces(labels, facets)


def join(k: SimplicialComplex, l: SimplicialComplex) -> SimplicialComplex:
    """Join of two complexes on the tagged disjoint union of their vertices."""
    return _join_of([k, l])


def n_fold_join(k: SimplicialComplex, n: int) -> SimplicialComplex:
    if n < 1:
        raise PreconditionError("join arity must be >= 1")
    return _join_of([k] * n)


def deleted_join(k: SimplicialComplex, n: int) -> SimplicialComplex:
    """Subcomplex of the n-fold join keeping unions of pairwise-disjoint faces.

    Enumerates assignments of each vertex to one of the n parts (or none)
    whose classes are all faces of k, then keeps the maximal ones.  Intended
    for desk-scale complexes; the assignment space is (n+1)^|V|.
    """
    if n < 1:
        raise PreconditionError("join arity must be >= 1")
    if n == 1:
        return k
    nv = len(k.vertices)
    if (n + 1) ** nv > 4_000_000:
        raise PreconditionError(f"deleted join of a {nv}-vertex complex is too large to enumerate")
    labels, offsets = _tagged([k] * n)
    faces_of_k = k.face_set
    faces = []
    for assignment in itertools.product(range(n + 1), repeat=nv):
        parts: list[list[int]] = [[] for _ in range(n)]
        for v, part in enumerate(assignment):
            if part:
                parts[part - 1].append(v)
        if all(tuple(part) in faces_of_k for part in parts):
            face = []
            for i, part in enumerate(parts):
                face.extend(offsets[i][v] for v in part)
            faces.append(frozenset(face))
    return SimplicialComplex.from_faces(labels, faces)


# -- chessboard and box complexes ---------------------------------------------


def chessboard(m: int, n: int) -> SimplicialComplex:
    """The chessboard complex on an m x n board: faces are non-attacking rook placements.

    Vertex (i,j) has index i*n + j; facets are the maximal partial injections,
    all of size min(m, n).
    """
    if m < 1 or n < 1:
        raise PreconditionError("board sides must be >= 1")
    labels = [_pair_label(i, j) for i in range(m) for j in range(n)]
    facets = []
    if m <= n:
        for cols in itertools.permutations(range(n), m):
            facets.append(tuple(sorted(i * n + cols[i] for i in range(m))))
    else:
        for rows in itertools.permutations(range(m), n):
            facets.append(tuple(sorted(rows[j] * n + j for j in range(n))))
    return SimplicialComplex.from_facets(labels, facets)


def box_complex(
    hypergraph, group: FiniteGroup, include_empty_part_faces: bool = True
) -> tuple[SimplicialComplex, ComplexAction]:
    """Box complex of an n-uniform hypergraph with its part-shifting group action.

    Vertices are pairs (v, i) on V x [n], with [n] identified with the group
    in Cayley-table element order; a face is a union of parts A_i x {i} such
    that every transversal through the nonempty parts is a hyperedge.  Faces
    in which some part is empty hold vacuously and are included by default;
    ``include_empty_part_faces=False`` restricts to all-parts-nonempty faces.
    The returned action moves (v, h) to (v, g*h).
    """
    n = group.order
    if hypergraph.uniformity != n:
        raise PreconditionError(
            f"hypergraph is {hypergraph.uniformity}-uniform but the group has order {n}"
        )
    nv = hypergraph.vertex_count
    if (n + 1) ** nv > 4_000_000:
        raise PreconditionError(f"box complex on {nv} vertices is too large to enumerate")
    labels = [_pair_label(v, i) for v in range(nv) for i in range(n)]

    def vid(v: int, i: int) -> int:
        return v * n + i

    edge_set = {frozenset(e) for e in hypergraph.edges}
    faces: list[frozenset[int]] = []
    if include_empty_part_faces and n >= 2:
        for empty_slot in range(n):
            faces.append(
                frozenset(vid(v, i) for v in range(nv) for i in range(n) if i != empty_slot)
            )
    for assignment in itertools.product(range(n + 1), repeat=nv):
        parts: list[list[int]] = [[] for _ in range(n)]
        for v, part in enumerate(assignment):
            if part:
                parts[part - 1].append(v)
        if any(not part for part in parts):
            continue
        if all(
            frozenset(combo) in edge_set and len(set(combo)) == n
            for combo in itertools.product(*parts)
        ):
            faces.append(
                frozenset(vid(v, i) for i, part in enumerate(parts) for v in part)
            )
    complex_ = SimplicialComplex.from_faces(labels, faces)
    perms = tuple(
        tuple(vid(v, group.mul(g, i)) for v in range(nv) for i in range(n))
        for g in range(n)
    )
    return complex_, ComplexAction(complex=complex_, group=group, vertex_perms=perms)


# -- permutation- and function-graph avoidance complexes -----------------------


def permutation_avoidance_complex(
    group: FiniteGroup, target_sum: Optional[int] = None
) -> SimplicialComplex:
    """Complex on G x G whose faces contain no graph of a forbidden function.

    With ``target_sum=None`` the forbidden functions are all permutations of
    the group.  With ``target_sum=b`` (requiring the standard cyclic group)
    they are all functions with value-sum b, and the union with the full
    chessboard complex on the same grid is returned.
    """
    n = group.order
    labels = [_pair_label(g, h) for g in range(n) for h in range(n)]

    def vid(g: int, h: int) -> int:
        return g * n + h

    if target_sum is None:
        # Maximal no-SDR subsets: rows in R see only a witness set W, |W| = |R| - 1.
        faces = []
        for r_size in range(1, n + 1):
            for rows in itertools.combinations(range(n), r_size):
                row_set = set(rows)
                outside = [vid(g, h) for g in range(n) if g not in row_set for h in range(n)]
                for w in itertools.combinations(range(n), r_size - 1):
                    face = list(outside)
                    for g in rows:
                        face.extend(vid(g, h) for h in w)
                    faces.append(frozenset(face))
        return SimplicialComplex.from_faces(labels, faces)

    if not group.is_standard_cyclic:
        raise PreconditionError("target_sum form requires the standard cyclic group Z/p")
    b = target_sum % n
    if n > 4:
        raise PreconditionError("target_sum form enumerates nonempty row subsets; use n <= 4")
    faces = []
    for empty_row in range(n):
        faces.append(frozenset(vid(g, h) for g in range(n) if g != empty_row for h in range(n)))
    subsets = [s for k in range(1, n + 1) for s in itertools.combinations(range(n), k)]
    for rows in itertools.product(subsets, repeat=n):
        sums = {0}
        for s in rows:
            sums = {(x + y) % n for x in sums for y in s}
        if b not in sums:
            faces.append(
                frozenset(vid(g, h) for g in range(n) for h in rows[g])
            )
    avoidance = SimplicialComplex.from_faces(labels, faces)
    board = chessboard(n, n)
    return SimplicialComplex.from_faces(
        labels, [frozenset(f) for f in avoidance.facets] + [frozenset(f) for f in board.facets]
    )


# -- barycentric subdivision ---------------------------------------------------


def barycentric_subdivision(k: SimplicialComplex) -> SimplicialComplex:
    """Vertices are nonempty faces of k; facets are the full flags of each facet."""
    faces = sorted((f for f in k.face_set if f), key=lambda f: (len(f), f))
    index = {f: i for i, f in enumerate(faces)}
    labels = ["+".join(k.vertices[v] for v in f) for f in faces]
    flags = []
    for facet in k.facets:
        for order in itertools.permutations(facet):
            chain = [index[tuple(sorted(order[: i + 1]))] for i in range(len(order))]
            flags.append(tuple(sorted(chain)))
    return SimplicialComplex.from_facets(labels, flags)


# -- group actions on complexes -------------------------------------------------


def action_is_free(action: ComplexAction) -> bool:
    """True when no non-identity element carries some face to itself.

    A simplicial action fixes a point of the realization iff some face is
    invariant under a non-identity element, which happens iff the orbit of
    some vertex under iterating that element spans a face.  Fixed vertices
    are the orbit-size-one case.
    """
    cx = action.complex
    for g in action.group.elements():
        if g == action.group.identity:
            continue
        perm = action.vertex_perms[g]
        seen: set[int] = set()
        for v in range(len(cx.vertices)):
            if v in seen:
                continue
            orbit = [v]
            w = perm[v]
            while w != v:
                orbit.append(w)
                w = perm[w]
            seen.update(orbit)
            if cx.has_face(orbit):
                return False
    return True


def chessboard_row_action(m: int, n: int) -> ComplexAction:
    """Z/m acting on the m x n chessboard complex by cyclically shifting rows."""
    cx = chessboard(m, n)
    group = make_cyclic(m)
    perms = tuple(
        tuple(((i + g) % m) * n + j for i in range(m) for j in range(n))
        for g in range(m)
    )
    return ComplexAction(complex=cx, group=group, vertex_perms=perms)


def simplex_rotation_action(n: int) -> ComplexAction:
    """Z/n acting on the full simplex with vertex set Z/n by cyclic shift."""
    cx = full_simplex(n)
    group = make_cyclic(n)
    perms = tuple(tuple((v + g) % n for v in range(n)) for g in range(n))
    return ComplexAction(complex=cx, group=group, vertex_perms=perms)


def enumerate_equivariant_simplicial_maps(
    source: ComplexAction, target: ComplexAction
) -> Iterator[SimplicialMap]:
    """All Z/n-equivariant simplicial maps from the n x (2n-1) chessboard to the n-simplex.

    The source must be the row-shift action on the chessboard complex and the
    target the rotation action on the full simplex with n vertices.  Each map
    is determined by the images c_j of the orbit representatives (0, j), via
    f(i, j) = c_j + i; every vertex map into a full simplex is simplicial, so
    the n^(2n-1) choices are yielded in lexicographic order of (c_0, ..., c_{2n-2}).
    """
    n = source.group.order
    cols = 2 * n - 1
    if target.group.order != n:
        raise PreconditionError("source and target group orders differ")
    if source != chessboard_row_action(n, cols):
        raise PreconditionError(f"source must be the row-shift action on the {n}x{cols} chessboard")
    if target != simplex_rotation_action(n):
        raise PreconditionError("target must be the rotation action on the full n-vertex simplex")
    cx, simplex = source.complex, target.complex
    for c in itertools.product(range(n), repeat=cols):
        vm = tuple((c[j] + i) % n for i in range(n) for j in range(cols))
        yield SimplicialMap(source=cx, target=simplex, vertex_map=vm)


def is_surjective_onto_facets(m: SimplicialMap) -> bool:
    """True iff some source face maps onto the full vertex set of the target."""
    nt = len(m.target.vertices)
    vm = m.vertex_map
    for f in m.source.facets:
        if len({vm[v] for v in f}) == nt:
            return True
    return False
