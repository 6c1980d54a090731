"""Integer homology via Smith normal form, pseudomanifold degree, and map-nonexistence certificates."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .complexes import ComplexAction, SimplicialComplex, SimplicialMap, action_is_free
from .errors import (
    DegenerateMapError,
    InconsistentDegreeError,
    NonOrientableError,
    PreconditionError,
    StructureError,
)

__all__ = [
    "SmithForm",
    "HomologyProfile",
    "Orientation",
    "DegreeResult",
    "DoldCertificate",
    "smith_normal_form",
    "boundary_matrices",
    "reduced_homology",
    "homological_connectivity",
    "is_pseudomanifold",
    "orient",
    "degree",
    "dold_certificate",
]


# -- exact integer Smith normal form -------------------------------------------


@dataclass(frozen=True)
class SmithForm:
    """Invariant factors d_1 | d_2 | ... (all positive) and the matrix rank."""

    divisors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.divisors)


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> SmithForm:
    """Invariant factors of an integer matrix by exact gcd-pivot elimination.

    Pivots are chosen with minimal absolute value (units first), rows and
    columns are reduced alternately until the pivot is alone, and a
    divisibility sweep re-absorbs any remaining entry the pivot does not
    divide.  All arithmetic is on Python integers, so no overflow occurs.
    """
    entries = {
        (i, j): int(v)
        for i, row in enumerate(matrix)
        for j, v in enumerate(row)
        if v
    }
    return _smith_sparse(entries)


def _smith_sparse(entries: dict[tuple[int, int], int]) -> SmithForm:
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    for (i, j), v in entries.items():
        rows.setdefault(i, {})[j] = v
        cols.setdefault(j, set()).add(i)

    def set_entry(i: int, j: int, v: int) -> None:
        if v:
            rows.setdefault(i, {})[j] = v
            cols.setdefault(j, set()).add(i)
        else:
            row = rows.get(i)
            if row and j in row:
                del row[j]
                if not row:
                    del rows[i]
                cols[j].discard(i)
                if not cols[j]:
                    del cols[j]

    def add_row(dst: int, src: int, c: int) -> None:
        for j, v in list(rows.get(src, {}).items()):
            set_entry(dst, j, rows.get(dst, {}).get(j, 0) + c * v)

    def add_col(dst: int, src: int, c: int) -> None:
        for i in list(cols.get(src, set())):
            v = rows[i][src]
            set_entry(i, dst, rows.get(i, {}).get(dst, 0) + c * v)

    def negate_row(i: int) -> None:
        for j in list(rows.get(i, {})):
            rows[i][j] = -rows[i][j]

    divisors: list[int] = []
    while rows:
        pi, pj, best = -1, -1, 0
        for i, row in rows.items():
            for j, v in row.items():
                if best == 0 or abs(v) < abs(best):
                    pi, pj, best = i, j, v
                    if abs(v) == 1:
                        break
            if abs(best) == 1:
                break

        while True:
            if rows[pi][pj] < 0:
                negate_row(pi)
            piv = rows[pi][pj]

            col_rows = [i for i in cols[pj] if i != pi]
            for i in col_rows:
                q = rows[i][pj] // piv
                if q:
                    add_row(i, pi, -q)
            col_rows = [i for i in cols[pj] if i != pi]
            if col_rows:
                pi = min(col_rows, key=lambda i: abs(rows[i][pj]))
                continue

            row_cols = [j for j in rows[pi] if j != pj]
            for j in row_cols:
                q = rows[pi][j] // piv
                if q:
                    add_col(j, pj, -q)
            row_cols = [j for j in rows[pi] if j != pj]
            if row_cols:
                pj = min(row_cols, key=lambda j: abs(rows[pi][j]))
                continue

            piv = rows[pi][pj]
            offender = None
            for i, row in rows.items():
                if i == pi:
                    continue
                for j, v in row.items():
                    if v % piv:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(pi, offender, 1)

        divisors.append(abs(rows[pi][pj]))
        set_entry(pi, pj, 0)

    return SmithForm(divisors=tuple(sorted(divisors)))


# -- chain complexes and homology ----------------------------------------------


def boundary_matrices(
    k: SimplicialComplex,
) -> dict[int, dict[tuple[int, int], int]]:
    """Sparse boundary operators of the augmented chain complex.

    Dimension d maps d-faces (columns) to (d-1)-faces (rows) with the
    alternating-sign rule on sorted vertex lists; dimension 0 is the
    augmentation row of ones.
    """
    by_dim = k.faces_by_dim
    if 0 not in by_dim:
        raise PreconditionError("complex has no vertices")
    index: dict[int, dict[tuple[int, ...], int]] = {
        d: {f: i for i, f in enumerate(faces)} for d, faces in by_dim.items()
    }
    out: dict[int, dict[tuple[int, int], int]] = {
        0: {(0, c): 1 for c in range(len(by_dim[0]))}
    }
    for d in range(1, max(by_dim) + 1):
        entries: dict[tuple[int, int], int] = {}
        lower = index[d - 1]
        for c, face in enumerate(by_dim[d]):
            sign = 1
            for omit in range(len(face)):
                sub = face[:omit] + face[omit + 1 :]
                entries[(lower[sub], c)] = sign
                sign = -sign
        out[d] = entries
    return out


def validate_boundary_squares_to_zero(k: SimplicialComplex) -> None:
    """Direct check that consecutive boundary operators compose to zero."""
    mats = boundary_matrices(k)
    for d in range(1, max(mats) + 1):
        lower = mats[d - 1]
        upper: dict[int, dict[int, int]] = {}
        for (r, c), v in mats[d].items():
            upper.setdefault(c, {})[r] = v
        low_by_col: dict[int, dict[int, int]] = {}
        for (r, c), v in lower.items():
            low_by_col.setdefault(c, {})[r] = v
        for c, col in upper.items():
            acc: dict[int, int] = {}
            for mid, v in col.items():
                for r, w in low_by_col.get(mid, {}).items():
                    acc[r] = acc.get(r, 0) + v * w
            if any(acc.values()):
                raise StructureError(f"boundary composition is nonzero in dimension {d}")


@dataclass(frozen=True)
class HomologyProfile:
    """Reduced integer homology: per-dimension Betti numbers and torsion coefficients."""

    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]

    def group_str(self, k: int) -> str:
        parts = []
        if self.betti[k] == 1:
            parts.append("Z")
        elif self.betti[k] > 1:
            parts.append(f"Z^{self.betti[k]}")
        parts.extend(f"Z/{t}" for t in self.torsion[k])
        return " + ".join(parts) if parts else "0"

    def is_trivial(self, k: int) -> bool:
        return self.betti[k] == 0 and not self.torsion[k]

    def __str__(self) -> str:
        dims = ", ".join(f"H~{k}={self.group_str(k)}" for k in range(len(self.betti)))
        return f"HomologyProfile({dims})"


def reduced_homology(k: SimplicialComplex) -> HomologyProfile:
    """Reduced homology over Z in every dimension, from Smith normal forms."""
    mats = boundary_matrices(k)
    by_dim = k.faces_by_dim
    top = max(by_dim)
    forms = {d: _smith_sparse(dict(mats[d])) for d in mats}
    betti = []
    torsion = []
    for d in range(top + 1):
        f_d = len(by_dim.get(d, []))
        rank_d = forms[d].rank
        rank_up = forms[d + 1].rank if d + 1 in forms else 0
        betti.append(f_d - rank_d - rank_up)
        tors = tuple(t for t in forms[d + 1].divisors if t > 1) if d + 1 in forms else ()
        torsion.append(tors)
    return HomologyProfile(betti=tuple(betti), torsion=tuple(torsion))


def homological_connectivity(k: SimplicialComplex) -> int:
    """Largest c with vanishing reduced homology in all dimensions <= c.

    Returns -1 when the complex is disconnected.  When every reduced group
    up to the dimension of the complex vanishes, the dimension itself is
    returned: homology cannot certify connectivity beyond that.
    """
    profile = reduced_homology(k)
    for d in range(len(profile.betti)):
        if not profile.is_trivial(d):
            return d - 1
    return k.dim


# -- pseudomanifolds, orientation, degree ---------------------------------------


def _ridge_incidence(k: SimplicialComplex) -> dict[tuple[int, ...], list[int]]:
    ridges: dict[tuple[int, ...], list[int]] = {}
    for fi, facet in enumerate(k.facets):
        for omit in range(len(facet)):
            ridges.setdefault(facet[:omit] + facet[omit + 1 :], []).append(fi)
    return ridges


def is_pseudomanifold(k: SimplicialComplex, d: int) -> bool:
    """Pure of dimension d, every ridge in exactly two facets, dual graph connected."""
    if not k.facets or any(len(f) != d + 1 for f in k.facets):
        return False
    ridges = _ridge_incidence(k)
    if any(len(fs) != 2 for fs in ridges.values()):
        return False
    adjacency: dict[int, set[int]] = {i: set() for i in range(len(k.facets))}
    for a, b in ridges.values():
        adjacency[a].add(b)
        adjacency[b].add(a)
    seen = {0}
    stack = [0]
    while stack:
        for nb in adjacency[stack.pop()]:
            if nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) == len(k.facets)


@dataclass(frozen=True)
class Orientation:
    """A sign per facet making adjacent facets induce opposite signs on shared ridges."""

    complex: SimplicialComplex
    signs: tuple[int, ...]


def orient(k: SimplicialComplex) -> Orientation:
    """Orient a pseudomanifold by sign propagation over a spanning tree.

    Raises StructureError when the complex is not a pseudomanifold and
    NonOrientableError when propagation is inconsistent on a non-tree edge.
    """
    if not k.facets:
        raise StructureError("cannot orient a complex without facets")
    d = len(k.facets[0]) - 1
    if not is_pseudomanifold(k, d):
        raise StructureError("complex is not a pseudomanifold")
    ridges = _ridge_incidence(k)
    induced: dict[int, dict[tuple[int, ...], int]] = {}
    for fi, facet in enumerate(k.facets):
        signs = {}
        s = 1
        for omit in range(len(facet)):
            signs[facet[:omit] + facet[omit + 1 :]] = s
            s = -s
        induced[fi] = signs

    orientation = [0] * len(k.facets)
    orientation[0] = 1
    stack = [0]
    neighbors: dict[int, list[tuple[int, tuple[int, ...]]]] = {
        i: [] for i in range(len(k.facets))
    }
    for ridge, (a, b) in ridges.items():
        neighbors[a].append((b, ridge))
        neighbors[b].append((a, ridge))
    while stack:
        fi = stack.pop()
        for nb, ridge in neighbors[fi]:
            required = -orientation[fi] * induced[fi][ridge] * induced[nb][ridge]
            if orientation[nb] == 0:
                orientation[nb] = required
                stack.append(nb)
            elif orientation[nb] != required:
                raise NonOrientableError("orientation propagation is inconsistent")
    return Orientation(complex=k, signs=tuple(orientation))


def _permutation_parity(values: Sequence[int]) -> int:
    parity = 1
    vals = list(values)
    for i in range(len(vals)):
        for j in range(i + 1, len(vals)):
            if vals[i] > vals[j]:
                parity = -parity
    return parity


@dataclass(frozen=True)
class DegreeResult:
    """Degree of a simplicial map, signed relative to the returned orientations."""

    signed: int
    source_orientation: Orientation
    target_orientation: Orientation

    @property
    def absolute(self) -> int:
        return abs(self.signed)


def degree(
    m: SimplicialMap,
    source_orientation: Optional[Orientation] = None,
    target_orientation: Optional[Orientation] = None,
) -> DegreeResult:
    """Signed facet-preimage count of a map between oriented pseudomanifolds.

    For each target facet, sums the orientation-weighted parities of the
    source facets mapping bijectively onto it, and checks the sum is the
    same for every target facet.  The absolute value is independent of the
    orientation choices; the sign is relative to the returned ones.
    """
    src, tgt = m.source, m.target
    if src.dim != tgt.dim:
        raise PreconditionError("source and target must have equal dimension")
    or_s = source_orientation or orient(src)
    or_t = target_orientation or orient(tgt)
    d = src.dim
    tgt_index = {f: i for i, f in enumerate(tgt.facets)}
    sums = [0] * len(tgt.facets)
    nondegenerate = 0
    vm = m.vertex_map
    for si, facet in enumerate(src.facets):
        images = [vm[v] for v in facet]
        key = tuple(sorted(images))
        if len(set(images)) != d + 1:
            continue
        ti = tgt_index.get(key)
        if ti is None:
            # a d-dimensional image must be a facet of a pure target
            raise StructureError(f"facet image {key} is not a facet of the target")
        nondegenerate += 1
        sums[ti] += or_s.signs[si] * _permutation_parity(images) * or_t.signs[ti]
    if nondegenerate == 0:
        raise DegenerateMapError("every facet image is degenerate; no degree defined")
    if len(set(sums)) != 1:
        raise InconsistentDegreeError(
            f"preimage counts differ across target facets: {sorted(set(sums))}"
        )
    return DegreeResult(signed=sums[0], source_orientation=or_s, target_orientation=or_t)


# -- equivariant-map nonexistence certificate ------------------------------------


def _prime_power(n: int) -> Optional[tuple[int, int]]:
    if n < 2:
        return None
    p = next((q for q in range(2, n + 1) if n % q == 0), n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return (p, k) if n == 1 else None


@dataclass(frozen=True)
class DoldCertificate:
    """Homology-level certificate that no equivariant map to a sphere exists.

    ``certified`` holds exactly when the action is free and the homological
    connectivity of the complex is at least the sphere dimension.  The
    connectivity computed here is a homology-level proxy for topological
    connectivity; the certificate asserts the homology-level fact only.
    """

    group_name: str
    sphere_dim: int
    free: bool
    connectivity: int
    certified: bool
    verdict: str


def dold_certificate(action: ComplexAction, sphere_dim: int) -> DoldCertificate:
    """Certify nonexistence of an equivariant map to a free sphere, at homology level.

    Requires the acting group to be cyclic of prime-power order.  Refuses to
    certify (verdict "not free") when the action has a fixed point, and
    reports the homological connectivity either way.
    """
    group = action.group
    if _prime_power(group.order) is None or not group.is_cyclic():
        raise PreconditionError("certificate requires a cyclic group of prime-power order")
    free = action_is_free(action)
    connectivity = homological_connectivity(action.complex)
    if not free:
        verdict = "not free"
        certified = False
    elif connectivity >= sphere_dim:
        verdict = "certified (homology-level)"
        certified = True
    else:
        verdict = f"connectivity {connectivity} below sphere dimension {sphere_dim}"
        certified = False
    return DoldCertificate(
        group_name=group.name or f"order-{group.order}",
        sphere_dim=sphere_dim,
        free=free,
        connectivity=connectivity,
        certified=certified,
        verdict=verdict,
    )
