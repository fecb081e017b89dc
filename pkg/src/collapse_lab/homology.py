"""Clique complexes and their reduced integral homology.

Boundary matrices are kept as sparse columns.  Unit pivots (the common case
for boundary matrices) are eliminated directly; whatever is left is reduced
to Smith normal form densely with arbitrary-precision integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .graph import Graph

DENSE_THRESHOLD = 256


@dataclass(frozen=True)
class CliqueComplex:
    faces_by_dim: tuple[tuple[tuple[int, ...], ...], ...]

    @property
    def dim(self) -> int:
        return len(self.faces_by_dim) - 1

    def f_vector(self) -> list[int]:
        return [len(f) for f in self.faces_by_dim]

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * len(f) for d, f in enumerate(self.faces_by_dim))


@dataclass(frozen=True)
class HomologyProfile:
    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]
    euler: int = field(default=0)

    @property
    def trivial(self) -> bool:
        return not any(self.betti) and not any(self.torsion)

    def to_json(self) -> dict:
        return {
            "betti": list(self.betti),
            "torsion": [list(t) for t in self.torsion],
            "euler": self.euler,
        }


def clique_faces(rows: tuple[int, ...]) -> list[list[tuple[int, ...]]]:
    """All cliques of the graph grouped by dimension, each level sorted."""
    n = len(rows)
    # Track each face with the mask of later vertices adjacent to all of it.
    level = [((v,), rows[v] >> (v + 1) << (v + 1)) for v in range(n)]
    out = [[f for f, _ in level]]
    while True:
        nxt = []
        for face, cand in level:
            while cand:
                low = cand & -cand
                u = low.bit_length() - 1
                cand ^= low
                nxt.append((face + (u,), cand & rows[u]))
        if not nxt:
            break
        out.append([f for f, _ in nxt])
        level = nxt
    return out


def clique_counts(rows: tuple[int, ...]) -> list[int]:
    """Face counts per dimension without materializing faces."""
    n = len(rows)
    counts: list[int] = []

    def rec(depth: int, cand: int) -> None:
        while cand:
            low = cand & -cand
            u = low.bit_length() - 1
            cand ^= low
            if depth == len(counts):
                counts.append(0)
            counts[depth] += 1
            rec(depth + 1, cand & rows[u])

    rec(0, (1 << n) - 1)
    return counts


def clique_complex(g: Graph) -> CliqueComplex:
    if g.n == 0:
        raise ValueError("clique complex of the empty graph is not defined here")
    return CliqueComplex(tuple(tuple(level) for level in clique_faces(g.rows)))


def _sparse_boundary(lower: list[tuple[int, ...]], upper: list[tuple[int, ...]]) -> list[dict[int, int]]:
    index = {f: i for i, f in enumerate(lower)}
    cols = []
    for face in upper:
        col = {}
        for i in range(len(face)):
            col[index[face[:i] + face[i + 1:]]] = -1 if i & 1 else 1
        cols.append(col)
    return cols


def boundary_matrix(c: CliqueComplex, d: int) -> list[list[int]]:
    """Dense boundary matrix from d-faces (columns) to (d-1)-faces (rows)."""
    if not 1 <= d <= c.dim:
        raise ValueError(f"dimension {d} outside 1..{c.dim}")
    lower, upper = c.faces_by_dim[d - 1], c.faces_by_dim[d]
    mat = [[0] * len(upper) for _ in lower]
    for j, col in enumerate(_sparse_boundary(list(lower), list(upper))):
        for i, v in col.items():
            mat[i][j] = v
    return mat


# --------------------------------------------------------------------------
# Smith normal form


def _dense_diagonal(mat: list[list[int]]) -> list[int]:
    """Nonzero diagonal of an equivalent diagonal matrix (not yet a divisor chain)."""
    a = [row[:] for row in mat if any(row)]
    if not a:
        return []
    m, n = len(a), len(a[0])
    diag = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        a[t], a[pi] = a[pi], a[t]
        if pj != t:
            for row in a:
                row[t], row[pj] = row[pj], row[t]
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                x = a[i][t]
                if x:
                    q = x // p
                    ri, rt = a[i], a[t]
                    for j in range(t, n):
                        if rt[j]:
                            ri[j] -= q * rt[j]
                    if ri[t]:
                        dirty = True
            for j in range(t + 1, n):
                x = a[t][j]
                if x:
                    q = x // p
                    for i in range(t, m):
                        if a[i][t]:
                            a[i][j] -= q * a[i][t]
                    if a[t][j]:
                        dirty = True
            if not dirty:
                break
            # A remainder survived: move the smallest entry of row/column t to the pivot.
            cand = [(abs(a[i][t]), i, t) for i in range(t, m) if a[i][t]]
            cand += [(abs(a[t][j]), t, j) for j in range(t, n) if a[t][j]]
            _, pi, pj = min(cand)
            a[t], a[pi] = a[pi], a[t]
            if pj != t:
                for row in a:
                    row[t], row[pj] = row[pj], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def _divisor_chain(diag: list[int]) -> list[int]:
    d = sorted(diag)
    k = len(d)
    for i in range(k):
        for j in range(i + 1, k):
            g = gcd(d[i], d[j])
            if g != d[i]:
                d[i], d[j] = g, d[i] * d[j] // g
    return d


def invariant_factors(cols: list[dict[int, int]]) -> list[int]:
    """Nonzero invariant factors of a sparse integer matrix given by columns."""
    cols = [dict(c) for c in cols if c]
    rowidx: dict[int, set[int]] = {}
    for j, col in enumerate(cols):
        for i in col:
            rowidx.setdefault(i, set()).add(j)
    alive = set(range(len(cols)))
    units = 0
    progress = True
    while progress:
        progress = False
        for j in sorted(alive, key=lambda c: len(cols[c])):
            if j not in alive:
                continue
            col = cols[j]
            piv = None
            for i, v in col.items():
                if v == 1 or v == -1:
                    if piv is None or len(rowidx[i]) < len(rowidx[piv]):
                        piv = i
            if piv is None:
                continue
            s = col[piv]
            for k in list(rowidx[piv]):
                if k == j:
                    continue
                other = cols[k]
                f = other[piv] * s
                for i, v in col.items():
                    nv = other.get(i, 0) - f * v
                    if nv:
                        if i not in other:
                            rowidx[i].add(k)
                        other[i] = nv
                    elif i in other:
                        del other[i]
                        rowidx[i].discard(k)
                if not other:
                    alive.discard(k)
            for i in col:
                rowidx[i].discard(j)
            del rowidx[piv]
            alive.discard(j)
            units += 1
            progress = True
    rest = [cols[j] for j in sorted(alive) if cols[j]]
    if not rest:
        return [1] * units
    rrows = sorted({i for c in rest for i in c})
    pos = {r: k for k, r in enumerate(rrows)}
    dense = [[0] * len(rest) for _ in rrows]
    for j, c in enumerate(rest):
        for i, v in c.items():
            dense[pos[i]][j] = v
    return [1] * units + _divisor_chain(_dense_diagonal(dense))


def smith_normal_form(mat: list[list[int]]) -> list[int]:
    """Nonzero invariant factors d1 | d2 | ... of a dense integer matrix."""
    if not mat or not mat[0]:
        return []
    cols = []
    for j in range(len(mat[0])):
        cols.append({i: row[j] for i, row in enumerate(mat) if row[j]})
    if len(cols) <= DENSE_THRESHOLD:
        return _divisor_chain(_dense_diagonal(mat))
    return invariant_factors(cols)


def rational_rank(mat: list[list[int]]) -> int:
    """Rank over Q by fraction Gaussian elimination; independent of the SNF code."""
    a = [[Fraction(x) for x in row] for row in mat]
    rank = 0
    ncols = len(a[0]) if a else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(a)) if a[r][c] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for r in range(len(a)):
            if r != rank and a[r][c] != 0:
                f = a[r][c] / a[rank][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[rank])]
        rank += 1
    return rank


def _profile(faces: list[list[tuple[int, ...]]], rational: bool = False) -> HomologyProfile:
    top = len(faces) - 1
    ranks = [0] * (top + 2)
    factors: list[list[int]] = [[] for _ in range(top + 2)]
    for d in range(1, top + 1):
        cols = _sparse_boundary(faces[d - 1], faces[d])
        if rational:
            dense = [[0] * len(cols) for _ in faces[d - 1]]
            for j, col in enumerate(cols):
                for i, v in col.items():
                    dense[i][j] = v
            ranks[d] = rational_rank(dense)
        else:
            inv = invariant_factors(cols)
            ranks[d] = len(inv)
            factors[d] = [x for x in inv if x > 1]
    # Augmentation C_0 -> Z has rank 1 for a nonempty complex.
    betti = []
    for d in range(top + 1):
        b = len(faces[d]) - ranks[d] - ranks[d + 1] - (1 if d == 0 else 0)
        betti.append(b)
    torsion = tuple(tuple(factors[d + 1]) for d in range(top + 1))
    euler = sum((-1) ** d * len(f) for d, f in enumerate(faces))
    return HomologyProfile(tuple(betti), torsion, euler)


def homology(g: Graph) -> HomologyProfile:
    if g.n == 0:
        raise ValueError("homology of the empty graph is not defined here")
    return _profile(clique_faces(g.rows))


def rational_betti(g: Graph) -> tuple[int, ...]:
    """Reduced Betti numbers over Q, computed without the Smith normal form."""
    if g.n == 0:
        raise ValueError("homology of the empty graph is not defined here")
    return _profile(clique_faces(g.rows), rational=True).betti


def rows_trivial_homology(rows: tuple[int, ...]) -> bool:
    counts = clique_counts(rows)
    if sum((-1) ** d * c for d, c in enumerate(counts)) != 1:
        return False
    return _profile(clique_faces(rows)).trivial


def is_trivial_homology(g: Graph) -> bool:
    if g.n == 0:
        raise ValueError("homology of the empty graph is not defined here")
    return rows_trivial_homology(g.rows)
