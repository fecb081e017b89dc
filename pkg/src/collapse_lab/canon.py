"""Canonical forms and automorphism counts.

Two canonical labelers are provided.  ``nauty`` (through pynauty) is the
default because census runs canonicalize millions of graphs.  ``python`` is a
self-contained refinement-plus-backtracking labeler used when pynauty is
missing and as an independent cross-check in tests.  Forms from the two
backends differ from each other but each satisfies the invariants on its own.

``automorphism_count`` never uses nauty; it is an exact backtracking count
and serves as an oracle independent of either labeler.
"""

from __future__ import annotations

import os

from .graph import Graph, _encode_graph6, iter_bits

try:
    import pynauty
except ImportError:  # pragma: no cover - exercised only without pynauty
    pynauty = None

_BACKEND = os.environ.get("COLLAPSE_LAB_CANON", "nauty" if pynauty else "python")


def backend() -> str:
    return _BACKEND


def set_backend(name: str) -> None:
    global _BACKEND
    if name not in ("nauty", "python"):
        raise ValueError(f"unknown canonical backend {name!r}")
    if name == "nauty" and pynauty is None:
        raise RuntimeError("pynauty is not installed")
    _BACKEND = name


def relabel_rows(rows: tuple[int, ...], lab: list[int]) -> tuple[int, ...]:
    """Rows of the graph whose vertex i is old vertex ``lab[i]``."""
    pos = [0] * len(rows)
    for i, v in enumerate(lab):
        pos[v] = i
    out = []
    for v in lab:
        r = rows[v]
        nr = 0
        while r:
            low = r & -r
            nr |= 1 << pos[low.bit_length() - 1]
            r ^= low
        out.append(nr)
    return tuple(out)


def _nauty_lab(rows: tuple[int, ...]) -> list[int]:
    adj = {}
    for v, r in enumerate(rows):
        nb = [u for u in iter_bits(r) if u > v]
        if nb:
            adj[v] = nb
    return pynauty.canon_label(pynauty.Graph(len(rows), adjacency_dict=adj))


# --------------------------------------------------------------------------
# pure-Python labeler


def _refine(rows: tuple[int, ...], cells: list[list[int]]) -> list[list[int]]:
    """Coarsest equitable refinement; split order depends only on structure."""
    cells = [c[:] for c in cells]
    changed = True
    while changed:
        changed = False
        for w_idx in range(len(cells)):
            wmask = 0
            for v in cells[w_idx]:
                wmask |= 1 << v
            new_cells = []
            split = False
            for c in cells:
                if len(c) == 1:
                    new_cells.append(c)
                    continue
                groups: dict[int, list[int]] = {}
                for v in c:
                    groups.setdefault((rows[v] & wmask).bit_count(), []).append(v)
                if len(groups) == 1:
                    new_cells.append(c)
                else:
                    split = True
                    for key in sorted(groups):
                        new_cells.append(groups[key])
            if split:
                cells = new_cells
                changed = True
                break
    return cells


def _individualize(cells: list[list[int]], v: int) -> list[list[int]]:
    out = []
    for c in cells:
        if v in c:
            out.append([v])
            rest = [u for u in c if u != v]
            if rest:
                out.append(rest)
        else:
            out.append(c)
    return out


def _orbit(v: int, gens: list[list[int]]) -> set[int]:
    orb = {v}
    stack = [v]
    while stack:
        x = stack.pop()
        for g in gens:
            y = g[x]
            if y not in orb:
                orb.add(y)
                stack.append(y)
    return orb


def _python_lab(rows: tuple[int, ...]) -> list[int]:
    n = len(rows)
    if n <= 1:
        return list(range(n))
    deg_cells: dict[int, list[int]] = {}
    for v in range(n):
        deg_cells.setdefault(rows[v].bit_count(), []).append(v)
    start = _refine(rows, [deg_cells[d] for d in sorted(deg_cells)])

    best: list = [None, None]  # encoding, lab
    first: list = [None, None]
    autos: list[list[int]] = []

    def leaf(cells):
        lab = [c[0] for c in cells]
        enc = relabel_rows(rows, lab)
        for ref in (first, best):
            if ref[0] == enc:
                perm = [0] * n
                for i in range(n):
                    perm[ref[1][i]] = lab[i]
                autos.append(perm)
                return
        if first[0] is None:
            first[0], first[1] = enc, lab
        if best[0] is None or enc < best[0]:
            best[0], best[1] = enc, lab

    def search(cells, prefix):
        if len(cells) == n:
            leaf(cells)
            return
        target = next(c for c in cells if len(c) > 1)
        done: set[int] = set()
        for v in target:
            if v in done:
                continue
            search(_refine(rows, _individualize(cells, v)), prefix + [v])
            gens = [a for a in autos if all(a[p] == p for p in prefix)]
            done |= _orbit(v, gens)

    search(start, [])
    return best[1]


def canonical_labeling(rows: tuple[int, ...], which: str | None = None) -> list[int]:
    """``lab`` such that vertex i of the canonical graph is old vertex ``lab[i]``."""
    which = which or _BACKEND
    if len(rows) <= 1:
        return list(range(len(rows)))
    if which == "nauty":
        return _nauty_lab(rows)
    return _python_lab(rows)


def canonical_rows(rows: tuple[int, ...], which: str | None = None) -> tuple[int, ...]:
    return relabel_rows(rows, canonical_labeling(rows, which))


def canonical_key(rows: tuple[int, ...], which: str | None = None) -> bytes:
    """graph6 bytes of the canonically relabeled graph; valid for n = 0 too."""
    return _encode_graph6(canonical_rows(rows, which))


def canonical_form(g: Graph, which: str | None = None) -> bytes:
    return canonical_key(g.rows, which)


# --------------------------------------------------------------------------
# automorphisms


def _extend(rows, n, mapping, used, order, depth):
    # Search for one automorphism extending ``mapping`` along ``order``.
    if depth == n:
        return True
    v = order[depth]
    rv = rows[v]
    dv = rv.bit_count()
    for w in range(n):
        if (used >> w) & 1 or rows[w].bit_count() != dv:
            continue
        ok = True
        for u in order[:depth]:
            if ((rv >> u) & 1) != ((rows[w] >> mapping[u]) & 1):
                ok = False
                break
        if not ok:
            continue
        mapping[v] = w
        if _extend(rows, n, mapping, used | (1 << w), order, depth + 1):
            return True
        del mapping[v]
    return False


def _find_automorphism(rows, fixed: list[int], b: int, w: int) -> list[int] | None:
    n = len(rows)
    mapping = {p: p for p in fixed}
    mapping[b] = w
    used = 0
    for x in mapping.values():
        used |= 1 << x
    # Consistency of the seeded pairs.
    seeded = list(mapping)
    for i, x in enumerate(seeded):
        if rows[x].bit_count() != rows[mapping[x]].bit_count():
            return None
        for y in seeded[:i]:
            if ((rows[x] >> y) & 1) != ((rows[mapping[x]] >> mapping[y]) & 1):
                return None
    # BFS order keeps partial maps tightly constrained.
    order = seeded[:]
    seen = set(order)
    i = 0
    while len(order) < n:
        if i < len(order):
            for u in iter_bits(rows[order[i]]):
                if u not in seen:
                    seen.add(u)
                    order.append(u)
            i += 1
        else:
            u = next(x for x in range(n) if x not in seen)
            seen.add(u)
            order.append(u)
    if not _extend(rows, n, mapping, used, order, len(seeded)):
        return None
    return [mapping[v] for v in range(n)]


def automorphism_count(g: Graph) -> int:
    """Order of Aut(g), counted exactly through a stabilizer chain."""
    rows = g.rows
    n = g.n
    if n == 0:
        raise ValueError("automorphism_count needs at least one vertex")
    total = 1
    fixed: list[int] = []
    for b in range(n):
        found: list[list[int]] = []
        orbit = {b}
        for w in range(n):
            if w in orbit or w in fixed:
                continue
            perm = _find_automorphism(rows, fixed, b, w)
            if perm is not None:
                found.append(perm)
                orbit = _orbit(b, found)
        total *= len(orbit)
        fixed.append(b)
    return total


def automorphisms(g: Graph) -> list[list[int]]:
    """Every automorphism as a permutation list; only sensible for small groups."""
    rows = g.rows
    n = g.n
    out: list[list[int]] = []

    def rec(mapping, used, v):
        if v == n:
            out.append([mapping[x] for x in range(n)])
            return
        rv = rows[v]
        for w in range(n):
            if (used >> w) & 1 or rows[w].bit_count() != rv.bit_count():
                continue
            if all(((rv >> u) & 1) == ((rows[w] >> mapping[u]) & 1) for u in range(v)):
                mapping[v] = w
                rec(mapping, used | (1 << w), v + 1)
                del mapping[v]

    rec({}, 0, 0)
    return out


def isomorphic(a: Graph, b: Graph) -> bool:
    return a.n == b.n and canonical_key(a.rows) == canonical_key(b.rows)
