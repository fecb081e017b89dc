"""Labeled simple graphs on at most 64 vertices.

Adjacency is stored as one integer bitmask per vertex, so neighborhood
algebra reduces to a handful of integer operations.  Graphs are immutable
values; every operation returns a new graph.
"""

from __future__ import annotations

from typing import Iterable, Iterator

MAX_VERTICES = 64


class CapacityError(ValueError):
    """Raised when a graph would exceed MAX_VERTICES vertices."""


class Graph:
    """Simple undirected graph on vertices 0..n-1.

    ``rows[v]`` is the bitmask of neighbors of ``v``.
    """

    __slots__ = ("n", "rows")

    def __init__(self, n: int, rows: Iterable[int] | None = None):
        if not 0 <= n <= MAX_VERTICES:
            raise CapacityError(f"graph on {n} vertices exceeds capacity {MAX_VERTICES}")
        rows = tuple(rows) if rows is not None else (0,) * n
        if len(rows) != n:
            raise ValueError(f"expected {n} adjacency rows, got {len(rows)}")
        full = (1 << n) - 1
        for v, r in enumerate(rows):
            if r & ~full or r < 0:
                raise ValueError(f"row {v} references a vertex outside 0..{n - 1}")
            if (r >> v) & 1:
                raise ValueError(f"loop at vertex {v}")
            w = r
            while w:
                low = w & -w
                u = low.bit_length() - 1
                if not (rows[u] >> v) & 1:
                    raise ValueError(f"adjacency not symmetric at ({v}, {u})")
                w ^= low
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", rows)

    @classmethod
    def _raw(cls, rows: tuple[int, ...]) -> Graph:
        # Trusted constructor for hot paths; rows must already be valid.
        g = object.__new__(cls)
        object.__setattr__(g, "n", len(rows))
        object.__setattr__(g, "rows", rows)
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        if not 0 <= n <= MAX_VERTICES:
            raise CapacityError(f"graph on {n} vertices exceeds capacity {MAX_VERTICES}")
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls._raw(tuple(rows))

    @classmethod
    def complete(cls, n: int) -> Graph:
        full = (1 << n) - 1
        return cls._raw(tuple(full ^ (1 << v) for v in range(n)))

    @classmethod
    def cycle(cls, n: int) -> Graph:
        return cls.from_edges(n, ((i, (i + 1) % n) for i in range(n)))

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls.from_edges(n, ((i, i + 1) for i in range(n - 1)))

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"

    def __reduce__(self):
        return (Graph._raw, (self.rows,))

    @property
    def m(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.rows[u] >> v) & 1)

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        """Edges as (u, v) with u < v, in lexicographic order."""
        out = []
        for u, r in enumerate(self.rows):
            w = r >> (u + 1)
            v = u + 1
            while w:
                if w & 1:
                    out.append((u, v))
                w >>= 1
                v += 1
        return out

    def non_edges(self) -> list[tuple[int, int]]:
        out = []
        for u in range(self.n):
            for v in range(u + 1, self.n):
                if not (self.rows[u] >> v) & 1:
                    out.append((u, v))
        return out

    def add_edge(self, u: int, v: int) -> Graph:
        _check_pair(self, u, v)
        rows = list(self.rows)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        return Graph._raw(tuple(rows))

    def remove_edge(self, u: int, v: int) -> Graph:
        _check_pair(self, u, v)
        rows = list(self.rows)
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
        return Graph._raw(tuple(rows))

    def add_vertex(self, neighbors: Iterable[int]) -> Graph:
        """Return a copy with a new vertex ``n`` adjacent to ``neighbors``."""
        if self.n >= MAX_VERTICES:
            raise CapacityError(f"cannot add a vertex to a graph on {self.n} vertices")
        mask = vertex_mask(self, neighbors)
        new = self.n
        rows = [r | ((mask >> v) & 1) << new for v, r in enumerate(self.rows)]
        rows.append(mask)
        return Graph._raw(tuple(rows))

    def relabel(self, perm: list[int]) -> Graph:
        """Relabel so that old vertex ``v`` becomes ``perm[v]``."""
        rows = [0] * self.n
        for v, r in enumerate(self.rows):
            nr = 0
            for u in iter_bits(r):
                nr |= 1 << perm[u]
            rows[perm[v]] = nr
        return Graph._raw(tuple(rows))


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits(mask: int) -> list[int]:
    return list(iter_bits(mask))


def vertex_mask(g: Graph, vertices: Iterable[int] | int) -> int:
    if isinstance(vertices, int):
        mask = vertices
        if mask < 0 or mask >> g.n:
            raise ValueError(f"vertex set {mask:#x} not within 0..{g.n - 1}")
        return mask
    mask = 0
    for v in vertices:
        _check_vertex(g, v)
        mask |= 1 << v
    return mask


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range for graph on {g.n} vertices")


def _check_pair(g: Graph, u: int, v: int) -> None:
    _check_vertex(g, u)
    _check_vertex(g, v)
    if u == v:
        raise ValueError(f"vertices must be distinct, got {u} twice")


def open_neighborhood(g: Graph, v: int) -> frozenset[int]:
    _check_vertex(g, v)
    return frozenset(iter_bits(g.rows[v]))


def closed_neighborhood(g: Graph, v: int) -> frozenset[int]:
    _check_vertex(g, v)
    return frozenset(iter_bits(g.rows[v] | 1 << v))


def common_neighborhood(g: Graph, u: int, v: int) -> frozenset[int]:
    _check_pair(g, u, v)
    return frozenset(iter_bits(g.rows[u] & g.rows[v]))


def induced_rows(rows: tuple[int, ...], mask: int) -> tuple[int, ...]:
    """Adjacency rows of the subgraph induced on ``mask``, relabeled ascending."""
    keep = bits(mask)
    if len(keep) == len(rows):
        return rows
    pos = {v: i for i, v in enumerate(keep)}
    out = []
    for v in keep:
        r = rows[v] & mask
        nr = 0
        while r:
            low = r & -r
            nr |= 1 << pos[low.bit_length() - 1]
            r ^= low
        out.append(nr)
    return tuple(out)


def induced_subgraph(g: Graph, s: Iterable[int] | int) -> Graph:
    """Subgraph induced on ``s``; vertex i of the result is the i-th smallest of ``s``."""
    return Graph._raw(induced_rows(g.rows, vertex_mask(g, s)))


def delete_vertex(g: Graph, v: int) -> Graph:
    _check_vertex(g, v)
    return Graph._raw(induced_rows(g.rows, ((1 << g.n) - 1) ^ (1 << v)))


def cone_apex(rows: tuple[int, ...]) -> int | None:
    n = len(rows)
    if n == 0:
        return None
    target = n - 1
    for v, r in enumerate(rows):
        if r.bit_count() == target:
            return v
    return None


def is_cone(g: Graph) -> int | None:
    """Least-index vertex adjacent to every other vertex, or None.

    The one-vertex graph is a cone on its only vertex; the empty graph is not.
    """
    return cone_apex(g.rows)


def component_masks(rows: tuple[int, ...]) -> list[int]:
    n = len(rows)
    seen = 0
    comps = []
    for s in range(n):
        if (seen >> s) & 1:
            continue
        comp = frontier = 1 << s
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= rows[v]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        comps.append(comp)
    return comps


def rows_connected(rows: tuple[int, ...]) -> bool:
    n = len(rows)
    if n == 0:
        return False
    full = (1 << n) - 1
    comp = frontier = 1
    while frontier:
        nxt = 0
        while frontier:
            low = frontier & -frontier
            nxt |= rows[low.bit_length() - 1]
            frontier ^= low
        frontier = nxt & ~comp
        comp |= frontier
    return comp == full


def is_connected(g: Graph) -> bool:
    return rows_connected(g.rows)


def disjoint_union(a: Graph, b: Graph) -> Graph:
    if a.n + b.n > MAX_VERTICES:
        raise CapacityError("disjoint union exceeds capacity")
    return Graph._raw(a.rows + tuple(r << a.n for r in b.rows))


def cone_over(g: Graph) -> Graph:
    """Add an apex adjacent to every vertex of ``g``."""
    return g.add_vertex(range(g.n))


# --------------------------------------------------------------------------
# graph6

class Graph6Error(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte offset {offset}")
        self.offset = offset


def _graph6_header(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    return bytes([126, 63 + ((n >> 12) & 63), 63 + ((n >> 6) & 63), 63 + (n & 63)])


def _encode_graph6(rows: tuple[int, ...]) -> bytes:
    n = len(rows)
    out = bytearray(_graph6_header(n))
    acc = 0
    k = 0
    for j in range(1, n):
        col = rows[j]
        for i in range(j):
            acc = (acc << 1) | ((col >> i) & 1)
            k += 1
            if k == 6:
                out.append(acc + 63)
                acc = 0
                k = 0
    if k:
        out.append((acc << (6 - k)) + 63)
    return bytes(out)


def emit_graph6(g: Graph) -> bytes:
    """graph6 record for ``g`` (no trailing newline)."""
    if g.n == 0:
        raise ValueError("the empty graph has no graph6 record here")
    return _encode_graph6(g.rows)


def parse_graph6(data: bytes | str) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii", errors="replace")
    data = data.strip(b"\r\n")
    if data.startswith(b">>graph6<<"):
        data = data[10:]
    if not data:
        raise Graph6Error("empty record", 0)
    for off, b in enumerate(data):
        if not 63 <= b <= 126:
            if off == 0:
                raise Graph6Error(f"malformed header byte {b!r}", 0)
            raise Graph6Error(f"byte {b!r} outside the graph6 alphabet", off)
    if data[0] == 126:
        if len(data) < 4:
            raise Graph6Error("truncated size header", len(data))
        if data[1] == 126:
            raise Graph6Error("8-byte size header not supported", 1)
        n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        body = 4
    else:
        n = data[0] - 63
        body = 1
    if n > MAX_VERTICES:
        raise CapacityError(f"graph6 record declares {n} vertices, capacity is {MAX_VERTICES}")
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    have = len(data) - body
    if have < need:
        raise Graph6Error(f"truncated bit payload: need {need} bytes, have {have}", len(data))
    if have > need:
        raise Graph6Error(f"{have - need} trailing bytes after payload", body + need)
    rows = [0] * n
    i, j = 0, 1
    k = 0
    for b in data[body:body + need]:
        x = b - 63
        for shift in range(5, -1, -1):
            if k == nbits:
                break
            if (x >> shift) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
            i += 1
            if i == j:
                i = 0
                j += 1
    return Graph._raw(tuple(rows))


# --------------------------------------------------------------------------
# edge-list text

def parse_edge_list(text: str) -> Graph:
    """Parse "n m" then m lines "u v"; '#' lines are comments."""
    tokens: list[str] = []
    for line in text.splitlines():
        if line.lstrip().startswith("#"):
            continue
        tokens.extend(line.split())
    if len(tokens) < 2:
        raise ValueError("edge list needs a header line 'n m'")
    n, m = int(tokens[0]), int(tokens[1])
    rest = tokens[2:]
    if len(rest) != 2 * m:
        raise ValueError(f"edge list declares {m} edges but has {len(rest) / 2:g}")
    edges = [(int(rest[2 * i]), int(rest[2 * i + 1])) for i in range(m)]
    return Graph.from_edges(n, edges)


def emit_edge_list(g: Graph) -> str:
    if g.n == 0:
        raise ValueError("the empty graph has no edge-list record here")
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"
