"""Contractibility predicates, move scripts and counterexample witnesses.

Every predicate works on adjacency-row tuples internally.  Exact searches
memoize verdicts on canonical-form bytes; the greedy algorithms memoize on
the labeled rows, since their answer may depend on the labeling.

Edge and neighborhood legality is always decided with ``sic_exact``: full
membership in the class I of contractible graphs is not decidable here, and
the two classes agree on every graph with at most ten vertices.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Union

from . import canon
from .graph import (
    MAX_VERTICES,
    CapacityError,
    Graph,
    bits,
    cone_apex,
    induced_rows,
    iter_bits,
    parse_edge_list,
    emit_edge_list,
    rows_connected,
)
from .homology import rows_trivial_homology

FRAGMENT_NOTE = "contractibility tested in the decidable fragment I_S"


# --------------------------------------------------------------------------
# moves and scripts


@dataclass(frozen=True)
class DeleteVertex:
    v: int

    def __str__(self) -> str:
        return f"DV {self.v}"


@dataclass(frozen=True)
class GlueVertex:
    neighborhood: tuple[int, ...]

    def __post_init__(self):
        nb = tuple(sorted(set(self.neighborhood)))
        if not nb:
            raise ValueError("a glued vertex needs a nonempty neighborhood")
        object.__setattr__(self, "neighborhood", nb)

    def __str__(self) -> str:
        return "GV " + " ".join(map(str, self.neighborhood))


@dataclass(frozen=True)
class DeleteEdge:
    u: int
    v: int

    def __post_init__(self):
        if self.u == self.v:
            raise ValueError("edge endpoints must differ")

    def __str__(self) -> str:
        return f"DE {self.u} {self.v}"


@dataclass(frozen=True)
class GlueEdge:
    u: int
    v: int

    def __post_init__(self):
        if self.u == self.v:
            raise ValueError("edge endpoints must differ")

    def __str__(self) -> str:
        return f"GE {self.u} {self.v}"


Move = Union[DeleteVertex, GlueVertex, DeleteEdge, GlueEdge]


def parse_move(line: str) -> Move:
    parts = line.split()
    if not parts:
        raise ValueError("empty move line")
    op, args = parts[0].upper(), [int(x) for x in parts[1:]]
    if op == "DV" and len(args) == 1:
        return DeleteVertex(args[0])
    if op == "GV" and args:
        return GlueVertex(tuple(args))
    if op == "DE" and len(args) == 2:
        return DeleteEdge(*args)
    if op == "GE" and len(args) == 2:
        return GlueEdge(*args)
    raise ValueError(f"cannot parse move {line.strip()!r}")


@dataclass
class MoveScript:
    initial: Graph
    moves: list[Move] = field(default_factory=list)

    def to_text(self) -> str:
        return emit_edge_list(self.initial) + "".join(f"{m}\n" for m in self.moves)

    @classmethod
    def from_text(cls, text: str) -> MoveScript:
        lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
        if not lines:
            raise ValueError("script is empty")
        n, m = (int(x) for x in lines[0].split()[:2])
        graph = parse_edge_list("\n".join(lines[: m + 1]))
        moves = [parse_move(ln) for ln in lines[m + 1:]]
        return cls(graph, moves)


@dataclass(frozen=True)
class ReductionWitness:
    """Deletions (in original labels) that take a graph down to one vertex."""

    moves: tuple[Move, ...]

    def __iter__(self):
        return iter(self.moves)

    def __len__(self) -> int:
        return len(self.moves)

    def script(self, g: Graph) -> MoveScript:
        return MoveScript(g, list(self.moves))

    def to_json(self) -> list[str]:
        return [str(m) for m in self.moves]


@dataclass(frozen=True)
class AxiomReport:
    holds: bool
    failing_vertex: int | None
    checked_pairs: int


class ScriptError(ValueError):
    def __init__(self, index: int, message: str):
        super().__init__(f"move {index}: {message}")
        self.index = index


class PreconditionError(ValueError):
    pass


# --------------------------------------------------------------------------
# memo tables


class Memo:
    """Verdict caches shared by the exact searches.

    Cached values depend only on the key, so concurrent writers can only ever
    store equal values.  With ``labeled`` the key is the raw adjacency rows
    instead of the canonical form: slower, but it shares nothing across
    isomorphic graphs, which makes it a reference for the canonical keying.
    """

    def __init__(self, enabled: bool = True, canon_cache_limit: int = 1 << 21, labeled: bool = False):
        self.enabled = enabled
        self.labeled = labeled
        self.canon_cache_limit = canon_cache_limit
        self.svic: dict[bytes, bool] = {}
        self.sic: dict[bytes, bool] = {}
        self.kdis: dict[tuple[bytes, int], bool] = {}
        self.svic_greedy: dict[tuple[int, ...], bool] = {}
        self.sic_greedy: dict[tuple[int, ...], bool] = {}
        self._canon: dict[tuple[int, ...], bytes] = {}

    def key(self, rows: tuple[int, ...]) -> bytes | tuple[int, ...]:
        if self.labeled:
            return rows
        k = self._canon.get(rows)
        if k is None:
            if len(self._canon) >= self.canon_cache_limit:
                self._canon.clear()
            k = canon.canonical_key(rows)
            self._canon[rows] = k
        return k

    def clear(self) -> None:
        for table in (self.svic, self.sic, self.kdis, self.svic_greedy, self.sic_greedy, self._canon):
            table.clear()

    def size(self) -> int:
        return len(self.svic) + len(self.sic) + len(self.kdis)


DEFAULT_MEMO = Memo()


def _memo(memo: Memo | None) -> Memo:
    return DEFAULT_MEMO if memo is None else memo


def _full(n: int) -> int:
    return (1 << n) - 1


def _minus_vertex(rows: tuple[int, ...], v: int) -> tuple[int, ...]:
    return induced_rows(rows, _full(len(rows)) ^ (1 << v))


def _minus_edge(rows: tuple[int, ...], u: int, v: int) -> tuple[int, ...]:
    r = list(rows)
    r[u] &= ~(1 << v)
    r[v] &= ~(1 << u)
    return tuple(r)


def _edges(rows: tuple[int, ...]) -> Iterator[tuple[int, int]]:
    for u, r in enumerate(rows):
        for v in iter_bits(r >> (u + 1) << (u + 1)):
            yield u, v


def _trivial_verdict(rows: tuple[int, ...]) -> bool | None:
    # Answers shared by every class here: K1 yes, empty/disconnected no, cones yes.
    n = len(rows)
    if n == 0:
        return False
    if n == 1:
        return True
    if cone_apex(rows) is not None:
        return True
    if not rows_connected(rows):
        return False
    return None


# --------------------------------------------------------------------------
# greedy algorithms


def _svic_greedy(rows: tuple[int, ...], memo: Memo) -> bool:
    n = len(rows)
    if n == 0:
        return False
    if n == 1:
        return True
    table = memo.svic_greedy if memo.enabled else None
    if table is not None:
        hit = table.get(rows)
        if hit is not None:
            return hit
    result = False
    if rows_connected(rows):
        for v in range(n):
            if _svic_greedy(induced_rows(rows, rows[v]), memo):
                result = _svic_greedy(_minus_vertex(rows, v), memo)
                break
    if table is not None:
        table[rows] = result
    return result


def svic_greedy(g: Graph, memo: Memo | None = None) -> bool:
    """First-fit vertex deletion: commit to the first vertex whose neighborhood passes."""
    return _svic_greedy(g.rows, _memo(memo))


def _sic_greedy(rows: tuple[int, ...], memo: Memo) -> bool:
    n = len(rows)
    if n == 0:
        return False
    if n == 1:
        return True
    table = memo.sic_greedy if memo.enabled else None
    if table is not None:
        hit = table.get(rows)
        if hit is not None:
            return hit
    result = False
    if rows_connected(rows):
        for v in range(n):
            if _sic_greedy(induced_rows(rows, rows[v]), memo):
                result = _sic_greedy(_minus_vertex(rows, v), memo)
                break
        else:
            for u, v in _edges(rows):
                common = rows[u] & rows[v]
                if common and _sic_greedy(induced_rows(rows, common), memo):
                    result = _sic_greedy(_minus_edge(rows, u, v), memo)
                    break
    if table is not None:
        table[rows] = result
    return result


def sic_greedy(g: Graph, memo: Memo | None = None) -> bool:
    """First-fit deletion of vertices, then edges, with contractible neighborhoods."""
    return _sic_greedy(g.rows, _memo(memo))


# --------------------------------------------------------------------------
# exact searches


def _svic(rows: tuple[int, ...], memo: Memo) -> bool:
    quick = _trivial_verdict(rows)
    if quick is not None:
        return quick
    key = memo.key(rows) if memo.enabled else None
    if key is not None:
        hit = memo.svic.get(key)
        if hit is not None:
            return hit
    result = False
    for v in range(len(rows)):
        if _svic(induced_rows(rows, rows[v]), memo) and _svic(_minus_vertex(rows, v), memo):
            result = True
            break
    if key is not None:
        memo.svic[key] = result
    return result


def _svic_witness(rows: tuple[int, ...], labels: list[int], memo: Memo) -> list[Move]:
    moves: list[Move] = []
    while len(rows) > 1:
        for v in range(len(rows)):
            if _svic(induced_rows(rows, rows[v]), memo):
                rest = _minus_vertex(rows, v)
                if _svic(rest, memo):
                    moves.append(DeleteVertex(labels[v]))
                    rows = rest
                    labels = labels[:v] + labels[v + 1:]
                    break
        else:  # pragma: no cover - guarded by the verdict
            raise AssertionError("witness walk lost the reduction")
    return moves


def svic_exact(g: Graph, memo: Memo | None = None) -> tuple[bool, ReductionWitness | None]:
    """Is some order of deleting strong-vertex-contractible vertices able to reach K1?"""
    if g.n == 0:
        raise ValueError("svic_exact needs at least one vertex")
    memo = _memo(memo)
    if not _svic(g.rows, memo):
        return False, None
    return True, ReductionWitness(tuple(_svic_witness(g.rows, list(range(g.n)), memo)))


def _sic(rows: tuple[int, ...], memo: Memo) -> bool:
    quick = _trivial_verdict(rows)
    if quick is not None:
        return quick
    key = memo.key(rows) if memo.enabled else None
    if key is not None:
        hit = memo.sic.get(key)
        if hit is not None:
            return hit
    result = False
    for v in range(len(rows)):
        if _sic(induced_rows(rows, rows[v]), memo) and _sic(_minus_vertex(rows, v), memo):
            result = True
            break
    else:
        for u, v in _edges(rows):
            common = rows[u] & rows[v]
            if not common or not _sic(induced_rows(rows, common), memo):
                continue
            if _sic(_minus_edge(rows, u, v), memo):
                result = True
                break
    if key is not None:
        memo.sic[key] = result
    return result


def _sic_witness(rows: tuple[int, ...], labels: list[int], memo: Memo) -> list[Move]:
    moves: list[Move] = []
    while len(rows) > 1:
        for v in range(len(rows)):
            if _sic(induced_rows(rows, rows[v]), memo):
                rest = _minus_vertex(rows, v)
                if _sic(rest, memo):
                    moves.append(DeleteVertex(labels[v]))
                    rows = rest
                    labels = labels[:v] + labels[v + 1:]
                    break
        else:
            for u, v in _edges(rows):
                common = rows[u] & rows[v]
                if common and _sic(induced_rows(rows, common), memo):
                    rest = _minus_edge(rows, u, v)
                    if _sic(rest, memo):
                        moves.append(DeleteEdge(labels[u], labels[v]))
                        rows = rest
                        break
            else:  # pragma: no cover - guarded by the verdict
                raise AssertionError("witness walk lost the reduction")
    return moves


def sic_exact(g: Graph, memo: Memo | None = None) -> tuple[bool, ReductionWitness | None]:
    """Is some sequence of contractible vertex and edge deletions able to reach K1?"""
    if g.n == 0:
        raise ValueError("sic_exact needs at least one vertex")
    memo = _memo(memo)
    if not _sic(g.rows, memo):
        return False, None
    return True, ReductionWitness(tuple(_sic_witness(g.rows, list(range(g.n)), memo)))


def rows_sic(rows: tuple[int, ...], memo: Memo | None = None) -> bool:
    return _sic(rows, _memo(memo))


def rows_svic(rows: tuple[int, ...], memo: Memo | None = None) -> bool:
    return _svic(rows, _memo(memo))


# --------------------------------------------------------------------------
# dismantlability


def _dismantle0(rows: tuple[int, ...]) -> tuple[bool, list[int]]:
    n = len(rows)
    if n == 0:
        return False, []
    alive = _full(n)
    order: list[int] = []
    remaining = n
    while remaining > 1:
        for v in iter_bits(alive):
            nb = rows[v] & alive
            # N(v) is a cone iff some u in N(v) dominates it.
            if any(not (nb & ~(rows[u] | (1 << u))) for u in iter_bits(nb)):
                order.append(v)
                alive ^= 1 << v
                remaining -= 1
                break
        else:
            return False, order
    return True, order


def dismantlable0(g: Graph) -> tuple[bool, ReductionWitness | None]:
    """Delete vertices with cone neighborhoods greedily; order cannot matter."""
    if g.n == 0:
        raise ValueError("dismantlable0 needs at least one vertex")
    ok, order = _dismantle0(g.rows)
    return (True, ReductionWitness(tuple(DeleteVertex(v) for v in order))) if ok else (False, None)


def _kdis(rows: tuple[int, ...], k: int, memo: Memo) -> bool:
    n = len(rows)
    if n == 0:
        return False
    if k == 0:
        return _dismantle0(rows)[0]
    quick = _trivial_verdict(rows)
    if quick is not None:
        return quick
    key = (memo.key(rows), k) if memo.enabled else None
    if key is not None:
        hit = memo.kdis.get(key)
        if hit is not None:
            return hit
    result = False
    for v in sorted(range(n), key=lambda x: (rows[x].bit_count(), x)):
        if _kdis(induced_rows(rows, rows[v]), k - 1, memo) and _kdis(_minus_vertex(rows, v), k, memo):
            result = True
            break
    if key is not None:
        memo.kdis[key] = result
    return result


def k_dismantlable(g: Graph, k: int, memo: Memo | None = None) -> bool:
    if g.n == 0:
        raise ValueError("k_dismantlable needs at least one vertex")
    if k < 0:
        raise ValueError("level must be nonnegative")
    return _kdis(g.rows, k, _memo(memo))


def min_dismantle_level(g: Graph, memo: Memo | None = None) -> int | None:
    """Least k with g k-dismantlable, searching k = 0..n; None if there is none."""
    if g.n == 0:
        raise ValueError("min_dismantle_level needs at least one vertex")
    memo = _memo(memo)
    for k in range(g.n + 1):
        if _kdis(g.rows, k, memo):
            return k
    return None


# --------------------------------------------------------------------------
# axiom check


def check_axiom(g: Graph, strict_pseudocode: bool = False, memo: Memo | None = None) -> AxiomReport:
    """Does every non-universal v have a non-neighbor u with N(v,u) contractible?

    With ``strict_pseudocode`` only partners later in the list of non-universal
    vertices are tried, and the last vertex of that list is never checked.
    """
    memo = _memo(memo)
    rows = g.rows
    n = g.n
    full = _full(n)
    nonuniversal = [v for v in range(n) if rows[v] | (1 << v) != full]
    pairs = 0
    for idx, v in enumerate(nonuniversal):
        if strict_pseudocode:
            if idx == len(nonuniversal) - 1:
                break
            partners = [u for u in nonuniversal[idx + 1:] if not (rows[v] >> u) & 1]
        else:
            partners = [u for u in range(n) if u != v and not (rows[v] >> u) & 1]
        ok = False
        for u in partners:
            pairs += 1
            common = rows[v] & rows[u]
            if common and _sic(induced_rows(rows, common), memo):
                ok = True
                break
        if not ok:
            return AxiomReport(False, v, pairs)
    return AxiomReport(True, None, pairs)


# --------------------------------------------------------------------------
# script replay


class _State:
    """Graph under edit, with stable vertex ids across deletions and gluings."""

    def __init__(self, g: Graph):
        self.rows = g.rows
        self.ids = list(range(g.n))
        self.next_id = g.n

    def pos(self, vid: int, index: int) -> int:
        try:
            return self.ids.index(vid)
        except ValueError:
            raise ScriptError(index, f"dangling reference to vertex {vid}") from None

    def graph(self) -> Graph:
        return Graph._raw(self.rows)


def _legal(rows: tuple[int, ...], mask: int, memo: Memo) -> bool:
    return bool(mask) and _sic(induced_rows(rows, mask), memo)


def _apply(state: _State, move: Move, index: int, memo: Memo) -> None:
    rows = state.rows
    if isinstance(move, DeleteVertex):
        p = state.pos(move.v, index)
        if not _legal(rows, rows[p], memo):
            raise ScriptError(index, f"N({move.v}) = {_ids(state, rows[p])} is not contractible ({FRAGMENT_NOTE})")
        state.rows = _minus_vertex(rows, p)
        del state.ids[p]
    elif isinstance(move, GlueVertex):
        mask = 0
        for vid in move.neighborhood:
            mask |= 1 << state.pos(vid, index)
        if len(rows) >= MAX_VERTICES:
            raise ScriptError(index, f"gluing would exceed {MAX_VERTICES} vertices")
        if not _legal(rows, mask, memo):
            raise ScriptError(index, f"glued neighborhood {list(move.neighborhood)} is not contractible ({FRAGMENT_NOTE})")
        new = len(rows)
        state.rows = tuple(r | ((mask >> v) & 1) << new for v, r in enumerate(rows)) + (mask,)
        state.ids.append(state.next_id)
        state.next_id += 1
    else:
        pu, pv = state.pos(move.u, index), state.pos(move.v, index)
        present = bool((rows[pu] >> pv) & 1)
        if isinstance(move, DeleteEdge) and not present:
            raise ScriptError(index, f"edge {{{move.u}, {move.v}}} is not present")
        if isinstance(move, GlueEdge) and present:
            raise ScriptError(index, f"edge {{{move.u}, {move.v}}} is already present")
        common = rows[pu] & rows[pv]
        if not _legal(rows, common, memo):
            raise ScriptError(
                index,
                f"N({move.u},{move.v}) = {_ids(state, common)} is not contractible ({FRAGMENT_NOTE})",
            )
        r = list(rows)
        r[pu] ^= 1 << pv
        r[pv] ^= 1 << pu
        state.rows = tuple(r)


def _ids(state: _State, mask: int) -> list[int]:
    return [state.ids[p] for p in iter_bits(mask)]


def replay(s: MoveScript, memo: Memo | None = None) -> Iterator[Graph]:
    """Yield the graph after each move; raises ScriptError on the first illegal one."""
    memo = _memo(memo)
    state = _State(s.initial)
    for i, move in enumerate(s.moves):
        _apply(state, move, i, memo)
        yield state.graph()


def verify_script(s: MoveScript, memo: Memo | None = None) -> Graph:
    """Replay every move and return the final graph, relabeled by ascending id."""
    final = s.initial
    for final in replay(s, memo):
        pass
    return final


# --------------------------------------------------------------------------
# constructions


def _require_contractible_pair(g: Graph, u: int, v: int, memo: Memo) -> int:
    if not (0 <= u < g.n and 0 <= v < g.n) or u == v:
        raise PreconditionError(f"invalid vertex pair ({u}, {v})")
    common = g.rows[u] & g.rows[v]
    if not _legal(g.rows, common, memo):
        raise PreconditionError(f"N({u},{v}) = {bits(common)} is not contractible ({FRAGMENT_NOTE})")
    return common


def factor_edge_move(g: Graph, u: int, v: int, delete: bool, memo: Memo | None = None) -> MoveScript:
    """Realize deleting or gluing edge {u, v} as a vertex gluing then a vertex deletion.

    The new vertex copies u's closed neighborhood with v removed (deletion) or
    added (gluing); deleting u then leaves the new vertex in u's place.
    """
    memo = _memo(memo)
    _require_contractible_pair(g, u, v, memo)
    if g.has_edge(u, v) != delete:
        raise PreconditionError(f"edge {{{u}, {v}}} is {'absent' if delete else 'present'}")
    closed = g.rows[u] | (1 << u)
    mask = closed & ~(1 << v) if delete else closed | (1 << v)
    return MoveScript(g, [GlueVertex(tuple(bits(mask))), DeleteVertex(u)])


def order_sensitivity(g: Graph, memo: Memo | None = None) -> list[int]:
    """Vertices whose deletion is locally allowed but leaves a non-member."""
    memo = _memo(memo)
    rows = g.rows
    if g.n == 0 or not _svic(rows, memo):
        raise PreconditionError("order_sensitivity needs a strong vertex contractible graph")
    return [
        v
        for v in range(g.n)
        if _svic(induced_rows(rows, rows[v]), memo) and not _svic(_minus_vertex(rows, v), memo)
    ]


def order_matters_construct(g: Graph, u: int, v: int, memo: Memo | None = None) -> list[Graph]:
    """Two one-vertex extensions of g realizing deletion of the contractible edge {u, v}.

    The first adds a copy of v's closed neighborhood minus u (a new neighbor
    of v).  The second adds a copy of u's closed neighborhood minus v and minus
    the common neighbors of u and v (a new neighbor of u).
    """
    memo = _memo(memo)
    common = _require_contractible_pair(g, u, v, memo)
    if not g.has_edge(u, v):
        raise PreconditionError(f"{{{u}, {v}}} is not an edge")
    if g.n >= MAX_VERTICES:
        raise CapacityError("no room for the glued vertex")
    side_v = (g.rows[v] | (1 << v)) & ~(1 << u)
    side_u = (g.rows[u] | (1 << u)) & ~(1 << v) & ~common
    return [g.add_vertex(bits(side_v)), g.add_vertex(bits(side_u))]


# --------------------------------------------------------------------------
# bounded semi-decision search


@dataclass
class SearchOutcome:
    script: MoveScript | None
    states: int
    exhausted: bool


def bounded_i_search(
    g: Graph,
    max_edge_glues: int = 2,
    max_states: int = 10**6,
    memo: Memo | None = None,
) -> MoveScript | None:
    """Breadth-first search over vertex deletions, edge deletions and edge gluings.

    Returns a script reaching K1, or None when the budgets run out first.
    None proves nothing about membership in I.
    """
    return bounded_i_search_outcome(g, max_edge_glues, max_states, memo).script


def bounded_i_search_outcome(
    g: Graph,
    max_edge_glues: int = 2,
    max_states: int = 10**6,
    memo: Memo | None = None,
) -> SearchOutcome:
    memo = _memo(memo)
    if g.n == 0:
        raise ValueError("bounded_i_search needs at least one vertex")
    if not rows_trivial_homology(g.rows):
        return SearchOutcome(None, 0, True)
    # Each state keeps its labeled rows and the stable ids of its vertices.
    start = (g.rows, tuple(range(g.n)), 0)
    parent: dict[tuple[bytes, int], tuple] = {(memo.key(g.rows), 0): (None, None)}
    queue = deque([start])
    states = 1
    while queue:
        rows, ids, glued = queue.popleft()
        key = (memo.key(rows), glued)
        if _sic(rows, memo):
            tail = _sic_witness(rows, list(ids), memo)
            return SearchOutcome(MoveScript(g, _path(parent, key) + tail), states, False)
        n = len(rows)
        children = []
        for v in range(n):
            if _legal(rows, rows[v], memo):
                children.append((_minus_vertex(rows, v), ids[:v] + ids[v + 1:], glued, DeleteVertex(ids[v])))
        for a in range(n):
            for b in range(a + 1, n):
                present = (rows[a] >> b) & 1
                if not present and glued >= max_edge_glues:
                    continue
                if not _legal(rows, rows[a] & rows[b], memo):
                    continue
                r = list(rows)
                r[a] ^= 1 << b
                r[b] ^= 1 << a
                if present:
                    children.append((tuple(r), ids, glued, DeleteEdge(ids[a], ids[b])))
                else:
                    children.append((tuple(r), ids, glued + 1, GlueEdge(ids[a], ids[b])))
        for crow, cids, cg, move in children:
            ckey = (memo.key(crow), cg)
            if ckey in parent:
                continue
            if states >= max_states:
                return SearchOutcome(None, states, False)
            parent[ckey] = (key, move)
            states += 1
            queue.append((crow, cids, cg))
    return SearchOutcome(None, states, True)


def _path(parent: dict, key) -> list[Move]:
    moves = []
    while True:
        prev, move = parent[key]
        if prev is None:
            break
        moves.append(move)
        key = prev
    moves.reverse()
    return moves


# --------------------------------------------------------------------------
# classification record


@dataclass
class ClassificationRecord:
    canonical_g6: str
    n: int
    m: int
    betti: list[int]
    torsion: list[list[int]]
    svic_greedy: bool
    svic_exact: bool
    sic_greedy: bool
    sic_exact: bool
    dismantlable0: bool
    min_dismantle_level: int | None
    axiom_holds: bool | None
    order_sensitive_vertices: list[int] | None
    witness: list[str] | None = None
    axiom_holds_strict: bool | None = None

    def to_json(self) -> dict:
        return {
            "canonical_g6": self.canonical_g6,
            "n": self.n,
            "m": self.m,
            "betti": self.betti,
            "torsion": self.torsion,
            "svic_greedy": self.svic_greedy,
            "svic_exact": self.svic_exact,
            "sic_greedy": self.sic_greedy,
            "sic_exact": self.sic_exact,
            "dismantlable0": self.dismantlable0,
            "min_dismantle_level": self.min_dismantle_level,
            "axiom_holds": self.axiom_holds,
            "axiom_holds_strict": self.axiom_holds_strict,
            "order_sensitive_vertices": self.order_sensitive_vertices,
            "witness": self.witness,
        }


def classify(g: Graph, memo: Memo | None = None, canonical: bool = False) -> ClassificationRecord:
    """Every class membership of g, plus a witness when one exists.

    With ``canonical`` the graph is first relabeled canonically, so records
    for isomorphic inputs are identical.
    """
    from .homology import _profile, clique_faces

    memo = _memo(memo)
    if g.n == 0:
        raise ValueError("classify needs at least one vertex")
    key = canon.canonical_key(g.rows)
    if canonical:
        g = Graph._raw(canon.canonical_rows(g.rows))
    prof = _profile(clique_faces(g.rows))
    svic_ok, svic_w = svic_exact(g, memo)
    sic_ok, sic_w = sic_exact(g, memo)
    d0, d0_w = dismantlable0(g)
    witness = d0_w or svic_w or sic_w
    return ClassificationRecord(
        canonical_g6=key.decode("ascii"),
        n=g.n,
        m=g.m,
        betti=list(prof.betti),
        torsion=[list(t) for t in prof.torsion],
        svic_greedy=svic_greedy(g, memo),
        svic_exact=svic_ok,
        sic_greedy=sic_greedy(g, memo),
        sic_exact=sic_ok,
        dismantlable0=d0,
        min_dismantle_level=min_dismantle_level(g, memo),
        axiom_holds=check_axiom(g, memo=memo).holds if sic_ok else None,
        axiom_holds_strict=check_axiom(g, True, memo).holds if sic_ok else None,
        order_sensitive_vertices=order_sensitivity(g, memo) if svic_ok else None,
        witness=witness.to_json() if witness else None,
    )
