"""Isomorph-free generation of connected graphs and census pipelines."""

from __future__ import annotations

import json
import multiprocessing as mp
import os
import sys
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Callable, Iterable, Iterator, TextIO

from . import canon
from .contract import (
    ClassificationRecord,
    Memo,
    _dismantle0,
    _sic,
    _sic_greedy,
    _svic,
    _svic_greedy,
    check_axiom,
    classify,
)
from .graph import (
    MAX_VERTICES,
    CapacityError,
    Graph,
    Graph6Error,
    _encode_graph6,
    parse_graph6,
    rows_connected,
)
from .homology import clique_counts, rows_trivial_homology

GENERATOR_MAX_N = 10
BATCH_SIZE = 1024
PROGRESS_EVERY = 100_000


# --------------------------------------------------------------------------
# generation


def _extend(rows: tuple[int, ...], seen: set[bytes]) -> Iterator[tuple[int, ...]]:
    """Children of one parent: a new vertex joined to each nonempty subset.

    A child is kept only if the new vertex has the least degree among the
    vertices whose removal leaves the graph connected.  Every connected graph
    has such a vertex, and deleting it gives a connected parent, so no class
    is lost.
    """
    n = len(rows)
    new = 1 << n
    full = (1 << (n + 1)) - 1
    for s in range(1, 1 << n):
        d = s.bit_count()
        child = tuple(r | new if (s >> v) & 1 else r for v, r in enumerate(rows)) + (s,)
        reject = False
        for x in range(n):
            if child[x].bit_count() < d and _noncut(child, x, full):
                reject = True
                break
        if reject:
            continue
        key = canon.canonical_key(child)
        if key in seen:
            continue
        seen.add(key)
        yield key


def _noncut(rows: tuple[int, ...], x: int, full: int) -> bool:
    alive = full ^ (1 << x)
    start = alive & -alive
    comp = frontier = start
    while frontier:
        nxt = 0
        while frontier:
            low = frontier & -frontier
            nxt |= rows[low.bit_length() - 1]
            frontier ^= low
        frontier = nxt & alive & ~comp
        comp |= frontier
    return comp == alive


@lru_cache(maxsize=None)
def _connected_keys(n: int) -> tuple[bytes, ...]:
    if n == 1:
        return (canon.canonical_key((0,)),)
    seen: set[bytes] = set()
    for key in _connected_keys(n - 1):
        for _ in _extend(parse_graph6(key).rows, seen):
            pass
    return tuple(sorted(seen))


def connected_keys(n: int, cache_dir: str | Path | None = None) -> tuple[bytes, ...]:
    """Canonical graph6 keys of all connected graphs on n vertices, sorted."""
    if not 1 <= n <= GENERATOR_MAX_N:
        raise ValueError(f"internal generator supports 1 <= n <= {GENERATOR_MAX_N}, got {n}")
    cache_dir = cache_dir or os.environ.get("COLLAPSE_LAB_CACHE")
    if cache_dir:
        path = Path(cache_dir) / f"connected{n}.{canon.backend()}.g6"
        if path.exists():
            return tuple(line for line in path.read_bytes().split(b"\n") if line)
        keys = _connected_keys(n)
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_bytes(b"".join(k + b"\n" for k in keys))
        tmp.replace(path)
        return keys
    return _connected_keys(n)


def enumerate_connected(n: int, cache_dir: str | Path | None = None) -> Iterator[Graph]:
    """One canonically labeled representative per connected class on n vertices."""
    for key in connected_keys(n, cache_dir):
        yield parse_graph6(key)


def ingest_graph6_stream(source: Iterable[bytes | str] | TextIO) -> Iterator[Graph]:
    """Parse newline-separated graph6 records; errors name the 1-based line."""
    for lineno, line in enumerate(source, start=1):
        if isinstance(line, str):
            line = line.encode("ascii", errors="replace")
        line = line.strip()
        if not line:
            continue
        try:
            yield parse_graph6(line)
        except Graph6Error as exc:
            raise Graph6Error(f"line {lineno}: {exc.args[0].rsplit(' at byte', 1)[0]}", exc.offset) from None
        except CapacityError as exc:
            raise CapacityError(f"line {lineno}: {exc}") from None


# --------------------------------------------------------------------------
# filters


def _euler_ok(rows: tuple[int, ...]) -> bool:
    counts = clique_counts(rows)
    return sum(c if d % 2 == 0 else -c for d, c in enumerate(counts)) == 1


def _screened_svic(rows, memo) -> bool:
    if not rows_connected(rows) or not _euler_ok(rows) or not rows_trivial_homology(rows):
        return False
    return _dismantle0(rows)[0] or _svic(rows, memo)


def _screened_sic(rows, memo) -> bool:
    if not rows_connected(rows) or not _euler_ok(rows) or not rows_trivial_homology(rows):
        return False
    return _dismantle0(rows)[0] or _svic(rows, memo) or _sic(rows, memo)


def _axiom_fails(rows, memo, strict=False) -> bool:
    return not check_axiom(Graph._raw(rows), strict, memo).holds


FILTERS: dict[str, Callable[[tuple[int, ...], Memo], bool]] = {
    "connected": lambda rows, memo: rows_connected(rows),
    "trivial-homology": lambda rows, memo: rows_connected(rows) and _euler_ok(rows) and rows_trivial_homology(rows),
    "nontrivial-homology": lambda rows, memo: not (_euler_ok(rows) and rows_trivial_homology(rows)),
    "dismantlable0": lambda rows, memo: _dismantle0(rows)[0],
    "not-dismantlable0": lambda rows, memo: not _dismantle0(rows)[0],
    "svic": _screened_svic,
    "not-svic": lambda rows, memo: not _screened_svic(rows, memo),
    "svic-greedy": lambda rows, memo: _svic_greedy(rows, memo),
    "sic": _screened_sic,
    "not-sic": lambda rows, memo: not _screened_sic(rows, memo),
    "sic-greedy": lambda rows, memo: _sic_greedy(rows, memo),
    "axiom-fails": _axiom_fails,
    "axiom-fails-strict": lambda rows, memo: _axiom_fails(rows, memo, True),
}
FILTER_ALIASES = {
    "svic_exact": "svic",
    "sic_exact": "sic",
    "not_svic": "not-svic",
    "not_sic": "not-sic",
    "trivial_homology": "trivial-homology",
    "axiom_fails": "axiom-fails",
}


def filter_name(name: str) -> str:
    name = FILTER_ALIASES.get(name, name)
    if name not in FILTERS:
        raise ValueError(f"unknown filter {name!r}; choose from {', '.join(sorted(FILTERS))}")
    return name


# --------------------------------------------------------------------------
# census


@dataclass
class CensusSpec:
    n: int | None = None
    source: str = "generate"  # "generate", a path, or "-" for stdin
    filters: list[str] = field(default_factory=list)
    workers: int = 1
    batch_size: int = BATCH_SIZE
    quiet: bool = True
    classify_matches: bool = True

    def __post_init__(self):
        self.filters = [filter_name(f) for f in self.filters]
        if self.n is not None and not 1 <= self.n <= MAX_VERTICES:
            raise CapacityError(f"n={self.n} outside 1..{MAX_VERTICES}")
        if self.source == "generate":
            if self.n is None or self.n > GENERATOR_MAX_N:
                raise ValueError(f"internal generator needs 1 <= n <= {GENERATOR_MAX_N}")
        if self.workers < 1:
            raise ValueError("workers must be positive")


@dataclass
class CensusResult:
    total_scanned: int
    pass_counts: dict[str, int]
    matched: list[tuple[str, ClassificationRecord | None]]

    def to_jsonl(self) -> str:
        lines = []
        for g6, rec in self.matched:
            payload = rec.to_json() if rec is not None else {"canonical_g6": g6}
            lines.append(json.dumps(payload, sort_keys=True))
        summary = {"total_scanned": self.total_scanned, "pass_counts": self.pass_counts, "matched": len(self.matched)}
        lines.append(json.dumps({"summary": summary}, sort_keys=True))
        return "\n".join(lines) + "\n"

    def write(self, prefix: str | Path) -> tuple[Path, Path]:
        prefix = Path(prefix)
        jsonl = prefix.with_name(prefix.name + ".jsonl")
        g6 = prefix.with_name(prefix.name + ".g6")
        with open(jsonl, "a", encoding="ascii") as fh:
            fh.write(self.to_jsonl())
        with open(g6, "a", encoding="ascii") as fh:
            fh.writelines(f"{key}\n" for key, _ in self.matched)
        return jsonl, g6


_WORKER_MEMO: Memo | None = None


def _worker_memo() -> Memo:
    global _WORKER_MEMO
    if _WORKER_MEMO is None:
        _WORKER_MEMO = Memo()
    return _WORKER_MEMO


def _run_batch(args) -> tuple[int, list[int], list[tuple[str, dict | None]]]:
    batch, filters, classify_matches = args
    memo = _worker_memo()
    counts = [0] * len(filters)
    matched = []
    for rows in batch:
        ok = True
        for i, name in enumerate(filters):
            if not FILTERS[name](rows, memo):
                ok = False
                break
            counts[i] += 1
        if ok:
            key = canon.canonical_key(rows).decode("ascii")
            rec = classify(Graph._raw(rows), memo, canonical=True) if classify_matches else None
            matched.append((key, rec))
    return len(batch), counts, matched


def _batches(graphs: Iterable[Graph], size: int) -> Iterator[list[tuple[int, ...]]]:
    batch = []
    for g in graphs:
        batch.append(g.rows)
        if len(batch) == size:
            yield batch
            batch = []
    if batch:
        yield batch


def _source_graphs(spec: CensusSpec) -> Iterator[Graph]:
    if spec.source == "generate":
        yield from enumerate_connected(spec.n)
        return
    if spec.source == "-":
        stream = sys.stdin.buffer
        yield from _filter_n(ingest_graph6_stream(stream), spec.n)
        return
    with open(spec.source, "rb") as fh:
        yield from _filter_n(ingest_graph6_stream(fh), spec.n)


def _filter_n(graphs: Iterable[Graph], n: int | None) -> Iterator[Graph]:
    for g in graphs:
        if n is None or g.n == n:
            yield g


def run_pool(func, jobs: Iterable, workers: int) -> Iterator:
    """Map ``func`` over ``jobs`` in order, in-process for one worker."""
    if workers == 1:
        for job in jobs:
            yield func(job)
        return
    ctx = mp.get_context("fork") if "fork" in mp.get_all_start_methods() else mp.get_context()
    with ctx.Pool(workers) as pool:
        yield from pool.imap(func, jobs, chunksize=1)


def run_census(spec: CensusSpec, progress: TextIO | None = None) -> CensusResult:
    """Filter a graph stream in order and classify the survivors.

    The matched list is sorted by canonical graph6, so the result does not
    depend on worker count or input order.
    """
    progress = None if spec.quiet else (progress or sys.stderr)
    total = 0
    counts = [0] * len(spec.filters)
    merged: dict[str, ClassificationRecord | None] = {}
    jobs = ((b, spec.filters, spec.classify_matches) for b in _batches(_source_graphs(spec), spec.batch_size))
    next_report = PROGRESS_EVERY
    for scanned, bcounts, matched in run_pool(_run_batch, jobs, spec.workers):
        total += scanned
        for i, c in enumerate(bcounts):
            counts[i] += c
        for key, rec in matched:
            merged.setdefault(key, rec)
        if progress is not None and total >= next_report:
            print(f"scanned {total} graphs, {len(merged)} matched", file=progress)
            next_report += PROGRESS_EVERY
    return CensusResult(
        total_scanned=total,
        pass_counts=dict(zip(spec.filters, counts)),
        matched=[(k, merged[k]) for k in sorted(merged)],
    )


# --------------------------------------------------------------------------
# predicate sweeps


@dataclass
class SweepRow:
    g6: str
    m: int
    trivial_homology: bool
    svic_greedy: bool
    svic_exact: bool
    sic_greedy: bool
    sic_exact: bool
    dismantlable0: bool


def _sweep_batch(batch: list[tuple[int, ...]]) -> list[SweepRow]:
    memo = _worker_memo()
    out = []
    for rows in batch:
        out.append(
            SweepRow(
                g6=_encode_graph6(rows).decode("ascii"),
                m=sum(r.bit_count() for r in rows) // 2,
                trivial_homology=rows_trivial_homology(rows),
                svic_greedy=_svic_greedy(rows, memo),
                svic_exact=_svic(rows, memo),
                sic_greedy=_sic_greedy(rows, memo),
                sic_exact=_sic(rows, memo),
                dismantlable0=_dismantle0(rows)[0],
            )
        )
    return out


def sweep_predicates(
    n: int,
    workers: int = 1,
    graphs: Iterable[Graph] | None = None,
    batch_size: int = BATCH_SIZE,
) -> list[SweepRow]:
    """Evaluate every predicate, unscreened, on each connected graph on n vertices."""
    source = graphs if graphs is not None else enumerate_connected(n)
    out: list[SweepRow] = []
    for rows in run_pool(_sweep_batch, _batches(source, batch_size), workers):
        out.extend(rows)
    return out


def labeled_connected_count(n: int) -> int:
    """Number of labeled connected graphs on n vertices, by the standard recurrence."""
    from math import comb

    c = [0, 1]
    for k in range(2, n + 1):
        total = 2 ** comb(k, 2)
        for j in range(1, k):
            total -= comb(k - 1, j - 1) * c[j] * 2 ** comb(k - j, 2)
        c.append(total)
    return c[n]
