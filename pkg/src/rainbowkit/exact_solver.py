"""Exact rc / src / directed rc / subset variants and the two-colour max-pairs objective.

Colourings are enumerated in restricted-growth form: the colour of the next
edge decided is either a colour already in use or the smallest unused one.
Every answer is certified by :mod:`rainbowkit.rainbow_check` before it is
returned.

The default search is a backtracking search over the candidate paths of each
required pair (all paths that could be rainbow with ``k`` colours). A branch is
abandoned as soon as some pair has no candidate path left whose coloured edges
are pairwise distinct. ``prune=False`` switches to plain enumeration of the
canonical colourings, each checked with the verifier.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

import numpy as np

from .graph_core import (
    EdgeColoring,
    Graph,
    GraphError,
    PairSet,
    bfs_distances,
    connectivity_check,
    diameter,
)
from .rainbow_check import MAX_COLORS, ColorCapError, Mode, check_mode, verify_pairs

DEFAULT_MAX_EDGES = 24


class SolverLimitError(RuntimeError):
    pass


class UnsatisfiablePairError(ValueError):
    def __init__(self, pair: tuple[int, int]):
        super().__init__(f"pair {pair} is not joined by any path")
        self.pair = pair


@dataclass(frozen=True)
class SolveResult:
    value: int
    witness: EdgeColoring


def max_edges_limit(override: int | None = None) -> int:
    if override is not None:
        return override
    return int(os.environ.get("RAINBOWKIT_MAX_EDGES", DEFAULT_MAX_EDGES))


def _guard(g: Graph, max_edges: int | None) -> None:
    limit = max_edges_limit(max_edges)
    if g.m > limit:
        raise SolverLimitError(
            f"{g.m} edges exceed the exhaustive-search limit of {limit} "
            "(raise it with RAINBOWKIT_MAX_EDGES)"
        )


def canonical_colorings(m: int, k: int, exact: bool = False) -> Iterator[tuple[int, ...]]:
    """Restricted-growth strings of length ``m`` over ``k`` colours.

    Each colouring up to renaming of colours appears exactly once. With
    ``exact`` only strings using all ``k`` colours are produced.
    """
    if m == 0:
        if not exact or k == 0:
            yield ()
        return
    buf = [0] * m

    def rec(i: int, top: int) -> Iterator[tuple[int, ...]]:
        if i == m:
            if not exact or top == k:
                yield tuple(buf)
            return
        if exact and k - top > m - i:
            return
        for c in range(min(top + 1, k)):
            buf[i] = c
            yield from rec(i + 1, max(top, c + 1))

    yield from rec(1, 1)


# --------------------------------------------------------------------------
# candidate paths


def _simple_paths(g: Graph, src: int, dst: int, budget: int, dist_to_dst: list, dag: bool = False):
    """Edge-index tuples of simple ``src``->``dst`` paths with at most ``budget`` edges."""
    out = []
    path: list[int] = []
    on_path = {src}

    def rec(x: int, left: int) -> None:
        for y, e in g.incident(x):
            d = dist_to_dst[y]
            if d is None or y in on_path:
                continue
            if dag and d != dist_to_dst[x] - 1:
                continue
            if d > left - 1:
                continue
            path.append(e)
            if y == dst:
                out.append(tuple(path))
            else:
                on_path.add(y)
                rec(y, left - 1)
                on_path.discard(y)
            path.pop()

    if dist_to_dst[src] is not None and dist_to_dst[src] <= budget:
        rec(src, budget)
    return out


def _pair_distance(g: Graph, u: int, v: int, mode: str, cache: dict) -> int | None:
    def dist_to(t):
        if t not in cache:
            cache[t] = bfs_distances(g, t, reverse=g.directed)
        return cache[t]

    if mode == "directed":
        options = [d for d in (dist_to(v)[u], dist_to(u)[v]) if d is not None]
        return min(options) if options else None
    return dist_to(v)[u]


def candidate_paths(g: Graph, u: int, v: int, k: int, mode: str, cache: dict | None = None) -> list:
    cache = {} if cache is None else cache

    def dist_to(t):
        if t not in cache:
            cache[t] = bfs_distances(g, t, reverse=g.directed)
        return cache[t]

    if mode == "directed":
        return _simple_paths(g, u, v, k, dist_to(v)) + _simple_paths(g, v, u, k, dist_to(u))
    if mode == "geodesic":
        return _simple_paths(g, u, v, k, dist_to(v), dag=True)
    return _simple_paths(g, u, v, k, dist_to(v))


# --------------------------------------------------------------------------
# pruned search


class _PathSearch:
    """Backtracking over edge colours with per-pair liveness of candidate paths."""

    def __init__(self, m: int, k: int, pair_paths: list[list[tuple[int, ...]]]):
        self.m, self.k = m, k
        self.paths: list[tuple[int, ...]] = []
        self.owner: list[int] = []
        self.by_pair: list[list[int]] = []
        self.edge_paths: list[list[int]] = [[] for _ in range(m)]
        for q, plist in enumerate(pair_paths):
            ids = []
            for path in plist:
                pid = len(self.paths)
                self.paths.append(path)
                self.owner.append(q)
                ids.append(pid)
                for e in path:
                    self.edge_paths[e].append(pid)
            self.by_pair.append(ids)
        self.mask = [0] * len(self.paths)
        self.left = [len(p) for p in self.paths]
        self.dead = [False] * len(self.paths)
        self.alive = [len(ids) for ids in self.by_pair]
        self.sat = [0] * len(self.by_pair)
        self.unsat = len(self.by_pair)
        self.color = [-1] * m
        self.count = [0] * k
        self.trail: list[tuple[int, list]] = []
        self.nodes = 0

    def assign(self, e: int, c: int) -> bool:
        bit = 1 << c
        ok = True
        changes = []
        mask, left, dead, owner = self.mask, self.left, self.dead, self.owner
        for p in self.edge_paths[e]:
            if dead[p]:
                continue
            q = owner[p]
            if mask[p] & bit:
                dead[p] = True
                changes.append((p, False))
                self.alive[q] -= 1
                if self.alive[q] == 0:
                    ok = False
            else:
                mask[p] |= bit
                left[p] -= 1
                changes.append((p, True))
                if left[p] == 0:
                    self.sat[q] += 1
                    if self.sat[q] == 1:
                        self.unsat -= 1
        self.color[e] = c
        self.count[c] += 1
        self.trail.append((e, changes))
        return ok

    def undo(self) -> None:
        e, changes = self.trail.pop()
        c = self.color[e]
        bit = 1 << c
        for p, kept in reversed(changes):
            q = self.owner[p]
            if kept:
                if self.left[p] == 0:
                    self.sat[q] -= 1
                    if self.sat[q] == 0:
                        self.unsat += 1
                self.left[p] += 1
                self.mask[p] &= ~bit
            else:
                self.dead[p] = False
                self.alive[q] += 1
        self.color[e] = -1
        self.count[c] -= 1

    def _choose(self) -> tuple[int, list[int]]:
        best_q, best_alive = -1, None
        for q, s in enumerate(self.sat):
            if s:
                continue
            a = self.alive[q]
            if best_alive is None or a < best_alive:
                best_q, best_alive = q, a
                if a == 1:
                    break
        best_p, best_left = -1, None
        for p in self.by_pair[best_q]:
            if self.dead[p]:
                continue
            if best_left is None or self.left[p] < best_left:
                best_p, best_left = p, self.left[p]
        path = self.paths[best_p]
        e = next(x for x in path if self.color[x] < 0)
        used = [c for c in range(self.k) if self.count[c]]
        fresh = next((c for c in range(self.k) if not self.count[c]), None)
        pmask = self.mask[best_p]
        values = [c for c in used if not pmask >> c & 1]
        if fresh is not None:
            values.append(fresh)
        values += [c for c in used if pmask >> c & 1]
        return e, values

    def solve(self) -> list[int] | None:
        if any(a == 0 for a in self.alive):
            return None
        if self.unsat == 0:
            return [0] * self.m
        frames = [[*self._choose(), 0, False]]
        while frames:
            frame = frames[-1]
            e, values, i, applied = frame
            if applied:
                self.undo()
                frame[3] = False
            if i >= len(values):
                frames.pop()
                continue
            frame[2] = i + 1
            self.nodes += 1
            ok = self.assign(e, values[i])
            frame[3] = True
            if not ok:
                continue
            if self.unsat == 0:
                return [c if c >= 0 else 0 for c in self.color]
            frames.append([*self._choose(), 0, False])
        return None


# --------------------------------------------------------------------------
# decision and optimisation


def _prepare(g: Graph, p: PairSet, mode: str) -> dict:
    check_mode(g, mode)
    if p.n != g.n:
        raise GraphError(f"pair set is over {p.n} vertices, graph has {g.n}")
    cache: dict = {}
    for u, v in p:
        if _pair_distance(g, u, v, mode, cache) is None:
            raise UnsatisfiablePairError((u, v))
    return cache


def _certify(g: Graph, p: PairSet, mode: str, witness: EdgeColoring) -> EdgeColoring:
    report = verify_pairs(g, witness, p, mode)
    if not report.ok:
        raise AssertionError(f"solver witness fails pairs {report.unsatisfied.pairs[:5]}")
    return witness


def _decide(
    g: Graph,
    p: PairSet,
    k: int,
    mode: str,
    cache: dict,
    prune: bool,
    max_edges: int | None,
    exact: bool = False,
) -> EdgeColoring | None:
    if k < 1:
        raise ValueError("colour count must be at least 1")
    if k > MAX_COLORS:
        raise ColorCapError(f"{k} colours exceed the cap of {MAX_COLORS}")
    if not p.pairs:
        return EdgeColoring(g, (0,) * g.m, k)
    if not prune:
        _guard(g, max_edges)
        for colors in canonical_colorings(g.m, k, exact=exact):
            witness = EdgeColoring(g, colors, k)
            if verify_pairs(g, witness, p, mode).ok:
                return witness
        return None
    if max_edges is not None:
        _guard(g, max_edges)
    pair_paths = []
    for u, v in p:
        paths = candidate_paths(g, u, v, k, mode, cache)
        if not paths:
            return None
        if any(len(path) == 1 for path in paths):
            continue
        pair_paths.append(paths)
    colors = _PathSearch(g.m, k, pair_paths).solve()
    if colors is None:
        return None
    return _certify(g, p, mode, EdgeColoring(g, tuple(colors), k))


def decide_subset_rc(
    g: Graph,
    p: PairSet,
    k: int,
    mode: Mode = "plain",
    *,
    prune: bool = True,
    max_edges: int | None = None,
) -> EdgeColoring | None:
    """A ``k``-colouring satisfying every pair of ``p`` under ``mode``, or ``None``.

    ``max_edges`` caps the graph size; unpruned enumeration always applies the
    cap (default 24, or ``RAINBOWKIT_MAX_EDGES``).
    """
    cache = _prepare(g, p, mode)
    return _decide(g, p, k, mode, cache, prune, max_edges)


def _minimise(g, p, mode, lower, upper, prune, max_edges) -> SolveResult:
    cache = _prepare(g, p, mode)
    lower = max(1, lower)
    for k in range(lower, max(upper, lower) + 1):
        # a smaller k was refuted, so only colourings using all k colours are new
        witness = _decide(g, p, k, mode, cache, prune, max_edges, exact=k > lower)
        if witness is not None:
            return SolveResult(k, witness)
    raise AssertionError(f"no colouring with up to {upper} colours; upper bound is wrong")


def _require_connected(g: Graph) -> None:
    if not connectivity_check(g):
        raise GraphError("graph is not connected")


def rc_exact(g: Graph, *, prune: bool = True, max_edges: int | None = None) -> SolveResult:
    """Rainbow connection number of a connected undirected graph."""
    if g.directed:
        raise GraphError("rc_exact expects an undirected graph; use rc_directed_exact")
    _require_connected(g)
    p = PairSet.all_pairs(g.n)
    return _minimise(g, p, "plain", diameter(g), g.n - 1, prune, max_edges)


def src_exact(g: Graph, *, prune: bool = True, max_edges: int | None = None) -> SolveResult:
    """Strong rainbow connection number of a connected undirected graph."""
    if g.directed:
        raise GraphError("src_exact expects an undirected graph")
    _require_connected(g)
    p = PairSet.all_pairs(g.n)
    return _minimise(g, p, "geodesic", diameter(g), g.m, prune, max_edges)


def rc_directed_exact(g: Graph, *, prune: bool = True, max_edges: int | None = None) -> SolveResult:
    if not g.directed:
        raise GraphError("rc_directed_exact expects a directed graph")
    _require_connected(g)
    p = PairSet.all_pairs(g.n)
    return _minimise(g, p, "directed", diameter(g), g.m, prune, max_edges)


def subset_rc_exact(
    g: Graph, p: PairSet, mode: Mode = "plain", *, prune: bool = True, max_edges: int | None = None
) -> SolveResult:
    """Fewest colours satisfying exactly the pairs of ``p``; ``1`` when ``p`` is empty."""
    cache = _prepare(g, p, mode)
    lower = max((_pair_distance(g, u, v, mode, cache) for u, v in p), default=1)
    return _minimise(g, p, mode, lower, g.m, prune, max_edges)


def decide_rc(g: Graph, k: int, **kw) -> EdgeColoring | None:
    _require_connected(g)
    return decide_subset_rc(g, PairSet.all_pairs(g.n), k, "plain", **kw)


def decide_src(g: Graph, k: int, **kw) -> EdgeColoring | None:
    _require_connected(g)
    return decide_subset_rc(g, PairSet.all_pairs(g.n), k, "geodesic", **kw)


def decide_rc_directed(g: Graph, k: int, **kw) -> EdgeColoring | None:
    _require_connected(g)
    return decide_subset_rc(g, PairSet.all_pairs(g.n), k, "directed", **kw)


# --------------------------------------------------------------------------
# two colours, as many pairs as possible


def _two_path_terms(g: Graph) -> list[list[tuple[int, int]]]:
    """For each anti-edge, the edge-index pairs of its 2-paths."""
    terms = []
    for u, v in combinations(g.vertices, 2):
        if g.has_edge(u, v):
            continue
        common = g.neighbors(u) & g.neighbors(v)
        terms.append([(g.edge_index(u, w), g.edge_index(w, v)) for w in sorted(common)])
    return terms


def maxpairs2_exact(g: Graph, *, max_edges: int | None = None, chunk: int = 1 << 16) -> SolveResult:
    """Most vertex pairs rainbow-connected by a 2-colouring.

    With two colours a rainbow path has one or two edges, so an anti-edge is
    satisfied exactly when one of its 2-paths is two-coloured. The first
    edge's colour is fixed by symmetry, leaving ``2^(m-1)`` colourings.
    """
    if g.directed:
        raise GraphError("maxpairs2_exact expects an undirected graph")
    _require_connected(g)
    _guard(g, max_edges)
    m = g.m
    if m == 0:
        return SolveResult(0, EdgeColoring(g, (), 1))
    terms = _two_path_terms(g)
    total = 1 << (m - 1)
    shifts = np.arange(m - 1, dtype=np.int64)
    best_val, best_code = -1, 0
    for start in range(0, total, chunk):
        codes = np.arange(start, min(total, start + chunk), dtype=np.int64)
        bits = np.zeros((codes.size, m), dtype=bool)
        bits[:, 1:] = (codes[:, None] >> shifts) & 1
        score = np.zeros(codes.size, dtype=np.int64)
        for paths in terms:
            hit = np.zeros(codes.size, dtype=bool)
            for a, b in paths:
                hit |= bits[:, a] ^ bits[:, b]
            score += hit
        i = int(np.argmax(score))
        if score[i] > best_val:
            best_val, best_code = int(score[i]), int(codes[i])
    colors = (0,) + tuple((best_code >> j) & 1 for j in range(m - 1))
    witness = EdgeColoring(g, colors, 2)
    value = m + best_val
    got = verify_pairs(g, witness, PairSet.all_pairs(g.n), "plain").count_satisfied
    if got != value:
        raise AssertionError(f"max-pairs witness satisfies {got} pairs, expected {value}")
    return SolveResult(value, witness)
