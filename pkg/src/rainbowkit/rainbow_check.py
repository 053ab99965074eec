"""Rainbow-path verifiers for a fixed edge colouring.

Every check is a reachability search in the product space
``(vertex, set of colours used so far)``; a step along an edge is allowed only
when the edge's colour is not yet in the set. A rainbow walk always contains a
rainbow path, so the search never needs to track visited vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .graph_core import EdgeColoring, Graph, GraphError, PairSet, bfs_distances

MAX_COLORS = 24

Mode = Literal["plain", "geodesic", "directed"]
MODES: tuple[str, ...] = ("plain", "geodesic", "directed")


class ColorCapError(ValueError):
    pass


@dataclass(frozen=True)
class VerifyReport:
    satisfied: PairSet
    unsatisfied: PairSet
    count_satisfied: int

    @property
    def ok(self) -> bool:
        return not self.unsatisfied.pairs


def _check(g: Graph, c: EdgeColoring, u: int, v: int) -> None:
    if c.graph != g:
        raise GraphError("colouring belongs to a different graph")
    if c.k > MAX_COLORS:
        raise ColorCapError(f"{c.k} colours exceed the verifier cap of {MAX_COLORS}")
    if u == v:
        raise ValueError(f"pair ({u}, {v}) has equal endpoints")
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise GraphError(f"pair ({u}, {v}) out of range")


def check_mode(g: Graph, mode: str) -> None:
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    if (mode == "directed") != g.directed:
        kind = "directed" if g.directed else "undirected"
        raise GraphError(f"mode {mode!r} does not apply to a {kind} graph")


def _reach(g: Graph, colors: tuple[int, ...], src: int, dst: int, allowed=None) -> bool:
    start = (src, 0)
    seen = {start}
    stack = [start]
    while stack:
        x, mask = stack.pop()
        for y, e in g.incident(x):
            if allowed is not None and not allowed(x, y):
                continue
            bit = 1 << colors[e]
            if mask & bit:
                continue
            if y == dst:
                return True
            state = (y, mask | bit)
            if state not in seen:
                seen.add(state)
                stack.append(state)
    return False


def rainbow_path_exists(g: Graph, c: EdgeColoring, u: int, v: int) -> bool:
    """True iff a rainbow path joins ``u`` and ``v`` (directed: in either direction)."""
    _check(g, c, u, v)
    if _reach(g, c.colors, u, v):
        return True
    return g.directed and _reach(g, c.colors, v, u)


def _geodesic(g: Graph, colors: tuple[int, ...], u: int, v: int, dist_to_v: list) -> bool:
    if dist_to_v[u] is None:
        return False
    return _reach(g, colors, u, v, allowed=lambda x, y: dist_to_v[y] == dist_to_v[x] - 1)


def geodesic_rainbow_exists(g: Graph, c: EdgeColoring, u: int, v: int) -> bool:
    """True iff some shortest ``u``-``v`` path is rainbow."""
    _check(g, c, u, v)
    if g.directed:
        raise GraphError("geodesic rainbow paths are checked on undirected graphs")
    return _geodesic(g, c.colors, u, v, bfs_distances(g, v))


def verify_pairs(g: Graph, c: EdgeColoring, p: PairSet, mode: Mode = "plain") -> VerifyReport:
    check_mode(g, mode)
    if p.n != g.n:
        raise GraphError(f"pair set is over {p.n} vertices, graph has {g.n}")
    good, bad = [], []
    dist_cache: dict[int, list] = {}
    for u, v in p:
        _check(g, c, u, v)
        if mode == "geodesic":
            if v not in dist_cache:
                dist_cache[v] = bfs_distances(g, v)
            hit = _geodesic(g, c.colors, u, v, dist_cache[v])
        else:
            hit = _reach(g, c.colors, u, v) or (g.directed and _reach(g, c.colors, v, u))
        (good if hit else bad).append((u, v))
    return VerifyReport(PairSet(g.n, tuple(good)), PairSet(g.n, tuple(bad)), len(good))


def count_rainbow_pairs(g: Graph, c: EdgeColoring, mode: Mode = "plain") -> int:
    return verify_pairs(g, c, PairSet.all_pairs(g.n), mode).count_satisfied
