"""Two-colour max-pairs kernelization: at least ``|E| + k`` rainbow-connected pairs.

The decision cascade either answers yes with a constructive 2-colouring, answers
no because the graph has fewer than ``k`` anti-edges, or proves the graph has
at most ``4k`` vertices and hands it back as the kernel. Red is colour 0 and
blue colour 1; edges a construction does not mention are red.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .exact_solver import maxpairs2_exact
from .graph_core import (
    EdgeColoring,
    Graph,
    GraphError,
    PairSet,
    anti_edges,
    bfs_layers,
    components,
    connectivity_check,
    is_clique,
)
from .rainbow_check import count_rainbow_pairs

RED, BLUE = 0, 1


@dataclass(frozen=True)
class KernelTrace:
    chosen_v: int | None = None
    non_neighbors: frozenset[int] = frozenset()
    components: tuple[frozenset[int], ...] = ()
    isolated_count: int = 0
    clique: frozenset[int] | None = None
    stage: str = ""

    def to_json(self) -> dict:
        return {
            "chosen_v": None if self.chosen_v is None else self.chosen_v + 1,
            "non_neighbors": sorted(v + 1 for v in self.non_neighbors),
            "components": [sorted(v + 1 for v in c) for c in self.components],
            "isolated_count": self.isolated_count,
            "clique": None if self.clique is None else sorted(v + 1 for v in self.clique),
            "stage": self.stage,
        }


@dataclass(frozen=True)
class KernelResult:
    outcome: str  # "yes", "no" or "kernel"
    k: int
    trace: KernelTrace
    witness: EdgeColoring | None = None
    certified_count: int | None = None
    reason: str | None = None
    kernel: Graph | None = None

    def to_json(self) -> dict:
        out = {"outcome": self.outcome, "k": self.k, "trace": self.trace.to_json()}
        if self.witness is not None:
            out["certified_count"] = self.certified_count
            out["witness"] = [[u + 1, v + 1, c + 1] for (u, v), c in self.witness.items()]
        if self.reason is not None:
            out["reason"] = self.reason
        if self.kernel is not None:
            out["kernel"] = {"n": self.kernel.n, "edges": [[u + 1, v + 1] for u, v in self.kernel.edges]}
        return out


def _require(g: Graph) -> None:
    if g.directed:
        raise GraphError("expects an undirected graph")
    if not connectivity_check(g):
        raise GraphError("graph is not connected")


def _coloring(g: Graph, colors: dict) -> EdgeColoring:
    full = {e: colors.get(e, RED) for e in g.edges}
    return EdgeColoring.from_mapping(g, full, 2)


def bfs_layer_coloring(g: Graph, v: int) -> EdgeColoring:
    """Edges between consecutive BFS levels alternate blue, red, blue, ... from the root.

    Every vertex two or more levels below ``v`` gets a two-coloured 2-path up
    to a vertex two levels higher.
    """
    _require(g)
    layers = bfs_layers(g, v)
    level = {x: i for i, layer in enumerate(layers) for x in layer}
    colors = {}
    for a, b in g.edges:
        la, lb = level[a], level[b]
        if la != lb:
            # parity of the deeper endpoint's level, counting the root's level as 1
            colors[(a, b)] = RED if (max(la, lb) + 1) % 2 else BLUE
    return _coloring(g, colors)


def component_coloring(g: Graph, v: int) -> EdgeColoring:
    """Spokes at ``v`` take the level parity of their endpoint in a BFS tree of its component
    in the complement of ``G[N(v)]``; every tree edge becomes a rainbow ``u1 - v - u2``."""
    _require(g)
    nbrs = sorted(g.neighbors(v))
    colors = {}
    for comp in _complement_components(g, nbrs):
        root = comp[0]
        depth = {root: 0}
        queue = [root]
        for x in queue:
            for y in comp:
                if y not in depth and not g.has_edge(x, y):
                    depth[y] = depth[x] + 1
                    queue.append(y)
        for x in comp:
            colors[g.key(v, x)] = RED if depth[x] % 2 == 0 else BLUE
    return _coloring(g, colors)


def _complement_components(g: Graph, vertices: list[int]) -> list[list[int]]:
    h = Graph(len(vertices), tuple(
        (i, j) for i, j in combinations(range(len(vertices)), 2) if not g.has_edge(vertices[i], vertices[j])
    ))
    return [[vertices[i] for i in comp] for comp in components(h)]


def _clique_layers(g: Graph, clique: frozenset[int]) -> dict[int, int]:
    dist = {w: 0 for w in clique}
    queue = sorted(clique)
    for x in queue:
        for y in sorted(g.neighbors(x)):
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def clique_coloring_case(g: Graph, clique, k: int) -> tuple[EdgeColoring, str]:
    """The colouring for a graph with a clique of size ``>= k`` and ``>= k`` anti-edges,
    plus which case produced it: ``"L2"``, ``"anti-edges"``, ``"greedy"`` or ``"recolor"``."""
    _require(g)
    M = frozenset(clique)
    if not is_clique(g, M):
        raise GraphError("vertex set is not a clique")
    if len(M) < k:
        raise GraphError(f"clique has {len(M)} vertices, need at least {k}")
    if len(anti_edges(g)) < k:
        raise GraphError(f"graph has fewer than {k} anti-edges")
    dist = _clique_layers(g, M)
    L1 = sorted(x for x, d in dist.items() if d == 1)
    L2 = sorted(x for x, d in dist.items() if d == 2)
    colors = {}
    for a, b in combinations(sorted(M), 2):
        colors[g.key(a, b)] = RED
    nm = {u: sorted(M & g.neighbors(u)) for u in L1}

    if L2:
        for u in L1:
            for w in nm[u]:
                colors[g.key(u, w)] = BLUE
        for a, b in g.edges:
            if {dist[a], dist[b]} == {1, 2}:
                colors[(a, b)] = RED
        return _coloring(g, colors), "L2"

    cross_anti = sum(len(M) - len(nm[u]) for u in L1)
    if cross_anti >= k:
        for u in L1:
            for w in nm[u]:
                colors[g.key(u, w)] = BLUE
        return _coloring(g, colors), "anti-edges"

    S = [(u, v) for u, v in combinations(L1, 2) if not g.has_edge(u, v)]
    marked: set[int] = set()
    while S:
        pick = None
        for e in S:
            common = [w for w in nm[e[0]] if w in nm[e[1]] and w not in marked]
            if common:
                pick = (e, common[0])
                break
        if pick is None:
            break
        (u, v), w = pick
        colors[g.key(u, w)] = RED
        colors[g.key(v, w)] = BLUE
        S.remove((u, v))
        marked.add(w)
    for u in L1:
        for w in nm[u]:
            colors.setdefault(g.key(u, w), BLUE)

    all_red = [u for u in L1 if all(colors[g.key(u, w)] == RED for w in nm[u])]
    if all_red:
        u = all_red[0]
        w = nm[u][0]
        for w2 in sorted(M - set(nm[u])):
            colors[g.key(w, w2)] = BLUE
        return _coloring(g, colors), "recolor"
    return _coloring(g, colors), "greedy"


def clique_coloring(g: Graph, clique, k: int) -> EdgeColoring:
    return clique_coloring_case(g, clique, k)[0]


def maximal_clique_from(g: Graph, seed) -> frozenset[int]:
    """Extend a clique greedily by smallest vertex index until maximal."""
    M = set(seed)
    for x in g.vertices:
        if x not in M and all(g.has_edge(x, w) for w in M):
            M.add(x)
    return frozenset(M)


def _certified(g: Graph, coloring: EdgeColoring, k: int, stage: str) -> int:
    count = count_rainbow_pairs(g, coloring)
    if count < g.m + k:
        raise AssertionError(f"{stage} colouring satisfies {count} pairs, need {g.m + k}")
    return count


def kernelize(g: Graph, k: int) -> KernelResult:
    _require(g)
    if k < 1:
        raise ValueError("k must be at least 1")
    for v in g.vertices:
        far = frozenset(g.vertices) - g.neighbors(v) - {v}
        if len(far) >= k:
            col = bfs_layer_coloring(g, v)
            trace = KernelTrace(chosen_v=v, non_neighbors=far, stage="bfs-layers")
            return KernelResult("yes", k, trace, col, _certified(g, col, k, "bfs-layer"))

    anti = len(anti_edges(g))
    if anti < k:
        assert anti < k
        return KernelResult("no", k, KernelTrace(stage="few-anti-edges"),
                            reason=f"{anti} anti-edges < k = {k}")

    v = 0
    far = frozenset(g.vertices) - g.neighbors(v) - {v}
    comps = _complement_components(g, sorted(g.neighbors(v)))
    isolated = [c[0] for c in comps if len(c) == 1]
    comp_sets = tuple(frozenset(c) for c in comps)
    base = dict(chosen_v=v, non_neighbors=far, components=comp_sets, isolated_count=len(isolated))

    if len(isolated) >= k:
        seed = set(isolated) | {v}
        assert is_clique(g, seed)
        M = maximal_clique_from(g, seed)
        assert is_clique(g, M) and len(M) >= k
        col = clique_coloring(g, M, k)
        trace = KernelTrace(**base, clique=M, stage="clique")
        return KernelResult("yes", k, trace, col, _certified(g, col, k, "clique"))

    r = len(comps)
    s = sum(1 for c in comps if len(c) >= 2)
    h_size = sum(len(c) for c in comps)
    if h_size - r >= k:
        col = component_coloring(g, v)
        trace = KernelTrace(**base, stage="components")
        return KernelResult("yes", k, trace, col, _certified(g, col, k, "component"))

    assert len(far) < k
    assert len(isolated) < k
    assert h_size >= 2 * s + (r - s)
    assert s < k and r < 2 * k and h_size < 3 * k
    assert g.n <= 4 * k
    return KernelResult("kernel", k, KernelTrace(**base, stage="kernel"), kernel=g)


@dataclass(frozen=True)
class MaxPairsDecision:
    answer: bool
    witness: EdgeColoring | None
    result: KernelResult
    exact_value: int | None = None


def decide_maxpairs2(g: Graph, k: int, *, max_edges: int | None = None) -> MaxPairsDecision:
    """Kernelize, then solve the kernel exactly when the cascade did not settle it."""
    res = kernelize(g, k)
    if res.outcome == "yes":
        return MaxPairsDecision(True, res.witness, res)
    if res.outcome == "no":
        return MaxPairsDecision(False, None, res)
    best = maxpairs2_exact(res.kernel, max_edges=max_edges)
    target = res.kernel.m + k
    if best.value >= target:
        return MaxPairsDecision(True, best.witness, res, best.value)
    return MaxPairsDecision(False, None, res, best.value)
