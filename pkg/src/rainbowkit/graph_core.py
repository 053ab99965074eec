"""Graph, edge colouring, pair set and CNF types plus basic graph queries.

Vertices are the dense integers ``0..n-1``. Undirected edges are stored as
``(u, v)`` with ``u < v``; arcs of a directed graph keep their orientation.
All types are immutable once built.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence

Edge = tuple[int, int]


class GraphError(ValueError):
    """Raised when a graph, colouring, pair set or formula is malformed."""


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[Edge, ...]
    directed: bool = False
    _index: dict = field(init=False, repr=False, compare=False, hash=False)
    _out: tuple = field(init=False, repr=False, compare=False, hash=False)
    _in: tuple = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError(f"negative vertex count {self.n}")
        canon = []
        seen = set()
        for raw in self.edges:
            u, v = (int(x) for x in raw)
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={self.n}")
            e = (u, v) if self.directed or u < v else (v, u)
            if e in seen:
                raise GraphError(f"duplicate edge {e}")
            seen.add(e)
            canon.append(e)
        canon.sort()
        object.__setattr__(self, "edges", tuple(canon))
        index = {e: i for i, e in enumerate(canon)}
        out = [[] for _ in range(self.n)]
        inc = [[] for _ in range(self.n)]
        for i, (u, v) in enumerate(canon):
            out[u].append((v, i))
            inc[v].append((u, i))
            if not self.directed:
                out[v].append((u, i))
                inc[u].append((v, i))
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_out", tuple(tuple(a) for a in out))
        object.__setattr__(self, "_in", tuple(tuple(a) for a in inc))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(self.n)

    def key(self, u: int, v: int) -> Edge:
        if self.directed or u < v:
            return (u, v)
        return (v, u)

    def has_edge(self, u: int, v: int) -> bool:
        return self.key(u, v) in self._index

    def adjacent(self, u: int, v: int) -> bool:
        """Adjacent in either orientation."""
        return (u, v) in self._index or (v, u) in self._index

    def edge_index(self, u: int, v: int) -> int:
        try:
            return self._index[self.key(u, v)]
        except KeyError:
            raise GraphError(f"no edge ({u}, {v})") from None

    def incident(self, v: int) -> tuple[tuple[int, int], ...]:
        """``(neighbour, edge index)`` for edges leaving ``v`` (all edges if undirected)."""
        return self._out[v]

    def incoming(self, v: int) -> tuple[tuple[int, int], ...]:
        return self._in[v]

    def neighbors(self, v: int) -> frozenset[int]:
        """Out-neighbours; for a directed graph use :meth:`underlying_neighbors` for both ways."""
        return frozenset(w for w, _ in self._out[v])

    def underlying_neighbors(self, v: int) -> frozenset[int]:
        return frozenset(w for w, _ in self._out[v]) | frozenset(w for w, _ in self._in[v])

    def degree(self, v: int) -> int:
        return len(self._out[v])


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple(combinations(range(n), 2)))


def path_graph(n: int) -> Graph:
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def star_graph(leaves: int) -> Graph:
    """Centre 0, leaves ``1..leaves``."""
    return Graph(leaves + 1, tuple((0, i) for i in range(1, leaves + 1)))


@dataclass(frozen=True)
class EdgeColoring:
    """Total map from the edges of ``graph`` (by edge index) to colours ``0..k-1``."""

    graph: Graph
    colors: tuple[int, ...]
    k: int

    def __post_init__(self) -> None:
        colors = tuple(int(c) for c in self.colors)
        object.__setattr__(self, "colors", colors)
        if len(colors) != self.graph.m:
            raise GraphError(f"colouring has {len(colors)} entries for {self.graph.m} edges")
        if self.k < 0 or (colors and self.k < 1):
            raise GraphError(f"invalid colour count {self.k}")
        for c in colors:
            if not 0 <= c < self.k:
                raise GraphError(f"colour {c} outside [0, {self.k})")

    @classmethod
    def from_mapping(cls, graph: Graph, mapping: Mapping[Edge, int], k: int | None = None) -> "EdgeColoring":
        colors = [None] * graph.m
        for (u, v), c in mapping.items():
            colors[graph.edge_index(u, v)] = c
        missing = [graph.edges[i] for i, c in enumerate(colors) if c is None]
        if missing:
            raise GraphError(f"edges without a colour: {missing[:5]}")
        if k is None:
            k = max(colors, default=0) + 1
        return cls(graph, tuple(colors), k)

    def color(self, u: int, v: int) -> int:
        return self.colors[self.graph.edge_index(u, v)]

    def items(self) -> Iterator[tuple[Edge, int]]:
        return zip(self.graph.edges, self.colors)

    def as_dict(self) -> dict[Edge, int]:
        return dict(self.items())

    def used(self) -> frozenset[int]:
        return frozenset(self.colors)

    def permuted(self, perm: Sequence[int]) -> "EdgeColoring":
        """Rename colour ``c`` to ``perm[c]``."""
        return EdgeColoring(self.graph, tuple(perm[c] for c in self.colors), self.k)


@dataclass(frozen=True)
class PairSet:
    """Unordered vertex pairs over ``0..n-1``; stored as sorted ``(u, v)`` with ``u < v``."""

    n: int
    pairs: tuple[Edge, ...]
    _set: frozenset = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        seen = set()
        for raw in self.pairs:
            u, v = (int(x) for x in raw)
            if u == v:
                raise GraphError(f"pair ({u}, {v}) has equal endpoints")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"pair ({u}, {v}) out of range for n={self.n}")
            p = (min(u, v), max(u, v))
            if p in seen:
                raise GraphError(f"duplicate pair {p}")
            seen.add(p)
        object.__setattr__(self, "pairs", tuple(sorted(seen)))
        object.__setattr__(self, "_set", frozenset(seen))

    @classmethod
    def all_pairs(cls, n: int) -> "PairSet":
        return cls(n, tuple(combinations(range(n), 2)))

    @classmethod
    def of(cls, n: int, pairs: Iterable[Edge]) -> "PairSet":
        """Like the constructor but drops repeated pairs instead of rejecting them."""
        return cls(n, tuple({(min(u, v), max(u, v)) for u, v in pairs}))

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def __contains__(self, pair: object) -> bool:
        u, v = pair  # type: ignore[misc]
        return (min(u, v), max(u, v)) in self._set

    def as_set(self) -> frozenset[Edge]:
        return self._set


@dataclass(frozen=True)
class CnfFormula:
    """Clauses of signed 1-based variable indices, 1 to 3 literals each."""

    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        clauses = tuple(tuple(int(x) for x in c) for c in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        if self.num_vars < 0:
            raise GraphError("negative variable count")
        for j, clause in enumerate(clauses, 1):
            if not 1 <= len(clause) <= 3:
                raise GraphError(f"clause {j} has {len(clause)} literals (need 1..3)")
            variables = [abs(lit) for lit in clause]
            if len(set(variables)) != len(variables):
                raise GraphError(f"clause {j} repeats a variable")
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise GraphError(f"literal {lit} out of range in clause {j}")

    def satisfied_by(self, assignment: Sequence[bool]) -> bool:
        """``assignment[i]`` is the value of variable ``i + 1``."""
        return all(any(assignment[abs(lit) - 1] == (lit > 0) for lit in c) for c in self.clauses)


def bfs_distances(g: Graph, source: int, reverse: bool = False) -> list[int | None]:
    """Hop distances from ``source`` (to ``source`` when ``reverse`` on a directed graph)."""
    if not 0 <= source < g.n:
        raise GraphError(f"vertex {source} out of range")
    step = g.incoming if reverse else g.incident
    dist: list[int | None] = [None] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y, _ in step(x):
            if dist[y] is None:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def connectivity_check(g: Graph) -> bool:
    """Undirected: one component. Directed: every two vertices joined by a path in some direction."""
    if g.n <= 1:
        return True
    if not g.directed:
        return all(d is not None for d in bfs_distances(g, 0))
    reach = [bfs_distances(g, v) for v in g.vertices]
    return all(
        reach[u][v] is not None or reach[v][u] is not None for u, v in combinations(g.vertices, 2)
    )


def anti_edges(g: Graph) -> PairSet:
    if g.directed:
        raise GraphError("anti-edges are defined for undirected graphs")
    return PairSet(g.n, tuple(p for p in combinations(g.vertices, 2) if not g.has_edge(*p)))


def bfs_layers(g: Graph, root: int) -> list[frozenset[int]]:
    """Vertex sets by distance from ``root``: ``[{root}, N(root), ...]``."""
    if g.directed:
        raise GraphError("bfs_layers expects an undirected graph")
    dist = bfs_distances(g, root)
    depth = max((d for d in dist if d is not None), default=0)
    layers: list[set[int]] = [set() for _ in range(depth + 1)]
    for v, d in enumerate(dist):
        if d is None:
            raise GraphError("bfs_layers expects a connected graph")
        layers[d].add(v)
    return [frozenset(layer) for layer in layers]


def diameter(g: Graph) -> int:
    """Largest pairwise distance; directed graphs use the shorter of the two directions."""
    dist = [bfs_distances(g, v) for v in g.vertices]
    best = 0
    for u, v in combinations(g.vertices, 2):
        options = [d for d in (dist[u][v], dist[v][u]) if d is not None]
        if not options:
            raise GraphError(f"vertices {u} and {v} are not connected")
        best = max(best, min(options))
    return best


def components(g: Graph, vertices: Iterable[int] | None = None) -> list[list[int]]:
    """Connected components (of the underlying graph) induced on ``vertices``, each sorted."""
    allowed = set(g.vertices if vertices is None else vertices)
    seen: set[int] = set()
    out = []
    for s in sorted(allowed):
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in g.underlying_neighbors(x):
                if y in allowed and y not in seen:
                    seen.add(y)
                    comp.append(y)
                    queue.append(y)
        out.append(sorted(comp))
    return out


def is_bipartite(g: Graph) -> bool:
    side: list[int | None] = [None] * g.n
    for s in g.vertices:
        if side[s] is not None:
            continue
        side[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in g.underlying_neighbors(x):
                if side[y] is None:
                    side[y] = 1 - side[x]
                    queue.append(y)
                elif side[y] == side[x]:
                    return False
    return True


def is_clique(g: Graph, vertices: Iterable[int]) -> bool:
    vs = list(vertices)
    return all(g.adjacent(u, v) for u, v in combinations(vs, 2))
