"""Instance transformers for the five hardness gadgets and their forward colourings.

Each reduction returns a :class:`ReductionOutput` whose ``provenance`` maps
every target vertex to a tag naming the source entity it stands for. Tags use
1-based names: ``v3`` is source vertex 2, ``u3,1`` the first tail vertex of
source vertex 2, ``w1,3`` a non-pair gadget vertex, ``C2`` the second clause,
``x1`` / ``~x1`` literal vertices, and ``a``, ``x``, ``y``, ``T``, ``R``, ``B``,
``v_ex`` the special vertices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations
from math import comb
from typing import Sequence

from .graph_core import (
    CnfFormula,
    EdgeColoring,
    Graph,
    GraphError,
    PairSet,
    connectivity_check,
)
from .rainbow_check import verify_pairs

RED, BLUE = 0, 1


@dataclass(frozen=True)
class GadgetParams:
    k: int

    def __post_init__(self) -> None:
        if self.k < 3 or self.k % 2 == 0:
            raise ValueError(f"the odd-k gadget needs an odd k >= 3, got {self.k}")

    @property
    def m(self) -> int:
        return (self.k - 1) // 2


@dataclass(frozen=True)
class ReductionOutput:
    kind: str
    graph: Graph
    pairs: PairSet | None
    k: int | None
    provenance: dict[int, str] = field(hash=False)
    source_graph: Graph | None = None
    source_pairs: PairSet | None = None

    def vertex(self, tag: str) -> int:
        lookup = self.__dict__.get("_lookup")
        if lookup is None:
            lookup = {t: v for v, t in self.provenance.items()}
            object.__setattr__(self, "_lookup", lookup)
        return lookup[tag]


def _tag(i: int) -> str:
    return f"v{i + 1}"


# --------------------------------------------------------------------------
# vertex colouring -> subset strong rainbow connectivity on a star


def reduce_vc_to_subset_src(g: Graph, k: int) -> ReductionOutput:
    """Star with one leaf per source vertex (same index) and centre ``n``; one pair per edge."""
    if g.directed:
        raise GraphError("vertex colouring reduction expects an undirected graph")
    if k < 3:
        raise ValueError(f"k must be at least 3, got {k}")
    n = g.n
    star = Graph(n + 1, tuple((n, v) for v in range(n)))
    pairs = PairSet(n + 1, g.edges)
    prov = {v: _tag(v) for v in range(n)}
    prov[n] = "a"
    return ReductionOutput("vc-to-subset-src", star, pairs, k, prov, g, None)


def vertex_to_star_coloring(red: ReductionOutput, vertex_colors: Sequence[int], k: int) -> EdgeColoring:
    """Colour each spoke with the colour of its leaf's source vertex."""
    star = red.graph
    centre = red.vertex("a")
    mapping = {(centre, v): vertex_colors[v] for v in range(star.n) if v != centre}
    return EdgeColoring.from_mapping(star, mapping, k)


def star_to_vertex_coloring(red: ReductionOutput, coloring: EdgeColoring) -> list[int]:
    """Read a vertex colouring of the source graph off the spoke colours."""
    centre = red.vertex("a")
    return [coloring.color(centre, v) for v in range(red.graph.n) if v != centre]


# --------------------------------------------------------------------------
# subset src on a star -> src on a bipartite graph


def star_centre(star: Graph) -> int:
    if star.directed or star.n < 2 or star.m != star.n - 1:
        raise GraphError("input is not a star")
    hubs = [v for v in star.vertices if star.degree(v) == star.n - 1]
    if not hubs:
        raise GraphError("input is not a star")
    return hubs[0]


def reduce_subset_src_to_src(star: Graph, p: PairSet, k: int) -> ReductionOutput:
    if k < 3:
        raise ValueError(f"k must be at least 3, got {k}")
    a = star_centre(star)
    if a in {x for pair in p for x in pair}:
        raise GraphError("pairs must join two leaves of the star")
    leaves = [v for v in star.vertices if v != a]
    nonpairs = [(i, j) for i, j in combinations(leaves, 2) if (i, j) not in p]

    prov = {v: _tag(v) for v in leaves}
    prov[a] = "a"
    nxt = star.n
    u, w = {}, {}
    for i in leaves:
        u[i] = nxt
        prov[nxt] = f"u{i + 1}"
        nxt += 1
    for ij in nonpairs:
        w[ij] = nxt
        prov[nxt] = f"w{ij[0] + 1},{ij[1] + 1}"
        nxt += 1
    u2, w2 = {}, {}
    for i in leaves:
        u2[i] = nxt
        prov[nxt] = f"u'{i + 1}"
        nxt += 1
    for ij in nonpairs:
        w2[ij] = nxt
        prov[nxt] = f"w'{ij[0] + 1},{ij[1] + 1}"
        nxt += 1

    side1 = list(u.values()) + list(w.values())
    side2 = list(u2.values()) + list(w2.values())
    edges = list(star.edges)
    edges += [(i, u[i]) for i in leaves]
    for (i, j), x in w.items():
        edges += [(i, x), (j, x)]
    edges += [(x, y) for x in side1 for y in side2]
    edges += [(a, y) for y in side2]
    target = Graph(nxt, tuple(edges))
    return ReductionOutput("subset-src-to-src", target, None, k, prov, star, p)


def bipartition(red: ReductionOutput) -> tuple[frozenset[int], frozenset[int]]:
    """``A = {a} ∪ V1`` and ``B = L ∪ V2`` of the bipartite gadget."""
    side_a = {v for v, t in red.provenance.items() if t == "a" or t[0] in "uw" and "'" not in t}
    return frozenset(side_a), frozenset(red.graph.vertices) - frozenset(side_a)


def extend_src_coloring(red: ReductionOutput, source_coloring: EdgeColoring) -> EdgeColoring:
    """Forward colouring of the bipartite gadget from a good star colouring.

    Colours ``c1, c2, c3`` are ``0, 1, 2``; the perfect matching between the
    two new sides pairs ``u_i`` with ``u'_i`` and ``w_ij`` with ``w'_ij``.
    """
    if red.kind != "subset-src-to-src":
        raise ValueError("not a subset-src-to-src reduction")
    star, p = red.source_graph, red.source_pairs
    if not verify_pairs(star, source_coloring, p, "geodesic").ok:
        raise ValueError("source colouring does not strongly satisfy the pairs")
    k = max(3, source_coloring.k)
    g = red.graph
    prov = red.provenance
    a = red.vertex("a")
    colors = {}
    for e, c in source_coloring.items():
        colors[e] = c
    for v, tag in prov.items():
        if tag.startswith("u") and "'" not in tag:
            colors[(red.vertex("v" + tag[1:]), v)] = 2
        elif tag.startswith("w") and "'" not in tag:
            i, j = tag[1:].split(",")
            colors[(red.vertex("v" + i), v)] = 0
            colors[(red.vertex("v" + j), v)] = 1
    partner = {}
    for v, tag in prov.items():
        if "'" in tag:
            partner[red.vertex(tag.replace("'", ""))] = v
            colors[(a, v)] = 2
    for x, y in g.edges:
        if (x, y) in colors:
            continue
        if partner.get(x) == y or partner.get(y) == x:
            colors[(x, y)] = 0
        else:
            colors[(x, y)] = 1
    return EdgeColoring.from_mapping(g, colors, k)


def composed_size(n: int, p_count: int) -> int:
    """Vertices of the vertex-colouring -> star -> bipartite composition."""
    return 3 * n + 1 + 2 * (comb(n, 2) - p_count)


def composed_size_check(n: int, p_count: int) -> int:
    """Exact composed vertex count, checked against the ``2 C(n,2) + 3n + 3`` and ``2 n^2`` bounds."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if not 0 <= p_count <= comb(n, 2):
        raise ValueError(f"p_count must lie in [0, {comb(n, 2)}]")
    size = composed_size(n, p_count)
    assert size <= 2 * comb(n, 2) + 3 * n + 3
    if n >= 3:
        assert size <= 2 * n * n
    return size


# --------------------------------------------------------------------------
# subset rc -> rc for odd k


def reduce_subset_rc_to_rc_odd(g: Graph, p: PairSet, params: GadgetParams) -> ReductionOutput:
    if g.directed:
        raise GraphError("odd-k gadget expects an undirected graph")
    if not connectivity_check(g):
        raise GraphError("source graph is not connected")
    if p.n != g.n:
        raise GraphError("pair set does not match the graph")
    n, m = g.n, params.m

    def tail(i: int, j: int) -> int:
        return n + i * 2 * m + (j - 1)

    x, y = n + 2 * m * n, n + 2 * m * n + 1
    prov = {v: _tag(v) for v in range(n)}
    for i in range(n):
        for j in range(1, 2 * m + 1):
            prov[tail(i, j)] = f"u{i + 1},{j}"
    prov[x], prov[y] = "x", "y"

    edges = set(g.edges)
    for i in range(n):
        edges.add((i, tail(i, 1)))
        edges.add((i, tail(i, m + 1)))
        for j in range(1, 2 * m):
            if j != m:
                edges.add((tail(i, j), tail(i, j + 1)))
        edges.add((tail(i, 1), tail(i, m + 1)))
        edges.add((tail(i, m), tail(i, 2 * m)))
        for apex in (x, y):
            edges.add((tail(i, m), apex))
            edges.add((tail(i, 2 * m), apex))
    for i, j in combinations(range(n), 2):
        if (i, j) not in p:
            edges.add((tail(i, m), tail(j, 2 * m)))
            edges.add((tail(i, 2 * m), tail(j, m)))
    target = Graph(y + 1, tuple(edges))
    return ReductionOutput("subset-rc-to-rc", target, None, params.k, prov, g, p)


def extend_rc_coloring_odd(red: ReductionOutput, source_coloring: EdgeColoring) -> EdgeColoring:
    """Forward colouring of the odd-k gadget; colour ``c_t`` is ``t - 1``."""
    if red.kind != "subset-rc-to-rc":
        raise ValueError("not a subset-rc-to-rc reduction")
    g, p, k = red.source_graph, red.source_pairs, red.k
    m = (k - 1) // 2
    if source_coloring.k > k:
        raise ValueError(f"source colouring uses {source_coloring.k} colours, gadget allows {k}")
    if not verify_pairs(g, source_coloring, p, "plain").ok:
        raise ValueError("source colouring does not satisfy the pairs")

    def c(t: int) -> int:
        return t - 1

    def u(i: int, j: int) -> int:
        return red.vertex(f"u{i + 1},{j}")

    x, y = red.vertex("x"), red.vertex("y")
    colors = dict(source_coloring.items())
    for i in range(g.n):
        colors[(i, u(i, 1))] = c(1)
        colors[(i, u(i, m + 1))] = c(m + 1)
        for j in range(1, 2 * m):
            if j % m:
                colors[(u(i, j), u(i, j + 1))] = c(j + 1)
        colors[(x, u(i, m))] = c(m + 1)
        colors[(x, u(i, 2 * m))] = c(2 * m + 1)
        colors[(y, u(i, m))] = c(2 * m + 1)
        colors[(y, u(i, 2 * m))] = c(1)
        if m != 1:
            colors[(u(i, 1), u(i, m + 1))] = c(m + 1)
            colors[(u(i, m), u(i, 2 * m))] = c(1)
        else:
            colors[(u(i, 1), u(i, 2))] = c(1)
    for i, j in combinations(range(g.n), 2):
        if (i, j) not in p:
            colors[(u(i, m), u(j, 2 * m))] = c(2 * m + 1)
            colors[(u(i, 2 * m), u(j, m))] = c(2 * m + 1)
    target = red.graph
    return EdgeColoring.from_mapping(target, {target.key(*e): col for e, col in colors.items()}, k)


# --------------------------------------------------------------------------
# 3SAT -> directed 2-subset rc -> directed rc <= 2


def reduce_3sat_to_dir_subset_rc2(f: CnfFormula) -> ReductionOutput:
    """Vertices: clauses ``C_j``, then ``x_i``, then ``~x_i``, then ``T, R, B``."""
    nc, nv = len(f.clauses), f.num_vars

    def clause(j):
        return j

    def pos(i):
        return nc + i

    def neg(i):
        return nc + nv + i

    t, r, b = nc + 2 * nv, nc + 2 * nv + 1, nc + 2 * nv + 2
    prov = {clause(j): f"C{j + 1}" for j in range(nc)}
    for i in range(nv):
        prov[pos(i)] = f"x{i + 1}"
        prov[neg(i)] = f"~x{i + 1}"
    prov.update({t: "T", r: "R", b: "B"})

    arcs = [(r, t), (t, b)]
    for i in range(nv):
        arcs += [(pos(i), t), (t, neg(i)), (pos(i), neg(i))]
    pairs = [(clause(j), t) for j in range(nc)]
    for j, cl in enumerate(f.clauses):
        for lit in cl:
            i = abs(lit) - 1
            if lit > 0:
                arcs.append((clause(j), pos(i)))
            else:
                arcs.append((neg(i), clause(j)))
            pairs += [(pos(i), clause(j)), (neg(i), clause(j))]
    pairs.append((r, b))
    for i in range(nv):
        pairs += [(r, neg(i)), (b, pos(i))]
    n = b + 1
    return ReductionOutput(
        "sat-to-dir-subset", Graph(n, tuple(arcs), directed=True), PairSet(n, tuple(pairs)), 2, prov
    )


def sat_assignment_coloring(red: ReductionOutput, f: CnfFormula, assignment: Sequence[bool]) -> EdgeColoring:
    """The 2-colouring built from a truth assignment (red = 0, blue = 1)."""
    g = red.graph
    t, r, b = red.vertex("T"), red.vertex("R"), red.vertex("B")
    colors = {(r, t): RED, (t, b): BLUE}
    for i in range(f.num_vars):
        xi, nxi = red.vertex(f"x{i + 1}"), red.vertex(f"~x{i + 1}")
        colors[(xi, t)] = RED
        colors[(t, nxi)] = BLUE
        colors[(xi, nxi)] = RED if assignment[i] else BLUE
    for j, cl in enumerate(f.clauses):
        cj = red.vertex(f"C{j + 1}")
        for lit in cl:
            i = abs(lit) - 1
            col = BLUE if assignment[i] else RED
            if lit > 0:
                colors[(cj, red.vertex(f"x{i + 1}"))] = col
            else:
                colors[(red.vertex(f"~x{i + 1}"), cj)] = col
    return EdgeColoring.from_mapping(g, colors, 2)


def reduce_dir_subset_to_dir_rc2(g: Graph, p: PairSet) -> ReductionOutput:
    """One ``w_ij`` per ordered non-pair, apex ``v_ex`` and a lexicographic tournament on the ``w``."""
    if not g.directed:
        raise GraphError("expects a directed graph")
    if p.n != g.n:
        raise GraphError("pair set does not match the graph")
    n = g.n
    ordered = [(i, j) for i, j in permutations(range(n), 2) if (i, j) not in p]
    ordered.sort()
    w = {ij: n + idx for idx, ij in enumerate(ordered)}
    ex = n + len(ordered)
    prov = {v: _tag(v) for v in range(n)}
    for (i, j), v in w.items():
        prov[v] = f"w{i + 1},{j + 1}"
    prov[ex] = "v_ex"
    arcs = list(g.edges)
    for (i, j), v in w.items():
        arcs += [(i, v), (v, j)]
    arcs += [(v, ex) for v in range(n)]
    arcs += [(ex, v) for v in w.values()]
    ws = [w[ij] for ij in ordered]
    arcs += [(ws[s], ws[t]) for s, t in combinations(range(len(ws)), 2)]
    return ReductionOutput(
        "dir-subset-to-dir-rc2", Graph(ex + 1, tuple(arcs), directed=True), None, 2, prov, g, p
    )


def extend_dir_rc2_coloring(red: ReductionOutput, source_coloring: EdgeColoring) -> EdgeColoring:
    """Red into ``v_ex`` and into each ``w_ij``, blue out of them; tournament red."""
    if red.kind != "dir-subset-to-dir-rc2":
        raise ValueError("not a dir-subset-to-dir-rc2 reduction")
    g, p = red.source_graph, red.source_pairs
    if source_coloring.k > 2 or not verify_pairs(g, source_coloring, p, "directed").ok:
        raise ValueError("source colouring is not a good 2-colouring of the pairs")
    ex = red.vertex("v_ex")
    colors = dict(source_coloring.items())
    for x, y in red.graph.edges:
        if (x, y) in colors:
            continue
        if y == ex or (x < g.n <= y):
            colors[(x, y)] = RED
        elif x == ex or (y < g.n <= x):
            colors[(x, y)] = BLUE
        else:
            colors[(x, y)] = RED
    return EdgeColoring.from_mapping(red.graph, colors, 2)


def reduce_3sat_to_dir_rc2(f: CnfFormula) -> ReductionOutput:
    """Composition of the two directed reductions; provenance tags come from the first stage."""
    first = reduce_3sat_to_dir_subset_rc2(f)
    second = reduce_dir_subset_to_dir_rc2(first.graph, first.pairs)
    prov = {}
    for v, tag in second.provenance.items():
        if tag.startswith("v") and tag != "v_ex":
            prov[v] = first.provenance[int(tag[1:]) - 1]
        elif tag.startswith("w"):
            i, j = (int(s) - 1 for s in tag[1:].split(","))
            prov[v] = f"w({first.provenance[i]},{first.provenance[j]})"
        else:
            prov[v] = tag
    return ReductionOutput("sat-to-dir-rc2", second.graph, None, 2, prov, first.graph, first.pairs)


def min_outside_path_length(red: ReductionOutput, u: int, v: int, limit: int) -> int | None:
    """Shortest simple ``u``-``v`` path of the target that uses an edge outside the source graph.

    Directed targets are searched in both directions. ``None`` when every such
    path is longer than ``limit``.
    """
    g, src = red.graph, red.source_graph

    def inside(x: int, y: int) -> bool:
        return x < src.n and y < src.n and src.has_edge(x, y)

    def search(s: int, t: int) -> int | None:
        best = None
        stack = [(s, frozenset([s]), 0, False)]
        while stack:
            x, seen, length, outside = stack.pop()
            if x == t:
                if outside and (best is None or length < best):
                    best = length
                continue
            if length == limit or (best is not None and length + 1 >= best):
                continue
            for y, _ in g.incident(x):
                if y not in seen:
                    stack.append((y, seen | {y}, length + 1, outside or not inside(x, y)))
        return best

    found = [d for d in (search(u, v), search(v, u) if g.directed else None) if d is not None]
    return min(found) if found else None
