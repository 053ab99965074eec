"""Small-instance equivalence runs: brute force on the source vs. brute force on the target.

Source answers come from direct enumeration (vertex colourings, truth
assignments) or from the exact subset solver; target answers always come from
the exact solver on the reduced instance. Forward colourings are checked with
the verifier whenever the source is a yes-instance.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, product

from .exact_solver import (
    decide_rc,
    decide_rc_directed,
    decide_src,
    decide_subset_rc,
)
from .graph_core import (
    CnfFormula,
    Graph,
    PairSet,
    bfs_distances,
    connectivity_check,
    is_bipartite,
)
from .rainbow_check import verify_pairs
from .reductions import (
    GadgetParams,
    extend_dir_rc2_coloring,
    extend_rc_coloring_odd,
    extend_src_coloring,
    min_outside_path_length,
    reduce_3sat_to_dir_rc2,
    reduce_3sat_to_dir_subset_rc2,
    reduce_dir_subset_to_dir_rc2,
    reduce_subset_rc_to_rc_odd,
    reduce_subset_src_to_src,
    reduce_vc_to_subset_src,
    sat_assignment_coloring,
    star_to_vertex_coloring,
)

REDUCTIONS = (
    "vc-to-subset-src",
    "subset-src-to-src",
    "subset-rc-to-rc",
    "sat-to-dir-subset",
    "dir-subset-to-dir-rc2",
    "sat-to-dir-rc2",
)


# --------------------------------------------------------------------------
# source-side oracles


def vertex_coloring(g: Graph, k: int) -> tuple[int, ...] | None:
    for colors in product(range(k), repeat=g.n):
        if all(colors[u] != colors[v] for u, v in g.edges):
            return colors
    return None


def chromatic_number(g: Graph) -> int:
    for k in range(1, g.n + 1):
        if vertex_coloring(g, k) is not None:
            return k
    return 0


def satisfying_assignment(f: CnfFormula) -> tuple[bool, ...] | None:
    for values in product((False, True), repeat=f.num_vars):
        if f.satisfied_by(values):
            return values
    return None


# --------------------------------------------------------------------------
# instance generators


def connected_graphs(n: int):
    """Every connected labelled graph on ``n`` vertices."""
    slots = list(combinations(range(n), 2))
    for bits in range(1 << len(slots)):
        g = Graph(n, tuple(e for i, e in enumerate(slots) if bits >> i & 1))
        if connectivity_check(g):
            yield g


def random_connected_graph(rng: random.Random, n: int, density: float | None = None) -> Graph:
    density = rng.random() if density is None else density
    edges = {(rng.randrange(i), i) for i in range(1, n)}
    edges |= {e for e in combinations(range(n), 2) if rng.random() < density}
    return Graph(n, tuple(edges))


def random_pairs(rng: random.Random, candidates: list, n: int) -> PairSet:
    return PairSet(n, tuple(p for p in candidates if rng.random() < 0.5))


def random_formula(rng: random.Random, max_vars: int = 3, max_clauses: int = 3) -> CnfFormula:
    nv = rng.randint(1, max_vars)
    clauses = []
    for _ in range(rng.randint(1, max_clauses)):
        size = rng.randint(1, min(3, nv))
        variables = rng.sample(range(1, nv + 1), size)
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in variables))
    return CnfFormula(nv, tuple(clauses))


def random_directed_instance(rng: random.Random, max_n: int = 4) -> tuple[Graph, PairSet]:
    n = rng.randint(2, max_n)
    arcs = set()
    for i in range(1, n):
        j = rng.randrange(i)
        arcs.add((j, i) if rng.random() < 0.5 else (i, j))
    for u, v in combinations(range(n), 2):
        if rng.random() < 0.3 and (v, u) not in arcs and (u, v) not in arcs:
            arcs.add((u, v) if rng.random() < 0.5 else (v, u))
    g = Graph(n, tuple(arcs), directed=True)
    reach = [bfs_distances(g, v) for v in range(n)]
    joined = [(u, v) for u, v in combinations(range(n), 2) if reach[u][v] is not None or reach[v][u] is not None]
    return g, random_pairs(rng, joined, n)


# --------------------------------------------------------------------------
# per-reduction runs


@dataclass
class EquivReport:
    reduction: str
    trials: int = 0
    yes: int = 0
    mismatches: list = field(default_factory=list)
    certificate_failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches and not self.certificate_failures

    def to_json(self) -> dict:
        return {
            "reduction": self.reduction,
            "trials": self.trials,
            "yes_instances": self.yes,
            "mismatches": [str(m) for m in self.mismatches],
            "certificate_failures": [str(m) for m in self.certificate_failures],
            "ok": self.ok,
        }


def check_vc(graphs, ks=(3, 4)) -> EquivReport:
    rep = EquivReport("vc-to-subset-src")
    for g in graphs:
        for k in ks:
            rep.trials += 1
            red = reduce_vc_to_subset_src(g, k)
            source = vertex_coloring(g, k) is not None
            witness = decide_subset_rc(red.graph, red.pairs, k, "geodesic")
            plain = decide_subset_rc(red.graph, red.pairs, k, "plain")
            target = witness is not None
            if source != target or target != (plain is not None):
                rep.mismatches.append((g.n, g.edges, k, source, target))
            if target:
                rep.yes += 1
                decoded = star_to_vertex_coloring(red, witness)
                if any(decoded[u] == decoded[v] for u, v in g.edges):
                    rep.certificate_failures.append((g.n, g.edges, k))
    return rep


def check_subset_src_to_src(rng: random.Random, trials: int, k: int = 3, max_leaves: int = 4) -> EquivReport:
    rep = EquivReport("subset-src-to-src")
    for _ in range(trials):
        leaves = rng.randint(2, max_leaves)
        star = Graph(leaves + 1, tuple((0, i) for i in range(1, leaves + 1)))
        p = random_pairs(rng, list(combinations(range(1, leaves + 1), 2)), leaves + 1)
        rep.trials += 1
        red = reduce_subset_src_to_src(star, p, k)
        source = decide_subset_rc(star, p, k, "geodesic")
        target = decide_src(red.graph, k)
        if (source is not None) != (target is not None) or not is_bipartite(red.graph):
            rep.mismatches.append((leaves, p.pairs, source is not None, target is not None))
        if source is not None:
            rep.yes += 1
            ext = extend_src_coloring(red, source)
            if not verify_pairs(red.graph, ext, PairSet.all_pairs(red.graph.n), "geodesic").ok:
                rep.certificate_failures.append((leaves, p.pairs))
    return rep


def check_subset_rc_to_rc(rng: random.Random, trials: int, k: int = 3, max_n: int = 3) -> EquivReport:
    rep = EquivReport("subset-rc-to-rc")
    params = GadgetParams(k)
    for _ in range(trials):
        n = rng.randint(2, max_n)
        g = random_connected_graph(rng, n)
        p = random_pairs(rng, list(combinations(range(n), 2)), n)
        rep.trials += 1
        red = reduce_subset_rc_to_rc_odd(g, p, params)
        source = decide_subset_rc(g, p, k, "plain")
        target = decide_rc(red.graph, k)
        if (source is not None) != (target is not None):
            rep.mismatches.append((g.n, g.edges, p.pairs, source is not None, target is not None))
        for u, v in p:
            shortest = min_outside_path_length(red, u, v, k + 1)
            if shortest is not None and shortest <= k:
                rep.mismatches.append(("short outside path", g.edges, p.pairs, (u, v), shortest))
        if source is not None:
            rep.yes += 1
            ext = extend_rc_coloring_odd(red, source)
            if not verify_pairs(red.graph, ext, PairSet.all_pairs(red.graph.n), "plain").ok:
                rep.certificate_failures.append((g.edges, p.pairs))
    return rep


def check_sat(rng: random.Random, trials: int, compose: bool = True) -> EquivReport:
    """SAT brute force vs. the directed 2-subset instance (and vs. directed rc <= 2 when ``compose``)."""
    rep = EquivReport("sat-to-dir-rc2" if compose else "sat-to-dir-subset")
    for _ in range(trials):
        f = random_formula(rng)
        rep.trials += 1
        assignment = satisfying_assignment(f)
        red = reduce_3sat_to_dir_subset_rc2(f)
        subset = decide_subset_rc(red.graph, red.pairs, 2, "directed")
        answers = [assignment is not None, subset is not None]
        if compose:
            full = reduce_3sat_to_dir_rc2(f)
            answers.append(decide_rc_directed(full.graph, 2) is not None)
        if len(set(answers)) != 1:
            rep.mismatches.append((f.num_vars, f.clauses, answers))
        if assignment is not None:
            rep.yes += 1
            col = sat_assignment_coloring(red, f, assignment)
            if not verify_pairs(red.graph, col, red.pairs, "directed").ok:
                rep.certificate_failures.append((f.num_vars, f.clauses))
    return rep


def check_dir_subset_to_dir_rc2(rng: random.Random, trials: int, max_n: int = 4) -> EquivReport:
    rep = EquivReport("dir-subset-to-dir-rc2")
    for _ in range(trials):
        g, p = random_directed_instance(rng, max_n)
        rep.trials += 1
        red = reduce_dir_subset_to_dir_rc2(g, p)
        source = decide_subset_rc(g, p, 2, "directed")
        target = decide_rc_directed(red.graph, 2)
        if (source is not None) != (target is not None):
            rep.mismatches.append((g.n, g.edges, p.pairs, source is not None, target is not None))
        for u, v in p:
            shortest = min_outside_path_length(red, u, v, 2)
            if shortest is not None:
                rep.mismatches.append(("2-path outside G", g.edges, p.pairs, (u, v)))
        if source is not None:
            rep.yes += 1
            ext = extend_dir_rc2_coloring(red, source)
            if not verify_pairs(red.graph, ext, PairSet.all_pairs(red.graph.n), "directed").ok:
                rep.certificate_failures.append((g.edges, p.pairs))
    return rep


def run(reduction: str, trials: int = 50, seed: int = 0) -> EquivReport:
    rng = random.Random(seed)
    if reduction == "vc-to-subset-src":
        graphs = [random_connected_graph(rng, rng.randint(1, 5)) for _ in range(trials)]
        return check_vc(graphs)
    if reduction == "subset-src-to-src":
        return check_subset_src_to_src(rng, trials)
    if reduction == "subset-rc-to-rc":
        return check_subset_rc_to_rc(rng, trials)
    if reduction == "sat-to-dir-subset":
        return check_sat(rng, trials, compose=False)
    if reduction == "sat-to-dir-rc2":
        return check_sat(rng, trials, compose=True)
    if reduction == "dir-subset-to-dir-rc2":
        return check_dir_subset_to_dir_rc2(rng, trials)
    raise ValueError(f"unknown reduction {reduction!r}; choose from {REDUCTIONS}")
