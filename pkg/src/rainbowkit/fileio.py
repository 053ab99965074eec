"""Text formats: DIMACS-like graphs, pair lists, DIMACS CNF, colourings, provenance JSON.

Vertices (and colours in colouring files) are 1-indexed on disk and
0-indexed in memory.
"""

from __future__ import annotations

import json

from .graph_core import CnfFormula, EdgeColoring, Graph, GraphError, PairSet


class ParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line.split()


def _ints(lineno: int, tokens: list[str]) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(lineno, f"expected integers, got {' '.join(tokens)!r}") from None


def parse_graph(text: str) -> Graph:
    header = None
    edges = []
    last = 0
    for lineno, tok in _lines(text):
        last = lineno
        if tok[0] == "c":
            continue
        if tok[0] == "p":
            if header is not None:
                raise ParseError(lineno, "second problem line")
            if len(tok) != 4 or tok[1] not in ("edge", "arc"):
                raise ParseError(lineno, "expected 'p edge <n> <m>' or 'p arc <n> <m>'")
            n, m = _ints(lineno, tok[2:])
            header = (tok[1] == "arc", n, m)
        elif tok[0] in ("e", "a"):
            if header is None:
                raise ParseError(lineno, "edge before problem line")
            if len(tok) != 3:
                raise ParseError(lineno, "expected 'e <u> <v>'")
            u, v = _ints(lineno, tok[1:])
            if u == v:
                raise ParseError(lineno, f"self-loop at vertex {u}")
            if not (1 <= u <= header[1] and 1 <= v <= header[1]):
                raise ParseError(lineno, f"vertex out of range 1..{header[1]}")
            edges.append((lineno, u - 1, v - 1))
        else:
            raise ParseError(lineno, f"unknown line type {tok[0]!r}")
    if header is None:
        raise ParseError(last, "missing problem line")
    directed, n, m = header
    seen = set()
    for lineno, u, v in edges:
        key = (u, v) if directed else (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(lineno, f"duplicate edge {u + 1} {v + 1}")
        seen.add(key)
    if len(edges) != m:
        raise ParseError(last, f"header announces {m} edges, found {len(edges)}")
    return Graph(n, tuple((u, v) for _, u, v in edges), directed)


def format_graph(g: Graph) -> str:
    kind = "arc" if g.directed else "edge"
    lines = [f"p {kind} {g.n} {g.m}"] + [f"e {u + 1} {v + 1}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def parse_pairs(text: str, n: int) -> PairSet:
    seen = {}
    for lineno, tok in _lines(text):
        if tok[0] == "c":
            continue
        if len(tok) != 2:
            raise ParseError(lineno, "expected '<u> <v>'")
        u, v = _ints(lineno, tok)
        if u == v:
            raise ParseError(lineno, f"pair with equal endpoints {u}")
        if not (1 <= u <= n and 1 <= v <= n):
            raise ParseError(lineno, f"vertex out of range 1..{n}")
        key = (min(u, v) - 1, max(u, v) - 1)
        if key in seen:
            raise ParseError(lineno, f"duplicate pair {u} {v}")
        seen[key] = lineno
    return PairSet(n, tuple(seen))


def format_pairs(p: PairSet) -> str:
    return "".join(f"{u + 1} {v + 1}\n" for u, v in p)


def parse_cnf(text: str) -> CnfFormula:
    """Standard DIMACS CNF. Repeated literals in a clause are merged; ``x`` with ``-x`` is rejected."""
    num_vars = num_clauses = None
    clauses = []
    current: list[int] = []
    last = 0
    for lineno, tok in _lines(text):
        last = lineno
        if tok[0] == "c":
            continue
        if tok[0] == "%":
            break
        if tok[0] == "p":
            if len(tok) != 4 or tok[1] != "cnf":
                raise ParseError(lineno, "expected 'p cnf <vars> <clauses>'")
            num_vars, num_clauses = _ints(lineno, tok[2:])
            continue
        if num_vars is None:
            raise ParseError(lineno, "clause before problem line")
        for lit in _ints(lineno, tok):
            if lit == 0:
                clause = list(dict.fromkeys(current))
                if any(-x in clause for x in clause):
                    raise ParseError(lineno, "clause contains a variable and its negation")
                if not 1 <= len(clause) <= 3:
                    raise ParseError(lineno, f"clause has {len(clause)} distinct literals (need 1..3)")
                clauses.append(tuple(clause))
                current = []
            else:
                if abs(lit) > num_vars:
                    raise ParseError(lineno, f"literal {lit} exceeds {num_vars} variables")
                current.append(lit)
    if num_vars is None:
        raise ParseError(last, "missing problem line")
    if current:
        raise ParseError(last, "last clause is not terminated by 0")
    if len(clauses) != num_clauses:
        raise ParseError(last, f"header announces {num_clauses} clauses, found {len(clauses)}")
    return CnfFormula(num_vars, tuple(clauses))


def format_cnf(f: CnfFormula) -> str:
    lines = [f"p cnf {f.num_vars} {len(f.clauses)}"]
    lines += [" ".join(str(x) for x in c) + " 0" for c in f.clauses]
    return "\n".join(lines) + "\n"


def parse_coloring(text: str, g: Graph) -> EdgeColoring:
    """``k <count>`` then one ``c <u> <v> <colour>`` line per edge, colours ``1..k``."""
    k = None
    colors: list[int | None] = [None] * g.m
    last = 0
    for lineno, tok in _lines(text):
        last = lineno
        if tok[0] == "k":
            if len(tok) != 2:
                raise ParseError(lineno, "expected 'k <count>'")
            (k,) = _ints(lineno, tok[1:])
            continue
        if tok[0] != "c" or len(tok) != 4:
            raise ParseError(lineno, "expected 'c <u> <v> <colour>'")
        if k is None:
            raise ParseError(lineno, "colour before 'k' line")
        u, v, c = _ints(lineno, tok[1:])
        if not 1 <= c <= k:
            raise ParseError(lineno, f"colour {c} outside 1..{k}")
        try:
            e = g.edge_index(u - 1, v - 1)
        except GraphError:
            raise ParseError(lineno, f"no edge {u} {v} in the graph") from None
        if colors[e] is not None:
            raise ParseError(lineno, f"edge {u} {v} coloured twice")
        colors[e] = c - 1
    if k is None:
        raise ParseError(last, "missing 'k' line")
    missing = [g.edges[i] for i, c in enumerate(colors) if c is None]
    if missing:
        u, v = missing[0]
        raise ParseError(last, f"{len(missing)} edges without a colour, e.g. {u + 1} {v + 1}")
    return EdgeColoring(g, tuple(colors), k)


def format_coloring(c: EdgeColoring) -> str:
    lines = [f"k {c.k}"] + [f"c {u + 1} {v + 1} {col + 1}" for (u, v), col in c.items()]
    return "\n".join(lines) + "\n"


def coloring_to_json(c: EdgeColoring) -> list[list[int]]:
    return [[u + 1, v + 1, col + 1] for (u, v), col in c.items()]


def provenance_to_json(provenance: dict[int, str]) -> str:
    body = {str(v + 1): tag for v, tag in sorted(provenance.items())}
    return json.dumps({"indexing": 1, "vertices": body}, indent=1, sort_keys=False) + "\n"


def parse_provenance(text: str) -> dict[int, str]:
    data = json.loads(text)
    return {int(v) - 1: tag for v, tag in data["vertices"].items()}
