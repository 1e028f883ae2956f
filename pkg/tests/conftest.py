"""Shared hypothesis strategies and slow, obviously-correct reference implementations."""

from fractions import Fraction
from itertools import combinations

import hypothesis.strategies as st
from hypothesis import settings

from lowrank_mso.graph import ColoredGraph, Digraph

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def graphs(draw, min_n=0, max_n=7, colors=()):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = [p for p in pairs if draw(st.booleans())]
    cols = {c: [v for v in range(n) if draw(st.booleans())] for c in colors}
    return ColoredGraph.from_edges(n, edges, cols)


@st.composite
def graph_and_set(draw, min_n=0, max_n=7):
    g = draw(graphs(min_n, max_n))
    x = draw(st.integers(0, (1 << g.n) - 1)) if g.n else 0
    return g, x


@st.composite
def digraphs(draw, max_n=8):
    n = draw(st.integers(0, max_n))
    arcs = [(u, v) for u in range(n) for v in range(n) if u != v and draw(st.booleans())]
    return Digraph.from_arcs(n, arcs)


def members(mask):
    return [v for v in range(mask.bit_length()) if mask >> v & 1]


def oracle_matrix(g, x):
    xs = members(x)
    ys = [v for v in range(g.n) if not x >> v & 1]
    return [[1 if g.has_edge(u, v) else 0 for v in ys] for u in xs]


def oracle_rank(matrix, modulus=None):
    """Textbook Gaussian elimination over F2 (modulus=2) or Q (Fractions)."""
    a = [[Fraction(e) for e in row] for row in matrix]
    if modulus == 2:
        a = [[int(e) % 2 for e in row] for row in a]
    rank = 0
    width = len(a[0]) if a else 0
    for col in range(width):
        piv = next((i for i in range(rank, len(a)) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for i in range(len(a)):
            if i != rank and a[i][col] != 0:
                if modulus == 2:
                    a[i] = [(p + q) % 2 for p, q in zip(a[i], a[rank])]
                else:
                    f = a[i][col] / a[rank][col]
                    a[i] = [p - f * q for p, q in zip(a[i], a[rank])]
        rank += 1
    return rank


def oracle_cutrank(g, x):
    return oracle_rank(oracle_matrix(g, x), 2)


def oracle_reach(n, arcs, s, blocked=()):
    seen = {s}
    todo = [s]
    while todo:
        u = todo.pop()
        for a, b in arcs:
            if a == u and b not in seen and b not in blocked:
                seen.add(b)
                todo.append(b)
    return seen


def oracle_suffixes(h):
    arcs = h.arcs()
    out = set()
    for x in range(1 << h.n):
        if all(not (x >> u & 1) or (x >> v & 1) for u, v in arcs):
            out.add(x)
    return out


def oracle_lowrank(g, r):
    return {x for x in range(1 << g.n) if oracle_cutrank(g, x) <= r}


def represented_sets(g, a_plus, a_minus):
    """Sets X such that a_plus represents X and a_minus represents V - X (the H_a characterization)."""
    out = set()
    full = (1 << g.n) - 1
    for x in range(1 << g.n):
        if a_plus & ~x or a_minus & x:
            continue
        rest = full & ~x
        rows_x = {g.adj[v] & rest for v in members(x)}
        rows_rest = {g.adj[v] & x for v in members(rest)}
        if rows_x <= {g.adj[p] & rest for p in members(a_plus)} and \
                rows_rest <= {g.adj[q] & x for q in members(a_minus)}:
            out.add(x)
    return out


def has_kt_t(g, t):
    for left in combinations(range(g.n), t):
        for right in combinations([v for v in range(g.n) if v not in left], t):
            if all(g.has_edge(u, v) for u in left for v in right):
                return True
    return False
