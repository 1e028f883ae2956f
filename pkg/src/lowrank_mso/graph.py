"""Colored undirected graphs, digraphs, JSON I/O and test-family generators."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from .bitset import bits_of, full_mask, mask_of
from .errors import BadParameter, MalformedDocument, SelfLoop, UnknownFamily, VertexOutOfRange

MASK64 = (1 << 64) - 1


class SplitMix64:
    """SplitMix64 generator (Steele, Lea, Flood 2014).

    Chosen over :mod:`random` because the stream is a five-line published
    algorithm, so corpora generated here can be regenerated bit-exactly by
    any other implementation.
    """

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def random(self) -> float:
        """Uniform double in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def randrange(self, k: int) -> int:
        if k <= 0:
            raise ValueError("empty range")
        return self.next_u64() % k

    def subset_mask(self, n: int, p: float = 0.5) -> int:
        m = 0
        for v in range(n):
            if self.random() < p:
                m |= 1 << v
        return m


@dataclass(frozen=True)
class ColoredGraph:
    """Undirected simple graph with open-world unary colors.

    ``adj[v]`` is the neighbourhood mask of ``v``; ``colors`` maps a color
    name to the mask of vertices carrying it.
    """

    n: int
    adj: tuple
    colors: Mapping[str, int] = field(default_factory=dict, hash=False)
    names: Optional[tuple] = field(default=None, compare=False, hash=False)

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise ValueError("adjacency length differs from n")
        full = full_mask(self.n)
        for u, nb in enumerate(self.adj):
            if nb & ~full:
                raise VertexOutOfRange(f"neighbour of {u} out of range")
            if (nb >> u) & 1:
                raise SelfLoop(f"self-loop at {u}")
            for v in bits_of(nb):
                if not (self.adj[v] >> u) & 1:
                    raise ValueError(f"asymmetric adjacency {u}-{v}")
        for name, m in self.colors.items():
            if m & ~full:
                raise VertexOutOfRange(f"color {name!r} mentions a vertex out of range")
        object.__setattr__(self, "colors", dict(self.colors))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable, colors: Optional[Mapping[str, Iterable[int]]] = None,
                   names=None) -> "ColoredGraph":
        adj = [0] * n
        for e in edges:
            u, v = e
            if not (0 <= u < n and 0 <= v < n):
                raise VertexOutOfRange(f"edge {u}-{v} outside [0,{n})")
            if u == v:
                raise SelfLoop(f"self-loop at {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        cmap = {}
        for name, vs in (colors or {}).items():
            vs = list(vs)
            for v in vs:
                if not 0 <= v < n:
                    raise VertexOutOfRange(f"color {name!r} vertex {v} outside [0,{n})")
            cmap[name] = mask_of(vs)
        return cls(n, tuple(adj), cmap, tuple(names) if names is not None else None)

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def full(self) -> int:
        return full_mask(self.n)

    def has_edge(self, u: int, v: int) -> bool:
        return (self.adj[u] >> v) & 1 == 1

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits_of(self.adj[u]) if u < v]

    def edge_count(self) -> int:
        return sum(bin(a).count("1") for a in self.adj) // 2

    def color_mask(self, name: str) -> int:
        return self.colors.get(name, 0)

    def colors_of(self, v: int) -> tuple[str, ...]:
        return tuple(sorted(c for c, m in self.colors.items() if (m >> v) & 1))

    def index(self, name: str) -> int:
        """Vertex index for a generator-assigned vertex name."""
        if self.names is None:
            raise KeyError(name)
        return self.names.index(name)

    def with_colors(self, extra: Mapping[str, int]) -> "ColoredGraph":
        colors = dict(self.colors)
        colors.update(extra)
        return ColoredGraph(self.n, self.adj, colors, self.names)

    def complement(self) -> "ColoredGraph":
        full = self.full
        adj = tuple(full & ~a & ~(1 << v) for v, a in enumerate(self.adj))
        return ColoredGraph(self.n, adj, self.colors, self.names)

    def to_json(self) -> dict:
        doc = {
            "n": self.n,
            "edges": [list(e) for e in self.edges()],
            "colors": {c: list(bits_of(m)) for c, m in sorted(self.colors.items())},
        }
        if self.names is not None:
            doc["names"] = list(self.names)
        return doc

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


@dataclass(frozen=True)
class Digraph:
    """Loopless digraph; ``out[u]`` is the mask of heads of arcs leaving ``u``."""

    n: int
    out: tuple
    inn: tuple = field(init=False, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if len(self.out) != self.n:
            raise ValueError("out-adjacency length differs from n")
        full = full_mask(self.n)
        inn = [0] * self.n
        for u, o in enumerate(self.out):
            if o & ~full:
                raise VertexOutOfRange(f"arc from {u} leaves the vertex range")
            if (o >> u) & 1:
                raise SelfLoop(f"self-loop at {u}")
            for v in bits_of(o):
                inn[v] |= 1 << u
        object.__setattr__(self, "inn", tuple(inn))

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable) -> "Digraph":
        out = [0] * n
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise VertexOutOfRange(f"arc {u}->{v} outside [0,{n})")
            out[u] |= 1 << v
        return cls(n, tuple(out))

    @classmethod
    def from_graph(cls, g: ColoredGraph) -> "Digraph":
        return cls(g.n, tuple(g.adj))

    def has_arc(self, u: int, v: int) -> bool:
        return (self.out[u] >> v) & 1 == 1

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits_of(self.out[u])]

    def is_symmetric(self) -> bool:
        return self.out == self.inn

    def reachable_from(self, s: int) -> int:
        """Mask of vertices reachable from ``s`` (including ``s``)."""
        seen = 1 << s
        frontier = seen
        while frontier:
            nxt = 0
            for u in bits_of(frontier):
                nxt |= self.out[u]
            frontier = nxt & ~seen
            seen |= frontier
        return seen

    def is_suffix(self, mask: int) -> bool:
        """True iff no arc leaves ``mask``."""
        outside = full_mask(self.n) & ~mask
        return all(self.out[u] & outside == 0 for u in bits_of(mask))

    def to_json(self) -> dict:
        return {"n": self.n, "arcs": [list(a) for a in self.arcs()]}


def reach_mask(adj, s: int, allowed: int) -> int:
    """Vertices reachable from ``s`` through ``allowed`` in an (out-)adjacency table."""
    if not (allowed >> s) & 1:
        return 0
    seen = 1 << s
    frontier = seen
    while frontier:
        nxt = 0
        for u in bits_of(frontier):
            nxt |= adj[u]
        frontier = nxt & allowed & ~seen
        seen |= frontier
    return seen


def components(g: ColoredGraph) -> list[int]:
    """Connected components as masks, ordered by smallest vertex."""
    left = g.full
    comps = []
    while left:
        s = (left & -left).bit_length() - 1
        c = reach_mask(g.adj, s, g.full)
        comps.append(c)
        left &= ~c
    return comps


# ---------------------------------------------------------------- JSON

def parse_graph(text) -> ColoredGraph:
    """Parse the graph JSON schema ``{"n", "edges", "colors"}`` (str or already-decoded dict)."""
    if isinstance(text, (str, bytes)):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MalformedDocument(f"invalid JSON: {exc}") from None
    else:
        doc = text
    if not isinstance(doc, dict):
        raise MalformedDocument("graph document must be an object")
    n = doc.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise MalformedDocument("'n' must be a non-negative integer")
    edges = doc.get("edges", [])
    if not isinstance(edges, list):
        raise MalformedDocument("'edges' must be a list")
    pairs = []
    for e in edges:
        if (not isinstance(e, list) or len(e) != 2
                or not all(isinstance(x, int) and not isinstance(x, bool) for x in e)):
            raise MalformedDocument(f"bad edge entry {e!r}")
        pairs.append((e[0], e[1]))
    colors = doc.get("colors", {})
    if not isinstance(colors, dict):
        raise MalformedDocument("'colors' must be an object")
    for name, vs in colors.items():
        if not isinstance(vs, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in vs):
            raise MalformedDocument(f"color {name!r} must be a list of integers")
    names = doc.get("names")
    if names is not None and (not isinstance(names, list) or len(names) != n):
        raise MalformedDocument("'names' must list one name per vertex")
    return ColoredGraph.from_edges(n, pairs, colors, names)


def load_graph(path) -> ColoredGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


# ---------------------------------------------------------------- generators

FIGURE1_NAMES = ("a1m", "a2m", "a1p", "a2p", "w1", "w2", "w3", "w4")
FIGURE1_EDGES = [
    ("a1p", "w1"), ("a1p", "w2"), ("a1p", "w3"),
    ("a1m", "w2"), ("a2m", "w2"), ("a2m", "w3"), ("a2m", "w4"),
    ("a1p", "a1m"), ("a1p", "a2m"), ("a2p", "a2m"),
]


def _need(params, key, lo=None):
    if key not in params:
        raise BadParameter(f"missing parameter {key!r}")
    val = params[key]
    if lo is not None and (not isinstance(val, int) or val < lo):
        raise BadParameter(f"{key} must be an integer >= {lo}")
    return val


def _cycle_edges(n, offset=0):
    return [(offset + i, offset + (i + 1) % n) for i in range(n)]


def generate(family: str, **params) -> ColoredGraph:
    """Build a graph from a named family.

    Families: ``path(n)``, ``cycle(n)``, ``complement_of_cycle(n)``,
    ``complement_of_two_cycles(n, m)``, ``biclique(s, t)``, ``complete(n)``,
    ``edgeless(n)``, ``random(n, p, seed)`` and ``figure1``.
    """
    if family == "path":
        n = _need(params, "n", 0)
        return ColoredGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
    if family == "cycle":
        n = _need(params, "n", 3)
        return ColoredGraph.from_edges(n, _cycle_edges(n))
    if family == "complement_of_cycle":
        n = _need(params, "n", 3)
        return ColoredGraph.from_edges(n, _cycle_edges(n)).complement()
    if family == "complement_of_two_cycles":
        n = _need(params, "n", 3)
        m = params.get("m", n)
        if not isinstance(m, int) or m < 3:
            raise BadParameter("m must be an integer >= 3")
        g = ColoredGraph.from_edges(n + m, _cycle_edges(n) + _cycle_edges(m, offset=n))
        return g.complement()
    if family == "biclique":
        s = _need(params, "s", 0)
        t = params.get("t", s)
        if not isinstance(t, int) or t < 0:
            raise BadParameter("t must be a non-negative integer")
        return ColoredGraph.from_edges(s + t, [(i, s + j) for i in range(s) for j in range(t)])
    if family == "complete":
        n = _need(params, "n", 0)
        return ColoredGraph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])
    if family == "edgeless":
        n = _need(params, "n", 0)
        return ColoredGraph.from_edges(n, [])
    if family == "random":
        n = _need(params, "n", 0)
        p = _need(params, "p")
        seed = _need(params, "seed")
        if not isinstance(p, (int, float)) or not 0.0 <= p <= 1.0:
            raise BadParameter("p must lie in [0, 1]")
        if not isinstance(seed, int):
            raise BadParameter("seed must be an integer")
        return random_graph(n, p, seed)
    if family == "figure1":
        idx = {name: i for i, name in enumerate(FIGURE1_NAMES)}
        edges = [(idx[a], idx[b]) for a, b in FIGURE1_EDGES]
        colors = {"Aplus": [idx["a1p"], idx["a2p"]], "Aminus": [idx["a1m"], idx["a2m"]]}
        return ColoredGraph.from_edges(8, edges, colors, FIGURE1_NAMES)
    raise UnknownFamily(f"unknown graph family {family!r}")


def random_graph(n: int, p: float, seed: int) -> ColoredGraph:
    """G(n, p): pairs u<v visited in lexicographic order, one SplitMix64 draw each."""
    rng = SplitMix64(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return ColoredGraph.from_edges(n, edges)
