"""Atomic types, pattern flips, S-operations and the representative digraph H_a."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

from .bitset import SetLike, as_mask, bits_of, full_mask, popcount
from .errors import AsymmetricSpecUsedAsSymmetric, BadParameter
from .graph import ColoredGraph, Digraph
from .rank import gf2_rank


@dataclass(frozen=True)
class AtomicType:
    """Equality/adjacency profile of a vertex against a parameter tuple, plus its colors.

    Bit ``i`` of ``eq`` is set iff the vertex equals ``params[i]``; bit ``i`` of
    ``adj`` iff it is adjacent to ``params[i]``.  Relations among the
    parameters themselves are shared by every vertex and are not stored.
    """

    k: int
    eq: int
    adj: int
    colors: tuple = ()

    def eq_str(self) -> str:
        return "".join("1" if (self.eq >> i) & 1 else "0" for i in range(self.k))

    def adj_str(self) -> str:
        return "".join("1" if (self.adj >> i) & 1 else "0" for i in range(self.k))


def atomic_type(g: ColoredGraph, v: int, params: Sequence[int]) -> AtomicType:
    eq = adj = 0
    nb = g.adj[v]
    for i, a in enumerate(params):
        if a == v:
            eq |= 1 << i
        elif (nb >> a) & 1:
            adj |= 1 << i
    return AtomicType(len(params), eq, adj, g.colors_of(v))


def type_classes(g: ColoredGraph, params: Sequence[int]) -> tuple[list[AtomicType], list[int], list[int]]:
    """Realized types in order of first occurrence, their vertex masks, and the class of each vertex."""
    index: dict[AtomicType, int] = {}
    types: list[AtomicType] = []
    masks: list[int] = []
    cls = [0] * g.n
    for v in range(g.n):
        t = atomic_type(g, v, params)
        i = index.get(t)
        if i is None:
            i = index[t] = len(types)
            types.append(t)
            masks.append(0)
        masks[i] |= 1 << v
        cls[v] = i
    return types, masks, cls


@dataclass(frozen=True)
class Pattern:
    """Wildcard pattern over atomic types: ``eq``/``adj`` strings in {0,1,*}^k plus color literals."""

    eq: str
    adj: str
    colors: tuple = ()   # ((True, "A"), (False, "B")) for +A, -B

    @classmethod
    def wildcard(cls, k: int) -> "Pattern":
        return cls("*" * k, "*" * k)

    def matches(self, t: AtomicType) -> bool:
        for i, ch in enumerate(self.eq):
            if ch != "*" and ((t.eq >> i) & 1) != (ch == "1"):
                return False
        for i, ch in enumerate(self.adj):
            if ch != "*" and ((t.adj >> i) & 1) != (ch == "1"):
                return False
        for positive, name in self.colors:
            if (name in t.colors) != positive:
                return False
        return True

    def to_text(self) -> str:
        parts = [f"eq={self.eq}", f"adj={self.adj}"]
        if self.colors:
            parts.append("color=" + ",".join(("+" if p else "-") + c for p, c in self.colors))
        return "(" + ", ".join(parts) + ")"


@dataclass(frozen=True)
class FlipSpec:
    """A relation A on atomic types, given as a list of ordered pattern pairs.

    An ordered type pair is in A iff some listed pair matches it; for a
    symmetric spec the swap of every pair is included as well.
    """

    name: str
    k: int
    pairs: tuple = ()
    symmetric: bool = False

    def __post_init__(self):
        for left, right in self.pairs:
            for p in (left, right):
                if len(p.eq) != self.k or len(p.adj) != self.k:
                    raise BadParameter(f"flip {self.name}: pattern length differs from k={self.k}")
                if set(p.eq + p.adj) - set("01*"):
                    raise BadParameter(f"flip {self.name}: pattern characters must be 0, 1 or *")

    def relates(self, tu: AtomicType, tv: AtomicType) -> bool:
        for left, right in self.pairs:
            if left.matches(tu) and right.matches(tv):
                return True
            if self.symmetric and left.matches(tv) and right.matches(tu):
                return True
        return False

    def to_text(self) -> str:
        head = f"flip {self.name} k={self.k}" + (" symmetric" if self.symmetric else "")
        body = " ".join(f"{l.to_text()} ~ {r.to_text()};" for l, r in self.pairs)
        return head + " { " + body + (" }" if body else "}")


def identity_spec(k: int = 0, name: str = "Id") -> FlipSpec:
    return FlipSpec(name, k, (), True)


def complement_spec(k: int = 0, name: str = "Comp") -> FlipSpec:
    """Relates every pair of types, so the flip is the complement graph."""
    w = Pattern.wildcard(k)
    return FlipSpec(name, k, ((w, w),), True)


def flip_table(g: ColoredGraph, spec: FlipSpec, params: Sequence[int]):
    """Per-class flip masks: ``flip[i]`` is the union of classes ``j`` with (type_i, type_j) in A."""
    types, masks, cls = type_classes(g, params)
    m = len(types)
    rel = [[spec.relates(types[i], types[j]) for j in range(m)] for i in range(m)]
    flip = []
    for i in range(m):
        f = 0
        for j in range(m):
            if rel[i][j]:
                f |= masks[j]
        flip.append(f)
    return types, masks, cls, rel, flip


def apply_flip(g: ColoredGraph, spec: FlipSpec, params: Sequence[int],
               require_symmetric: bool = False) -> Digraph:
    """The flip of ``g`` by ``spec`` with parameters ``params``.

    For distinct u, v the arc u->v is present iff ``E(u,v) xor (atp(u), atp(v)) in A``.
    With ``require_symmetric`` the relation realized on this graph must be
    closed under swapping, else :class:`AsymmetricSpecUsedAsSymmetric`.
    """
    params = tuple(params)
    if len(params) != spec.k:
        raise BadParameter(f"flip {spec.name} expects {spec.k} parameters, got {len(params)}")
    for a in params:
        if not 0 <= a < g.n:
            raise BadParameter(f"parameter {a} is not a vertex")
    types, masks, cls, rel, flip = flip_table(g, spec, params)
    if require_symmetric and not spec.symmetric:
        m = len(types)
        for i in range(m):
            for j in range(i + 1, m):
                if rel[i][j] != rel[j][i]:
                    raise AsymmetricSpecUsedAsSymmetric(
                        f"flip {spec.name} relates realized types {i}->{j} but not {j}->{i}")
    out = tuple((g.adj[u] ^ flip[cls[u]]) & ~(1 << u) for u in range(g.n))
    return Digraph(g.n, out)


# ---------------------------------------------------------------- S-operations

def s_operation_separator(g: ColoredGraph, s: SetLike) -> ColoredGraph:
    """Isolate the vertices of ``s``; for the i-th of them (ascending) add ``Nbr_i`` and ``Pt_i``."""
    sm = as_mask(s)
    adj = tuple(0 if (sm >> v) & 1 else a & ~sm for v, a in enumerate(g.adj))
    colors = dict(g.colors)
    for i, v in enumerate(bits_of(sm)):
        colors[f"Nbr_{i}"] = g.adj[v]
        colors[f"Pt_{i}"] = 1 << v
    return ColoredGraph(g.n, adj, colors, g.names)


def s_operation_flip(g: ColoredGraph, s: SetLike, spec: Optional[FlipSpec] = None) -> ColoredGraph:
    """Symmetric flip with parameters ``s`` (ascending order) plus one color ``T<i>`` per realized type.

    Types are numbered by their first vertex.  Without a spec the identity
    flip is used.
    """
    params = tuple(bits_of(as_mask(s)))
    if spec is None:
        spec = identity_spec(len(params))
    h = apply_flip(g, spec, params, require_symmetric=True)
    _, masks, _ = type_classes(g, params)
    colors = dict(g.colors)
    for i, m in enumerate(masks):
        colors[f"T{i}"] = m
    return ColoredGraph(g.n, h.out, colors, g.names)


# ---------------------------------------------------------------- H_a

@dataclass(frozen=True)
class RepAssignment:
    """phi_plus[v]: earliest p in a_plus with N(v) & a_minus == N(p) & a_minus (None if absent);
    phi_minus symmetrically."""

    phi_plus: tuple
    phi_minus: tuple
    a_plus: int
    a_minus: int


class HDigraph(NamedTuple):
    h: Digraph
    reps: RepAssignment
    admissible: bool


def rep_assignment(g: ColoredGraph, a_plus: int, a_minus: int) -> RepAssignment:
    plus = list(bits_of(a_plus))
    minus = list(bits_of(a_minus))
    sig_plus = {}
    for p in plus:
        sig_plus.setdefault(g.adj[p] & a_minus, p)
    sig_minus = {}
    for q in minus:
        sig_minus.setdefault(g.adj[q] & a_plus, q)
    phi_p = tuple(sig_plus.get(g.adj[v] & a_minus) for v in range(g.n))
    phi_m = tuple(sig_minus.get(g.adj[v] & a_plus) for v in range(g.n))
    return RepAssignment(phi_p, phi_m, a_plus, a_minus)


def is_admissible(g: ColoredGraph, a_plus: int, a_minus: int, r: int) -> bool:
    """Halves disjoint and a_plus has rank at most r inside G[a_plus | a_minus]."""
    if a_plus & a_minus:
        return False
    return gf2_rank([g.adj[u] & a_minus for u in bits_of(a_plus)]) <= r


def build_h_digraph(g: ColoredGraph, a_plus: SetLike, a_minus: SetLike, r: int) -> HDigraph:
    """Digraph whose suffixes are the sets with representatives inside ``a_plus``/``a_minus``.

    Admissible case, arc u->v iff one of
      (i)   u in a_minus or v in a_plus;
      (ii)  phi_plus(u) undefined and v in a_minus;
      (iii) u in a_plus and phi_minus(v) undefined;
      (iv)  E(u,v) xor [phi_plus(u), phi_minus(v) defined and adjacent].
    Inadmissible case, arc u->v iff u or v is a parameter or uv is an edge.
    Only the sets matter: tuple order and repetitions do not change H.
    """
    ap = as_mask(a_plus)
    am = as_mask(a_minus)
    if popcount(ap) > 2 ** r or popcount(am) > 2 ** r:
        raise BadParameter(f"each half may hold at most 2^r = {2 ** r} vertices")
    n = g.n
    full = full_mask(n)
    reps = rep_assignment(g, ap, am)
    admissible = is_admissible(g, ap, am, r)
    a = ap | am
    if not admissible:
        out = tuple(((full if (a >> u) & 1 else g.adj[u] | a)) & ~(1 << u) for u in range(n))
        return HDigraph(Digraph(n, out), reps, False)

    no_minus = 0
    by_minus: dict[int, int] = {}
    for v in range(n):
        q = reps.phi_minus[v]
        if q is None:
            no_minus |= 1 << v
        else:
            by_minus[q] = by_minus.get(q, 0) | (1 << v)
    out = []
    for u in range(n):
        bit = 1 << u
        arcs = full if am & bit else ap
        p = reps.phi_plus[u]
        if p is None:
            arcs |= am
            defined_twin = 0
        else:
            defined_twin = 0
            for q in bits_of(g.adj[p] & am):
                defined_twin |= by_minus.get(q, 0)
        if ap & bit:
            arcs |= no_minus
        arcs |= g.adj[u] ^ defined_twin
        out.append(arcs & ~bit)
    return HDigraph(Digraph(n, tuple(out)), reps, True)


def h_params(a_plus: SetLike, a_minus: SetLike) -> tuple:
    """Canonical parameter tuple: a_plus ascending, then a_minus ascending."""
    return tuple(bits_of(as_mask(a_plus))) + tuple(bits_of(as_mask(a_minus)))


def flip_law_relation(g: ColoredGraph, h: Digraph, params: Sequence[int]):
    """Tabulate ``arc xor edge`` per ordered pair of realized types.

    Returns ``(types, table)`` where ``table[(i, j)]`` is the common value, or
    raises ``ValueError`` if two vertex pairs with the same types disagree,
    i.e. ``h`` is not a flip of ``g`` with these parameters.
    """
    types, _, cls = type_classes(g, params)
    table: dict[tuple[int, int], bool] = {}
    for u in range(g.n):
        for v in range(g.n):
            if u == v:
                continue
            lam = h.has_arc(u, v) != g.has_edge(u, v)
            key = (cls[u], cls[v])
            old = table.setdefault(key, lam)
            if old != lam:
                raise ValueError(f"flip law fails on type pair {key} at ({u}, {v})")
    return types, table


def ground_spec(g: ColoredGraph, h: Digraph, params: Sequence[int], name: str = "H") -> FlipSpec:
    """A FlipSpec with fully ground patterns whose flip of ``g`` with ``params`` is exactly ``h``."""
    types, table = flip_law_relation(g, h, params)
    all_colors = sorted(g.colors)

    def pat(t: AtomicType) -> Pattern:
        return Pattern(t.eq_str(), t.adj_str(), tuple((c in t.colors, c) for c in all_colors))

    pairs = tuple((pat(types[i]), pat(types[j])) for (i, j), lam in sorted(table.items()) if lam)
    return FlipSpec(name, len(params), pairs, False)
