"""Model checking for the formula language and the compilations between its predicates."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

from .bitset import bits_of
from .errors import BadParameter, SymmetryRequired, UnboundVariable
from .flips import FlipSpec, Pattern, apply_flip, type_classes
from .graph import ColoredGraph, reach_mask
from .logic.ast import (And, Color, Conn, Edge, Eq, FlipConn, FlipReach, FormulaDocument, Implies,
                        In, Not, Or, SetQuant, VertexQuant)
from .lowrank import (DEFAULT_SUBSET_CAP, brute_lowrank, default_suffix_cap, lowrank_via_suffixes)
from .rank import cutrank, representatives


@dataclass(frozen=True)
class EvalConfig:
    lowrank_strategy: str = "brute"     # "brute" | "suffix"
    subset_cap: int = DEFAULT_SUBSET_CAP
    suffix_cap: Optional[int] = None    # None: LRMSO_CAP or the module default
    trace: bool = False
    workers: int = 1

    def __post_init__(self):
        if self.lowrank_strategy not in ("brute", "suffix"):
            raise BadParameter(f"unknown low-rank strategy {self.lowrank_strategy!r}")
        if self.subset_cap <= 0 or (self.suffix_cap is not None and self.suffix_cap <= 0):
            raise BadParameter("caps must be positive")


@dataclass
class Assignment:
    vertices: dict = field(default_factory=dict)
    sets: dict = field(default_factory=dict)


class Evaluator:
    """Evaluates formulas of one document on one graph, memoizing flips and low-rank families."""

    def __init__(self, g: ColoredGraph, doc: FormulaDocument, cfg: Optional[EvalConfig] = None,
                 lowrank_cache: Optional[dict] = None):
        """``lowrank_cache`` may be shared by evaluators over the same graph and strategy."""
        self.g = g
        self.doc = doc
        self.cfg = cfg or EvalConfig()
        self.specs = {s.name: s for s in doc.flipspecs}
        self._flips: dict = {}
        self._reach: dict = {}
        self._lowrank: dict = {} if lowrank_cache is None else lowrank_cache
        self.trace: list = []

    # -- cached building blocks
    def flip(self, name: str, params: tuple):
        key = (name, params)
        h = self._flips.get(key)
        if h is None:
            h = self._flips.setdefault(key, apply_flip(self.g, self.specs[name], params))
        return h

    def reach(self, name: str, params: tuple, s: int) -> int:
        key = (name, params, s)
        r = self._reach.get(key)
        if r is None:
            r = self._reach.setdefault(key, self.flip(name, params).reachable_from(s))
        return r

    def lowrank_sets(self, r: int) -> list:
        fam = self._lowrank.get(r)
        if fam is None:
            cfg = self.cfg
            if cfg.lowrank_strategy == "brute":
                fam = brute_lowrank(self.g, r, cfg.subset_cap)
            else:
                cap = cfg.suffix_cap if cfg.suffix_cap is not None else default_suffix_cap()
                fam = lowrank_via_suffixes(self.g, r, cap, cfg.workers, max_n=cfg.subset_cap)
            fam = self._lowrank.setdefault(r, fam)
        return fam.sets

    # -- evaluation
    def run(self, asg: Optional[Assignment] = None) -> bool:
        asg = asg or Assignment()
        for v in self.doc.free_vertices:
            if v not in asg.vertices:
                raise UnboundVariable(f"free vertex variable {v!r} has no value")
        for v in self.doc.free_sets:
            if v not in asg.sets:
                raise UnboundVariable(f"free set variable {v!r} has no value")
        return self.eval(self.doc.formula, dict(asg.vertices), dict(asg.sets))

    def eval(self, f, vs: dict, ss: dict) -> bool:
        g = self.g
        if isinstance(f, VertexQuant):
            want = f.quant == "exists"
            for v in range(g.n):
                vs2 = {**vs, f.var: v}
                if self.eval(f.body, vs2, ss) == want:
                    self._log(f, v)
                    return want
            return not want
        if isinstance(f, SetQuant):
            want = f.quant == "exists"
            for x in self.lowrank_sets(f.rank):
                if self.eval(f.body, vs, {**ss, f.var: x}) == want:
                    self._log(f, list(bits_of(x)))
                    return want
            return not want
        if isinstance(f, Not):
            return not self.eval(f.body, vs, ss)
        if isinstance(f, And):
            return self.eval(f.left, vs, ss) and self.eval(f.right, vs, ss)
        if isinstance(f, Or):
            return self.eval(f.left, vs, ss) or self.eval(f.right, vs, ss)
        if isinstance(f, Implies):
            return (not self.eval(f.left, vs, ss)) or self.eval(f.right, vs, ss)
        if isinstance(f, Edge):
            return g.has_edge(vs[f.x], vs[f.y])
        if isinstance(f, Eq):
            return vs[f.x] == vs[f.y]
        if isinstance(f, Color):
            return (g.colors.get(f.name, 0) >> vs[f.x]) & 1 == 1
        if isinstance(f, In):
            return (ss[f.setvar] >> vs[f.x]) & 1 == 1
        if isinstance(f, Conn):
            return conn(g, vs[f.s], vs[f.t], [vs[a] for a in f.avoid])
        if isinstance(f, (FlipConn, FlipReach)):
            params = tuple(vs[a] for a in f.params)
            t = vs[f.t]
            return (self.reach(f.spec, params, vs[f.s]) >> t) & 1 == 1
        raise TypeError(f"not a formula node: {f!r}")

    def _log(self, f, witness):
        if self.cfg.trace:
            self.trace.append({"quant": f.quant, "var": f.var, "decided_by": witness,
                               "pos": list(f.pos) if f.pos else None})

    def trace_lines(self) -> str:
        return "".join(json.dumps(t) + "\n" for t in self.trace)


def evaluate(g: ColoredGraph, doc: FormulaDocument, asg: Optional[Assignment] = None,
             cfg: Optional[EvalConfig] = None) -> bool:
    return Evaluator(g, doc, cfg).run(asg)


def conn(g: ColoredGraph, s: int, t: int, avoid: Sequence[int]) -> bool:
    """Path from s to t in g minus ``avoid``; false whenever s or t is avoided."""
    am = 0
    for a in avoid:
        am |= 1 << a
    if (am >> s) & 1 or (am >> t) & 1:
        return False
    return (reach_mask(g.adj, s, g.full & ~am) >> t) & 1 == 1


def flipreach(g: ColoredGraph, spec: FlipSpec, params: Sequence[int], s: int, t: int) -> bool:
    return (apply_flip(g, spec, params).reachable_from(s) >> t) & 1 == 1


def flipconn(g: ColoredGraph, spec: FlipSpec, params: Sequence[int], s: int, t: int) -> bool:
    if not spec.symmetric:
        raise SymmetryRequired(f"flipconn needs a symmetric flip, {spec.name!r} is not")
    return flipreach(g, spec, params, s, t)


# ---------------------------------------------------------------- compilations

def compile_conn_to_flipconn(k: int, name: Optional[str] = None) -> FlipSpec:
    """Symmetric flip deleting exactly the edges at the k parameters.

    For each i the pair (v is a_i) ~ (v adjacent to a_i) is flipped; such a
    pair is always an edge, so the flip only removes edges.
    """
    if k < 0:
        raise BadParameter("k must be nonnegative")
    pairs = []
    for i in range(k):
        one = "".join("1" if j == i else "*" for j in range(k))
        pairs.append((Pattern(one, "*" * k), Pattern("*" * k, one)))
    return FlipSpec(name or f"Conn{k}", k, tuple(pairs), True)


def compile_flipconn_to_flipreach(spec: FlipSpec) -> FlipSpec:
    """A symmetric spec read as a flip-reachability spec (same relation)."""
    if not spec.symmetric:
        raise SymmetryRequired(f"flip {spec.name!r} is not symmetric")
    return spec


def _map_formula(f, atom_fn):
    if isinstance(f, (VertexQuant, SetQuant, Not)):
        return replace(f, body=_map_formula(f.body, atom_fn))
    if isinstance(f, (And, Or, Implies)):
        return replace(f, left=_map_formula(f.left, atom_fn), right=_map_formula(f.right, atom_fn))
    return atom_fn(f)


def compile_document_conn_to_flipconn(doc: FormulaDocument) -> FormulaDocument:
    """Replace every conn(s,t;a) with (s, t outside a) /\\ flipconn<Conn_k>(s,t;a)."""
    taken = {s.name for s in doc.flipspecs}
    used: dict = {}

    def spec_name(k):
        if k not in used:
            base = name = f"Conn{k}"
            i = 0
            while name in taken:
                i += 1
                name = f"{base}_{i}"
            taken.add(name)
            used[k] = compile_conn_to_flipconn(k, name)
        return used[k].name

    def atom(f):
        if not isinstance(f, Conn):
            return f
        out = FlipConn(spec_name(len(f.avoid)), f.s, f.t, f.avoid, f.pos)
        for a in reversed(f.avoid):
            out = And(And(Not(Eq(f.s, a)), Not(Eq(f.t, a))), out)
        return out

    body = _map_formula(doc.formula, atom)
    specs = doc.flipspecs + tuple(used[k] for k in sorted(used))
    return replace(doc, flipspecs=specs, formula=body, spec_pos=())


def compile_document_flipconn_to_flipreach(doc: FormulaDocument) -> FormulaDocument:
    specs = {s.name: s for s in doc.flipspecs}

    def atom(f):
        if isinstance(f, FlipConn):
            compile_flipconn_to_flipreach(specs[f.spec])
            return FlipReach(f.spec, f.s, f.t, f.params, f.pos)
        return f

    return replace(doc, formula=_map_formula(doc.formula, atom))


# ---------------------------------------------------------------- reachability vs suffixes

@dataclass(frozen=True)
class FreachWitness:
    reachable: bool
    witness: Optional[int]      # reachable set of s when t is not reachable
    rank: Optional[int]
    distinct_rows: Optional[int]
    type_count: int
    consistent: bool


def check_freach_suffix_duality(g: ColoredGraph, spec: FlipSpec, a: Sequence[int], s: int, t: int,
                                detail: bool = False):
    """Non-reachability of t from s in the flip is witnessed by a suffix holding s but not t.

    The witness is the reachable set X of s.  Its cut matrix in ``g`` has at
    most as many distinct rows as there are realized atomic types over ``a``,
    which bounds its cutrank.  Returns whether both checks agree.
    """
    h = apply_flip(g, spec, a)
    x = h.reachable_from(s)
    reachable = (x >> t) & 1 == 1
    types, _, _ = type_classes(g, a)
    if reachable:
        # every suffix holding s holds its reachable set, so no witness exists
        res = FreachWitness(True, None, None, None, len(types), True)
    else:
        rank = cutrank(g, x)
        rows = bin(representatives(g, x)).count("1")
        ok = h.is_suffix(x) and (x >> s) & 1 == 1 and rank <= rows <= len(types)
        res = FreachWitness(False, x, rank, rows, len(types), ok)
    return res if detail else res.consistent
