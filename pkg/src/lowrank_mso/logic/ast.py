"""Formula AST for separator logic, flip-connectivity/-reachability logic and low rank MSO."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

Pos = Optional[tuple]   # (line, col), 1-based


@dataclass(frozen=True)
class VertexQuant:
    quant: str          # "exists" | "forall"
    var: str
    body: "Formula"
    pos: Pos = field(default=None, compare=False)


@dataclass(frozen=True)
class SetQuant:
    """Set quantifier restricted to sets of cutrank at most ``rank``."""

    quant: str
    var: str
    rank: int
    body: "Formula"
    pos: Pos = field(default=None, compare=False)


@dataclass(frozen=True)
class Not:
    body: "Formula"
    pos: Pos = field(default=None, compare=False)


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"
    pos: Pos = field(default=None, compare=False)


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"
    pos: Pos = field(default=None, compare=False)


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"
    pos: Pos = field(default=None, compare=False)


@dataclass(frozen=True)
class Edge:
    x: str
    y: str
    pos: Pos = field(default=None, compare=False)


@dataclass(frozen=True)
class Eq:
    x: str
    y: str
    pos: Pos = field(default=None, compare=False)


@dataclass(frozen=True)
class Color:
    name: str
    x: str
    pos: Pos = field(default=None, compare=False)


@dataclass(frozen=True)
class In:
    x: str
    setvar: str
    pos: Pos = field(default=None, compare=False)


@dataclass(frozen=True)
class Conn:
    """Path from s to t avoiding ``avoid``."""

    s: str
    t: str
    avoid: tuple = ()
    pos: Pos = field(default=None, compare=False)


@dataclass(frozen=True)
class FlipConn:
    spec: str
    s: str
    t: str
    params: tuple = ()
    pos: Pos = field(default=None, compare=False)


@dataclass(frozen=True)
class FlipReach:
    spec: str
    s: str
    t: str
    params: tuple = ()
    pos: Pos = field(default=None, compare=False)


Formula = Union[VertexQuant, SetQuant, Not, And, Or, Implies, Edge, Eq, Color, In,
                Conn, FlipConn, FlipReach]


@dataclass(frozen=True)
class FormulaDocument:
    """Flip declarations, a formula, and the declared free variables."""

    flipspecs: tuple                     # FlipSpec, in declaration order
    formula: Formula
    free_vertices: tuple = ()
    free_sets: tuple = ()
    spec_pos: tuple = field(default=(), compare=False)

    def spec(self, name: str):
        for s in self.flipspecs:
            if s.name == name:
                return s
        return None

    @property
    def is_sentence(self) -> bool:
        return not self.free_vertices and not self.free_sets


def children(f: Formula) -> tuple:
    if isinstance(f, (VertexQuant, SetQuant, Not)):
        return (f.body,)
    if isinstance(f, (And, Or, Implies)):
        return (f.left, f.right)
    return ()


def vertex_uses(f: Formula) -> tuple:
    """Vertex variables read directly by an atom."""
    if isinstance(f, (Edge, Eq)):
        return (f.x, f.y)
    if isinstance(f, (Color, In)):
        return (f.x,)
    if isinstance(f, Conn):
        return (f.s, f.t, *f.avoid)
    if isinstance(f, (FlipConn, FlipReach)):
        return (f.s, f.t, *f.params)
    return ()
