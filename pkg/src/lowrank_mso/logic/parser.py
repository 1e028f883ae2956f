"""Recursive-descent parser and static checks for formula documents.

Grammar::

    doc     := {flipdecl} formula
    formula := quant | implic
    quant   := ("exists"|"forall") IDENT "." formula
             | ("existsSet"|"forallSet") IDENT ":" NAT "." formula
    implic  := disj ["->" implic]
    disj    := conj {"\\/" conj}
    conj    := neg {"/\\" neg}
    neg     := "~" neg | quant | atom
    atom    := "(" formula ")" | "E(" v "," v ")" | v "=" v | IDENT "(" v ")"
             | v "in" IDENT | "conn(" v "," v ";" [vlist] ")"
             | ("flipconn"|"flipreach") "<" IDENT ">" "(" v "," v ";" [vlist] ")"
    flipdecl := "flip" IDENT "k" "=" NAT ["symmetric"] "{" {pair ";"} "}"
    pair    := pattern "~" pattern
    pattern := "(" [field {"," field}] ")"
    field   := "eq=" [01*]* | "adj=" [01*]* | "color=" ("+"|"-") IDENT {"," ("+"|"-") IDENT}

A quantifier may also open a negand (``A(x) /\\ exists y . E(x,y)``); its
scope still extends as far right as possible.  An omitted ``eq`` or ``adj``
field is all-wildcard.  ``#`` starts a comment running to the end of the line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import (ArityMismatch, BadParameter, DuplicateFlipSpec, FormulaError,
                      FormulaSyntaxError, SymmetryRequired, UnboundVariable, UnknownFlipSpec)
from ..flips import FlipSpec, Pattern
from .ast import (And, Color, Conn, Edge, Eq, FlipConn, FlipReach, FormulaDocument, Implies, In,
                  Not, Or, SetQuant, VertexQuant, children, vertex_uses)

KEYWORDS = {"exists", "forall", "existsSet", "forallSet", "in", "conn", "flipconn",
            "flipreach", "flip"}
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
_NAT = re.compile(r"[0-9]+")
_PAT = re.compile(r"[01*]*")


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.i = 0

    def pos(self, i=None) -> tuple:
        i = self.i if i is None else i
        line = self.text.count("\n", 0, i) + 1
        col = i - (self.text.rfind("\n", 0, i) + 1) + 1
        return line, col

    def fail(self, msg: str, i=None):
        line, col = self.pos(i)
        raise FormulaSyntaxError(msg, line, col)

    def skip(self):
        t = self.text
        while self.i < len(t):
            ch = t[self.i]
            if ch.isspace():
                self.i += 1
            elif ch == "#":
                nl = t.find("\n", self.i)
                self.i = len(t) if nl < 0 else nl + 1
            else:
                break

    def at(self, lit: str) -> bool:
        self.skip()
        return self.text.startswith(lit, self.i)

    def eat(self, lit: str) -> bool:
        if self.at(lit):
            self.i += len(lit)
            return True
        return False

    def expect(self, lit: str):
        if not self.eat(lit):
            found = self.text[self.i:self.i + 10] or "end of input"
            self.fail(f"expected {lit!r}, found {found!r}")

    def peek_word(self):
        self.skip()
        m = _IDENT.match(self.text, self.i)
        return m.group(0) if m else None

    def word(self, what="identifier") -> str:
        self.skip()
        m = _IDENT.match(self.text, self.i)
        if not m:
            self.fail(f"expected {what}")
        self.i = m.end()
        return m.group(0)

    def ident(self, what="identifier") -> str:
        start = self.i
        w = self.word(what)
        if w in KEYWORDS:
            self.fail(f"keyword {w!r} cannot be used as {what}", start)
        return w

    def nat(self) -> int:
        self.skip()
        m = _NAT.match(self.text, self.i)
        if not m:
            self.fail("expected a natural number")
        self.i = m.end()
        return int(m.group(0))

    def followed_by_paren(self, word: str) -> bool:
        j = self.i + len(word)
        while j < len(self.text) and self.text[j].isspace():
            j += 1
        return self.text.startswith("(", j)


class _Parser:
    def __init__(self, text: str):
        self.s = _Scanner(text)

    # -- document
    def document(self, free_vertices, free_sets, extra_specs):
        specs = list(extra_specs)
        spec_pos = [None] * len(specs)
        while self.s.peek_word() == "flip" and not self.s.followed_by_paren("flip"):
            self.s.skip()
            spec_pos.append(self.s.pos())
            specs.append(self.flipdecl())
        f = self.formula()
        self.s.skip()
        if self.s.i != len(self.s.text):
            self.s.fail(f"unexpected {self.s.text[self.s.i:self.s.i + 10]!r}")
        return FormulaDocument(tuple(specs), f, tuple(free_vertices), tuple(free_sets), tuple(spec_pos))

    def flipdecl(self) -> FlipSpec:
        s = self.s
        s.word()
        start = s.i
        name = s.ident("flip name")
        if s.word("'k'") != "k":
            s.fail("expected 'k=' after flip name")
        s.expect("=")
        k = s.nat()
        symmetric = False
        if s.peek_word() == "symmetric":
            s.word()
            symmetric = True
        s.expect("{")
        pairs = []
        while not s.eat("}"):
            left = self.pattern(k)
            s.expect("~")
            right = self.pattern(k)
            pairs.append((left, right))
            if not s.eat(";") and not s.at("}"):
                s.fail("expected ';' or '}'")
        try:
            return FlipSpec(name, k, tuple(pairs), symmetric)
        except BadParameter as e:
            line, col = s.pos(start)
            raise ArityMismatch(str(e), line, col) from None

    def pattern(self, k: int) -> Pattern:
        s = self.s
        s.expect("(")
        eq = adj = None
        colors = []
        first = True
        while not s.eat(")"):
            if not first:
                s.expect(",")
            first = False
            key = s.word("'eq', 'adj' or 'color'")
            s.expect("=")
            if key in ("eq", "adj"):
                s.skip()
                m = _PAT.match(s.text, s.i)
                s.i = m.end()
                if key == "eq":
                    eq = m.group(0)
                else:
                    adj = m.group(0)
            elif key == "color":
                while True:
                    s.skip()
                    sign = s.text[s.i:s.i + 1]
                    if sign not in ("+", "-"):
                        s.fail("color literal must start with '+' or '-'")
                    s.i += 1
                    colors.append((sign == "+", s.word("color name")))
                    j = s.i
                    if s.eat(","):
                        s.skip()
                        if s.text[s.i:s.i + 1] in ("+", "-"):
                            continue
                        s.i = j
                    break
            else:
                s.fail(f"unknown pattern field {key!r}")
        return Pattern("*" * k if eq is None else eq, "*" * k if adj is None else adj, tuple(colors))

    # -- formulas
    def formula(self):
        w = self.s.peek_word()
        if w in ("exists", "forall", "existsSet", "forallSet"):
            return self.quant()
        return self.implic()

    def quant(self):
        s = self.s
        s.skip()
        pos = s.pos()
        q = s.word()
        var = s.ident("variable")
        if q in ("existsSet", "forallSet"):
            s.expect(":")
            r = s.nat()
            s.expect(".")
            return SetQuant("exists" if q == "existsSet" else "forall", var, r, self.formula(), pos)
        s.expect(".")
        return VertexQuant(q, var, self.formula(), pos)

    def implic(self):
        left = self.disj()
        self.s.skip()
        pos = self.s.pos()
        if self.s.eat("->"):
            return Implies(left, self.formula_tail(), pos)
        return left

    def formula_tail(self):
        # right operand of '->' may itself start with a quantifier
        w = self.s.peek_word()
        if w in ("exists", "forall", "existsSet", "forallSet"):
            return self.quant()
        return self.implic()

    def disj(self):
        left = self.conj()
        while True:
            self.s.skip()
            pos = self.s.pos()
            if not self.s.eat("\\/"):
                return left
            left = Or(left, self.conj(), pos)

    def conj(self):
        left = self.neg()
        while True:
            self.s.skip()
            pos = self.s.pos()
            if not self.s.eat("/\\"):
                return left
            left = And(left, self.neg(), pos)

    def neg(self):
        s = self.s
        s.skip()
        pos = s.pos()
        if s.eat("~"):
            return Not(self.neg(), pos)
        if s.peek_word() in ("exists", "forall", "existsSet", "forallSet"):
            return self.quant()
        return self.atom()

    def atom(self):
        s = self.s
        s.skip()
        pos = s.pos()
        if s.eat("("):
            f = self.formula()
            s.expect(")")
            return f
        w = s.peek_word()
        if w is None:
            s.fail("expected a formula")
        if w == "E" and s.followed_by_paren(w):
            s.word()
            s.expect("(")
            x = s.ident("variable")
            s.expect(",")
            y = s.ident("variable")
            s.expect(")")
            return Edge(x, y, pos)
        if w == "conn":
            s.word()
            s.expect("(")
            a, b, rest = self.args()
            return Conn(a, b, rest, pos)
        if w in ("flipconn", "flipreach"):
            s.word()
            s.expect("<")
            name = s.ident("flip name")
            s.expect(">")
            s.expect("(")
            a, b, rest = self.args()
            return (FlipConn if w == "flipconn" else FlipReach)(name, a, b, rest, pos)
        if w not in KEYWORDS and s.followed_by_paren(w):
            s.word()
            s.expect("(")
            x = s.ident("variable")
            s.expect(")")
            return Color(w, x, pos)
        x = s.ident("variable")
        if s.eat("="):
            return Eq(x, s.ident("variable"), pos)
        if s.peek_word() == "in":
            s.word()
            return In(x, s.ident("set variable"), pos)
        s.fail("expected '=', 'in' or an operator after variable")

    def args(self):
        s = self.s
        a = s.ident("variable")
        s.expect(",")
        b = s.ident("variable")
        s.expect(";")
        rest = []
        if not s.at(")"):
            rest.append(s.ident("variable"))
            while s.eat(","):
                rest.append(s.ident("variable"))
        s.expect(")")
        return a, b, tuple(rest)


@dataclass(frozen=True)
class Diagnostic:
    code: str
    message: str
    line: int | None = None
    col: int | None = None

    def to_error(self) -> FormulaError:
        cls = {c.code: c for c in (FormulaSyntaxError, UnknownFlipSpec, ArityMismatch,
                                   UnboundVariable, SymmetryRequired, DuplicateFlipSpec)}[self.code]
        return cls(self.message, self.line, self.col)

    def to_json(self) -> dict:
        return {"code": self.code, "message": self.message, "line": self.line, "col": self.col}


def validate(doc: FormulaDocument) -> list:
    """Static checks; returns diagnostics in source order (empty iff the document is well formed)."""
    out: list = []
    specs: dict = {}
    for i, sp in enumerate(doc.flipspecs):
        p = doc.spec_pos[i] if i < len(doc.spec_pos) else None
        if sp.name in specs:
            out.append(Diagnostic("DuplicateFlipSpec", f"flip {sp.name!r} declared twice", *(p or (None, None))))
        specs[sp.name] = sp

    def at(f):
        return f.pos or (None, None)

    def walk(f, scope: dict):
        if isinstance(f, VertexQuant):
            walk(f.body, {**scope, f.var: "vertex"})
            return
        if isinstance(f, SetQuant):
            walk(f.body, {**scope, f.var: "set"})
            return
        if isinstance(f, In) and scope.get(f.setvar) != "set":
            what = "is a vertex variable" if f.setvar in scope else "is not bound"
            out.append(Diagnostic("UnboundVariable", f"set variable {f.setvar!r} {what}", *at(f)))
        for v in vertex_uses(f):
            if scope.get(v) != "vertex":
                what = "is a set variable" if v in scope else "is not bound"
                out.append(Diagnostic("UnboundVariable", f"vertex variable {v!r} {what}", *at(f)))
        if isinstance(f, (FlipConn, FlipReach)):
            sp = specs.get(f.spec)
            if sp is None:
                out.append(Diagnostic("UnknownFlipSpec", f"no flip named {f.spec!r}", *at(f)))
            else:
                if len(f.params) != sp.k:
                    out.append(Diagnostic("ArityMismatch",
                                          f"flip {sp.name!r} takes {sp.k} parameters, got {len(f.params)}", *at(f)))
                if isinstance(f, FlipConn) and not sp.symmetric:
                    out.append(Diagnostic("SymmetryRequired", f"flipconn needs a symmetric flip, {sp.name!r} is not",
                                          *at(f)))
        for c in children(f):
            walk(c, scope)

    scope = {v: "vertex" for v in doc.free_vertices}
    scope.update({v: "set" for v in doc.free_sets})
    walk(doc.formula, scope)
    return out


def parse_document(text: str, free_vertices=(), free_sets=(), extra_specs=()) -> FormulaDocument:
    """Parse without static checks (syntax errors still raise)."""
    return _Parser(text).document(free_vertices, free_sets, extra_specs)


def parse_formula(text: str, free_vertices=(), free_sets=(), extra_specs=()) -> FormulaDocument:
    """Parse and validate; raises the first diagnostic as a :class:`FormulaError`."""
    doc = parse_document(text, free_vertices, free_sets, extra_specs)
    diags = validate(doc)
    if diags:
        raise diags[0].to_error()
    return doc
