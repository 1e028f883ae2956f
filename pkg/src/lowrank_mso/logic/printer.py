"""Pretty-printer; output re-parses to an equal AST."""

from __future__ import annotations

from .ast import (And, Color, Conn, Edge, Eq, FlipConn, FlipReach, FormulaDocument, Implies, In,
                  Not, Or, SetQuant, VertexQuant)

_ATOMS = (Edge, Eq, Color, In, Conn, FlipConn, FlipReach)


def _operand(f) -> str:
    text = to_text(f)
    return text if isinstance(f, _ATOMS + (Not,)) else f"({text})"


def to_text(f) -> str:
    if isinstance(f, VertexQuant):
        return f"{f.quant} {f.var} . {to_text(f.body)}"
    if isinstance(f, SetQuant):
        return f"{f.quant}Set {f.var} : {f.rank} . {to_text(f.body)}"
    if isinstance(f, Not):
        return "~" + _operand(f.body)
    if isinstance(f, And):
        return f"{_operand(f.left)} /\\ {_operand(f.right)}"
    if isinstance(f, Or):
        return f"{_operand(f.left)} \\/ {_operand(f.right)}"
    if isinstance(f, Implies):
        return f"{_operand(f.left)} -> {_operand(f.right)}"
    if isinstance(f, Edge):
        return f"E({f.x},{f.y})"
    if isinstance(f, Eq):
        return f"{f.x} = {f.y}"
    if isinstance(f, Color):
        return f"{f.name}({f.x})"
    if isinstance(f, In):
        return f"{f.x} in {f.setvar}"
    if isinstance(f, Conn):
        return f"conn({f.s},{f.t};{','.join(f.avoid)})"
    if isinstance(f, (FlipConn, FlipReach)):
        kw = "flipconn" if isinstance(f, FlipConn) else "flipreach"
        return f"{kw}<{f.spec}>({f.s},{f.t};{','.join(f.params)})"
    raise TypeError(f"not a formula node: {f!r}")


def document_to_text(doc: FormulaDocument) -> str:
    lines = [sp.to_text() for sp in doc.flipspecs]
    lines.append(to_text(doc.formula))
    return "\n".join(lines) + "\n"
