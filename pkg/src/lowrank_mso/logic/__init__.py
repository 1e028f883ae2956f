"""Formula language: AST, parser, static checks and printer."""

from .ast import (And, Color, Conn, Edge, Eq, FlipConn, FlipReach, FormulaDocument, Implies, In,
                  Not, Or, SetQuant, VertexQuant)
from .parser import Diagnostic, parse_document, parse_formula, validate
from .printer import document_to_text, to_text

__all__ = [
    "And", "Color", "Conn", "Edge", "Eq", "FlipConn", "FlipReach", "FormulaDocument", "Implies",
    "In", "Not", "Or", "SetQuant", "VertexQuant", "Diagnostic", "parse_document", "parse_formula",
    "validate", "document_to_text", "to_text",
]
