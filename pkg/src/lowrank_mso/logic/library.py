"""Ready-made sentences used by the tests, the CLI and the example scripts."""

from __future__ import annotations

from ..flips import complement_spec
from .ast import FormulaDocument
from .parser import parse_formula

COMPLEMENT_FLIP = complement_spec(0, "Comp").to_text()

# Every two vertices are connected in the complement graph.
CO_CONNECTIVITY = COMPLEMENT_FLIP + "\nforall s . forall t . flipconn<Comp>(s,t;)\n"

# Some set of cutrank at most 1 holds every A-vertex and no C-vertex.
RANK1_A_NOT_C = ("existsSet X : 1 . (forall x . (A(x) -> x in X)) /\\ "
                 "(forall y . (C(y) -> ~(y in X)))\n")


def co_connectivity() -> FormulaDocument:
    return parse_formula(CO_CONNECTIVITY)


def rank1_a_not_c() -> FormulaDocument:
    return parse_formula(RANK1_A_NOT_C)
