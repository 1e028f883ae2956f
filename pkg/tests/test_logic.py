import pytest
from hypothesis import given, strategies as st

from lowrank_mso.errors import (ArityMismatch, FormulaSyntaxError, SymmetryRequired, UnboundVariable,
                                UnknownFlipSpec)
from lowrank_mso.flips import FlipSpec, Pattern
from lowrank_mso.logic import (And, Color, Conn, Edge, Eq, FlipConn, FlipReach, FormulaDocument, Implies, In,
                               Not, Or, SetQuant, VertexQuant, document_to_text, parse_document,
                               parse_formula, to_text, validate)
from lowrank_mso.logic.library import CO_CONNECTIVITY, RANK1_A_NOT_C, co_connectivity, rank1_a_not_c


def test_distinguishing_sentence_shape():
    f = rank1_a_not_c().formula
    assert isinstance(f, SetQuant) and f.quant == "exists" and f.rank == 1 and f.var == "X"
    left, right = f.body.left, f.body.right
    assert left == VertexQuant("forall", "x", Implies(Color("A", "x"), In("x", "X")))
    assert right == VertexQuant("forall", "y", Implies(Color("C", "y"), Not(In("y", "X"))))


def test_co_connectivity_shape():
    doc = co_connectivity()
    assert doc.formula == VertexQuant("forall", "s", VertexQuant("forall", "t", FlipConn("Comp", "s", "t", ())))
    (spec,) = doc.flipspecs
    assert spec.k == 0 and spec.symmetric and spec.pairs == ((Pattern("", ""), Pattern("", "")),)


def test_precedence():
    f = parse_formula("forall x . forall y . ~E(x,y) /\\ x = y \\/ A(x) -> B(y) -> x = x").formula.body.body
    # ((~E /\ eq) \/ A) -> (B -> eq)
    assert isinstance(f, Implies) and isinstance(f.right, Implies)
    assert isinstance(f.left, Or) and isinstance(f.left.left, And) and isinstance(f.left.left.left, Not)


def test_quantifier_scope_extends_right():
    f = parse_formula("forall x . A(x) /\\ exists y . E(x,y) \\/ B(y)").formula
    inner = f.body.right
    assert isinstance(inner, VertexQuant) and isinstance(inner.body, Or)


def test_comments_and_positions():
    doc = parse_formula("# leading comment\nforall x .  # here\n  A(x)\n")
    assert doc.formula.pos == (2, 1)
    assert doc.formula.body.pos == (3, 3)


@pytest.mark.parametrize("text, err", [
    ("conn(s,t; a)", UnboundVariable),
    ("forall x . x in X", UnboundVariable),
    ("existsSet X : 1 . forall X . X = X", None),
    ("existsSet X : 1 . exists y . X = y", UnboundVariable),
    ("forall x . flipconn<Q>(x,x;)", UnknownFlipSpec),
    ("flip F k=1 { (eq=1) ~ (adj=0); }\nforall x . flipconn<F>(x,x;x)", SymmetryRequired),
    ("flip F k=1 symmetric { }\nforall x . flipreach<F>(x,x;)", ArityMismatch),
    ("flip F k=1 { (eq=11) ~ () }\nforall x . x = x", ArityMismatch),
    ("forall x . E(x,", FormulaSyntaxError),
    ("forall x . x", FormulaSyntaxError),
    ("forall in . A(in)", FormulaSyntaxError),
    ("existsSet X : r . A(x)", FormulaSyntaxError),
    ("forall x . A(x) extra", FormulaSyntaxError),
])
def test_errors(text, err):
    if err is None:
        parse_formula(text)
        return
    with pytest.raises(err) as info:
        parse_formula(text)
    assert info.value.code == err.code
    assert info.value.line is not None


def test_syntax_error_position():
    with pytest.raises(FormulaSyntaxError) as info:
        parse_formula("forall x .\n  E(x y)")
    assert (info.value.line, info.value.col) == (2, 7)


def test_validate_returns_diagnostics():
    assert validate(co_connectivity()) == []
    doc = parse_document("flip F k=0 { () ~ (); }\nflip F k=0 symmetric { }\nforall x . flipconn<F>(x,y;) /\\ z in Z")
    codes = [d.code for d in validate(doc)]
    assert codes == ["DuplicateFlipSpec"] + ["UnboundVariable"] * 3  # y, Z and z
    doc = parse_document("flip F k=1 { (eq=1) ~ (adj=0); }\nforall x . flipconn<F>(x,x;x)")
    assert [d.code for d in validate(doc)] == ["SymmetryRequired"]


def test_free_variables_declared_by_caller():
    doc = parse_formula("conn(s,t;a) /\\ s in X", free_vertices=("s", "t", "a"), free_sets=("X",))
    assert not doc.is_sentence
    with pytest.raises(UnboundVariable):
        parse_formula("conn(s,t;a)", free_vertices=("s", "t"))


def test_flip_declaration_colors_and_wildcards():
    doc = parse_formula("flip F k=2 symmetric { (eq=1*, color=+A,-B) ~ (adj=*1); (eq=00) ~ () }\n"
                        "forall x . forall y . flipconn<F>(x,y;x,y)")
    spec = doc.spec("F")
    assert spec.pairs[0][0] == Pattern("1*", "**", ((True, "A"), (False, "B")))
    assert spec.pairs[0][1] == Pattern("**", "*1")
    assert spec.pairs[1] == (Pattern("00", "**"), Pattern("**", "**"))


def test_library_texts_round_trip():
    for text in (CO_CONNECTIVITY, RANK1_A_NOT_C):
        doc = parse_formula(text)
        assert parse_formula(document_to_text(doc)) == doc


VARS = st.sampled_from(["x", "y", "z"])
SETS = st.sampled_from(["X", "Y"])
ATOMS = st.one_of(
    st.builds(Edge, VARS, VARS),
    st.builds(Eq, VARS, VARS),
    st.builds(Color, st.sampled_from(["A", "Red"]), VARS),
    st.builds(In, VARS, SETS),
    st.builds(Conn, VARS, VARS, st.lists(VARS, max_size=2).map(tuple)),
    st.builds(FlipConn, st.just("S"), VARS, VARS, st.tuples(VARS)),
    st.builds(FlipReach, st.just("D"), VARS, VARS, st.tuples()),
)


def extend(inner):
    return st.one_of(
        st.builds(Not, inner),
        st.builds(And, inner, inner),
        st.builds(Or, inner, inner),
        st.builds(Implies, inner, inner),
        st.builds(VertexQuant, st.sampled_from(["exists", "forall"]), VARS, inner),
        st.builds(SetQuant, st.sampled_from(["exists", "forall"]), SETS, st.integers(0, 3), inner),
    )


FORMULAS = st.recursive(ATOMS, extend, max_leaves=12)
SPECS = (FlipSpec("S", 1, ((Pattern("1", "*"), Pattern("*", "1")),), True), FlipSpec("D", 0, (), False))


@given(FORMULAS)
def test_print_parse_round_trip(f):
    doc = FormulaDocument(SPECS, f, ("x", "y", "z"), ("X", "Y"))
    text = document_to_text(doc)
    again = parse_document(text, ("x", "y", "z"), ("X", "Y"))
    assert again.formula == f
    assert again.flipspecs == SPECS
    assert to_text(parse_document(text).formula) == to_text(f)
