from pathlib import Path

import pytest
from hypothesis import given, strategies as st

import tordiff
from tordiff.dsl import (
    BinOp,
    CheckStmt,
    DiagramDecl,
    MapDecl,
    Neg,
    Num,
    ParseError,
    Pow,
    RingDecl,
    Var,
    eval_expr,
    format_expr,
    format_source,
    parse_expr,
    parse_source,
)
from tordiff.field import CoeffField
from tordiff.poly import PolyRing

WORKED = Path(tordiff.__file__).parent / "worked"


def test_ring_statement():
    sf = parse_source('ring R = F2[x,y,z]/(y^2 - x*z^2) domain "Whitney"')
    assert sf.ok
    (r,) = sf.statements
    assert isinstance(r, RingDecl)
    assert (r.name, r.field, r.variables, r.domain) == ("R", "F2", ("x", "y", "z"), "Whitney")
    assert format_expr(r.relations[0]) == "y^2 - x*z^2"


def test_map_statement():
    sf = parse_source("map pi : R -> S { x -> u^2, y -> u*z, z -> z }")
    (m,) = sf.statements
    assert isinstance(m, MapDecl)
    assert [v for v, _ in m.images] == ["x", "y", "z"]
    assert format_expr(m.images[1][1]) == "u*z"


def test_diagram_statement_round_trip():
    text = "diagram D over X {\n  pieces: a, b;\n  product(0, 1): r, s;\n}\n"
    sf = parse_source(text)
    (d,) = sf.statements
    assert isinstance(d, DiagramDecl) and d.products == ((0, 1, "r", "s"),)
    assert format_source(sf) == text


def test_unclosed_bracket_span():
    sf = parse_source("ring A = F2[x")
    assert not sf.ok
    d = sf.diagnostics[0]
    assert (d.line, d.col) == (1, 13)
    assert "unclosed bracket" in d.message


def test_errors_do_not_abort_later_statements():
    sf = parse_source("ring A = G2[x]\nring B = F2[y]\nmap f B -> B { y -> y }\ncheck domain(B)\n")
    assert [d.line for d in sf.diagnostics] == [1, 3]
    assert any(isinstance(s, CheckStmt) for s in sf.statements)
    assert any(isinstance(s, RingDecl) and s.name == "B" for s in sf.statements)


def test_diagnostic_columns_point_into_text():
    text = "ring R = Q[x]\ncheck zero(R, x + )\n"
    sf = parse_source(text)
    lines = text.splitlines()
    for d in sf.diagnostics:
        assert 1 <= d.line <= len(lines)
        assert 1 <= d.col <= len(lines[d.line - 1]) + 1


def test_rational_literals():
    R = PolyRing(CoeffField(0), ["x"])
    assert eval_expr(parse_expr("2/3*x - 1/2"), R) == R("x").scale(R.field(2) / 3) - R.const(R.field(1) / 2)
    F = PolyRing(CoeffField(5), ["x"])
    assert eval_expr(parse_expr("x/2"), F) == F("3*x")
    with pytest.raises(ValueError):
        eval_expr(parse_expr("x/5"), F)
    with pytest.raises(ParseError):
        parse_expr("x/y")


def test_precedence():
    e = parse_expr("-x^2 + 2*y*z - (x - y)^3")
    assert format_expr(e) == "-x^2 + 2*y*z - (x - y)^3"
    assert parse_expr("a - (b - c)") != parse_expr("a - b - c")
    assert isinstance(parse_expr("-x^2"), Neg)


@pytest.mark.parametrize("path", sorted(WORKED.glob("*.tdf")), ids=lambda p: p.name)
def test_worked_files_round_trip(path):
    sf = parse_source(path.read_text(encoding="utf-8"))
    assert sf.ok, sf.diagnostics
    again = parse_source(format_source(sf))
    assert again.ok and again.statements == sf.statements


names = st.sampled_from(["x", "y", "z", "u"])
exprs = st.recursive(
    st.one_of(st.integers(0, 50).map(Num), names.map(Var)),
    lambda inner: st.one_of(
        st.tuples(st.sampled_from("+-*"), inner, inner).map(lambda t: BinOp(*t)),
        inner.map(Neg),
        st.tuples(inner, st.integers(0, 4)).map(lambda t: Pow(*t)),
        st.tuples(inner, st.integers(1, 9)).map(lambda t: BinOp("/", t[0], Num(t[1]))),
    ),
    max_leaves=8,
)


@given(exprs)
def test_expression_round_trip_preserves_value(e):
    R = PolyRing(CoeffField(0), ["x", "y", "z", "u"])
    text = format_expr(e)
    again = parse_expr(text)
    assert format_expr(again) == text
    assert eval_expr(again, R) == eval_expr(e, R)


@given(st.text(alphabet="ringmapcheckdiagramover=[](){}/,:;->^*+ xyzFQ0123\n\"", max_size=80))
def test_parser_never_crashes(text):
    sf = parse_source(text)
    lines = text.split("\n")
    for d in sf.diagnostics:
        assert d.severity == "error"
        assert 1 <= d.line <= len(lines)
        assert d.col >= 1


@given(st.text(max_size=40))
def test_parser_survives_arbitrary_unicode(text):
    parse_source(text)
