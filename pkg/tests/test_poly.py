from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tordiff.errors import InexactDivision
from tordiff.field import CoeffField
from tordiff.orders import GREVLEX, LEX, Block, GrevLex, Lex
from tordiff.poly import PolyRing, format_poly

F2, F3, F5, Q = CoeffField(2), CoeffField(3), CoeffField(5), CoeffField(0)


def ring(field=F2, names=("x", "y", "z"), order=GREVLEX):
    return PolyRing(field, names, order)


def test_field_rejects_composite():
    with pytest.raises(ValueError):
        CoeffField(4)
    with pytest.raises(ValueError):
        CoeffField(1)


@given(st.integers(), st.integers(min_value=1, max_value=10**6))
def test_fp_coercion_of_fractions(a, b):
    F = CoeffField(7)
    if b % 7 == 0:
        return
    assert F(Fraction(a, b)) * b % 7 == a % 7


def test_q_inverse_stays_exact():
    assert Q.inv(3) == Fraction(1, 3)
    assert isinstance(Q.inv(3), Fraction)


def test_canonical_printer():
    R = ring()
    assert format_poly(R("y^2 - x*z^2")) == "x*z^2 + y^2"
    assert format_poly(R("z^2*x")) == "x*z^2"
    assert format_poly(R(0)) == "0"
    S = ring(Q, ("x", "y"))
    assert format_poly(S("y*x - 2/3*x^2")) == "-2/3*x^2 + x*y"
    assert format_poly(S("-1")) == "-1"
    T = ring(F5, ("x", "y"))
    assert format_poly(T("-x + 2")) == "4*x + 2"


def test_grevlex_ties_break_on_last_variable():
    R = ring(Q)
    # x*z < y^2 in grevlex: smaller power of the last variable wins
    assert format_poly(R("x*z + y^2")) == "y^2 + x*z"


def test_orders_differ():
    assert LEX.compare((1, 0, 0), (0, 3, 0)) == 1
    assert GREVLEX.compare((1, 0, 0), (0, 3, 0)) == -1
    blk = Block(1, GrevLex(), GrevLex())
    assert blk.compare((1, 0, 0), (0, 5, 5)) == 1
    assert Lex().compare((0, 1), (0, 1)) == 0


def test_parse_and_arithmetic():
    R = ring(F3)
    f = R("(x + y)^3")
    assert f == R("x^3 + y^3")  # Frobenius in char 3
    assert R("x*y") * R("x") == R("x^2*y")
    assert R("x") - R("x") == R(0)
    assert -R("x") == R("2*x")


def test_derivative_and_frobenius():
    R = ring(F2)
    f = R("x^2*y + x*z^3")
    assert f.derivative("x") == R("z^3")
    assert f.derivative(1) == R("x^2")
    assert (f ** 2).derivative(0) == R(0)


def test_divmod_reconstructs():
    R = ring(Q, ("x", "y"))
    f, g = R("x^3*y + 2*x*y^2 - 5"), R("x*y - 1")
    q, r = f.divmod(g)
    assert q * g + r == f
    assert g.exact_div(g) == R(1)
    with pytest.raises(InexactDivision):
        f.exact_div(g)
    with pytest.raises(ZeroDivisionError):
        f.divmod(R(0))


def test_subs_into_other_ring():
    R, S = ring(F2), ring(F2, ("u", "z"))
    f = R("y^2 - x*z^2")
    assert f.subs([S("u^2"), S("u*z"), S("z")], S) == S(0)


@st.composite
def polys(draw, R, max_terms=4, max_deg=3):
    n = R.nvars
    d = {}
    for _ in range(draw(st.integers(0, max_terms))):
        e = tuple(draw(st.integers(0, max_deg)) for _ in range(n))
        d[e] = d.get(e, 0) + draw(st.integers(-4, 4))
    return R.from_dict(d)


RQ = ring(Q)
R5 = ring(F5)


@given(polys(RQ), polys(RQ), polys(RQ))
def test_ring_axioms_over_q(f, g, h):
    assert (f + g) * h == f * h + g * h
    assert (f * g) * h == f * (g * h)
    assert f * g == g * f
    assert f - f == RQ.zero


@given(polys(R5), polys(R5))
def test_leibniz_over_f5(f, g):
    for i in range(3):
        assert (f * g).derivative(i) == f.derivative(i) * g + f * g.derivative(i)
        assert (g ** 5).derivative(i) == R5.zero


@given(polys(RQ))
def test_print_parse_round_trip(f):
    assert RQ(format_poly(f)) == f


@given(polys(R5), polys(R5))
def test_divmod_identity(f, g):
    if not g:
        return
    q, r = f.divmod(g)
    assert q * g + r == f
    lt, _ = g.leading_term()
    for e, _ in r.terms:
        assert not all(a >= b for a, b in zip(e, lt))


def test_against_sympy_expansion():
    sympy = pytest.importorskip("sympy")
    x, y = sympy.symbols("x y")
    R = ring(Q, ("x", "y"))
    expr = sympy.expand((x - 2 * y + sympy.Rational(1, 3)) ** 4)
    ours = R("(x - 2*y + 1/3)^4")
    assert R(str(expr).replace("**", "^")) == ours
