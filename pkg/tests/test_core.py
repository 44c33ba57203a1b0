from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import rationals
from shiftalg.core import (
    CPoly,
    YoungDiagram,
    cpoly_diff,
    cpoly_eval,
    format_rational,
    parse_rational,
    rational_roots,
)

NAMES = ("x", "y", "z")
X, Y, Z = CPoly.variables(NAMES)


def polys(max_terms=4, max_deg=3):
    mono = st.tuples(*(st.integers(0, max_deg) for _ in NAMES))
    return st.dictionaries(mono, rationals(), max_size=max_terms).map(lambda t: CPoly(NAMES, t))


points = st.fixed_dictionaries({v: rationals() for v in NAMES})


def test_parse_rational_forms():
    assert parse_rational("3/6") == Fraction(1, 2)
    assert parse_rational("-4") == -4
    assert parse_rational(7) == 7
    for bad in ("0.5", "1e3", 0.5, "1/0", ""):
        with pytest.raises((ValueError, TypeError, ZeroDivisionError)):
            parse_rational(bad)


@given(rationals(1000, 1000))
def test_rational_text_round_trip(q):
    assert parse_rational(format_rational(q)) == q


def test_eval_examples():
    assert cpoly_eval(X + Y, {"x": 1, "y": 2}) == 3
    assert cpoly_eval(X * 0, {}) == 0
    with pytest.raises(KeyError):
        cpoly_eval(X * Y, {"x": 1})


def test_diff_examples():
    assert cpoly_diff(X**2 * Y, "x") == X * Y * 2
    assert cpoly_diff(CPoly.const(NAMES, 5), "x") == 0
    with pytest.raises((KeyError, ValueError)):
        cpoly_diff(X, "w")


def test_text_form():
    p = CPoly.parse("3/2*E[1,1]^2*E[2,2] - E[1,2]", ("E[1,1]", "E[1,2]", "E[2,1]", "E[2,2]"))
    assert str(p) == "3/2*E[1,1]^2*E[2,2] - E[1,2]"
    assert str(X * 0) == "0"


@given(polys(), polys(), polys())
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == 0


@given(polys(), polys(), points)
def test_eval_is_homomorphism(p, q, pt):
    assert cpoly_eval(p * q, pt) == cpoly_eval(p, pt) * cpoly_eval(q, pt)
    assert cpoly_eval(p + q, pt) == cpoly_eval(p, pt) + cpoly_eval(q, pt)


@given(polys(), polys())
def test_leibniz(p, q):
    for v in NAMES:
        assert cpoly_diff(p * q, v) == cpoly_diff(p, v) * q + p * cpoly_diff(q, v)


@given(polys())
def test_parse_round_trip(p):
    assert CPoly.parse(str(p), NAMES) == p


def test_rational_roots_examples():
    (t,) = CPoly.variables(("t",))
    assert rational_roots(t**2 - 1) == ([(Fraction(-1), 1), (Fraction(1), 1)], 0)
    assert rational_roots(t**6) == ([(Fraction(0), 6)], 0)
    assert rational_roots(t**2 - 2) == ([], 2)


@given(st.lists(rationals(6, 3), max_size=5), st.sampled_from([0, 2]))
def test_rational_roots_recovers(roots, extra):
    (t,) = CPoly.variables(("t",))
    p = CPoly.const(("t",), Fraction(3, 2))
    for r in roots:
        p = p * (t - r)
    if extra:
        p = p * (t**2 + 3)
    found, rest = rational_roots(p)
    assert sum(m for _, m in found) + rest == p.degree()
    assert rest == extra
    for r, m in found:
        assert cpoly_eval(p, {"t": r}) == 0
        assert m == roots.count(r)


def test_young_diagram():
    d = YoungDiagram((2, 2, 1, 1, 0))
    assert d.rows == (2, 2, 1, 1)
    assert d.size == 6
    assert d.conjugate().rows == (4, 2)
    assert [d.below(l) for l in range(1, 5)] == [4, 2, 1, 0]
    assert YoungDiagram.staircase(3).rows == (3, 2, 1)
    assert str(YoungDiagram(())) == "()"
    assert str(YoungDiagram((4, 2, 1))) == "(4,2,1)"
    with pytest.raises(ValueError):
        YoungDiagram((1, 2))


@given(st.lists(st.integers(0, 6), max_size=6))
def test_conjugate_is_involution(rows):
    d = YoungDiagram(tuple(sorted(rows, reverse=True)))
    assert d.conjugate().conjugate() == d
    assert d.conjugate().size == d.size
