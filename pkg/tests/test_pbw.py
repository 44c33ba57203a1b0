import pickle
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import rationals
from shiftalg.pbw import ContextMismatch, FiltrationError, GLn, poisson, symbol, u_commutator
from shiftalg.shift import symbol_table


def elements(n, max_terms=3, max_len=3):
    alg = GLn(n)
    word = st.lists(st.integers(0, n * n - 1), max_size=max_len).map(tuple)
    return st.dictionaries(word, rationals(4, 2), max_size=max_terms).map(alg.element)


def test_mul_examples():
    g = GLn(2)
    assert str(g.E(1, 2) * g.E(2, 1)) == "E[1,2]*E[2,1]"
    assert g.E(2, 1) * g.E(1, 2) == g.E(1, 2) * g.E(2, 1) + g.E(2, 2) - g.E(1, 1)
    ident = g.E(1, 1) + g.E(2, 2)
    u = g.E(1, 2) * g.E(2, 1)
    assert ident * u - u * ident == 0


def test_commutator_examples():
    g = GLn(2)
    assert u_commutator(g.E(1, 1), g.E(2, 2)) == 0
    assert u_commutator(g.E(1, 2), g.E(2, 1)) == g.E(1, 1) - g.E(2, 2)
    phi1 = g.E(1, 1) + g.E(2, 2)
    phi2 = g.parse("E[1,1]*E[2,2] - E[1,2]*E[2,1] + E[1,1]")
    assert u_commutator(phi1, phi2) == 0


def test_text_form():
    g = GLn(2)
    u = g.parse("E[2,2]*E[1,1] - E[1,2]*E[2,1] + E[1,1]")
    assert str(u) == "E[1,1]*E[2,2] - E[1,2]*E[2,1] + E[1,1]"
    assert g.parse(str(u)) == u


def test_context_mismatch():
    with pytest.raises(ContextMismatch):
        GLn(2).E(1, 1) * GLn(3).E(1, 1)


def test_singleton_and_pickle():
    assert GLn(3) is GLn(3)
    u = GLn(3).E(1, 2) * GLn(3).E(3, 1)
    assert pickle.loads(pickle.dumps(u)) == u


def test_symbol_examples():
    g = GLn(2)
    assert symbol(g.parse("E[1,2]*E[2,1] + E[2,2]"), 2) == g.s_gen(1, 2) * g.s_gen(2, 1)
    phi2 = g.parse("E[1,1]*E[2,2] - E[1,2]*E[2,1] + E[1,1]")
    assert symbol(phi2, 2) == g.s_gen(1, 1) * g.s_gen(2, 2) - g.s_gen(1, 2) * g.s_gen(2, 1)
    assert symbol(g.scalar(5), 0) == 5
    with pytest.raises(FiltrationError):
        symbol(phi2, 1)


def test_poisson_examples():
    g = GLn(2)
    assert poisson(g.s_gen(1, 2), g.s_gen(2, 1)) == g.s_gen(1, 1) - g.s_gen(2, 2)
    sym = symbol_table([[1, 0], [0, -1]])
    assert poisson(sym[(2, 0)], sym[(2, 1)]) == 0


@given(elements(2), elements(2), elements(2))
def test_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(elements(3, 2, 2), elements(3, 2, 2), elements(3, 2, 2))
def test_associative_gl3(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(elements(2), elements(2))
def test_normal_form_and_filtration(a, b):
    p = a * b
    assert p.is_normal()
    assert GLn(2).element(p.terms) == p
    assert p.degree() <= max(a.degree(), 0) + max(b.degree(), 0)
    da, db = a.degree(), b.degree()
    if da >= 0 and db >= 0:
        sa, sb = symbol(a, da), symbol(b, db)
        assert symbol(p, da + db) == sa * sb
        c = u_commutator(a, b)
        if da + db >= 1:
            assert symbol(c, da + db - 1) == poisson(sa, sb)


def linear(n):
    alg = GLn(n)
    return st.lists(rationals(4, 2), min_size=n * n, max_size=n * n).map(
        lambda cs: sum((alg.s_gen(i // n + 1, i % n + 1) * c for i, c in enumerate(cs)), alg.s_zero())
    )


@given(linear(3), linear(3), linear(3))
def test_jacobi(p, q, r):
    total = poisson(p, poisson(q, r)) + poisson(q, poisson(r, p)) + poisson(r, poisson(p, q))
    assert total == 0


@given(elements(2).map(lambda u: symbol(u, max(u.degree(), 0))))
def test_poisson_antisymmetric(p):
    assert poisson(p, p) == 0
