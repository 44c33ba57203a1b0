import json
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from conftest import rational_matrices, rationals
from shiftalg.core import YoungDiagram, cpoly_eval
from shiftalg.diffop import minor, power_trace
from shiftalg.linalg import bareiss_rank, inverse, matmul
from shiftalg.pbw import GLn, symbol
from shiftalg import shift as S

F = Fraction
J2211 = S.JordanData(((F(0), YoungDiagram((2, 2, 1, 1))),))


def conj(g, mu):
    return matmul(matmul(g, mu), inverse(g))


def jordan_datas(max_n=4):
    part = st.lists(st.integers(1, 3), min_size=1, max_size=3).map(lambda r: YoungDiagram(tuple(sorted(r, reverse=True))))
    block = st.tuples(st.integers(-3, 3).map(F), part)
    return st.lists(block, min_size=1, max_size=3, unique_by=lambda b: b[0]).filter(
        lambda bs: sum(a.size for _, a in bs) <= max_n
    ).map(lambda bs: S.JordanData(tuple(bs)))


# Jordan data and diagrams --------------------------------------------------------

def test_jordan_examples():
    assert S.jordan_data([[0] * 3] * 3) == S.JordanData(((F(0), YoungDiagram((1, 1, 1))),))
    assert S.jordan_data(J2211.matrix()) == J2211
    got = S.jordan_data([[1, 0], [0, -1]])
    assert set(got.blocks) == {(F(1), YoungDiagram((1,))), (F(-1), YoungDiagram((1,)))}
    with pytest.raises(S.NonRationalSpectrum, match="jordan"):
        S.jordan_data([[0, 1], [2, 0]])
    with pytest.raises(ValueError):
        S.JordanData(((F(0), YoungDiagram((1,))), (F(0), YoungDiagram((2,)))))


@given(jordan_datas(), st.integers(0, 2**30))
def test_jordan_recovered_after_conjugation(jd, seed):
    import random

    rng = random.Random(seed)
    n = jd.n
    while True:
        g = [[F(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)]
        if bareiss_rank(g) == n:
            break
    got = S.jordan_data(conj(g, jd.matrix()))
    assert dict(got.blocks) == dict(jd.blocks)


def test_gamma_examples():
    assert S.gamma_diagram(J2211).rows == (4, 2, 1)
    rs = S.JordanData(tuple((F(i), YoungDiagram((1,))) for i in range(4)))
    assert S.gamma_diagram(rs).rows == ()
    assert S.gamma_diagram(S.jordan_data([[2, 0, 0], [0, 2, 0], [0, 0, 2]])).rows == (2, 1)


def test_selection_examples():
    sel = S.selection(6, YoungDiagram((4, 2, 1)))
    assert set(sel.excluded) == {(3, 2), (4, 3), (5, 3), (5, 4), (6, 3), (6, 4), (6, 5)}
    assert len(sel.retained) == 14 == S.expected_rank(J2211)
    assert len(S.selection(4, YoungDiagram(())).retained) == 10
    assert set(S.selection(3, YoungDiagram((2, 1))).retained) == {(1, 0), (2, 0), (3, 0)}
    with pytest.raises(ValueError):
        S.selection(2, YoungDiagram((3,)))


def test_box_labels():
    n = 4
    for i in range(1, n + 1):
        for j in range(1, n - i + 2):
            m, k = S.box_label(n, i, j)
            assert m - k == i
            assert S.label_box(n, m, k) == (i, j)


@given(jordan_datas(6))
def test_retained_count(jd):
    n = jd.n
    sel = S.selection(n, jd.gamma())
    assert len(sel.retained) == n * (n + 1) // 2 - jd.gamma().size == S.expected_rank(jd)
    assert 2 * jd.gamma().size + n == jd.centralizer_dim()


# phi table ----------------------------------------------------------------

def test_phi_examples():
    g = GLn(2)
    t = S.phi_table([[0, 0], [0, 0]]).entries
    assert t[(1, 0)] == g.E(1, 1) + g.E(2, 2)
    assert str(t[(2, 0)]) == "E[1,1]*E[2,2] - E[1,2]*E[2,1] + E[1,1]"
    assert t[(2, 1)] == 0
    a, b = F(2, 3), F(-5)
    t = S.phi_table([[a, 0], [0, b]]).entries
    assert t[(2, 1)] == g.E(2, 2) * a + g.E(1, 1) * b
    assert t[(2, 2)] == a * b
    t1 = S.phi_table([[F(7)]]).entries
    assert t1[(1, 0)] == GLn(1).E(1, 1) and t1[(1, 1)] == 7


@given(st.integers(1, 3).flatmap(rational_matrices))
def test_routes_agree_and_scalars(mu):
    table = S.phi_table(mu)  # raises RouteMismatch otherwise
    n = len(mu)
    for m in range(1, n + 1):
        expected = sum((minor(mu, I, I) for I in combinations(range(n), m)), F(0))
        assert table.entries[(m, m)] == GLn(n).scalar(expected)


@given(st.integers(1, 3).flatmap(rational_matrices))
def test_symbol_compatibility(mu):
    table = S.phi_table(mu)
    for (m, k), sym in table.symbols.items():
        if sym:
            assert symbol(table.entries[(m, k)], m - k) == sym


@given(st.integers(2, 3).flatmap(rational_matrices))
def test_minor_formula_for_symbols(mu):
    assert S.phi_bar_minor_formula(mu) == S.symbol_table(mu)


def test_table_json_round_trip():
    table = S.phi_table([[1, F(1, 2)], [0, -1]])
    again = S.GeneratorTable.from_json(json.loads(json.dumps(table.to_json())))
    assert again.entries == table.entries
    assert again.symbols == table.symbols
    assert again.mu == table.mu


# other families --------------------------------------------------------------

def test_theta_example():
    n = 4
    mu = [[F(i + 2 * j, 1 + (i * j) % 3) for j in range(n)] for i in range(n)]
    theta = S.symbol_table(mu, "theta_mm")
    g = GLn(n)
    E = [[g.s_gen(i + 1, j + 1) for j in range(n)] for i in range(n)]
    mu2 = matmul(mu, mu)
    tr_mu2E2 = sum((mu2[i][j] * sum((E[j][k] * E[k][i] for k in range(n)), g.s_zero()) for i in range(n) for j in range(n)), g.s_zero())
    muE = [[sum((E[k][j] * mu[i][k] for k in range(n)), g.s_zero()) for j in range(n)] for i in range(n)]
    tr_muE2 = power_trace(2, muE)
    # four cyclically adjacent placements of E^2, two alternating ones
    assert theta[(4, 2)] == (tr_mu2E2 * 2 + tr_muE2) * 2
    assert theta[(4, 0)] == power_trace(4, E)


@pytest.mark.parametrize("n", [2, 3])
def test_varphi_agrees_on_next_diagonal(n):
    mu = [[F((i + 1) * (j + 2) % 5, 1 + i) for j in range(n)] for i in range(n)]
    phi = S.phi_table(mu, False).entries
    varphi = S.other_tables(mu, "varphi", False).entries
    for k in range(n):
        assert varphi[(k + 1, k)] == phi[(k + 1, k)]


def test_unknown_family():
    with pytest.raises(ValueError):
        S.other_tables([[0]], "chi")


# row polynomials and the shift lemma ---------------------------------------------

def test_row_polynomials_gl2():
    g = GLn(2)
    rows = S.row_polynomials(S.phi_table([[0, 0], [0, 0]], False).entries, 2)
    assert rows[2] == [S.phi_table([[0, 0], [0, 0]], False).entries[(2, 0)]]
    assert rows[1] == [g.zero(), g.E(1, 1) + g.E(2, 2)]
    rows1 = S.row_polynomials(S.phi_table([[3]], False).entries, 1)
    assert rows1[1] == [GLn(1).E(1, 1)]


def test_shift_examples():
    assert S.check_shift([[1, 2], [3, 4]], 0)
    assert S.check_shift([[0, 0], [0, 0]], 1)


@given(st.integers(1, 3).flatmap(rational_matrices), rationals())
def test_shift_lemma_symbols(mu, a):
    assert S.check_shift(mu, a, symbols=True)


def test_shift_variable_polynomial():
    # (t + 1)^2 = t^2 + 2t + 1
    assert S.shift_variable([F(0), F(0), F(1)], 1) == [1, 2, 1]


# vanishing, factorization, dependence -----------------------------------------------

def test_vanishing_examples():
    c = F(7, 3)
    mu = [[0, 0, 0], [0, 0, 0], [0, 0, c]]
    assert S.vanishing_positions(3, YoungDiagram((1, 1))) == [(3, 2)]
    assert S.check_vanishing(mu, (1, 1))
    assert S.check_vanishing([[0, 0], [0, 0]], (1, 1))
    assert S.vanishing_positions(3, YoungDiagram((3,))) == []
    assert S.check_vanishing([[0, 1, 0], [0, 0, 1], [0, 0, 0]], (3,))
    with pytest.raises(ValueError):
        S.check_vanishing([[1, 0], [0, 0]], (1, 1))


def test_factorization_examples():
    exps = S.check_factorization(jd=J2211, symbols=True)
    assert [exps[l][0] >= need for l, need in ((1, 4), (2, 2), (3, 1))] == [True] * 3
    rs = S.JordanData(((F(1), YoungDiagram((1,))), (F(-1), YoungDiagram((1,)))))
    assert S.check_factorization(jd=rs)
    two = S.JordanData(((F(0), YoungDiagram((1, 1))), (F(1), YoungDiagram((1, 1)))))
    exps = S.check_factorization(jd=two)
    assert exps[1][0] >= 1 and exps[1][1] >= 1


def test_division_helpers():
    # t^2 + 3t + 2 = (t + 1)(t + 2)
    q, r = S.divide_linear([F(2), F(3), F(1)], 1)
    assert q == [2, 1] and r == 0
    assert S.power_dividing([F(1), F(2), F(1)], 1) == 2
    assert S.power_dividing([F(1), F(0), F(1)], 1) == 0


def test_excluded_dependence_two_eigenvalues():
    two = S.JordanData(((F(0), YoungDiagram((1, 1))), (F(1), YoungDiagram((1, 1)))))
    entries = S.phi_table(two.matrix(), False).entries
    dep = S.excluded_dependence(two, entries)
    assert set(dep) == set(S.selection(4, two.gamma()).excluded)
    assert dep[(3, 2)] == {(2, 1): 1, (1, 0): -1}
    assert dep[(4, 3)] == {}


def test_excluded_dependence_detects_bad_entries():
    two = S.JordanData(((F(0), YoungDiagram((1, 1))), (F(1), YoungDiagram((1, 1)))))
    entries = dict(S.phi_table(two.matrix(), False).entries)
    entries[(3, 2)] = entries[(3, 2)] + 1
    with pytest.raises(S.FactorizationError):
        S.excluded_dependence(two, entries)


# identities ---------------------------------------------------------------

def test_identities_gl2_gl3():
    for mu in ([[1, 2], [F(1, 2), -1]], [[1, 0, 2], [0, F(1, 3), 1], [1, 1, 0]]):
        report = S.check_identities(mu)
        assert report["ok"], report


@given(rational_matrices(2))
def test_macmahon_gl2(mu):
    assert S.macmahon_holds(mu)


@given(st.integers(1, 3).flatmap(rational_matrices))
def test_newton(mu):
    assert S.newton_holds(mu)


def test_triangular_constants_shape():
    mu = [[1, 0, 2], [0, F(1, 3), 1], [1, 1, 0]]
    phi = S.phi_table(mu, False).entries
    varphi = S.other_tables(mu, "varphi", False).entries
    consts = S.triangular_constants(phi, varphi, 3)
    for (m, k), c in consts.items():
        assert set(c) == set(range(k + 1, m))
        lhs = varphi[(m, k)] + sum((varphi[(r, k)] * v for r, v in c.items()), GLn(3).zero())
        assert lhs == phi[(m, k)]


# orbit invariance -------------------------------------------------------------

def random_invertible(rng, n):
    while True:
        g = [[F(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)]
        if bareiss_rank(g) == n:
            return g


@given(jordan_datas(3), st.integers(0, 2**30), st.lists(rationals(), min_size=9, max_size=9))
def test_orbit_invariance(jd, seed, values):
    import random

    rng = random.Random(seed)
    n = jd.n
    mu = conj(random_invertible(rng, n), jd.matrix())
    g = random_invertible(rng, n)
    mu2 = conj(g, mu)
    assert dict(S.jordan_data(mu2).blocks) == dict(S.jordan_data(mu).blocks)
    assert S.selection(n, S.jordan_data(mu2).gamma()) == S.selection(n, S.jordan_data(mu).gamma())
    names = GLn(n).names
    X = [[values[i * n + j] for j in range(n)] for i in range(n)]
    X2 = conj(g, X)
    at = {names[i * n + j]: X[i][j] for i in range(n) for j in range(n)}
    at2 = {names[i * n + j]: X2[i][j] for i in range(n) for j in range(n)}
    sym, sym2 = S.symbol_table(mu), S.symbol_table(mu2)
    for mk in sym:
        assert cpoly_eval(sym[mk], at) == cpoly_eval(sym2[mk], at2)
    assert S.check_factorization(mu2, S.jordan_data(mu2), symbols=True) == S.check_factorization(
        mu, S.jordan_data(mu), symbols=True)


# input handling -------------------------------------------------------------

def test_load_input():
    mu, jd = S.load_input({"jordan": [{"eigenvalue": "0", "blocks": [2, 2, 1, 1]}]})
    assert jd == J2211 and mu == J2211.matrix()
    mu, jd = S.load_input('{"n": 2, "matrix": [["1/2", "0"], ["0", "-1"]]}')
    assert mu[0][0] == F(1, 2)
    with pytest.raises(ValueError):
        S.load_input({"n": 3, "matrix": [[1]]})
    with pytest.raises(ValueError):
        S.load_input({"matrix": [["0.5"]]})
    with pytest.raises(ValueError):
        S.load_input({})
    assert S.JordanData.from_json(J2211.to_json()) == J2211
