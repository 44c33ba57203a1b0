from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from conftest import rational_matrices, rationals
from shiftalg.affine import (
    LoopAlgebra,
    VacuumModule,
    cdet_family,
    evaluate_rho,
    grade_D,
    is_ss_vector,
    segal_sugawara_vectors,
    ss_family,
    tau_expansion,
    translate_T,
    vacuum_apply,
)
from shiftalg.diffop import cdet, dop_apply_to_one, standard_matrix
from shiftalg.shift import phi_table

L2 = LoopAlgebra(2)


def E(i, j, r=-1):
    return L2.E(i, j, r)


def loop_elements(alg, max_terms=3, max_len=3, with_tau=True):
    n = alg.n
    gen = st.tuples(st.integers(-3, -1), st.integers(0, n - 1), st.integers(0, n - 1))
    if with_tau:
        gen = gen | st.just((0, 0, 0))
    word = st.lists(gen, max_size=max_len).map(tuple)
    return st.dictionaries(word, rationals(4, 2), max_size=max_terms).map(alg.element)


def test_tau_straightening():
    t = L2.tau()
    assert t * E(1, 1) == E(1, 1) * t + E(1, 1, -2)
    assert str(E(1, 2) * E(1, 2)) == "E[1,2;-1]^2"
    assert str(t) == "tau"


def test_cdet_tau_gl2():
    t = L2.tau()
    expected = (t * t + (E(1, 1) + E(2, 2)) * t + E(1, 1) * E(2, 2) - E(2, 1) * E(1, 2) + E(2, 2, -2))
    assert cdet(L2.tau_matrix()) == expected


def test_phi_family_examples():
    for n in (1, 2, 3):
        L = LoopAlgebra(n)
        assert ss_family("phi", 1, n)[1] == sum((L.E(i, i) for i in range(1, n + 1)), L.zero())
    assert ss_family("phi", 2, 2)[2] == E(1, 1) * E(2, 2) - E(2, 1) * E(1, 2) + E(2, 2, -2)
    with pytest.raises(ValueError):
        ss_family("phi", 3, 2)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_binomial_relation(n):
    phis = cdet_family(n)
    for m in range(1, n + 1):
        fam = ss_family("phi", m, n)
        for a in range(m + 1):
            assert fam[a] == phis[a] * comb(n - a, m - a)


def test_vacuum_examples():
    V = VacuumModule(2)
    one = L2.one()
    assert V.apply(1, 1, 0, one) == 0
    for (i, j, k, l) in [(1, 2, 2, 1), (1, 1, 1, 1), (1, 1, 2, 2), (1, 2, 1, 2)]:
        got = vacuum_apply(i, j, 1, E(k, l))
        pairing = Fraction(int(k == j and i == l)) - Fraction(int(i == j and k == l), 2)
        assert got == L2.scalar(-2 * pairing)
    for m, phi in enumerate(segal_sugawara_vectors("cdet", 2), start=1):
        assert V.apply(1, 1, 1, phi) + V.apply(2, 2, 1, phi) == 0
    with pytest.raises(ValueError):
        V.apply(1, 1, -1, one)


@pytest.mark.parametrize("family", ["cdet", "phi", "psi", "theta"])
def test_ss_vectors_gl2(family):
    for v in segal_sugawara_vectors(family, 2):
        ok, witnesses = is_ss_vector(v)
        assert ok, witnesses[:1]


def test_ss_negative_control():
    ok, witnesses = is_ss_vector(E(1, 2))
    assert not ok
    probe, image = witnesses[0]
    assert probe == "E[2,1;1]"
    assert image == -2


def test_translation_and_grading():
    assert translate_T(E(1, 1)) == E(1, 1, -2)
    for n in (2, 3):
        for m, phi in enumerate(cdet_family(n)[1:], start=1):
            assert grade_D(phi) == m
            assert grade_D(translate_T(phi)) == m + 1
            assert is_ss_vector(translate_T(phi))[0]
    with pytest.raises(ValueError):
        grade_D(E(1, 1) + E(1, 1) * E(2, 2))


@given(loop_elements(L2, with_tau=False), loop_elements(L2, with_tau=False))
def test_T_is_derivation(a, b):
    assert translate_T(a * b) == translate_T(a) * b + a * translate_T(b)


@given(loop_elements(L2), loop_elements(L2), loop_elements(L2))
def test_loop_associative(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert L2.element((a * b).terms) == a * b


@given(loop_elements(L2, 2, 2), loop_elements(L2, 2, 2), rational_matrices(2))
def test_rho_is_homomorphism(a, b, mu):
    assert evaluate_rho(a * b, mu) == evaluate_rho(a, mu) * evaluate_rho(b, mu)


def test_rho_examples():
    mu = [[Fraction(1), 2], [3, Fraction(-1, 2)]]
    phi1 = segal_sugawara_vectors("cdet", 2)[0]
    const = dop_apply_to_one(evaluate_rho(phi1, mu))
    assert set(const) == {0, 1}
    assert const[0].scalar_part() == Fraction(1, 2)
    assert str(const[1]) == "E[1,1] + E[2,2]"
    assert evaluate_rho(cdet(L2.tau_matrix()), mu) == cdet(standard_matrix(mu))
    t = L2.tau()
    assert evaluate_rho(t * E(1, 1), mu) == evaluate_rho(t, mu) * evaluate_rho(E(1, 1), mu)


@pytest.mark.parametrize("n", [2, 3])
def test_rho_matches_phi_table(n):
    mu = [[Fraction(i * n + j + 1, 1 + (i + j) % 3) for j in range(n)] for i in range(n)]
    table = phi_table(mu, False).entries
    c = evaluate_rho(cdet(LoopAlgebra(n).tau_matrix()), mu)
    phis = cdet_family(n)
    for m in range(1, n + 1):
        # the tau-free phi_m maps to a pure multiplication operator
        image = evaluate_rho(phis[m], mu)
        assert image.d_degree() == 0
        const = dop_apply_to_one(image)
        assert all(const.get(m - k, 0) == table[(m, k)] for k in range(m + 1))
        # tau -> -d, so the tau^(n-m) coefficient arrives at (-d)^(n-m)
        part = {k: u * (-1) ** (n - m) for k, u in c.d_coefficient(n - m).items()}
        for k in range(m + 1):
            assert part.get(m - k, 0) == table[(m, k)]


def test_tau_expansion():
    t = L2.tau()
    parts = tau_expansion(cdet(L2.tau_matrix()))
    assert parts[2] == 1
    assert parts[1] == E(1, 1) + E(2, 2)
    assert set(parts) == {0, 1, 2}
    assert tau_expansion(t * E(1, 1))[0] == E(1, 1, -2)
