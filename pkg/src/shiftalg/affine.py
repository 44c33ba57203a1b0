"""The loop algebra ``U(t^-1 gl_n[t^-1]) + C tau`` and the critical vacuum module.

Generators are ``E_ij[r]`` (``r <= -1``), keyed as ``(r, i, j)`` with 0-based
``i, j``, and ``tau``.  The PBW order sorts loop generators by ``(r, i, j)``
and puts ``tau`` last, so normal forms carry all ``tau`` factors on the
right.  Brackets among strictly negative modes never produce a central term.

The vacuum module at level ``K = -n`` is identified with the ``tau``-free
part; nonnegative modes act by commuting to the right and annihilating the
vacuum.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from shiftalg.diffop import DOp, cdet, power_trace, projector_trace
from shiftalg.pbw import GLn, PBWAlgebra, PBWElement, _accumulate

TAU = (0, 0, 0)
"""Key of ``tau``; mode 0 never labels a loop generator, so this sorts last."""

Gen = Tuple[int, int, int]


class LoopAlgebra(PBWAlgebra):
    """``U(t^-1 gl_n[t^-1] + C tau)`` with ``[tau, X[r]] = -r X[r-1]``."""

    _instances: Dict[int, "LoopAlgebra"] = {}

    def __new__(cls, n: int):
        inst = cls._instances.get(n)
        if inst is None:
            inst = super().__new__(cls)
            PBWAlgebra.__init__(inst)
            inst.n = n
            inst.level = Fraction(-n)
            cls._instances[n] = inst
        return inst

    def __init__(self, n: int):
        pass

    def __repr__(self):
        return f"LoopAlgebra({self.n})"

    def __reduce__(self):
        return (LoopAlgebra, (self.n,))

    def bracket(self, x, g):
        if x == TAU:
            s, k, l = g
            return {(s - 1, k, l): Fraction(-s)}
        if g == TAU:
            r, i, j = x
            return {(r - 1, i, j): Fraction(r)}
        return loop_bracket(x, g)

    def E(self, i: int, j: int, r: int = -1) -> PBWElement:
        """``E_ij[r]`` with 1-based ``i, j`` and ``r <= -1``."""
        if r > -1:
            raise ValueError("only negative modes live in U(t^-1 gl_n[t^-1])")
        return self.gen((r, i - 1, j - 1))

    def tau(self) -> PBWElement:
        return self.gen(TAU)

    def matrix(self, r: int = -1) -> list:
        n = self.n
        return [[self.E(i, j, r) for j in range(1, n + 1)] for i in range(1, n + 1)]

    def tau_matrix(self) -> list:
        """The matrix ``tau + E[-1]``."""
        M = self.matrix(-1)
        t = self.tau()
        for i in range(self.n):
            M[i][i] = M[i][i] + t
        return M

    def generator_name(self, g) -> str:
        if g == TAU:
            return "tau"
        r, i, j = g
        return f"E[{i + 1},{j + 1};{r}]"

    def parse_generator(self, name: str):
        name = name.replace(" ", "")
        if name == "tau":
            return TAU
        if not (name.startswith("E[") and name.endswith("]") and ";" in name):
            raise ValueError(f"bad loop generator {name!r}")
        ij, r = name[2:-1].split(";")
        i, j = (int(x) for x in ij.split(","))
        r = int(r)
        if r > -1 or not (1 <= i <= self.n and 1 <= j <= self.n):
            raise ValueError(f"bad loop generator {name!r}")
        return (r, i - 1, j - 1)


def loop_bracket(x: Gen, g: Gen) -> Dict[Gen, Fraction]:
    """``[E_ij[r], E_kl[s]]`` without the central term."""
    r, i, j = x
    s, k, l = g
    out: Dict[Gen, Fraction] = {}
    if k == j:
        out[(r + s, i, l)] = out.get((r + s, i, l), 0) + Fraction(1)
    if i == l:
        out[(r + s, k, j)] = out.get((r + s, k, j), 0) - Fraction(1)
    return {h: c for h, c in out.items() if c}


def loop_mul(a: PBWElement, b: PBWElement) -> PBWElement:
    return a * b


def central_term(x: Gen, g: Gen, n: int) -> Fraction:
    """``r delta_{r,-s} K (delta_kj delta_il - delta_ij delta_kl / n)`` at ``K = -n``."""
    r, i, j = x
    s, k, l = g
    if r != -s:
        return Fraction(0)
    pairing = Fraction(int(k == j and i == l)) - Fraction(int(i == j and k == l), n)
    return r * Fraction(-n) * pairing


def tau_expansion(a: PBWElement) -> Dict[int, PBWElement]:
    """``{p: coefficient of tau^p}`` with ``tau``-free coefficients."""
    out: Dict[int, Dict] = {}
    for w, c in a.terms.items():
        p = 0
        while p < len(w) and w[len(w) - 1 - p] == TAU:
            p += 1
        head = w[: len(w) - p]
        if TAU in head:
            raise ValueError("element is not in normal form")
        out.setdefault(p, {})[head] = c
    return {p: PBWElement(a.alg, t) for p, t in out.items()}


def tau_power(a: PBWElement) -> int:
    return max(tau_expansion(a), default=0)


# families ---------------------------------------------------------------

def cdet_family(n: int) -> List[PBWElement]:
    """``[phi_0, ..., phi_n]`` from ``cdet(tau + E[-1]) = sum phi_a tau^(n-a)``."""
    alg = LoopAlgebra(n)
    exp = tau_expansion(cdet(alg.tau_matrix()))
    return [exp.get(n - a, alg.zero()) for a in range(n + 1)]


def ss_family(family: str, m: int, n: int) -> List[PBWElement]:
    """Coefficients ``[X_m0, ..., X_mm]`` of ``tau^(m-a)`` for ``X`` in phi/psi/theta.

    ``phi`` uses the antisymmetrized trace, ``psi`` the symmetrized one and
    ``theta`` the power trace ``tr (tau + E[-1])^m``.
    """
    alg = LoopAlgebra(n)
    if m < 1:
        raise ValueError("m must be positive")
    M = alg.tau_matrix()
    if family == "phi":
        if m > n:
            raise ValueError(f"phi_m is defined for m <= n, got m={m}")
        el = projector_trace("antisymmetrizer", m, M)
    elif family == "psi":
        el = projector_trace("symmetrizer", m, M)
    elif family == "theta":
        el = power_trace(m, M)
    else:
        raise ValueError(f"unknown family {family!r}")
    exp = tau_expansion(el)
    return [exp.get(m - a, alg.zero()) for a in range(m + 1)]


def segal_sugawara_vectors(family: str, n: int) -> List[PBWElement]:
    """``phi_1..phi_n`` (family ``cdet``), or ``psi_mm`` / ``theta_mm``, or ``phi_mm``."""
    if family == "cdet":
        return cdet_family(n)[1:]
    return [ss_family(family, m, n)[m] for m in range(1, n + 1)]


# vacuum module ------------------------------------------------------------

class VacuumModule:
    """The vacuum module at the critical level ``K = -n``."""

    def __init__(self, n: int):
        self.n = n
        self.alg = LoopAlgebra(n)
        self.level = Fraction(-n)
        self._cache: Dict[Tuple[Gen, tuple], Dict] = {}

    def _act_word(self, g: Gen, word: tuple) -> Dict[tuple, Fraction]:
        """``X[r] * word * vac`` for ``r >= 0``, as normal-ordered words."""
        key = (g, word)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        alg = self.alg
        out: Dict[tuple, Fraction] = {}
        r = g[0]
        for a, x in enumerate(word):
            prefix, suffix = word[:a], word[a + 1:]
            c0 = central_term(g, x, self.n)
            if c0:
                _accumulate(out, alg.word_times_word(prefix, suffix).items(), c0)
            for h, c in loop_bracket(g, x).items():
                if h[0] >= 0:
                    tail = self._act_word(h, suffix)
                    for w2, c2 in tail.items():
                        _accumulate(out, alg.word_times_word(prefix, w2).items(), c * c2)
                else:
                    mid = alg.word_times_gen(prefix, h)
                    for w2, c2 in mid.items():
                        _accumulate(out, alg.word_times_word(w2, suffix).items(), c * c2)
        self._cache[key] = out
        return out

    def apply(self, i: int, j: int, r: int, v: PBWElement) -> PBWElement:
        """``E_ij[r] v`` for ``r >= 0`` (1-based ``i, j``)."""
        if r < 0:
            raise ValueError("vacuum_apply takes a nonnegative mode")
        if v.alg is not self.alg:
            raise ValueError("vector from a different loop algebra")
        if any(TAU in w for w in v.terms):
            raise ValueError("vacuum vectors carry no tau")
        out: Dict[tuple, Fraction] = {}
        g = (r, i - 1, j - 1)
        for w, c in v.terms.items():
            _accumulate(out, self._act_word(g, w).items(), c)
        return PBWElement(self.alg, out)

    def probes(self) -> list:
        """``E_ij[1]`` first, then ``E_ij[0]``, row-major."""
        n = self.n
        return [(r, i, j) for r in (1, 0) for i in range(1, n + 1) for j in range(1, n + 1)]

    def is_ss_vector(self, v: PBWElement) -> tuple:
        """``(True, [])`` iff every mode-0 and mode-1 probe kills ``v``.

        Modes 0 and 1 generate ``gl_n[t]`` modulo the identity directions
        ``I[r]``, which act by zero on the vacuum module, so these probes
        decide membership.  On failure the list holds ``(probe, image)``
        pairs, first failing probe first.
        """
        failures = []
        for r, i, j in self.probes():
            img = self.apply(i, j, r, v)
            if img:
                failures.append((f"E[{i},{j};{r}]", img))
        return (not failures, failures)


def vacuum_apply(i: int, j: int, r: int, v: PBWElement) -> PBWElement:
    return VacuumModule(v.alg.n).apply(i, j, r, v)


def is_ss_vector(v: PBWElement) -> tuple:
    return VacuumModule(v.alg.n).is_ss_vector(v)


# derivations and evaluation ---------------------------------------------------

def translate_T(v: PBWElement) -> PBWElement:
    """The derivation ``T`` with ``T(X[r]) = -r X[r-1]``."""
    alg = v.alg
    out: Dict[tuple, Fraction] = {}
    for w, c in v.terms.items():
        if TAU in w:
            raise ValueError("translate_T takes tau-free elements")
        for a, x in enumerate(w):
            r, i, j = x
            prefix, suffix = w[:a], w[a + 1:]
            mid = alg.word_times_gen(prefix, (r - 1, i, j))
            for w2, c2 in mid.items():
                _accumulate(out, alg.word_times_word(w2, suffix).items(), c * c2 * (-r))
    return PBWElement(alg, out)


def grade_D(v: PBWElement) -> int:
    """Degree for ``D``; every loop factor ``X[r]`` contributes ``-r``."""
    degrees = {sum(-g[0] for g in w if g != TAU) for w in v.terms}
    if len(degrees) > 1:
        raise ValueError(f"inhomogeneous element, degrees {sorted(degrees)}")
    return degrees.pop() if degrees else 0


def evaluate_rho(v: PBWElement, mu: Sequence[Sequence]) -> DOp:
    """``E_ij[r] -> E_ij z^r + delta_{r,-1} mu_ij`` and ``tau -> -d/dz``."""
    n = v.alg.n
    if len(mu) != n:
        raise ValueError("mu has the wrong size")
    gl = GLn(n)
    images: Dict = {}

    def image(g):
        if g not in images:
            if g == TAU:
                images[g] = DOp.d(gl) * -1
            else:
                r, i, j = g
                terms = {(-r, 0): gl.E(i + 1, j + 1)}
                if r == -1 and mu[i][j]:
                    terms[(0, 0)] = gl.scalar(Fraction(mu[i][j]))
                images[g] = DOp(gl, terms)
        return images[g]

    total = DOp(gl)
    for w, c in v.terms.items():
        term = DOp.scalar(gl, c)
        for g in w:
            term = term * image(g)
        total = total + term
    return total


__all__ = [
    "TAU",
    "LoopAlgebra",
    "VacuumModule",
    "cdet_family",
    "central_term",
    "evaluate_rho",
    "grade_D",
    "is_ss_vector",
    "loop_bracket",
    "loop_mul",
    "segal_sugawara_vectors",
    "ss_family",
    "tau_expansion",
    "translate_T",
    "vacuum_apply",
]
