"""Differential operators with ``U(gl_n)`` coefficients, and matrix traces.

A :class:`DOp` is a finite sum ``sum u_kl z^-k d^l`` kept with powers of
``z`` to the left of powers of ``d = d/dz``.  Coefficients commute with both.

The matrix routines (:func:`minor`, :func:`cdet`, :func:`projector_trace`,
:func:`power_trace`) only use ``+`` and ``*`` of the entries, so they apply
equally to :class:`DOp`, loop-algebra elements and commutative polynomials.
Products of entries are always formed left to right.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations, product
from math import comb, factorial
from typing import Dict, Sequence, Tuple

from shiftalg.pbw import GLn, PBWElement, _accumulate

Key = Tuple[int, int]


def _rising(k: int, j: int) -> int:
    out = 1
    for i in range(j):
        out *= k + i
    return out


class DOp:
    """Element of ``U(gl_n)[z^-1, d/dz]`` in ``z``-left normal form."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: GLn, terms: Dict[Key, PBWElement] | None = None):
        self.alg = alg
        self.terms = {key: u for key, u in (terms or {}).items() if u}

    @classmethod
    def scalar(cls, alg: GLn, c) -> "DOp":
        return cls(alg, {(0, 0): alg.scalar(c)})

    @classmethod
    def coefficient(cls, u: PBWElement, k: int = 0, l: int = 0) -> "DOp":
        """``u * z^-k * d^l``."""
        return cls(u.alg, {(k, l): u})

    @classmethod
    def d(cls, alg: GLn, power: int = 1) -> "DOp":
        return cls(alg, {(0, power): alg.one()})

    @classmethod
    def zinv(cls, alg: GLn, power: int = 1) -> "DOp":
        return cls(alg, {(power, 0): alg.one()})

    def _coerce(self, other):
        if isinstance(other, DOp):
            if other.alg is not self.alg:
                raise ValueError("operators over different algebras")
            return other
        if isinstance(other, PBWElement):
            return DOp.coefficient(other)
        if isinstance(other, (int, Fraction)):
            return DOp.scalar(self.alg, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for key, u in other.terms.items():
            out[key] = out[key] + u if key in out else u
        return DOp(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return DOp(self.alg, {key: -u for key, u in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return DOp(self.alg, {key: u * other for key, u in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: Dict[Key, Dict] = {}
        for (k1, l1), u in self.terms.items():
            for (k2, l2), v in other.terms.items():
                uv = u * v
                if not uv:
                    continue
                # d^l1 z^-k2 = sum_j C(l1, j) (-1)^j k2(k2+1)...(k2+j-1) z^(-k2-j) d^(l1-j)
                for j in range(0, (l1 if k2 else 0) + 1):
                    c = comb(l1, j) * _rising(k2, j) * (-1) ** j
                    key = (k1 + k2 + j, l1 - j + l2)
                    _accumulate(out.setdefault(key, {}), uv.terms.items(), c)
        return DOp(self.alg, {key: PBWElement(self.alg, t) for key, t in out.items()})

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        if isinstance(other, PBWElement):
            return DOp.coefficient(other) * self
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, PBWElement)):
            other = self._coerce(other)
        if not isinstance(other, DOp):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def d_coefficient(self, l: int) -> Dict[int, PBWElement]:
        """``{k: u_kl}`` for a fixed power ``l`` of ``d``."""
        return {k: u for (k, ll), u in self.terms.items() if ll == l}

    def d_degree(self) -> int:
        return max((l for _, l in self.terms), default=-1)

    def __str__(self):
        if not self.terms:
            return "0"
        keys = sorted(self.terms, key=lambda kl: (-kl[1], -kl[0]))
        return " + ".join(f"z^-{k}*∂^{l}*({self.terms[k, l]})" for k, l in keys)

    def __repr__(self):
        return f"DOp({str(self)!r})"


def dop_mul(a: DOp, b: DOp) -> DOp:
    return a * b


def dop_apply_to_one(a: DOp) -> Dict[int, PBWElement]:
    """Constant term of ``a`` acting on ``1`` (``d 1 = 0``) as ``{k: coeff of z^-k}``."""
    return a.d_coefficient(0)


def standard_matrix(mu: Sequence[Sequence], with_d: bool = True) -> list:
    """``M = -d + mu + E z^-1`` (or ``mu + E z^-1`` when ``with_d`` is false)."""
    n = len(mu)
    alg = GLn(n)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            terms = {(1, 0): alg.E(i + 1, j + 1)}
            c = Fraction(mu[i][j])
            if c:
                terms[(0, 0)] = alg.scalar(c)
            if with_d and i == j:
                terms[(0, 1)] = alg.scalar(-1)
            row.append(DOp(alg, terms))
        rows.append(row)
    return rows


def derivative_part(n: int) -> list:
    """``-d + E z^-1``: the ``mu``-free part of the standard matrix."""
    return standard_matrix([[0] * n for _ in range(n)])


# generic matrix routines ----------------------------------------------------

def _zero_like(x):
    return x * 0


def permutation_sign(p: Sequence[int]) -> int:
    sign = 1
    p = list(p)
    seen = [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def ordered_product(factors: Sequence):
    it = iter(factors)
    acc = next(it)
    for f in it:
        acc = acc * f
    return acc


def minor(M: Sequence[Sequence], rows: Sequence[int], cols: Sequence[int]):
    """Column-ordered minor ``sum_s sgn(s) M[b_s(1)][c_1] ... M[b_s(k)][c_k]``.

    ``rows`` and ``cols`` are 0-based and sorted increasingly.
    """
    rows, cols = list(rows), list(cols)
    if len(rows) != len(cols):
        raise ValueError("row and column sets differ in size")
    if list(rows) != sorted(rows) or list(cols) != sorted(cols):
        raise ValueError("row and column indices must be increasing")
    zero = _zero_like(M[0][0])
    if not rows:
        return zero + 1
    total = zero
    for p in permutations(range(len(rows))):
        factors = [M[rows[p[a]]][cols[a]] for a in range(len(cols))]
        if any(not f for f in factors):
            continue
        term = ordered_product(factors)
        total = total + term if permutation_sign(p) > 0 else total - term
    return total


def cdet(M: Sequence[Sequence]):
    """Column-determinant: factors taken in column order."""
    idx = range(len(M))
    return minor(M, idx, idx)


def principal_minor_sum(M: Sequence[Sequence], m: int):
    """Sum of the principal column-minors of size ``m``."""
    zero = _zero_like(M[0][0])
    total = zero
    for I in combinations(range(len(M)), m):
        total = total + minor(M, I, I)
    return total


def projector_weights(kind: str, m: int, n: int) -> Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], Fraction]:
    """Nonzero entries of the (anti)symmetrizer on ``(C^n)^{(x)m}``.

    Keys are ``(i, j)`` multi-indices; ``j`` runs over rearrangements of ``i``.
    The weight is ``(1/m!) sum_{s : i o s = j} sgn(s)`` (or without the sign).
    """
    if kind not in ("antisymmetrizer", "symmetrizer"):
        raise ValueError(f"unknown projector {kind!r}")
    if m < 1:
        raise ValueError("m must be positive")
    if kind == "antisymmetrizer" and m > n:
        raise ValueError(f"antisymmetrizer vanishes for m={m} > n={n}")
    weights: Dict = {}
    inv = Fraction(1, factorial(m))
    if kind == "antisymmetrizer":
        for I in combinations(range(n), m):
            for i in permutations(I):
                for s in permutations(range(m)):
                    j = tuple(i[s[a]] for a in range(m))
                    key = (i, j)
                    weights[key] = weights.get(key, 0) + permutation_sign(s) * inv
    else:
        for i in product(range(n), repeat=m):
            for s in permutations(range(m)):
                j = tuple(i[s[a]] for a in range(m))
                key = (i, j)
                weights[key] = weights.get(key, 0) + inv
    return {k: w for k, w in weights.items() if w}


def partial_trace_last(weights: Dict, n: int) -> Dict:
    """Trace over the last tensor factor of a projector given by its weights."""
    out: Dict = {}
    for (i, j), w in weights.items():
        if i[-1] == j[-1]:
            key = (i[:-1], j[:-1])
            out[key] = out.get(key, 0) + w
    return {k: w for k, w in out.items() if w}


def projector_trace(kind: str, m: int, M: Sequence[Sequence]):
    """``tr_{1..m} P M_1 ... M_m`` for ``P`` the (anti)symmetrizer.

    Expanded as ``sum w(i, j) M[i_1][j_1] ... M[i_m][j_m]`` over the nonzero
    projector entries, coefficients multiplied in tensor-factor order.
    """
    n = len(M)
    total = _zero_like(M[0][0])
    for (i, j), w in sorted(projector_weights(kind, m, n).items()):
        factors = [M[i[a]][j[a]] for a in range(m)]
        if any(not f for f in factors):
            continue
        total = total + ordered_product(factors) * w
    return total


def sym_trace(projector: str, m: int, M: Sequence[Sequence]):
    return projector_trace(projector, m, M)


def matrix_product(A: Sequence[Sequence], B: Sequence[Sequence]) -> list:
    n = len(A)
    zero = _zero_like(A[0][0])
    out = []
    for i in range(n):
        row = []
        for k in range(len(B[0])):
            acc = zero
            for j in range(len(B)):
                if A[i][j] and B[j][k]:
                    acc = acc + A[i][j] * B[j][k]
            row.append(acc)
        out.append(row)
    return out


def power_trace(m: int, M: Sequence[Sequence]):
    """``tr M^m`` with entries composed in multiplication order."""
    if m < 1:
        raise ValueError("m must be positive")
    P = [list(r) for r in M]
    for _ in range(m - 1):
        P = matrix_product(P, M)
    total = _zero_like(M[0][0])
    for i in range(len(M)):
        total = total + P[i][i]
    return total
