"""PBW normal form arithmetic in universal enveloping algebras.

An element is a dict mapping sorted generator words to ``Fraction``
coefficients.  :class:`PBWAlgebra` straightens products by adjacent swaps
``x*g -> g*x + [x, g]`` and memoizes the normal form of every
``word * generator`` product it has seen.

:class:`GLn` is ``U(gl_n)`` with generators ``E_ij`` indexed row-major
(``E_11 < E_12 < ... < E_nn``); symbols live in ``S(gl_n)`` as
:class:`~shiftalg.core.CPoly` over the variables ``E[i,j]``.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from typing import Dict, Hashable, Mapping, Tuple

from shiftalg.core import CPoly, cpoly_diff, format_coefficient, parse_product_terms

Word = Tuple[Hashable, ...]


class ContextMismatch(ValueError):
    pass


class FiltrationError(ValueError):
    pass


def _accumulate(out: dict, items, scale=1) -> None:
    for w, c in items:
        v = out.get(w, 0) + c * scale
        if v:
            out[w] = v
        else:
            out.pop(w, None)


class PBWAlgebra:
    """Abstract enveloping algebra; subclasses supply ``bracket`` and naming.

    Generator keys must be totally ordered by ``<``.  ``bracket(x, g)`` for
    ``x > g`` returns a dict ``{generator: coeff}``.
    """

    def __init__(self):
        self._cache: Dict[Tuple[Word, Hashable], Dict[Word, Fraction]] = {}
        self._lock = threading.Lock()

    def bracket(self, x, g) -> Dict[Hashable, Fraction]:
        raise NotImplementedError

    def generator_name(self, g) -> str:
        raise NotImplementedError

    def parse_generator(self, name: str):
        raise NotImplementedError

    def clear_cache(self) -> None:
        with self._lock:
            self._cache.clear()

    # elements -------------------------------------------------------------
    def element(self, terms: Mapping[Word, object] | None = None) -> "PBWElement":
        """Element from a dict of words; unsorted words are straightened."""
        out: Dict[Word, Fraction] = {}
        for w, c in (terms or {}).items():
            c = Fraction(c)
            if not c:
                continue
            w = tuple(w)
            if all(w[i] <= w[i + 1] for i in range(len(w) - 1)):
                _accumulate(out, [(w, c)])
            else:
                _accumulate(out, self.normal_word(w).items(), c)
        return PBWElement(self, out)

    def scalar(self, c) -> "PBWElement":
        return PBWElement(self, {(): Fraction(c)} if c else {})

    def gen(self, g) -> "PBWElement":
        return PBWElement(self, {(g,): Fraction(1)})

    def zero(self) -> "PBWElement":
        return PBWElement(self, {})

    def one(self) -> "PBWElement":
        return self.scalar(1)

    # straightening --------------------------------------------------------
    def word_times_gen(self, w: Word, g) -> Dict[Word, Fraction]:
        """Normal form of ``w * g`` for a sorted word ``w``."""
        if not w or w[-1] <= g:
            return {w + (g,): Fraction(1)}
        key = (w, g)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        head, x = w[:-1], w[-1]
        out: Dict[Word, Fraction] = {}
        # head*x*g = (head*g)*x + head*[x, g]
        for w2, c2 in self.word_times_gen(head, g).items():
            _accumulate(out, self.word_times_gen(w2, x).items(), c2)
        for h, c in self.bracket(x, g).items():
            _accumulate(out, self.word_times_gen(head, h).items(), c)
        with self._lock:
            self._cache.setdefault(key, out)
        return out

    def word_times_word(self, a: Word, b: Word) -> Dict[Word, Fraction]:
        if not a or not b or a[-1] <= b[0]:
            return {a + b: Fraction(1)}
        cur: Dict[Word, Fraction] = {a: Fraction(1)}
        for g in b:
            nxt: Dict[Word, Fraction] = {}
            for w, c in cur.items():
                _accumulate(nxt, self.word_times_gen(w, g).items(), c)
            cur = nxt
        return cur

    def normal_word(self, w: Word) -> Dict[Word, Fraction]:
        """Normal form of an arbitrary (possibly unsorted) word."""
        cur: Dict[Word, Fraction] = {(): Fraction(1)}
        for g in w:
            nxt: Dict[Word, Fraction] = {}
            for v, c in cur.items():
                _accumulate(nxt, self.word_times_gen(v, g).items(), c)
            cur = nxt
        return cur

    def word_text(self, w: Word) -> str:
        parts = []
        i = 0
        while i < len(w):
            j = i
            while j < len(w) and w[j] == w[i]:
                j += 1
            name = self.generator_name(w[i])
            parts.append(name if j - i == 1 else f"{name}^{j - i}")
            i = j
        return "*".join(parts)

    def parse(self, text: str) -> "PBWElement":
        """Inverse of ``str``; factors are multiplied in the written order."""
        result = self.zero()
        for coeff, factors in parse_product_terms(text):
            term = self.scalar(coeff)
            for name, power in factors:
                g = self.gen(self.parse_generator(name))
                for _ in range(power):
                    term = term * g
            result = result + term
        return result


class PBWElement:
    """Immutable element of a :class:`PBWAlgebra` in normal form."""

    __slots__ = ("alg", "terms", "_hash")

    def __init__(self, alg: PBWAlgebra, terms: Dict[Word, Fraction]):
        self.alg = alg
        self.terms = terms
        self._hash = None

    def _coerce(self, other):
        if isinstance(other, PBWElement):
            if other.alg is not self.alg:
                raise ContextMismatch("elements belong to different algebras")
            return other
        if isinstance(other, (int, Fraction)):
            return self.alg.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        _accumulate(out, other.terms.items())
        return PBWElement(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return PBWElement(self.alg, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self.alg.zero()
            return PBWElement(self.alg, {w: c * other for w, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: Dict[Word, Fraction] = {}
        alg = self.alg
        for wa, ca in self.terms.items():
            for wb, cb in other.terms.items():
                _accumulate(out, alg.word_times_word(wa, wb).items(), ca * cb)
        return PBWElement(alg, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, k: int):
        result = self.alg.one()
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.alg.scalar(other)
        if not isinstance(other, PBWElement):
            return NotImplemented
        return self.alg is other.alg and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Filtration degree; ``-1`` for zero."""
        return max((len(w) for w in self.terms), default=-1)

    def is_normal(self) -> bool:
        return all(all(w[i] <= w[i + 1] for i in range(len(w) - 1)) for w in self.terms)

    def scalar_part(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def component(self, d: int) -> "PBWElement":
        return PBWElement(self.alg, {w: c for w, c in self.terms.items() if len(w) == d})

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: (-len(t[0]), t[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        return "".join(
            format_coefficient(c, self.alg.word_text(w), k == 0)
            for k, (w, c) in enumerate(self.sorted_terms())
        )

    def __repr__(self):
        return f"<{type(self.alg).__name__} element {str(self)}>"


def u_commutator(a: PBWElement, b: PBWElement) -> PBWElement:
    return a * b - b * a


class GLn(PBWAlgebra):
    """``U(gl_n)``; generator ``k`` is ``E_{i+1, j+1}`` with ``k = i*n + j``.

    Instances are cached per ``n`` so that elements built in different places
    share one straightening cache.
    """

    _instances: Dict[int, "GLn"] = {}

    def __new__(cls, n: int):
        inst = cls._instances.get(n)
        if inst is None:
            inst = super().__new__(cls)
            inst._init(n)
            cls._instances[n] = inst
        return inst

    def __init__(self, n: int):
        pass

    def _init(self, n: int):
        if n < 1:
            raise ValueError("n must be positive")
        PBWAlgebra.__init__(self)
        self.n = n
        self.names = tuple(f"E[{i + 1},{j + 1}]" for i in range(n) for j in range(n))
        self._brackets = {}
        for x in range(n * n):
            i, j = divmod(x, n)
            for g in range(n * n):
                k, l = divmod(g, n)
                out: Dict[int, Fraction] = {}
                if k == j:
                    out[i * n + l] = out.get(i * n + l, 0) + 1
                if i == l:
                    out[k * n + j] = out.get(k * n + j, 0) - 1
                self._brackets[x, g] = {h: Fraction(c) for h, c in out.items() if c}

    def __repr__(self):
        return f"GLn({self.n})"

    def __reduce__(self):
        return (GLn, (self.n,))

    def index(self, i: int, j: int) -> int:
        """Generator key for the 1-based pair ``(i, j)``."""
        return (i - 1) * self.n + (j - 1)

    def E(self, i: int, j: int) -> PBWElement:
        """Basis element ``E_ij`` (1-based indices)."""
        return self.gen(self.index(i, j))

    def matrix(self) -> list:
        return [[self.E(i, j) for j in range(1, self.n + 1)] for i in range(1, self.n + 1)]

    def bracket(self, x, g):
        return self._brackets[x, g]

    def generator_name(self, g) -> str:
        return self.names[g]

    def parse_generator(self, name: str):
        try:
            return self.names.index(name.replace(" ", ""))
        except ValueError:
            raise ValueError(f"unknown generator {name!r} for gl_{self.n}") from None

    # symmetric algebra ----------------------------------------------------
    def s_vars(self) -> tuple:
        return self.names

    def s_gen(self, i: int, j: int) -> CPoly:
        e = [0] * (self.n * self.n)
        e[self.index(i, j)] = 1
        return CPoly(self.names, {tuple(e): 1})

    def s_zero(self) -> CPoly:
        return CPoly(self.names)


def symbol(a: PBWElement, d: int) -> CPoly:
    """Image of ``a`` in the degree-``d`` component of ``S(gl_n)``.

    Raises :class:`FiltrationError` when ``a`` has terms above degree ``d``.
    """
    alg = a.alg
    if not isinstance(alg, GLn):
        raise TypeError("symbol is defined for U(gl_n) elements")
    if a.degree() > d:
        raise FiltrationError(f"element has filtration degree {a.degree()} > {d}")
    size = alg.n * alg.n
    out = {}
    for w, c in a.terms.items():
        if len(w) != d:
            continue
        e = [0] * size
        for g in w:
            e[g] += 1
        out[tuple(e)] = c
    return CPoly(alg.names, out)


def poisson(p: CPoly, q: CPoly, n: int | None = None) -> CPoly:
    """Lie-Poisson bracket on ``S(gl_n)`` (variables ``E[i,j]``)."""
    if p.vars != q.vars:
        raise ContextMismatch("symbols over different variable tables")
    if n is None:
        n = int(round(len(p.vars) ** 0.5))
    alg = GLn(n)
    if p.vars != alg.names:
        raise ContextMismatch("poisson expects the E[i,j] variable table of gl_n")
    dp = {}
    dq = {}
    used_p = p.used_variables()
    used_q = q.used_variables()
    for x, name in enumerate(alg.names):
        if name in used_p:
            dp[x] = cpoly_diff(p, name)
        if name in used_q:
            dq[x] = cpoly_diff(q, name)
    gens = CPoly.variables(alg.names)
    result = CPoly(alg.names)
    for x, px in dp.items():
        for g, qg in dq.items():
            br = alg._brackets[x, g]
            if not br:
                continue
            lin = CPoly(alg.names)
            for h, c in br.items():
                lin = lin + gens[h] * c
            result = result + px * qg * lin
    return result
