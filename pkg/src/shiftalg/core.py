"""Exact scalars, sparse commutative polynomials and Young diagrams.

Scalars are :class:`fractions.Fraction` throughout.  A :class:`CPoly` is a
dict from exponent tuples to nonzero ``Fraction`` coefficients over a fixed,
ordered table of variable names.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Dict, Iterable, Mapping, Sequence, Tuple

Exponent = Tuple[int, ...]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; decimals and floats are rejected."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"rationals must be given as 'p/q' strings or ints, got {text!r}")
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"not a rational literal: {text!r}")
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return Fraction(int(m.group(1)), den)


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_coefficient(c: Fraction, body: str, first: bool) -> str:
    """Render ``c*body`` as a signed term of a sum (``body`` may be empty)."""
    neg = c < 0
    mag = -c if neg else c
    if body:
        text = body if mag == 1 else f"{format_rational(mag)}*{body}"
    else:
        text = format_rational(mag)
    if first:
        return f"-{text}" if neg else text
    return f" - {text}" if neg else f" + {text}"


def _split_terms(text: str) -> list:
    """Split a sum at top-level ``+``/``-`` signs; returns (sign, term) pairs."""
    out = []
    depth = 0
    cur = []
    sign = 1
    prev = ""
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if depth == 0 and ch in "+-" and prev not in ("^", "/", "*", ","):
            body = "".join(cur).strip()
            if body:
                out.append((sign, body))
                sign = 1
            sign *= -1 if ch == "-" else 1
            cur = []
        else:
            cur.append(ch)
        if not ch.isspace():
            prev = ch
    body = "".join(cur).strip()
    if not body:
        raise ValueError(f"dangling sign or empty expression: {text!r}")
    out.append((sign, body))
    return out


def parse_product_terms(text: str) -> list:
    """Parse ``c*f1^p1*f2*...`` sums into ``[(coeff, [(factor, power), ...])]``.

    Factors keep their textual order; callers multiply them in that order.
    """
    if text.strip() in ("0", ""):
        return []
    terms = []
    for sign, body in _split_terms(text):
        coeff = Fraction(sign)
        factors = []
        for part in _split_factors(body):
            if _RATIONAL_RE.match(part):
                coeff *= parse_rational(part)
                continue
            base, power = part, 1
            if "^" in part:
                base, exp = part.rsplit("^", 1)
                power = int(exp)
            factors.append((base.strip(), power))
        terms.append((coeff, factors))
    return terms


def _split_factors(body: str) -> list:
    parts, depth, cur = [], 0, []
    for ch in body:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == "*" and depth == 0:
            parts.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur).strip())
    return [p for p in parts if p]


class CPoly:
    """Sparse commutative polynomial with rational coefficients.

    >>> x, y = CPoly.variables(("x", "y"))
    >>> str((x + y) * (x - y))
    'x^2 - y^2'
    """

    __slots__ = ("vars", "terms", "_index", "_hash")

    def __init__(self, vars: Sequence[str], terms: Mapping[Exponent, object] | None = None):
        self.vars = tuple(vars)
        self._index = None
        self._hash = None
        clean: Dict[Exponent, Fraction] = {}
        if terms:
            nv = len(self.vars)
            for e, c in terms.items():
                if len(e) != nv:
                    raise ValueError("exponent length does not match variable table")
                c = Fraction(c)
                if c:
                    clean[tuple(e)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, vars, terms) -> "CPoly":
        p = cls.__new__(cls)
        p.vars = vars
        p.terms = terms
        p._index = None
        p._hash = None
        return p

    @classmethod
    def variables(cls, names: Sequence[str]) -> tuple:
        names = tuple(names)
        out = []
        for i in range(len(names)):
            e = [0] * len(names)
            e[i] = 1
            out.append(cls._raw(names, {tuple(e): Fraction(1)}))
        return tuple(out)

    @classmethod
    def const(cls, vars: Sequence[str], c) -> "CPoly":
        return cls(vars, {(0,) * len(vars): c})

    @property
    def index(self) -> dict:
        if self._index is None:
            self._index = {v: i for i, v in enumerate(self.vars)}
        return self._index

    def var(self, name: str) -> "CPoly":
        i = self.index[name]
        e = [0] * len(self.vars)
        e[i] = 1
        return CPoly._raw(self.vars, {tuple(e): Fraction(1)})

    # arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "CPoly":
        if isinstance(other, CPoly):
            if other.vars != self.vars:
                raise ValueError(f"variable tables differ: {self.vars} vs {other.vars}")
            return other
        if isinstance(other, (int, Fraction)):
            return CPoly.const(self.vars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return CPoly._raw(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return CPoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

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
                return CPoly._raw(self.vars, {})
            return CPoly._raw(self.vars, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: Dict[Exponent, Fraction] = {}
        get = out.get
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    del out[e]
        return CPoly._raw(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = CPoly.const(self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CPoly.const(self.vars, other)
        if not isinstance(other, CPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # structure ----------------------------------------------------------
    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = self.index[name]
        return max((e[i] for e in self.terms), default=-1)

    def used_variables(self) -> set:
        used = set()
        for e in self.terms:
            used.update(self.vars[i] for i, a in enumerate(e) if a)
        return used

    def coeff(self, name: str, d: int) -> "CPoly":
        """Coefficient of ``name**d`` as a polynomial over the same table."""
        i = self.index[name]
        out = {}
        for e, c in self.terms.items():
            if e[i] == d:
                e2 = list(e)
                e2[i] = 0
                out[tuple(e2)] = c
        return CPoly._raw(self.vars, out)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def restrict(self, vars: Sequence[str]) -> "CPoly":
        """Re-express over a smaller table; dropped variables must be unused."""
        vars = tuple(vars)
        idx = self.index
        pos = [idx[v] for v in vars]
        keep = set(pos)
        out = {}
        for e, c in self.terms.items():
            if any(a for i, a in enumerate(e) if i not in keep):
                raise ValueError("restriction would drop a used variable")
            out[tuple(e[p] for p in pos)] = c
        return CPoly._raw(vars, out)

    def extend(self, vars: Sequence[str]) -> "CPoly":
        """Re-express over a larger table containing all current variables."""
        vars = tuple(vars)
        where = {v: i for i, v in enumerate(vars)}
        pos = [where[v] for v in self.vars]
        out = {}
        for e, c in self.terms.items():
            e2 = [0] * len(vars)
            for p, a in zip(pos, e):
                e2[p] = a
            out[tuple(e2)] = c
        return CPoly._raw(vars, out)

    def substitute(self, values: Mapping[str, "CPoly"]) -> "CPoly":
        """Replace variables by polynomials over the same table."""
        result = CPoly._raw(self.vars, {})
        subs = [(i, values[v]) for i, v in enumerate(self.vars) if v in values]
        for e, c in self.terms.items():
            e2 = list(e)
            for i, _ in subs:
                e2[i] = 0
            term = CPoly._raw(self.vars, {tuple(e2): c})
            for i, q in subs:
                if e[i]:
                    term = term * q ** e[i]
            result = result + term
        return result

    def sorted_terms(self) -> list:
        """Terms in graded-lexicographic order, largest first."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, (e, c) in enumerate(self.sorted_terms()):
            factors = []
            for name, a in zip(self.vars, e):
                if a == 1:
                    factors.append(name)
                elif a > 1:
                    factors.append(f"{name}^{a}")
            parts.append(format_coefficient(c, "*".join(factors), k == 0))
        return "".join(parts)

    def __repr__(self):
        return f"CPoly({str(self)!r})"

    @classmethod
    def parse(cls, text: str, vars: Sequence[str]) -> "CPoly":
        vars = tuple(vars)
        where = {v: i for i, v in enumerate(vars)}
        out: Dict[Exponent, Fraction] = {}
        for coeff, factors in parse_product_terms(text):
            e = [0] * len(vars)
            for name, power in factors:
                if name not in where:
                    raise ValueError(f"unknown variable {name!r}")
                e[where[name]] += power
            key = tuple(e)
            out[key] = out.get(key, 0) + coeff
        return cls(vars, out)


def cpoly_eval(p: CPoly, assignment: Mapping[str, object]) -> Fraction:
    """Exact value of ``p`` at a point; every used variable must be assigned."""
    missing = p.used_variables() - set(assignment)
    if missing:
        raise KeyError(f"unassigned variables: {sorted(missing)}")
    point = [Fraction(assignment[v]) if v in assignment else Fraction(0) for v in p.vars]
    total = Fraction(0)
    for e, c in p.terms.items():
        term = c
        for x, a in zip(point, e):
            if a:
                term *= x ** a
        total += term
    return total


def cpoly_diff(p: CPoly, name: str) -> CPoly:
    if name not in p.index:
        raise KeyError(f"unknown variable {name!r}")
    i = p.index[name]
    out = {}
    for e, c in p.terms.items():
        a = e[i]
        if a:
            e2 = list(e)
            e2[i] = a - 1
            out[tuple(e2)] = c * a
    return CPoly._raw(p.vars, out)


def cpoly_gradient_at(p: CPoly, names: Sequence[str], point: Mapping[str, Fraction]) -> list:
    """Values of all partial derivatives ``d p / d name`` at ``point``."""
    idx = [p.index[v] for v in names]
    x = [Fraction(point.get(v, 0)) for v in p.vars]
    grad = [Fraction(0)] * len(names)
    for e, c in p.terms.items():
        for slot, i in enumerate(idx):
            a = e[i]
            if not a:
                continue
            term = c * a
            for j, (xj, b) in enumerate(zip(x, e)):
                if j == i:
                    b -= 1
                if b:
                    term *= xj ** b
                    if not term:
                        break
            grad[slot] += term
    return grad


# univariate helpers ------------------------------------------------------

def _divisors(k: int) -> list:
    k = abs(k)
    small, large = [], []
    for d in range(1, isqrt(k) + 1):
        if k % d == 0:
            small.append(d)
            if d != k // d:
                large.append(k // d)
    return small + large[::-1]


def _horner(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _deflate(coeffs: list, r: Fraction) -> list:
    """Divide by ``(t - r)``; ``coeffs[i]`` is the coefficient of ``t**i``."""
    d = len(coeffs) - 1
    out = [Fraction(0)] * d
    acc = Fraction(0)
    for i in range(d, 0, -1):
        acc = acc * r + coeffs[i]
        out[i - 1] = acc
    return out


def univariate_coefficients(p: CPoly) -> list:
    """Dense coefficient list (index = power) of a polynomial in one variable."""
    used = p.used_variables()
    if len(used) > 1:
        raise ValueError(f"not univariate: uses {sorted(used)}")
    if not used:
        return [p.constant_term()] if p else []
    i = p.index[used.pop()]
    deg = max(e[i] for e in p.terms)
    coeffs = [Fraction(0)] * (deg + 1)
    for e, c in p.terms.items():
        coeffs[e[i]] = c
    return coeffs


def rational_roots(p) -> tuple:
    """Rational roots with multiplicity of a nonzero univariate polynomial.

    ``p`` is a univariate :class:`CPoly` or a coefficient list (index = power).
    Returns ``(roots, remainder_degree)`` where ``roots`` is a list of
    ``(root, multiplicity)`` sorted by root and ``remainder_degree`` is the
    degree of the cofactor with no rational roots.
    """
    coeffs = univariate_coefficients(p) if isinstance(p, CPoly) else [Fraction(c) for c in p]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        raise ValueError("rational_roots of the zero polynomial")
    found: Dict[Fraction, int] = {}
    while len(coeffs) > 1 and coeffs[0] == 0:
        coeffs = coeffs[1:]
        found[Fraction(0)] = found.get(Fraction(0), 0) + 1
    while len(coeffs) > 1:
        den = 1
        for c in coeffs:
            den = den * c.denominator // _gcd(den, c.denominator)
        ints = [int(c * den) for c in coeffs]
        root = None
        for pnum in _divisors(ints[0]):
            for q in _divisors(ints[-1]):
                for cand in (Fraction(pnum, q), Fraction(-pnum, q)):
                    if _horner(coeffs, cand) == 0:
                        root = cand
                        break
                if root is not None:
                    break
            if root is not None:
                break
        if root is None:
            break
        found[root] = found.get(root, 0) + 1
        coeffs = _deflate(coeffs, root)
    return sorted(found.items()), len(coeffs) - 1


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


# Young diagrams -----------------------------------------------------------

@dataclass(frozen=True)
class YoungDiagram:
    rows: Tuple[int, ...] = ()

    def __post_init__(self):
        rows = tuple(int(r) for r in self.rows)
        if any(r < 0 for r in rows):
            raise ValueError(f"negative row length in {rows}")
        if any(rows[i] < rows[i + 1] for i in range(len(rows) - 1)):
            raise ValueError(f"rows must be weakly decreasing: {rows}")
        while rows and rows[-1] == 0:
            rows = rows[:-1]
        object.__setattr__(self, "rows", rows)

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def __getitem__(self, i):
        return self.rows[i]

    def row(self, l: int) -> int:
        """Length of row ``l`` (1-based); zero past the last row."""
        return self.rows[l - 1] if 1 <= l <= len(self.rows) else 0

    @property
    def size(self) -> int:
        return sum(self.rows)

    def conjugate(self) -> "YoungDiagram":
        if not self.rows:
            return YoungDiagram()
        return YoungDiagram(tuple(sum(1 for r in self.rows if r > c) for c in range(self.rows[0])))

    def contains(self, other: "YoungDiagram") -> bool:
        return all(self.row(l) >= other.row(l) for l in range(1, len(other.rows) + 1))

    def boxes(self) -> list:
        """1-based (row, column) pairs."""
        return [(i + 1, j + 1) for i, r in enumerate(self.rows) for j in range(r)]

    def below(self, l: int) -> int:
        """Number of boxes strictly below row ``l``."""
        return sum(self.rows[l:])

    @classmethod
    def staircase(cls, n: int) -> "YoungDiagram":
        return cls(tuple(range(n, 0, -1)))

    def __str__(self):
        return "(" + ",".join(map(str, self.rows)) + ")"


def as_fraction_matrix(rows: Iterable[Iterable]) -> list:
    out = [[parse_rational(x) if isinstance(x, str) else Fraction(x) for x in row] for row in rows]
    if any(len(r) != len(out) for r in out):
        raise ValueError("matrix must be square")
    return out
