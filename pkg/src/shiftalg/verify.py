"""Verification suites over generator tables, with JSON-serializable reports."""

from __future__ import annotations

import hashlib
import json
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from shiftalg.core import CPoly, YoungDiagram, as_fraction_matrix, cpoly_gradient_at, format_rational
from shiftalg.linalg import bareiss_rank, centralizer_equations, nullspace_dim
from shiftalg.pbw import FiltrationError, GLn, poisson, symbol, u_commutator
from shiftalg import shift as S


def mu_digest(mu: Sequence[Sequence]) -> str:
    canon = json.dumps([[format_rational(Fraction(x)) for x in row] for row in mu], separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()[:16]


@dataclass
class VerificationReport:
    suite: str
    n: int
    mu_digest: str
    cases: int = 0
    failures: List[dict] = field(default_factory=list)
    elapsed_ms: Optional[float] = None
    info: Dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self, timing: bool = True) -> dict:
        out = {
            "suite": self.suite,
            "n": self.n,
            "mu_digest": self.mu_digest,
            "cases": self.cases,
            "failures": self.failures,
            "elapsed_ms": round(self.elapsed_ms, 3) if timing and self.elapsed_ms is not None else None,
        }
        if self.info:
            out["info"] = self.info
        return out


class _Timer:
    def __init__(self, report: VerificationReport):
        self.report = report

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self.report

    def __exit__(self, *exc):
        self.report.elapsed_ms = (time.perf_counter() - self.t0) * 1000.0
        return False


def _label(mk) -> str:
    return f"({mk[0]},{mk[1]})" if isinstance(mk, tuple) else str(mk)


def _named(items) -> List[Tuple[str, object]]:
    if isinstance(items, S.GeneratorTable):
        return [(_label(mk), u) for mk, u in items.generators().items()]
    if isinstance(items, Mapping):
        return [(_label(k), v) for k, v in items.items()]
    return [(str(i), v) for i, v in enumerate(items)]


def _table_meta(items, n=None, mu=None):
    if isinstance(items, S.GeneratorTable):
        return items.n, mu_digest(items.mu)
    return n or 0, mu_digest(mu) if mu is not None else ""


def commutativity_suite(items, sample: Optional[int] = None, seed: int = 0, n=None, mu=None) -> VerificationReport:
    """All pairwise commutators of the generators vanish in ``U(gl_n)``.

    ``sample`` restricts to that many pairs drawn with ``seed``.
    """
    n, dig = _table_meta(items, n, mu)
    named = [(k, u) for k, u in _named(items) if u]
    pairs = list(combinations(range(len(named)), 2))
    if sample is not None and sample < len(pairs):
        pairs = sorted(random.Random(seed).sample(pairs, sample))
    report = VerificationReport("commutativity", n, dig)
    with _Timer(report):
        for a, b in pairs:
            (na, ua), (nb, ub) = named[a], named[b]
            c = u_commutator(ua, ub)
            report.cases += 1
            if c:
                report.failures.append({"pair": [na, nb], "commutator": str(c)})
    return report


def poisson_suite(items, n=None, mu=None) -> VerificationReport:
    """All pairwise Lie-Poisson brackets of the symbols vanish in ``S(gl_n)``."""
    if isinstance(items, S.GeneratorTable):
        n, dig = items.n, mu_digest(items.mu)
        named = [(_label(mk), p) for mk, p in sorted(items.symbols.items()) if mk[1] < mk[0]]
    else:
        n, dig = _table_meta(items, n, mu)
        named = _named(items)
    named = [(k, p) for k, p in named if p]
    report = VerificationReport("poisson", n, dig)
    with _Timer(report):
        for (na, pa), (nb, pb) in combinations(named, 2):
            c = poisson(pa, pb, n)
            report.cases += 1
            if c:
                report.failures.append({"pair": [na, nb], "bracket": str(c)})
    return report


@dataclass
class RankResult:
    rank: int
    expected: int
    attempts: int
    status: str
    point: Optional[List[str]] = None

    def __iter__(self):
        return iter((self.rank, self.expected))


def random_point(rng: random.Random, size: int) -> List[Fraction]:
    return [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(size)]


def independence_rank(symbols: Mapping[Tuple[int, int], CPoly], sel: S.SkewSelection, seed: int = 0,
                      retries: int = 5, expected: Optional[int] = None) -> RankResult:
    """Exact Jacobian rank of the retained symbols at random rational points.

    Stops at the first point reaching ``expected``; more than ``expected`` is
    reported as ``excess`` and exhausting ``retries`` as ``inconclusive``.
    """
    n = sel.n
    names = GLn(n).names
    expected = len(sel.retained) if expected is None else expected
    polys = [symbols[mk] for mk in sel.retained]
    rng = random.Random(seed)
    best = -1
    point = None
    for attempt in range(1, retries + 1):
        pt = random_point(rng, len(names))
        at = dict(zip(names, pt))
        jac = [cpoly_gradient_at(p, names, at) for p in polys]
        r = bareiss_rank(jac) if jac else 0
        if r > expected:
            return RankResult(r, expected, attempt, "excess", [format_rational(x) for x in pt])
        if r > best:
            best, point = r, pt
        if r == expected:
            return RankResult(r, expected, attempt, "ok", [format_rational(x) for x in pt])
    return RankResult(best, expected, retries, "inconclusive", [format_rational(x) for x in point])


def centralizer_dim(mu=None, jd: Optional[S.JordanData] = None) -> int:
    """``dim gl_n^mu`` by linear algebra and by the partition formula; both must equal ``2|gamma| + n``."""
    if jd is None:
        jd = S.jordan_data(mu)
    if mu is None:
        mu = jd.matrix()
    mu = as_fraction_matrix(mu)
    n = len(mu)
    by_rank = nullspace_dim(centralizer_equations(mu))
    by_partition = jd.centralizer_dim()
    by_gamma = 2 * jd.gamma().size + n
    if not by_rank == by_partition == by_gamma:
        raise AssertionError(
            f"centralizer dimension routes disagree: rank {by_rank}, partition {by_partition}, gamma {by_gamma}"
        )
    return by_rank


def gr_suite(table: S.GeneratorTable, sel: Optional[S.SkewSelection] = None, degree_offset: int = 0) -> VerificationReport:
    """``symbol(entry, m - k) == symbol-table entry != 0`` on retained boxes."""
    if sel is None:
        sel = S.selection(table.n, S.jordan_data(table.mu).gamma())
    report = VerificationReport("gr", table.n, mu_digest(table.mu))
    with _Timer(report):
        for mk in sel.retained:
            m, k = mk
            report.cases += 1
            expected = table.symbols[mk]
            try:
                got = symbol(table.entries[mk], m - k + degree_offset)
            except FiltrationError as exc:
                report.failures.append({"entry": _label(mk), "error": str(exc)})
                continue
            if not expected:
                report.failures.append({"entry": _label(mk), "error": "retained symbol is zero"})
            elif got != expected:
                report.failures.append({"entry": _label(mk), "symbol": str(got), "expected": str(expected)})
    return report


def rank_suite(mu, jd: S.JordanData, family: str = "phi", seed: int = 0, retries: int = 5) -> VerificationReport:
    n = len(mu)
    report = VerificationReport("rank", n, mu_digest(mu))
    with _Timer(report):
        sel = S.selection(n, jd.gamma())
        expected = S.expected_rank(jd)
        if expected != len(sel.retained):
            report.failures.append({"error": f"|Gamma/gamma| = {len(sel.retained)} but expected rank {expected}"})
        res = independence_rank(S.symbol_table(mu, family), sel, seed=seed, retries=retries, expected=expected)
        report.cases = res.attempts
        report.info = {"rank": res.rank, "expected": res.expected, "status": res.status}
        if res.status != "ok":
            report.failures.append({"rank": res.rank, "expected": res.expected, "status": res.status, "point": res.point})
    return report


def centralizer_suite(mu, jd: S.JordanData) -> VerificationReport:
    report = VerificationReport("centralizer", len(mu), mu_digest(mu))
    with _Timer(report):
        report.cases = 1
        try:
            report.info = {"dim": centralizer_dim(mu, jd), "gamma_size": jd.gamma().size}
        except AssertionError as exc:
            report.failures.append({"error": str(exc)})
    return report


def identities_suite(mu) -> VerificationReport:
    report = VerificationReport("identities", len(mu), mu_digest(mu))
    with _Timer(report):
        res = S.check_identities(mu)
        flags = {k: v for k, v in res.items() if isinstance(v, bool) and k != "ok"}
        report.cases = len(flags)
        report.failures = [{"identity": k} for k, v in sorted(flags.items()) if not v]
    return report


def shift_suite(mu, seed: int = 0, symbols: bool = False) -> VerificationReport:
    rng = random.Random(seed)
    report = VerificationReport("shift", len(mu), mu_digest(mu))
    with _Timer(report):
        for a in (Fraction(0), Fraction(rng.randint(-9, 9), rng.randint(1, 4))):
            report.cases += 1
            if not S.check_shift(mu, a, symbols=symbols):
                report.failures.append({"a": format_rational(a)})
    return report


def factorization_suite(mu, jd: S.JordanData, symbols: bool = False) -> VerificationReport:
    report = VerificationReport("factorization", len(mu), mu_digest(mu))
    with _Timer(report):
        entries = S.symbol_table(mu) if symbols else S.phi_table(mu, False).entries
        report.cases = len(mu)
        try:
            exps = S.check_factorization(mu, jd, entries=entries)
            deps = S.excluded_dependence(jd, entries, len(mu))
            report.info = {
                "exponents": {str(l): e for l, e in exps.items()},
                "excluded": {_label(mk): {_label(k): format_rational(v) for k, v in sorted(c.items())}
                             for mk, c in sorted(deps.items())},
            }
        except AssertionError as exc:
            report.failures.append({"error": str(exc)})
    return report


def ss_suite(n: int) -> VerificationReport:
    from shiftalg.affine import is_ss_vector, segal_sugawara_vectors

    report = VerificationReport("ss", n, "")
    with _Timer(report):
        for fam, tag in (("cdet", "phi_{m}"), ("psi", "psi_{m}{m}"), ("theta", "theta_{m}{m}")):
            for m, v in enumerate(segal_sugawara_vectors(fam, n), start=1):
                name = tag.format(m=m)
                ok, witnesses = is_ss_vector(v)
                report.cases += 1
                if not ok:
                    probe, image = witnesses[0]
                    report.failures.append({"vector": name, "probe": probe, "image": str(image)})
    return report


ALL_SUITES = ("centralizer", "rank", "commutativity", "poisson", "gr", "shift", "factorization", "identities")


def default_suites(n: int) -> Tuple[str, ...]:
    if n <= 3:
        return ALL_SUITES
    if n == 4:
        return ("centralizer", "rank", "commutativity", "poisson", "gr", "factorization")
    return ("centralizer", "rank", "factorization")


def run_suites(mu, jd: Optional[S.JordanData] = None, suites: Optional[Iterable[str]] = None,
               family: str = "phi", seed: int = 0) -> List[VerificationReport]:
    """Run the named suites on one matrix; U-level work is skipped for ``n >= 5``."""
    mu = as_fraction_matrix(mu)
    n = len(mu)
    jd = S.jordan_data(mu) if jd is None else jd
    suites = tuple(default_suites(n) if suites is None else suites)
    unknown = set(suites) - set(ALL_SUITES) - {"ss"}
    if unknown:
        raise ValueError(f"unknown suites {sorted(unknown)}")
    u_level = n <= 4
    table = S.generator_table(mu, family) if u_level and {"commutativity", "gr"} & set(suites) else None
    out = []
    for name in suites:
        if name == "centralizer":
            out.append(centralizer_suite(mu, jd))
        elif name == "rank":
            out.append(rank_suite(mu, jd, family, seed))
        elif name == "commutativity" and table is not None:
            out.append(commutativity_suite(table, sample=10 if n == 4 else None, seed=seed))
        elif name == "poisson" and n <= 4:
            tab = table or S.GeneratorTable(family, n, mu, symbols=S.symbol_table(mu, family))
            out.append(poisson_suite(tab))
        elif name == "gr" and table is not None:
            out.append(gr_suite(table, S.selection(n, jd.gamma())))
        elif name == "shift":
            out.append(shift_suite(mu, seed, symbols=not u_level))
        elif name == "factorization":
            out.append(factorization_suite(mu, jd, symbols=n > 3))
        elif name == "identities" and n <= 4:
            out.append(identities_suite(mu))
        elif name == "ss":
            out.append(ss_suite(n))
    return out


def battery(n: int) -> Dict[str, Tuple[list, S.JordanData]]:
    """Named test matrices: zero, scalar, regular semisimple, regular nilpotent and more."""
    F = Fraction
    cases = {
        "zero": S.JordanData(((F(0), YoungDiagram((1,) * n)),)),
        "scalar": S.JordanData(((F(3, 2), YoungDiagram((1,) * n)),)),
        "regular_semisimple": S.JordanData(tuple((F(i), YoungDiagram((1,))) for i in range(1, n + 1))),
        "regular_nilpotent": S.JordanData(((F(0), YoungDiagram((n,))),)),
    }
    if n == 3:
        cases["J(2,1)"] = S.JordanData(((F(0), YoungDiagram((2, 1))),))
    if n == 4:
        cases["J(1,1)+J(1,1)(1)"] = S.JordanData(((F(0), YoungDiagram((1, 1))), (F(1), YoungDiagram((1, 1)))))
    if n == 6:
        cases["J(2,2,1,1)"] = S.JordanData(((F(0), YoungDiagram((2, 2, 1, 1))),))
    return {name: (jd.matrix(), jd) for name, jd in cases.items()}


__all__ = [
    "ALL_SUITES",
    "RankResult",
    "VerificationReport",
    "battery",
    "centralizer_dim",
    "commutativity_suite",
    "default_suites",
    "gr_suite",
    "independence_rank",
    "mu_digest",
    "poisson_suite",
    "run_suites",
    "ss_suite",
]
