"""``shiftalg`` command line: diagram | generators | verify | ss-check.

Output is JSON on stdout (or ``--out``). ``--pretty`` switches to a short text
rendering. Exit status: 0 success, 1 a verification failure, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import List, Optional, Sequence

from shiftalg import shift as S
from shiftalg import verify as V

FAMILY_FLAGS = {"phi": "phi", "psi-mm": "psi_mm", "theta-mm": "theta_mm", "varphi": "varphi", "psi": "psi_plain"}
SYMBOLS_ONLY_FROM = 5


@dataclass(frozen=True)
class RunConfig:
    command: str
    input: Optional[str] = None
    inline: Optional[str] = None
    family: str = "phi"
    suites: Optional[tuple] = None
    seed: int = 0
    out: Optional[str] = None
    pretty: bool = False
    timing: bool = False
    negative_control: bool = False
    battery: tuple = ()
    n: Optional[int] = None


class InputError(Exception):
    pass


def _read_input(cfg: RunConfig):
    if cfg.inline is not None and cfg.input is not None:
        raise InputError("give either --input or --inline, not both")
    try:
        if cfg.inline is not None:
            data = json.loads(cfg.inline)
        elif cfg.input is not None:
            with open(cfg.input, encoding="utf-8") as fh:
                data = json.load(fh)
        else:
            raise InputError("no input: pass --input FILE or --inline JSON")
        return S.load_input(data)
    except (json.JSONDecodeError, OSError) as exc:
        raise InputError(str(exc)) from exc
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(str(exc)) from exc


def _pairs(labels) -> List[List[int]]:
    return [[m, k] for m, k in labels]


def diagram_report(mu, jd: S.JordanData) -> dict:
    n = len(mu)
    gamma = jd.gamma()
    sel = S.selection(n, gamma)
    return {
        "n": n,
        "jordan": jd.to_json(),
        "gamma": list(gamma.rows),
        "Gamma": list(S.YoungDiagram.staircase(n).rows),
        "retained": _pairs(sel.retained),
        "excluded": _pairs(sel.excluded),
        "expected_rank": S.expected_rank(jd),
    }


def render_diagram(rep: dict) -> str:
    n = rep["n"]
    gamma = rep["gamma"] + [0] * n
    lines = [f"n = {n}, gamma = {tuple(rep['gamma'])}, expected rank = {rep['expected_rank']}"]
    for i in range(1, n + 1):
        cells = []
        for j in range(1, n - i + 2):
            m, k = n - j + 1, n - i - j + 1
            mark = "x" if j <= gamma[i - 1] else " "
            cells.append(f"{mark}phi^({k})_{m}")
        lines.append(" ".join(f"{c:<11}" for c in cells).rstrip())
    lines.append("excluded: " + ", ".join(f"phi^({k})_{m}" for m, k in rep["excluded"]))
    return "\n".join(lines)


def generators_report(mu, family: str) -> dict:
    n = len(mu)
    if n >= SYMBOLS_ONLY_FROM:
        table = S.GeneratorTable(family, n, mu, symbols=S.symbol_table(mu, family))
        out = table.to_json()
        out["symbols_only"] = True
        return out
    out = S.generator_table(mu, family).to_json()
    out["symbols_only"] = False
    return out


def render_generators(rep: dict) -> str:
    lines = [f"family {rep['family']}, n = {rep['n']}"]
    for key in sorted(rep["symbols"], key=lambda s: tuple(map(int, s.split(",")))):
        body = rep["entries"].get(key)
        lines.append(f"({key}): {body if body is not None else '-'}")
        lines.append(f"    symbol: {rep['symbols'][key]}")
    return "\n".join(lines)


def _negative_control_report(seed: int) -> V.VerificationReport:
    from shiftalg.pbw import GLn

    g = GLn(2)
    rep = V.commutativity_suite({"E[1,1]": g.E(1, 1), "E[1,2]": g.E(1, 2)}, seed=seed, n=2, mu=[[0, 0], [0, 0]])
    rep.suite = "negative-control"
    return rep


def verify_report(cfg: RunConfig) -> dict:
    runs = []
    if cfg.input is not None or cfg.inline is not None:
        mu, jd = _read_input(cfg)
        runs.append(("input", mu, jd))
    for n in cfg.battery or (() if runs else (2, 3)):
        for name, (mu, jd) in V.battery(n).items():
            runs.append((f"gl{n}:{name}", mu, jd))
    cases = []
    for name, mu, jd in runs:
        reports = V.run_suites(mu, jd, cfg.suites, cfg.family, cfg.seed)
        cases.append({"case": name, "reports": [r.to_json(cfg.timing) for r in reports]})
    if cfg.negative_control:
        cases.append({"case": "negative-control", "reports": [_negative_control_report(cfg.seed).to_json(cfg.timing)]})
    failures = sum(len(r["failures"]) for c in cases for r in c["reports"])
    return {"seed": cfg.seed, "family": cfg.family, "cases": cases, "failures": failures, "ok": failures == 0}


def render_verify(rep: dict) -> str:
    lines = []
    for case in rep["cases"]:
        for r in case["reports"]:
            status = "ok" if not r["failures"] else f"FAILED ({len(r['failures'])})"
            lines.append(f"{case['case']:<28} {r['suite']:<16} {r['cases']:>4} cases  {status}")
            for f in r["failures"][:3]:
                lines.append(f"    witness: {json.dumps(f)}")
    lines.append("all checks passed" if rep["ok"] else f"{rep['failures']} failure(s)")
    return "\n".join(lines)


def ss_report(cfg: RunConfig) -> dict:
    from shiftalg.affine import LoopAlgebra, is_ss_vector

    n = cfg.n or 2
    rep = V.ss_suite(n).to_json(cfg.timing)
    if cfg.negative_control:
        v = LoopAlgebra(n).E(1, 2, -1)
        ok, witnesses = is_ss_vector(v)
        if not ok:
            probe, image = witnesses[0]
            rep["failures"].append({"vector": "E[1,2;-1]", "probe": probe, "image": str(image)})
        rep["cases"] += 1
    return rep


def render_ss(rep: dict) -> str:
    head = f"n = {rep['n']}: {rep['cases']} vectors probed"
    if not rep["failures"]:
        return head + ", all annihilated by E_ij[0], E_ij[1]"
    return "\n".join([head] + [f"    {f['vector']}: {f['probe']} -> {f['image']}" for f in rep["failures"]])


def _parse_suites(text: Optional[str]):
    if text is None:
        return None
    suites = tuple(s.strip() for s in text.split(",") if s.strip())
    bad = set(suites) - set(V.ALL_SUITES) - {"ss"}
    if bad:
        raise InputError(f"unknown suites {sorted(bad)}; choose from {', '.join(V.ALL_SUITES + ('ss',))}")
    return suites


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="shiftalg", description="Quantum shift-of-argument subalgebras of U(gl_n).")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, with_input=True):
        if with_input:
            sp.add_argument("--input", metavar="FILE", help="JSON file with 'matrix' or 'jordan'")
            sp.add_argument("--inline", metavar="JSON", help="the same JSON given on the command line")
        sp.add_argument("--out", metavar="FILE", help="write output here instead of stdout")
        sp.add_argument("--pretty", action="store_true", help="human-readable text instead of JSON")

    common(sub.add_parser("diagram", help="gamma, the staircase and the retained/excluded boxes"))

    g = sub.add_parser("generators", help="generator table with classical symbols")
    common(g)
    g.add_argument("--family", choices=sorted(FAMILY_FLAGS), default="phi")

    v = sub.add_parser("verify", help="run verification suites")
    common(v)
    v.add_argument("--family", choices=sorted(FAMILY_FLAGS), default="phi")
    v.add_argument("--suites", metavar="LIST", help="comma-separated: " + ",".join(V.ALL_SUITES + ("ss",)))
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--battery", type=int, action="append", metavar="N",
                   help="add the built-in matrices of gl_N (repeatable; default 2 and 3 without input)")
    v.add_argument("--negative-control", action="store_true", help="inject the non-commuting pair E_11, E_12")
    v.add_argument("--timing", action="store_true", help="record elapsed_ms (otherwise null, for stable output)")

    s = sub.add_parser("ss-check", help="Segal-Sugawara membership of the phi, psi, theta vectors")
    common(s, with_input=False)
    s.add_argument("--n", type=int, default=2)
    s.add_argument("--negative-control", action="store_true", help="also probe E_12[-1], which must fail")
    s.add_argument("--timing", action="store_true")
    return p


def _config(ns: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=ns.command,
        input=getattr(ns, "input", None),
        inline=getattr(ns, "inline", None),
        family=FAMILY_FLAGS[getattr(ns, "family", "phi")],
        suites=_parse_suites(getattr(ns, "suites", None)),
        seed=getattr(ns, "seed", 0),
        out=ns.out,
        pretty=ns.pretty,
        timing=getattr(ns, "timing", False),
        negative_control=getattr(ns, "negative_control", False),
        battery=tuple(getattr(ns, "battery", None) or ()),
        n=getattr(ns, "n", None),
    )


def run(cfg: RunConfig) -> tuple:
    """``(exit_code, payload, text)`` for a configuration."""
    if cfg.command == "diagram":
        rep = diagram_report(*_read_input(cfg))
        return 0, rep, render_diagram(rep)
    if cfg.command == "generators":
        mu, _ = _read_input(cfg)
        rep = generators_report(mu, cfg.family)
        return 0, rep, render_generators(rep)
    if cfg.command == "verify":
        rep = verify_report(cfg)
        return (0 if rep["ok"] else 1), rep, render_verify(rep)
    if cfg.command == "ss-check":
        if cfg.n is not None and cfg.n < 1:
            raise InputError("--n must be positive")
        rep = ss_report(cfg)
        return (0 if not rep["failures"] else 1), rep, render_ss(rep)
    raise InputError(f"unknown command {cfg.command!r}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = _config(ns)
        code, payload, text = run(cfg)
    except (InputError, S.NonRationalSpectrum) as exc:
        print(f"shiftalg: error: {exc}", file=sys.stderr)
        return 2
    body = text if cfg.pretty else json.dumps(payload, indent=2, sort_keys=True)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(body + "\n")
    else:
        print(body)
    return code


if __name__ == "__main__":
    sys.exit(main())
