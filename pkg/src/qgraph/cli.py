"""Command-line front end: ``qgraph <command> --graph FILE --q SPEC``.

Exit codes: 0 everything passed, 1 a verification failed, 2 bad input,
3 a size guard was exceeded.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from importlib import resources

from . import __version__
from .arrangement import (
    affine_lemma_check,
    build_affine,
    build_central,
    cone_decone_check,
    flat_lattice,
    graph_characteristic_polynomial,
)
from .derivations import certify_chordal
from .errors import GuardExceeded, InputError, NotChordal, QGraphError, VerificationError
from .field import field_from_order, is_prime, prime_power
from .graph import (
    Graph,
    chromatic_polynomial,
    complete_graph,
    cycle_graph,
    dc_hypotheses,
    delete_edge,
    is_triangle_free,
    parse_graph,
    path_graph,
    read_graph,
    stable_partition_counts,
)
from .intpoly import IntPolynomial, falling_factorial_expansion, format_poly
from .qcomb import expand_q_falling, q_stirling
from .serialize import (
    SCHEMA_VERSION,
    big,
    certificate_json,
    dumps,
    field_json,
    fraction_json,
    graph_json,
    poly_json,
)
from .theorems import (
    closed_form,
    probe_polynomiality,
    stable_partition_rows,
    verify_congruence,
    verify_deletion_contraction,
    verify_join,
    verify_triangle_free,
    verify_vanishing_monotone,
)

SUITES = ("congruence", "stable", "trianglefree", "join", "affine", "delcon", "monotone")

_Q_RE = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+))?\s*$")


def parse_q(spec: str) -> int:
    """Accept "p" or "p^m" with p prime and m >= 1."""
    m = _Q_RE.match(spec)
    if not m:
        raise InputError(f"cannot read field order {spec!r}; expected p or p^m")
    p, e = int(m.group(1)), int(m.group(2) or 1)
    if p == 1 or e == 0:
        raise InputError("q = 1 is not a field order")
    if m.group(2) is None and prime_power(p) is not None:
        return p  # a bare prime power such as 4 is accepted as well
    if not is_prime(p):
        raise InputError(f"{p} is not prime; write prime powers as p^m")
    return p**e


def parse_q_list(spec: str) -> list[int]:
    out = [parse_q(s) for s in spec.split(",") if s.strip()]
    if not out:
        raise InputError("no field order given")
    return out


class Run:
    """Accumulates one report."""

    def __init__(self, command: str):
        self.command = command
        self.inputs: dict = {}
        self.outputs: dict = {}
        self.verdicts: list[dict] = []
        self.lines: list[str] = []

    def verdict(self, case: str, status: str, detail=None) -> None:
        entry = {"case": case, "status": status}
        if detail is not None:
            entry["detail"] = detail
        self.verdicts.append(entry)
        self.lines.append(f"{status:<10} {case}" + (f"  {detail}" if detail is not None else ""))

    def check(self, case: str, ok: bool, detail=None) -> None:
        self.verdict(case, "pass" if ok else "fail", detail)

    @property
    def failed(self) -> bool:
        return any(v["status"] == "fail" for v in self.verdicts)


def _load_graph(args) -> Graph:
    if not args.graph:
        raise InputError("--graph FILE is required")
    if args.graph == "-":
        return parse_graph(sys.stdin.read())
    return read_graph(args.graph)


def _one_q(args) -> int:
    qs = parse_q_list(args.q or "")
    if len(qs) != 1:
        raise InputError("this command takes a single field order")
    return qs[0]


def _record(run: Run, args, G: Graph | None, qs: list[int]) -> None:
    if G is not None:
        run.inputs["graph"] = graph_json(G)
    run.inputs["q"] = qs
    run.inputs["fields"] = [field_json(field_from_order(q)) for q in qs]


# -- commands ----------------------------------------------------------------

def cmd_charpoly(args, run: Run) -> None:
    G = _load_graph(args)
    q = _one_q(args)
    _record(run, args, G, [q])
    F = field_from_order(q)
    run.inputs["flags"] = {"kind": args.kind, "method": args.method}
    if args.kind == "affine":
        A = build_affine(G, F)
        L = flat_lattice(A)
        chi, n_flats, method = L.characteristic_polynomial(), len(L), "lattice"
    else:
        A = build_central(G, F)
        method = args.method
        if method == "auto":
            try:
                L = flat_lattice(A)
                method = "lattice"
            except GuardExceeded:
                method = "subspaces"
        elif method == "lattice":
            L = flat_lattice(A)
        if method == "lattice":
            chi, n_flats = L.characteristic_polynomial(), len(L)
        else:
            chi, n_flats = graph_characteristic_polynomial(G, F, "subspaces"), None
    run.outputs = {"chi": poly_json(chi), "n_hyperplanes": len(A), "n_flats": n_flats, "method": method}
    run.lines += [f"chi(t) = {chi}", f"hyperplanes: {len(A)}",
                  f"flats: {n_flats if n_flats is not None else 'n/a'} ({method})"]


def cmd_chromatic(args, run: Run) -> None:
    G = _load_graph(args)
    _record(run, args, G, [])
    chi = chromatic_polynomial(G)
    s = stable_partition_counts(G)
    run.outputs = {"chromatic": poly_json(chi),
                   "stable_partitions": [big(c) for c in s.counts],
                   "falling_factorial": [big(c) for c in falling_factorial_expansion(chi)]}
    run.lines += [f"chi(G, t) = {chi}", f"stable partitions by block count: {list(s.counts)}"]


def cmd_expand(args, run: Run) -> None:
    q = _one_q(args)
    if args.poly:
        try:
            P = IntPolynomial(int(c) for c in args.poly.split(","))
        except ValueError as exc:
            raise InputError(f"cannot read --poly {args.poly!r}") from exc
        _record(run, args, None, [q])
        ell = None
    else:
        G = _load_graph(args)
        _record(run, args, G, [q])
        P = graph_characteristic_polynomial(G, field_from_order(q))
        ell = G.ell
    exp = expand_q_falling(P, q)
    run.outputs = {"poly": poly_json(P), "q_falling": [big(c) for c in exp.coeffs]}
    run.lines += [f"P(t) = {P}"]
    for i, c in enumerate(exp.coeffs):
        run.lines.append(f"c_{i} = {c}")
    if ell is not None:
        rows = stable_partition_rows(G, q, P)
        run.outputs["normalized"] = [fraction_json(r.quotient) for r in rows]
        run.outputs["stable_partitions"] = [big(r.s) for r in rows]


def cmd_stirling(args, run: Run) -> None:
    q = _one_q(args)
    if args.n is None or args.n < 0:
        raise InputError("--n must be a non-negative integer")
    _record(run, args, None, [q])
    row = [q_stirling(args.n, i, q) for i in range(args.n + 1)]
    run.inputs["flags"] = {"n": args.n}
    run.outputs = {"stirling": [big(c) for c in row]}
    run.lines += [f"S_{q}({args.n}, {i}) = {c}" for i, c in enumerate(row)]


def cmd_basis(args, run: Run) -> None:
    G = _load_graph(args)
    q = _one_q(args)
    _record(run, args, G, [q])
    cert = certify_chordal(G, field_from_order(q))
    run.outputs = {"certificate": certificate_json(cert)}
    for k, theta in enumerate(cert.basis, start=1):
        run.lines.append(f"theta_{k} = {theta}")
    run.lines.append(f"det = {cert.determinant}")
    run.check("saito", cert.passed, {"degrees": cert.degree_check, "n_hyperplanes": cert.n_hyperplanes})


def cmd_probe(args, run: Run) -> None:
    G = _load_graph(args)
    qs = parse_q_list(args.q or "2,3,4,5")
    _record(run, args, G, qs)
    report = probe_polynomiality(G, qs, args.bound)
    run.inputs["flags"] = {"bound": report.degree_bound}
    run.outputs = {
        "exploratory": True,
        "degree_bound": report.degree_bound,
        "fitted": report.fitted,
        "fits": [{"t_degree": f.degree, "poly_in_q": f.poly_in_q,
                  "integral": f.integral, "consistent": f.consistent} for f in report.fits],
        "limits": [{"k": c.k, "value": c.value, "expected": c.expected, "match": c.match}
                   for c in report.limits],
    }
    for f in report.fits:
        body = format_poly(f.poly_in_q, "q") if f.poly_in_q is not None else "no integral fit"
        run.lines.append(f"[t^{f.degree}] {body}" + ("" if f.consistent else "  (held-out mismatch)"))
    for c in report.limits:
        run.lines.append(f"q->1 at k={c.k}: {c.value} vs chi(G,{c.k}) = {c.expected}")


def _verify_case(run: Run, suite: str, G: Graph, q: int, args) -> None:
    F = field_from_order(q)
    ell = G.ell
    if suite == "congruence":
        chi = graph_characteristic_polynomial(G, F)
        ks = [args.k] if args.k is not None else range(1, ell + 1)
        for k in ks:
            r = verify_congruence(G, q, k, chi)
            run.verdict(f"congruence q={q} k={k}", r.status,
                        {"lhs": r.lhs_residue, "rhs": r.rhs_residue, "quotient": big(r.quotient)})
    elif suite == "stable":
        chi = graph_characteristic_polynomial(G, F)
        for r in stable_partition_rows(G, q, chi):
            status = "degenerate" if q == 2 and r.ok else ("pass" if r.ok else "fail")
            run.verdict(f"stable q={q} i={r.i}", status,
                        {"c": big(r.c), "normalized": fraction_json(r.quotient), "s": r.s})
    elif suite == "trianglefree":
        if not is_triangle_free(G):
            raise InputError("the triangle-free suite needs a triangle-free graph")
        run.check(f"trianglefree q={q}", verify_triangle_free(G, q))
    elif suite == "join":
        m = args.m or 1
        run.check(f"join q={q} m={m}", verify_join(G, m, q),
                  {"chi": closed_form("join", G=G, m=m, q=q).to_json()})
    elif suite == "affine":
        run.check(f"affine-lemma q={q}", affine_lemma_check(G, F))
        run.check(f"cone-decone q={q}", cone_decone_check(G, F))
    elif suite == "delcon":
        for e in G.sorted_edges():
            if dc_hypotheses(G, e):
                run.check(f"delcon q={q} e={e[0]}-{e[1]}", verify_deletion_contraction(G, e, q))
            else:
                run.verdict(f"delcon q={q} e={e[0]}-{e[1]}", "skipped", "hypotheses not met")
    elif suite == "monotone":
        cases = [("G", G)] + [(f"G-{e[0]}-{e[1]}", delete_edge(G, e)) for e in G.sorted_edges()]
        for name, H in cases:
            chi = graph_characteristic_polynomial(H, F)
            run.check(f"monotone q={q} {name}", verify_vanishing_monotone(chi, q, ell))
    else:
        raise InputError(f"unknown suite {suite!r}")


def _reproduction_suite(run: Run) -> None:
    data = resources.files("qgraph").joinpath("data")
    golden = json.loads(data.joinpath("golden.json").read_text())
    remark = golden["remark"]
    F = field_from_order(remark["q"])
    target = IntPolynomial(remark["arrangement"])
    chroms = []
    for name in remark["graphs"]:
        G = parse_graph(data.joinpath(name).read_text())
        chi = graph_characteristic_polynomial(G, F)
        run.check(f"remark arrangement {name}", chi == target, str(chi))
        chrom = chromatic_polynomial(G)
        chroms.append(chrom)
        run.check(f"remark chromatic {name}", chrom == IntPolynomial(remark["chromatic"][name]), str(chrom))
    run.check("remark chromatic polynomials differ", chroms[0] != chroms[1])
    builders = {"path": path_graph, "cycle": cycle_graph, "complete": complete_graph}
    for entry in golden["closed_forms"]:
        kind, ell, q = entry["kind"], entry["ell"], entry["q"]
        want = IntPolynomial(entry["poly"])
        formula = closed_form(kind, ell=ell, q=q)
        lattice = graph_characteristic_polynomial(builders[kind](ell), field_from_order(q))
        run.check(f"closed form {kind} ell={ell} q={q}", formula == want and lattice == want, str(lattice))


def cmd_verify(args, run: Run) -> None:
    run.inputs["flags"] = {"suite": args.suite, "paper": args.paper, "k": args.k, "m": args.m}
    if args.paper:
        _record(run, args, None, [2])
        _reproduction_suite(run)
        if not args.suite:
            return
    if not args.suite:
        raise InputError("name a suite or pass --paper")
    G = _load_graph(args)
    qs = parse_q_list(args.q or "")
    _record(run, args, G, qs)
    for q in qs:
        _verify_case(run, args.suite, G, q, args)


COMMANDS = {
    "charpoly": cmd_charpoly,
    "chromatic": cmd_chromatic,
    "expand": cmd_expand,
    "stirling": cmd_stirling,
    "basis": cmd_basis,
    "verify": cmd_verify,
    "probe": cmd_probe,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--graph", help="graph file (first line: vertex count; then one edge 'i j' per line)")
    common.add_argument("--q", help='field order "p" or "p^m"; comma-separated lists where allowed')
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--seed", type=int, default=0, help="recorded only; never changes results")
    common.add_argument("--timing", action="store_true", help="add wall-clock timing to the report")

    parser = argparse.ArgumentParser(prog="qgraph", description="q-deformed graphical arrangements")
    parser.add_argument("--version", action="version", version=f"qgraph {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("charpoly", parents=[common], help="characteristic polynomial of A_G^q")
    p.add_argument("--kind", choices=("central", "affine"), default="central")
    p.add_argument("--method", choices=("auto", "lattice", "subspaces"), default="auto")

    sub.add_parser("chromatic", parents=[common], help="chromatic polynomial and stable partitions")

    p = sub.add_parser("expand", parents=[common], help="coefficients in the q-falling basis")
    p.add_argument("--poly", help="comma-separated integer coefficients, constant term first")

    p = sub.add_parser("stirling", parents=[common], help="q-Stirling numbers S_q(n, i)")
    p.add_argument("--n", type=int, required=True)

    sub.add_parser("basis", parents=[common], help="derivation basis and Saito certificate (chordal G)")

    p = sub.add_parser("verify", parents=[common], help="theorem verification suites")
    p.add_argument("suite", nargs="?", choices=SUITES)
    p.add_argument("--paper", action="store_true", help="run the reproduction suite on shipped fixtures")
    p.add_argument("--k", type=int, help="single k for the congruence suite (default 1..ell)")
    p.add_argument("--m", type=int, help="size of the joined complete graph (default 1)")

    p = sub.add_parser("probe", parents=[common], help="exploratory polynomiality-in-q probe")
    p.add_argument("--bound", type=int, help="degree bound in q (default sum of C(|K|, 2) over maximal cliques)")
    return parser


def _emit(run: Run, args, status: str, timing: dict | None, error: dict | None) -> None:
    if args.format == "json":
        report = {
            "schema_version": SCHEMA_VERSION,
            "command": run.command,
            "version": __version__,
            "inputs": run.inputs,
            "outputs": run.outputs,
            "verdicts": run.verdicts,
            "status": status,
        }
        if timing is not None:
            report["timing"] = timing
        if error is not None:
            report["error"] = error
        sys.stdout.write(dumps(report))
        return
    for line in run.lines:
        print(line)
    if error is not None:
        print(f"error: {error['message']}", file=sys.stderr)
    print(f"status: {status}")
    if timing is not None:
        print(f"elapsed: {timing['total_seconds']:.3f}s")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    run = Run(args.command)
    run.inputs["flags"] = {}
    run.inputs["seed"] = args.seed
    start = time.perf_counter()
    error = None
    try:
        COMMANDS[args.command](args, run)
        code = 1 if run.failed else 0
    except NotChordal as exc:
        code = 2
        error = {"type": "NotChordal", "message": str(exc), "exit_code": 2, "witness": list(exc.witness)}
    except InputError as exc:
        code, error = 2, {"type": type(exc).__name__, "message": str(exc), "exit_code": 2}
    except GuardExceeded as exc:
        code, error = 3, {"type": "GuardExceeded", "message": str(exc), "exit_code": 3}
    except (VerificationError, QGraphError) as exc:
        code, error = 1, {"type": type(exc).__name__, "message": str(exc), "exit_code": 1}
    except OSError as exc:
        code, error = 2, {"type": "OSError", "message": str(exc), "exit_code": 2}
    timing = {"total_seconds": time.perf_counter() - start} if args.timing else None
    status = "error" if error else ("fail" if code else "pass")
    _emit(run, args, status, timing, error)
    return code


if __name__ == "__main__":
    sys.exit(main())
