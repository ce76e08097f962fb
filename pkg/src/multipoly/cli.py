"""``multipoly`` command line: check, expand, formulate, cuts, solve, verify, dense-family.

Exit codes: 0 success, 1 a verification failed, 2 bad usage or unreadable input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import acyclicity, cuts, expansion, formulation, instances, lp, lpfile, oracle
from .errors import MultipolyError, ParseError, SizeLimitExceeded
from .hypergraph import Hypergraph, load, serialize

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _dump(data) -> None:
    _emit(json.dumps(data, indent=2, sort_keys=True))


def _parse_order(text):
    if text is None:
        return None
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise UsageError(f"--order expects comma-separated node ids, got {text!r}") from None


def parse_objective(text: str) -> dict:
    """Lines ``node <id> <p[/q]>`` or ``edge <id> <id> ... <p[/q]>``; ``#`` starts a comment."""
    objective: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        keyword, *rest = tokens
        if keyword not in ("node", "edge") or len(rest) < 2:
            raise ParseError(f"expected 'node <id> <coef>' or 'edge <ids...> <coef>', got {raw.strip()!r}", lineno, 1)
        try:
            ids = [int(t) for t in rest[:-1]]
            coef = Fraction(rest[-1])
        except ValueError:
            raise ParseError(f"bad number in {raw.strip()!r}", lineno, 1) from None
        if keyword == "node" and len(ids) != 1:
            raise ParseError("a node line takes exactly one id", lineno, 1)
        if keyword == "edge" and len(ids) < 2:
            raise ParseError("an edge line takes at least two ids", lineno, 1)
        x = formulation.var(ids[0] if keyword == "node" else ids)
        objective[x] = objective.get(x, 0) + coef
    return objective


# --------------------------------------------------------------------------- commands


def cmd_check(args, g: Hypergraph) -> int:
    seq = acyclicity.nest_point_sequence(g)
    acyclic = seq.residual.is_empty()
    cycle = None
    if args.witness and not acyclic:
        try:
            cycle = acyclicity.find_beta_cycle(seq.residual)
        except SizeLimitExceeded as exc:
            print(f"warning: {exc}", file=sys.stderr)
    if args.out == "json":
        data = {"beta_acyclic": acyclic, "order": list(seq.order), "residual": seq.residual.to_json()}
        if cycle is not None:
            data["beta_cycle"] = {"nodes": list(cycle.nodes), "edges": [list(e) for e in cycle.edges]}
        _dump(data)
        return EXIT_OK
    lines = [f"beta-acyclic: {'yes' if acyclic else 'no'}"]
    lines.append("nest-point sequence: " + " ".join(map(str, seq.order)))
    if not acyclic:
        lines.append("residual:")
        lines += ["  " + line for line in serialize(seq.residual).splitlines()]
    if cycle is not None:
        lines.append("beta-cycle nodes: " + " ".join(map(str, cycle.nodes)))
        lines += ["  edge " + " ".join(map(str, e)) for e in cycle.edges]
    _emit("\n".join(lines))
    return EXIT_OK


def cmd_expand(args, g: Hypergraph) -> int:
    order = _parse_order(args.order)
    if order is None:
        order = acyclicity.nest_point_sequence(g).order
    x = expansion.expand(g, order)
    table = expansion.edge_structure(x)
    if args.out == "json":
        _dump({
            "order": list(x.order),
            "edges": [list(e) for e in x.expanded.sorted_edges()],
            "added": [list(e) for e in sorted(x.added)],
            "structure": [
                {
                    "edge": list(s.edge),
                    "v": s.v_of_e,
                    "p": list(s.p_of_e),
                    "in_M": s.in_M,
                    "f": list(s.f_of_e) if s.f_of_e else None,
                    "f_prime": list(s.f_prime) if s.f_prime else None,
                }
                for s in table.values()
            ],
        })
        return EXIT_OK
    lines = ["order: " + " ".join(map(str, x.order))]
    lines += ["edge " + " ".join(map(str, e)) + ("  (added)" if e in x.added else "") for e in x.expanded.sorted_edges()]
    lines.append("structure: edge | v(e) | p(e) | f(e) | f'(e)")
    for s in table.values():
        f = " ".join(map(str, s.f_of_e)) if s.in_M else "-"
        fp = " ".join(map(str, s.f_prime)) if s.in_M else "-"
        lines.append(f"  {' '.join(map(str, s.edge))} | {s.v_of_e} | {' '.join(map(str, s.p_of_e))} | {f} | {fp}")
    _emit("\n".join(lines))
    return EXIT_OK


def _write_system(system, fmt: str, extra=None) -> None:
    if fmt == "lp":
        _emit(lpfile.emit_lp(system))
    elif fmt == "json":
        data = system.to_json()
        data.update(extra or {})
        _dump(data)
    else:
        _emit(system.to_text() or "(no rows)")


def cmd_formulate(args, g: Hypergraph) -> int:
    order = _parse_order(args.order)
    extra = {}
    if args.mode == "std":
        system = formulation.standard_linearization(g)
    elif args.mode == "beta":
        system = formulation.beta_acyclic_formulation(g, order).system
    elif args.mode == "pointed":
        if order:
            v = order[0]
        else:
            first = acyclicity.nest_point_sequence(g, max_len=1).order
            if not first:
                raise UsageError("the hypergraph has no nest point")
            v = first[0]
        chain = acyclicity.incident_chain(g, v)
        if not chain:
            raise UsageError(f"node {v} is not a nest point on a nonempty chain")
        system = formulation.pointed_system(chain, v)
    else:
        if order is None:
            order = acyclicity.nest_point_sequence(g).order
        system, residual = formulation.partial_formulation(g, order)
        extra["residual"] = residual.to_json()
        if args.out == "text":
            _emit("# residual: " + serialize(residual).strip().replace("\n", "; "))
    _write_system(system, args.out, extra)
    return EXIT_OK


def cmd_cuts(args, g: Hypergraph) -> int:
    rows = cuts.enumerate_eri(g, args.max_neighbors, args.max_center_card, filtered=not args.unfiltered)
    _write_system(formulation.InequalitySystem(rows=rows), args.out)
    return EXIT_OK


def cmd_solve(args, g: Hypergraph) -> int:
    with open(args.objective, encoding="utf-8") as fh:
        objective = parse_objective(fh.read())
    if args.mode == "std":
        system = formulation.standard_linearization(g)
    else:
        system = formulation.beta_acyclic_formulation(g).system
    unknown = [x.name for x in objective if x not in set(system.variables)]
    if unknown:
        raise UsageError(f"objective uses variables not in the model: {', '.join(unknown)}")
    sol = lp.solve_max(system, objective)
    status = EXIT_OK
    brute = None
    if args.verify:
        brute, _ = oracle.brute_force_max(g, objective)
        if not sol.optimal or sol.objective != brute:
            status = EXIT_FAIL
    if args.out == "json":
        data = {"status": sol.status}
        if sol.optimal:
            data["objective"] = _frac(sol.objective)
            data["point"] = {x.name: _frac(v) for x, v in sol.point.items()}
        if brute is not None:
            data["brute_force"] = _frac(brute)
        _dump(data)
        return status
    lines = [f"status: {sol.status}"]
    if sol.optimal:
        lines.append(f"objective: {_frac(sol.objective)}")
        lines += [f"  {x.name} = {_frac(v)}" for x, v in sol.point.items()]
    if brute is not None:
        lines.append(f"brute force: {_frac(brute)} ({'agrees' if status == EXIT_OK else 'DISAGREES'})")
    _emit("\n".join(lines))
    return status


def _suite_exactness(g, args):
    if not acyclicity.is_beta_acyclic(g):
        return "skip", "not beta-acyclic"
    system = formulation.beta_acyclic_formulation(g).system
    objectives = oracle.random_objectives(oracle.model_variables(g), args.trials, args.seed)
    bad = oracle.exactness_mismatches(g, system, objectives)
    return ("fail" if bad else "pass"), f"{len(objectives) - len(bad)}/{len(objectives)} objectives agree"


def _known_facets(g):
    """Facet inequalities for recognized fixtures."""
    out = []
    if len(g.edges) % 6 == 1 and len(g.edges) >= 7:
        n = (len(g.edges) + 5) // 6
        h, row = cuts.dense_facet_family(n)
        if h == g:
            out.append((f"dense facet n={n}", row))
    if g == instances.example_a():
        spec = cuts.EriSpec.build((1, 2, 3, 4), [(1, 2, 3), (1, 2, 4)], [(), (1, 2)])
        out.append(("extended running-intersection facet", cuts.eri_inequality(spec, g)))
    if g == instances.example_b():
        row = formulation.le([(1, 5), (-1, (1, 2, 5)), (1, (1, 2, 3)), (1, (1, 2, 4)), (-1, (1, 2, 3, 4))], 1, "projected")
        out.append(("projected facet", row))
    return out


def _suite_facets(g, args):
    if len(g.nodes) + len(g.edges) > oracle.MAX_FACET_DIMENSION:
        return "skip", "too large for rank certificates"
    notes = []
    for name, row in _known_facets(g):
        report = oracle.check_facet(g, row)
        if not report.is_facet:
            return "fail", f"{name}: rank {report.tight_rank} of {len(oracle.model_variables(g))}"
        notes.append(f"{name} certified")
    acyclic = acyclicity.is_beta_acyclic(g)
    facets = 0
    for row in cuts.enumerate_eri(g):
        report = oracle.check_facet(g, row)
        if not report.valid:
            return "fail", f"invalid cut {row}"
        if report.is_facet:
            facets += 1
            if acyclic and not oracle.check_coefficient_sum(row):
                return "fail", f"facet {row} breaks the coefficient-sum law"
    notes.append(f"{facets} cut facets")
    return "pass", "; ".join(notes)


def _suite_decomp(g, args):
    seq = acyclicity.nest_point_sequence(g)
    if not seq.order:
        return "skip", "no nest point"
    x = expansion.expand(g, seq.order)
    v = seq.order[0]
    ok = oracle.check_decomposition(x.expanded, v, trials=max(args.trials, 50), seed=args.seed)
    return ("pass" if ok else "fail"), f"nest point {v} of the expansion"


def _suite_cuts(g, args):
    kept = cuts.enumerate_eri(g)
    for row in kept:
        valid, point = oracle.check_validity(g, row)
        if not valid:
            return "fail", f"{row} violated"
    dropped = [r for r in cuts.enumerate_eri(g, filtered=False) if r not in set(kept)]
    base = formulation.standard_linearization(g)
    base.extend(kept)
    solver = lp.ExactLP(base)
    for row in dropped:
        sol = solver.maximize(row.coeffs)
        if not sol.optimal or sol.objective > row.rhs:
            return "fail", f"dropped cut {row} is not implied"
    return "pass", f"{len(kept)} kept, {len(dropped)} dropped and implied"


SUITES = {
    "exactness": _suite_exactness,
    "facets": _suite_facets,
    "decomp": _suite_decomp,
    "cuts": _suite_cuts,
}


def cmd_verify(args, g: Hypergraph) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    results = []
    for name in names:
        try:
            status, detail = SUITES[name](g, args)
        except SizeLimitExceeded as exc:
            status, detail = "skip", str(exc)
        results.append({"suite": name, "status": status, "detail": detail})
    failed = any(r["status"] == "fail" for r in results)
    if "json" in (args.report, args.out):
        _dump({"passed": not failed, "seed": args.seed, "trials": args.trials, "results": results})
    else:
        width = max(len(r["suite"]) for r in results)
        _emit("\n".join(f"{r['suite']:<{width}}  {r['status'].upper():<4}  {r['detail']}" for r in results))
    return EXIT_FAIL if failed else EXIT_OK


def cmd_dense_family(args) -> int:
    g, row = cuts.dense_facet_family(args.n)
    if args.out in ("json", "text"):
        if args.out == "json":
            _dump({"hypergraph": g.to_json(), "inequality": formulation.InequalitySystem(rows=[row]).to_json()["rows"][0]})
        else:
            _emit(serialize(g) + "# facet: " + formulation.format_row(row))
        return EXIT_OK
    os.makedirs(args.out, exist_ok=True)
    hg_path = os.path.join(args.out, f"dense{args.n}.hg")
    with open(hg_path, "w", encoding="utf-8") as fh:
        fh.write(serialize(g))
    if args.format == "json":
        ineq_path = os.path.join(args.out, f"dense{args.n}.facet.json")
        with open(ineq_path, "w", encoding="utf-8") as fh:
            json.dump(formulation.InequalitySystem(rows=[row]).to_json(), fh, indent=2, sort_keys=True)
            fh.write("\n")
    else:
        ineq_path = os.path.join(args.out, f"dense{args.n}.facet.txt")
        with open(ineq_path, "w", encoding="utf-8") as fh:
            fh.write(formulation.format_row(row) + "\n")
    _emit(f"{hg_path}\n{ineq_path}")
    return EXIT_OK


# --------------------------------------------------------------------------- wiring


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="multipoly", description="Exact binary polynomial optimization over beta-acyclic hypergraphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_file(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file", help="hypergraph file (line format or JSON)")
        return p

    p = with_file("check", "classify beta-acyclicity")
    p.add_argument("--witness", action="store_true", help="search for a beta-cycle in the residual (small inputs)")
    p.add_argument("--out", choices=["text", "json"], default="text")
    p.set_defaults(run=cmd_check)

    p = with_file("expand", "expand along a nest-point sequence")
    p.add_argument("--order", help="comma-separated nest-point sequence")
    p.add_argument("--out", choices=["text", "json"], default="text")
    p.set_defaults(run=cmd_expand)

    p = with_file("formulate", "emit a linear description")
    p.add_argument("--mode", choices=["std", "pointed", "beta", "partial"], default="beta")
    p.add_argument("--order", help="comma-separated nest-point sequence")
    p.add_argument("--out", choices=["lp", "json", "text"], default="text")
    p.set_defaults(run=cmd_formulate)

    p = with_file("cuts", "enumerate extended running-intersection cuts")
    p.add_argument("--max-neighbors", type=int, default=3)
    p.add_argument("--max-center-card", type=int, default=None)
    p.add_argument("--unfiltered", action="store_true", help="keep cuts the redundancy filter would drop")
    p.add_argument("--out", choices=["lp", "json", "text"], default="text")
    p.set_defaults(run=cmd_cuts)

    p = with_file("solve", "maximize a linear objective exactly")
    p.add_argument("--objective", required=True, help="objective file")
    p.add_argument("--mode", choices=["beta", "std"], default="beta")
    p.add_argument("--verify", action="store_true", help="compare with brute-force enumeration")
    p.add_argument("--out", choices=["text", "json"], default="text")
    p.set_defaults(run=cmd_solve)

    p = with_file("verify", "run brute-force certification suites")
    p.add_argument("--suite", choices=["exactness", "facets", "decomp", "cuts", "all"], default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--report", choices=["text", "json"], default="text")
    p.add_argument("--out", choices=["text", "json"], default="text", help="alias of --report")
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("dense-family", help="write a dense-facet instance and its facet")
    p.add_argument("n", type=int)
    p.add_argument("--out", default=".", help="output directory, or 'json'/'text' to print instead")
    p.add_argument("--format", choices=["text", "json"], default="text", help="file format of the facet")
    p.set_defaults(run=None)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "dense-family":
            return cmd_dense_family(args)
        g = load(args.file)
        return args.run(args, g)
    except (UsageError, MultipolyError, OSError) as exc:
        print(f"multipoly {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
