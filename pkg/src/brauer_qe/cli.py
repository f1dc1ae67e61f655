"""``brauer-qe``: analyse one group, or sweep a parameter box and compare the routes.

Exit codes: 0 success, 1 disagreement found (sweep/selftest), 2 invalid
parameters, 3 resource limit exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .burnside import theta
from .classifier import classify
from .construct import K_TYPES, QEParams, ValidationError, load_config, realize, validate
from .gamma import Applicability, gamma_route
from .groups import ResourceLimitError
from .relations import oracle_bound, prim, subgroup_classes
from .sweep import SweepRanges, run_sweep

EXIT_DISAGREE, EXIT_INVALID, EXIT_RESOURCE = 1, 2, 3


def _group_flags(ap: argparse.ArgumentParser) -> None:
    g = ap.add_argument_group("group parameters")
    g.add_argument("--p", type=int)
    g.add_argument("--q", type=int)
    g.add_argument("--k-type", choices=K_TYPES, default="cyclic")
    g.add_argument("--n", type=int)
    g.add_argument("--m", type=int)
    g.add_argument("--j", type=int, default=1)
    g.add_argument("--k", type=int)
    g.add_argument("--r", type=int)
    g.add_argument("--config", type=Path, help="file of 'key = value' blocks, one group per block")


def _params(args) -> list[QEParams]:
    if args.config is not None:
        return load_config(args.config)
    missing = [f"--{name}" for name in ("p", "q", "n", "m") if getattr(args, name) is None]
    if missing:
        raise ValidationError([f"missing {', '.join(missing)}"])
    return [QEParams(args.p, args.q, args.k_type, args.n, args.m, args.j, args.k, args.r)]


def _check(params: QEParams) -> None:
    problems = validate(params)
    if problems:
        raise ValidationError(problems)


def _bound(args) -> int:
    return args.oracle_max_order if args.oracle_max_order is not None else oracle_bound()


def do_classify(params: QEParams, args) -> dict:
    return {"params": params.to_dict(), **classify(params).to_json()}


def do_gamma(params: QEParams, args) -> dict:
    _check(params)
    result = gamma_route(realize(params), args.gamma_dihedral_includes_klein)
    if args.dot is not None and result.graph is not None:
        Path(args.dot).write_text(result.graph.to_dot())
    return {"params": params.to_dict(), **result.to_json(full=True)}


def do_prim(params: QEParams, args) -> dict:
    _check(params)
    s = prim(realize(params).group, bound=_bound(args))
    return {
        "params": params.to_dict(),
        "order": params.order,
        "invariants": s.invariants.to_list(),
        "kernel_rank": s.kernel.rank,
        "imprimitive_rank": s.imprimitive.rank,
    }


def do_relations(params: QEParams, args) -> dict:
    _check(params)
    real = realize(params)
    s = prim(real.group, bound=_bound(args))
    table = s.kernel.table
    out = {
        "params": params.to_dict(),
        "order": params.order,
        "subgroup_classes": len(table),
        "cyclic_classes": len(table.cyclic_indices),
        "kernel_rank": s.kernel.rank,
        "invariants": s.invariants.to_list(),
    }
    if args.full:
        out["basis"] = [e.to_json() for e in s.kernel.elements()]
    g = gamma_route(real, args.gamma_dihedral_includes_klein)
    witnesses = []
    if g.applicability is Applicability.APPLIES and g.graph.d > 1:
        comps = g.graph.components
        base = g.graph.vertices[comps[0][0]]
        for comp in comps[1:]:
            other = g.graph.vertices[comp[0]]
            elt = theta(real, base, other, subgroup_classes(real.group), hm=g.graph.vertices)
            witnesses.append({"components": [0, comps.index(comp)], "in_kernel": s.kernel.lattice.contains(list(elt.coeffs)),
                              "imprimitive": s.contains_imprimitive(elt), "element": elt.to_json()})
    out["witnesses"] = witnesses
    return out


def do_sweep(args) -> int:
    ranges = SweepRanges(tuple(args.p_values), args.q_max, args.n_max, args.m_max,
                         tuple(args.k_types) if args.k_types else K_TYPES)
    report = run_sweep(ranges, _bound(args), args.gamma_dihedral_includes_klein, args.workers)
    if args.output_dir is not None:
        args.output_dir.mkdir(parents=True, exist_ok=True)
        (args.output_dir / "sweep.json").write_text(json.dumps(report.to_json(), indent=1) + "\n")
        (args.output_dir / "sweep.csv").write_text(report.to_csv())
    if args.csv:
        sys.stdout.write(report.to_csv())
    else:
        print(json.dumps(report.to_json(timings=not args.no_timings), indent=1))
    print(json.dumps(report.summary), file=sys.stderr)
    return EXIT_DISAGREE if report.summary["disagreements"] else 0


SELFTEST = [
    QEParams(3, 7, "cyclic", 1, 1, 1),
    QEParams(2, 5, "cyclic", 2, 2, 1),
    QEParams(2, 5, "cyclic", 2, 2, 3),
    QEParams(2, 5, "semidihedral", 3, 2, 1, 0),
    QEParams(2, 17, "quaternion", 2, 3, 1, 1),
    QEParams(2, 17, "dihedral", 3, 4, 3, 1),
]


def do_selftest(args) -> int:
    from .sweep import run_tuple

    bad = 0
    for params in SELFTEST:
        rec = run_tuple(params, _bound(args), args.gamma_dihedral_includes_klein)
        preds = rec.predictions()
        mark = "ok " if rec.routes_agree else "BAD"
        bad += not rec.routes_agree
        print(f"{mark} {params.label():45s} " + ", ".join(f"{k}={v}" for k, v in preds.items()))
    return EXIT_DISAGREE if bad else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="brauer-qe", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--oracle-max-order", type=int, help="largest |G| handed to the exact oracle")
        p.add_argument("--gamma-dihedral-includes-klein", action="store_true",
                       help="let a Klein four quotient count as dihedral in the graph")
        fmt = p.add_mutually_exclusive_group()
        fmt.add_argument("--json", action="store_true", help="JSON output (default)")
        fmt.add_argument("--csv", action="store_true", help="CSV output (sweep only)")

    for name, helptext in [("classify", "closed-form verdict"), ("gamma", "graph criterion"),
                           ("relations", "Brauer relation lattice and witnesses"), ("prim", "exact Prim(G)")]:
        p = sub.add_parser(name, help=helptext)
        _group_flags(p)
        common(p)
        if name == "gamma":
            p.add_argument("--dot", metavar="FILE", help="also write the graph in DOT format")
        if name == "relations":
            p.add_argument("--full", action="store_true", help="include a basis of K(G)")

    p = sub.add_parser("sweep", help="cross-validate the routes over a box of parameters")
    p.add_argument("--p-values", type=int, nargs="+", default=[2, 3])
    p.add_argument("--q-max", type=int, default=17)
    p.add_argument("--n-max", type=int, default=3)
    p.add_argument("--m-max", type=int, default=3)
    p.add_argument("--k-types", nargs="+", choices=K_TYPES)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--output-dir", type=Path, help="write sweep.json and sweep.csv here")
    p.add_argument("--no-timings", action="store_true", help="omit timings for byte-stable output")
    common(p)

    p = sub.add_parser("selftest", help="run the built-in instances through all routes")
    common(p)
    return ap


HANDLERS = {"classify": do_classify, "gamma": do_gamma, "relations": do_relations, "prim": do_prim}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "sweep":
            return do_sweep(args)
        if args.command == "selftest":
            return do_selftest(args)
        docs = [HANDLERS[args.command](params, args) for params in _params(args)]
    except ValidationError as exc:
        print(f"invalid parameters: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    print(json.dumps(docs[0] if len(docs) == 1 else docs, indent=1))
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
