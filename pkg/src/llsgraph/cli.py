"""Command-line front end.

Exit codes: 0 success, 1 verification violation or reproduction mismatch,
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .chain import (
    ChainConfig,
    OracleTooLarge,
    default_chain,
    enumerate_components,
    enumerate_components_bruteforce,
    enumeration_to_json,
)
from .graph import build_graph, connected_component_count
from .moves import (
    MoveGraphDisconnected,
    NodePair,
    find_path,
    path_to_json,
)
from .nonemptiness import is_nonempty_general
from .sequences import BNProblem, InvalidSequence, rho, rho_hat
from .verify import CHECKS, CHAIN_POLICIES, ResourceGuardExceeded, SweepBounds, find_disconnected
from .reference import pinned_example_checks

MAX_DEGREE = 10**4


class UsageError(Exception):
    pass


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip() != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _add_problem_args(p: argparse.ArgumentParser, chain: bool = True) -> None:
    p.add_argument("-g", type=int, required=True, help="genus")
    p.add_argument("-r", type=int, help="rank (defaults to len(a) - 1)")
    p.add_argument("-d", type=int, required=True, help="degree")
    p.add_argument("-a", type=_int_list, required=True, help="vanishing at P, e.g. 0,2,3")
    p.add_argument("-b", type=_int_list, required=True, help="vanishing at Q, e.g. 0,3,5")
    if chain:
        p.add_argument("--chain", type=_int_list,
                       help="component genera, e.g. 1,1 (default: g elliptic components)")


def _problem(args) -> BNProblem:
    if args.d > MAX_DEGREE:
        raise UsageError(f"degree {args.d} exceeds the supported maximum {MAX_DEGREE}")
    r = args.r if args.r is not None else len(args.a) - 1
    try:
        return BNProblem(args.g, r, args.d, args.a, args.b)
    except InvalidSequence as exc:
        raise UsageError(str(exc)) from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _chain(args, p: BNProblem) -> ChainConfig:
    if getattr(args, "chain", None) is None:
        return default_chain(p.g)
    try:
        cfg = ChainConfig(args.chain)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if cfg.genus != p.g:
        raise UsageError(f"chain {cfg} has total genus {cfg.genus}, but g={p.g}")
    return cfg


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_rho(args) -> int:
    p = _problem(args)
    data = {"problem": p.to_json(), "rho": rho(p), "rho_hat": rho_hat(p),
            "nonempty": is_nonempty_general(p)}
    if args.json:
        print(json.dumps(data))
    else:
        print(f"rho={data['rho']} rho_hat={data['rho_hat']} nonempty={str(data['nonempty']).lower()}")
    return 0


def cmd_enumerate(args) -> int:
    p = _problem(args)
    cfg = _chain(args, p)
    if args.bruteforce:
        comps = enumerate_components_bruteforce(p, cfg)
    else:
        comps = enumerate_components(p, cfg)
    if args.json:
        print(json.dumps(enumeration_to_json(p, cfg, comps)))
    else:
        for c in comps:
            print(c.label())
        print(f"# {len(comps)} components", file=sys.stderr)
    return 0


def cmd_graph(args) -> int:
    p = _problem(args)
    gr = build_graph(p, _chain(args, p))
    if args.json:
        _emit(json.dumps(gr.to_json()) + "\n", args.output)
    else:
        _emit(gr.to_dot(), args.output)
    return 0


def cmd_components(args) -> int:
    p = _problem(args)
    cfg = _chain(args, p)
    gr = build_graph(p, cfg)
    k = connected_component_count(gr)
    if args.json:
        print(json.dumps({"problem": p.to_json(), "chain": list(cfg.genera),
                          "irreducible_components": len(gr.vertices), "connected_components": k}))
    else:
        print(k)
    return 0


def cmd_path(args) -> int:
    p = _problem(args)
    split = tuple(args.split) if args.split else (1, p.g - 1)
    if len(split) != 2:
        raise UsageError("--split takes two genera, e.g. 1,1")
    try:
        src = NodePair.make(args.src, split, p)
        dst = NodePair.make(args.dst, split, p)
        path = find_path(src, dst, p)
    except MoveGraphDisconnected as exc:
        print(f"move graph disconnected: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.json:
        print(json.dumps(path_to_json(path)))
    else:
        for step in path:
            arrow = "<-" if step.inverse else "->"
            print(f"{step.kind.value:8s} j0={step.j0}  b1 {step.source.b1} {arrow} {step.target.b1}")
        print(f"# {len(path)} steps", file=sys.stderr)
    return 0


def cmd_sweep(args) -> int:
    try:
        bounds = SweepBounds(args.g_max, args.r_max, args.d_max, args.chain_policy)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    names = list(CHECKS) if args.check == "all" else [args.check]
    failed = False
    reports = []
    try:
        if args.check == "disconnected":
            found = find_disconnected(bounds, jobs=args.jobs)
            for p, k in found:
                print(f"{p}  components={k}")
            print(f"# {len(found)} disconnected instances with rho_hat = 0", file=sys.stderr)
            return 0
        for name in names:
            report = CHECKS[name](bounds, jobs=args.jobs)
            reports.append(report)
            print(report.summary())
            for v in report.violations[:20]:
                print(f"  {v.detail}\n    repro: {v.reproducer()}")
            failed |= not report.ok
    except ResourceGuardExceeded as exc:
        raise UsageError(str(exc)) from None
    if args.json:
        payload = [r.to_json() for r in reports]
        Path(args.json).write_text(json.dumps(payload[0] if len(payload) == 1 else payload, indent=1))
    if args.csv:
        Path(args.csv).write_text("".join(r.to_csv() for r in reports))
    return 1 if failed else 0


def cmd_repro(args) -> int:
    ok = True
    for name, expected, actual in pinned_example_checks():
        good = expected == actual
        ok &= good
        print(f"{'PASS' if good else 'FAIL'} {name}: expected {expected}, got {actual}")
    print("PASS" if ok else "FAIL")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="llsgraph", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rho", help="rho, rho_hat and the nonemptiness verdict")
    _add_problem_args(p, chain=False)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_rho)

    p = sub.add_parser("enumerate", help="list irreducible components on a chain")
    _add_problem_args(p)
    p.add_argument("--json", action="store_true")
    p.add_argument("--bruteforce", action="store_true", help="use the Cartesian-product oracle")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("graph", help="intersection graph as DOT (default) or JSON")
    _add_problem_args(p)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--dot", action="store_true")
    fmt.add_argument("--json", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("components", help="number of connected components")
    _add_problem_args(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_components)

    p = sub.add_parser("path", help="move sequence between two node pairs")
    _add_problem_args(p, chain=False)
    p.add_argument("--from", dest="src", type=_int_list, required=True, help="b1 of the start pair")
    p.add_argument("--to", dest="dst", type=_int_list, required=True, help="b1 of the end pair")
    p.add_argument("--split", type=_int_list, help="g1,g2 (default 1,g-1)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_path)

    p = sub.add_parser("sweep", help="run an exhaustive verification")
    p.add_argument("check", choices=[*CHECKS, "disconnected", "all"])
    p.add_argument("--g-max", type=int, default=4)
    p.add_argument("--r-max", type=int, default=2)
    p.add_argument("--d-max", type=int, default=6)
    p.add_argument("--chain-policy", choices=CHAIN_POLICIES, default="all-genus-1")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--json", metavar="FILE")
    p.add_argument("--csv", metavar="FILE")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("repro", help="reproduce the pinned disconnected example")
    p.set_defaults(func=cmd_repro)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, OracleTooLarge) as exc:
        parser.exit(2, f"llsgraph: error: {exc}\n")


if __name__ == "__main__":
    sys.exit(main())
