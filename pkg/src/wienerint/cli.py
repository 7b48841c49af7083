"""Command-line front end.

Exit codes are a contract for scripts: 0 success, 2 invalid arguments
or spec, 3 unsatisfiable query (stderr names the reason: parity, range
or not-covered), 4 violated internal invariant.  Output is
deterministic: labels, edge order and report fields never depend on
hashing or timing.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .audit import audit_battery, fit_closed_form
from .caterpillar import CaterpillarSpec, Family, construct
from .errors import InternalInvariant, Unsatisfiable, WienerintError
from .oracle import (
    HARD_CAP,
    enumerate_trees,
    exact_interval,
    exact_spectrum,
    format_spectrum,
    random_labeled_tree,
)
from .spectrum import build_index, measured_interval, solve
from .tree_core import format_edge_list, parse_edge_list, wiener, wiener_reference

__all__ = ["main"]


def _print_json(obj) -> None:
    print(json.dumps(obj))


def _read_tree(path: str | None):
    if path is None or path == "-":
        text = sys.stdin.read()
    else:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    return parse_edge_list(text)


def _cmd_construct(args) -> int:
    spec = CaterpillarSpec(Family[args.family], args.n, args.d, args.x, args.s)
    tree = construct(spec)
    if args.json:
        _print_json(
            {
                "family": spec.family.name,
                "n": spec.n,
                "d": spec.d,
                "x": spec.x,
                "s": spec.s,
                "wiener": wiener(tree),
                "edges": [list(edge) for edge in tree.edges],
            }
        )
    else:
        sys.stdout.write(format_edge_list(tree))
    return 0


def _cmd_wiener(args) -> int:
    tree = _read_tree(args.infile)
    value = wiener(tree)
    if args.check:
        reference = wiener_reference(tree)
        if reference != value:
            raise InternalInvariant(
                f"algorithms disagree: contribution {value}, distance matrix {reference}"
            )
    if args.json:
        _print_json({"n": tree.n, "wiener": value})
    else:
        print(value)
    return 0


def _cmd_solve(args) -> int:
    tree, witness = solve(args.n, args.w)
    if args.json:
        _print_json(
            {
                "witness": witness.to_json_dict(),
                "edges": [list(edge) for edge in tree.edges],
            }
        )
    else:
        _print_json(witness.to_json_dict())
        sys.stdout.write(format_edge_list(tree))
    return 0


def _interval_text(report) -> str:
    lines = []
    for key, value in report.to_json_dict().items():
        if isinstance(value, (list, tuple)):
            value = ",".join(str(v) for v in value)
        elif value is None:
            value = "none"
        lines.append(f"{key}\t{value}")
    return "\n".join(lines)


def _cmd_interval(args) -> int:
    index = build_index(args.n)
    report = measured_interval(index)
    if args.json:
        _print_json(report.to_json_dict())
    else:
        print(_interval_text(report))
    if args.plot:
        from .plots import plot_interval

        plot_interval(report, args.plot)
        print(f"figure written to {args.plot}", file=sys.stderr)
    return 0


def _cmd_spectrum(args) -> int:
    spectrum = exact_spectrum(args.n, max_n=args.max_n)
    if args.json:
        _print_json(
            {
                "n": spectrum.n,
                "count": len(spectrum.values),
                "min": spectrum.min_value,
                "max": spectrum.max_value,
                "trees": spectrum.tree_count,
                "values": list(spectrum.values),
            }
        )
    else:
        sys.stdout.write(format_spectrum(spectrum))
    if args.plot:
        from .plots import plot_spectrum

        plot_spectrum(spectrum, args.plot)
        print(f"figure written to {args.plot}", file=sys.stderr)
    return 0


def _cmd_oracle(args) -> int:
    if args.sample is not None:
        rng = random.Random(args.seed)
        checked = 0
        for _ in range(args.sample):
            n = rng.randint(2, args.sample_max_vertices)
            tree = random_labeled_tree(n, rng)
            fast = wiener(tree)
            slow = wiener_reference(tree)
            if fast != slow:
                raise InternalInvariant(
                    f"algorithms disagree on a random tree with n={n}: {fast} vs {slow}"
                )
            checked += 1
        if args.json:
            _print_json({"samples": checked, "agreement": True})
        else:
            print(f"ok {checked} random trees, both Wiener algorithms agree")
        return 0
    if args.n is None:
        raise WienerintError("oracle needs --n for enumeration or --sample for sampling")
    count = enumerate_trees(args.n, max_n=args.max_n)
    report = exact_interval(args.n, max_n=args.max_n)
    if args.json:
        payload = report.to_json_dict()
        payload["trees"] = count
        _print_json(payload)
    else:
        print(f"trees\t{count}")
        print(_interval_text(report))
    return 0


def _cmd_audit(args) -> int:
    parities = ("even", "odd") if args.parity == "both" else (args.parity,)
    entries = []
    for parity in parities:
        entries.extend(audit_battery(parity))
    if args.json:
        _print_json(
            [
                {
                    "identity": entry.identity,
                    "grid_a": entry.report_a.to_json_dict(),
                    "grid_b": entry.report_b.to_json_dict(),
                    "stable": entry.stable,
                }
                for entry in entries
            ]
        )
    else:
        for entry in entries:
            stability = "stable" if entry.stable else "UNSTABLE"
            print(
                f"{entry.identity}\t{entry.report_a.verdict}\t"
                f"{entry.report_b.verdict}\t{stability}"
            )
            for label, report in (("A", entry.report_a), ("B", entry.report_b)):
                bad = report.counterexample
                if bad is None:
                    continue
                detail = report.to_text().splitlines()[1].strip()
                print(f"  grid {label} {detail}")
    if args.plot:
        from .plots import plot_battery

        plot_battery(entries, args.plot)
        print(f"figure written to {args.plot}", file=sys.stderr)
    return 0


def _parse_caps(text: str | None) -> dict[str, int] | None:
    if text is None:
        return None
    caps = {}
    for piece in text.split(","):
        name, _, value = piece.partition("=")
        if not name or not value:
            raise WienerintError(f"bad caps syntax {piece!r}, expected name=power")
        try:
            caps[name.strip()] = int(value)
        except ValueError:
            raise WienerintError(f"bad cap power {value!r}") from None
    return caps


def _cmd_fit(args) -> int:
    form = fit_closed_form(Family[args.family], _parse_caps(args.caps))
    if args.json:
        _print_json(
            {
                "family": form.family.name,
                "target": form.target,
                "variables": list(form.variables),
                "caps": list(form.caps),
                "terms": [
                    {"powers": list(powers), "coeff": str(coeff)}
                    for powers, coeff in form.terms
                ],
                "verified_points": form.verified_points,
            }
        )
    else:
        print(f"{form.family.name} {form.target} = {form.to_text()}")
        print(f"verified exactly on {form.verified_points} extra points")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wienerint",
        description="Exact Wiener index tooling: construction, solving, auditing.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="emit one family member as an edge list")
    p.add_argument("--family", required=True, choices=[f.name for f in Family])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--s", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_construct)

    p = sub.add_parser("wiener", help="Wiener index of an edge-list tree")
    p.add_argument("--in", dest="infile", default=None, help="edge list path, default stdin")
    p.add_argument("--check", action="store_true", help="verify with the second algorithm")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_wiener)

    p = sub.add_parser("solve", help="find a tree with the requested Wiener index")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--w", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_solve)

    p = sub.add_parser("interval", help="measured vs claimed contiguous coverage")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("--plot", default=None, help="also render a figure to this path")
    p.set_defaults(handler=_cmd_interval)

    p = sub.add_parser("spectrum", help="exact value set by exhaustive enumeration")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-n", type=int, default=HARD_CAP, help="raise the size guard")
    p.add_argument("--json", action="store_true")
    p.add_argument("--plot", default=None, help="also render a figure to this path")
    p.set_defaults(handler=_cmd_spectrum)

    p = sub.add_parser("oracle", help="enumeration counts or randomized cross-checks")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--max-n", type=int, default=HARD_CAP, help="raise the size guard")
    p.add_argument("--sample", type=int, default=None, help="check K random trees")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--sample-max-vertices", type=int, default=300, help="largest sampled tree"
    )
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_oracle)

    p = sub.add_parser("audit", help="verdicts for every printed identity")
    p.add_argument("--parity", choices=["even", "odd", "both"], default="both")
    p.add_argument("--json", action="store_true")
    p.add_argument("--plot", default=None, help="also render a figure to this path")
    p.set_defaults(handler=_cmd_audit)

    p = sub.add_parser("fit", help="recover an exact closed form from measurements")
    p.add_argument("--family", required=True, choices=[f.name for f in Family])
    p.add_argument("--caps", default=None, help="per-variable degree caps, e.g. n=3,d=3,x=2")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_fit)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except Unsatisfiable as exc:
        print(f"unsatisfiable ({exc.reason}): {exc}", file=sys.stderr)
        return 3
    except InternalInvariant as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return 4
    except WienerintError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
