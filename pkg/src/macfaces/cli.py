"""Command-line front end.

Exit status: 0 on success, 1 when the answer is negative (rate not
achievable, degenerate region, failed verification), 2 for usage or input
errors.  Channel arguments are JSON files or the names of bundled channels
(``adder2``, ``xor2``, ...).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import counting
from .channel import ChannelSpec, all_subsets, format_set
from .errors import (
    CapacityError,
    ChannelValidationError,
    DegenerateRegionError,
    InvalidLabelError,
    NotAchievable,
    PreconditionError,
)
from .facelattice import (
    DEFAULT_TOL,
    decoding_order,
    enumerate_faces,
    face_dim,
    locate_minimal_face,
    merge_labels,
)
from .fixtures import resolve_channel
from .oracle import cross_validate, enumerate_vertices
from .region import DEFAULT_MARGIN, build_hrep, check_degeneracy


class _Exit(Exception):
    def __init__(self, code: int):
        self.code = code


def _emit(obj, out) -> None:
    json.dump(obj, out, indent=2)
    out.write("\n")


def _rates(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad rate tuple {text!r}") from None


def _nondegenerate_hrep(spec: ChannelSpec, out, as_json: bool):
    hrep = build_hrep(spec)
    if not hrep.degeneracy.nondegenerate:
        if as_json:
            _emit({"error": "degenerate", **hrep.degeneracy.to_dict()}, out)
        else:
            for v in hrep.degeneracy.violations:
                print(v.message, file=out)
            print("region is degenerate; face structure undefined", file=out)
        raise _Exit(1)
    return hrep


def cmd_info(args, out) -> int:
    spec = resolve_channel(args.channel)
    M = spec.users
    universe = frozenset(range(1, M + 1))
    rows = [(S, spec.mi.front_bound(S)) for S in all_subsets(M, nonempty=True)]
    if args.json:
        _emit({"users": M, "bounds": [{"S": sorted(S), "bits": v} for S, v in rows]}, out)
        return 0
    for S, v in rows:
        rest = universe - S
        cond = f"|X_{format_set(rest)}" if rest else ""
        print(f"I(X_{format_set(S)};Y{cond}) = {v:.6f}", file=out)
    return 0


def cmd_check(args, out) -> int:
    spec = resolve_channel(args.channel)
    report = check_degeneracy(spec, args.margin)
    if args.json:
        _emit(report.to_dict(), out)
    elif report.nondegenerate:
        print("non-degenerate", file=out)
    else:
        for v in report.violations:
            print(v.message, file=out)
    return 0 if report.nondegenerate else 1


def _faces_users(args, out) -> int:
    if args.channel is not None:
        spec = resolve_channel(args.channel)
        _nondegenerate_hrep(spec, out, args.json)
        return spec.users
    if args.users is None:
        raise PreconditionError("give a channel file or --users M")
    return args.users


def cmd_faces(args, out) -> int:
    M = _faces_users(args, out)
    labels = enumerate_faces(M, args.dim)
    if args.json:
        _emit([
            {**lab.to_dict(), "dim": face_dim(lab), "decoding": decoding_order(lab).to_dict()}
            for lab in labels
        ], out)
        return 0
    for lab in labels:
        print(f"{lab}  dim={face_dim(lab)}  order={decoding_order(lab)}", file=out)
    return 0


def cmd_count(args, out) -> int:
    if args.table is not None:
        if args.csv and args.csv != "-":
            with open(args.csv, "w", encoding="utf-8", newline="") as fh:
                counting.write_count_csv(args.table, fh)
        else:
            counting.write_count_csv(args.table, out)
        return 0
    if args.users is None:
        raise PreconditionError("count needs --users M or --table M_max")
    M = args.users
    if args.dim is not None:
        n = counting.count_total(M, args.dim)
        if args.json:
            _emit({"users": M, "dim": args.dim, "count": n}, out)
        else:
            print(n, file=out)
        return 0
    fc = counting.face_counts(M)
    if args.json:
        _emit({"users": M, "N_total": list(fc.per_dim), "N_dominant": list(fc.dominant),
               "N_front": list(fc.front), "N_back": list(fc.back)}, out)
    else:
        print(fc, file=out)
    return 0


def cmd_locate(args, out) -> int:
    spec = resolve_channel(args.channel)
    hrep = _nondegenerate_hrep(spec, out, args.json)
    try:
        label = locate_minimal_face(hrep, args.rate, args.tol)
    except NotAchievable as exc:
        if args.json:
            _emit({"achievable": False, "violated": str(exc.constraint),
                   "excess": exc.excess}, out)
        else:
            print(f"NotAchievable: {exc.constraint} violated by {exc.excess:.6f}", file=out)
        return 1
    plan = decoding_order(label)
    if args.json:
        _emit({"achievable": True, **label.to_dict(), "dim": face_dim(label),
               "decoding": plan.to_dict()}, out)
    else:
        print(f"label: {label}", file=out)
        print(f"dim: {face_dim(label)}", file=out)
        print(f"order: {plan}", file=out)
    return 0


def cmd_vertices(args, out) -> int:
    spec = resolve_channel(args.channel)
    hrep = build_hrep(spec)
    vs = enumerate_vertices(hrep)
    labels = None
    if hrep.degeneracy.nondegenerate:
        labels = [locate_minimal_face(hrep, v) for v in vs.vertices]
    if args.json:
        _emit([
            {"rate": v.tolist(), "label": str(labels[k]) if labels else None}
            for k, v in enumerate(vs.vertices)
        ], out)
        return 0
    for k, v in enumerate(vs.vertices):
        coords = ", ".join(f"{x:.6f}" for x in v)
        tail = f"  {labels[k]}" if labels else ""
        print(f"({coords}){tail}", file=out)
    return 0


def cmd_verify(args, out) -> int:
    spec = resolve_channel(args.channel)
    hrep = _nondegenerate_hrep(spec, out, args.json)
    report = cross_validate(hrep)
    if args.json:
        _emit(report.to_dict(), out)
    else:
        print(f"oracle counts:  {report.oracle_counts}", file=out)
        print(f"formula counts: {report.formula_counts}", file=out)
        print(f"labels matched: {len(report.matches)}; pairs checked: {report.pairs_checked}",
              file=out)
        for m in report.mismatches:
            print(f"MISMATCH {m}", file=out)
        print("OK" if report.ok else f"FAILED ({len(report.mismatches)} mismatches)", file=out)
    return 0 if report.ok else 1


def lattice_dot(M: int) -> str:
    """Face lattice as DOT; an edge ``b -> a`` means ``a`` covers ``b``."""
    labels = enumerate_faces(M)
    by_dim: dict[int, list] = {}
    for lab in labels:
        by_dim.setdefault(face_dim(lab), []).append(lab)
    ids = {lab: f"f{k}" for k, lab in enumerate(labels)}
    lines = ["digraph face_lattice {", "  rankdir=BT;", "  node [shape=box, fontsize=10];"]
    for d in sorted(by_dim):
        lines.append(f"  subgraph dim{d} {{ rank=same;")
        for lab in by_dim[d]:
            lines.append(f'    {ids[lab]} [label="{lab}"];')
        lines.append("  }")
    for d in sorted(by_dim):
        for b in by_dim[d]:
            for a in by_dim.get(d + 1, ()):
                if merge_labels(a, b) == b:
                    lines.append(f"  {ids[b]} -> {ids[a]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_lattice(args, out) -> int:
    if args.channel is not None:
        spec = resolve_channel(args.channel)
        _nondegenerate_hrep(spec, out, False)
        M = spec.users
    elif args.users is not None:
        M = args.users
    else:
        raise PreconditionError("give a channel file or --users M")
    dot = lattice_dot(M)
    if args.dot and args.dot != "-":
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(dot)
    else:
        out.write(dot)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="macfaces",
        description="Faces, decoding orders and face counts of multiple-access rate regions.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("info", help="bounds I(X_S;Y|X_S^c) for every nonempty S")
    s.add_argument("channel")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_info)

    s = sub.add_parser("check", help="non-degeneracy report")
    s.add_argument("channel")
    s.add_argument("--margin", type=float, default=DEFAULT_MARGIN)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("faces", help="face labels with dimensions and decoding orders")
    s.add_argument("channel", nargs="?")
    s.add_argument("--users", type=int)
    s.add_argument("--dim", type=int)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_faces)

    s = sub.add_parser("count", help="exact face counts")
    s.add_argument("--users", type=int)
    s.add_argument("--dim", type=int)
    s.add_argument("--table", type=int, metavar="M_MAX")
    s.add_argument("--csv", metavar="OUT")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_count)

    s = sub.add_parser("locate", help="minimal face and decoding order of a rate tuple")
    s.add_argument("channel")
    s.add_argument("--rate", type=_rates, required=True)
    s.add_argument("--tol", type=float, default=DEFAULT_TOL)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_locate)

    s = sub.add_parser("vertices", help="vertices found by brute force")
    s.add_argument("channel")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_vertices)

    s = sub.add_parser("verify", help="cross-check labels against the brute-force lattice")
    s.add_argument("channel")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("lattice", help="face lattice as a DOT digraph")
    s.add_argument("channel", nargs="?")
    s.add_argument("--users", type=int)
    s.add_argument("--dot", metavar="OUT")
    s.set_defaults(func=cmd_lattice)
    return p


def run(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except _Exit as exc:
        return exc.code
    except DegenerateRegionError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except (ChannelValidationError, PreconditionError, InvalidLabelError, CapacityError,
            FileNotFoundError) as exc:
        print(f"macfaces {args.command}: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
