"""Command-line front end.

Exit status: 0 when a check holds (or a command succeeds), 1 when a check
fails, 2 on usage or data errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import cohomology, fanodb, positivity
from .errors import TorquivError
from .quiver import quiver_of_sections
from .sections import format_monomial
from .toric import ToricVariety, load_fan_json


class UsageError(Exception):
    pass


def _dump(payload) -> str:
    return json.dumps(payload, sort_keys=True)


def _parse_ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _variety(args) -> ToricVariety:
    if getattr(args, "fan", None):
        return load_fan_json(Path(args.fan).read_text(encoding="utf-8"))
    if getattr(args, "db", None):
        return _db(args).smooth_fano(*args.db)
    raise UsageError("give --db DIM INDEX or --fan FILE")


def _db(args) -> fanodb.FanoDatabase:
    return fanodb.default_database(args.db_path)


def _collection(args, X: ToricVariety):
    src = getattr(args, "collection", None)
    if src in (None, "db"):
        if X.key is None:
            raise UsageError("--collection FILE is required with --fan")
        return _db(args).full_str_exc_coll(*X.key)
    coll = json.loads(Path(src).read_text(encoding="utf-8"))
    if not isinstance(coll, list) or not coll:
        raise UsageError("collection file must hold a nonempty list of class vectors")
    return [tuple(int(x) for x in c) for c in coll]


def _quiver(args):
    X = _variety(args)
    return quiver_of_sections(X, _collection(args, X))


def _verdict(args, name: str, value: bool, extra=None) -> int:
    if args.json:
        payload = {"check": name, "result": value}
        payload.update(extra or {})
        print(_dump(payload))
    else:
        print(f"{name}: {'true' if value else 'false'}")
    return 0 if value else 1


# -- commands -----------------------------------------------------------------


def cmd_fano(args) -> int:
    X = _db(args).smooth_fano(args.dim, args.index)
    if args.json:
        payload = X.to_dict()
        payload.update(key=list(X.key), name=X.name, cl_rank=X.cl_rank)
        print(_dump(payload))
        return 0
    print(f"smoothFanoToricVariety({args.dim},{args.index}): {X.name or ''}")
    print(f"rays ({X.n_rays}): " + " ".join(str(list(r)) for r in X.fan.rays))
    print("max cones: " + " ".join(str(list(c)) for c in X.fan.max_cones))
    print(f"class group rank: {X.cl_rank}")
    print("deg:")
    for row in X.deg:
        print("  " + " ".join(f"{x:3d}" for x in row))
    return 0


def cmd_quiver(args) -> int:
    Q = _quiver(args)
    fmt = "json" if args.json else args.out
    if fmt == "json":
        print(Q.to_json())
    elif fmt == "dot":
        sys.stdout.write(Q.to_dot())
    else:
        for i in range(len(Q)):
            print(f"Q#{i}")
            for line in Q.vertex_block(i).splitlines():
                print("  " + line)
        print(f"{len(Q.arrows)} arrows")
    return 0


def cmd_check(args) -> int:
    Q = _quiver(args)
    twist = args.twist
    if args.chain:
        chain = _parse_ints(args.chain)
        try:
            value = fanodb.do_higher_self_exts_vanish_chain(Q, chain, twist, db=_db(args))
        except (ValueError, KeyError) as exc:
            raise UsageError(f"bad chain: {exc}") from exc
    elif twist is not None:
        value = cohomology.do_higher_self_exts_vanish_twisted(Q, twist)
    else:
        value = cohomology.do_higher_self_exts_vanish(Q)
    return _verdict(args, "doHigherSelfExtsVanish", value, {"chain": args.chain, "twist": twist})


def cmd_forbidden(args) -> int:
    X = _variety(args)
    sets = cohomology.forbidden_sets(X)
    if args.json:
        print(_dump(cohomology.forbidden_sets_json(X)))
        return 0
    for i, fs in sets.items():
        body = ",".join("{" + ",".join(map(str, f.rays)) + "}" for f in fs)
        print(f"{i} => {{{body}}}")
    return 0


def cmd_nef(args) -> int:
    Q = _quiver(args)
    return _verdict(args, "bundlesNefCheck", positivity.bundles_nef_check(Q, args.n), {"n": args.n})


def cmd_oracle(args) -> int:
    X = _variety(args)
    D = _parse_ints(args.divisor)
    if len(D) != X.n_rays:
        raise UsageError(f"divisor needs {X.n_rays} entries")
    h = cohomology.cohomology_oracle(X, D)
    if args.json:
        print(_dump({"divisor": D, "h": h}))
    else:
        print("  ".join(f"h^{i} = {v}" for i, v in enumerate(h)))
    return 0


def cmd_export_db(args) -> int:
    text = json.dumps(_db(args).to_records(), indent=1, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")
    common.add_argument("--db-path", default=argparse.SUPPRESS,
                        help=f"database file (overrides ${fanodb.ENV_VAR})")

    parser = argparse.ArgumentParser(prog="torquiv", parents=[common],
                                     description="Quivers of sections on toric varieties.")
    parser.set_defaults(json=False, db_path=None)
    sub = parser.add_subparsers(dest="command", required=True)

    def variety_args(p):
        p.add_argument("--db", nargs=2, type=int, metavar=("DIM", "INDEX"))
        p.add_argument("--fan", metavar="FILE", help="fan JSON file")

    def quiver_args(p):
        variety_args(p)
        p.add_argument("--collection", metavar="FILE|db", default=None,
                       help="JSON list of class vectors, or 'db' for the stored collection")

    p = sub.add_parser("fano", parents=[common], help="show a database variety")
    p.add_argument("dim", type=int)
    p.add_argument("index", type=int)
    p.set_defaults(func=cmd_fano)

    p = sub.add_parser("quiver", parents=[common], help="build a quiver of sections")
    quiver_args(p)
    p.add_argument("--out", choices=("text", "dot", "json"), default="text")
    p.set_defaults(func=cmd_quiver)

    p = sub.add_parser("check", parents=[common], help="strong exceptionality check")
    quiver_args(p)
    p.add_argument("--twist", type=int, default=None, metavar="P")
    p.add_argument("--chain", default=None, metavar="K1,K2,...")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("forbidden", parents=[common], help="list forbidden sets")
    variety_args(p)
    p.set_defaults(func=cmd_forbidden)

    p = sub.add_parser("nef", parents=[common], help="bundlesNefCheck")
    quiver_args(p)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_nef)

    p = sub.add_parser("oracle", parents=[common], help="cohomology of a torus-invariant divisor")
    variety_args(p)
    p.add_argument("--divisor", required=True, metavar="A0,A1,...")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("export-db", parents=[common], help="write the database as JSON")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_export_db)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, TorquivError, KeyError, ValueError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"torquiv: error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
