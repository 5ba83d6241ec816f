"""Command-line front end.

    matroid-ehrhart construct {uniform,minimal,graphic,file} ...
    matroid-ehrhart compute {ehrhart,hstar,volume,tutte,fvector,flats} [FILE] ...
    matroid-ehrhart check {formulas,identities,relaxation,conjectures} ...
    matroid-ehrhart relax FILE --hyperplane a,b,c [--hyperplane ...]

Exit codes: 0 success, 1 a check failed, 2 input or domain error,
3 capacity error.  Elapsed time goes to stderr so stdout is deterministic.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from pathlib import Path

from . import formulas, matroid, polytope, suites
from .errors import CapacityError, InputError, MatroidEhrhartError
from .formulas import Check

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAPACITY = 0, 1, 2, 3


def _pair(text: str) -> tuple[int, int]:
    try:
        k, n = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected k,n but got {text!r}") from None
    return k, n


def _labels(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated labels, got {text!r}") from None


def _edges(text: str) -> list[tuple[int, int]]:
    out = []
    for item in text.split(","):
        try:
            u, v = item.split("-")
            out.append((int(u), int(v)))
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad edge {item!r}; use u-v") from None
    return out


def dump_matroid(M: matroid.Matroid) -> str:
    return json.dumps(M.to_json()) + "\n"


def read_matroid(path: str) -> matroid.Matroid:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg})") from None
    return matroid.Matroid.from_json(data)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _report(command: str, inputs: dict, results, checks: list[Check], as_json: bool) -> int:
    failed = [c for c in checks if not c.passed]
    if as_json:
        doc = {
            "command": command,
            "inputs": inputs,
            "results": results,
            "checks": [c.to_json() for c in checks],
            "summary": {"checks": len(checks), "failed": len(failed), "pass": not failed},
        }
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        for c in checks:
            status = "PASS" if c.passed else "FAIL"
            sys.stdout.write(f"{status}  {c.name}" + (f"  [{c.detail}]" if c.detail else "") + "\n")
        if checks:
            sys.stdout.write(f"{len(checks) - len(failed)}/{len(checks)} checks passed\n")
    return EXIT_FAIL if failed else EXIT_OK


# -- subcommands ----------------------------------------------------------------


def cmd_construct(args) -> int:
    if args.kind in ("uniform", "minimal"):
        if args.k is None or args.n is None:
            raise InputError(f"construct {args.kind} needs --k and --n")
        M = getattr(matroid, args.kind)(args.k, args.n)
    elif args.kind == "graphic":
        if args.vertices is None or not args.edges:
            raise InputError("construct graphic needs --vertices and --edges")
        M = matroid.graphic_from_multigraph(args.vertices, args.edges)
    else:
        if not args.input:
            raise InputError("construct file needs --in")
        M = read_matroid(args.input)
    _emit(dump_matroid(M), args.out)
    return EXIT_OK


def _compute_minimal(what: str, k: int, n: int):
    """Closed-form results for the minimal matroid (no counting, no cap)."""
    if what == "ehrhart":
        h = formulas.hstar_minimal(k, n)
        data = polytope.EhrhartData(formulas.D_binomial(k, n), n - 1, h, sum(h))
        return data.to_json(), _human_ehrhart(data)
    if what == "hstar":
        h = list(formulas.hstar_minimal(k, n))
        return h, ",".join(map(str, h))
    if what == "volume":
        v = formulas.volume_minimal(k, n)
        return str(v), str(v)
    return None


def _human_ehrhart(data: polytope.EhrhartData) -> str:
    return (
        f"dimension: {data.dimension}\n"
        f"ehrhart: {data.ehrhart.format('t', math.factorial(data.dimension))}\n"
        f"hstar: {','.join(map(str, data.hstar))}\n"
        f"volume: {data.volume}"
    )


def cmd_compute(args) -> int:
    inputs: dict = {"what": args.what}
    M = None
    if args.minimal:
        k, n = args.minimal
        inputs["minimal"] = [k, n]
        done = _compute_minimal(args.what, k, n)
        if done is None:
            M = matroid.minimal(k, n)
        else:
            results, human = done
    elif args.uniform:
        k, n = args.uniform
        inputs["uniform"] = [k, n]
        M = matroid.uniform(k, n)
    elif args.file:
        inputs["file"] = args.file
        M = read_matroid(args.file)
    else:
        raise InputError("compute needs a matroid file, --minimal k,n or --uniform k,n")

    if M is not None:
        inputs["matroid"] = M.to_json()
        if args.what in ("ehrhart", "hstar", "volume"):
            data = polytope.ehrhart(M)
            if args.what == "ehrhart":
                results, human = data.to_json(), _human_ehrhart(data)
            elif args.what == "hstar":
                results, human = list(data.hstar), ",".join(map(str, data.hstar))
            else:
                results, human = str(data.volume), str(data.volume)
        elif args.what == "tutte":
            T = formulas.tutte(M)
            results, human = T.to_json(), str(T)
        elif args.what == "fvector":
            f = polytope.f_vector(M)
            results, human = list(f), ",".join(map(str, f))
        else:
            recs = matroid.flats(M)
            results = [{"flat": list(r.labels), "rank": r.rank} for r in recs]
            human = "\n".join(f"{r.rank}  {{{','.join(map(str, r.labels))}}}" for r in recs)

    if args.json:
        return _report(f"compute {args.what}", inputs, results, [], True)
    sys.stdout.write(human + "\n")
    return EXIT_OK


def cmd_check(args) -> int:
    suite = args.suite
    inputs: dict = {"suite": suite}
    if suite == "formulas":
        inputs["max_n"] = args.max_n
        checks = suites.formulas_suite(max_n=args.max_n)
    elif suite == "identities":
        inputs["max"] = args.max
        checks = suites.identities_suite(max_param=args.max)
    elif suite == "relaxation":
        inputs["fixtures"] = args.fixtures
        checks = suites.relaxation_suite(_fixture_set(args.fixtures))
    else:
        inputs["enumerate"] = args.enumerate
        checks = suites.conjectures_suite(enumerate_n=args.enumerate, threads=args.threads)
    return _report(f"check {suite}", inputs, None, checks, args.json)


def _fixture_set(choice: str) -> dict:
    if choice == "default":
        return suites.default_fixtures()
    path = Path(choice)
    if not path.is_dir():
        raise InputError(f"--fixtures must be 'default' or a directory of matroid files: {choice}")
    return {p.stem: read_matroid(str(p)) for p in sorted(path.glob("*.json"))}


def cmd_relax(args) -> int:
    source = args.file or args.input
    if not source:
        raise InputError("relax needs a matroid file")
    if not args.hyperplane:
        raise InputError("relax needs at least one --hyperplane")
    M = read_matroid(source)
    for H in args.hyperplane:
        M = matroid.relax(M, H)
    _emit(dump_matroid(M), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="matroid-ehrhart",
        description="Matroid base polytopes: Ehrhart polynomials, h*-vectors and checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a matroid and print its JSON")
    p.add_argument("kind", choices=["uniform", "minimal", "graphic", "file"])
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--vertices", type=int)
    p.add_argument("--edges", type=_edges, help="comma-separated u-v pairs, 1-based vertices")
    p.add_argument("--in", dest="input")
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("compute", help="compute an invariant of one matroid")
    p.add_argument("what", choices=["ehrhart", "hstar", "volume", "tutte", "fvector", "flats"])
    p.add_argument("file", nargs="?")
    p.add_argument("--in", dest="file_opt")
    p.add_argument("--minimal", type=_pair, metavar="K,N")
    p.add_argument("--uniform", type=_pair, metavar="K,N")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("check", help="run a verification suite")
    p.add_argument("suite", choices=sorted(suites.SUITES))
    p.add_argument("--max", type=int, default=12, help="identity grid bound")
    p.add_argument("--max-n", type=int, default=12, help="formula grid bound")
    p.add_argument("--enumerate", type=int, default=6, help="largest n to enumerate")
    p.add_argument("--fixtures", default="default")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("relax", help="relax circuit-hyperplanes in order")
    p.add_argument("file", nargs="?")
    p.add_argument("--in", dest="input")
    p.add_argument("--hyperplane", type=_labels, action="append")
    p.add_argument("--out")
    p.set_defaults(func=cmd_relax)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "file_opt", None) and not args.file:
        args.file = args.file_opt
    start = time.perf_counter()
    try:
        code = args.func(args)
    except CapacityError as exc:
        print(f"error: capacity exceeded: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except MatroidEhrhartError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(f"elapsed: {time.perf_counter() - start:.3f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
