"""Command-line front end.

Exit status: 0 on success, 1 on a domain error or failed verification (with a
JSON error object under ``--json``), 2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from .roots import A1_1, C2_2, AlgebraKind, RootError, kind_from_name

FORMAT = 1
CONFIG_KEYS = {"kind", "degree", "max_n", "order", "q", "cache_dir", "time_limit", "basis"}


class DomainError(Exception):
    pass


def read_config(path) -> dict:
    """``key = value`` lines; ``#`` starts a comment."""
    out = {}
    for i, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DomainError(f"{path}:{i}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in CONFIG_KEYS:
            raise DomainError(f"{path}:{i}: unknown key {key!r}")
        out[key] = value.strip('"').strip("'")
    return out


def _kind(name: str) -> AlgebraKind:
    try:
        return kind_from_name(name)
    except (KeyError, ValueError, RootError) as exc:
        raise DomainError(f"unknown algebra kind {name!r}") from exc


def _kinds(name: str) -> list[AlgebraKind]:
    return [A1_1, C2_2] if name == "both" else [_kind(name)]


def _parse(text: str, kind: AlgebraKind):
    from .terms.parser import parse_expression

    return parse_expression(text, kind)


# -- subcommands ---------------------------------------------------------------------

def cmd_nf(args):
    from .terms.printer import format_expression

    kind = _kind(args.kind)
    x = _parse(args.expr, kind)
    if args.basis == "pbw":
        from .terms.pbw import normalize_pbw

        y = normalize_pbw(x)
    else:
        from .cartanweyl import expand_to_chevalley
        from .terms.oracle import normalize_chevalley

        y = normalize_chevalley(expand_to_chevalley(x) if args.expand else x, args.degree)
    return {"result": format_expression(y), "expression": y.to_json()}


def cmd_commutator(args):
    from .terms.expression import commutator
    from .terms.printer import format_expression

    kind = _kind(args.kind)
    x = commutator(_parse(args.x, kind), _parse(args.y, kind), args.twisted)
    if args.basis == "pbw":
        from .terms.pbw import normalize_pbw

        x = normalize_pbw(x)
    elif args.basis == "chevalley":
        from .cartanweyl import expand_to_chevalley
        from .terms.oracle import normalize_chevalley

        x = normalize_chevalley(expand_to_chevalley(x), args.degree)
    return {"result": format_expression(x), "expression": x.to_json()}


def cmd_rootvec(args):
    from .cartanweyl import root_vector, root_vector_normal_form
    from .roots import parse_root
    from .terms.expression import RootVector
    from .terms.printer import format_expression

    kind = _kind(args.kind)
    gamma = parse_root(args.root)
    if args.raw:
        x = root_vector(kind, gamma, args.family, args.primed)
    else:
        x = root_vector_normal_form(kind, RootVector(gamma.n, gamma.k, args.family, args.primed), args.degree)
    return {"result": format_expression(x), "expression": x.to_json()}


def cmd_schur(args):
    from .cartanweyl import schur_transform
    from .terms.printer import format_expression

    x = schur_transform(_kind(args.kind), args.n, args.direction)
    return {"result": format_expression(x), "expression": x.to_json()}


def cmd_invol(args):
    from .cartanweyl import involution
    from .terms.printer import format_expression

    kind = _kind(args.kind)
    x = _parse(args.expr, kind)
    for _ in range(args.times):
        x = involution(kind, args.name, x)
    return {"result": format_expression(x), "expression": x.to_json()}


def cmd_coproduct(args):
    from .hopf import coproduct, opposite_coproduct

    kind = _kind(args.kind)
    t = (opposite_coproduct if args.opposite else coproduct)(_parse(args.expr, kind))
    return {"result": str(t), "tensor": t.to_json()}


def cmd_antipode(args):
    from .hopf import antipode
    from .terms.printer import format_expression

    x = antipode(_parse(args.expr, _kind(args.kind)))
    return {"result": format_expression(x), "expression": x.to_json()}


def cmd_rmatrix(args):
    from .rmatrix import build_r

    r = build_r(_kind(args.kind), args.degree)
    data = r.to_json()
    if args.out:
        Path(args.out).write_text(json.dumps(data, sort_keys=True, indent=1) + "\n")
    text = "\n".join(f"{name} = {getattr(r, name)}" for name in ("r_plus", "r_zero", "r_minus")) + "\nK (formal)"
    return {"result": text, "rmatrix": data}


def cmd_roots(args):
    from .roots import color, normal_ordering, parity, positive_roots, root_label

    kind = _kind(args.kind)
    if args.ordering:
        roots = normal_ordering(args.ordering, args.cutoff)
    else:
        roots = positive_roots(kind, reduced=args.reduced, cutoff=args.cutoff)
    rows = [{"root": root_label(g), "parity": parity(kind, g),
             "color": color(kind, g) if g.is_real else "imaginary"} for g in roots]
    width = max(len(r["root"]) for r in rows)
    text = "\n".join(f"{r['root'].ljust(width)}  parity={r['parity']}  {r['color']}" for r in rows)
    return {"result": text, "roots": rows}


def cmd_verify(args):
    from .verify import run_suite

    options = {"time_limit": args.time_limit}
    for key in ("max_n", "degree", "order", "which"):
        value = getattr(args, key)
        if value is not None:
            options[key] = value
    if args.q is not None:
        options["q"] = Fraction(args.q)
    reports = run_suite(args.suite, _kinds(args.kind), options)
    ok = all(r.passed for r in reports)
    out = {"result": "\n".join(r.text() for r in reports), "passed": ok, "reports": [r.to_json() for r in reports]}
    if not ok:
        first = next((c for c in (r.first_failure() for r in reports) if c is not None), None)
        out["first_failure"] = first.to_json() if first else None
        out["status"] = 1
    return out


def cmd_corpus(args):
    from .corpus import generate_cases, load_corpus, run_corpus, write_corpus

    if args.action == "regenerate":
        if not args.out:
            raise DomainError("corpus regenerate needs --out")
        cases = generate_cases(check=not args.no_check)
        write_corpus(cases, args.out)
        return {"result": f"wrote {len(cases)} cases to {args.out}", "count": len(cases)}
    cases = load_corpus(args.path, args.tags.split(",") if args.tags else None)
    if args.action == "list":
        return {"result": "\n".join(c.id for c in cases), "ids": [c.id for c in cases]}
    results = run_corpus(cases)
    failed = [r for r in results if not r.passed]
    lines = [f"{len(results) - len(failed)}/{len(results)} cases match"]
    for r in failed[:20]:
        lines.append(f"MISMATCH {r.case.id}\n  expected: {r.case.expected}\n  actual:   {r.actual}")
    out = {"result": "\n".join(lines), "passed": not failed, "count": len(results),
           "mismatches": [{"id": r.case.id, "expected": r.case.expected, "actual": r.actual} for r in failed]}
    if failed:
        out["status"] = 1
    return out


# -- parser --------------------------------------------------------------------------

def build_parser(defaults: dict | None = None) -> argparse.ArgumentParser:
    d = defaults or {}
    kind_default = d.get("kind", "a11")
    degree_default = int(d.get("degree", 8))

    p = argparse.ArgumentParser(prog="qaffine", description="Exact computations in U_q(A1^(1)) and U_q(C(2)^(2)).")
    p.add_argument("--json", action="store_true", help="emit JSON instead of text")
    p.add_argument("--config", help="key = value file with defaults (kind, degree, cache_dir, ...)")
    sub = p.add_subparsers(dest="command", required=True)

    def with_kind(sp, both=False):
        choices = ["a11", "c22"] + (["both"] if both else [])
        sp.add_argument("--kind", default=kind_default if kind_default in choices else choices[0], choices=choices)
        return sp

    s = with_kind(sub.add_parser("nf", help="normal form of an expression"))
    s.add_argument("--expr", required=True)
    s.add_argument("--basis", choices=["chevalley", "pbw"], default=d.get("basis", "chevalley"))
    s.add_argument("--degree", type=int, default=degree_default)
    s.add_argument("--expand", action="store_true", help="expand Cartan-Weyl vectors before the Chevalley normal form")
    s.set_defaults(func=cmd_nf)

    s = with_kind(sub.add_parser("commutator", help="(q-)super-commutator of two expressions"))
    s.add_argument("--x", required=True)
    s.add_argument("--y", required=True)
    s.add_argument("--twisted", action="store_true", help="q-twisted bracket [x, y]_q")
    s.add_argument("--basis", choices=["free", "chevalley", "pbw"], default="pbw")
    s.add_argument("--degree", type=int, default=14)
    s.set_defaults(func=cmd_commutator)

    s = with_kind(sub.add_parser("rootvec", help="Cartan-Weyl root vector in Chevalley generators"))
    s.add_argument("--root", required=True)
    s.add_argument("--family", choices=["direct", "inverse"], default="direct")
    s.add_argument("--primed", action="store_true")
    s.add_argument("--raw", action="store_true", help="unreduced expansion")
    s.add_argument("--degree", type=int, default=14)
    s.set_defaults(func=cmd_rootvec)

    s = with_kind(sub.add_parser("schur", help="Schur transform between primed and new imaginary vectors"))
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--direction", choices=["prime_from_new", "new_from_prime"], default="prime_from_new")
    s.set_defaults(func=cmd_schur)

    s = with_kind(sub.add_parser("invol", help="apply an (anti)involution"))
    s.add_argument("--name", choices=["star", "ddagger", "omega", "tau"], required=True)
    s.add_argument("--expr", required=True)
    s.add_argument("--times", type=int, default=1)
    s.set_defaults(func=cmd_invol)

    s = with_kind(sub.add_parser("coproduct", help="coproduct of a Chevalley expression"))
    s.add_argument("--expr", required=True)
    s.add_argument("--opposite", action="store_true")
    s.set_defaults(func=cmd_coproduct)

    s = with_kind(sub.add_parser("antipode", help="antipode of a Chevalley expression"))
    s.add_argument("--expr", required=True)
    s.set_defaults(func=cmd_antipode)

    s = with_kind(sub.add_parser("rmatrix", help="truncated universal R-matrix"))
    s.add_argument("--degree", type=int, default=3)
    s.add_argument("--out")
    s.set_defaults(func=cmd_rmatrix)

    s = with_kind(sub.add_parser("roots", help="positive roots and parities"))
    s.add_argument("--reduced", action="store_true")
    s.add_argument("--cutoff", type=int, default=1)
    s.add_argument("--ordering", choices=["direct", "inverse"])
    s.set_defaults(func=cmd_roots)

    s = with_kind(sub.add_parser("verify", help="run a verification suite"), both=True)
    s.add_argument("suite", choices=["defining", "props", "schur", "involutions", "hopf", "rmatrix", "ybe", "unification"])
    s.add_argument("--max-n", dest="max_n", type=int, default=int(d["max_n"]) if "max_n" in d else None)
    s.add_argument("--degree", type=int, default=None)
    s.add_argument("--order", type=int, default=int(d["order"]) if "order" in d else None)
    s.add_argument("--which", choices=["one", "two", "both"], default=None,
                   help="props only: real and Cartan tables, imaginary tables, or both")
    s.add_argument("--q", default=d.get("q"))
    s.add_argument("--time-limit", dest="time_limit", type=float,
                   default=float(d["time_limit"]) if "time_limit" in d else None)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("corpus", help="golden corpus")
    s.add_argument("action", choices=["run", "list", "regenerate"])
    s.add_argument("--tags")
    s.add_argument("--path")
    s.add_argument("--out")
    s.add_argument("--no-check", dest="no_check", action="store_true")
    s.set_defaults(func=cmd_corpus)
    return p


def _config_from_argv(argv) -> dict:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    return read_config(known.config) if known.config else {}


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    as_json = "--json" in argv
    try:
        config = _config_from_argv(argv)
    except (OSError, DomainError) as exc:
        return _fail(stdout, as_json, "config", str(exc))
    if "cache_dir" in config:
        os.environ["QAFFINE_CACHE_DIR"] = config["cache_dir"]
    parser = build_parser(config)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        out = args.func(args)
    except (ValueError, ArithmeticError, KeyError, RuntimeError, OSError, DomainError) as exc:
        from .terms.parser import ParseError

        kind = "parse" if isinstance(exc, ParseError) else type(exc).__name__
        return _fail(stdout, args.json, kind, str(exc))
    status = out.pop("status", 0)
    if args.json:
        payload = {"format": FORMAT, "command": args.command, **{k: v for k, v in out.items() if k != "result"}}
        payload["text"] = out["result"]
        stdout.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        stdout.write(out["result"] + "\n")
    return status


def _fail(stdout, as_json: bool, kind: str, message: str) -> int:
    if as_json:
        stdout.write(json.dumps({"format": FORMAT, "error": {"type": kind, "message": message}}, sort_keys=True) + "\n")
    else:
        sys.stderr.write(f"error ({kind}): {message}\n")
    return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
