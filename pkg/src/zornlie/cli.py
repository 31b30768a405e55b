"""Command-line driver.

Exit codes: 0 pass, 1 verification failure, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import algebras, e8, exc, g2, roots, verify

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    """Bad arguments or unreadable input; maps to exit code 2."""


def _dump(data) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _need_algebra(args, allowed=algebras.NAMES) -> str:
    if not args.algebra:
        raise UsageError("--algebra is required for this subcommand")
    if args.algebra not in allowed:
        raise UsageError(f"unknown algebra {args.algebra!r}; choose from {', '.join(allowed)}")
    return args.algebra


def _need_json(args):
    if args.format not in (None, "json"):
        raise UsageError("this subcommand writes JSON only (CSV is available for roots)")


# ------------------------------------------------------------- element I/O
def load_element(name: str, path: str):
    """Parse and validate an element file; raises UsageError naming the problem."""
    try:
        data = json.loads(Path(path).read_text())
    except OSError as err:
        raise UsageError(f"cannot read {path}: {err.strerror}") from None
    except json.JSONDecodeError as err:
        raise UsageError(f"{path} is not valid JSON: {err.msg}") from None
    if not isinstance(data, dict):
        raise UsageError(f"{path}: element JSON must be an object")
    try:
        if name == "g2":
            return g2.G2Element.from_json(data)
        tag = data.get("algebra", name)
        if tag != name:
            raise ValueError(f"element is tagged {tag!r}, expected {name!r}")
        if name == "e8":
            return e8.E8Element.from_json(data)
        return exc.ExcElement.from_json({**data, "algebra": name})
    except (ValueError, TypeError, ZeroDivisionError) as err:
        raise UsageError(f"{path}: {err}") from None


# ------------------------------------------------------------ subcommands
def cmd_verify(args) -> int:
    name = _need_algebra(args)
    _need_json(args)
    if args.samples is not None and args.samples < 1:
        raise UsageError("--samples must be positive")
    rep = verify.run(name, args.mode, args.samples or verify.DEFAULT_SAMPLES, args.seed)
    _emit(_dump(rep.to_json()), args.out)
    print(f"verify {name} ({args.mode}): {'pass' if rep.passed else 'FAIL'} "
          f"in {rep.wall_time:.1f} s", file=sys.stderr)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_dims(args) -> int:
    _need_json(args)
    names = [args.algebra] if args.algebra else list(algebras.NAMES)
    for n in names:
        if n not in algebras.NAMES:
            raise UsageError(f"unknown algebra {n!r}")
    dims = {n: algebras.get(n).dim for n in names}
    ok = all(dims[n] == algebras.EXPECTED_DIM[n] for n in names)
    _emit(_dump({"dims": dims, "expected": {n: algebras.EXPECTED_DIM[n] for n in names}, "passed": ok}), args.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_branching(args) -> int:
    _need_json(args)
    names = [args.algebra] if args.algebra else list(algebras.NAMES)
    report, ok = {}, True
    for n in names:
        if n not in algebras.NAMES:
            raise UsageError(f"unknown algebra {n!r}")
        br = algebras.get(n).branching()
        want = algebras.EXPECTED_BRANCHING[n]
        ok &= br == want
        report[n] = {"blocks": br, "total": sum(br.values()), "expected": want, "passed": br == want}
    _emit(_dump(report), args.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_bracket(args) -> int:
    name = _need_algebra(args)
    _need_json(args)
    if not args.lhs or not args.rhs:
        raise UsageError("bracket needs --lhs and --rhs")
    x, y = load_element(name, args.lhs), load_element(name, args.rhs)
    alg = algebras.get(name)
    _emit(_dump(alg.bracket(x, y).to_json()), args.out)
    return EXIT_OK


def cmd_structure_constants(args) -> int:
    name = _need_algebra(args)
    _need_json(args)
    sc = verify.structure_constants(name)
    _emit(_dump(sc.to_json()), args.out)
    return EXIT_OK


def cmd_roots(args) -> int:
    name = args.algebra or "e6"
    if name not in ("e6", "g2"):
        raise UsageError("roots are available for e6 and g2")
    rows = roots.e6_root_rows() if name == "e6" else roots.g2_root_rows()
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        text = buf.getvalue()
    else:
        payload = {"algebra": name, "roots": rows}
        if name == "e6":
            payload["table1"] = [r.to_json() for r in roots.table1_audit()]
        text = _dump(payload)
    _emit(text, args.out)
    if name == "e6":
        return EXIT_OK if all(r.ok for r in roots.table1_audit()) else EXIT_FAIL
    return EXIT_OK


COMMANDS = {
    "verify": cmd_verify,
    "dims": cmd_dims,
    "branching": cmd_branching,
    "bracket": cmd_bracket,
    "structure-constants": cmd_structure_constants,
    "roots": cmd_roots,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zornlie", description="Exact Zorn-type exceptional Lie algebras")
    p.add_argument("command", choices=list(COMMANDS))
    p.add_argument("--algebra")
    p.add_argument("--mode", choices=verify.MODES, default="exhaustive")
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--lhs")
    p.add_argument("--rhs")
    p.add_argument("--out")
    p.add_argument("--format", choices=("json", "csv"))
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except UsageError as err:
        print(f"zornlie: error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
