"""Command-line front end: ``stringcma <command> <input> [options]``."""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import fixtures
from .core import Presentation, classify, emit_dsl, parse_presentation, to_dot, to_json
from .errors import ParseError, StringCmaError

COMMANDS = ("validate", "classify", "strings", "reptype", "gproj", "cma",
            "dims", "derived", "verify", "export")
FORMATS = ("text", "json", "dsl", "dot")


class UsageError(Exception):
    pass


def load_input(source: str) -> Presentation:
    """Read a DSL or JSON file; a bare fixture name such as F2 loads the bundled copy."""
    if not os.path.exists(source) and source in fixtures.NAMES:
        return fixtures.load(source)
    try:
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {source}: {exc.strerror}") from exc
    if text.lstrip().startswith("{"):
        from .core import from_json
        try:
            return from_json(json.loads(text))
        except (ValueError, KeyError, TypeError) as exc:
            raise ParseError(f"bad JSON presentation: {exc}") from exc
    return parse_presentation(text)


def _dump(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _presentation_out(pres: Presentation, fmt: str, extra=None) -> str:
    if fmt == "dsl":
        return emit_dsl(pres)
    if fmt == "dot":
        return to_dot(pres)
    if fmt == "json":
        return _dump(extra if extra is not None else to_json(pres))
    return emit_dsl(pres)


def _reject(fmt: str, allowed: tuple[str, ...], cmd: str):
    if fmt not in allowed:
        raise UsageError(f"{cmd} does not support --format {fmt}")


def cmd_validate(pres, args):
    _reject(args.format, ("text", "json"), "validate")
    from .oracle import algebra_dim

    data = {"vertices": len(pres.quiver.vertices), "arrows": len(pres.quiver.arrows),
            "relations": len(pres.relations), "monomial": pres.is_monomial,
            "dimension": algebra_dim(pres, args.degree_bound)}
    if args.format == "json":
        return _dump({"ok": True, **data})
    return ("ok: {vertices} vertices, {arrows} arrows, {relations} relations, "
            "dimension {dimension}\n").format(**data)


def cmd_classify(pres, args):
    _reject(args.format, ("text", "json"), "classify")
    rep = classify(pres)
    if args.format == "json":
        return _dump(rep.to_json())
    lines = [f"monomial: {rep.is_monomial}", f"string: {rep.is_string}",
             f"gentle: {rep.is_gentle}"]
    lines += [f"  - {v}" for v in rep.violations]
    return "\n".join(lines) + "\n"


def cmd_strings(pres, args):
    from .strings import enumerate_strings, string_module

    _reject(args.format, ("text", "json"), "strings")
    words = enumerate_strings(pres, args.max_len)
    if args.format == "json":
        return _dump([{"string": str(w), "dimvec": list(string_module(pres, w).dimvec(pres))}
                      for w in words])
    lines = [f"{w}\t{list(string_module(pres, w).dimvec(pres))}" for w in words]
    lines.append(f"{len(words)} strings up to length {args.max_len}")
    return "\n".join(lines) + "\n"


def cmd_reptype(pres, args):
    from .strings import is_representation_finite

    _reject(args.format, ("text", "json"), "reptype")
    rep = is_representation_finite(pres)
    if args.format == "json":
        return _dump(rep.to_json())
    if rep.finite:
        return "representation-finite\n"
    return f"representation-infinite (witness {rep.witness_kind} {rep.witness})\n"


def cmd_gproj(pres, args):
    from .gproj import perfect_paths

    _reject(args.format, ("text", "json"), "gproj")
    rep = perfect_paths(pres)
    if args.format == "json":
        return _dump(rep.to_json())
    lines = [f"perfect paths ({len(rep.perfect_paths)}): "
             + ", ".join(str(p) for p in rep.perfect_paths)]
    for o in rep.orbits:
        lines.append("orbit: " + " -> ".join(str(p) for p in o))
    for g in rep.gproj:
        lines.append(f"{g.label}\t{g.word}\t{list(g.dimvec)}")
    lines.append("CM-free" if rep.cm_free else "CM-finite")
    return "\n".join(lines) + "\n"


def cmd_cma(pres, args):
    from .cma import build_cma

    cma = build_cma(pres)
    if args.format == "text":
        out = emit_dsl(cma.presentation)
        for d in cma.diagnostics:
            out += f"# {d}\n"
        return out
    return _presentation_out(cma.presentation, args.format, cma.to_json())


def cmd_dims(pres, args):
    from .gentle import format_dim, homological_dimensions

    _reject(args.format, ("text", "json"), "dims")
    h = homological_dimensions(pres)
    if args.format == "json":
        return _dump(h.to_json())
    return f"gl.dim = {format_dim(h.gldim)}, inj.dim = {h.injdim}\n"


def cmd_derived(pres, args):
    from .gentle import derived_class

    _reject(args.format, ("text", "json"), "derived")
    d = derived_class(pres)
    if args.format == "json":
        return _dump(d.to_json())
    if d.witness is None:
        return f"{d.kind}\n"
    return f"{d.kind} (homotopy band {d.witness})\n"


def cmd_verify(pres, args):
    from .oracle import verify_cma

    _reject(args.format, ("text", "json"), "verify")
    rep = verify_cma(pres, args.degree_bound)
    if args.format == "json":
        return _dump(rep.to_json())
    lines = [f"D1 = {rep.d1}, D2 = {rep.d2}: {'pass' if rep.passed else 'FAIL'}"]
    lines += [f"  - {f}" for f in rep.failures]
    return "\n".join(lines) + "\n"


def cmd_export(pres, args):
    fmt = "dsl" if args.format == "text" else args.format
    return _presentation_out(pres, fmt)


HANDLERS = {name: globals()[f"cmd_{name}"] for name in COMMANDS}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="stringcma",
                                description="Gorenstein-projectives and CM-Auslander algebras "
                                            "of string algebras")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")
    for name in COMMANDS:
        sp = sub.add_parser(name, help=HANDLERS[name].__name__.replace("cmd_", ""))
        sp.add_argument("input", help="DSL or JSON file, or a bundled fixture name (F1..F7)")
        sp.add_argument("--format", choices=FORMATS, default="text")
        sp.add_argument("--max-len", type=int, default=4, help="string length bound")
        sp.add_argument("--degree-bound", type=int, default=None,
                        help="path length bound for the dimension count")
        sp.add_argument("--output", default=None, help="write the report here")
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.max_len < 0 or (args.degree_bound is not None and args.degree_bound < 1):
            raise UsageError("numeric options must be positive")
        pres = load_input(args.input)
        out = HANDLERS[args.command](pres, args)
    except (UsageError, ParseError) as exc:
        print(f"stringcma: error: {exc}", file=sys.stderr)
        return 2
    except StringCmaError as exc:
        print(f"stringcma: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return 0


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
