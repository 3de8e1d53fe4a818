"""Command-line front end.

Exit codes: 0 success, 1 parse or file format error, 2 missing module
library dependencies, 3 graph or parameter validation failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import convert, csdgen, jsonio
from .errors import FormatError, G2csdError, GraphError, MappingError, MissingDependency, MissingRoot
from .graph import validate_graph
from .moduledb import dependency_report, default_db_root, load_db
from .pch2 import CABLE_COLOR_NAMES, CATEGORY_NAMES, parse_patch

EXIT_OK = 0
EXIT_PARSE_ERROR = 1
EXIT_MISSING_DEPS = 2
EXIT_VALIDATION = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="g2csd",
        description="Convert Nord Modular G2 patch files to Csound documents.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("input", type=Path, help="input .pch2 file")
        p.add_argument("--db", type=Path, default=None,
                       help="module library root (default: bundled library)")

    p = sub.add_parser("convert", help="write a .csd for a patch")
    add_common(p)
    p.add_argument("-o", "--output", type=Path, default=None,
                   help="output file (default: test.csd next to the input)")
    p.add_argument("--variation", type=int, default=None, metavar="0..7",
                   help="variation to bake in (default: patch's active one)")
    p.add_argument("--ksmps", type=int, default=None,
                   help="control period in samples (default 16; 4 gives kr=24000)")

    p = sub.add_parser("inspect", help="dump the decoded patch structure")
    add_common(p)
    p.add_argument("--json", action="store_true", help="machine-readable dump")

    p = sub.add_parser("validate", help="check patch wiring against the library")
    add_common(p)

    p = sub.add_parser("check-deps", help="report library dependency status")
    add_common(p)
    return parser


def _load_inputs(args):
    data = Path(args.input).read_bytes()
    patch = parse_patch(data)
    db = load_db(args.db if args.db is not None else default_db_root())
    return patch, db


def _cmd_convert(args) -> int:
    patch, db = _load_inputs(args)
    if args.variation is not None and not 0 <= args.variation <= 7:
        print("error: variation must be 0..7", file=sys.stderr)
        return EXIT_PARSE_ERROR
    options = csdgen.CsdOptions()
    if args.ksmps is not None:
        options.ksmps = args.ksmps
    try:
        result = convert.convert_patch(patch, db, variation=args.variation,
                                       options=options)
    except MissingDependency as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_MISSING_DEPS
    except (GraphError, MappingError) as exc:
        print("validation error: %s" % exc, file=sys.stderr)
        return EXIT_VALIDATION
    output = args.output or args.input.parent / "test.csd"
    output.write_text(result.csd_text)
    sys.stdout.write(result.report.format())
    print("wrote %s (variation %d)" % (output, result.variation))
    return EXIT_OK


def _cmd_inspect(args) -> int:
    patch, _ = _load_inputs(args)
    if args.json:
        json.dump(jsonio.patch_to_dict(patch), sys.stdout, indent=2)
        sys.stdout.write("\n")
        return EXIT_OK
    desc = patch.description
    print("text header:")
    for line in patch.text_header.lines:
        print("  %s" % line)
    print("format version: %d" % patch.binary_header.format_version)
    print("voices: %d  mono/poly: %d  active variation: %d  category: %s"
          % (desc.voice_count, desc.mono_poly, desc.active_variation,
             CATEGORY_NAMES[desc.category] if desc.category < 16 else desc.category))
    visible = [name for name, on in zip(CABLE_COLOR_NAMES, desc.cable_visibility) if on]
    print("visible cables: %s" % (", ".join(visible) or "none"))
    for area in ("va", "fx"):
        print("%s area: %d modules, %d cables" % (
            area, len(patch.modules(area)), len(patch.cables(area))))
        for mod in patch.modules(area):
            print("  module %3d type %3d at (%d,%d)" % (
                mod.module_index, mod.module_type, mod.horiz_pos, mod.vert_pos))
        for cable in patch.cables(area):
            kind = "out->in" if cable.link_type else "in->in"
            print("  cable %s %d.%d -> %d.%d (%s)" % (
                kind, cable.module_from, cable.jack_from,
                cable.module_to, cable.jack_to,
                CABLE_COLOR_NAMES[cable.color] if cable.color < 7 else cable.color))
    print("mystery payload: %s" % (patch.mystery_raw.hex() or "(empty)"))
    print("trailing bytes: %s" % (patch.trailing.hex() or "(none)"))
    return EXIT_OK


def _cmd_validate(args) -> int:
    patch, db = _load_inputs(args)
    diagnostics = validate_graph(patch, db)
    for diag in diagnostics:
        print(str(diag))
    if diagnostics:
        return EXIT_VALIDATION
    print("ok")
    return EXIT_OK


def _cmd_check_deps(args) -> int:
    patch, db = _load_inputs(args)
    report = dependency_report(db, patch)
    sys.stdout.write(report.format())
    return EXIT_OK if report.ok else EXIT_MISSING_DEPS


_COMMANDS = {
    "convert": _cmd_convert,
    "inspect": _cmd_inspect,
    "validate": _cmd_validate,
    "check-deps": _cmd_check_deps,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    if not args.input.is_file():
        print("error: no such file: %s" % args.input, file=sys.stderr)
        return EXIT_PARSE_ERROR
    try:
        return _COMMANDS[args.command](args)
    except FormatError as exc:
        print("parse error: %s" % exc, file=sys.stderr)
        return EXIT_PARSE_ERROR
    except MissingRoot as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_MISSING_DEPS
    except G2csdError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
