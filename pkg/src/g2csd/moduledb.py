"""Plain-text module library: specs, Csound UDO templates and mapping tables.

The library is a directory with three subtrees:

``specs/``      one file per module type, line-oriented key/value text
``templates/``  verbatim Csound user-defined opcode bodies
``maps/``       lookup tables converting stored 7-bit values to real values

Everything the converter knows about a module type lives here, so behavior
can be changed without touching the Python code. Malformed files are reported
as load diagnostics rather than aborting the load.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .errors import MissingRoot
from .pch2 import Pch2Patch

RATE_AUDIO = "a"
RATE_CONTROL = "k"


@dataclass
class MappingRef:
    """How one module parameter maps to engine values.

    ``d TABLE`` uses a single table. ``s N TABLE0 TABLE1 ...`` selects the
    table by the raw value of the module's N-th parameter (1-based, as the
    mapping files count them).
    """

    kind: str                       # "d" or "s"
    table: str | None = None
    selector_param: int | None = None   # 1-based ordinal of the selecting sibling
    candidates: tuple[str, ...] = ()

    def referenced_tables(self) -> tuple[str, ...]:
        return (self.table,) if self.kind == "d" else self.candidates


@dataclass
class MappingTable:
    name: str
    domain_size: int
    values: tuple[float, ...]


@dataclass
class ModuleSpec:
    type_id: int
    name: str
    template_name: str
    inputs: list[tuple[int, str]] = field(default_factory=list)
    outputs: list[tuple[int, str]] = field(default_factory=list)
    params: list[MappingRef] = field(default_factory=list)
    twin_type_id: int | None = None

    @property
    def default_rate(self) -> str:
        if any(rate == RATE_AUDIO for _, rate in self.outputs):
            return RATE_AUDIO
        return RATE_CONTROL

    def input_rate(self, jack: int) -> str | None:
        for jack_id, rate in self.inputs:
            if jack_id == jack:
                return rate
        return None

    def output_rate(self, jack: int) -> str | None:
        for jack_id, rate in self.outputs:
            if jack_id == jack:
                return rate
        return None


@dataclass
class ModuleDb:
    specs: dict[int, ModuleSpec] = field(default_factory=dict)
    templates: dict[str, str] = field(default_factory=dict)
    tables: dict[str, MappingTable] = field(default_factory=dict)
    diagnostics: list[str] = field(default_factory=list)


@dataclass
class DependencyRow:
    type_id: int
    name: str
    spec_found: bool
    template_found: bool
    missing_tables: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.spec_found and self.template_found and not self.missing_tables


@dataclass
class DependencyReport:
    rows: list[DependencyRow] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(row.ok for row in self.rows)

    def format(self) -> str:
        if not self.rows:
            return "no modules used\n"
        lines = []
        for row in self.rows:
            marks = []
            marks.append("spec " + ("ok" if row.spec_found else "MISSING"))
            marks.append("template " + ("ok" if row.template_found else "MISSING"))
            if row.missing_tables:
                marks.append("missing tables: " + ", ".join(row.missing_tables))
            else:
                marks.append("tables ok")
            lines.append("type %3d %-12s %s" % (row.type_id, row.name, " | ".join(marks)))
        lines.append("status: %s" % ("ok" if self.ok else "MISSING DEPENDENCIES"))
        return "\n".join(lines) + "\n"


def default_db_root() -> Path:
    """Location of the library shipped inside the package."""
    return Path(resources.files("g2csd") / "data")


_MAPPING_LINE = re.compile(r"^(d\s+\S+|s\s+\d+(\s+\S+)+)$")


def _parse_spec_text(text: str, source: str, diagnostics: list[str]) -> ModuleSpec | None:
    type_id = None
    name = None
    template = None
    twin = None
    inputs: list[tuple[int, str]] = []
    outputs: list[tuple[int, str]] = []
    params: list[MappingRef] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        key = fields[0]
        try:
            if key == "type":
                type_id = int(fields[1])
            elif key == "name":
                name = fields[1]
            elif key == "template":
                template = fields[1]
            elif key == "twin":
                twin = int(fields[1])
            elif key in ("in", "out"):
                jack, rate = int(fields[1]), fields[2]
                if rate not in (RATE_AUDIO, RATE_CONTROL):
                    raise ValueError("rate must be 'a' or 'k'")
                (inputs if key == "in" else outputs).append((jack, rate))
            elif key == "d":
                params.append(MappingRef(kind="d", table=fields[1]))
            elif key == "s":
                params.append(
                    MappingRef(
                        kind="s",
                        selector_param=int(fields[1]),
                        candidates=tuple(fields[2:]),
                    )
                )
                if len(fields) < 3:
                    raise ValueError("selector line needs candidate tables")
            else:
                raise ValueError("unknown key %r" % key)
        except (IndexError, ValueError) as exc:
            diagnostics.append("%s:%d: %s" % (source, lineno, exc))
            return None
    if type_id is None or name is None or template is None:
        diagnostics.append("%s: missing required type/name/template line" % source)
        return None
    for direction, jacks in (("in", inputs), ("out", outputs)):
        if [j for j, _ in jacks] != list(range(len(jacks))):
            diagnostics.append(
                "%s: %s jack ids must be dense from 0" % (source, direction)
            )
            return None
    return ModuleSpec(
        type_id=type_id,
        name=name,
        template_name=template,
        inputs=inputs,
        outputs=outputs,
        params=params,
        twin_type_id=twin,
    )


def _parse_map_text(text: str, source: str, diagnostics: list[str]) -> MappingTable | None:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines:
        diagnostics.append("%s: empty mapping file" % source)
        return None
    head = lines[0].split()
    if len(head) != 2:
        diagnostics.append("%s: first line must be '<name> <domain_size>'" % source)
        return None
    name = head[0]
    try:
        domain = int(head[1])
    except ValueError:
        diagnostics.append("%s: bad domain size %r" % (source, head[1]))
        return None
    if not 2 <= domain <= 128:
        diagnostics.append("%s: domain size %d outside 2..128" % (source, domain))
        return None
    try:
        values = tuple(float(ln) for ln in lines[1:])
    except ValueError as exc:
        diagnostics.append("%s: %s" % (source, exc))
        return None
    if len(values) != domain:
        diagnostics.append(
            "%s: expected %d values, found %d" % (source, domain, len(values))
        )
        return None
    return MappingTable(name=name, domain_size=domain, values=values)


_OPCODE_NAME = re.compile(r"^\s*opcode\s+([A-Za-z_][A-Za-z0-9_]*)\s*,", re.MULTILINE)


def load_db(root: Path | str) -> ModuleDb:
    """Load a module library from disk. Missing root is the only fatal error."""
    root = Path(root)
    if not root.is_dir():
        raise MissingRoot("module library root %s does not exist" % root)
    db = ModuleDb()

    for path in sorted((root / "maps").glob("*.txt")):
        table = _parse_map_text(path.read_text(), str(path), db.diagnostics)
        if table is not None:
            if table.name in db.tables:
                db.diagnostics.append("%s: duplicate table %s" % (path, table.name))
            else:
                db.tables[table.name] = table

    for path in sorted((root / "templates").glob("*.txt")):
        text = path.read_text()
        match = _OPCODE_NAME.search(text)
        if match is None:
            db.diagnostics.append("%s: no opcode definition found" % path)
            continue
        db.templates[match.group(1)] = text

    for path in sorted((root / "specs").glob("*.txt")):
        spec = _parse_spec_text(path.read_text(), str(path), db.diagnostics)
        if spec is None:
            continue
        if spec.type_id in db.specs:
            db.diagnostics.append("%s: duplicate type id %d" % (path, spec.type_id))
            continue
        db.specs[spec.type_id] = spec

    _check_cross_references(db)
    return db


def _check_cross_references(db: ModuleDb) -> None:
    for spec in db.specs.values():
        for ordinal, ref in enumerate(spec.params, 1):
            for table_name in ref.referenced_tables():
                if table_name not in db.tables:
                    db.diagnostics.append(
                        "spec %d (%s): parameter %d references unknown table %s"
                        % (spec.type_id, spec.name, ordinal, table_name)
                    )
            if ref.kind == "s":
                if not 1 <= (ref.selector_param or 0) <= len(spec.params):
                    db.diagnostics.append(
                        "spec %d (%s): selector ordinal %r out of range"
                        % (spec.type_id, spec.name, ref.selector_param)
                    )
                else:
                    selector = spec.params[ref.selector_param - 1]
                    selector_table = (
                        db.tables.get(selector.table) if selector.kind == "d" else None
                    )
                    if selector_table and selector_table.domain_size != len(ref.candidates):
                        db.diagnostics.append(
                            "spec %d (%s): %d candidate tables for a selector with "
                            "domain %d"
                            % (
                                spec.type_id,
                                spec.name,
                                len(ref.candidates),
                                selector_table.domain_size,
                            )
                        )
        if spec.template_name not in db.templates:
            db.diagnostics.append(
                "spec %d (%s): template %s not found"
                % (spec.type_id, spec.name, spec.template_name)
            )
        if spec.twin_type_id is not None:
            twin = db.specs.get(spec.twin_type_id)
            if twin is None:
                db.diagnostics.append(
                    "spec %d (%s): twin type %d not found"
                    % (spec.type_id, spec.name, spec.twin_type_id)
                )
            elif twin.twin_type_id not in (None, spec.type_id):
                db.diagnostics.append(
                    "spec %d (%s): twin chain does not loop back"
                    % (spec.type_id, spec.name)
                )


def spec_for(db: ModuleDb, type_id: int) -> ModuleSpec | None:
    return db.specs.get(type_id)


def dependency_report(db: ModuleDb, patch: Pch2Patch) -> DependencyReport:
    """One row per distinct module type the patch uses."""
    report = DependencyReport()
    for type_id in patch.used_type_ids():
        spec = db.specs.get(type_id)
        if spec is None:
            report.rows.append(
                DependencyRow(type_id=type_id, name="?", spec_found=False,
                              template_found=False)
            )
            continue
        missing = sorted(
            {
                table
                for ref in spec.params
                for table in ref.referenced_tables()
                if table not in db.tables
            }
        )
        report.rows.append(
            DependencyRow(
                type_id=type_id,
                name=spec.name,
                spec_found=True,
                template_found=spec.template_name in db.templates,
                missing_tables=missing,
            )
        )
    return report
