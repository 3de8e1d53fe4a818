"""Conversion of stored 7-bit parameter values to real engine values.

The patch file stores bare MIDI-style 0..127 values with no range
information; the mapping tables in the module library supply the actual
curves. A selector mapping picks its table by the raw (unmapped) value of a
sibling parameter, e.g. a range button choosing between a unipolar and a
bipolar level curve.
"""

from __future__ import annotations

from .errors import ArityMismatch, MissingSpec, RawOutOfDomain, SelectorOutOfRange
from .moduledb import MappingRef, MappingTable, ModuleDb
from .pch2 import Pch2Patch

MAX_VARIATION = 7


def map_param(
    ref: MappingRef,
    raw: int,
    siblings: list[int],
    tables: dict[str, MappingTable],
) -> float:
    """Map one raw value through its (possibly selector-dependent) table."""
    if ref.kind == "d":
        table_name = ref.table
    else:
        ordinal = ref.selector_param or 0
        if not 1 <= ordinal <= len(siblings):
            raise SelectorOutOfRange(
                "selector ordinal %d outside 1..%d" % (ordinal, len(siblings))
            )
        selector_raw = siblings[ordinal - 1]
        if selector_raw >= len(ref.candidates):
            raise SelectorOutOfRange(
                "selector value %d has no candidate table (have %d)"
                % (selector_raw, len(ref.candidates))
            )
        table_name = ref.candidates[selector_raw]
    table = tables.get(table_name)
    if table is None:
        raise RawOutOfDomain(table_name or "?", raw)
    if raw >= table.domain_size:
        raise RawOutOfDomain(table.name, raw)
    return table.values[raw]


def resolve_module_params(
    db: ModuleDb, type_id: int, raw_values: list[int]
) -> list[float]:
    spec = db.specs.get(type_id)
    if spec is None:
        raise MissingSpec(type_id)
    if len(raw_values) != len(spec.params):
        raise ArityMismatch(
            "%s: %d raw values for %d spec parameters"
            % (spec.name, len(raw_values), len(spec.params))
        )
    return [
        map_param(ref, raw, raw_values, db.tables)
        for ref, raw in zip(spec.params, raw_values)
    ]


def resolve_all(
    db: ModuleDb, patch: Pch2Patch, variation: int
) -> dict[tuple[str, int], list[float]]:
    """Mapped parameter values for every module, for one variation.

    Keys are (area, module index). Modules without a parameter block get an
    all-zero raw vector of the spec's length.
    """
    if not 0 <= variation <= MAX_VARIATION:
        raise ValueError("variation must be 0..%d, got %d" % (MAX_VARIATION, variation))
    resolved: dict[tuple[str, int], list[float]] = {}
    for area in ("va", "fx"):
        blocks = {b.module_index: b for b in patch.params(area)}
        for module in patch.modules(area):
            spec = db.specs.get(module.module_type)
            if spec is None:
                raise MissingSpec(module.module_type)
            block = blocks.get(module.module_index)
            if block is not None:
                raws = [row[variation] for row in block.values]
            else:
                raws = [0] * len(spec.params)
            try:
                resolved[(area, module.module_index)] = resolve_module_params(
                    db, module.module_type, raws
                )
            except (RawOutOfDomain, SelectorOutOfRange) as exc:
                exc.args = (
                    "module %d (%s) in %s area: %s"
                    % (module.module_index, spec.name, area, exc),
                )
                raise
    return resolved
