"""End-to-end patch conversion: graph, buses, parameters, document."""

from __future__ import annotations

from dataclasses import dataclass

from . import csdgen
from .buses import allocate
from .errors import GraphError, MissingDependency
from .graph import build_nets, resolve_rates, validate_graph
from .mapping import resolve_all
from .moduledb import DependencyReport, ModuleDb, dependency_report
from .pch2 import Pch2Patch


@dataclass
class ConvertResult:
    csd_text: str
    report: DependencyReport
    variation: int


def convert_patch(
    patch: Pch2Patch,
    db: ModuleDb,
    variation: int | None = None,
    options: csdgen.CsdOptions | None = None,
) -> ConvertResult:
    """Produce the Csound document for a parsed patch.

    Raises MissingDependency when the library lacks a needed spec, template
    or table, and GraphError subclasses for invalid wiring. Conversion uses
    the patch's stored active variation unless overridden.
    """
    report = dependency_report(db, patch)
    if not report.ok:
        raise MissingDependency(
            "module library incomplete:\n" + report.format()
        )
    diagnostics = validate_graph(patch, db)
    if diagnostics:
        raise GraphError(
            "patch failed validation:\n"
            + "\n".join(str(d) for d in diagnostics)
        )

    if variation is None:
        variation = min(patch.description.active_variation, 7)
    options = options or csdgen.CsdOptions()

    params = resolve_all(db, patch, variation)

    area_lines: dict[str, list[str]] = {}
    zak_audio = zak_control = 2
    used_type_ids: list[int] = []
    for area in ("va", "fx"):
        modules = patch.modules(area)
        nets = build_nets(modules, patch.cables(area), db.specs)
        assignment = resolve_rates(nets, modules, db.specs)
        busmap = allocate(nets, modules, db.specs, assignment)
        zak_audio = max(zak_audio, busmap.audio_count)
        zak_control = max(zak_control, busmap.control_count)
        lines = []
        for module in sorted(modules, key=lambda m: m.module_index):
            type_id = assignment[module.module_index]
            used_type_ids.append(type_id)
            lines.append(
                csdgen.render_invocation(
                    module,
                    db.specs[type_id],
                    params[(area, module.module_index)],
                    busmap,
                )
            )
        area_lines[area] = lines

    udo_texts = csdgen.collect_udo_texts(db, used_type_ids)
    text = csdgen.render_csd(
        options,
        zak_audio,
        zak_control,
        udo_texts,
        area_lines["va"],
        area_lines["fx"],
    )
    return ConvertResult(csd_text=text, report=report, variation=variation)
