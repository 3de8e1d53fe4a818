"""Assembly of the output Csound document.

The document follows a fixed shape: header constants, one ``zakinit``, the
deduplicated opcode definitions for every module type the patch uses, an
``instr 1`` holding the voice-area invocation lines, an ``instr 2`` for the
FX area, and a score that keeps both instruments running for a week. Each
invocation line carries the module's mapped parameter values first, then its
input bus numbers, then its output bus numbers.
"""

from __future__ import annotations

from dataclasses import dataclass

from .buses import BusMap
from .errors import ArityMismatch, MissingDependency
from .graph import DIR_IN, DIR_OUT, Endpoint
from .moduledb import ModuleDb, ModuleSpec
from .pch2 import ModuleInstance

SCORE_DURATION = "[60*60*24*7]"


@dataclass
class CsdOptions:
    sample_rate: int = 96000    # hardware audio rate
    ksmps: int = 16             # 4 would match the hardware's 24 kHz control rate
    nchnls: int = 2
    zero_dbfs: float = 1.0


def format_value(value: float) -> str:
    """Numbers as Csound literals; integral values lose the decimal point."""
    if isinstance(value, float) and value.is_integer():
        return str(int(value))
    return repr(value)


def render_invocation(
    module: ModuleInstance,
    spec: ModuleSpec,
    params: list[float],
    busmap: BusMap,
) -> str:
    """One opcode call line: name, parameters, input buses, output buses."""
    if len(params) != len(spec.params):
        raise ArityMismatch(
            "%s: %d parameter values for %d spec parameters"
            % (spec.name, len(params), len(spec.params))
        )
    args = [format_value(v) for v in params]
    for jack, _ in spec.inputs:
        args.append(str(busmap.input_bus[Endpoint(module.module_index, jack, DIR_IN)]))
    for jack, _ in spec.outputs:
        args.append(str(busmap.output_bus[Endpoint(module.module_index, jack, DIR_OUT)]))
    if not args:
        return spec.template_name
    return "%s %s" % (spec.template_name, ",".join(args))


def render_csd(
    options: CsdOptions,
    zak_audio: int,
    zak_control: int,
    udo_texts: list[str],
    va_lines: list[str],
    fx_lines: list[str],
) -> str:
    """The complete document text. Same inputs always give identical bytes."""
    parts = [
        "sr = %d ; audio sampling rate" % options.sample_rate,
        "ksmps = %d ; control period in samples" % options.ksmps,
        "nchnls = %d ; number of output channels" % options.nchnls,
        "0dbfs = %s ; full-scale amplitude" % repr(float(options.zero_dbfs)),
        "",
        "zakinit %d, %d ; audio and control bus counts" % (zak_audio, zak_control),
        "",
    ]
    for text in udo_texts:
        parts.append(text.rstrip("\n"))
        parts.append("")
    parts.append("instr 1 ; voice area")
    parts.extend(va_lines)
    parts.append("endin")
    parts.append("")
    parts.append("instr 2 ; fx area")
    parts.extend(fx_lines)
    parts.append("endin")
    parts.append("")
    parts.append("; score: keep both areas running")
    parts.append("i1 0 %s" % SCORE_DURATION)
    parts.append("i2 0 %s" % SCORE_DURATION)
    return "\n".join(parts) + "\n"


def collect_udo_texts(db: ModuleDb, type_ids: list[int]) -> list[str]:
    """Opcode definitions for the given resolved type ids, ascending, once each."""
    texts = []
    seen: set[str] = set()
    for type_id in sorted(set(type_ids)):
        spec = db.specs.get(type_id)
        if spec is None:
            raise MissingDependency("no spec for module type %d" % type_id)
        if spec.template_name in seen:
            continue
        text = db.templates.get(spec.template_name)
        if text is None:
            raise MissingDependency("no template %s" % spec.template_name)
        seen.add(spec.template_name)
        texts.append(text)
    return texts
