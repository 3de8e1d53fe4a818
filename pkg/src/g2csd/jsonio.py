"""JSON view of a parsed patch, used by ``inspect --json``.

The schema mirrors the patch structure field for field. Unknown bit ranges
appear as plain integers and raw byte spans as hex strings, so nothing the
parser saw is lost in the dump. ``patch_from_dict`` is the exact inverse and
exists for round-trip checking.
"""

from __future__ import annotations

from .pch2 import (
    BinaryHeader,
    Cable,
    ModuleInstance,
    ParameterBlock,
    PatchDescription,
    Pch2Patch,
    TextHeader,
)


def _module_to_dict(mod: ModuleInstance) -> dict:
    out = {
        "type": mod.module_type,
        "index": mod.module_index,
        "horiz": mod.horiz_pos,
        "vert": mod.vert_pos,
        "color": mod.color,
        "appendix": mod.appendix,
    }
    if mod.appendix != 0:
        out["hidden_unknown"] = mod.hidden_unknown
        out["hidden_param"] = mod.hidden_param
    return out


def _cable_to_dict(cable: Cable) -> dict:
    return {
        "color": cable.color,
        "module_from": cable.module_from,
        "jack_from": cable.jack_from,
        "link_type": cable.link_type,
        "module_to": cable.module_to,
        "jack_to": cable.jack_to,
    }


def patch_to_dict(patch: Pch2Patch) -> dict:
    desc = patch.description
    return {
        "text_header": patch.text_header.raw.decode("latin-1"),
        "format_version": patch.binary_header.format_version,
        "file_type": patch.binary_header.file_type,
        "description": {
            "unknown_a": desc.unknown_a,
            "voice_count": desc.voice_count,
            "bar_height": desc.bar_height,
            "unknown_b": desc.unknown_b,
            "cable_visibility": list(desc.cable_visibility),
            "mono_poly": desc.mono_poly,
            "active_variation": desc.active_variation,
            "category": desc.category,
        },
        "modules": {
            area: [_module_to_dict(m) for m in patch.modules(area)]
            for area in ("va", "fx")
        },
        "cables": {
            area: [_cable_to_dict(c) for c in patch.cables(area)]
            for area in ("va", "fx")
        },
        "cable_unknown": {
            "va": patch.cable_unknown_va,
            "fx": patch.cable_unknown_fx,
        },
        "parameters": {
            area: [
                {"module_index": b.module_index, "values": b.values}
                for b in patch.params(area)
            ]
            for area in ("va", "fx")
        },
        "mystery": patch.mystery_raw.hex(),
        "trailing": patch.trailing.hex(),
    }


def patch_from_dict(data: dict) -> Pch2Patch:
    desc = data["description"]
    patch = Pch2Patch(
        text_header=TextHeader(data["text_header"].encode("latin-1")),
        binary_header=BinaryHeader(
            format_version=data["format_version"], file_type=data["file_type"]
        ),
        description=PatchDescription(
            unknown_a=desc["unknown_a"],
            voice_count=desc["voice_count"],
            bar_height=desc["bar_height"],
            unknown_b=desc["unknown_b"],
            cable_visibility=tuple(bool(v) for v in desc["cable_visibility"]),
            mono_poly=desc["mono_poly"],
            active_variation=desc["active_variation"],
            category=desc["category"],
        ),
        mystery_raw=bytes.fromhex(data["mystery"]),
        cable_unknown_va=data["cable_unknown"]["va"],
        cable_unknown_fx=data["cable_unknown"]["fx"],
        trailing=bytes.fromhex(data["trailing"]),
    )
    for area in ("va", "fx"):
        modules = [
            ModuleInstance(
                module_type=m["type"],
                module_index=m["index"],
                horiz_pos=m["horiz"],
                vert_pos=m["vert"],
                color=m["color"],
                appendix=m["appendix"],
                hidden_unknown=m.get("hidden_unknown"),
                hidden_param=m.get("hidden_param"),
            )
            for m in data["modules"][area]
        ]
        cables = [
            Cable(
                color=c["color"],
                module_from=c["module_from"],
                jack_from=c["jack_from"],
                link_type=c["link_type"],
                module_to=c["module_to"],
                jack_to=c["jack_to"],
            )
            for c in data["cables"][area]
        ]
        params = [
            ParameterBlock(module_index=b["module_index"],
                           values=[list(row) for row in b["values"]])
            for b in data["parameters"][area]
        ]
        if area == "va":
            patch.modules_va, patch.cables_va, patch.params_va = modules, cables, params
        else:
            patch.modules_fx, patch.cables_fx, patch.params_fx = modules, cables, params
    return patch
