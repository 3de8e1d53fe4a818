"""Shared fixture builders: the worked-example patch and random corpora."""

from __future__ import annotations

import random
import string

from g2csd.pch2 import (
    BinaryHeader,
    Cable,
    LINK_IN_TO_IN,
    LINK_OUT_TO_IN,
    ModuleInstance,
    ParameterBlock,
    PatchDescription,
    Pch2Patch,
    TextHeader,
    VARIATION_SLOTS,
)

# Type ids of the bundled module library.
TYPE_OUT2 = 4
TYPE_OSC1 = 9
TYPE_NOISE = 26
TYPE_FLTLP = 92
TYPE_LEVADD = 112
TYPE_CONSTANT = 183
TYPE_MIX2 = 194
TYPE_MIX2A = 195


def rows(*values: int) -> list[list[int]]:
    """One parameter row per value, identical across all variation slots."""
    return [[v] * VARIATION_SLOTS for v in values]


def build_example_patch() -> Pch2Patch:
    """Noise -> lowpass -> stereo out, with a constant modulating the cutoff.

    Raw parameter values are chosen so the bundled mapping tables produce
    Noise color 10000, filter order 1 / mod depth 0.5 / cutoff 1050, constant
    24 and output pad 1.
    """
    patch = Pch2Patch()
    patch.text_header = TextHeader(b"Version=Nord Modular patch 3.0\r\n")
    patch.binary_header = BinaryHeader(format_version=23, file_type=0)
    patch.description = PatchDescription(voice_count=1, category=7)
    patch.modules_va = [
        ModuleInstance(module_type=TYPE_NOISE, module_index=1, vert_pos=0),
        ModuleInstance(module_type=TYPE_FLTLP, module_index=2, vert_pos=5),
        ModuleInstance(module_type=TYPE_CONSTANT, module_index=3, horiz_pos=1),
        ModuleInstance(module_type=TYPE_OUT2, module_index=4, vert_pos=10),
    ]
    patch.cables_va = [
        Cable(color=0, module_from=1, jack_from=0, link_type=LINK_OUT_TO_IN,
              module_to=2, jack_to=0),
        Cable(color=0, module_from=2, jack_from=0, link_type=LINK_OUT_TO_IN,
              module_to=4, jack_to=0),
        Cable(color=1, module_from=3, jack_from=0, link_type=LINK_OUT_TO_IN,
              module_to=2, jack_to=1),
    ]
    patch.params_va = [
        ParameterBlock(1, rows(80, 0)),        # color 80*125=10000, mute off
        ParameterBlock(2, rows(0, 0, 50, 21)),  # kbt 0, order 1, mod 0.5, cf 1050
        ParameterBlock(3, rows(88)),           # 88-64 = 24
        ParameterBlock(4, rows(0, 0, 0)),      # target 0, mute off, pad 1
    ]
    return patch


def build_fig1_patch() -> Pch2Patch:
    """Oscillator output feeding both stereo inputs via an in-to-in cable."""
    patch = Pch2Patch()
    patch.modules_va = [
        ModuleInstance(module_type=TYPE_OSC1, module_index=1),
        ModuleInstance(module_type=TYPE_OUT2, module_index=2),
    ]
    patch.cables_va = [
        Cable(color=0, module_from=1, jack_from=0, link_type=LINK_OUT_TO_IN,
              module_to=2, jack_to=0),
        Cable(color=0, module_from=2, jack_from=0, link_type=LINK_IN_TO_IN,
              module_to=2, jack_to=1),
    ]
    patch.params_va = [
        ParameterBlock(1, rows(10)),
        ParameterBlock(2, rows(0, 0, 0)),
    ]
    return patch


_PRINTABLE = (string.ascii_letters + string.digits + " =._-").encode()


def random_patch(rng: random.Random) -> Pch2Patch:
    """Structurally valid random patch for serialization round trips."""
    patch = Pch2Patch()
    patch.text_header = TextHeader(bytes(rng.choices(_PRINTABLE, k=rng.randrange(40))))
    patch.binary_header = BinaryHeader(format_version=rng.randrange(256), file_type=0)
    patch.description = PatchDescription(
        unknown_a=rng.randrange(1 << 12),
        voice_count=rng.randrange(1 << 5),
        bar_height=rng.randrange(1 << 14),
        unknown_b=rng.randrange(1 << 3),
        cable_visibility=tuple(rng.random() < 0.5 for _ in range(7)),
        mono_poly=rng.randrange(4),
        active_variation=rng.randrange(8),
        category=rng.randrange(16),
    )
    patch.mystery_raw = rng.randbytes(rng.randrange(24))
    patch.cable_unknown_va = rng.randrange(1 << 14)
    patch.cable_unknown_fx = rng.randrange(1 << 14)
    patch.trailing = rng.randbytes(rng.randrange(24))
    for area in ("va", "fx"):
        indices = rng.sample(range(256), rng.randrange(6))
        modules = []
        for idx in indices:
            appendix = rng.randrange(16) if rng.random() < 0.3 else 0
            modules.append(
                ModuleInstance(
                    module_type=rng.randrange(256),
                    module_index=idx,
                    horiz_pos=rng.randrange(1 << 7),
                    vert_pos=rng.randrange(1 << 7),
                    color=rng.randrange(256),
                    appendix=appendix,
                    hidden_unknown=rng.randrange(4) if appendix else None,
                    hidden_param=rng.randrange(16) if appendix else None,
                )
            )
        cables = []
        if modules:
            for _ in range(rng.randrange(5)):
                cables.append(
                    Cable(
                        color=rng.randrange(7),
                        module_from=rng.choice(modules).module_index,
                        jack_from=rng.randrange(1 << 6),
                        link_type=rng.randrange(2),
                        module_to=rng.choice(modules).module_index,
                        jack_to=rng.randrange(1 << 6),
                    )
                )
        params = [
            ParameterBlock(
                module_index=mod.module_index,
                values=[
                    [rng.randrange(128) for _ in range(VARIATION_SLOTS)]
                    for _ in range(rng.randrange(4))
                ],
            )
            for mod in modules
            if rng.random() < 0.7
        ]
        if area == "va":
            patch.modules_va, patch.cables_va, patch.params_va = modules, cables, params
        else:
            patch.modules_fx, patch.cables_fx, patch.params_fx = modules, cables, params
    return patch


class _DriverTracker:
    """Union-find over jacks that refuses to join two driven nets."""

    def __init__(self):
        self.parent = {}
        self.driven = {}

    def find(self, k):
        self.parent.setdefault(k, k)
        while self.parent[k] != k:
            self.parent[k] = self.parent[self.parent[k]]
            k = self.parent[k]
        return k

    def try_join(self, a, b, a_is_driver):
        ra, rb = self.find(a), self.find(b)
        a_driven = self.driven.get(ra, False) or a_is_driver
        b_driven = self.driven.get(rb, False)
        if ra == rb:
            # Same net already; an output rejoining it is its own driver.
            self.driven[ra] = a_driven or b_driven
            return True
        if a_driven and b_driven:
            return False
        self.parent[rb] = ra
        self.driven[ra] = a_driven or b_driven
        return True


def random_wired_patch(rng: random.Random, specs) -> Pch2Patch:
    """Random patch wired only between known module types, one driver per net."""
    patch = Pch2Patch()
    type_ids = sorted(specs)
    for area in ("va", "fx"):
        count = rng.randrange(1, 8)
        indices = rng.sample(range(1, 128), count)
        modules = [
            ModuleInstance(module_type=rng.choice(type_ids), module_index=idx)
            for idx in indices
        ]
        tracker = _DriverTracker()
        cables = []
        for _ in range(rng.randrange(12)):
            m_from = rng.choice(modules)
            m_to = rng.choice(modules)
            spec_from = specs[m_from.module_type]
            spec_to = specs[m_to.module_type]
            if not spec_to.inputs:
                continue
            jack_to = rng.choice(spec_to.inputs)[0]
            if rng.random() < 0.7 and spec_from.outputs:
                jack_from = rng.choice(spec_from.outputs)[0]
                link = LINK_OUT_TO_IN
                from_key = (m_from.module_index, jack_from, "out")
            elif spec_from.inputs:
                jack_from = rng.choice(spec_from.inputs)[0]
                link = LINK_IN_TO_IN
                from_key = (m_from.module_index, jack_from, "in")
            else:
                continue
            to_key = (m_to.module_index, jack_to, "in")
            if from_key == to_key:
                continue
            if not tracker.try_join(from_key, to_key, link == LINK_OUT_TO_IN):
                continue
            cables.append(
                Cable(color=rng.randrange(7), module_from=m_from.module_index,
                      jack_from=jack_from, link_type=link,
                      module_to=m_to.module_index, jack_to=jack_to)
            )
        params = [
            ParameterBlock(
                module_index=mod.module_index,
                values=[
                    [rng.randrange(2)] * VARIATION_SLOTS
                    for _ in specs[mod.module_type].params
                ],
            )
            for mod in modules
        ]
        if area == "va":
            patch.modules_va, patch.cables_va, patch.params_va = modules, cables, params
        else:
            patch.modules_fx, patch.cables_fx, patch.params_fx = modules, cables, params
    return patch


def normalize_csd(text: str) -> list[str]:
    """Strip comments and collapse whitespace for structural comparison."""
    lines = []
    for line in text.splitlines():
        line = line.split(";", 1)[0]
        line = " ".join(line.split())
        if line:
            lines.append(line)
    return lines
