"""Decoder and encoder for the Nord Modular G2 ``.pch2`` patch container.

A patch file is a NUL-terminated text header, a two-byte binary header, and a
fixed sequence of bit-packed data objects: patch description, module lists for
the voice and FX areas, an opaque object of unknown purpose, cable lists, and
per-variation module parameters. Objects carrying knob and MIDI assignments,
module names and textpads may follow; they are preserved as an opaque tail.

The bit layouts here are community-derived. Unknown and reserved fields are
kept verbatim so that serialize(parse(b)) reproduces the input byte-exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .bitstream import BitReader, BitWriter
from .errors import (
    BadHeaderByte,
    DanglingCableEndpoint,
    DuplicateModuleIndex,
    InvariantViolation,
    OutOfBounds,
    TruncatedFile,
    UnknownFileType,
    VariationIndexMismatch,
)

# Object header bytes. Cable lists and module parameters share 0x52 and are
# told apart purely by their position in the file.
OBJ_DESCRIPTION = 0x21
OBJ_MODULE_LIST = 0x4A
OBJ_CABLE_LIST = 0x52
OBJ_MODULE_PARAMS = 0x52
OBJ_MYSTERY = 0x69

FILE_TYPE_PATCH = 0
FILE_TYPE_PERFORMANCE = 1

LOCATION_FX = 0
LOCATION_VOICE = 1

LINK_IN_TO_IN = 0
LINK_OUT_TO_IN = 1

# The parameter object stores variation rows 0..8, nine slots per parameter,
# although only variations 0..7 are addressable from the front panel.
VARIATION_SLOTS = 9

CABLE_COLOR_NAMES = ("red", "blue", "yellow", "orange", "green", "purple", "white")

CATEGORY_NAMES = (
    "No Cat", "Acoustic", "Sequencer", "Bass", "Classic", "Drum", "Fantasy",
    "FX", "Lead", "Organ", "Pad", "Piano", "Synth", "Audio In", "User 1",
    "User 2",
)


@dataclass
class TextHeader:
    """Human-readable preamble, kept verbatim (without the trailing NUL)."""

    raw: bytes = b""

    @property
    def lines(self) -> list[str]:
        text = self.raw.decode("latin-1")
        return text.replace("\r\n", "\n").split("\n")


@dataclass
class BinaryHeader:
    format_version: int = 0
    file_type: int = FILE_TYPE_PATCH


@dataclass
class PatchDescription:
    unknown_a: int = 0          # 12 bits, unidentified
    voice_count: int = 1        # 5 bits
    bar_height: int = 0         # 14 bits, height of the FX/VA split bar
    unknown_b: int = 0          # 3 bits, unidentified
    cable_visibility: tuple = (True,) * 7  # red..white, in color order
    mono_poly: int = 0          # 2 bits
    active_variation: int = 0   # 0..7, stored in 8 bits
    category: int = 0           # 0..15, stored in 8 bits


@dataclass
class ModuleInstance:
    module_type: int
    module_index: int
    horiz_pos: int = 0          # 7 bits
    vert_pos: int = 0           # 7 bits
    color: int = 0              # 8 bits
    appendix: int = 0           # 4 bits; nonzero means an extra field follows
    hidden_unknown: int | None = None   # 2 bits, present iff appendix != 0
    hidden_param: int | None = None     # 4 bits, present iff appendix != 0


@dataclass
class Cable:
    color: int                  # 0..6
    module_from: int
    jack_from: int              # 6 bits
    link_type: int              # LINK_IN_TO_IN or LINK_OUT_TO_IN
    module_to: int
    jack_to: int                # 6 bits


@dataclass
class ParameterBlock:
    module_index: int
    # One row per parameter; each row holds VARIATION_SLOTS 7-bit values.
    values: list[list[int]] = field(default_factory=list)


@dataclass
class Pch2Patch:
    text_header: TextHeader = field(default_factory=TextHeader)
    binary_header: BinaryHeader = field(default_factory=BinaryHeader)
    description: PatchDescription = field(default_factory=PatchDescription)
    modules_va: list[ModuleInstance] = field(default_factory=list)
    modules_fx: list[ModuleInstance] = field(default_factory=list)
    cables_va: list[Cable] = field(default_factory=list)
    cables_fx: list[Cable] = field(default_factory=list)
    params_va: list[ParameterBlock] = field(default_factory=list)
    params_fx: list[ParameterBlock] = field(default_factory=list)
    mystery_raw: bytes = b""
    cable_unknown_va: int = 0   # 14-bit reserved field of the VA cable list
    cable_unknown_fx: int = 0
    trailing: bytes = b""       # knob/MIDI/name/textpad objects, untouched

    def modules(self, area: str) -> list[ModuleInstance]:
        return self.modules_va if area == "va" else self.modules_fx

    def cables(self, area: str) -> list[Cable]:
        return self.cables_va if area == "va" else self.cables_fx

    def params(self, area: str) -> list[ParameterBlock]:
        return self.params_va if area == "va" else self.params_fx

    def used_type_ids(self) -> list[int]:
        seen: dict[int, None] = {}
        for mod in self.modules_va + self.modules_fx:
            seen.setdefault(mod.module_type, None)
        return sorted(seen)


def _expect_header(r: BitReader, expected: int) -> None:
    offset = r.byte_offset
    got = r.read(8)
    if got != expected:
        raise BadHeaderByte(expected, got, offset)


def parse_patch_description(r: BitReader) -> PatchDescription:
    _expect_header(r, OBJ_DESCRIPTION)
    r.read(16)  # body length; layout below is fixed, value recomputed on write
    desc = PatchDescription()
    desc.unknown_a = r.read(12)
    desc.voice_count = r.read(5)
    desc.bar_height = r.read(14)
    desc.unknown_b = r.read(3)
    desc.cable_visibility = tuple(bool(r.read(1)) for _ in CABLE_COLOR_NAMES)
    desc.mono_poly = r.read(2)
    desc.active_variation = r.read(8)
    desc.category = r.read(8)
    r.align()
    return desc


def parse_module_list(r: BitReader) -> tuple[int, list[ModuleInstance]]:
    _expect_header(r, OBJ_MODULE_LIST)
    location = r.read(2)
    count = r.read(8)
    modules = []
    seen: set[int] = set()
    for _ in range(count):
        mod = ModuleInstance(
            module_type=r.read(8),
            module_index=r.read(8),
            horiz_pos=r.read(7),
            vert_pos=r.read(7),
            color=r.read(8),
            appendix=r.read(4),
        )
        if mod.appendix != 0:
            mod.hidden_unknown = r.read(2)
            mod.hidden_param = r.read(4)
        if mod.module_index in seen:
            raise DuplicateModuleIndex(
                "module index %d repeated in area %d" % (mod.module_index, location)
            )
        seen.add(mod.module_index)
        modules.append(mod)
    r.align()
    return location, modules


def parse_cable_list(r: BitReader) -> tuple[int, int, list[Cable]]:
    _expect_header(r, OBJ_CABLE_LIST)
    location = r.read(2)
    unknown = r.read(14)
    count = r.read(8)
    cables = [
        Cable(
            color=r.read(3),
            module_from=r.read(8),
            jack_from=r.read(6),
            link_type=r.read(1),
            module_to=r.read(8),
            jack_to=r.read(6),
        )
        for _ in range(count)
    ]
    return location, unknown, cables


def parse_module_parameters(r: BitReader) -> tuple[int, list[ParameterBlock]]:
    _expect_header(r, OBJ_MODULE_PARAMS)
    r.read(16)  # body length, recomputed on write
    location = r.read(2)
    count = r.read(8)
    blocks = []
    for _ in range(count):
        block = ParameterBlock(module_index=r.read(8))
        param_count = r.read(8)
        for _ in range(param_count):
            row = []
            for slot in range(VARIATION_SLOTS):
                variation = r.read(8)
                if variation != slot:
                    raise VariationIndexMismatch(
                        "expected variation %d, file says %d" % (slot, variation)
                    )
                row.append(r.read(7))
            block.values.append(row)
        blocks.append(block)
    r.align()
    return location, blocks


def skip_mystery_object(r: BitReader) -> bytes:
    _expect_header(r, OBJ_MYSTERY)
    length = r.read(16)
    return r.read_bytes(length)


def _check_endpoints(area: str, modules: list[ModuleInstance], cables: list[Cable]):
    known = {m.module_index for m in modules}
    for cable in cables:
        if cable.module_from not in known or cable.module_to not in known:
            raise DanglingCableEndpoint(area, cable)


def parse_patch(data: bytes) -> Pch2Patch:
    """Decode a full ``.pch2`` byte string."""
    nul = data.find(0)
    if nul < 0:
        raise TruncatedFile("no NUL terminator after text header")
    patch = Pch2Patch()
    patch.text_header = TextHeader(data[:nul])
    try:
        r = BitReader(data, 8 * (nul + 1))
        patch.binary_header = BinaryHeader(format_version=r.read(8), file_type=r.read(8))
        if patch.binary_header.file_type != FILE_TYPE_PATCH:
            raise UnknownFileType(
                "file type %d is not a patch" % patch.binary_header.file_type
            )
        patch.description = parse_patch_description(r)

        areas: dict[int, list[ModuleInstance]] = {}
        for _ in range(2):
            location, modules = parse_module_list(r)
            areas[location] = modules
        patch.modules_va = areas.get(LOCATION_VOICE, [])
        patch.modules_fx = areas.get(LOCATION_FX, [])

        patch.mystery_raw = skip_mystery_object(r)

        cable_areas: dict[int, tuple[int, list[Cable]]] = {}
        for _ in range(2):
            location, unknown, cables = parse_cable_list(r)
            cable_areas[location] = (unknown, cables)
        patch.cable_unknown_va, patch.cables_va = cable_areas.get(LOCATION_VOICE, (0, []))
        patch.cable_unknown_fx, patch.cables_fx = cable_areas.get(LOCATION_FX, (0, []))

        param_areas: dict[int, list[ParameterBlock]] = {}
        for _ in range(2):
            location, blocks = parse_module_parameters(r)
            param_areas[location] = blocks
        patch.params_va = param_areas.get(LOCATION_VOICE, [])
        patch.params_fx = param_areas.get(LOCATION_FX, [])

        patch.trailing = r.read_bytes(r.bits_remaining // 8)
    except OutOfBounds as exc:
        raise TruncatedFile(str(exc)) from exc

    _check_endpoints("va", patch.modules_va, patch.cables_va)
    _check_endpoints("fx", patch.modules_fx, patch.cables_fx)
    return patch


def _write_description(w: BitWriter, desc: PatchDescription) -> None:
    w.write(8, OBJ_DESCRIPTION)
    # Body after the length field: 59 bits of fields plus padding = 8 bytes.
    w.write(16, 8)
    w.write(12, desc.unknown_a)
    w.write(5, desc.voice_count)
    w.write(14, desc.bar_height)
    w.write(3, desc.unknown_b)
    if len(desc.cable_visibility) != 7:
        raise InvariantViolation("cable_visibility must have 7 entries")
    for visible in desc.cable_visibility:
        w.write(1, 1 if visible else 0)
    w.write(2, desc.mono_poly)
    w.write(8, desc.active_variation)
    w.write(8, desc.category)
    w.align()


def _write_module_list(w: BitWriter, location: int, modules: list[ModuleInstance]):
    w.write(8, OBJ_MODULE_LIST)
    w.write(2, location)
    w.write(8, len(modules))
    seen: set[int] = set()
    for mod in modules:
        if mod.module_index in seen:
            raise InvariantViolation("duplicate module index %d" % mod.module_index)
        seen.add(mod.module_index)
        w.write(8, mod.module_type)
        w.write(8, mod.module_index)
        w.write(7, mod.horiz_pos)
        w.write(7, mod.vert_pos)
        w.write(8, mod.color)
        w.write(4, mod.appendix)
        if mod.appendix != 0:
            w.write(2, mod.hidden_unknown or 0)
            w.write(4, mod.hidden_param or 0)
    w.align()


def _write_cable_list(w: BitWriter, location: int, unknown: int, cables: list[Cable]):
    w.write(8, OBJ_CABLE_LIST)
    w.write(2, location)
    w.write(14, unknown)
    w.write(8, len(cables))
    for cable in cables:
        w.write(3, cable.color)
        w.write(8, cable.module_from)
        w.write(6, cable.jack_from)
        w.write(1, cable.link_type)
        w.write(8, cable.module_to)
        w.write(6, cable.jack_to)


def _write_module_parameters(w: BitWriter, location: int, blocks: list[ParameterBlock]):
    w.write(8, OBJ_MODULE_PARAMS)
    body_bits = 2 + 8
    for block in blocks:
        body_bits += 16 + 15 * VARIATION_SLOTS * len(block.values)
    w.write(16, (body_bits + 7) // 8)
    w.write(2, location)
    w.write(8, len(blocks))
    for block in blocks:
        w.write(8, block.module_index)
        w.write(8, len(block.values))
        for row in block.values:
            if len(row) != VARIATION_SLOTS:
                raise InvariantViolation(
                    "parameter row needs %d variation values, got %d"
                    % (VARIATION_SLOTS, len(row))
                )
            for slot, value in enumerate(row):
                if not 0 <= value <= 127:
                    raise InvariantViolation("parameter value %d outside 0..127" % value)
                w.write(8, slot)
                w.write(7, value)
    w.align()


def serialize_patch(patch: Pch2Patch) -> bytes:
    """Encode a patch back to bytes; inverse of :func:`parse_patch`."""
    _check_endpoints("va", patch.modules_va, patch.cables_va)
    _check_endpoints("fx", patch.modules_fx, patch.cables_fx)
    w = BitWriter()
    w.write_bytes(patch.text_header.raw + b"\x00")
    w.write(8, patch.binary_header.format_version)
    w.write(8, patch.binary_header.file_type)
    _write_description(w, patch.description)
    _write_module_list(w, LOCATION_VOICE, patch.modules_va)
    _write_module_list(w, LOCATION_FX, patch.modules_fx)
    w.write(8, OBJ_MYSTERY)
    w.write(16, len(patch.mystery_raw))
    w.write_bytes(patch.mystery_raw)
    _write_cable_list(w, LOCATION_VOICE, patch.cable_unknown_va, patch.cables_va)
    _write_cable_list(w, LOCATION_FX, patch.cable_unknown_fx, patch.cables_fx)
    _write_module_parameters(w, LOCATION_VOICE, patch.params_va)
    _write_module_parameters(w, LOCATION_FX, patch.params_fx)
    w.write_bytes(patch.trailing)
    return w.to_bytes()
