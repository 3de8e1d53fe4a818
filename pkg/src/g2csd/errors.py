"""Exception hierarchy for the g2csd converter."""


class G2csdError(Exception):
    """Base class for all converter errors."""


class BitstreamError(G2csdError):
    pass


class OutOfBounds(BitstreamError):
    """Tried to read past the end of the buffer (truncated file)."""


class ValueTooWide(BitstreamError):
    """Value does not fit in the requested number of bits."""


class FormatError(G2csdError):
    """A .pch2 file did not match the expected byte layout."""


class TruncatedFile(FormatError):
    pass


class BadHeaderByte(FormatError):
    def __init__(self, expected: int, got: int, byte_offset: int):
        self.expected = expected
        self.got = got
        self.byte_offset = byte_offset
        super().__init__(
            "expected object header 0x%02x, got 0x%02x at byte %d"
            % (expected, got, byte_offset)
        )


class UnknownFileType(FormatError):
    pass


class DanglingCableEndpoint(FormatError):
    def __init__(self, area: str, cable):
        self.area = area
        self.cable = cable
        super().__init__("cable in %s area references a missing module: %r" % (area, cable))


class DuplicateModuleIndex(FormatError):
    pass


class VariationIndexMismatch(FormatError):
    pass


class InvariantViolation(G2csdError):
    """A structure handed to the serializer breaks a format invariant."""


class GraphError(G2csdError):
    pass


class MultipleDrivers(GraphError):
    def __init__(self, endpoints):
        self.endpoints = endpoints
        super().__init__("net has more than one driving output: %s" % (sorted(
            (e.module_index, e.jack) for e in endpoints),))


class UnknownJack(GraphError):
    def __init__(self, module_index: int, jack: int, direction: str):
        self.module_index = module_index
        self.jack = jack
        self.direction = direction
        super().__init__(
            "module %d has no %s jack %d" % (module_index, direction, jack)
        )


class NonConvergence(GraphError):
    pass


class MappingError(G2csdError):
    pass


class RawOutOfDomain(MappingError):
    def __init__(self, table: str, raw: int):
        self.table = table
        self.raw = raw
        super().__init__("raw value %d outside domain of table %s" % (raw, table))


class SelectorOutOfRange(MappingError):
    pass


class MissingSpec(MappingError):
    def __init__(self, type_id: int):
        self.type_id = type_id
        super().__init__("no module spec for type %d" % type_id)


class CodegenError(G2csdError):
    pass


class ArityMismatch(CodegenError):
    pass


class MissingDependency(CodegenError):
    pass


class MissingRoot(G2csdError):
    """Module library root directory does not exist."""
