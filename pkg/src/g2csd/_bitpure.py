"""Pure-Python big-endian bit cursor, fallback for the compiled kernel.

Bit order is most-significant-bit-first within each byte. Fields are at most
32 bits wide; the widest field in the patch format is 16.
"""

from __future__ import annotations

from .errors import OutOfBounds, ValueTooWide

MAX_FIELD_BITS = 32


class BitReader:
    """Reads unsigned big-endian bit fields from an immutable byte buffer."""

    __slots__ = ("_buf", "_nbits", "_pos")

    def __init__(self, data: bytes, bit_offset: int = 0):
        self._buf = bytes(data)
        self._nbits = 8 * len(self._buf)
        if not 0 <= bit_offset <= self._nbits:
            raise OutOfBounds("bit offset %d outside buffer" % bit_offset)
        self._pos = bit_offset

    @property
    def bit_offset(self) -> int:
        return self._pos

    @property
    def byte_offset(self) -> int:
        return self._pos // 8

    @property
    def bits_remaining(self) -> int:
        return self._nbits - self._pos

    def read(self, n: int) -> int:
        if not 1 <= n <= MAX_FIELD_BITS:
            raise ValueError("field width must be 1..%d, got %d" % (MAX_FIELD_BITS, n))
        if self._pos + n > self._nbits:
            raise OutOfBounds(
                "need %d bits at bit %d but buffer has %d bits"
                % (n, self._pos, self._nbits)
            )
        acc = 0
        got = 0
        pos = self._pos
        buf = self._buf
        while got < n:
            byte_i, bit_i = divmod(pos, 8)
            take = min(8 - bit_i, n - got)
            chunk = (buf[byte_i] >> (8 - bit_i - take)) & ((1 << take) - 1)
            acc = (acc << take) | chunk
            pos += take
            got += take
        self._pos = pos
        return acc

    def align(self) -> None:
        self._pos = (self._pos + 7) // 8 * 8

    def read_bytes(self, n: int) -> bytes:
        if self._pos % 8:
            raise BitstreamMisuse("read_bytes on unaligned cursor")
        start = self._pos // 8
        if start + n > len(self._buf):
            raise OutOfBounds("need %d bytes at byte %d" % (n, start))
        self._pos += 8 * n
        return self._buf[start:start + n]


class BitWriter:
    """Appends big-endian bit fields to a growing byte buffer."""

    __slots__ = ("_buf", "_nbits")

    def __init__(self):
        self._buf = bytearray()
        self._nbits = 0

    @property
    def bit_offset(self) -> int:
        return self._nbits

    def write(self, n: int, value: int) -> None:
        if not 1 <= n <= MAX_FIELD_BITS:
            raise ValueError("field width must be 1..%d, got %d" % (MAX_FIELD_BITS, n))
        if value < 0 or value >> n:
            raise ValueTooWide("value %d does not fit in %d bits" % (value, n))
        remaining = n
        while remaining > 0:
            bit_i = self._nbits % 8
            if bit_i == 0:
                self._buf.append(0)
            take = min(8 - bit_i, remaining)
            chunk = (value >> (remaining - take)) & ((1 << take) - 1)
            self._buf[-1] |= chunk << (8 - bit_i - take)
            self._nbits += take
            remaining -= take

    def align(self) -> None:
        # Skipped bits are emitted as zeros.
        while self._nbits % 8:
            self.write(1, 0)

    def write_bytes(self, data: bytes) -> None:
        if self._nbits % 8:
            raise BitstreamMisuse("write_bytes on unaligned cursor")
        self._buf.extend(data)
        self._nbits += 8 * len(data)

    def to_bytes(self) -> bytes:
        return bytes(self._buf)


class BitstreamMisuse(RuntimeError):
    """Internal API misuse, not a file format problem."""
