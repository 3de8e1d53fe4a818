# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled big-endian bit cursor, drop-in for g2csd._bitpure.

Semantics must stay identical to the pure-Python module; the test suite runs
both implementations against the same vectors.
"""

from .errors import OutOfBounds, ValueTooWide
from ._bitpure import BitstreamMisuse

DEF MAX_FIELD_BITS = 32


cdef class BitReader:
    cdef bytes _buf
    cdef const unsigned char* _data
    cdef Py_ssize_t _nbits
    cdef Py_ssize_t _pos

    def __cinit__(self, data, bit_offset=0):
        self._buf = bytes(data)
        self._data = <const unsigned char*> self._buf
        self._nbits = 8 * len(self._buf)
        cdef Py_ssize_t off = bit_offset
        if off < 0 or off > self._nbits:
            raise OutOfBounds("bit offset %d outside buffer" % off)
        self._pos = off

    @property
    def bit_offset(self):
        return self._pos

    @property
    def byte_offset(self):
        return self._pos // 8

    @property
    def bits_remaining(self):
        return self._nbits - self._pos

    cpdef unsigned long read(self, int n):
        cdef unsigned long acc = 0
        cdef int got = 0, bit_i, take
        cdef Py_ssize_t pos, byte_i
        if n < 1 or n > MAX_FIELD_BITS:
            raise ValueError("field width must be 1..%d, got %d" % (MAX_FIELD_BITS, n))
        if self._pos + n > self._nbits:
            raise OutOfBounds(
                "need %d bits at bit %d but buffer has %d bits"
                % (n, self._pos, self._nbits))
        pos = self._pos
        while got < n:
            byte_i = pos >> 3
            bit_i = pos & 7
            take = 8 - bit_i
            if take > n - got:
                take = n - got
            acc = (acc << take) | ((self._data[byte_i] >> (8 - bit_i - take))
                                   & (((<unsigned long>1 << take) - 1)))
            pos += take
            got += take
        self._pos = pos
        return acc

    cpdef align(self):
        self._pos = (self._pos + 7) // 8 * 8

    def read_bytes(self, Py_ssize_t n):
        cdef Py_ssize_t start
        if self._pos & 7:
            raise BitstreamMisuse("read_bytes on unaligned cursor")
        start = self._pos >> 3
        if start + n > len(self._buf):
            raise OutOfBounds("need %d bytes at byte %d" % (n, start))
        self._pos += 8 * n
        return self._buf[start:start + n]


cdef class BitWriter:
    cdef bytearray _buf
    cdef Py_ssize_t _nbits

    def __cinit__(self):
        self._buf = bytearray()
        self._nbits = 0

    @property
    def bit_offset(self):
        return self._nbits

    cpdef write(self, int n, unsigned long value):
        cdef int remaining, bit_i, take
        cdef unsigned long chunk
        if n < 1 or n > MAX_FIELD_BITS:
            raise ValueError("field width must be 1..%d, got %d" % (MAX_FIELD_BITS, n))
        if n < 64 and (value >> n):
            raise ValueTooWide("value %d does not fit in %d bits" % (value, n))
        remaining = n
        while remaining > 0:
            bit_i = self._nbits & 7
            if bit_i == 0:
                self._buf.append(0)
            take = 8 - bit_i
            if take > remaining:
                take = remaining
            chunk = (value >> (remaining - take)) & (((<unsigned long>1 << take) - 1))
            self._buf[len(self._buf) - 1] |= chunk << (8 - bit_i - take)
            self._nbits += take
            remaining -= take

    cpdef align(self):
        while self._nbits & 7:
            self.write(1, 0)

    def write_bytes(self, data):
        if self._nbits & 7:
            raise BitstreamMisuse("write_bytes on unaligned cursor")
        self._buf.extend(data)
        self._nbits += 8 * len(data)

    def to_bytes(self):
        return bytes(self._buf)
