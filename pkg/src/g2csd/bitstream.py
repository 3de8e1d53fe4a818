"""Bit cursor used by the patch parser and serializer.

Prefers the compiled extension when it has been built; falls back to the
pure-Python implementation otherwise. Set ``G2CSD_PURE_BITSTREAM=1`` to force
the fallback (the benchmark and the implementation-parity tests use this).
"""

import os

if os.environ.get("G2CSD_PURE_BITSTREAM"):
    from ._bitpure import BitReader, BitWriter

    IMPLEMENTATION = "pure"
else:
    try:
        from ._bitkernel import BitReader, BitWriter

        IMPLEMENTATION = "compiled"
    except ImportError:
        from ._bitpure import BitReader, BitWriter

        IMPLEMENTATION = "pure"

__all__ = ["BitReader", "BitWriter", "IMPLEMENTATION"]
