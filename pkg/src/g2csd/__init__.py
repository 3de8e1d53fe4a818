"""Nord Modular G2 patch to Csound document converter."""

from .bitstream import IMPLEMENTATION as BITSTREAM_IMPLEMENTATION
from .convert import ConvertResult, convert_patch
from .moduledb import default_db_root, load_db
from .pch2 import Pch2Patch, parse_patch, serialize_patch

__version__ = "0.1.0"

__all__ = [
    "BITSTREAM_IMPLEMENTATION",
    "ConvertResult",
    "Pch2Patch",
    "convert_patch",
    "default_db_root",
    "load_db",
    "parse_patch",
    "serialize_patch",
    "__version__",
]
