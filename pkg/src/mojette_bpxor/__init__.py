"""Asymptotically-MDS array BP-XOR erasure codes built from Mojette projections."""
from .constructions import code_sigma, directions_c33, directions_c35, make_spec, max_degree, validate
from .decoder import DecodeReport, DecodeStatus, decodable, decode
from .encoder import Projection, bin_degree_map, bin_index, encode, projection_length
from .errors import CapacityError, CorruptionError, MojetteError, ParameterError, StructuralError
from .symbols import CodeSpec, Construction, DataGrid, Direction, SymbolBuf, grid_from_bytes, xor_into

__all__ = [
    "CapacityError",
    "CodeSpec",
    "Construction",
    "CorruptionError",
    "DataGrid",
    "DecodeReport",
    "DecodeStatus",
    "Direction",
    "MojetteError",
    "ParameterError",
    "Projection",
    "StructuralError",
    "SymbolBuf",
    "bin_degree_map",
    "bin_index",
    "code_sigma",
    "decodable",
    "decode",
    "directions_c33",
    "directions_c35",
    "encode",
    "grid_from_bytes",
    "make_spec",
    "max_degree",
    "projection_length",
    "validate",
    "xor_into",
]
