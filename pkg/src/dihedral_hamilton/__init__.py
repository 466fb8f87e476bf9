"""Hamilton decompositions of Cayley graphs on dihedral groups, with certificate checking."""

__version__ = "0.1.0"

from .cayley import (  # noqa: E402
    CayleyGraph,
    ConnectionSet,
    build_graph,
    parse_connection_set,
    validate_connection_set,
)
from .decomp import Cycle, Decomposition, decompose, decompose_tetravalent  # noqa: E402
from .dihedral import GroupElement, multiply, parse_element  # noqa: E402
from .verify import VerificationReport, verify_decomposition  # noqa: E402

__all__ = [
    "CayleyGraph",
    "ConnectionSet",
    "Cycle",
    "Decomposition",
    "GroupElement",
    "VerificationReport",
    "build_graph",
    "decompose",
    "decompose_tetravalent",
    "multiply",
    "parse_connection_set",
    "parse_element",
    "validate_connection_set",
    "verify_decomposition",
]
