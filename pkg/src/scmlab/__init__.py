"""scmlab: exact commutative-algebra workbench for graded polynomial rings."""

__version__ = "0.1.0"

from .fields import FieldSpec, GF, QQ
from .orders import OrderSpec, block, degrevlex, lex
from .ring import PolyRing, Polynomial, mk_ring, ring_map, to_canonical_string

__all__ = [
    "FieldSpec", "GF", "QQ",
    "OrderSpec", "block", "degrevlex", "lex",
    "PolyRing", "Polynomial", "mk_ring", "ring_map", "to_canonical_string",
    "__version__",
]
