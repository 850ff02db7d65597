"""Exact arithmetic for diagonal braidings, their Nichols algebras and liftings."""

from .braiding import (
    BraidingMatrix,
    DynkinDiagram,
    cartan_type,
    dynkin_diagram,
    enumerate_rank2,
    groupoid_points,
    is_standard,
    load_braiding,
    m_entry,
    m_matrix,
    positive_roots,
    twist_equivalent,
)
from .cyclotomic import CycNumber, RootOfUnity, q_binomial, q_factorial, q_number
from .errors import BraidkitError, InvalidArgument, ParseError, PreconditionError, ReflectionUndefined, ResourceOverflow
from .lifting import YDDatum, lifting_case, lifting_table, realize, scan_liftable
from .relations import presentation, quantum_serre, verify_presentation
from .tensoralgebra import NCPoly, coproduct, hilbert_series, hyperletter, nichols_algebra, partial

__version__ = "0.1.0"

__all__ = [
    "BraidingMatrix",
    "BraidkitError",
    "CycNumber",
    "DynkinDiagram",
    "InvalidArgument",
    "NCPoly",
    "ParseError",
    "PreconditionError",
    "ReflectionUndefined",
    "ResourceOverflow",
    "RootOfUnity",
    "YDDatum",
    "cartan_type",
    "coproduct",
    "dynkin_diagram",
    "enumerate_rank2",
    "groupoid_points",
    "hilbert_series",
    "hyperletter",
    "is_standard",
    "lifting_case",
    "lifting_table",
    "load_braiding",
    "m_entry",
    "m_matrix",
    "nichols_algebra",
    "partial",
    "positive_roots",
    "presentation",
    "q_binomial",
    "q_factorial",
    "q_number",
    "quantum_serre",
    "realize",
    "scan_liftable",
    "twist_equivalent",
    "verify_presentation",
]
