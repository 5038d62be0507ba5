"""Exact computations with MCM and Ulrich modules over graded quotient rings of F_p[x_0..x_n]."""

from .exactalg import GradedRing, ParseError, Poly, format_ring, parse_poly, parse_ring
from .gradmod import (BettiTable, Presentation, canonical_module, dual, is_mcm, is_ulrich,
                      minimal_resolution, syzygy_module)
from .groebner import hilbert_hvector, hilbert_series, sectional_genus
from .homalg import euler_chi, ext, hom_space, is_isomorphic, is_simple, stable_hom
from .wildcraft import (QuiverRep, certify_wildness, ext_basis, psi_pipeline, serre_construct,
                        syzygy_transport, universal_extension)

__all__ = [
    "BettiTable", "GradedRing", "ParseError", "Poly", "Presentation", "QuiverRep",
    "canonical_module", "certify_wildness", "dual", "euler_chi", "ext", "ext_basis",
    "format_ring", "hilbert_hvector", "hilbert_series", "hom_space", "is_isomorphic", "is_mcm",
    "is_simple", "is_ulrich", "minimal_resolution", "parse_poly", "parse_ring", "psi_pipeline",
    "sectional_genus", "serre_construct", "stable_hom", "syzygy_module", "syzygy_transport",
    "universal_extension",
]

__version__ = "0.1.0"
