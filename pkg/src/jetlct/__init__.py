"""Jet schemes, jet dimensions and log canonical thresholds of monomial ideals."""

from .fp_oracle import count_jet_points, estimate_lct
from .jetdim import jet_dim_monomial, lct_origin_via_fibers, lct_via_jets
from .jets import Convention, build_jet_system
from .newton import lct_monomial, point_in_scaled_polytope
from .poly import MonomialIdeal, Polynomial, as_monomial_ideal, parse_ideal

__all__ = [
    "Convention",
    "MonomialIdeal",
    "Polynomial",
    "as_monomial_ideal",
    "build_jet_system",
    "count_jet_points",
    "estimate_lct",
    "jet_dim_monomial",
    "lct_monomial",
    "lct_origin_via_fibers",
    "lct_via_jets",
    "parse_ideal",
    "point_in_scaled_polytope",
]
