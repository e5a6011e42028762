"""Rank-5 linear sets on a projective line over F_{q^5}: weight distributions
computed three independent ways, small-q censuses, subgeometry incidence and
rank-metric spectra."""

__version__ = "0.1.0"

from .gf import build_tower, tower_for_q, small_field  # noqa: F401
