"""Exact-arithmetic toolkit for differentiation bases on the infinite torus."""

from .certificate import Certificate, reverify
from .expbounds import certified_exp_bounds
from .maximal import (
    DeltaWitness,
    MaximalQuery,
    delta_witness_check,
    maximal_value,
    superlevel_set,
    weak_type_ratio,
    witness_average,
)
from .rdf import BasisFamily, build_family, family_profile, rdf_cell, rdf_group, rdf_levels, u_cell
from .torus import (
    Arc,
    CoordSet,
    Point,
    ProductSet,
    Region,
    SimpleFunction,
    average,
    closure_contains,
    diameter,
    integrate,
    intersect,
    measure,
    rho,
    translate,
)

__version__ = "0.1.0"
