"""Semiarcs in finite projective planes: fields, planes, constructions and exhaustive searches."""

from .errors import SemiarcError
from .field import FiniteField, field_of_order, make_field
from .plane import Plane, are_equivalent, pg, plane_from_ref
from .semiarc import PointSet, classify_semiarc, detect_vt, long_secants, redei_analysis, semiarc_t
from .perspective import PerspectiveFrame, build_group, centres, classify_centres
from .constructions import construct, projective_triangle, verify
from .search import search_long_secant, vconfig_census
from .theorems import verify_theorem

__all__ = [
    "SemiarcError", "FiniteField", "field_of_order", "make_field", "Plane", "are_equivalent", "pg",
    "plane_from_ref", "PointSet", "classify_semiarc", "detect_vt", "long_secants", "redei_analysis",
    "semiarc_t", "PerspectiveFrame", "build_group", "centres", "classify_centres", "construct",
    "projective_triangle", "verify", "search_long_secant", "vconfig_census", "verify_theorem",
]
