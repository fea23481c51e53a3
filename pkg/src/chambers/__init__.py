"""Finite buildings, their apartments, and two-apartment realizations of convex subcomplexes."""

from .coxeter import CoxeterSystem, WeylElement, named_system, normal_form
from .building import Apartment, Building, SimplexRef, SubComplex, enumerate_apartments, is_apartment
from .instances import gq22_flag_building, pg2_flag_building, rank1_building
from .apartments import convex_subcomplexes, realize_chamber_subcomplex, realize_convex_subcomplex, wall_avoiding_apartment

__all__ = [
    "Apartment",
    "Building",
    "CoxeterSystem",
    "SimplexRef",
    "SubComplex",
    "WeylElement",
    "convex_subcomplexes",
    "enumerate_apartments",
    "gq22_flag_building",
    "is_apartment",
    "named_system",
    "normal_form",
    "pg2_flag_building",
    "rank1_building",
    "realize_chamber_subcomplex",
    "realize_convex_subcomplex",
    "wall_avoiding_apartment",
]
