"""Digital topology of finite lattice images: adjacency, homotopy certificates,
bounded homotopy searches and simplex-census Euler characteristics."""
from .core import Adjacency, DigitalImage, adjacent, boundary, components, is_continuous_map, neighborhood
from .euler import connected_sum_chi, euler_characteristic, is_isomorphic, simplex_census
from .homotopy import (
    DigitalLoop,
    DigitalPath,
    HomotopyGrid,
    NullhomotopyCertificate,
    concat,
    is_trivial_extension,
    pad,
    reverse,
    verify_contraction,
    verify_homotopy,
)

__version__ = "0.1.0"

__all__ = [
    "Adjacency", "DigitalImage", "adjacent", "boundary", "components", "is_continuous_map", "neighborhood",
    "connected_sum_chi", "euler_characteristic", "is_isomorphic", "simplex_census",
    "DigitalLoop", "DigitalPath", "HomotopyGrid", "NullhomotopyCertificate", "concat", "is_trivial_extension",
    "pad", "reverse", "verify_contraction", "verify_homotopy",
]
