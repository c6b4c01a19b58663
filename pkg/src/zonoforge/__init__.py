"""Exact zonotopal algebra of broken-wheel graphs.

Sparse rational polynomial arithmetic, spanning-tree activity valuations,
parking-function enumeration, graded kernel/span spaces with monic dual
bases, and the volume identities tying orientation chambers of the simplex
and the plane-binary-tree subdivision of the Stanley-Pitman polytope to
those spaces.
"""

from .activity import Basis, Cocircuit, TuttePoly, tutte
from .graphs import (
    DirectedMultigraph,
    EdgeMatrix,
    Orientation,
    RootedTree,
    broken_wheel,
    edge_matrix,
    enumerate_orientations,
    enumerate_rooted_trees,
    gbw,
    weights,
)
from .mpoly import MPoly, normalized_monomial
from .volumes import (
    Chamber,
    CompositionSet,
    PlaneBinaryTree,
    chamber,
    composition_set,
    kT,
    mc_volume,
    phi_walk,
    plane_binary_trees,
    q_tk,
    ref_monomial,
    sandpile_support,
    stanley_pitman_q,
)

__version__ = "0.1.0"

__all__ = [
    "Basis",
    "Chamber",
    "Cocircuit",
    "CompositionSet",
    "DirectedMultigraph",
    "EdgeMatrix",
    "MPoly",
    "Orientation",
    "PlaneBinaryTree",
    "RootedTree",
    "TuttePoly",
    "broken_wheel",
    "chamber",
    "composition_set",
    "edge_matrix",
    "enumerate_orientations",
    "enumerate_rooted_trees",
    "gbw",
    "kT",
    "mc_volume",
    "normalized_monomial",
    "phi_walk",
    "plane_binary_trees",
    "q_tk",
    "ref_monomial",
    "sandpile_support",
    "stanley_pitman_q",
    "tutte",
    "weights",
]
