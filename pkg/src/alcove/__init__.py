"""Exact numbers-game toolkit for finite and affine Cartan matrices."""

from .catalog import affine, dynkin, graph_for
from .core import CoxeterGraph, apply_generator, fire, validate_graph
from .game import orbit, play, play_to_termination
from .poset import build_poset, hilbert_closed_form, hilbert_empirical
from .scalar import Scalar
from .strategy import iota, rho, run_substrategy

__all__ = [
    "CoxeterGraph",
    "Scalar",
    "affine",
    "apply_generator",
    "build_poset",
    "dynkin",
    "fire",
    "graph_for",
    "hilbert_closed_form",
    "hilbert_empirical",
    "iota",
    "orbit",
    "play",
    "play_to_termination",
    "rho",
    "run_substrategy",
    "validate_graph",
]

__version__ = "0.1.0"
