"""f-, h- and gamma-polynomials of nestohedra, tree shifts and flossing moves."""

from .buildset import (
    BuildingSet,
    binary_decomposition,
    contraction,
    decomposition_containing,
    graphical_building_set,
    is_building_set,
    mask,
    product_building_set,
    restriction,
)
from .gamma_engine import GammaEngine, GammaMemo, flag_chain, gamma_incremental, initial_comb
from .graph import LabeledGraph, complete_graph, parse_graph, path_graph, star_graph, wiener_index
from .nested import enumerate_nested_sets, f_polynomial, gamma_oracle
from .poly import IntPolynomial, f_to_h, gamma_le, h_to_gamma

__version__ = "0.1.0"
