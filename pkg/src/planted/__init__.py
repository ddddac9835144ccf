"""Threshold landscapes and exact Bayesian simulation for planted subgraphs.

The library works with a hidden pattern graph H planted in an
Erdos-Renyi host G(n,p): it computes first-moment and generalized
expectation thresholds of H, classifies H against the structural
conditions that govern all-or-nothing recovery transitions, and checks
the predictions empirically by exact posterior computation on small
instances.
"""

__version__ = "0.1.0"

from planted.graphs import Graph, generate, parse_graph
from planted.canon import CanonicalForm, canonical_form

__all__ = [
    "Graph",
    "generate",
    "parse_graph",
    "CanonicalForm",
    "canonical_form",
    "__version__",
]
