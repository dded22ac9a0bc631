"""Exact combinatorics of hypergraph polytopes and the minimal-model
operads built on their faces.

The modules, roughly bottom-up:

- hypergraph: connected atomic hypergraphs, restriction, saturation;
- polytope: constructs (decorated trees encoding faces), enumeration,
  f-vectors, the face lattice;
- trees: planar rooted trees with vertex indexings, grafting,
  substitution, the comb encoding and its rewriting normal forms;
- oinf: basis operations, signed composition, the differential, and
  the symmetric-group action;
- homology: chain complexes over the rationals and Betti numbers;
- winf: the cubical resolution by circled operations;
- cyclic: unrooted classes of operations and the induced calculus;
- cli: the command-line front end.
"""

from .errors import DomainError, UsageError
from .hypergraph import Hypergraph, saturate, is_saturated
from .polytope import (
    Construct,
    enumerate_constructs,
    constructions,
    f_vector,
    euler_check,
    FaceLattice,
)
from .trees import (
    PNode,
    OperadicTree,
    Comb,
    enumerate_operadic_trees,
    enumerate_plane_shapes,
    linear_tree,
    edge_graph,
    omega,
    omega_inverse,
    normal_form,
    normal_form_trace,
)
from .oinf import (
    BasisOp,
    Element,
    compose,
    compose_elements,
    differential,
    differential_element,
    symmetric_action,
    enumerate_basis,
)
from .homology import Complex, complex_for_tree, betti
from .winf import (
    CircledOp,
    enumerate_circled,
    compose_w,
    w_differential,
    w_differential_element,
)
from .cyclic import (
    CyclicOp,
    CinfOp,
    compose_cyclic,
    compose_cinf,
    differential_cinf,
)

__all__ = [
    "DomainError",
    "UsageError",
    "Hypergraph",
    "saturate",
    "is_saturated",
    "Construct",
    "enumerate_constructs",
    "constructions",
    "f_vector",
    "euler_check",
    "FaceLattice",
    "PNode",
    "OperadicTree",
    "Comb",
    "enumerate_operadic_trees",
    "enumerate_plane_shapes",
    "linear_tree",
    "edge_graph",
    "omega",
    "omega_inverse",
    "normal_form",
    "normal_form_trace",
    "BasisOp",
    "Element",
    "compose",
    "compose_elements",
    "differential",
    "differential_element",
    "symmetric_action",
    "enumerate_basis",
    "Complex",
    "complex_for_tree",
    "betti",
    "CircledOp",
    "enumerate_circled",
    "compose_w",
    "w_differential",
    "w_differential_element",
    "CyclicOp",
    "CinfOp",
    "compose_cyclic",
    "compose_cinf",
    "differential_cinf",
]
