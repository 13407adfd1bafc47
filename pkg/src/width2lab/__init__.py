"""Certified recognition of graphs of width at most two for treewidth,
spaghetti, directed spaghetti, special and strongly chordal treewidth."""
from .graph import Graph, GraphError
from .decomp import Decomposition, validate
from .minors import MinorModel, has_minor, verify_model
from .recognize import (
    Certificate,
    PeelTrace,
    check_certificate,
    is_head_vertex,
    is_mamba_block,
    recognize,
    recognize_dptw2,
    recognize_sctw2,
    recognize_spctw2,
    recognize_sptw2,
    recognize_tw2,
    width_at_most_one,
)

__version__ = "0.1.0"
