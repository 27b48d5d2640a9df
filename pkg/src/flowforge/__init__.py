"""Group connectivity of multigraphs: Z_3-connectivity, tree packing,
edge-connectivity, reductions and the gadget constructions around them."""

from .connectivity import (
    INFINITE,
    edge_connectivity,
    essential_edge_connectivity,
    local_edge_connectivity,
    mader_split,
    split_off,
)
from .errors import FlowforgeError
from .graphcore import (
    CutCertificate,
    Multigraph,
    build,
    canonical_form,
    complete_graph,
    contract,
    cycle_graph,
    edge_cut,
    parse,
    serialize,
)
from .orient import (
    Orientation,
    PreOrientation,
    find_beta_orientation,
    has_mod_orientation,
    is_extendable_at,
    is_strongly_zm_connected,
    is_z3_connected,
    ltwz_conditions,
)
from .reduce import is_z3_reduced, z3_reduce
from .treepack import deficiency, find_dense_subgraph, pack_forests, tree_packing_number

__version__ = "0.1.0"

__all__ = [
    "INFINITE",
    "CutCertificate",
    "FlowforgeError",
    "Multigraph",
    "Orientation",
    "PreOrientation",
    "build",
    "canonical_form",
    "complete_graph",
    "contract",
    "cycle_graph",
    "deficiency",
    "edge_connectivity",
    "edge_cut",
    "essential_edge_connectivity",
    "find_beta_orientation",
    "find_dense_subgraph",
    "has_mod_orientation",
    "is_extendable_at",
    "is_strongly_zm_connected",
    "is_z3_connected",
    "is_z3_reduced",
    "local_edge_connectivity",
    "ltwz_conditions",
    "mader_split",
    "pack_forests",
    "parse",
    "serialize",
    "split_off",
    "tree_packing_number",
    "z3_reduce",
]
