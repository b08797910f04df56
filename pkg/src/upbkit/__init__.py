"""Product bases generated by tile structures: construction, tile tests and classification."""
from .classify import (Classification, SeesawConfig, Subspace, classify_bipartite, classify_tripartite,
                       complement_basis, merged_group_subspaces, product_span_dim, region_product_span,
                       seesaw_product_search, try_complete)
from .families import FamilySpec, build, known_partition, size_formula
from .states import (ProductState, StateSet, flatten_set, flatten_state, gram_check, inner_product,
                     punctured_tile_set, state_to_matrix, stopper_state, tile_dft_states)
from .tiles import (Bipartition, QuasiPartition, Tile, TileStructure, check_quasi_partition,
                    enumerate_small_structures, enumerate_special_regions, find_quasi_u_partition,
                    flatten_to_bipartition, group_is_maximal, is_combinatorial_rectangle, is_u_tile,
                    validate_structure)

__all__ = [
    "Bipartition", "Classification", "FamilySpec", "ProductState", "QuasiPartition", "SeesawConfig",
    "StateSet", "Subspace", "Tile", "TileStructure", "build", "check_quasi_partition",
    "classify_bipartite", "classify_tripartite", "complement_basis", "enumerate_small_structures",
    "enumerate_special_regions", "find_quasi_u_partition", "flatten_set", "flatten_state",
    "flatten_to_bipartition", "gram_check", "group_is_maximal", "inner_product",
    "is_combinatorial_rectangle", "is_u_tile", "known_partition", "merged_group_subspaces",
    "product_span_dim", "punctured_tile_set", "region_product_span", "seesaw_product_search",
    "size_formula", "state_to_matrix", "stopper_state", "tile_dft_states", "try_complete",
    "validate_structure",
]
