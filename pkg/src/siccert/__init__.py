"""Exact certification of state-independent contextuality sets.

The package decides whether a family of rank-one projectors forms a
state-independent contextuality set, emits the witnessing inequality,
and provides the supporting graph machinery: a graph6 codec, exact
chromatic and fractional-chromatic numbers, a census of connected
square-free graphs, and a numerical search for orthogonal
representations of a given graph in a given dimension.
"""

from .canon import automorphism_orbits, canonical_graph, canonical_key, \
    canonicalize
from .certify import (
    Inequality,
    ProjectorSet,
    SicCertificate,
    certify_sic,
    emit_inequality,
    noncontextual_bound,
    orthogonality_graph,
    parse_vector_file,
    quantum_value,
    quantum_value_floor,
    write_vector_file,
)
from .coloring import (
    chi_greater_than,
    chromatic_number,
    fractional_chromatic_number,
    rh_sic_graph_test,
    sic_necessary_conditions,
)
from .enumeration import brute_force_enumerate, enumerate_square_free_connected
from .exact import LinearProgram, lp_solve_exact, psd_check_exact
from .graphs import (
    CapacityError,
    Graph,
    Graph6Error,
    complement,
    cone,
    encode_graph6,
    induced_subgraph,
    is_connected,
    is_square_free,
    maximal_independent_sets,
    parse_graph6,
)
from .realize import RealizationResult, find_realization, verify_realization

__version__ = "0.1.0"


def fixture_path(name: str):
    """Path to a bundled data file (vector files, graph6 lists)."""
    from importlib.resources import files

    return files(__name__) / "fixtures" / name

__all__ = [
    "CapacityError",
    "Graph",
    "Graph6Error",
    "Inequality",
    "LinearProgram",
    "ProjectorSet",
    "RealizationResult",
    "SicCertificate",
    "automorphism_orbits",
    "brute_force_enumerate",
    "canonical_graph",
    "canonical_key",
    "canonicalize",
    "certify_sic",
    "chi_greater_than",
    "chromatic_number",
    "complement",
    "cone",
    "emit_inequality",
    "encode_graph6",
    "enumerate_square_free_connected",
    "find_realization",
    "fixture_path",
    "fractional_chromatic_number",
    "induced_subgraph",
    "is_connected",
    "is_square_free",
    "lp_solve_exact",
    "maximal_independent_sets",
    "noncontextual_bound",
    "orthogonality_graph",
    "parse_graph6",
    "parse_vector_file",
    "psd_check_exact",
    "quantum_value",
    "quantum_value_floor",
    "rh_sic_graph_test",
    "sic_necessary_conditions",
    "verify_realization",
    "write_vector_file",
    "__version__",
]
