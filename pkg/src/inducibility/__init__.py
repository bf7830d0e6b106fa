"""Exact induced-subgraph densities of graph constructions and their
blow-up limits: profiles of orders 2 through 5, step models, spectral
transforms, nested-composition fixed points, and a curated result catalog.
"""

from .graphs import (
    CanonicalCode,
    LabeledGraph,
    blow_up,
    build_named,
    canonical_form,
    complement,
    compose,
    disjoint_union,
    from_edges,
    graph6_decode,
    graph6_encode,
    graph_from_mask,
    is_twin_free,
    mask_of,
    tensor,
)
from .models import (
    StepModel,
    bernoulli,
    bipartite_random,
    from_graph,
    model_complement,
    model_tensor,
    model_union,
)
from .profiles import (
    BudgetError,
    EstimatedProfile,
    IsoEntry,
    IsoTable,
    LabeledProfile,
    ProfileVector,
    QuantumGraph,
    induced_profile,
    iso_table,
    labeled_repetitive_profile,
    monte_carlo_monochromatic,
    monte_carlo_profile,
    quantum_density,
    repetitive_from_induced,
    repetitive_profile,
)
from .spectral import (
    SpectralProfile,
    convolve,
    fourier,
    graph_spectrum,
    inverse_fourier,
    model_spectrum,
    product_limit_density,
    quantum_functional,
    spectral_product,
)
from .linalg import solve_rational_kernel
from .nesting import (
    DegenerateStationaryError,
    NestedProfile,
    TransitionMatrix,
    compose_profile,
    iterate_profile,
    nested_spectral,
    stationary_profile,
    transition_matrix,
)
from .catalog import (
    BoundReport,
    CatalogRow,
    ClosedFormBounds,
    catalog_rows,
    closed_form_bounds,
    reproduce_table,
    run_row,
)
from .dsl import (
    ExprError,
    evaluate,
    parse_expr,
    parse_quantum,
    print_expr,
    split_top_level,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "BudgetError",
    "CanonicalCode",
    "CatalogRow",
    "ClosedFormBounds",
    "DegenerateStationaryError",
    "EstimatedProfile",
    "ExprError",
    "IsoEntry",
    "IsoTable",
    "LabeledGraph",
    "LabeledProfile",
    "NestedProfile",
    "ProfileVector",
    "QuantumGraph",
    "SpectralProfile",
    "StepModel",
    "TransitionMatrix",
    "bernoulli",
    "bipartite_random",
    "blow_up",
    "build_named",
    "canonical_form",
    "catalog_rows",
    "closed_form_bounds",
    "complement",
    "compose",
    "compose_profile",
    "convolve",
    "disjoint_union",
    "evaluate",
    "fourier",
    "from_edges",
    "from_graph",
    "graph6_decode",
    "graph6_encode",
    "graph_from_mask",
    "graph_spectrum",
    "induced_profile",
    "inverse_fourier",
    "is_twin_free",
    "iso_table",
    "iterate_profile",
    "labeled_repetitive_profile",
    "mask_of",
    "model_complement",
    "model_spectrum",
    "model_tensor",
    "model_union",
    "monte_carlo_monochromatic",
    "monte_carlo_profile",
    "nested_spectral",
    "parse_expr",
    "parse_quantum",
    "print_expr",
    "product_limit_density",
    "quantum_density",
    "quantum_functional",
    "repetitive_from_induced",
    "repetitive_profile",
    "reproduce_table",
    "run_row",
    "solve_rational_kernel",
    "spectral_product",
    "split_top_level",
    "stationary_profile",
    "tensor",
    "transition_matrix",
    "__version__",
]
