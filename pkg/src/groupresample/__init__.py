"""Subgroup subsampling and equivariant anti-aliasing on finite groups."""

from .cayley import (
    CayleyGraph,
    NoCompliantGenerator,
    SamplingPlan,
    build_cayley,
    check_compliance,
    general_subsample,
    subsample_along,
)
from .fourier import (
    FourierBasis,
    complex_fourier_basis,
    fourier_forward,
    fourier_inverse,
    irreps,
    real_fourier_basis,
    regular_rep,
    spectral_regular_rep,
)
from .groups import (
    FiniteGroup,
    GeneratorSpec,
    GroupError,
    SubgroupEmbedding,
    check_axioms,
    default_generators,
    element_order,
    group_from_spec,
    induced_subgroup,
    is_subgroup,
    left_cosets,
    make_cyclic,
    make_dihedral,
    power,
    subgroup_from_members,
)
from .optimizer import (
    InfeasibleConstraint,
    NonConvergence,
    OptimizerConfig,
    ReynoldsAverager,
    cayley_laplacian,
    smoothness_weights,
    solve_M,
)
from .sampling import (
    BandlimitMap,
    BandlimitSolution,
    RankDeficientMap,
    cyclic_canonical_M,
    equivariance_error,
    filter_response,
    interpolator_from_M,
    make_map,
    projector_from_M,
    sampling_matrix,
    solution_from_map,
    verify_reconstruction,
)

__version__ = "0.1.0"
