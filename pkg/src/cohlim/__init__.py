"""SU(1,1) coherent states, emergent classical theories, and their numerical checks."""

from .charts import ChartPoint, DomainError, convert, measure_density, metric_coefficient
from .coherent import (
    CoherentSpec,
    QuadratureParams,
    coherent_vector,
    delta_exponent,
    identity_resolution_check,
    matrix_element_closed,
    overlap_closed,
    symbol,
)
from .observables import (
    HamiltonianPolynomial,
    PhaseObservable,
    basic_symbol,
    evaluate,
    parse_hamiltonian,
    poisson_bracket,
)
from .su11 import (
    FockVector,
    OperatorMatrix,
    RepParams,
    RepresentationMismatchError,
    build_generator,
    commutator,
    hamiltonian_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "ChartPoint",
    "CoherentSpec",
    "DomainError",
    "FockVector",
    "HamiltonianPolynomial",
    "OperatorMatrix",
    "PhaseObservable",
    "QuadratureParams",
    "RepParams",
    "RepresentationMismatchError",
    "basic_symbol",
    "build_generator",
    "coherent_vector",
    "commutator",
    "convert",
    "delta_exponent",
    "evaluate",
    "hamiltonian_matrix",
    "identity_resolution_check",
    "matrix_element_closed",
    "measure_density",
    "metric_coefficient",
    "overlap_closed",
    "parse_hamiltonian",
    "poisson_bracket",
    "symbol",
]
