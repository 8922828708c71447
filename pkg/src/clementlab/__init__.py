"""Clement matrices, their two-parameter extension, and eigensolver accuracy studies."""
from .errors import (
    ClementLabError,
    InconsistentSweepError,
    InvalidDimensionError,
    InvalidParameterError,
    NonPositiveProductError,
    PoleError,
    UnsupportedParityError,
)
from .matgen import (
    MatrixParams,
    SymmetricTridiagonalMatrix,
    TridiagonalMatrix,
    clement,
    extended,
    format_matrix,
    parse_matrix,
    scale,
    special,
    symmetric_extended,
    symmetrize,
)
from .spectra import (
    ExactSpectrum,
    MultiplicityReport,
    char_poly_eval,
    classify,
    clement_eigenvalues,
    exact_eigenvalues,
    special_eigenvalues,
)
from .eigensolve import (
    ComputedSpectrum,
    SolverConfig,
    bisection_eigenvalues,
    solve_symmetric,
    solve_unsymmetric,
    sturm_count,
)

__version__ = "0.1.0"
