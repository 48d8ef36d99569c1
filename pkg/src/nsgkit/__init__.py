"""Reproducing pairs and nonstationary Gabor systems on finite abelian groups and the real line."""

__version__ = "0.1.0"

from ._accel import BACKEND
from .errors import (
    DomainError,
    GroupMismatchError,
    InvalidElementError,
    InvalidFamilyError,
    InvalidReindexError,
    NsgError,
    NumericalGuardError,
    OracleCapExceeded,
    SideError,
    SymbolSingular,
)
from .lca import (
    FiniteLcaGroup,
    Side,
    Signal,
    character_value,
    convolve,
    delta,
    fourier,
    inner,
    inverse_fourier,
    involution,
    modulate,
    norm,
    reflect,
    translate,
)
from .nsg import (
    AtomicPair,
    CoefficientArray,
    Composition,
    DiagonalPhase,
    FourierConjugation,
    Kind,
    Modulation,
    NsgSystem,
    PairSystem,
    SymbolReport,
    Translation,
    WindowFamily,
    analyze,
    canonical_dual,
    coefficient_energy,
    dense_matrix,
    diagnose,
    equivalence_transform,
    inverse_resolution,
    is_reproducing,
    kernel_apply,
    kernel_matrix,
    reconstruct,
    reproducing_kernel,
    resolution_direct,
    resolution_fast,
    symbol,
    synthesize,
)
