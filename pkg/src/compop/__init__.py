"""Affine composition operators on the Hardy space of the right half-plane."""
from .symbol import (
    AffineSymbol,
    DiskModel,
    PropertyProfile,
    SymbolClass,
    UnboundedSymbol,
    adjoint_symbol,
    angular_derivative,
    classify,
    fixed_point,
    iterate,
    make_symbol,
    to_disk_model,
)
from .series import PowerSeries
from .rkhs import TruncatedOperator, assemble_matrix, kernel_vector, operator_norm
from .verify import CheckReport, run_suite

__version__ = "0.1.0"
