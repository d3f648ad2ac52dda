"""Fourier decomposition into intrinsic band functions."""

from ._fdmkit import (
    Decomposition,
    FdmkitError,
    Fibf,
    InputError,
    IoError,
    NumericalError,
    cutoff_schedule,
    decompose,
    dft,
    generate,
    instantaneous_energy,
    marginal_spectrum,
    mfdm,
    tfe_grid,
)

__all__ = [
    "Decomposition",
    "FdmkitError",
    "Fibf",
    "InputError",
    "IoError",
    "NumericalError",
    "cutoff_schedule",
    "decompose",
    "dft",
    "generate",
    "instantaneous_energy",
    "marginal_spectrum",
    "mfdm",
    "tfe_grid",
]
__version__ = "0.1.0"
