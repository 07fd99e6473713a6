"""Eigenvalue spectra of prime-power permutations and almost-cyclic classification."""

__version__ = "0.1.0"

from .cyclotomic import CycInt, RootIndex
from .permutations import AnClassLabel, CycleType, Permutation, PrimePowerClass
from .spectra import (
    AlmostCyclicReport,
    EigenSpectrum,
    PreconditionError,
    analyze,
    classify_33e,
    kronecker,
    spectrum_on_Pn,
    spectrum_on_Wn,
)
from .characters import AnCharacter, PartitionLabel, irrep_spectrum, mn_character
