"""Quadratic Gauss sums of the fractional Talbot effect.

Integer arithmetic, the parity-dependent modular inverse ``s``, exact Gauss-sum
phase sequences, sampled temporal Talbot propagation and Talbot array
illuminator design.
"""

from .errors import DomainError, GridMismatchError
from .numtheory import bezout, gcd, jacobi, mod_inverse, parity
from .talbot_s import (
    TalbotOrder,
    TalbotS,
    closed_form_s,
    complement_s,
    compute_s,
    compute_s_alt,
    s_table,
    verify_s,
)
from .gauss_phase import (
    ExactPhase,
    PhaseSequence,
    chu_sequence,
    dft,
    gauss_sum_direct,
    idft,
    is_chu_equivalent,
    periodic_autocorrelation,
    spectral_weights,
    talbot_phases,
    xi0,
    xi0_bruteforce,
)
from .talbot_field import (
    LineSpectrum,
    PeriodicEnvelope,
    analyze,
    compare,
    propagate,
    reconstruct_fractional,
    synthesize,
)
from .tai import (
    TaiDesign,
    equivalent_up_to_shift_and_phase,
    leger_phases,
    r_based_phases,
    spectral_talbot_phases,
    tai_forward,
    tai_phases,
    tai_spectrum,
)

__version__ = "0.1.0"
