"""Exact cohomology of (phi, Gamma)-modules over W_n(F_q)((pi)).

Main entry points:

    RingParams, LaurentElement            coefficient ring and series
    trivial_module, cyclotomic_twist, ... module constructors
    compute_cohomology, euler_check       the Herr complex
    pairing_perfect, h2_iso               duality
    c3_symbolic_verify, c3_h0             the two-generator complex
    compare_theorem2                      finite-field oracle
    WittVector                            Witt vector arithmetic
"""

from .coefficients import CoeffElement, RingParams, padic_log, teichmuller, trace_to_base
from .errors import (
    BelowThreshold,
    DegreeOverflow,
    InconsistentRep,
    NoConvergence,
    NoStabilization,
    NotAUnit,
    NotCommuting,
    NotEtale,
    ParseError,
    PhiGammaError,
    TorsionBase,
    TorsionMismatch,
    UnsupportedModule,
    ValidationError,
    WindowTooSmall,
    WrongModule,
)
from .laurent import ActionParams, DifferentialForm, LaurentElement, apply_gamma, apply_phi, residue, series_invert
from .modules import (
    PhiGammaModule,
    PhiModuleCharP,
    cyclotomic_twist,
    hom_dual,
    induced_unramified,
    omega_module,
    tensor,
    trivial_module,
    unramified_twist,
    validate,
)
from .herr import (
    CohomologyGroup,
    c1_cohomology_finite_field,
    compute_cohomology,
    euler_check,
    h0,
    h1,
    h2,
    solve_phi_minus_one,
)
from .duality import check_h2_iso, cup, h2_iso, normalization_unit, pairing_perfect, trace_form
from .c3 import GroupWord, TwoGenModule, c3_build, c3_h0, c3_symbolic_verify, delta_op
from .oracle import FiniteRep, compare_theorem2, d_of_v, procyclic_cohomology
from .witt import WittVector, frobenius_W, ghost, verschiebung, witt_add, witt_iso_znp, witt_mul
from .fileformat import parse_file, parse_text, serialize

__version__ = "0.1.0"
