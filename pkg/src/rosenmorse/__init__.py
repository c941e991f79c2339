"""Bound states of the Rosen-Morse potential ``V = -alpha(alpha+1) sech^2 x + 2 beta tanh x``.

Eigenfunctions are generated state by state with a coefficient-level raising
chain (a local recurrence followed by a Weyl fractional integral), and checked
against independent oracles: Jacobi evaluations, quadrature and a
finite-difference eigensolver.
"""

from __future__ import annotations

from .errors import (
    DegenerateParameterError,
    DomainError,
    MissingScaleError,
    ParameterMismatchError,
    RosenMorseError,
    SymmetricOnlyError,
    ThresholdError,
    ToleranceNotMetError,
    UnboundStateError,
)
from .ladder import (
    ShiftedPolynomial,
    TanhPolynomial,
    WeylOrder,
    apply_recjac,
    convert_basis,
    raise_general,
    raise_symmetric,
    raising_chain,
    seed_symmetric,
    symmetric_chain,
    weyl_shift,
)
from .spectrum import (
    JacobiParams,
    PotentialParams,
    Scale,
    StateExponents,
    count_bound_states,
    energy,
    exponents,
    jacobi_params,
    log_normalization,
    normalization,
    physical_energy,
    potential,
)
from .wavefn import (
    Eigenstate,
    SampleTable,
    build_state,
    build_states,
    eval_derivatives,
    eval_state,
    log_abs_state,
    node_count,
    sample,
    schrodinger_residual,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
