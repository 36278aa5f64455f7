"""Global numerical tolerances shared by the oracle, the synthesizers and the tests."""

import os

#: Equality of unitary / Hermitian matrices produced by synthesis.
TOL_MATRIX = 1e-10
#: Purely algebraic identities (exact decompositions, Kronecker rules).
TOL_ALGEBRA = 1e-12
#: Hermiticity precondition for the eigensolver.
TOL_HERMITIAN = 1e-10
#: Eigenvalue snapping when classifying spectra.
TOL_SNAP = 1e-9
#: Unitarity of lowered circuits.
TOL_UNITARY = 1e-9
#: Angles treated as Clifford multiples of pi/2.
TOL_ANGLE = 1e-12

#: Jacobi convergence: off-diagonal Frobenius mass relative to max(1, ||A||_F).
JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100

#: Largest register the dense lowering accepts.
MAX_LOWER_QUBITS = 10

DEFAULT_SEED = 20250101


def default_tolerance() -> float:
    """Verification tolerance, overridable through ``QUBITIZER_TOL``."""
    raw = os.environ.get("QUBITIZER_TOL")
    return float(raw) if raw else TOL_MATRIX
