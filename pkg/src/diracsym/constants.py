"""Shared conventions: metric signature, units, default tolerances.

Everything downstream assumes the metric signature (+, -, -, -) fixed
here, and natural units hbar = c = 1: masses, momenta and times are
dimensionless multiples of a single reference mass scale.
"""
import numpy as np

METRIC_DIAGONAL = (1.0, -1.0, -1.0, -1.0)

METRIC = np.diag(METRIC_DIAGONAL)
METRIC.setflags(write=False)

# default max-abs-entry tolerance for 4x4 matrix equality
MATRIX_TOL = 1e-12

# anticommutator certification of the gamma matrices
CLIFFORD_TOL = 1e-13

# boost-covariance residuals (intertwining and phase-operator commutator)
INTERTWINING_TOL = 1e-11
COMMUTATOR_TOL = 1e-11

# Lorentz-group invariant values in the spinor representation
CASIMIR_TOL = 1e-12

# gauge identities on the default 64-point spectral grid
GAUGE_IDENTITY_TOL = 1e-9

# allowed |norm - 1| drift along an evolution trace
NORM_DRIFT_TOL = 1e-9
