"""NumPy fallback for the propagation kernels.

Same algorithms as the compiled module `_ckernels`: a Pade-13
scaling-and-squaring exponential specialised to 4x4 complex matrices,
the time-dependent Hamiltonian assembly, and the stepping loops.
The two backends must agree to rounding; `tests/test_kernels.py` pins
that.
"""
import numpy as np

_PADE13 = (
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0, 129060195264000.0, 10559470521600.0,
    670442572800.0, 33522128640.0, 1323241920.0, 40840800.0,
    960960.0, 16380.0, 182.0, 1.0,
)
_THETA13 = 5.371920351148152

_EYE4 = np.eye(4, dtype=np.complex128)


def expm4(a):
    """exp(a) for a single 4x4 complex matrix."""
    a = np.asarray(a, dtype=np.complex128)
    if a.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {a.shape}")
    nrm = float(np.abs(a).sum(axis=0).max())  # 1-norm
    squarings = 0
    if nrm > _THETA13:
        squarings = int(np.ceil(np.log2(nrm / _THETA13)))
        a = a * (0.5 ** squarings)
    b = _PADE13
    a2 = a @ a
    a4 = a2 @ a2
    a6 = a2 @ a4
    u = a @ (a6 @ (b[13] * a6 + b[11] * a4 + b[9] * a2)
             + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * _EYE4)
    v = (a6 @ (b[12] * a6 + b[10] * a4 + b[8] * a2)
         + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * _EYE4)
    r = np.linalg.solve(v - u, v + u)
    for _ in range(squarings):
        r = r @ r
    return r


def hamiltonian4(ap, beta, m, t, modified):
    """H(t) = a.p + m*beta - m*beta*exp(2i t a.p).

    With `modified` false the oscillating term is dropped and the
    constant free Hamiltonian a.p + m*beta is returned.
    """
    ap = np.asarray(ap, dtype=np.complex128)
    beta = np.asarray(beta, dtype=np.complex128)
    h = ap + m * beta
    if modified:
        h = h - m * (beta @ expm4((2j * t) * ap))
    return h


def evolve_momentum(ap, beta, m, psi0, dt, n_steps, method, modified):
    """Propagate i dpsi/dt = H(t) psi from t = 0, recording every step.

    method 0 is the midpoint-exponential step exp(-i dt H(t + dt/2))
    (second-order Magnus, exactly norm-preserving for Hermitian H);
    method 1 is classical RK4. Returns (times, spinors) with
    n_steps + 1 rows, row 0 holding the initial state.
    """
    ap = np.asarray(ap, dtype=np.complex128)
    beta = np.asarray(beta, dtype=np.complex128)
    psi = np.asarray(psi0, dtype=np.complex128).copy()
    times = np.empty(n_steps + 1)
    spinors = np.empty((n_steps + 1, 4), dtype=np.complex128)
    times[0] = 0.0
    spinors[0] = psi
    for k in range(n_steps):
        t = k * dt
        if method == 0:
            hm = hamiltonian4(ap, beta, m, t + 0.5 * dt, modified)
            psi = expm4((-1j * dt) * hm) @ psi
        else:
            h0 = hamiltonian4(ap, beta, m, t, modified)
            hm = hamiltonian4(ap, beta, m, t + 0.5 * dt, modified)
            h1 = hamiltonian4(ap, beta, m, t + dt, modified)
            k1 = -1j * (h0 @ psi)
            k2 = -1j * (hm @ (psi + (0.5 * dt) * k1))
            k3 = -1j * (hm @ (psi + (0.5 * dt) * k2))
            k4 = -1j * (h1 @ (psi + dt * k3))
            psi = psi + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        times[k + 1] = (k + 1) * dt
        spinors[k + 1] = psi
    return times, spinors
