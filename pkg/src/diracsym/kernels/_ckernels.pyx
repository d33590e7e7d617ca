# cython: language_level=3
# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled propagation kernels.

Pade-13 scaling-and-squaring exponential for 4x4 complex matrices plus
the momentum-space stepping loops. `pure.py` holds the NumPy mirror of
the same algorithms; results agree to rounding.
"""
import numpy as np

from libc.math cimport ceil, hypot, log2

ctypedef double complex zc

cdef double _THETA13 = 5.371920351148152
cdef double[14] _B
_B[0] = 64764752532480000.0
_B[1] = 32382376266240000.0
_B[2] = 7771770303897600.0
_B[3] = 1187353796428800.0
_B[4] = 129060195264000.0
_B[5] = 10559470521600.0
_B[6] = 670442572800.0
_B[7] = 33522128640.0
_B[8] = 1323241920.0
_B[9] = 40840800.0
_B[10] = 960960.0
_B[11] = 16380.0
_B[12] = 182.0
_B[13] = 1.0


cdef inline double _cabs(zc z) nogil:
    return hypot(z.real, z.imag)


cdef void _mul44(const zc* x, const zc* y, zc* out) nogil:
    cdef int i, j, k
    cdef zc acc
    for i in range(4):
        for j in range(4):
            acc = 0
            for k in range(4):
                acc = acc + x[4 * i + k] * y[4 * k + j]
            out[4 * i + j] = acc


cdef void _matvec4(const zc* m, const zc* v, zc* out) nogil:
    cdef int i, k
    cdef zc acc
    for i in range(4):
        acc = 0
        for k in range(4):
            acc = acc + m[4 * i + k] * v[k]
        out[i] = acc


cdef double _norm1(const zc* x) nogil:
    cdef double best = 0.0, col
    cdef int i, j
    for j in range(4):
        col = 0.0
        for i in range(4):
            col += _cabs(x[4 * i + j])
        if col > best:
            best = col
    return best


cdef int _solve44(zc* a, zc* b) nogil:
    """Solve a @ x = b for 4x4 a, b; x overwrites b, a is destroyed.

    Gaussian elimination with partial pivoting. Returns nonzero when a
    pivot vanishes exactly.
    """
    cdef int col, row, piv, k
    cdef double best, mag
    cdef zc factor, tmp
    for col in range(4):
        piv = col
        best = _cabs(a[4 * col + col])
        for row in range(col + 1, 4):
            mag = _cabs(a[4 * row + col])
            if mag > best:
                best = mag
                piv = row
        if best == 0.0:
            return 1
        if piv != col:
            for k in range(4):
                tmp = a[4 * col + k]
                a[4 * col + k] = a[4 * piv + k]
                a[4 * piv + k] = tmp
                tmp = b[4 * col + k]
                b[4 * col + k] = b[4 * piv + k]
                b[4 * piv + k] = tmp
        for row in range(col + 1, 4):
            factor = a[4 * row + col] / a[4 * col + col]
            if factor != 0:
                for k in range(col, 4):
                    a[4 * row + k] = a[4 * row + k] - factor * a[4 * col + k]
                for k in range(4):
                    b[4 * row + k] = b[4 * row + k] - factor * b[4 * col + k]
    for col in range(3, -1, -1):
        factor = a[4 * col + col]
        for k in range(4):
            b[4 * col + k] = b[4 * col + k] / factor
        for row in range(col):
            factor = a[4 * row + col]
            if factor != 0:
                for k in range(4):
                    b[4 * row + k] = b[4 * row + k] - factor * b[4 * col + k]
    return 0


cdef void _expm4(const zc* a_in, zc* out) nogil:
    cdef zc a[16]
    cdef zc a2[16]
    cdef zc a4[16]
    cdef zc a6[16]
    cdef zc u[16]
    cdef zc v[16]
    cdef zc t1[16]
    cdef zc t2[16]
    cdef int i, j, s
    cdef double nrm, scale
    for i in range(16):
        a[i] = a_in[i]
    nrm = _norm1(a)
    s = 0
    if nrm > _THETA13:
        s = <int>ceil(log2(nrm / _THETA13))
        scale = 2.0 ** (-s)
        for i in range(16):
            a[i] = a[i] * scale
    _mul44(a, a, a2)
    _mul44(a2, a2, a4)
    _mul44(a2, a4, a6)
    for i in range(16):
        t1[i] = _B[13] * a6[i] + _B[11] * a4[i] + _B[9] * a2[i]
    _mul44(a6, t1, t2)
    for i in range(16):
        t2[i] = t2[i] + _B[7] * a6[i] + _B[5] * a4[i] + _B[3] * a2[i]
    t2[0] += _B[1]
    t2[5] += _B[1]
    t2[10] += _B[1]
    t2[15] += _B[1]
    _mul44(a, t2, u)
    for i in range(16):
        t1[i] = _B[12] * a6[i] + _B[10] * a4[i] + _B[8] * a2[i]
    _mul44(a6, t1, v)
    for i in range(16):
        v[i] = v[i] + _B[6] * a6[i] + _B[4] * a4[i] + _B[2] * a2[i]
    v[0] += _B[0]
    v[5] += _B[0]
    v[10] += _B[0]
    v[15] += _B[0]
    for i in range(16):
        t1[i] = v[i] - u[i]
        out[i] = v[i] + u[i]
    _solve44(t1, out)
    for j in range(s):
        _mul44(out, out, t2)
        for i in range(16):
            out[i] = t2[i]


cdef void _hamil(const zc* ap, const zc* beta, double m, double t,
                 bint modified, zc* out) nogil:
    cdef zc tmp[16]
    cdef zc u[16]
    cdef int i
    if not modified:
        for i in range(16):
            out[i] = ap[i] + m * beta[i]
        return
    for i in range(16):
        tmp[i] = 2j * t * ap[i]
    _expm4(tmp, u)
    _mul44(beta, u, tmp)
    for i in range(16):
        out[i] = ap[i] + m * beta[i] - m * tmp[i]


def expm4(a):
    """exp(a) for a single 4x4 complex matrix."""
    arr = np.ascontiguousarray(a, dtype=np.complex128)
    if arr.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {arr.shape}")
    out = np.empty((4, 4), dtype=np.complex128)
    cdef zc[:, ::1] av = arr
    cdef zc[:, ::1] ov = out
    _expm4(&av[0, 0], &ov[0, 0])
    return out


def hamiltonian4(ap, beta, double m, double t, bint modified):
    """H(t) = a.p + m*beta - m*beta*exp(2i t a.p); constant form when unmodified."""
    apc = np.ascontiguousarray(ap, dtype=np.complex128)
    bc = np.ascontiguousarray(beta, dtype=np.complex128)
    if apc.shape != (4, 4) or bc.shape != (4, 4):
        raise ValueError("expected 4x4 matrices")
    out = np.empty((4, 4), dtype=np.complex128)
    cdef zc[:, ::1] av = apc
    cdef zc[:, ::1] bv = bc
    cdef zc[:, ::1] ov = out
    _hamil(&av[0, 0], &bv[0, 0], m, t, modified, &ov[0, 0])
    return out


def evolve_momentum(ap, beta, double m, psi0, double dt,
                    Py_ssize_t n_steps, int method, bint modified):
    """Propagate i dpsi/dt = H(t) psi from t = 0, recording every step.

    method 0 is the midpoint-exponential step, method 1 classical RK4.
    Returns (times, spinors) with n_steps + 1 rows.
    """
    apc = np.ascontiguousarray(ap, dtype=np.complex128)
    bc = np.ascontiguousarray(beta, dtype=np.complex128)
    pc = np.ascontiguousarray(psi0, dtype=np.complex128)
    if apc.shape != (4, 4) or bc.shape != (4, 4):
        raise ValueError("expected 4x4 matrices")
    if pc.shape != (4,):
        raise ValueError("expected a 4-component spinor")
    times = np.empty(n_steps + 1, dtype=np.float64)
    spinors = np.empty((n_steps + 1, 4), dtype=np.complex128)
    cdef zc[:, ::1] av = apc
    cdef zc[:, ::1] bv = bc
    cdef zc[::1] p0 = pc
    cdef double[::1] tv = times
    cdef zc[:, ::1] sv = spinors
    cdef zc psi[4]
    cdef zc tmp[4]
    cdef zc k1[4]
    cdef zc k2[4]
    cdef zc k3[4]
    cdef zc k4[4]
    cdef zc h0[16]
    cdef zc hm[16]
    cdef zc h1[16]
    cdef zc step[16]
    cdef Py_ssize_t k
    cdef int i
    cdef double t
    for i in range(4):
        psi[i] = p0[i]
        sv[0, i] = psi[i]
    tv[0] = 0.0
    with nogil:
        for k in range(n_steps):
            t = k * dt
            if method == 0:
                _hamil(&av[0, 0], &bv[0, 0], m, t + 0.5 * dt, modified, hm)
                for i in range(16):
                    h0[i] = -1j * dt * hm[i]
                _expm4(h0, step)
                _matvec4(step, psi, tmp)
                for i in range(4):
                    psi[i] = tmp[i]
            else:
                _hamil(&av[0, 0], &bv[0, 0], m, t, modified, h0)
                _hamil(&av[0, 0], &bv[0, 0], m, t + 0.5 * dt, modified, hm)
                _hamil(&av[0, 0], &bv[0, 0], m, t + dt, modified, h1)
                _matvec4(h0, psi, k1)
                for i in range(4):
                    k1[i] = -1j * k1[i]
                    tmp[i] = psi[i] + 0.5 * dt * k1[i]
                _matvec4(hm, tmp, k2)
                for i in range(4):
                    k2[i] = -1j * k2[i]
                    tmp[i] = psi[i] + 0.5 * dt * k2[i]
                _matvec4(hm, tmp, k3)
                for i in range(4):
                    k3[i] = -1j * k3[i]
                    tmp[i] = psi[i] + dt * k3[i]
                _matvec4(h1, tmp, k4)
                for i in range(4):
                    k4[i] = -1j * k4[i]
                    psi[i] = psi[i] + (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
            tv[k + 1] = (k + 1) * dt
            for i in range(4):
                sv[k + 1, i] = psi[i]
    return times, spinors
