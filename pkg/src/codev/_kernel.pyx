# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot loop: per-agent bounded search with the objective fused in.

Must stay bit-identical to the pure-Python twin (`_kernel_py`): same
floating-point operation order, same libm calls, same random-stream
consumption (raw doubles from the numpy bit generator).
"""

from cpython.pycapsule cimport PyCapsule_GetPointer
from libc.math cimport M_E, M_PI, cos, exp, fabs, fmod, isfinite, pow, sin, sqrt, tan

from numpy.random cimport bitgen_t

import numpy as np

from .annealing import AnnealingAbortError

BACKEND_NAME = "compiled"

cdef double ACKLEY_C1 = 20.0
cdef double ACKLEY_C2 = 0.2

# refinement-stage constants, kept in sync with codev.annealing
cdef double POLISH_SCALE_DIV_C = 8.0
cdef double POLISH_MIN_SCALE_REL_C = 1e-9
cdef long POLISH_MAX_EVALS_C = 200

POLISH_SCALE_DIV = POLISH_SCALE_DIV_C
POLISH_MIN_SCALE_REL = POLISH_MIN_SCALE_REL_C
POLISH_MAX_EVALS = POLISH_MAX_EVALS_C


cdef inline double _eval(int kind_id, double* v, Py_ssize_t d) noexcept nogil:
    cdef double acc, s2, sc, t1, t2, w, s
    cdef Py_ssize_t m
    if kind_id == 0:  # absolute sum
        acc = 0.0
        for m in range(d):
            acc += fabs(v[m])
        return acc
    if kind_id == 1:  # sphere
        acc = 0.0
        for m in range(d):
            acc += v[m] * v[m]
        return acc
    if kind_id == 2:  # ackley
        s2 = 0.0
        sc = 0.0
        for m in range(d):
            s2 += v[m] * v[m]
            sc += cos(2.0 * M_PI * v[m])
        t1 = -ACKLEY_C1 * exp(-ACKLEY_C2 * sqrt(s2 / d))
        t2 = exp(sc / d)
        return t1 - t2 + M_E + ACKLEY_C1
    # levy
    w = 1.0 + (v[0] - 1.0) / 4.0
    s = sin(M_PI * w)
    acc = s * s
    for m in range(d - 1):
        w = 1.0 + (v[m] - 1.0) / 4.0
        s = sin(M_PI * w + 1.0)
        acc += (w - 1.0) * (w - 1.0) * (1.0 + 10.0 * s * s)
    w = 1.0 + (v[d - 1] - 1.0) / 4.0
    s = sin(2.0 * M_PI * w)
    acc += (w - 1.0) * (w - 1.0) * (1.0 + s * s)
    return acc


cdef inline double _reflect(double y, double lo, double hi) noexcept nogil:
    cdef double w, r, x
    if lo <= y <= hi:
        return y
    w = hi - lo
    if w <= 0.0:
        return lo
    r = fmod(y - lo, 2.0 * w)
    if r < 0.0:
        r += 2.0 * w
    if r > w:
        r = 2.0 * w - r
    x = lo + r
    if x < lo:
        x = lo
    if x > hi:
        x = hi
    return x


cdef int _chain(int kind_id, double* buf, Py_ssize_t d, double lo, double hi,
                double tau, double rho, long omega, long n_inner, bitgen_t* bg,
                double* out_x, double* out_f,
                double* out_x_best, double* out_f_best) noexcept nogil:
    """Stochastic stage; returns 0 ok, 1 if the objective went non-finite."""
    cdef double u, x, fx, x_best, f_best, width, expo, t_num, temp, cand, fc
    cdef long k, j
    cdef bint accepted

    u = bg.next_double(bg.state)
    x = lo + u * (hi - lo)
    buf[0] = x
    fx = _eval(kind_id, buf, d)
    if not isfinite(fx):
        return 1
    x_best = x
    f_best = fx

    width = hi - lo
    expo = rho - 1.0
    t_num = tau * (pow(2.0, expo) - 1.0)
    for k in range(1, omega + 1):
        temp = t_num / (pow(1.0 + k, expo) - 1.0)
        for j in range(n_inner):
            u = bg.next_double(bg.state)
            cand = _reflect(x + temp * width * tan(M_PI * (u - 0.5)), lo, hi)
            buf[0] = cand
            fc = _eval(kind_id, buf, d)
            if not isfinite(fc):
                return 1
            if fc <= fx:
                accepted = True
            elif temp > 0.0:
                accepted = bg.next_double(bg.state) < exp(-(fc - fx) / temp)
            else:
                accepted = False
            if accepted:
                x = cand
                fx = fc
            if fc < f_best:
                x_best = cand
                f_best = fc
    out_x[0] = x
    out_f[0] = fx
    out_x_best[0] = x_best
    out_f_best[0] = f_best
    return 0


cdef int _polish(int kind_id, double* buf, Py_ssize_t d, double lo, double hi,
                 double f_tol, double* io_x, double* io_f,
                 long* out_evals) noexcept nogil:
    """Deterministic shrinking-step refinement; returns 0 ok, 1 non-finite."""
    cdef double width = hi - lo
    cdef double scale = width / POLISH_SCALE_DIV_C
    cdef double min_scale = width * POLISH_MIN_SCALE_REL_C
    cdef double x = io_x[0]
    cdef double fx = io_f[0]
    cdef double cand, fc
    cdef long evals = 0
    while scale > min_scale and evals < POLISH_MAX_EVALS_C:
        cand = x + scale
        if cand > hi:
            cand = hi
        buf[0] = cand
        fc = _eval(kind_id, buf, d)
        evals += 1
        if not isfinite(fc):
            return 1
        if fx - fc > f_tol:
            x = cand
            fx = fc
            continue
        if evals >= POLISH_MAX_EVALS_C:
            break
        cand = x - scale
        if cand < lo:
            cand = lo
        buf[0] = cand
        fc = _eval(kind_id, buf, d)
        evals += 1
        if not isfinite(fc):
            return 1
        if fx - fc > f_tol:
            x = cand
            fx = fc
            continue
        scale *= 0.5
    io_x[0] = x
    io_f[0] = fx
    out_evals[0] = evals
    return 0


cdef int _design(int kind_id, double* buf, Py_ssize_t d, double lo, double hi,
                 double tau, double rho, long omega, long n_inner,
                 double refine_rtol, double x_incumbent, bitgen_t* bg,
                 double* out_x, double* out_y, double* out_y_inc,
                 long* out_evals) noexcept nogil:
    """One design-cycle search against an incumbent; 0 ok, 1 non-finite."""
    cdef double y_inc, effort, x_end, f_end, x_best, f_best, x_cand, y_cand
    cdef long polish_evals = 0
    cdef bint accepted

    buf[0] = x_incumbent
    y_inc = _eval(kind_id, buf, d)
    if not isfinite(y_inc):
        return 1
    effort = refine_rtol * y_inc
    if _chain(kind_id, buf, d, lo, hi, tau, rho, omega, n_inner, bg,
              &x_end, &f_end, &x_best, &f_best):
        return 1
    x_cand = x_end
    y_cand = f_end
    if _polish(kind_id, buf, d, lo, hi, effort, &x_cand, &y_cand, &polish_evals):
        return 1
    if y_cand <= y_inc:
        accepted = True
    elif effort > 0.0:
        accepted = bg.next_double(bg.state) < exp(-(y_cand - y_inc) / effort)
    else:
        accepted = False
    if accepted:
        out_x[0] = x_cand
        out_y[0] = y_cand
    else:
        out_x[0] = x_incumbent
        out_y[0] = y_inc
    out_y_inc[0] = y_inc
    out_evals[0] = 2 + omega * n_inner + polish_evals
    return 0


cdef inline bitgen_t* _bitgen(object rng):
    return <bitgen_t*> PyCapsule_GetPointer(rng.bit_generator.capsule, "BitGenerator")


def eval_vec(int kind_id, v):
    cdef double[::1] arr = np.ascontiguousarray(v, dtype=np.float64)
    if arr.shape[0] < 1:
        raise ValueError("vector must have at least one component")
    return _eval(kind_id, &arr[0], arr.shape[0])


def anneal_slice(int kind_id, neighbor_values, double lo, double hi,
                 double tau, double rho, long omega, long n_inner, rng):
    """Minimize the slice objective x -> f([x, *neighbor_values])."""
    cdef double[::1] nb = np.ascontiguousarray(neighbor_values, dtype=np.float64)
    cdef Py_ssize_t d = nb.shape[0] + 1
    cdef double[::1] buf = np.empty(d, dtype=np.float64)
    cdef Py_ssize_t m
    for m in range(nb.shape[0]):
        buf[m + 1] = nb[m]
    cdef bitgen_t* bg = _bitgen(rng)
    cdef double x_end, f_end, x_best, f_best
    cdef long polish_evals = 0
    if _chain(kind_id, &buf[0], d, lo, hi, tau, rho, omega, n_inner, bg,
              &x_end, &f_end, &x_best, &f_best):
        raise AnnealingAbortError("objective returned a non-finite value")
    if _polish(kind_id, &buf[0], d, lo, hi, 0.0, &x_best, &f_best, &polish_evals):
        raise AnnealingAbortError("objective returned a non-finite value")
    return x_best, f_best, 1 + omega * n_inner + polish_evals


def design_slice(int kind_id, neighbor_values, double lo, double hi,
                 double tau, double rho, long omega, long n_inner, rng,
                 double x_incumbent, double refine_rtol):
    """One design-cycle search for the slice objective; returns
    (x_new, y_new, y_incumbent, evals)."""
    cdef double[::1] nb = np.ascontiguousarray(neighbor_values, dtype=np.float64)
    cdef Py_ssize_t d = nb.shape[0] + 1
    cdef double[::1] buf = np.empty(d, dtype=np.float64)
    cdef Py_ssize_t m
    for m in range(nb.shape[0]):
        buf[m + 1] = nb[m]
    cdef bitgen_t* bg = _bitgen(rng)
    cdef double x_new, y_new, y_inc
    cdef long evals = 0
    if _design(kind_id, &buf[0], d, lo, hi, tau, rho, omega, n_inner,
               refine_rtol, x_incumbent, bg, &x_new, &y_new, &y_inc, &evals):
        raise AnnealingAbortError("objective returned a non-finite value")
    return x_new, y_new, y_inc, evals


def run_cycle(int kind_id, long[::1] indptr, long[::1] indices,
              double[::1] s_start, double[::1] x_actual,
              unsigned char[::1] future_mask,
              double lo, double hi, double tau, double rho,
              long omega, long n_inner, list rngs, double refine_rtol):
    """Step every agent against the frozen cycle-start reports.

    Mutates x_actual in place; returns (x_reported, y_reported, F) with F
    accumulated in agent-index order.
    """
    cdef Py_ssize_t n = s_start.shape[0]
    cdef Py_ssize_t i, m, deg, max_deg
    max_deg = 0
    for i in range(n):
        deg = indptr[i + 1] - indptr[i]
        if deg > max_deg:
            max_deg = deg
    x_rep = np.empty(n, dtype=np.float64)
    y_rep = np.empty(n, dtype=np.float64)
    cdef double[::1] x_rep_v = x_rep
    cdef double[::1] y_rep_v = y_rep
    cdef double[::1] buf = np.empty(max_deg + 1, dtype=np.float64)
    cdef double f_total = 0.0
    cdef double x_start, x_new, y_new, y_inc, y
    cdef long evals = 0
    cdef bitgen_t* bg
    for i in range(n):
        deg = indptr[i + 1] - indptr[i]
        for m in range(deg):
            buf[m + 1] = s_start[indices[indptr[i] + m]]
        bg = _bitgen(rngs[i])
        x_start = x_actual[i]
        if _design(kind_id, &buf[0], deg + 1, lo, hi, tau, rho, omega, n_inner,
                   refine_rtol, x_start, bg, &x_new, &y_new, &y_inc, &evals):
            raise AnnealingAbortError(
                f"objective returned a non-finite value (agent {i})"
            )
        x_actual[i] = x_new
        if future_mask[i]:
            x_rep_v[i] = x_new
            y = y_new
        else:
            x_rep_v[i] = x_start
            y = y_inc
        y_rep_v[i] = y
        f_total += y
    return x_rep, y_rep, f_total
