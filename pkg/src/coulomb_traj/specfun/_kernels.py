"""Series kernels with jet propagation of parameter derivatives.

Every kernel carries the term ``t_k`` together with its first and second
derivatives with respect to two parameters and updates them with the product
rule, ``t_{k+1} = t_k f_k``. This stays valid when a Pochhammer factor
vanishes (terminating series), where the familiar ``t_k [psi(a+k) - psi(a)]``
form breaks down.

Output layout shared by the Kummer kernels (13 complex numbers)::

    0..5   sum of t, t_a, t_b, t_aa, t_ab, t_bb
    6..11  the same jets weighted by k
    12     sum of k(k-1) t  (M series)  or  k(k+1) t  (U asymptotic series)

The Kummer M series at ``|z|`` of order 30 loses about ``|z|/ln 10`` digits to
cancellation, so it runs in double-double complex arithmetic.
"""
from __future__ import annotations

import math

import numpy as np

from .._accel import kernel

_SPLITTER = 134217729.0  # 2^27 + 1


# ---------------------------------------------------------------- double-double
@kernel
def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


@kernel
def _quick_two_sum(a, b):
    s = a + b
    return s, b - (s - a)


@kernel
def _two_prod(a, b):
    p = a * b
    t = _SPLITTER * a
    ah = t - (t - a)
    al = a - ah
    t = _SPLITTER * b
    bh = t - (t - b)
    bl = b - bh
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


@kernel
def _dd_add(ah, al, bh, bl):
    s, e = _two_sum(ah, bh)
    t, f = _two_sum(al, bl)
    e += t
    s, e = _quick_two_sum(s, e)
    e += f
    return _quick_two_sum(s, e)


@kernel
def _dd_mul(ah, al, bh, bl):
    p, e = _two_prod(ah, bh)
    e += ah * bl + al * bh
    return _quick_two_sum(p, e)


@kernel
def _dd_div(ah, al, bh, bl):
    q1 = ah / bh
    ph, pl = _dd_mul(bh, bl, q1, 0.0)
    rh, rl = _dd_add(ah, al, -ph, -pl)
    q2 = rh / bh
    ph, pl = _dd_mul(bh, bl, q2, 0.0)
    rh, rl = _dd_add(rh, rl, -ph, -pl)
    q3 = rh / bh
    q1, q2 = _quick_two_sum(q1, q2)
    return _dd_add(q1, q2, q3, 0.0)


# complex double-double values are 4-tuples (re_hi, re_lo, im_hi, im_lo)
@kernel
def _c_add(x, y):
    rh, rl = _dd_add(x[0], x[1], y[0], y[1])
    ih, il = _dd_add(x[2], x[3], y[2], y[3])
    return (rh, rl, ih, il)


@kernel
def _c_mul(x, y):
    ah, al = _dd_mul(x[0], x[1], y[0], y[1])
    bh, bl = _dd_mul(x[2], x[3], y[2], y[3])
    ch, cl = _dd_mul(x[0], x[1], y[2], y[3])
    dh, dl = _dd_mul(x[2], x[3], y[0], y[1])
    rh, rl = _dd_add(ah, al, -bh, -bl)
    ih, il = _dd_add(ch, cl, dh, dl)
    return (rh, rl, ih, il)


@kernel
def _c_scale(x, s):
    rh, rl = _dd_mul(x[0], x[1], s, 0.0)
    ih, il = _dd_mul(x[2], x[3], s, 0.0)
    return (rh, rl, ih, il)


@kernel
def _c_div_d(x, d):
    rh, rl = _dd_div(x[0], x[1], d, 0.0)
    ih, il = _dd_div(x[2], x[3], d, 0.0)
    return (rh, rl, ih, il)


@kernel
def _c_inv(y):
    ah, al = _dd_mul(y[0], y[1], y[0], y[1])
    bh, bl = _dd_mul(y[2], y[3], y[2], y[3])
    nh, nl = _dd_add(ah, al, bh, bl)
    rh, rl = _dd_div(y[0], y[1], nh, nl)
    ih, il = _dd_div(-y[2], -y[3], nh, nl)
    return (rh, rl, ih, il)


@kernel
def _c_abs(x):
    return math.hypot(x[0], x[2])


@kernel
def _c_shift(c, k):
    """Complex ``c + k`` with the real part kept exactly in double-double."""
    rh, rl = _two_sum(c.real, float(k))
    return (rh, rl, c.imag, 0.0)


@kernel
def _c_from(c):
    return (c.real, 0.0, c.imag, 0.0)


# ------------------------------------------------------------------- Kummer M
@kernel
def kummer_m_series(a, b, z, order, max_terms, rtol):
    """Sum the Kummer M series and its parameter/argument derivative jets.

    Returns ``(sums, info)`` with ``sums`` in the 13-slot layout and
    ``info = [terms, max |term|, last |term|, converged]``.
    """
    zero = (0.0, 0.0, 0.0, 0.0)
    t = (1.0, 0.0, 0.0, 0.0)
    ta = zero
    tb = zero
    taa = zero
    tab = zero
    tbb = zero
    acc = np.zeros((13, 4))
    zc = _c_from(z)
    njet = 1 if order == 0 else (3 if order == 1 else 6)
    max_abs = 1.0
    last = 1.0
    quiet = 0
    k = 0
    converged = 0.0
    while k < max_terms:
        jets = (t, ta, tb, taa, tab, tbb)
        mag = 0.0
        for i in range(njet):
            cur = jets[i]
            s = _c_add((acc[i, 0], acc[i, 1], acc[i, 2], acc[i, 3]), cur)
            acc[i, 0], acc[i, 1], acc[i, 2], acc[i, 3] = s[0], s[1], s[2], s[3]
            w = _c_scale(cur, float(k))
            s = _c_add((acc[6 + i, 0], acc[6 + i, 1], acc[6 + i, 2], acc[6 + i, 3]), w)
            acc[6 + i, 0], acc[6 + i, 1], acc[6 + i, 2], acc[6 + i, 3] = s[0], s[1], s[2], s[3]
            m = _c_abs(cur)
            if m > mag:
                mag = m
        w = _c_scale(t, float(k) * (k - 1.0))
        s = _c_add((acc[12, 0], acc[12, 1], acc[12, 2], acc[12, 3]), w)
        acc[12, 0], acc[12, 1], acc[12, 2], acc[12, 3] = s[0], s[1], s[2], s[3]
        if mag > max_abs:
            max_abs = mag
        last = mag * (k + 1.0) * (k + 1.0)
        ref = 0.0
        for i in range(njet):
            r = math.hypot(acc[i, 0], acc[i, 2])
            if r > ref:
                ref = r
        # factor jet of t_{k+1}/t_k = (a+k) z / ((b+k)(k+1))
        ak = _c_shift(a, k)
        bk = _c_shift(b, k)
        binv = _c_inv(bk)
        fa = _c_div_d(_c_mul(zc, binv), k + 1.0)
        f = _c_mul(ak, fa)
        fmag = _c_abs(f)
        if last <= rtol * ref and fmag < 0.9:
            quiet += 1
            if quiet >= 3:
                converged = 1.0
                k += 1
                break
        else:
            quiet = 0
        if order >= 1:
            fb = _c_scale(_c_mul(f, binv), -1.0)
            if order == 2:
                fab = _c_scale(_c_mul(fa, binv), -1.0)
                fbb = _c_scale(_c_mul(fb, binv), -2.0)
                taa = _c_add(_c_mul(taa, f), _c_scale(_c_mul(ta, fa), 2.0))
                tab = _c_add(_c_add(_c_mul(tab, f), _c_mul(ta, fb)),
                             _c_add(_c_mul(tb, fa), _c_mul(t, fab)))
                tbb = _c_add(_c_add(_c_mul(tbb, f), _c_scale(_c_mul(tb, fb), 2.0)),
                             _c_mul(t, fbb))
            ta = _c_add(_c_mul(ta, f), _c_mul(t, fa))
            tb = _c_add(_c_mul(tb, f), _c_mul(t, fb))
        t = _c_mul(t, f)
        k += 1
    out = np.zeros(13, dtype=np.complex128)
    for i in range(13):
        out[i] = complex(acc[i, 0] + acc[i, 1], acc[i, 2] + acc[i, 3])
    info = np.array([float(k), max_abs, last, converged])
    return out, info


# ------------------------------------------------------ U asymptotic series
@kernel
def kummer_u_asymptotic(A, B, w, order, max_terms, rtol):
    """Sum ``sum_k (A)_k (A-B+1)_k / k! (-1/w)^k`` with parameter jets.

    Summation stops at the smallest term when the series starts to diverge.
    Returns ``(sums, info)`` as :func:`kummer_m_series`; ``info[2]`` is the
    magnitude of the first omitted term.
    """
    y = -1.0 / w
    C = A - B + 1.0
    t = 1.0 + 0j
    ta = 0j
    tb = 0j
    taa = 0j
    tab = 0j
    tbb = 0j
    out = np.zeros(13, dtype=np.complex128)
    njet = 1 if order == 0 else (3 if order == 1 else 6)
    prev = np.inf
    max_abs = 1.0
    omitted = 0.0
    converged = 0.0
    k = 0
    while k < max_terms:
        mag = abs(t)
        if njet >= 3:
            mag = max(mag, abs(ta), abs(tb))
        if njet == 6:
            mag = max(mag, abs(taa), abs(tab), abs(tbb))
        wmag = mag * (k + 1.0) * (k + 1.0)
        if k > 1 and wmag > prev:
            omitted = wmag
            break
        jets = (t, ta, tb, taa, tab, tbb)
        for i in range(njet):
            out[i] += jets[i]
            out[6 + i] += k * jets[i]
        out[12] += k * (k + 1.0) * t
        if mag > max_abs:
            max_abs = mag
        prev = wmag
        ref = 0.0
        for i in range(njet):
            r = abs(out[i])
            if r > ref:
                ref = r
        if wmag <= rtol * ref:
            converged = 1.0
            omitted = wmag
            k += 1
            break
        q = y / (k + 1.0)
        f = (A + k) * (C + k) * q
        if order >= 1:
            fa = ((C + k) + (A + k)) * q
            fb = -(A + k) * q
            if order == 2:
                taa = taa * f + 2.0 * ta * fa + t * (2.0 * q)
                tab = tab * f + ta * fb + tb * fa - t * q
                tbb = tbb * f + 2.0 * tb * fb
            ta = ta * f + t * fa
            tb = tb * f + t * fb
        t = t * f
        k += 1
    info = np.array([float(k), max_abs, omitted, converged])
    return out, info


# ---------------------------------------------------------------- Gauss 2F1
@kernel
def hyp2f1_series(a, b, c, x, order, max_terms, rtol):
    """Gauss series with (a, b) derivative jets; 12-slot layout (no slot 12)."""
    t = 1.0 + 0j
    ta = 0j
    tb = 0j
    taa = 0j
    tab = 0j
    tbb = 0j
    out = np.zeros(12, dtype=np.complex128)
    njet = 1 if order == 0 else (3 if order == 1 else 6)
    max_abs = 1.0
    last = 1.0
    quiet = 0
    converged = 0.0
    k = 0
    while k < max_terms:
        jets = (t, ta, tb, taa, tab, tbb)
        mag = 0.0
        for i in range(njet):
            out[i] += jets[i]
            out[6 + i] += k * jets[i]
            m = abs(jets[i])
            if m > mag:
                mag = m
        if mag > max_abs:
            max_abs = mag
        last = mag * (k + 1.0)
        ref = 0.0
        for i in range(njet):
            r = abs(out[i])
            if r > ref:
                ref = r
        if last <= rtol * ref:
            quiet += 1
            if quiet >= 3:
                converged = 1.0
                k += 1
                break
        else:
            quiet = 0
        q = x / ((c + k) * (k + 1.0))
        f = (a + k) * (b + k) * q
        if order >= 1:
            fa = (b + k) * q
            fb = (a + k) * q
            if order == 2:
                taa = taa * f + 2.0 * ta * fa
                tab = tab * f + ta * fb + tb * fa + t * q
                tbb = tbb * f + 2.0 * tb * fb
            ta = ta * f + t * fa
            tb = tb * f + t * fb
        t = t * f
        k += 1
    info = np.array([float(k), max_abs, last, converged])
    return out, info


# ---------------------------------------------------------- Legendre t-series
@kernel
def legendre_t_series(nu, t, max_terms, rtol):
    """Series in ``t = (1-x)/2`` for P_nu and the harmonic part of Q_nu.

    With ``c_k = prod_{j<k} (j-nu)(nu+1+j)/(j+1)^2`` this sums the nu-jets
    (value, d/dnu, d2/dnu2) of ``P = sum c_k t^k`` and
    ``S = sum c_k H_k t^k`` (H_k harmonic numbers), plus the same sums weighted
    by k for the t-derivative. Returns ``(out[4, 3], info)`` with rows
    P, S, kP, kS.
    """
    c0 = 1.0
    c1 = 0.0
    c2 = 0.0
    h = 0.0
    out = np.zeros((4, 3))
    max_abs = 1.0
    last = 1.0
    quiet = 0
    converged = 0.0
    k = 0
    while k < max_terms:
        out[0, 0] += c0
        out[0, 1] += c1
        out[0, 2] += c2
        out[1, 0] += h * c0
        out[1, 1] += h * c1
        out[1, 2] += h * c2
        out[2, 0] += k * c0
        out[2, 1] += k * c1
        out[2, 2] += k * c2
        out[3, 0] += k * h * c0
        out[3, 1] += k * h * c1
        out[3, 2] += k * h * c2
        mag = max(abs(c0), abs(c1), abs(c2)) * (1.0 + h) * (k + 1.0)
        if mag > max_abs:
            max_abs = mag
        last = mag
        ref = max(abs(out[0, 0]), abs(out[0, 1]), abs(out[0, 2]), abs(out[1, 0]), 1e-300)
        if last <= rtol * ref:
            quiet += 1
            if quiet >= 3:
                converged = 1.0
                k += 1
                break
        else:
            quiet = 0
        d = t / ((k + 1.0) * (k + 1.0))
        f = (k - nu) * (nu + 1.0 + k) * d
        f1 = (-2.0 * nu - 1.0) * d
        f2 = -2.0 * d
        c2 = c2 * f + 2.0 * c1 * f1 + c0 * f2
        c1 = c1 * f + c0 * f1
        c0 = c0 * f
        k += 1
        h += 1.0 / k
    info = np.array([float(k), max_abs, last, converged])
    return out, info
