"""Heat traces of the sub-Laplacian (and Laplacian) on compact quotients
by the standard integral lattice.

The trace decomposes over the dual lattice of the center torus,
``n = 2(mu + nu)`` with integer vectors mu, nu.  Writing a = |mu|,
b = |nu| and N = dim V / 2, the component traces are

  n = 0:        (2 pi t)^{-N} sum_{l in Z^{2N}} exp(-|l|^2 / 2t)
  a = b != 0:   (pi t)^{-N/2} (2a / sinh(8 pi t a))^{N/2}
                    * sum_{l in Z^N} exp(-|mu'|^2 |l|^2 / t),
                with (mu', nu') = (mu, nu)/gcd(mu, nu)
  a != b:       2^N ((a^2－b^2) / (sinh(4 pi t(a+b)) sinh(4 pi t(a-b))))^{N/2}

and for s = 0, n != 0 the trace is (|n'| / sinh(2 pi t |n'|))^N with
n' = 2 mu.  Every infinite sum carries a certified absolute truncation
bound; dual-lattice sums are grouped by the norm pair (|mu|^2, |nu|^2)
(plus gcd class on the diagonal), which the component values depend on.

All functions take a numeric context so the same code runs in double or
extended (mpmath) precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .algebra import DualLatticeVector, kernel_lattice_basis, omega_dense, omega_eigen


# --------------------------------------------------------------------------
# Numeric contexts
# --------------------------------------------------------------------------

class NumCtx:
    """Dispatch table for scalar math in double or extended precision."""

    def __init__(self, name, exp, sinh, sqrt, log, pi, eps, to_float, fsum):
        self.name = name
        self.exp = exp
        self.sinh = sinh
        self.sqrt = sqrt
        self.log = log
        self.pi = pi
        self.eps = eps
        self.to_float = to_float
        self.fsum = fsum

    def xsinh(self, x):
        """x / sinh(x), even, = 1 at x = 0."""
        if x == 0:
            return x + 1
        ax = abs(x)
        if self.name == "double" and ax < 1e-8:
            return 1.0 - ax * ax / 6.0
        return ax / self.sinh(ax)


FLOAT_CTX = NumCtx("double", math.exp, math.sinh, math.sqrt, math.log,
                   math.pi, 2.220446049250313e-16, float, math.fsum)


def mp_ctx(dps=50):
    import mpmath
    ctx = mpmath.mp.clone()
    ctx.dps = dps
    return NumCtx(f"mp{dps}", ctx.exp, ctx.sinh, ctx.sqrt, ctx.log,
                  ctx.pi, ctx.mpf(10) ** (2 - dps), float, ctx.fsum)


# --------------------------------------------------------------------------
# Controls and result containers
# --------------------------------------------------------------------------

@dataclass
class TraceControls:
    lattice_radius: int = 4          # initial sup-norm cutoff, auto-grown
    theta_radius: int = 8            # initial 1-d theta cutoff, auto-grown
    tail_tolerance: float = 1e-13    # requested absolute truncation bound
    precision: str = "double"        # "double" or "extended"
    dps: int = 50                    # mpmath digits for "extended"
    radius_cap: int = 2048

    def context(self):
        return FLOAT_CTX if self.precision == "double" else mp_ctx(self.dps)


class TruncationError(RuntimeError):
    def __init__(self, message, best_bound):
        super().__init__(message)
        self.best_bound = best_bound


@dataclass
class HeatTraceSeries:
    t_values: tuple
    values: tuple
    tail_bounds: tuple


# --------------------------------------------------------------------------
# Certified one-dimensional Gaussian sums
# --------------------------------------------------------------------------

def theta_1d(s, ctx, tol):
    """(value, err) with |sum_{k in Z} e^{-s k^2} - value| <= err <= tol.

    Tail bound: for k > L, k^2 - (L+1)^2 >= (2L+3)(k-L-1), so
    sum_{k>L} e^{-s k^2} <= e^{-s(L+1)^2} / (1 - e^{-s(2L+3)}).
    """
    if s <= 0:
        raise ValueError("theta needs s > 0")
    acc = [ctx.exp(s * 0)]  # 1, typed for the context
    k = 1
    while True:
        acc.append(2 * ctx.exp(-s * k * k))
        tail = 2 * ctx.exp(-s * (k + 1) * (k + 1)) / (1 - ctx.exp(-s * (2 * k + 3)))
        if tail <= tol:
            return ctx.fsum(acc), tail
        k += 1
        if k > 100000:
            raise TruncationError("theta sum did not converge", tail)


def theta_power(s, m, ctx, tol):
    """(theta_1d(s)^m, err) with a certified absolute error <= ~tol."""
    rough = 1 + 2 * ctx.exp(-s) / (1 - ctx.exp(-s))  # >= theta (e^{-sk^2}<=e^{-sk})
    inner = tol / (2 * m * rough ** (m - 1)) if m > 1 else tol
    v, e = theta_1d(s, ctx, inner)
    err = m * e * (v + e) ** (m - 1)
    return v ** m, err


# --------------------------------------------------------------------------
# Lattice norm bookkeeping (exact integer counts)
# --------------------------------------------------------------------------

@lru_cache(maxsize=None)
def normsq_counts(dim, radius):
    """{k: #vectors v in Z^dim, |v|_inf <= radius, |v|^2 = k}."""
    if dim == 0:
        return {0: 1}
    base = {}
    for j in range(-radius, radius + 1):
        base[j * j] = base.get(j * j, 0) + 1
    counts = {0: 1}
    for _ in range(dim):
        nxt = {}
        for k1, c1 in counts.items():
            for k2, c2 in base.items():
                nxt[k1 + k2] = nxt.get(k1 + k2, 0) + c1 * c2
        counts = nxt
    return counts


def vectors_with_normsq(dim, k, radius):
    """All v in Z^dim with |v|^2 = k and |v|_inf <= radius."""
    out = []

    def rec(prefix, rem, d):
        if d == 0:
            if rem == 0:
                out.append(tuple(prefix))
            return
        top = min(radius, math.isqrt(rem))
        for v in range(-top, top + 1):
            rec(prefix + [v], rem - v * v, d - 1)

    rec([], k, dim)
    return out


@lru_cache(maxsize=None)
def _content_distribution(dim, k, radius):
    """{g: #vectors with |v|^2 = k, |v|_inf <= radius, gcd(|entries|) = g}."""
    out = {}
    for v in vectors_with_normsq(dim, k, radius):
        g = math.gcd(*(abs(x) for x in v))
        out[g] = out.get(g, 0) + 1
    return out


# --------------------------------------------------------------------------
# Component trace values (per norm data)
# --------------------------------------------------------------------------

def _case1(N, t, ctx, tol):
    pref = (2 * ctx.pi * t) ** (-N)
    th, err = theta_power(1 / (2 * t), 2 * N, ctx, tol / pref)
    return pref * th, pref * err


def _case2(N, k, kred, t, ctx, tol):
    """|mu| = |nu|, |mu|^2 = k, |mu'|^2 = kred = k / d0^2."""
    a = ctx.sqrt(k)
    pref = (ctx.pi * t) ** (-N / 2) * _pow_half(2 * a * _inv_sinh(8 * ctx.pi * t * a, ctx), N, ctx)
    th, err = theta_power(kred / t, N, ctx, tol / pref if pref > 0 else tol)
    return pref * th, pref * err


def _case3(N, k1, k2, t, ctx):
    """|mu|^2 = k1 != k2 = |nu|^2 (covers mu = 0 or nu = 0 and s = 0)."""
    a = ctx.sqrt(k1)
    b = ctx.sqrt(k2)
    q = abs(k1 - k2)
    u = 4 * ctx.pi * t * (a + b)
    v = 4 * ctx.pi * t * abs(a - b)
    base = q * _inv_sinh(u, ctx) * _inv_sinh(v, ctx)
    return (2 ** N) * _pow_half(base, N, ctx)


def _inv_sinh(x, ctx):
    """1/sinh(x) for x > 0, 0.0 on double overflow (abs err < 1e-300)."""
    if ctx.name == "double" and x > 709:
        return 0.0
    return 1 / ctx.sinh(x)


def _pow_half(base, N, ctx):
    """base^(N/2) for base >= 0."""
    if base == 0:
        return base
    if N % 2 == 0:
        return base ** (N // 2)
    return base ** (N // 2) * ctx.sqrt(base)


def component_trace_with_error(alg, dv, t, *, ctx=FLOAT_CTX, tol=1e-15):
    """Heat trace of the component operator attached to the dual element
    ``n = 2(mu + nu)`` with a certified absolute truncation bound."""
    if t <= 0:
        raise ValueError("t must be positive")
    if len(dv.mu) != alg.r or len(dv.nu) != alg.s:
        raise ValueError("dual vector has wrong signature")
    N = alg.half_dim
    k1 = dv.normsq_mu
    k2 = dv.normsq_nu
    if k1 == 0 and k2 == 0:
        return _case1(N, t, ctx, tol)
    if alg.s == 0:
        # dual vector n' = 2 mu: (|n'| / sinh(2 pi t |n'|))^N
        return _case3(N, k1, 0, t, ctx), 0 * t
    if k1 == k2:
        d0 = dv.content_gcd()
        kred = k1 // (d0 * d0)
        return _case2(N, k1, kred, t, ctx, tol)
    return _case3(N, k1, k2, t, ctx), 0 * t


def component_trace(alg, dv, t, *, ctx=FLOAT_CTX, tol=1e-15):
    return component_trace_with_error(alg, dv, t, ctx=ctx, tol=tol)[0]


def component_trace_general(alg, dv, t, *, ctx=FLOAT_CTX, tol=1e-15,
                            eigen="closed"):
    """Component trace straight from the lattice-sum x van Vleck form:

        (2 pi t)^{-N} sum_{w in M(n)} e^{-<w,w>/2t}
                      sqrt(det(X / sinh X)),  X = Omega(2 pi i t n).

    Serves as the independent oracle for ``component_trace``.  The
    determinant factor is the product over eigenvalue pairs +-x of
    x/sinh(x) (zero eigenvalues contribute 1); ``eigen="numeric"`` uses a
    dense Hermitian eigensolver instead of the closed form.
    """
    if t <= 0:
        raise ValueError("t must be positive")
    N = alg.half_dim
    pref = (2 * ctx.pi * t) ** (-N)
    coeffs = dv.coefficients()
    if dv.is_zero:
        th, err = theta_power(1 / (2 * t), 2 * N, ctx, tol / pref)
        return pref * th, pref * err
    w = [2 * ctx.pi * t * c for c in coeffs]
    if eigen == "numeric":
        H = 1j * omega_dense(alg, [float(v) for v in w])
        lams = np.linalg.eigvalsh(H)
        det = 1.0
        for lam in lams:
            det *= FLOAT_CTX.xsinh(float(lam))
        F = math.sqrt(det)
    else:
        pairs = omega_eigen(alg, w)
        F = 1
        for lam, mult in pairs:
            if lam > 0:
                F = F * ctx.xsinh(lam) ** mult
        # eigenvalues come in +- pairs; positives give sqrt(det) directly
    if dv.normsq_mu == dv.normsq_nu:
        cols, gram = kernel_lattice_basis(alg, dv)
        # Gram is verified to be 2 q' Id by kernel_lattice_basis
        qprime = gram[0][0] // 2
        th, err = theta_power(qprime / t, N, ctx, tol / pref if pref > 0 else tol)
        S, serr = th, err
    else:
        S, serr = 1, 0 * t
    val = pref * S * F
    return val, pref * serr * F


# --------------------------------------------------------------------------
# Certified tail machinery for the dual-lattice sum
# --------------------------------------------------------------------------

def _shell_count(j, dim):
    if j == 0:
        return 1
    return (2 * j + 1) ** dim - (2 * j - 1) ** dim


def _sum_decaying(term, ratio, j0, stop_frac=1e-6, max_iter=100000):
    """Upper bound for sum_{j >= j0} term(j).

    ``ratio(j)`` must bound term(i+1)/term(i) for every i >= j and be
    nonincreasing in j.  Terms are added until the geometric remainder is
    small relative to the accumulated value, then the remainder is added.
    """
    acc = 0
    j = j0
    for _ in range(max_iter):
        v = term(j)
        acc = acc + v
        q = ratio(j)
        if q < 1:
            rem = v * q / (1 - q)
            if rem <= stop_frac * acc or rem <= 1e-320:
                return acc + rem
        j += 1
    raise TruncationError("tail sum did not stabilize", acc)


def _master_fhat(x, N, t, ctx):
    """sup_{y >= x} f(y); f increases up to y* = N/(2c) - 1 then decays."""
    c = 2 * ctx.pi * t * N
    ystar = N / (2 * c) - 1
    y = x if x >= ystar else ystar
    if y < 0:
        y = 0 * y
    return _pow_half(1 + y, N, ctx) * ctx.exp(-c * y)


def _side_sum(dim, j0, N, t, ctx):
    """Upper bound for sum over v in Z^dim, |v|_inf >= j0 of f(|v|_2),
    done by sup-norm shells: |v|_2 >= |v|_inf = j and f -> fhat."""
    if dim == 0:
        return 0 * t

    def term(j):
        return _shell_count(j, dim) * _master_fhat(j, N, t, ctx)

    def ratio(j):
        cnt = ((2 * j + 3) / (2 * j - 1)) ** (dim - 1) if j >= 1 else 3.0 ** dim
        return cnt * _master_fhat(j + 1, N, t, ctx) / _master_fhat(j, N, t, ctx)

    return _sum_decaying(term, ratio, j0)


def _tail_constant(alg, t, ctx):
    """K(t) with component_trace(n) <= K f(|mu|) f(|nu|) for n outside any
    box (derivation in the module docstring discussion of cases 2/3)."""
    N = alg.half_dim
    eps8 = 1 - ctx.exp(-8 * ctx.pi * t)
    if alg.s == 0:
        return (4 / eps8) ** N
    thbar = 1 + 2 * ctx.exp(-1 / t) / (1 - ctx.exp(-1 / t))
    k2 = _pow_half(4 / (ctx.pi * t * eps8), N, ctx) * thbar ** N
    return k2


def _s0_side_sum(dim, j0, N, t, ctx):
    """s = 0 variant: profile f0(x) = (1+x)^N e^{-4 pi t N x}."""
    c = 4 * ctx.pi * t * N

    def fhat(x):
        ystar = N / c - 1
        y = x if x >= ystar else ystar
        if y < 0:
            y = 0 * y
        return (1 + y) ** N * ctx.exp(-c * y)

    def term(j):
        return _shell_count(j, dim) * fhat(j)

    def ratio(j):
        cnt = ((2 * j + 3) / (2 * j - 1)) ** (dim - 1) if j >= 1 else 3.0 ** dim
        return cnt * fhat(j + 1) / fhat(j)

    return _sum_decaying(term, ratio, j0)


def lattice_tail_bound(alg, radius, t, ctx):
    """Certified bound for the dual-lattice terms with |mu|_inf > radius
    or |nu|_inf > radius."""
    N = alg.half_dim
    K = _tail_constant(alg, t, ctx)
    if alg.s == 0:
        return K * _s0_side_sum(alg.r, radius + 1, N, t, ctx)
    tail_mu = _side_sum(alg.r, radius + 1, N, t, ctx)
    tail_nu = _side_sum(alg.s, radius + 1, N, t, ctx)
    all_mu = 1 + _side_sum(alg.r, 1, N, t, ctx)
    all_nu = 1 + _side_sum(alg.s, 1, N, t, ctx)
    return K * (tail_mu * all_nu + all_mu * tail_nu)


# --------------------------------------------------------------------------
# Total traces
# --------------------------------------------------------------------------

def _enumerate_box(alg, radius, t, ctx, theta_tol, shift):
    """Sum of component traces over |mu|_inf, |nu|_inf <= radius.

    ``shift(k1, k2)`` multiplies each component (used for the Laplacian);
    grouping is by (|mu|^2, |nu|^2) plus gcd class on the diagonal, which
    is exactly the data the component values depend on.
    """
    r, s = alg.r, alg.s
    N = alg.half_dim
    cmu = normsq_counts(r, radius)
    cnu = normsq_counts(s, radius)
    vals = []
    errs = []
    v, e = _case1(N, t, ctx, theta_tol)
    vals.append(v * shift(0, 0))
    errs.append(e)
    for k1 in sorted(cmu):
        for k2 in sorted(cnu):
            if k1 == 0 and k2 == 0:
                continue
            if k1 == k2 and s > 0:
                dist_mu = _content_distribution(r, k1, radius)
                dist_nu = _content_distribution(s, k2, radius)
                pair_counts = {}
                for gm, cm in dist_mu.items():
                    for gn, cn in dist_nu.items():
                        d0 = math.gcd(gm, gn)
                        pair_counts[d0] = pair_counts.get(d0, 0) + cm * cn
                for d0 in sorted(pair_counts):
                    kred = k1 // (d0 * d0)
                    v, e = _case2(N, k1, kred, t, ctx, theta_tol)
                    cnt = pair_counts[d0]
                    vals.append(cnt * v * shift(k1, k2))
                    errs.append(cnt * e)
            else:
                cnt = cmu[k1] * cnu[k2]
                vals.append(cnt * _case3(N, k1, k2, t, ctx) * shift(k1, k2))
    return ctx.fsum(vals), ctx.fsum(errs) if errs else 0 * t


def _total(alg, t, ctrl, shift_kind):
    if t <= 0:
        raise ValueError("t must be positive")
    ctx = ctrl.context()
    tol = ctrl.tail_tolerance
    radius = max(1, ctrl.lattice_radius)
    while True:
        tail = lattice_tail_bound(alg, radius, t, ctx)
        if tail <= tol:
            break
        if radius >= ctrl.radius_cap:
            raise TruncationError(
                f"radius cap {ctrl.radius_cap} reached with tail {tail}", tail)
        radius = min(2 * radius, ctrl.radius_cap)
    if shift_kind == "laplacian":
        # central shift 2 pi^2 sum(coeff^2) with coeff = 2(mu, nu)
        def shift(k1, k2):
            return ctx.exp(-8 * ctx.pi ** 2 * t * (k1 + k2))
    else:
        def shift(k1, k2):
            return 1
    theta_tol = tol / 4
    value, theta_err = _enumerate_box(alg, radius, t, ctx, theta_tol, shift)
    return value, tail + theta_err


def total_trace(alg, t, ctrl=None):
    """Heat trace of the sub-Laplacian with a certified truncation bound."""
    return _total(alg, t, ctrl or TraceControls(), "sub")


def laplacian_total_trace(alg, t, ctrl=None):
    """Heat trace of the Riemannian Laplacian: each dual component is
    shifted by exp(-2 pi^2 t sum(coeff^2)), coefficients 2(mu, nu)."""
    return _total(alg, t, ctrl or TraceControls(), "laplacian")


def heat_trace_series(alg, t_values, ctrl=None, laplacian=False):
    ctrl = ctrl or TraceControls()
    ts = tuple(sorted(float(t) for t in t_values))
    vals = []
    bounds = []
    fn = laplacian_total_trace if laplacian else total_trace
    for t in ts:
        v, b = fn(alg, t, ctrl)
        vals.append(v)
        bounds.append(b)
    return HeatTraceSeries(ts, tuple(vals), tuple(bounds))


# --------------------------------------------------------------------------
# Explicit spectrum for s = 0
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class SpectrumEntry:
    value: float
    mult_coeff: int
    mult_sqrt: int   # multiplicity = mult_coeff * sqrt(mult_sqrt)
    series: str      # "lambda" or "beta"
    key: tuple

    @property
    def multiplicity(self):
        if self.mult_sqrt == 1:
            return self.mult_coeff
        return self.mult_coeff * math.sqrt(self.mult_sqrt)

    @property
    def exact_integer(self):
        return self.mult_sqrt == 1


@dataclass
class SpectrumTable:
    entries: tuple
    cutoff: float
    N: int
    r: int


def _squarefree_split(q):
    """q = f^2 * k with k squarefree; returns (f, k)."""
    f = 1
    k = q
    d = 2
    while d * d <= k:
        while k % (d * d) == 0:
            k //= d * d
            f *= d
        d += 1
    return f, k


def spectrum_s0(alg, lam_max):
    """Complete sub-Laplacian spectrum up to lam_max for s = 0 quotients.

    Two series: lambda_l = 2 pi^2 |l|^2 over l in Z^{2N} (multiplicity =
    lattice count of the norm) and beta_{n,m} = 4 pi |n| (2m + N) over
    n in Z^r - 0, m >= 0, with multiplicity 4^N |n|^N C(m+N-1, N-1),
    aggregated over (n, m) giving equal values.  Aggregated multiplicities
    are exact integers when N is even or |n| is integral; otherwise they
    are integer multiples of sqrt(squarefree part).
    """
    if alg.s != 0:
        raise ValueError("explicit spectrum implemented for s = 0 only")
    if lam_max <= 0:
        raise ValueError("cutoff must be positive")
    N = alg.half_dim
    r = alg.r
    entries = []
    # lambda series; the box covers every q the comparator can admit
    qmax = int(lam_max / (2 * math.pi ** 2)) + 2
    counts = normsq_counts(2 * N, math.isqrt(qmax) + 1)
    for q in sorted(counts):
        val = 2 * math.pi ** 2 * q
        if val <= lam_max and counts[q] > 0:
            entries.append(SpectrumEntry(val, counts[q], 1, "lambda", ("lambda", q)))
    # beta series, aggregated by (squarefree part, f*(2m+N))
    qbmax = int((lam_max / (4 * math.pi * N)) ** 2) + 2
    bcounts = normsq_counts(r, math.isqrt(qbmax) + 1)
    agg = {}
    for q in sorted(bcounts):
        if q == 0 or q > qbmax or bcounts[q] == 0:
            continue
        f, k = _squarefree_split(q)
        m = 0
        while True:
            val = 4 * math.pi * math.sqrt(q) * (2 * m + N)
            if val > lam_max:
                break
            coeff = bcounts[q] * 4 ** N * f ** N * k ** (N // 2) \
                * math.comb(m + N - 1, N - 1)
            key = ("beta", k, f * (2 * m + N))
            cur = agg.get(key)
            sqrt_part = 1 if N % 2 == 0 else k
            if cur is None:
                agg[key] = [val, coeff, sqrt_part]
            else:
                assert cur[2] == sqrt_part
                cur[1] += coeff
            m += 1
    for key, (val, coeff, sqrt_part) in agg.items():
        entries.append(SpectrumEntry(val, coeff, sqrt_part, "beta", key))
    entries.sort(key=lambda e: (e.value, e.series))
    return SpectrumTable(tuple(entries), float(lam_max), N, r)


def _entry_value(entry, ctx):
    """Eigenvalue rebuilt exactly in the numeric context from the entry key."""
    if entry.key[0] == "lambda":
        return 2 * ctx.pi ** 2 * entry.key[1]
    _, k, c = entry.key
    return 4 * ctx.pi * c * ctx.sqrt(k)


def _entry_mult(entry, ctx):
    if entry.mult_sqrt == 1:
        return entry.mult_coeff
    return entry.mult_coeff * ctx.sqrt(entry.mult_sqrt)


def _beta_m_start(q, N, lam):
    """First m with 4 pi sqrt(q) (2m+N) > lam, same float logic as the
    table enumeration (so table + tail cover everything exactly once)."""
    m = 0
    while 4 * math.pi * math.sqrt(q) * (2 * m + N) <= lam:
        m += 1
    return m


def trace_from_spectrum(table, t, *, ctx=FLOAT_CTX):
    """sum mult * exp(-t lambda) over the table plus a certified bound for
    the eigenvalues beyond the cutoff (both series)."""
    if t <= 0:
        raise ValueError("t must be positive")
    vals = [_entry_mult(e, ctx) * ctx.exp(-t * _entry_value(e, ctx))
            for e in table.entries]
    value = ctx.fsum(vals)
    N, r, lam = table.N, table.r, table.cutoff

    # lambda tail: all l whose eigenvalue the table comparator rejected,
    # i.e. |l|^2 >= qtail0 = first q with 2 pi^2 q > lam (same float test)
    s = 2 * ctx.pi ** 2 * t
    qtail0 = max(0, int(lam / (2 * math.pi ** 2)) - 2)
    while 2 * math.pi ** 2 * qtail0 <= lam:
        qtail0 += 1
    J = math.isqrt(qtail0) + 1
    inside = ((2 * J + 1) ** (2 * N)) * ctx.exp(-s * qtail0)

    def lterm(j):
        return _shell_count(j, 2 * N) * ctx.exp(-s * j * j)

    def lratio(j):
        return ((2 * j + 3) / (2 * j - 1)) ** (2 * N - 1) * ctx.exp(-s * (2 * j + 1))

    lam_tail = inside + _sum_decaying(lterm, lratio, J)

    # beta tail; per fixed q = |n|^2 the series over m is bounded using
    # multiplicity <= (2 sqrt(q)+1)^r 4^N q^{N/2} (m+1)^{N-1}
    def beta_q_tail(q, m0):
        a = ctx.sqrt(q)
        x = ctx.exp(-8 * ctx.pi * t * a)
        base = (2 * a + 1) ** r * 4 ** N * _pow_half(q, N, ctx) \
            * ctx.exp(-4 * ctx.pi * t * a * N)
        if m0 == 0:
            # sum (m+1)^{N-1} x^m <= sum C(m+N-1, N-1) x^m = (1-x)^{-N}
            return base / (1 - x) ** N

        def bterm(m):
            return base * (m + 1) ** (N - 1) * x ** m

        def bratio(m):
            return ((m + 2) / (m + 1)) ** (N - 1) * x

        return _sum_decaying(bterm, bratio, m0)

    qb = int((lam / (4 * math.pi * N)) ** 2) + 2  # matches the table range
    parts = [beta_q_tail(q, _beta_m_start(q, N, lam)) for q in range(1, qb + 1)]

    # far region q > qb grouped by shells j <= sqrt(q) < j+1:
    # at most 2j+1 values of q per shell, each bounded at sqrt(q) = j
    j0 = math.isqrt(qb + 1)

    def qshell(j):
        a = j
        x = ctx.exp(-8 * ctx.pi * t * a)
        bound = (2 * (a + 1) + 1) ** r * 4 ** N * (a + 1) ** N \
            * ctx.exp(-4 * ctx.pi * t * a * N) / (1 - x) ** N
        return (2 * j + 1) * bound

    def qshell_ratio(j):
        decay = ctx.exp(-4 * ctx.pi * t * N)
        poly = ((2 * j + 5) / (2 * j + 3)) ** r * ((j + 2) / (j + 1)) ** N \
            * ((2 * j + 3) / (2 * j + 1))
        return poly * decay

    beta_tail = ctx.fsum(parts) + _sum_decaying(qshell, qshell_ratio, j0)
    return value, lam_tail + beta_tail


def recover_dimension_s0(table, tol=1e-9):
    """Recover dim V = 2N from a spectrum table: the smallest beta-series
    eigenvalue is 4 pi N (norm-1 dual elements, m = 0)."""
    beta_vals = [e.value for e in table.entries if e.series == "beta"]
    if not beta_vals:
        raise ValueError("no beta eigenvalues below the cutoff")
    n_est = min(beta_vals) / (4 * math.pi)
    n_round = round(n_est)
    if abs(n_est - n_round) > tol:
        raise ValueError(f"lowest beta eigenvalue not of the form 4 pi N: {n_est}")
    return 2 * n_round


def classify_eigenvalue_series(value, tol=1e-9):
    """'lambda' when (value/pi^2)/2 is integral, 'beta' when value^2/pi^2
    is (the separation used to tell the two series apart)."""
    lam_q = value / (2 * math.pi ** 2)
    if abs(lam_q - round(lam_q)) < tol and round(lam_q) >= 0:
        return "lambda"
    beta_q = (value / math.pi) ** 2
    if abs(beta_q - round(beta_q)) < tol * max(1.0, beta_q):
        return "beta"
    return "unknown"


# --------------------------------------------------------------------------
# Multiple-module power law
# --------------------------------------------------------------------------

def multiple_module_power_check(alg_k, alg_min, dv, t, *, rel_tol=1e-10,
                                ctx=FLOAT_CTX):
    """Check component_trace(alg_k) = component_trace(alg_min)^k where
    alg_k is built from k copies of alg_min's minimal module."""
    if alg_k.signature != alg_min.signature:
        return False
    if alg_k.dim_h % alg_min.dim_h:
        return False
    k = alg_k.dim_h // alg_min.dim_h
    big, _ = component_trace_with_error(alg_k, dv, t, ctx=ctx)
    small, _ = component_trace_with_error(alg_min, dv, t, ctx=ctx)
    ref = small ** k
    denom = max(abs(big), abs(ref))
    if denom == 0:
        return True
    return abs(big - ref) / denom <= rel_tol
