"""Pseudo H-type Lie algebras built from admissible Clifford modules.

The algebra is V (+) R^{r,s} with brackets fixed by
``<J_z X, Y>_V = <z, [X,Y]>_{r,s}``; in an integral basis every structure
constant is 0 or +-1 and for each ordered pair (i, j) at most one central
direction carries a nonzero constant.  ``Omega(z)`` is the skew matrix of
structure constants paired with z; it equals ``tau J_z^T`` with
``tau = diag(metric)``.  Everything here is exact on integer/rational
input; floating point appears only when the caller passes float z.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .clifford import CliffordModule, verify_module_axioms
from .signedperm import SignedPerm


@dataclass(frozen=True)
class StandardLattice:
    """Standard integral lattice: integer horizontal coefficients, center
    coefficients in (1/2)Z.  The dual of the center part is 2Z^d."""

    horizontal_spacing: int = 1
    vertical_spacing: Fraction = Fraction(1, 2)
    p0: int = 2


@dataclass(frozen=True)
class DualLatticeVector:
    """Dual-lattice element 2(sum m_i Z_i + sum n_j Z_{r+j})."""

    mu: tuple
    nu: tuple

    def __post_init__(self):
        if not all(isinstance(v, int) for v in self.mu + self.nu):
            raise ValueError("dual lattice coefficients must be integers")

    @property
    def normsq_mu(self):
        return sum(v * v for v in self.mu)

    @property
    def normsq_nu(self):
        return sum(v * v for v in self.nu)

    @property
    def is_zero(self):
        return self.normsq_mu == 0 and self.normsq_nu == 0

    def coefficients(self):
        """Coefficients of the functional in the Z-basis (factor 2 included)."""
        return tuple(2 * v for v in self.mu + self.nu)

    def content_gcd(self):
        return math.gcd(*(abs(v) for v in self.mu + self.nu)) if not self.is_zero else 0

    def __neg__(self):
        return DualLatticeVector(tuple(-v for v in self.mu),
                                 tuple(-v for v in self.nu))


@dataclass(frozen=True)
class GroupElement:
    x: tuple
    z: tuple


@dataclass(frozen=True)
class PseudoHTypeAlgebra:
    module: CliffordModule
    dim_h: int
    d: int
    constants: tuple  # ((i, j, k, sign), ...) with i < j
    lattice: StandardLattice

    @property
    def signature(self):
        return self.module.signature

    @property
    def r(self):
        return self.module.signature.r

    @property
    def s(self):
        return self.module.signature.s

    @property
    def half_dim(self):
        """N = dim V / 2 (the exponent appearing in all trace formulas)."""
        return self.dim_h // 2

    @property
    def manifold_dim(self):
        return self.dim_h + self.d

    def constant_map(self):
        out = {}
        for i, j, k, sgn in self.constants:
            out[(i, j)] = (k, sgn)
            out[(j, i)] = (k, -sgn)
        return out

    def to_json(self):
        return {
            "r": self.r,
            "s": self.s,
            "dim_h": self.dim_h,
            "d": self.d,
            "constants": [{"i": i, "j": j, "k": k, "sign": sgn}
                          for i, j, k, sgn in self.constants],
            "lattice": {"horizontal_spacing": 1, "vertical_spacing": "1/2",
                        "p0": self.lattice.p0},
            "module": self.module.to_json(),
        }

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)


def build_algebra(mod):
    """Structure constants from the module action: for J_k X_i = sgn X_j,
    c_{ij}^k = metric[i] * sgn (equivalently eps_k <J_k X_i, X_j>_V)."""
    report = verify_module_axioms(mod)
    if not report.ok:
        raise ValueError(f"module fails axioms: {report.failures()}")
    consts = []
    seen = {}
    for k, g in enumerate(mod.generators):
        for i in range(mod.dim_v):
            j, sgn = g.column(i)
            if i < j:
                c = mod.metric[i] * sgn
                if (i, j) in seen:
                    raise AssertionError("two generators on one basis pair")
                seen[(i, j)] = True
                consts.append((i, j, k, c))
    consts.sort()
    return PseudoHTypeAlgebra(mod, mod.dim_v, mod.r + mod.s,
                              tuple(consts), StandardLattice())


# --------------------------------------------------------------------------
# Omega(z) and blocks
# --------------------------------------------------------------------------

def _is_exact_vector(z):
    return all(isinstance(v, (int, Fraction)) for v in z)


def omega(alg, z):
    """Omega(z) = sum_k z_k (c_ij^k); exact for int/Fraction entries,
    float64 otherwise."""
    if len(z) != alg.d:
        raise ValueError("center vector has wrong length")
    n = alg.dim_h
    if _is_exact_vector(z):
        m = [[0] * n for _ in range(n)]
        for i, j, k, sgn in alg.constants:
            m[i][j] += sgn * z[k]
            m[j][i] -= sgn * z[k]
        return m
    m = np.zeros((n, n))
    for i, j, k, sgn in alg.constants:
        m[i, j] += sgn * z[k]
        m[j, i] -= sgn * z[k]
    return m


def omega_dense(alg, z):
    m = omega(alg, z)
    if isinstance(m, np.ndarray):
        return m
    return np.array([[float(v) for v in row] for row in m])


def tau_matrix(alg):
    return np.diag(np.array(alg.module.metric, dtype=np.int64))


def jz_matrix(alg, z):
    """J_z = sum z_k J_k, exact (nested lists) for exact z, else float."""
    gens = alg.module.generators
    n = alg.dim_h
    if _is_exact_vector(z):
        m = [[0] * n for _ in range(n)]
        for k, g in enumerate(gens):
            if z[k] == 0:
                continue
            for i in range(n):
                j, sgn = g.column(i)
                m[j][i] += sgn * z[k]
        return m
    m = np.zeros((n, n))
    for k, g in enumerate(gens):
        if z[k] == 0:
            continue
        for i in range(n):
            j, sgn = g.column(i)
            m[j, i] += sgn * z[k]
    return m


def omega_blocks(alg, z):
    """Blocks (A(mu), B(nu), C(nu), D(mu)) of J_z for the V+/V- splitting.

    Requires s > 0.  Blocks are taken by metric masks, so modules whose
    basis is not contiguous (direct sums, negated products) work too.
    """
    if alg.s == 0:
        raise ValueError("V+/V- splitting needs s > 0")
    pos = list(alg.module.positive_indices())
    neg = list(alg.module.negative_indices())
    jz = jz_matrix(alg, z)
    if isinstance(jz, np.ndarray):
        A = jz[np.ix_(pos, pos)]
        B = jz[np.ix_(pos, neg)]
        C = jz[np.ix_(neg, pos)]
        D = jz[np.ix_(neg, neg)]
        return A, B, C, D
    A = [[jz[a][b] for b in pos] for a in pos]
    B = [[jz[a][b] for b in neg] for a in pos]
    C = [[jz[a][b] for b in pos] for a in neg]
    D = [[jz[a][b] for b in neg] for a in neg]
    return A, B, C, D


# --------------------------------------------------------------------------
# Exact polynomial helpers (coefficient lists, ascending powers)
# --------------------------------------------------------------------------

def poly_mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out

def poly_pow(p, e):
    out = [1]
    for _ in range(e):
        out = poly_mul(out, p)
    return out

def poly_eval(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def char_poly_squared(alg, z):
    """det(Omega(z) + lambda)^2 as an exact integer polynomial.

    Closed form: ((l^2 + |mu|^2 + |nu|^2)^2 - 4 |mu|^2 |nu|^2)^N for s > 0
    and (l^2 + |z|^2)^{2N} for s = 0, with N = dim_h / 2.
    """
    if not all(isinstance(v, int) for v in z):
        raise ValueError("char_poly_squared needs integer z")
    N = alg.half_dim
    r = alg.r
    if alg.s > 0:
        qp = sum(v * v for v in z[:r])
        qm = sum(v * v for v in z[r:])
        quartic = [(qp - qm) ** 2, 0, 2 * (qp + qm), 0, 1]
        return poly_pow(quartic, N)
    q = sum(v * v for v in z)
    return poly_pow([q, 0, 1], 2 * N)


def bareiss_det(mat):
    """Fraction-free (Bareiss) determinant of an integer matrix."""
    a = [row[:] for row in mat]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _interpolate_integer_poly(xs, ys):
    """Newton interpolation; asserts the result has integer coefficients."""
    n = len(xs)
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    # expand Newton form
    poly = [Fraction(0)] * n
    acc = [Fraction(1)]
    for i in range(n):
        for t, c in enumerate(acc):
            poly[t] += coef[i] * c
        acc = poly_mul(acc, [-Fraction(xs[i]), Fraction(1)])
    out = []
    for c in poly:
        if c.denominator != 1:
            raise AssertionError("interpolated polynomial not integral")
        out.append(int(c))
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def char_poly_squared_bruteforce(alg, z):
    """Brute-force det(Omega(z) + lambda)^2, independent of the closed form.

    det(Omega + lambda) is a degree-2N integer polynomial; it is computed
    by fraction-free (Bareiss) determinants at 2N+1 integer lambda values
    and exact interpolation, then squared.
    """
    om = omega(alg, z)
    n = alg.dim_h
    xs = list(range(n + 1))
    ys = []
    for a in xs:
        m = [row[:] for row in om]
        for i in range(n):
            m[i][i] += a
        ys.append(bareiss_det(m))
    p = _interpolate_integer_poly(xs, ys)
    return poly_mul(p, p)


def char_poly_squared_annihilator(alg, z):
    """Fast exact oracle for det(Omega(z)+lambda)^2 via Omega^2.

    S = Omega^2 is integer symmetric, hence diagonalizable; an exact
    annihilating polynomial of degree <= 2 is found from the matrix data
    (no appeal to the closed form), its integer roots are the eigenvalues
    and the multiplicities follow from trace(S).  Works at dimensions
    where full Bareiss interpolation is too slow.
    """
    om = np.array(omega(alg, z), dtype=np.int64)
    n = alg.dim_h
    S = om @ om
    bound = n * int(np.abs(om).max() or 1) ** 2
    assert bound < 2 ** 31, "int64 overflow headroom exceeded"
    if np.array_equal(S, S[0, 0] * np.eye(n, dtype=np.int64)):
        mu1 = int(S[0, 0])
        return poly_pow([-mu1, 0, 1], n)
    if np.array_equal(S, np.diag(np.diag(S))):
        out = [1]
        for v in np.diag(S).tolist():
            out = poly_mul(out, [-int(v), 0, 1])
        return out
    # solve S^2 + a S + b I = 0 exactly
    S2 = S.astype(object) @ S.astype(object)
    i0, j0 = None, None
    for i in range(n):
        for j in range(n):
            if i != j and S[i, j] != 0:
                i0, j0 = i, j
                break
        if i0 is not None:
            break
    a = -Fraction(int(S2[i0, j0]), int(S[i0, j0]))
    b = -(S2[i0, i0] + a * S[i0, i0])
    if a.denominator != 1 or (isinstance(b, Fraction) and b.denominator != 1):
        raise AssertionError("annihilator is not integral")
    a, b = int(a), int(b)
    if np.any(S2 + a * S.astype(object) + b * np.eye(n, dtype=object) != 0):
        raise AssertionError("no quadratic annihilator found")
    disc = a * a - 4 * b
    rt = math.isqrt(disc) if disc >= 0 else -1
    if rt * rt != disc:
        # irreducible quadratic annihilator: the two conjugate eigenvalues
        # of the diagonalizable S must appear with equal multiplicity n/2
        # for the characteristic polynomial to have rational coefficients
        assert n % 2 == 0
        return poly_pow([b, 0, a, 0, 1], n // 2)
    mu1 = (-a + rt) // 2
    mu2 = (-a - rt) // 2
    tr = int(np.trace(S))
    # m1 + m2 = n, m1 mu1 + m2 mu2 = tr
    m1num = tr - n * mu2
    assert m1num % (mu1 - mu2) == 0
    m1 = m1num // (mu1 - mu2)
    m2 = n - m1
    assert 0 <= m1 <= n
    # det(Omega + l)^2 = det(l^2 I - S) = (l^2 - mu1)^{m1} (l^2 - mu2)^{m2}
    return poly_mul(poly_pow([-mu1, 0, 1], m1), poly_pow([-mu2, 0, 1], m2))


# --------------------------------------------------------------------------
# Eigenvalues, kernel lattice
# --------------------------------------------------------------------------

def omega_eigen(alg, z):
    """Eigenvalues (with multiplicities) of Omega(sqrt(-1) z).

    For s > 0 these are +-(|mu| + |nu|) and +-(|mu| - |nu|) with
    multiplicity N/2 each when mu, nu != 0; +-|nu| (resp. +-|mu|) with
    multiplicity N when one part vanishes.  For s = 0: +-|z| with
    multiplicity N.  Returns a list of (eigenvalue, multiplicity) sorted
    descending, multiplicities summing to dim_h.
    """
    if len(z) != alg.d:
        raise ValueError("center vector has wrong length")
    N = alg.half_dim
    r = alg.r
    a = math.sqrt(float(sum(v * v for v in z[:r])))
    b = math.sqrt(float(sum(v * v for v in z[r:])))
    if a == 0 and b == 0:
        raise ValueError("z must be nonzero")
    acc = {}

    def add(val, mult):
        acc[val] = acc.get(val, 0) + mult

    if alg.s == 0 or b == 0:
        add(a, N)
        add(-a, N)
    elif a == 0:
        add(b, N)
        add(-b, N)
    else:
        if N % 2:
            raise ValueError(
                "mixed eigenvalue query needs even N = dim_h/2; this module "
                f"has N = {N}")
        add(a + b, N // 2)
        add(-(a + b), N // 2)
        add(a - b, N // 2)
        add(b - a, N // 2)
    out = sorted(acc.items(), key=lambda kv: -kv[0])
    assert sum(m for _, m in out) == alg.dim_h
    return out


def exact_rank(mat):
    """Rank of an integer/rational matrix by exact elimination."""
    a = [[Fraction(v) for v in row] for row in mat]
    rows = len(a)
    if rows == 0:
        return 0
    cols = len(a[0])
    rank = 0
    for c in range(cols):
        piv = None
        for i in range(rank, rows):
            if a[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        pv = a[rank][c]
        a[rank] = [v / pv for v in a[rank]]
        for i in range(rows):
            if i != rank and a[i][c] != 0:
                f = a[i][c]
                a[i] = [u - f * w for u, w in zip(a[i], a[rank])]
        rank += 1
        if rank == rows:
            break
    return rank


def kernel_lattice_basis(alg, dv):
    """Integer basis of M(n) = ker Omega(n) cap Z^{2N} and its Gram matrix.

    With d0 = gcd(mu, nu) and (mu', nu') = (mu, nu)/d0 the basis columns
    are (B(nu') e_i, -D(mu') e_i); the Euclidean Gram matrix is exactly
    2 |mu'|^2 Id (so the kernel sum is a scaled cubic lattice).
    """
    if alg.s == 0:
        raise ValueError("kernel lattice needs s > 0")
    if not isinstance(dv, DualLatticeVector):
        raise TypeError("expected a DualLatticeVector")
    if dv.is_zero:
        raise ValueError("n must be nonzero")
    if dv.normsq_mu != dv.normsq_nu:
        raise ValueError("Omega(n) is nonsingular unless |mu| = |nu|")
    d0 = dv.content_gcd()
    mup = tuple(v // d0 for v in dv.mu)
    nup = tuple(v // d0 for v in dv.nu)
    N = alg.half_dim
    _, B, _, D = omega_blocks(alg, list(mup) + list(nup))
    pos = list(alg.module.positive_indices())
    neg = list(alg.module.negative_indices())
    cols = []
    for i in range(N):
        w = [0] * alg.dim_h
        for row in range(N):
            w[pos[row]] = B[row][i]
            w[neg[row]] = -D[row][i]
        cols.append(tuple(w))
    gram = [[sum(cols[i][t] * cols[j][t] for t in range(alg.dim_h))
             for j in range(N)] for i in range(N)]
    q = sum(v * v for v in mup)
    expected = [[2 * q if i == j else 0 for j in range(N)] for i in range(N)]
    if gram != expected:
        raise AssertionError("kernel Gram matrix is not 2|mu'|^2 Id")
    om = omega(alg, [2 * v for v in dv.mu + dv.nu])
    for w in cols:
        img = [sum(om[i][t] * w[t] for t in range(alg.dim_h))
               for i in range(alg.dim_h)]
        if any(img):
            raise AssertionError("kernel basis vector not in ker Omega(n)")
    return cols, gram


# --------------------------------------------------------------------------
# Group law
# --------------------------------------------------------------------------

def group_product(g, h, alg):
    """g * h = g + h + [g,h]/2, exact over rationals."""
    if len(g.x) != alg.dim_h or len(h.x) != alg.dim_h:
        raise ValueError("horizontal dimension mismatch")
    if len(g.z) != alg.d or len(h.z) != alg.d:
        raise ValueError("center dimension mismatch")
    x = tuple(Fraction(a) + Fraction(b) for a, b in zip(g.x, h.x))
    z = [Fraction(a) + Fraction(b) for a, b in zip(g.z, h.z)]
    for i, j, k, sgn in alg.constants:
        # bracket contribution of the (i, j) pair, both orientations
        z[k] += Fraction(sgn) * (Fraction(g.x[i]) * Fraction(h.x[j])
                                 - Fraction(g.x[j]) * Fraction(h.x[i])) / 2
    return GroupElement(x, tuple(z))


def group_inverse(g):
    return GroupElement(tuple(-Fraction(v) for v in g.x),
                        tuple(-Fraction(v) for v in g.z))
