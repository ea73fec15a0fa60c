"""Admissible Clifford modules with exact signed-permutation generators.

``Cl(r,s)`` is generated by r+s anticommuting elements with squares
``J_k^2 = -Id`` (k <= r) and ``J_k^2 = +Id`` (k > r).  An admissible module
carries a nondegenerate scalar product making every generator
skew-symmetric; for s > 0 the product is neutral (equally many +1 and -1
diagonal entries), for s = 0 it is definite.  All generators here act as
signed permutations of an orthonormal-up-to-sign basis, so every axiom is
checked in exact integer arithmetic.

Construction: generator candidates are tensor words over the 2x2 blocks

    P = [[0,1],[1,0]],  Q = [[1,0],[0,-1]],  R = [[0,-1],[1,0]],

encoded as bitmask pairs (x, z); two words anticommute iff the symplectic
pairing popcount((x1&z2)^(z1&x2)) is odd, and word^2 = (-1)^popcount(x&z).
A depth-first search at the known minimal dimension finds generator
systems; the diagonal metric is solved by a parity union-find.  Signatures
outside the base dimension table are reached through the (8,0), (0,8) and
(4,4) periodicity tensor steps (dimension x16), using the volume element
of the outer factor to keep all generators anticommuting.
"""

from __future__ import annotations

import json
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .signedperm import SignedPerm


class NotFound:
    """Sentinel returned when no admissible bilinear form exists."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NotFound"


NOT_FOUND = NotFound()


class ConstructionError(RuntimeError):
    """Internal verification failure while building a module (a bug)."""


# --------------------------------------------------------------------------
# Signature and dimension data
# --------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Signature:
    r: int
    s: int

    def __post_init__(self):
        if self.r < 0 or self.s < 0:
            raise ValueError("signature entries must be nonnegative")
        if self.r + self.s < 1:
            raise ValueError("signature (0,0) is not allowed")

    @property
    def d(self):
        return self.r + self.s

    def swapped(self):
        return Signature(self.s, self.r)

    def __iter__(self):
        return iter((self.r, self.s))


def _sig(sig):
    if isinstance(sig, Signature):
        return sig
    r, s = sig
    return Signature(int(r), int(s))


# Minimal admissible module dimensions for 0 <= r, s <= 8 where tabulated
# (Furutani-Markina classification); None marks untabulated cells, reached
# by the x16 periodicities below.  The set _TWO_TYPES marks signatures with
# two inequivalent minimal admissible modules.
_DIM_ROWS = {
    0: (1, 2, 4, 4, 8, 8, 8, 8, 16),
    1: (2, 4, 8, 8, 16, 16, 16, 16, None),
    2: (4, 4, 8, 8, 16, 16, 32, 32, None),
    3: (8, 8, 8, 8, 16, 32, 64, 64, None),
    4: (8, 8, 8, 8, 16, None, None, None, None),
    5: (16, 16, 16, 16, None, None, None, None, None),
    6: (16, 16, 32, 32, None, None, None, None, None),
    7: (16, 32, 64, 64, None, None, None, None, None),
    8: (16, None, None, None, None, None, None, None, None),
}
_DIM_TABLE = {}
for _s, _row in _DIM_ROWS.items():
    for _r, _v in enumerate(_row):
        if _v is not None:
            _DIM_TABLE[(_r, _s)] = _v

_TWO_TYPES_BASE = {(3, 0), (7, 0), (1, 2), (5, 2), (1, 6), (3, 4)}


def _reductions(r, s):
    """Applicable periodicity reductions (r', s', label)."""
    out = []
    if r >= 8 and (r - 8, s) != (0, 0):
        out.append((r - 8, s, "(8,0)"))
    if s >= 8 and (r, s - 8) != (0, 0):
        out.append((r, s - 8, "(0,8)"))
    if r >= 4 and s >= 4 and (r - 4, s - 4) != (0, 0):
        out.append((r - 4, s - 4, "(4,4)"))
    return out


def min_admissible_dim(sig):
    """Dimension of a minimal admissible Cl(r,s)-module.

    Base values come from the dimension table; each (8,0), (0,8) or (4,4)
    shift multiplies the dimension by 16.  All applicable reduction routes
    are required to agree.
    """
    sig = _sig(sig)
    return _min_dim(sig.r, sig.s)


@lru_cache(maxsize=None)
def _min_dim(r, s):
    if (r, s) in _DIM_TABLE:
        return _DIM_TABLE[(r, s)]
    cands = [16 * _min_dim(rr, ss) for rr, ss, _ in _reductions(r, s)]
    if not cands:
        raise ValueError(f"signature ({r},{s}) out of reach of the table")
    if len(set(cands)) != 1:
        raise AssertionError(f"inconsistent periodic reductions at ({r},{s})")
    return cands[0]


@lru_cache(maxsize=None)
def has_two_minimal_types(sig_tuple):
    """True when two inequivalent minimal admissible modules exist."""
    r, s = sig_tuple
    if (r, s) in _DIM_TABLE:
        return (r, s) in _TWO_TYPES_BASE
    red = _reductions(r, s)
    vals = {has_two_minimal_types((rr, ss)) for rr, ss, _ in red}
    if len(vals) != 1:
        raise AssertionError(f"inconsistent type flags at ({r},{s})")
    return vals.pop()


# --------------------------------------------------------------------------
# Module spec
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class MinimalVariant:
    """A minimal admissible module up to choice of scalar-product sign and,
    where two inequivalent irreducibles exist, of irreducible type."""

    product_sign: int = 1            # +1 or -1 (sign of the scalar product)
    irreducible_type: str = "unique"  # '+', '-', or 'unique'

    def __post_init__(self):
        if self.product_sign not in (1, -1):
            raise ValueError("product_sign must be +-1")
        if self.irreducible_type not in ("+", "-", "unique"):
            raise ValueError("irreducible_type must be '+', '-' or 'unique'")

    def key(self):
        return (self.product_sign, self.irreducible_type)


@dataclass(frozen=True)
class ModuleSpec:
    """How an admissible module is assembled from minimal summands."""

    signature: Signature
    summands: tuple  # tuple of (MinimalVariant, count)

    def __post_init__(self):
        if not self.summands:
            raise ValueError("spec needs at least one summand")
        for var, cnt in self.summands:
            if cnt < 0:
                raise ValueError("multiplicities must be >= 0")
        if sum(c for _, c in self.summands) == 0:
            raise ValueError("at least one summand must have count > 0")

    @property
    def total_dim(self):
        return sum(c for _, c in self.summands) * min_admissible_dim(self.signature)

    def counts(self):
        out = {}
        for var, cnt in self.summands:
            out[var.key()] = out.get(var.key(), 0) + cnt
        return out

    def multiplicity(self, product_sign, irreducible_type="unique"):
        return self.counts().get((product_sign, irreducible_type), 0)

    def to_json(self):
        return {
            "signature": [self.signature.r, self.signature.s],
            "summands": [
                {"product_sign": "+" if v.product_sign > 0 else "-",
                 "irreducible_type": v.irreducible_type,
                 "count": c}
                for v, c in self.summands
            ],
        }

    @staticmethod
    def from_json(obj):
        sig = Signature(*obj["signature"])
        summands = tuple(
            (MinimalVariant(1 if e["product_sign"] == "+" else -1,
                            e["irreducible_type"]), int(e["count"]))
            for e in obj["summands"]
        )
        return ModuleSpec(sig, summands)


def minimal_spec(sig, variant=None):
    sig = _sig(sig)
    if variant is None:
        variant = default_variant(sig)
    return ModuleSpec(sig, ((variant, 1),))


def default_variant(sig):
    sig = _sig(sig)
    itype = "+" if has_two_minimal_types((sig.r, sig.s)) else "unique"
    return MinimalVariant(1, itype)


# --------------------------------------------------------------------------
# Clifford module container
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class CliffordModule:
    signature: Signature
    dim_v: int
    generators: tuple  # r+s SignedPerm
    metric: tuple      # +-1 diagonal of <.,.>_V in this basis
    spec: ModuleSpec

    @property
    def r(self):
        return self.signature.r

    @property
    def s(self):
        return self.signature.s

    def generator_square_sign(self, k):
        """Expected J_k^2 = sign * Id: -1 for k < r, +1 for k >= r."""
        return -1 if k < self.r else 1

    def positive_indices(self):
        return tuple(i for i, g in enumerate(self.metric) if g > 0)

    def negative_indices(self):
        return tuple(i for i, g in enumerate(self.metric) if g < 0)

    def to_json(self):
        return {
            "r": self.r,
            "s": self.s,
            "dim": self.dim_v,
            "metric": list(self.metric),
            "generators": [g.to_json() for g in self.generators],
            "spec": self.spec.to_json(),
        }

    @staticmethod
    def from_json(obj):
        return CliffordModule(
            Signature(obj["r"], obj["s"]),
            obj["dim"],
            tuple(SignedPerm.from_json(g) for g in obj["generators"]),
            tuple(obj["metric"]),
            ModuleSpec.from_json(obj["spec"]),
        )

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)


# --------------------------------------------------------------------------
# Pauli-word search
# --------------------------------------------------------------------------

def _word_anticommute(w1, w2):
    x1, z1 = w1
    x2, z2 = w2
    return bin((x1 & z2) ^ (z1 & x2)).count("1") % 2 == 1


def _word_square_sign(w):
    x, z = w
    return -1 if bin(x & z).count("1") % 2 else 1


def _word_to_signedperm(w, n):
    x, z = w
    size = 1 << n
    perm = [b ^ x for b in range(size)]
    signs = [-1 if bin(b & z).count("1") % 2 else 1 for b in range(size)]
    return SignedPerm(tuple(perm), tuple(signs))


class _ParityUF:
    """Union-find over basis indices with +-1 relation to the root."""

    def __init__(self, size):
        self.parent = list(range(size))
        self.rel = [0] * size  # parity bit: value differs from root iff 1

    def find2(self, i):
        """Root and parity of i, with path compression."""
        path = []
        p = 0
        while self.parent[i] != i:
            path.append(i)
            p ^= self.rel[i]
            i = self.parent[i]
        # compress: re-walk accumulating parity from the node to the root
        acc = p
        for j in path:
            self.parent[j] = i
            old = self.rel[j]
            self.rel[j] = acc
            acc ^= old
        return i, p

    def union(self, i, j, flip):
        """Impose value[j] = value[i] if flip == 0 else -value[i]."""
        ri, pi = self.find2(i)
        rj, pj = self.find2(j)
        if ri == rj:
            return (pi ^ pj) == flip
        self.parent[rj] = ri
        self.rel[rj] = pi ^ flip ^ pj
        return True


def _metric_components(words, square_signs, n):
    """Solve the diagonal-metric constraints.

    Skewness of J w.r.t. diag(G) forces G[pi(b)] = -eps * G[b] where
    eps = J^2 sign, independent of the signs of J.  Returns the union-find
    structure or None when inconsistent.
    """
    size = 1 << n
    uf = _ParityUF(size)
    for (x, _z), eps in zip(words, square_signs):
        flip = 0 if eps < 0 else 1
        for b in range(size):
            if not uf.union(b, b ^ x, flip):
                return None
    return uf


def _solve_metric(words, square_signs, n, neutral):
    """A +-1 diagonal metric for the word system, or None.

    For s = 0 all entries can be chosen +1; for s > 0 component signs are
    chosen so the metric is neutral (required of any admissible form).
    """
    uf = _metric_components(words, square_signs, n)
    if uf is None:
        return None
    size = 1 << n
    comps = {}
    for b in range(size):
        root, p = uf.find2(b)
        comps.setdefault(root, []).append((b, p))
    roots = sorted(comps)
    if not neutral:
        if any(p for root in roots for _, p in comps[root]):
            return None
        return [1] * size
    balances = [sum(1 if p == 0 else -1 for _, p in comps[root]) for root in roots]
    # choose component orientations with zero total balance
    reach = {0: ()}
    for b in balances:
        nxt = {}
        for v, sel in reach.items():
            for sgn in (1, -1):
                nv = v + sgn * b
                if nv not in nxt:
                    nxt[nv] = sel + (sgn,)
        reach = nxt
    if 0 not in reach:
        return None
    sel = reach[0]
    metric = [0] * size
    for root, sgn in zip(roots, sel):
        for b, p in comps[root]:
            metric[b] = sgn * (-1 if p else 1)
    return metric


@lru_cache(maxsize=None)
def _search_words(r, s, n):
    """Find r+s anticommuting Pauli words with the required squares on
    2^n dimensions admitting a diagonal metric.  Deterministic DFS over
    lexicographically sorted candidates; returns (words, metric) or None."""
    pos_cands = []
    neg_cands = []
    for x in range(1 << n):
        for z in range(1 << n):
            w = (x, z)
            if _word_square_sign(w) < 0:
                pos_cands.append(w)
            elif x != 0:  # diagonal words cannot be skew w.r.t. any metric
                neg_cands.append(w)
    pos_cands.sort()
    neg_cands.sort()
    chosen = []
    squares = []

    def dfs(k):
        if k == r + s:
            metric = _solve_metric(tuple(chosen), tuple(squares), n, neutral=(s > 0))
            return metric
        cands = pos_cands if k < r else neg_cands
        lo = 0
        if k > 0 and (k < r) == (k - 1 < r):
            lo = bisect_right(cands, chosen[-1])  # same-type generators ordered
        for idx in range(lo, len(cands)):
            w = cands[idx]
            if all(_word_anticommute(w, c) for c in chosen):
                chosen.append(w)
                squares.append(-1 if k < r else 1)
                if _metric_components(tuple(chosen), tuple(squares), n) is not None:
                    res = dfs(k + 1)
                    if res is not None:
                        return res
                chosen.pop()
                squares.pop()
        return None

    metric = dfs(0)
    if metric is None:
        return None
    return tuple(chosen), tuple(metric)


def _order_metric_first(gens, metric, s):
    """Reorder the basis so all +1 metric entries come first (s > 0)."""
    if s == 0:
        return gens, metric
    order = sorted(range(len(metric)), key=lambda b: (0 if metric[b] > 0 else 1, b))
    gens = tuple(g.relabel(order) for g in gens)
    metric = tuple(metric[o] for o in order)
    return gens, metric


@lru_cache(maxsize=None)
def _canonical_minimal(r, s):
    """Minimal admissible module data (generators, metric) for Cl(r,s),
    scalar product of + sign, irreducible type '+' where two types exist."""
    target = _min_dim(r, s)
    if (r, s) in _DIM_TABLE:
        n = target.bit_length() - 1
        found = _search_words(r, s, n)
        if found is None:
            raise ConstructionError(f"no generator system found for ({r},{s})")
        words, metric = found
        gens = tuple(_word_to_signedperm(w, n) for w in words)
    else:
        rr, ss, _label = _reductions(r, s)[0]
        outer_sig = (r - rr, s - ss)
        og, om = _canonical_minimal(*outer_sig)
        ig, im = _canonical_minimal(rr, ss)
        gens, metric = _tensor_step(outer_sig, og, om, (rr, ss), ig, im)
    if gens[0].n != target:
        raise ConstructionError(
            f"construction for ({r},{s}) has dim {gens[0].n}, expected {target}")
    gens, metric = _order_metric_first(gens, metric, s)
    gens, metric = _normalize_type(r, s, gens, metric)
    mod = CliffordModule(Signature(r, s), gens[0].n, gens, metric,
                         minimal_spec(Signature(r, s)))
    report = verify_module_axioms(mod)
    if not report.ok:
        raise ConstructionError(f"axiom failure for ({r},{s}): {report.failures()}")
    return gens, metric


def _tensor_step(outer_sig, og, om, inner_sig, ig, im):
    """Periodicity step: outer is an (8,0), (0,8) or (4,4) module.

    The volume element w of the outer module squares to +Id, anticommutes
    with every outer generator and satisfies w^T G = G w; hence
    {U_i (x) Id} united with {w (x) W_k} generates Cl(r_o+r_i, s_o+s_i) on
    the tensor product, admissible for G_outer (x) G_inner.
    """
    ro, so = outer_sig
    ri, si = inner_sig
    dim_o = og[0].n
    dim_i = ig[0].n
    omega = og[0]
    for u in og[1:]:
        omega = omega @ u
    ident_i = SignedPerm.identity(dim_i)
    new_pos = [u.kron(ident_i) for u in og[:ro]] + [omega.kron(w) for w in ig[:ri]]
    new_neg = [u.kron(ident_i) for u in og[ro:]] + [omega.kron(w) for w in ig[ri:]]
    gens = tuple(new_pos + new_neg)
    metric = tuple(a * b for a in om for b in im)
    return gens, metric


def _normalize_type(r, s, gens, metric):
    """On two-type signatures make the volume element act as +Id."""
    if not has_two_minimal_types((r, s)):
        return gens, metric
    omega = gens[0]
    for g in gens[1:]:
        omega = omega @ g
    sc = omega.scalar()
    if sc is None:
        raise ConstructionError(f"volume element not scalar on ({r},{s})")
    if sc < 0:
        gens = (-gens[0],) + gens[1:]
    return gens, metric


def build_minimal_module(sig, variant=None):
    """Construct a minimal admissible Cl(r,s)-module.

    ``variant.product_sign`` = -1 returns the same generators with the
    metric negated; ``variant.irreducible_type`` selects between the two
    inequivalent minimal modules where they exist (volume element +-Id).
    """
    sig = _sig(sig)
    if variant is None:
        variant = default_variant(sig)
    two = has_two_minimal_types((sig.r, sig.s))
    if two and variant.irreducible_type == "unique":
        raise ValueError(
            f"Cl({sig.r},{sig.s}) has two inequivalent minimal modules; "
            "pass irreducible_type '+' or '-'")
    if not two and variant.irreducible_type != "unique":
        raise ValueError(
            f"Cl({sig.r},{sig.s}) has a unique minimal module type; "
            "pass irreducible_type 'unique'")
    gens, metric = _canonical_minimal(sig.r, sig.s)
    if variant.irreducible_type == "-":
        gens = (-gens[0],) + gens[1:]
    if variant.product_sign < 0:
        metric = tuple(-g for g in metric)
    return CliffordModule(sig, gens[0].n, gens, metric,
                          ModuleSpec(sig, ((variant, 1),)))


def build_module(spec):
    """Direct sum of minimal modules: block-diagonal generators, metric
    concatenated in summand order."""
    if not isinstance(spec, ModuleSpec):
        raise TypeError("build_module expects a ModuleSpec")
    parts = []
    for variant, count in spec.summands:
        for _ in range(count):
            parts.append(build_minimal_module(spec.signature, variant))
    if len(parts) == 1:
        mod = parts[0]
        return CliffordModule(spec.signature, mod.dim_v, mod.generators,
                              mod.metric, spec)
    gens = list(parts[0].generators)
    metric = list(parts[0].metric)
    for part in parts[1:]:
        gens = [a.direct_sum(b) for a, b in zip(gens, part.generators)]
        metric.extend(part.metric)
    return CliffordModule(spec.signature, len(metric), tuple(gens),
                          tuple(metric), spec)


# --------------------------------------------------------------------------
# Verification
# --------------------------------------------------------------------------

@dataclass
class VerificationReport:
    checks: dict  # name -> (bool, witness or None)

    @property
    def ok(self):
        return all(passed for passed, _ in self.checks.values())

    def failures(self):
        return {k: w for k, (p, w) in self.checks.items() if not p}

    def __bool__(self):
        return self.ok


def verify_module_axioms(mod):
    """Exact check of all module axioms; returns a per-axiom report.

    Checked: generator Clifford relations, skew-symmetry w.r.t. the
    metric, the compatibility relation <J_z X, J_z Y> = <z,z><X,Y> on
    basis vectors, the integral-basis conditions (no fixed basis vector,
    at most one generator connecting any ordered basis pair), and the
    metric signature constraint (neutral for s > 0, definite for s = 0).
    """
    checks = {}
    gens = mod.generators
    metric = mod.metric
    r, s = mod.r, mod.s
    m = mod.dim_v

    ok, wit = True, None
    if len(gens) != r + s:
        ok, wit = False, ("generator count", len(gens))
    for g in gens:
        if g.n != m:
            ok, wit = False, ("generator size", g.n)
    if any(e not in (1, -1) for e in metric) or len(metric) != m:
        ok, wit = False, ("metric entries",)
    checks["well_formed"] = (ok, wit)
    if not ok:
        return VerificationReport(checks)

    ok, wit = True, None
    for k, g in enumerate(gens):
        sq = (g @ g).scalar()
        if sq != mod.generator_square_sign(k):
            ok, wit = False, ("square", k, sq)
            break
    if ok:
        for k in range(len(gens)):
            for l in range(k + 1, len(gens)):
                if (gens[k] @ gens[l]) != -(gens[l] @ gens[k]):
                    ok, wit = False, ("anticommute", k, l)
                    break
            if not ok:
                break
    checks["clifford_relations"] = (ok, wit)

    # skewness: G[pi_k(i)] == -eps_k G[i] with eps_k = J_k^2 sign
    ok, wit = True, None
    for k, g in enumerate(gens):
        eps = mod.generator_square_sign(k)
        for i in range(m):
            j, _sgn = g.column(i)
            if metric[j] != -eps * metric[i]:
                ok, wit = False, (k, i, j)
                break
        if not ok:
            break
    checks["skew_symmetry"] = (ok, wit)

    # compatibility <J_k X_i, J_k X_j> = <Z_k,Z_k> <X_i, X_j>
    ok, wit = True, None
    for k, g in enumerate(gens):
        zk = 1 if k < r else -1
        for i in range(m):
            j, _sgn = g.column(i)
            if metric[j] != zk * metric[i]:
                ok, wit = False, (k, i)
                break
        if not ok:
            break
    checks["compatibility"] = (ok, wit)

    ok, wit = True, None
    for k, g in enumerate(gens):
        if g.has_fixed_index():
            ok, wit = False, ("fixed basis vector", k)
            break
    checks["integral_basis"] = (ok, wit)

    ok, wit = True, None
    seen = {}
    for k, g in enumerate(gens):
        for i in range(m):
            j, _sgn = g.column(i)
            if (i, j) in seen:
                ok, wit = False, ((i, j), seen[(i, j)], k)
                break
            seen[(i, j)] = k
        if not ok:
            break
    checks["unique_generator_per_pair"] = (ok, wit)

    if s > 0:
        plus = sum(1 for e in metric if e > 0)
        ok = plus * 2 == m
        checks["metric_signature"] = (ok, None if ok else ("plus count", plus))
    else:
        ok = len(set(metric)) == 1
        checks["metric_signature"] = (ok, None if ok else ("mixed definite metric",))

    return VerificationReport(checks)


# --------------------------------------------------------------------------
# Admissible form recovery (diagnostic)
# --------------------------------------------------------------------------

def find_admissible_form(generators, sig):
    """Solve G^T = G, J_k^T G + G J_k = 0 for a nondegenerate form.

    For signed-permutation generators with J^2 = +-Id the solution space
    of *diagonal* forms is computed exactly by parity union-find; a
    +-1-diagonal representative is returned (neutral when s > 0 and
    possible).  Other inputs fall back to a dense rational nullspace
    computation whose nondegenerate solutions are congruence-diagonalized;
    the +-1 diagonal is returned.  Returns NOT_FOUND when every solution
    is degenerate.
    """
    sig = _sig(sig)
    gens = list(generators)
    if not gens:
        return NOT_FOUND
    if all(isinstance(g, SignedPerm) for g in gens):
        squares = []
        signed_ok = True
        for g in gens:
            sq = (g @ g).scalar()
            if sq is None:
                signed_ok = False
                break
            squares.append(sq)
        if signed_ok:
            n_count = gens[0].n
            nbits = n_count.bit_length() - 1
            if (1 << nbits) == n_count:
                # reuse the word-free union-find on explicit permutations
                uf = _ParityUF(n_count)
                for g, eps in zip(gens, squares):
                    flip = 0 if eps < 0 else 1
                    for i in range(n_count):
                        j, _ = g.column(i)
                        if not uf.union(i, j, flip):
                            return NOT_FOUND
                return _uf_metric(uf, n_count, sig)
            uf = _ParityUF(n_count)
            for g, eps in zip(gens, squares):
                flip = 0 if eps < 0 else 1
                for i in range(n_count):
                    j, _ = g.column(i)
                    if not uf.union(i, j, flip):
                        return NOT_FOUND
            return _uf_metric(uf, n_count, sig)
    return _dense_admissible_form(gens, sig)


def _uf_metric(uf, size, sig):
    comps = {}
    for b in range(size):
        root, p = uf.find2(b)
        comps.setdefault(root, []).append((b, p))
    roots = sorted(comps)
    balances = [sum(1 if p == 0 else -1 for _, p in comps[root]) for root in roots]
    sel = None
    if sig.s > 0:
        reach = {0: ()}
        for b in balances:
            nxt = {}
            for v, chosen in reach.items():
                for sgn in (1, -1):
                    nv = v + sgn * b
                    if nv not in nxt:
                        nxt[nv] = chosen + (sgn,)
            reach = nxt
        sel = reach.get(0)
    if sel is None:
        sel = (1,) * len(roots)
    metric = [0] * size
    for root, sgn in zip(roots, sel):
        for b, p in comps[root]:
            metric[b] = sgn * (-1 if p else 1)
    return tuple(metric)


def _dense_admissible_form(gens, sig):
    """Rational nullspace of the skewness constraints; small inputs only."""
    mats = [g.to_array().tolist() if isinstance(g, SignedPerm) else
            [list(row) for row in g] for g in gens]
    n = len(mats[0])
    idx = {}
    for i in range(n):
        for j in range(i, n):
            idx[(i, j)] = len(idx)
    nvars = len(idx)

    def gvar(i, j):
        return idx[(i, j)] if i <= j else idx[(j, i)]

    rows = []
    for J in mats:
        # (J^T G + G J)_{ab} = sum_c J_{ca} G_{cb} + G_{ac} J_{cb} = 0
        for a in range(n):
            for b in range(a, n):
                row = [Fraction(0)] * nvars
                for c in range(n):
                    if J[c][a]:
                        row[gvar(c, b)] += Fraction(J[c][a])
                    if J[c][b]:
                        row[gvar(a, c)] += Fraction(J[c][b])
                if any(row):
                    rows.append(row)
    basis = _nullspace(rows, nvars)
    if not basis:
        return NOT_FOUND
    # try basis vectors, then small combinations, for a nondegenerate G
    combos = [tuple(1 if t == k else 0 for t in range(len(basis)))
              for k in range(len(basis))]
    if len(basis) > 1:
        combos += [tuple(1 for _ in basis), tuple((-1) ** t for t in range(len(basis)))]
        combos += [tuple((t + k) % 3 - 1 for t in range(len(basis)))
                   for k in range(3)]
    for combo in combos:
        vec = [sum(Fraction(c) * basis[k][t] for k, c in enumerate(combo))
               for t in range(nvars)]
        G = [[Fraction(0)] * n for _ in range(n)]
        for (i, j), t in idx.items():
            G[i][j] = vec[t]
            G[j][i] = vec[t]
        signature = _congruence_signature(G)
        if signature is not None:
            plus, minus = signature
            if plus + minus == n:
                return tuple([1] * plus + [-1] * minus)
    return NOT_FOUND


def _nullspace(rows, nvars):
    """Nullspace basis of a rational matrix (rows of length nvars)."""
    mat = [row[:] for row in rows]
    pivots = []
    rank = 0
    for col in range(nvars):
        piv = None
        for rr in range(rank, len(mat)):
            if mat[rr][col] != 0:
                piv = rr
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        pv = mat[rank][col]
        mat[rank] = [x / pv for x in mat[rank]]
        for rr in range(len(mat)):
            if rr != rank and mat[rr][col] != 0:
                f = mat[rr][col]
                mat[rr] = [a - f * b for a, b in zip(mat[rr], mat[rank])]
        pivots.append(col)
        rank += 1
    free = [c for c in range(nvars) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * nvars
        vec[fc] = Fraction(1)
        for rr, pc in enumerate(pivots):
            vec[pc] = -mat[rr][fc]
        basis.append(vec)
    return basis


def _congruence_signature(G):
    """Signature (n_plus, n_minus) of a rational symmetric matrix by
    congruence reduction; None if the matrix is degenerate."""
    n = len(G)
    A = [row[:] for row in G]
    plus = minus = 0
    live = list(range(n))
    while live:
        # find nonzero diagonal among live indices
        piv = None
        for i in live:
            if A[i][i] != 0:
                piv = i
                break
        if piv is None:
            # need an off-diagonal nonzero; if none the restriction is zero
            found = None
            for i in live:
                for j in live:
                    if i != j and A[i][j] != 0:
                        found = (i, j)
                        break
                if found:
                    break
            if not found:
                return None  # degenerate
            i, j = found
            for c in range(n):
                A[i][c] += A[j][c]
            for rr in range(n):
                A[rr][i] += A[rr][j]
            continue
        d = A[piv][piv]
        if d > 0:
            plus += 1
        else:
            minus += 1
        live.remove(piv)
        for i in live:
            f = A[i][piv] / d
            if f:
                for c in range(n):
                    A[i][c] -= f * A[piv][c]
                for rr in range(n):
                    A[rr][i] -= f * A[rr][piv]
    return plus, minus
