"""Exact signed permutation matrices.

A signed permutation matrix has exactly one nonzero entry per row and
column, equal to +-1.  They are closed under products, transposes,
Kronecker products and direct sums, and all of that is exact integer
arithmetic, which is what the module constructions downstream rely on.

Convention: ``M`` maps basis vector ``e_i`` to ``signs[i] * e_{perm[i]}``,
i.e. the matrix has entry ``signs[i]`` at position ``(perm[i], i)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class SignedPerm:
    perm: tuple
    signs: tuple

    def __post_init__(self):
        n = len(self.perm)
        if len(self.signs) != n:
            raise ValueError("perm/signs length mismatch")
        if sorted(self.perm) != list(range(n)):
            raise ValueError("perm is not a permutation of 0..n-1")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +-1")

    @property
    def n(self):
        return len(self.perm)

    @staticmethod
    def identity(n):
        return SignedPerm(tuple(range(n)), (1,) * n)

    def __matmul__(self, other):
        """Matrix product self @ other (apply other first)."""
        if self.n != other.n:
            raise ValueError("size mismatch")
        perm = tuple(self.perm[p] for p in other.perm)
        signs = tuple(other.signs[i] * self.signs[other.perm[i]]
                      for i in range(self.n))
        return SignedPerm(perm, signs)

    def __neg__(self):
        return SignedPerm(self.perm, tuple(-s for s in self.signs))

    @property
    def T(self):
        """Transpose (= inverse up to signs; exact)."""
        n = self.n
        perm = [0] * n
        signs = [0] * n
        for i in range(n):
            perm[self.perm[i]] = i
            signs[self.perm[i]] = self.signs[i]
        return SignedPerm(tuple(perm), tuple(signs))

    def apply(self, vec):
        """Apply to a coefficient vector (any scalar type), exactly."""
        if len(vec) != self.n:
            raise ValueError("size mismatch")
        out = [0] * self.n
        for i, v in enumerate(vec):
            out[self.perm[i]] = self.signs[i] * v
        return out

    def column(self, i):
        """Image of basis vector i as (index, sign)."""
        return self.perm[i], self.signs[i]

    def kron(self, other):
        """Kronecker product; index convention (i, j) -> i * other.n + j."""
        m = other.n
        perm = []
        signs = []
        for i in range(self.n):
            for j in range(m):
                perm.append(self.perm[i] * m + other.perm[j])
                signs.append(self.signs[i] * other.signs[j])
        return SignedPerm(tuple(perm), tuple(signs))

    def direct_sum(self, other):
        off = self.n
        perm = self.perm + tuple(p + off for p in other.perm)
        signs = self.signs + other.signs
        return SignedPerm(perm, signs)

    def relabel(self, order):
        """Conjugate by the basis reordering e'_t = e_{order[t]}."""
        n = self.n
        if sorted(order) != list(range(n)):
            raise ValueError("order is not a permutation")
        inv = [0] * n
        for t, o in enumerate(order):
            inv[o] = t
        perm = tuple(inv[self.perm[o]] for o in order)
        signs = tuple(self.signs[o] for o in order)
        return SignedPerm(perm, signs)

    def scalar(self):
        """Return +-1 if this is +-identity, else None."""
        if any(p != i for i, p in enumerate(self.perm)):
            return None
        s0 = self.signs[0]
        return s0 if all(s == s0 for s in self.signs) else None

    def has_fixed_index(self):
        return any(p == i for i, p in enumerate(self.perm))

    def anticommutes_with(self, other):
        return (self @ other) == -(other @ self)

    def to_array(self, dtype=np.int64):
        m = np.zeros((self.n, self.n), dtype=dtype)
        for i in range(self.n):
            m[self.perm[i], i] = self.signs[i]
        return m

    def to_json(self):
        return {"perm": list(self.perm), "signs": list(self.signs)}

    @staticmethod
    def from_json(obj):
        return SignedPerm(tuple(obj["perm"]), tuple(obj["signs"]))
