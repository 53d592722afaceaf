"""Jacobian package of a special complete intersection: phi, its adjugate and psi = det phi."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .poly import Poly, PolyRing


def determinant(mat: Sequence[Sequence], ring: PolyRing):
    """Laplace expansion along the first row; fine for the n <= 4 matrices used here."""
    n = len(mat)
    if n == 0:
        return ring.one
    if n == 1:
        return mat[0][0]
    if n == 2:
        return mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]
    total = ring.zero
    for j in range(n):
        if not mat[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in mat[1:]]
        term = mat[0][j] * determinant(minor, ring)
        total = total + term if j % 2 == 0 else total - term
    return total


def adjugate(mat: Sequence[Sequence], ring: PolyRing) -> list[list]:
    """Cofactor transpose: ``adj[i][j] = (-1)^(i+j) det(mat without row j, column i)``."""
    n = len(mat)
    if n == 1:
        return [[ring.one]]
    adj = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:i] + row[i + 1:] for k, row in enumerate(mat) if k != j]
            d = determinant([list(r) for r in minor], ring)
            adj[i][j] = d if (i + j) % 2 == 0 else -d
    return adj


def matmul(a, b, zero):
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = zero
            for l in range(k):
                acc = acc + a[i][l] * b[l][j]
            row.append(acc)
        out.append(row)
    return out


def matvec(a, v, zero):
    return [sum((a[i][j] * v[j] for j in range(len(v))), zero) for i in range(len(a))]


@dataclass(frozen=True)
class JacobianData:
    phi: tuple[tuple[Poly, ...], ...]
    phi_adj: tuple[tuple[Poly, ...], ...]
    psi: Poly

    @property
    def n(self) -> int:
        return len(self.phi)

    def identity_holds(self) -> bool:
        ring = self.psi.ring
        n = self.n
        left = matmul(self.phi_adj, self.phi, ring.zero)
        right = matmul(self.phi, self.phi_adj, ring.zero)
        for i in range(n):
            for j in range(n):
                want = self.psi if i == j else ring.zero
                if left[i][j] != want or right[i][j] != want:
                    return False
        return True

    def evaluate(self, values, one):
        """Evaluate phi, phi' and psi at ``values`` (e.g. an arc); returns three nested lists."""
        ev = lambda p: p.evaluate(values, one)
        return (
            [[ev(p) for p in row] for row in self.phi],
            [[ev(p) for p in row] for row in self.phi_adj],
            ev(self.psi),
        )


def jacobian_package(X) -> JacobianData:
    """phi = (df_i/dy_j), its adjugate and psi = det phi, for a special complete intersection ``X``.

    The Cramer identity phi' phi = phi phi' = psi I is checked before returning.
    """
    ring = X.ring
    phi = [[f.diff(y) for y in X.y_vars] for f in X.equations]
    adj = adjugate(phi, ring)
    psi = determinant(phi, ring)
    data = JacobianData(tuple(map(tuple, phi)), tuple(map(tuple, adj)), psi)
    if not data.identity_holds():
        raise AssertionError("adjugate identity failed")
    return data
