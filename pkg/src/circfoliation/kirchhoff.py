"""Exact integer linear algebra and the matrix-tree oracle."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .model import Multigraph


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0 or len(self.entries) != self.rows * self.cols:
            raise ValueError("matrix dimensions do not match the entry count")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> IntMatrix:
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, tuple(int(x) for r in rows for x in r))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def delete(self, index: int) -> IntMatrix:
        """Drop row ``index`` and column ``index``."""
        rows = [
            [x for j, x in enumerate(row) if j != index]
            for i, row in enumerate(self.to_rows()) if i != index
        ]
        if not rows:
            return IntMatrix(0, 0, ())
        return IntMatrix.from_rows(rows)


def laplacian(g: Multigraph) -> IntMatrix:
    n = g.vertex_count
    rows = [[0] * n for _ in range(n)]
    for u, v, mult in g.edges:
        rows[u][v] -= mult
        rows[v][u] -= mult
        rows[u][u] += mult
        rows[v][v] += mult
    return IntMatrix.from_rows(rows)


def det_fraction_free(mat: IntMatrix) -> int:
    """Exact determinant by Bareiss elimination with row pivoting."""
    if mat.rows != mat.cols:
        raise ValueError(f"determinant of a {mat.rows}x{mat.cols} matrix")
    n = mat.rows
    if n == 0:
        return 1
    a = mat.to_rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        row_k = a[k]
        for i in range(k + 1, n):
            row_i = a[i]
            lead = row_i[k]
            if lead == 0:
                # (pivot * x) / prev is still exact
                for j in range(k + 1, n):
                    q, r = divmod(pivot * row_i[j], prev)
                    assert r == 0, "inexact Bareiss division"
                    row_i[j] = q
            else:
                for j in range(k + 1, n):
                    q, r = divmod(pivot * row_i[j] - lead * row_k[j], prev)
                    assert r == 0, "inexact Bareiss division"
                    row_i[j] = q
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def tau_oracle(g: Multigraph, delete: int = 0) -> int:
    """Number of spanning trees: a principal cofactor of the Laplacian."""
    if g.vertex_count == 1:
        return 1
    return det_fraction_free(laplacian(g).delete(delete))
