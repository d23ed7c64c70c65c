"""Exact linear algebra over a ``FieldSpec`` (raw values, dense rows)."""

from __future__ import annotations

from collections.abc import Iterable, Sequence

from .field import FieldSpec


class RowEchelon:
    """Incrementally maintained reduced row echelon form.

    Rows are added one at a time; each pivot is normalized to 1 and cleared
    from every other stored row, so the stored rows always form an RREF basis
    of the span of everything added so far.
    """

    def __init__(self, field: FieldSpec, ncols: int):
        self.field = field
        self.ncols = ncols
        self.rows: list[list] = []
        self.pivots: list[int] = []
        self._seen: set = set()

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, row: Sequence) -> list:
        """Return ``row`` minus its projection onto the current span."""
        F = self.field
        r = list(row)
        for prow, pc in zip(self.rows, self.pivots):
            c = r[pc]
            if not F.is_zero(c):
                for k in range(self.ncols):
                    if not F.is_zero(prow[k]):
                        r[k] = F.sub(r[k], F.mul(c, prow[k]))
        return r

    def add(self, row: Sequence) -> bool:
        """Add ``row``; return True if it enlarged the span."""
        key = tuple(row)
        if key in self._seen:
            return False
        self._seen.add(key)
        F = self.field
        r = self.reduce(row)
        pc = next((k for k in range(self.ncols) if not F.is_zero(r[k])), None)
        if pc is None:
            return False
        inv = F.inv(r[pc])
        r = [F.mul(x, inv) for x in r]
        for prow in self.rows:
            c = prow[pc]
            if not F.is_zero(c):
                for k in range(self.ncols):
                    if not F.is_zero(r[k]):
                        prow[k] = F.sub(prow[k], F.mul(c, r[k]))
        self.rows.append(r)
        self.pivots.append(pc)
        return True

    def contains(self, row: Sequence) -> bool:
        F = self.field
        return all(F.is_zero(x) for x in self.reduce(row))

    def nullspace(self) -> list[list]:
        """Basis of {v : row . v = 0 for every stored row}."""
        F = self.field
        pivset = set(self.pivots)
        basis = []
        for free in range(self.ncols):
            if free in pivset:
                continue
            v = [F.zero] * self.ncols
            v[free] = F.one
            for prow, pc in zip(self.rows, self.pivots):
                if not F.is_zero(prow[free]):
                    v[pc] = F.neg(prow[free])
            basis.append(v)
        return basis


def rank(field: FieldSpec, rows: Iterable[Sequence], ncols: int) -> int:
    ech = RowEchelon(field, ncols)
    for r in rows:
        ech.add(r)
    return ech.rank


def solve(field: FieldSpec, columns: Sequence[Sequence], target: Sequence):
    """Coefficients ``x`` with ``sum x_j * columns[j] == target``, or None.

    ``columns`` must be linearly independent for the answer to be unique.
    """
    F = field
    n = len(columns)
    m = len(target)
    # augmented matrix, one row per coordinate
    aug = [[columns[j][i] for j in range(n)] + [target[i]] for i in range(m)]
    piv_cols = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if not F.is_zero(aug[i][c])), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        inv = F.inv(aug[r][c])
        aug[r] = [F.mul(x, inv) for x in aug[r]]
        for i in range(m):
            if i != r and not F.is_zero(aug[i][c]):
                f = aug[i][c]
                aug[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
    if any(not F.is_zero(aug[i][n]) for i in range(r, m)):
        return None
    x = [F.zero] * n
    for i, c in enumerate(piv_cols):
        x[c] = aug[i][n]
    return x


def invert(field: FieldSpec, matrix: Sequence[Sequence]):
    """Inverse of a square matrix given as rows, or None if singular."""
    F = field
    n = len(matrix)
    cols_of_identity = []
    for j in range(n):
        e = [F.zero] * n
        e[j] = F.one
        cols_of_identity.append(e)
    # columns of the input
    cols = [[matrix[i][j] for i in range(n)] for j in range(n)]
    if rank(F, cols, n) < n:
        return None
    inv_cols = [solve(F, cols, e) for e in cols_of_identity]
    return [[inv_cols[j][i] for j in range(n)] for i in range(n)]
