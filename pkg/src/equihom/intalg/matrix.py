"""Dense integer matrices and the Smith normal form.

Entries are Python ints, so nothing ever overflows.  Matrices are immutable;
the elimination routines work on private list-of-lists copies.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class IntMatrix:
    rows: tuple[tuple[int, ...], ...]
    nrows: int
    ncols: int

    def __post_init__(self) -> None:
        if len(self.rows) != self.nrows:
            raise ValueError("row count does not match nrows")
        for r in self.rows:
            if len(r) != self.ncols:
                raise ValueError("entry grid is not rectangular")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], ncols: int | None = None) -> IntMatrix:
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        return cls(rows, len(rows), ncols)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[int]], nrows: int) -> IntMatrix:
        return cls.from_rows(
            [[c[i] for c in cols] for i in range(nrows)], ncols=len(cols)
        )

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> IntMatrix:
        return cls(tuple((0,) * ncols for _ in range(nrows)), nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(
            tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n, n
        )

    @classmethod
    def diagonal(cls, entries: Sequence[int], nrows: int | None = None,
                 ncols: int | None = None) -> IntMatrix:
        nrows = len(entries) if nrows is None else nrows
        ncols = len(entries) if ncols is None else ncols
        out = [[0] * ncols for _ in range(nrows)]
        for i, e in enumerate(entries):
            out[i][i] = e
        return cls.from_rows(out, ncols)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.ncols)]

    def diagonal_entries(self) -> list[int]:
        return [self.rows[i][i] for i in range(min(self.nrows, self.ncols))]

    def transpose(self) -> IntMatrix:
        return IntMatrix.from_rows(
            [self.column(j) for j in range(self.ncols)], self.nrows
        )

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.columns()
        return IntMatrix.from_rows(
            [[sum(a * b for a, b in zip(r, c) if a) for c in cols] for r in self.rows],
            other.ncols,
        )

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        if len(vec) != self.ncols:
            raise ValueError("vector length does not match column count")
        return tuple(sum(a * b for a, b in zip(r, vec) if a) for r in self.rows)

    def __add__(self, other: IntMatrix) -> IntMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix.from_rows(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
            self.ncols,
        )

    def __neg__(self) -> IntMatrix:
        return IntMatrix.from_rows([[-a for a in r] for r in self.rows], self.ncols)

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        return self + (-other)

    def scale(self, k: int) -> IntMatrix:
        return IntMatrix.from_rows([[k * a for a in r] for r in self.rows], self.ncols)

    def hstack(self, other: IntMatrix) -> IntMatrix:
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch")
        return IntMatrix.from_rows(
            [r + s for r, s in zip(self.rows, other.rows)], self.ncols + other.ncols
        )

    def select_columns(self, idx: Sequence[int]) -> IntMatrix:
        return IntMatrix.from_rows([[r[j] for j in idx] for r in self.rows], len(idx))

    def select_rows(self, idx: Sequence[int]) -> IntMatrix:
        return IntMatrix.from_rows([self.rows[i] for i in idx], self.ncols)

    def is_zero(self) -> bool:
        return all(a == 0 for r in self.rows for a in r)

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def __repr__(self) -> str:
        return f"IntMatrix({self.to_lists()!r}, shape={self.shape})"


@dataclass(frozen=True)
class SmithDecomposition:
    """``u @ m @ v == d`` with ``u_inv @ u == 1`` and ``v @ v_inv == 1``."""

    d: IntMatrix
    u: IntMatrix
    v: IntMatrix
    u_inv: IntMatrix
    v_inv: IntMatrix

    @property
    def invariants(self) -> list[int]:
        return self.d.diagonal_entries()

    @property
    def rank(self) -> int:
        return sum(1 for x in self.invariants if x != 0)


def _find_pivot(a: list[list[int]], t: int) -> tuple[int, int] | None:
    best = None
    best_abs = 0
    for i in range(t, len(a)):
        row = a[i]
        for j in range(t, len(row)):
            x = row[j]
            if x and (best is None or abs(x) < best_abs):
                best, best_abs = (i, j), abs(x)
                if best_abs == 1:
                    return best
    return best


def smith_decomposition(m: IntMatrix) -> SmithDecomposition:
    """Smith normal form with both transforms and their inverses.

    Pivot rule: smallest nonzero absolute value in the active block, ties
    broken row-major.  The diagonal is nonnegative and forms a divisibility
    chain, zeros last.
    """
    nr, nc = m.shape
    a = [list(r) for r in m.rows]
    u = [[int(i == j) for j in range(nr)] for i in range(nr)]
    ui = [[int(i == j) for j in range(nr)] for i in range(nr)]
    # v and v_inv are kept transposed so column operations become row operations
    vt = [[int(i == j) for j in range(nc)] for i in range(nc)]
    vit = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def row_addmul(dst: int, src: int, q: int) -> None:
        # row_dst += q * row_src on a and u; u_inv gets col_src -= q * col_dst
        ra, rs = a[dst], a[src]
        for k in range(nc):
            if rs[k]:
                ra[k] += q * rs[k]
        ud, us = u[dst], u[src]
        for k in range(nr):
            if us[k]:
                ud[k] += q * us[k]
        for row in ui:
            if row[dst]:
                row[src] -= q * row[dst]

    def col_addmul(dst: int, src: int, q: int) -> None:
        # col_dst += q * col_src on a and v; v_inv gets row_src -= q * row_dst
        for row in a:
            if row[src]:
                row[dst] += q * row[src]
        vd, vs = vt[dst], vt[src]
        for k in range(nc):
            if vs[k]:
                vd[k] += q * vs[k]
        for row in vit:
            if row[dst]:
                row[src] -= q * row[dst]

    def row_swap(i: int, j: int) -> None:
        if i != j:
            a[i], a[j] = a[j], a[i]
            u[i], u[j] = u[j], u[i]
            for row in ui:
                row[i], row[j] = row[j], row[i]

    def col_swap(i: int, j: int) -> None:
        if i != j:
            for row in a:
                row[i], row[j] = row[j], row[i]
            vt[i], vt[j] = vt[j], vt[i]
            for row in vit:
                row[i], row[j] = row[j], row[i]

    t = 0
    while t < min(nr, nc):
        piv = _find_pivot(a, t)
        if piv is None:
            break
        row_swap(t, piv[0])
        col_swap(t, piv[1])
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, nr):
                if a[i][t]:
                    row_addmul(i, t, -(a[i][t] // p))
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, nc):
                if a[t][j]:
                    col_addmul(j, t, -(a[t][j] // p))
                    if a[t][j]:
                        dirty = True
            if dirty:
                piv = _find_pivot(a, t)
                row_swap(t, piv[0])
                col_swap(t, piv[1])
                continue
            bad = next(
                (i for i in range(t + 1, nr)
                 if any(a[i][j] % p for j in range(t + 1, nc))),
                None,
            )
            if bad is None:
                break
            row_addmul(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
            for row in ui:
                row[t] = -row[t]
        t += 1

    return SmithDecomposition(
        d=IntMatrix.from_rows(a, nc),
        u=IntMatrix.from_rows(u, nr),
        v=IntMatrix.from_rows(vt, nc).transpose(),
        u_inv=IntMatrix.from_rows(ui, nr),
        v_inv=IntMatrix.from_rows(vit, nc).transpose(),
    )


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(d, u, v)`` with ``u @ m @ v == d`` and ``u``, ``v`` unimodular."""
    s = smith_decomposition(m)
    return s.d, s.u, s.v


def invariant_factors(m: IntMatrix) -> list[int]:
    return [x for x in smith_decomposition(m).invariants if x != 0]


def determinant(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = m.nrows
    if n != m.ncols:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    a = [list(r) for r in m.rows]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def kernel_basis(m: IntMatrix) -> IntMatrix:
    """Columns form a lattice basis of ``{x : m x = 0}``."""
    s = smith_decomposition(m)
    r = s.rank
    return s.v.select_columns(range(r, m.ncols))


def rank(m: IntMatrix) -> int:
    return smith_decomposition(m).rank
