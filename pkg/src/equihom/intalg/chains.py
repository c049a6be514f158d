"""Sparse chain complexes of cyclic-sum groups and their homology.

Large complexes are first shrunk by Gaussian elimination: whenever a
differential has an invertible entry between two generators of the same
order, the pair is cancelled and the complex replaced by a homotopy
equivalent smaller one.  The inclusion and projection chain maps of every
cancellation are recorded, so cycles and chain maps of the original complex
can still be transported to the small one.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Mapping, Sequence

from .groups import (
    FGAbelianGroup,
    GroupHom,
    NotAComplexError,
    NotChainMapError,
    NotInLatticeError,
    Subquotient,
    homology_from_orders,
)
from .matrix import IntMatrix

# column-major sparse matrix: column index -> {row index: entry}
Sparse = dict[int, dict[int, int]]
Vector = dict[int, int]


def _mod(x: int, t: int) -> int:
    return x % t if t else x


def _unit_inverse(x: int, t: int) -> int | None:
    if t == 0:
        return x if x in (1, -1) else None
    if t == 1 or gcd(x, t) != 1:
        return None
    return pow(x, -1, t)


def apply_sparse(m: Mapping[int, Mapping[int, int]], vec: Mapping[int, int],
                 orders: Sequence[int] | None = None) -> Vector:
    out: Vector = {}
    for j, x in vec.items():
        if not x:
            continue
        for i, a in m.get(j, {}).items():
            out[i] = out.get(i, 0) + a * x
    if orders is not None:
        out = {i: _mod(x, orders[i]) for i, x in out.items()}
    return {i: x for i, x in out.items() if x}


def compose_sparse(g: Mapping[int, Mapping[int, int]], f: Mapping[int, Mapping[int, int]],
                   orders: Sequence[int] | None = None) -> Sparse:
    """Column-major product ``g @ f``."""
    out: Sparse = {}
    for j, col in f.items():
        img = apply_sparse(g, col, orders)
        if img:
            out[j] = img
    return out


class ChainComplex:
    """Chain complex with generators of prescribed cyclic orders.

    ``orders[n][i]`` is the order of generator ``i`` in degree ``n`` (0 means
    infinite cyclic).  ``boundary[n]`` maps degree ``n`` to ``n - 1`` and is
    stored column-major; entries into a generator of order ``t`` are reduced
    mod ``t``.  Degrees run from 0 to ``top``.
    """

    def __init__(self, orders: Mapping[int, Sequence[int]],
                 boundary: Mapping[int, Sparse]):
        self.top = max(orders) if orders else -1
        self.orders = {n: list(orders.get(n, [])) for n in range(self.top + 1)}
        self.boundary: dict[int, Sparse] = {}
        for n in range(1, self.top + 1):
            tgt = self.orders[n - 1]
            cols = {}
            for j, col in boundary.get(n, {}).items():
                c = {i: _mod(a, tgt[i]) for i, a in col.items()}
                c = {i: a for i, a in c.items() if a}
                if c:
                    cols[j] = c
            self.boundary[n] = cols
        self._reduction: _Reduction | None = None

    def rank(self, n: int) -> int:
        return len(self.orders.get(n, []))

    def check(self) -> None:
        for n in range(2, self.top + 1):
            dd = compose_sparse(self.boundary[n - 1], self.boundary[n], self.orders[n - 2])
            if dd:
                raise NotAComplexError(f"d_{n - 1} d_{n} is nonzero")

    def dense_boundary(self, n: int) -> IntMatrix:
        src = self.orders.get(n, [])
        tgt = self.orders.get(n - 1, [])
        cols = self.boundary.get(n, {})
        return IntMatrix.from_columns(
            [[cols.get(j, {}).get(i, 0) for i in range(len(tgt))] for j in range(len(src))],
            len(tgt),
        )

    def reduction(self) -> _Reduction:
        if self._reduction is None:
            self._reduction = _Reduction(self)
        return self._reduction

    def homology(self, n: int, reduce: bool = True) -> ComplexHomology:
        """Homology at degree ``n``; requires ``n < top`` unless ``top`` is the true top."""
        if not 0 <= n <= self.top:
            return ComplexHomology(self, n, None)
        if reduce:
            return self.reduction().homology(n)
        q = homology_from_orders(
            self.dense_boundary(n + 1), self.dense_boundary(n),
            self.orders.get(n + 1, []), self.orders[n], self.orders.get(n - 1, []),
        )
        alive = list(range(self.rank(n)))
        return ComplexHomology(self, n, q, alive=alive)


class ComplexHomology:
    """H_n of a ChainComplex with access to cycles in original coordinates."""

    def __init__(self, complex_: ChainComplex, n: int, quotient: Subquotient | None,
                 alive: list[int] | None = None, reduction: _Reduction | None = None):
        self.complex = complex_
        self.degree = n
        self.quotient = quotient
        self.alive = alive or []
        self._reduction = reduction
        self.group = quotient.group if quotient is not None else FGAbelianGroup()

    def representative(self, k: int) -> Vector:
        col = self.quotient.representative(k)
        vec = {g: x for g, x in zip(self.alive, col) if x}
        if self._reduction is not None:
            vec = self._reduction.include(self.degree, vec)
        orders = self.complex.orders[self.degree]
        return {i: _mod(x, orders[i]) for i, x in vec.items() if _mod(x, orders[i])}

    def project(self, cycle: Mapping[int, int]) -> tuple[int, ...]:
        if self.quotient is None:
            return ()
        vec = dict(cycle)
        if self._reduction is not None:
            vec = self._reduction.project(self.degree, vec)
        dense = [vec.get(g, 0) for g in self.alive]
        extra = [g for g, x in vec.items() if x and g not in self._alive_set]
        if extra:
            raise NotInLatticeError("vector has components outside the reduced complex")
        return self.quotient.project(dense)

    @property
    def _alive_set(self) -> set[int]:
        s = getattr(self, "_alive_cache", None)
        if s is None:
            s = set(self.alive)
            self._alive_cache = s
        return s


def induced_map(f: Mapping[int, Mapping[int, int]], source: ComplexHomology,
                target: ComplexHomology) -> GroupHom:
    """Map on homology induced by the degree-n component ``f`` of a chain map."""
    cols = []
    orders = target.complex.orders.get(target.degree, [])
    for k in range(source.group.ngens):
        img = apply_sparse(f, source.representative(k), orders)
        try:
            cols.append(target.project(img))
        except NotInLatticeError as exc:
            raise NotChainMapError("chain map does not carry cycles to cycles") from exc
    return GroupHom.from_columns(source.group, target.group, cols)


def check_chain_map(f: Mapping[int, Sparse], source: ChainComplex,
                    target: ChainComplex, top: int | None = None) -> None:
    """Verify ``d f = f d`` in every degree up to ``top``."""
    top = min(source.top, target.top) if top is None else top
    for n in range(1, top + 1):
        lhs = compose_sparse(target.boundary[n], f.get(n, {}), target.orders[n - 1])
        rhs = compose_sparse(f.get(n - 1, {}), source.boundary[n], target.orders[n - 1])
        if lhs != rhs:
            raise NotChainMapError(f"chain map fails to commute with d_{n}")


@dataclass
class _Step:
    degree: int      # the pivot sits in d_degree
    row: int         # generator of degree - 1
    col: int         # generator of degree
    order: int
    inv: int         # inverse of the pivot entry
    beta: Vector     # row `row` of d_degree without the pivot
    gamma: Vector    # column `col` of d_degree without the pivot


class _Reduction:
    def __init__(self, complex_: ChainComplex):
        self.complex = complex_
        top = complex_.top
        self.top = top
        self.orders = complex_.orders
        self.alive = {n: set(range(len(complex_.orders[n]))) for n in range(top + 1)}
        self.cols: dict[int, Sparse] = {}
        self.rows: dict[int, Sparse] = {}
        for n in range(1, top + 1):
            cols = {j: dict(c) for j, c in complex_.boundary[n].items()}
            rows: Sparse = {}
            for j, c in cols.items():
                for i, a in c.items():
                    rows.setdefault(i, {})[j] = a
            self.cols[n], self.rows[n] = cols, rows
        self.steps: list[_Step] = []
        self.include_steps: dict[int, list[_Step]] = {n: [] for n in range(top + 1)}
        self.project_steps: dict[int, list[tuple[str, _Step]]] = {n: [] for n in range(top + 1)}
        self._run()

    def _pivot_in_column(self, n: int, j: int) -> int | None:
        t = self.orders[n][j]
        best = None
        best_len = 0
        for i, a in self.cols[n][j].items():
            if self.orders[n - 1][i] != t or _unit_inverse(a, t) is None:
                continue
            ln = len(self.rows[n][i])
            if best is None or ln < best_len or (ln == best_len and i < best):
                best, best_len = i, ln
        return best

    def _run(self) -> None:
        changed = True
        while changed:
            changed = False
            for n in range(self.top, 0, -1):
                cols = self.cols[n]
                for j in sorted(cols, key=lambda c: (len(cols[c]), c)):
                    if j not in cols:
                        continue
                    i = self._pivot_in_column(n, j)
                    if i is not None:
                        self._eliminate(n, i, j)
                        changed = True

    def _eliminate(self, n: int, i: int, j: int) -> None:
        cols, rows = self.cols[n], self.rows[n]
        tgt_orders = self.orders[n - 1]
        t = self.orders[n][j]
        inv = _unit_inverse(cols[j][i], t)
        beta = {c: a for c, a in rows[i].items() if c != j}
        gamma = {r: a for r, a in cols[j].items() if r != i}
        # delta <- delta - gamma inv beta
        for r, g in gamma.items():
            tr = tgt_orders[r]
            row_r = rows[r]
            for c, b in beta.items():
                val = _mod(row_r.get(c, 0) - g * inv * b, tr)
                if val:
                    row_r[c] = val
                    cols[c][r] = val
                elif c in row_r:
                    del row_r[c]
                    del cols[c][r]
        # drop row i and column j of d_n
        row_i, col_j = rows.pop(i), cols.pop(j)
        for c in row_i:
            if c != j:
                cols[c].pop(i, None)
        for r in col_j:
            if r != i:
                rows[r].pop(j, None)
        for c in [c for c, col in cols.items() if not col]:
            del cols[c]
        for r in [r for r, row in rows.items() if not row]:
            del rows[r]
        # generator j of degree n is a row of d_{n+1}
        if n + 1 <= self.top:
            rn, cn = self.rows[n + 1], self.cols[n + 1]
            for c in rn.pop(j, {}):
                cn[c].pop(j, None)
                if not cn[c]:
                    del cn[c]
        # generator i of degree n-1 is a column of d_{n-1}
        if n - 1 >= 1:
            rm, cm = self.rows[n - 1], self.cols[n - 1]
            for r in cm.pop(i, {}):
                rm[r].pop(i, None)
                if not rm[r]:
                    del rm[r]
        self.alive[n].discard(j)
        self.alive[n - 1].discard(i)
        step = _Step(n, i, j, t, inv, beta, gamma)
        self.steps.append(step)
        self.include_steps[n].append(step)
        self.project_steps[n - 1].append(("sub", step))
        self.project_steps[n].append(("drop", step))

    def include(self, n: int, vec: Mapping[int, int]) -> Vector:
        """Inclusion chain map from the reduced complex, degree ``n``."""
        out = dict(vec)
        orders = self.orders[n]
        for st in reversed(self.include_steps[n]):
            s = sum(b * out.get(c, 0) for c, b in st.beta.items())
            x = _mod(-st.inv * s, st.order)
            if x:
                out[st.col] = x
        return {g: _mod(x, orders[g]) for g, x in out.items() if _mod(x, orders[g])}

    def project(self, n: int, vec: Mapping[int, int]) -> Vector:
        """Projection chain map onto the reduced complex, degree ``n``."""
        out = dict(vec)
        orders = self.orders[n]
        for kind, st in self.project_steps[n]:
            if kind == "drop":
                out.pop(st.col, None)
                continue
            x = out.pop(st.row, 0)
            if x:
                k = st.inv * x
                for r, g in st.gamma.items():
                    out[r] = out.get(r, 0) - g * k
        return {g: _mod(x, orders[g]) for g, x in out.items() if _mod(x, orders[g])}

    def reduced_orders(self, n: int) -> list[int]:
        return [self.orders[n][g] for g in sorted(self.alive.get(n, ()))]

    def homology(self, n: int) -> ComplexHomology:
        mid = sorted(self.alive[n])
        low = sorted(self.alive[n - 1]) if n >= 1 else []
        high = sorted(self.alive[n + 1]) if n + 1 <= self.top else []
        mid_pos = {g: k for k, g in enumerate(mid)}
        low_pos = {g: k for k, g in enumerate(low)}

        def dense(n_: int, src: list[int], tgt_pos: dict[int, int]) -> IntMatrix:
            cols = self.cols.get(n_, {})
            out = []
            for g in src:
                v = [0] * len(tgt_pos)
                for r, a in cols.get(g, {}).items():
                    v[tgt_pos[r]] = a
                out.append(v)
            return IntMatrix.from_columns(out, len(tgt_pos))

        d_in = dense(n + 1, high, mid_pos)
        d_out = dense(n, mid, low_pos)
        q = homology_from_orders(
            d_in, d_out,
            [self.orders[n + 1][g] for g in high],
            [self.orders[n][g] for g in mid],
            [self.orders[n - 1][g] for g in low],
        )
        return ComplexHomology(self.complex, n, q, alive=mid, reduction=self)
