"""Finitely generated abelian groups, homomorphisms, and homology of complexes.

Every group is stored in canonical form Z/d_1 + ... + Z/d_k + Z^r with
d_1 | d_2 | ... | d_k and each d_i >= 2; generators are ordered torsion first
(increasing) and free last.  Elements are integer vectors in those
coordinates, torsion coordinates reduced into [0, d_i).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd
from typing import Iterator, Sequence

from .matrix import IntMatrix, SmithDecomposition, smith_decomposition


class IntAlgError(Exception):
    pass


class NonComposableError(IntAlgError):
    pass


class NotAComplexError(IntAlgError):
    pass


class NotChainMapError(IntAlgError):
    pass


class IllDefinedHomError(IntAlgError):
    pass


class NotInLatticeError(IntAlgError):
    pass


def reduce_mod(vec: Sequence[int], orders: Sequence[int]) -> tuple[int, ...]:
    return tuple(x % t if t else x for x, t in zip(vec, orders))


@dataclass(frozen=True)
class FGAbelianGroup:
    torsion: tuple[int, ...] = ()
    rank: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        if self.rank < 0:
            raise ValueError("negative free rank")
        for d in self.torsion:
            if d < 2:
                raise ValueError(f"invariant factor {d} is not >= 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"invariant factors {a}, {b} break the divisibility chain")

    @classmethod
    def cyclic(cls, n: int) -> FGAbelianGroup:
        """Z/n, with n = 0 meaning Z and n = 1 the trivial group."""
        if n == 0:
            return cls((), 1)
        if n == 1:
            return cls()
        return cls((n,), 0)

    @classmethod
    def free(cls, r: int) -> FGAbelianGroup:
        return cls((), r)

    @classmethod
    def from_orders(cls, orders: Sequence[int]) -> FGAbelianGroup:
        """Canonical form of a direct sum of cyclic groups (0 meaning Z)."""
        return present(orders).group

    @property
    def orders(self) -> tuple[int, ...]:
        return self.torsion + (0,) * self.rank

    @property
    def ngens(self) -> int:
        return len(self.torsion) + self.rank

    def order(self) -> int | None:
        if self.rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def is_trivial(self) -> bool:
        return self.ngens == 0

    def is_finite(self) -> bool:
        return self.rank == 0

    def reduce(self, vec: Sequence[int]) -> tuple[int, ...]:
        if len(vec) != self.ngens:
            raise ValueError(f"element {tuple(vec)} has wrong length for {self}")
        return reduce_mod(vec, self.orders)

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.ngens

    def generator(self, i: int) -> tuple[int, ...]:
        return tuple(int(i == j) for j in range(self.ngens))

    def element_order(self, vec: Sequence[int]) -> int | None:
        vec = self.reduce(vec)
        if any(x for x, t in zip(vec, self.orders) if t == 0):
            return None
        out = 1
        for x, t in zip(vec, self.orders):
            if t == 0:
                continue
            k = t // gcd(x, t)
            out = out * k // gcd(out, k)
        return out

    def elements(self) -> Iterator[tuple[int, ...]]:
        if self.rank:
            raise ValueError("cannot enumerate an infinite group")
        return itertools.product(*(range(d) for d in self.torsion))

    def direct_sum(self, other: FGAbelianGroup) -> FGAbelianGroup:
        return FGAbelianGroup.from_orders(self.orders + other.orders)

    def to_record(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}

    @classmethod
    def from_record(cls, rec: dict) -> FGAbelianGroup:
        return cls(tuple(rec["torsion"]), int(rec["rank"]))

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.torsion]
        if self.rank == 1:
            parts.append("Z")
        elif self.rank:
            parts.append(f"Z^{self.rank}")
        return " + ".join(parts) if parts else "0"


def _normalize_matrix(m: IntMatrix, target_orders: Sequence[int]) -> IntMatrix:
    return IntMatrix.from_rows(
        [[x % t if t else x for x in row] for row, t in zip(m.rows, target_orders)],
        m.ncols,
    )


@dataclass(frozen=True)
class GroupHom:
    """A homomorphism given by its action on the canonical generators."""

    source: FGAbelianGroup
    target: FGAbelianGroup
    matrix: IntMatrix

    def __post_init__(self) -> None:
        if self.matrix.shape != (self.target.ngens, self.source.ngens):
            raise ValueError(
                f"matrix shape {self.matrix.shape} does not fit "
                f"{self.source} -> {self.target}"
            )
        mat = _normalize_matrix(self.matrix, self.target.orders)
        object.__setattr__(self, "matrix", mat)
        for j, d in enumerate(self.source.orders):
            if d and any(self.target.reduce([d * x for x in mat.column(j)])):
                raise IllDefinedHomError(
                    f"generator {j} has order {d} but its image "
                    f"{mat.column(j)} is not killed by {d} in {self.target}"
                )

    @classmethod
    def from_columns(cls, source: FGAbelianGroup, target: FGAbelianGroup,
                     cols: Sequence[Sequence[int]]) -> GroupHom:
        return cls(source, target, IntMatrix.from_columns(cols, target.ngens))

    @classmethod
    def zero(cls, source: FGAbelianGroup, target: FGAbelianGroup) -> GroupHom:
        return cls(source, target, IntMatrix.zeros(target.ngens, source.ngens))

    @classmethod
    def identity(cls, group: FGAbelianGroup) -> GroupHom:
        return cls(group, group, IntMatrix.identity(group.ngens))

    @classmethod
    def scalar(cls, group: FGAbelianGroup, k: int) -> GroupHom:
        return cls(group, group, IntMatrix.identity(group.ngens).scale(k))

    def __call__(self, vec: Sequence[int]) -> tuple[int, ...]:
        return self.target.reduce(self.matrix.apply(self.source.reduce(vec)))

    def __matmul__(self, other: GroupHom) -> GroupHom:
        """Composition ``self after other``."""
        if other.target != self.source:
            raise NonComposableError(f"cannot compose {other.target} with {self.source}")
        return GroupHom(other.source, self.target, self.matrix @ other.matrix)

    def __add__(self, other: GroupHom) -> GroupHom:
        if (self.source, self.target) != (other.source, other.target):
            raise NonComposableError("sum of homomorphisms with different ends")
        return GroupHom(self.source, self.target, self.matrix + other.matrix)

    def __neg__(self) -> GroupHom:
        return GroupHom(self.source, self.target, -self.matrix)

    def __sub__(self, other: GroupHom) -> GroupHom:
        return self + (-other)

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def images(self) -> list[tuple[int, ...]]:
        return [self.matrix.column(j) for j in range(self.source.ngens)]


# ---------------------------------------------------------------------------
# subquotients of Z^m


def lattice_basis(gens: IntMatrix) -> IntMatrix:
    """A basis (as columns) of the lattice spanned by the columns of ``gens``."""
    s = smith_decomposition(gens)
    cols = []
    for i, d in enumerate(s.invariants):
        if d:
            cols.append([d * x for x in s.u_inv.column(i)])
    return IntMatrix.from_columns(cols, gens.nrows)


@dataclass(frozen=True)
class Subquotient:
    """The group K / I for lattices I <= K <= Z^m, in canonical form.

    ``project`` takes an ambient vector lying in K to the coordinates of its
    class; ``section`` holds ambient representatives of the generators.
    """

    group: FGAbelianGroup
    ambient: int
    basis: IntMatrix
    section: IntMatrix
    _basis_snf: SmithDecomposition = field(repr=False)
    _proj: IntMatrix = field(repr=False)

    def lattice_coords(self, vec: Sequence[int]) -> tuple[int, ...]:
        s = self._basis_snf
        w = s.u.apply(vec)
        inv = s.invariants
        r = self.basis.ncols
        coords = []
        for i in range(r):
            if w[i] % inv[i]:
                raise NotInLatticeError(f"{tuple(vec)} is not in the lattice")
            coords.append(w[i] // inv[i])
        if any(w[r:]):
            raise NotInLatticeError(f"{tuple(vec)} is not in the lattice")
        return tuple(coords)

    def contains(self, vec: Sequence[int]) -> bool:
        try:
            self.lattice_coords(vec)
        except NotInLatticeError:
            return False
        return True

    def project(self, vec: Sequence[int]) -> tuple[int, ...]:
        return self.group.reduce(self._proj.apply(self.lattice_coords(vec)))

    def representative(self, k: int) -> tuple[int, ...]:
        return self.section.column(k)


def subquotient(k_gens: IntMatrix, i_gens: IntMatrix) -> Subquotient:
    """Canonical presentation of span(k_gens) / span(i_gens); requires I <= K."""
    m = k_gens.nrows
    if i_gens.nrows != m:
        raise ValueError("ambient dimension mismatch")
    basis = lattice_basis(k_gens) if k_gens.ncols else IntMatrix.zeros(m, 0)
    r = basis.ncols
    if r:
        bsnf = smith_decomposition(basis)
    else:
        bsnf = smith_decomposition(IntMatrix.zeros(m, 0))
    # express the generators of I in the basis of K
    tmp = Subquotient(FGAbelianGroup(), m, basis, IntMatrix.zeros(m, 0), bsnf,
                      IntMatrix.zeros(0, r))
    cols = [tmp.lattice_coords(c) for c in i_gens.columns()]
    x = IntMatrix.from_columns(cols, r)
    s = smith_decomposition(x)
    diag = s.invariants
    orders = [diag[i] if i < len(diag) else 0 for i in range(r)]
    keep = [i for i in range(r) if orders[i] != 1]
    group = FGAbelianGroup(tuple(orders[i] for i in keep if orders[i]),
                           sum(1 for i in keep if orders[i] == 0))
    proj = s.u.select_rows(keep)
    section = basis @ s.u_inv.select_columns(keep) if r else IntMatrix.zeros(m, 0)
    return Subquotient(group, m, basis, section, bsnf, proj)


def present(orders: Sequence[int], relations: Sequence[Sequence[int]] = ()) -> Subquotient:
    """Canonical form of Z^m / (diag(orders) + relations).

    ``orders`` may contain 0 (free) and 1 (trivial) entries and need not be
    sorted; ``project`` maps old coordinates to canonical ones.
    """
    m = len(orders)
    rel = [list(r) for r in relations]
    for i, t in enumerate(orders):
        if t:
            rel.append([t if k == i else 0 for k in range(m)])
    return subquotient(IntMatrix.identity(m), IntMatrix.from_columns(rel, m))


# ---------------------------------------------------------------------------
# homology


def _diag_columns(orders: Sequence[int]) -> list[list[int]]:
    m = len(orders)
    return [[t if k == i else 0 for k in range(m)] for i, t in enumerate(orders) if t]


def cycle_lattice(d_out: IntMatrix, mid: Sequence[int], out: Sequence[int]) -> IntMatrix:
    """Basis of {x in Z^m : d_out x = 0 in the target}, target orders ``out``."""
    m, p = len(mid), len(out)
    tors = [i for i, t in enumerate(out) if t]
    if p == 0:
        return IntMatrix.identity(m)
    extra = IntMatrix.from_rows(
        [[-out[i] if i == k else 0 for k in tors] for i in range(p)], len(tors)
    )
    from .matrix import kernel_basis
    ker = kernel_basis(d_out.hstack(extra))
    return ker.select_rows(range(m))


def homology_from_orders(d_in: IntMatrix, d_out: IntMatrix, src: Sequence[int],
                         mid: Sequence[int], out: Sequence[int]) -> Subquotient:
    """ker(d_out) / im(d_in) for cyclic-sum groups with the given orders."""
    k = cycle_lattice(d_out, mid, out)
    i_cols = list(d_in.columns()) + _diag_columns(mid)
    return subquotient(k, IntMatrix.from_columns(i_cols, len(mid)))


@dataclass(frozen=True)
class HomologyData:
    """Homology at the middle of ``d_in`` then ``d_out`` plus projection data."""

    group: FGAbelianGroup
    d_in: GroupHom
    d_out: GroupHom
    quotient: Subquotient

    def project(self, cycle: Sequence[int]) -> tuple[int, ...]:
        return self.quotient.project(cycle)

    def representative(self, k: int) -> tuple[int, ...]:
        return self.d_out.source.reduce(self.quotient.representative(k))


def homology_at(d_in: GroupHom, d_out: GroupHom) -> HomologyData:
    if d_in.target != d_out.source:
        raise NonComposableError(f"{d_in.target} is not {d_out.source}")
    if not (d_out @ d_in).is_zero():
        raise NotAComplexError("consecutive maps do not compose to zero")
    mid = d_in.target
    q = homology_from_orders(d_in.matrix, d_out.matrix, d_in.source.orders,
                             mid.orders, d_out.target.orders)
    return HomologyData(q.group, d_in, d_out, q)


def induce_on_homology(f: GroupHom, source: HomologyData, target: HomologyData,
                       f_in: GroupHom | None = None,
                       f_out: GroupHom | None = None) -> GroupHom:
    """Map induced on homology by a chain map whose middle component is ``f``.

    ``f_in``/``f_out`` are the neighbouring components; when given, both
    commuting squares are checked.
    """
    if f.source != source.d_out.source or f.target != target.d_out.source:
        raise NonComposableError("chain map does not match the complexes")
    if f_out is not None and target.d_out @ f != f_out @ source.d_out:
        raise NotChainMapError("f does not commute with the outgoing differentials")
    if f_in is not None and f @ source.d_in != target.d_in @ f_in:
        raise NotChainMapError("f does not commute with the incoming differentials")
    cols = []
    for k in range(source.group.ngens):
        img = f.matrix.apply(source.representative(k))
        try:
            cols.append(target.project(img))
        except NotInLatticeError as exc:
            raise NotChainMapError("f does not carry cycles to cycles") from exc
    return GroupHom.from_columns(source.group, target.group, cols)


def kernel(f: GroupHom) -> FGAbelianGroup:
    return homology_at(GroupHom.zero(FGAbelianGroup(), f.source), f).group


def cokernel(f: GroupHom) -> FGAbelianGroup:
    return homology_at(f, GroupHom.zero(f.target, FGAbelianGroup())).group


def image(f: GroupHom) -> FGAbelianGroup:
    t = f.target.orders
    cols = list(f.matrix.columns()) + _diag_columns(t)
    k = IntMatrix.from_columns(cols, len(t))
    return subquotient(k, IntMatrix.from_columns(_diag_columns(t), len(t))).group


def is_isomorphism(f: GroupHom) -> bool:
    return kernel(f).is_trivial() and cokernel(f).is_trivial()
