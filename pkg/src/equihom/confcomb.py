"""Counting for C2-equivariant configurations and little-disk embeddings.

Finite C2-sets are written as ``n_fixed`` copies of C2/C2 plus ``n_free``
copies of C2/e; representations as p + q*sigma.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import factorial

MAX_ENUMERATION = 8


class TooLarge(ValueError):
    pass


class NotSupported(NotImplementedError):
    pass


@dataclass(frozen=True)
class C2SetDescriptor:
    n_fixed: int = 0
    n_free: int = 0

    def __post_init__(self) -> None:
        if self.n_fixed < 0 or self.n_free < 0:
            raise ValueError("orbit counts must be nonnegative")

    @property
    def size(self) -> int:
        return self.n_fixed + 2 * self.n_free

    def add_fixed_point(self) -> C2SetDescriptor:
        return C2SetDescriptor(self.n_fixed + 1, self.n_free)


@dataclass(frozen=True)
class RepPQ:
    p: int = 0
    q: int = 0

    def __post_init__(self) -> None:
        if self.p < 0 or self.q < 0:
            raise ValueError("representation multiplicities must be nonnegative")

    def contains(self, other: RepPQ) -> bool:
        return self.p >= other.p and self.q >= other.q


@dataclass(frozen=True)
class NormStatus:
    kind: str  # "NONE", "UNIQUE" or "MULTIPLE"
    count: int

    def __str__(self) -> str:
        return f"MULTIPLE({self.count})" if self.kind == "MULTIPLE" else self.kind

    def to_json(self) -> dict:
        return {"kind": self.kind, "count": self.count}


def graph_subgroup_count(n: int) -> int:
    """Graph subgroups of C2 x S_n over C2: elements t of S_n with t^2 = 1."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > MAX_ENUMERATION:
        raise TooLarge(f"enumeration of S_{n} is capped at n = {MAX_ENUMERATION}")
    ident = tuple(range(n))
    return sum(
        1 for t in itertools.permutations(range(n))
        if tuple(t[t[i]] for i in range(n)) == ident
    )


def aut_order(t: C2SetDescriptor) -> int:
    """|Aut^{C2}(T)|: permutations of fixed points, and the wreath product C2 wr S_k."""
    return factorial(t.n_fixed) * 2 ** t.n_free * factorial(t.n_free)


def emb_nonempty(t: C2SetDescriptor, v: RepPQ) -> bool:
    """Whether T embeds equivariantly in p + q*sigma.

    Fixed points must land in the fixed subspace R^p, which holds one point
    even when p = 0; free orbits need a nonzero sign coordinate.
    """
    fixed_ok = t.n_fixed <= 1 or v.p >= 1
    free_ok = t.n_free == 0 or v.q >= 1
    return fixed_ok and free_ok


def pi0_emb_sigma(k: int) -> int:
    """Components of the space of equivariant embeddings of kC2 into sigma."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return 2 ** k * factorial(k)


def pi0_underlying(n: int) -> int:
    """Components of n ordered points on a line."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return factorial(n)


def pi0_emb(t: C2SetDescriptor, v: RepPQ) -> int:
    """Component count where it is known; NotSupported otherwise."""
    if not emb_nonempty(t, v):
        return 0
    if v == RepPQ(0, 1):
        return pi0_emb_sigma(t.n_free)
    if v == RepPQ(1, 0) and t.n_free == 0:
        return pi0_underlying(t.n_fixed)
    if v.p + v.q == 0 or (t.n_fixed <= 1 and t.n_free == 0):
        return 1
    raise NotSupported(f"component count of Emb({t}, {v.p}+{v.q}sigma) is not determined")


def norm_map_status(v: RepPQ) -> NormStatus:
    """Norm maps Map(C2, X) -> X for algebras over little V-disks."""
    if v.q == 0:
        return NormStatus("NONE", 0)
    if v.q == 1:
        return NormStatus("MULTIPLE", 2)
    return NormStatus("UNIQUE", 1)
