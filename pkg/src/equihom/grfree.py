"""RO(C2)-graded free modules over B, described symbolically.

A free module is a multiset of shifted copies of B (FIXED) and of its
induced functor B^{C2} (INDUCED).  The helpers here compute the closed-form
homology predictions for coinductions, norms and signed James stages.
"""
from __future__ import annotations

import itertools
import threading
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, Sequence

from .mackey import MackeyFunctor, direct_sum_all, induced, norm_F2, zero_functor


class InvalidStage(ValueError):
    pass


class TableMissError(KeyError):
    pass


class Kind(str, Enum):
    FIXED = "B"
    INDUCED = "BC2"


@dataclass(frozen=True, order=True)
class RORep:
    """The virtual representation p + q*sigma."""

    p: int = 0
    q: int = 0

    def __add__(self, other: RORep) -> RORep:
        return RORep(self.p + other.p, self.q + other.q)

    def __neg__(self) -> RORep:
        return RORep(-self.p, -self.q)

    def __sub__(self, other: RORep) -> RORep:
        return self + (-other)

    @property
    def dim(self) -> int:
        return self.p + self.q

    def __str__(self) -> str:
        if self.q == 0:
            return str(self.p)
        sig = "σ" if self.q == 1 else f"{self.q}σ"
        if self.q == -1:
            sig = "-σ"
        if self.p == 0:
            return sig
        return f"{self.p}{'+' if self.q > 0 else ''}{sig}"


SIGMA = RORep(0, 1)
RHO = RORep(1, 1)


@dataclass(frozen=True, order=True)
class Summand:
    kind: Kind
    p: int
    q: int = 0

    def __post_init__(self) -> None:
        if self.kind is Kind.INDUCED and self.q != 0:
            # C2+ smash S^sigma is C2+ smash S^1, so only the total degree matters
            object.__setattr__(self, "p", self.p + self.q)
            object.__setattr__(self, "q", 0)

    @property
    def shift(self) -> RORep:
        return RORep(self.p, self.q)

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "p": self.p, "q": self.q}

    def __str__(self) -> str:
        return f"{self.kind.value}({self.shift})"


def fixed(alpha: RORep | int = 0) -> Summand:
    if isinstance(alpha, int):
        alpha = RORep(alpha)
    return Summand(Kind.FIXED, alpha.p, alpha.q)


def induced_summand(m: int) -> Summand:
    return Summand(Kind.INDUCED, m)


@dataclass(frozen=True)
class FreeDescriptor:
    summands: tuple[Summand, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "summands", tuple(sorted(self.summands)))

    @classmethod
    def of(cls, summands: Iterable[Summand]) -> FreeDescriptor:
        return cls(tuple(summands))

    def __add__(self, other: FreeDescriptor) -> FreeDescriptor:
        return FreeDescriptor(self.summands + other.summands)

    def __len__(self) -> int:
        return len(self.summands)

    def __iter__(self):
        return iter(self.summands)

    def counts(self) -> Counter:
        return Counter(self.summands)

    def contains(self, other: FreeDescriptor) -> bool:
        """Sub-multiset test."""
        mine = self.counts()
        return all(mine[s] >= c for s, c in other.counts().items())

    def fixed_shifts(self) -> list[RORep]:
        return sorted({s.shift for s in self.summands if s.kind is Kind.FIXED})

    def to_json(self) -> list[dict]:
        return [s.to_json() for s in self.summands]

    @classmethod
    def from_json(cls, data: Sequence[Mapping]) -> FreeDescriptor:
        return cls(tuple(Summand(Kind(d["kind"]), int(d["p"]), int(d.get("q", 0))) for d in data))

    def __str__(self) -> str:
        return "[" + ", ".join(str(s) for s in self.summands) + "]"


@dataclass(frozen=True)
class GradedSet:
    elements: tuple[tuple[str, int], ...] = ()

    def __post_init__(self) -> None:
        labels = [lab for lab, _ in self.elements]
        if len(set(labels)) != len(labels):
            raise ValueError("graded set labels must be distinct")
        if any(d < 0 for _, d in self.elements):
            raise ValueError("degrees must be nonnegative")

    @classmethod
    def of(cls, items: Mapping[str, int] | Iterable[tuple[str, int]]) -> GradedSet:
        if isinstance(items, Mapping):
            items = items.items()
        return cls(tuple((str(k), int(v)) for k, v in items))

    def __len__(self) -> int:
        return len(self.elements)

    def as_dict(self) -> dict[str, int]:
        return dict(self.elements)

    def degrees(self) -> list[int]:
        return [d for _, d in self.elements]


def norm_graded_set(s: GradedSet) -> FreeDescriptor:
    """One summand per C2-orbit of S x S under the swap."""
    out = []
    elems = s.elements
    for i, (_, d) in enumerate(elems):
        out.append(fixed(RORep(d, d)))
        for _, e in elems[i + 1:]:
            out.append(induced_summand(d + e))
    return FreeDescriptor.of(out)


def tensor_power_basis(s: GradedSet, i: int) -> GradedSet:
    if i < 0:
        raise ValueError("tensor power must be nonnegative")
    if i == 0:
        return GradedSet((("unit", 0),))
    sep = "" if all(len(lab) == 1 for lab, _ in s.elements) else "|"
    words = itertools.product(s.elements, repeat=i)
    return GradedSet(tuple(
        (sep.join(lab for lab, _ in w), sum(d for _, d in w)) for w in words
    ))


def _box_summands(a: Summand, b: Summand) -> list[Summand]:
    if a.kind is Kind.FIXED and b.kind is Kind.FIXED:
        return [Summand(Kind.FIXED, a.p + b.p, a.q + b.q)]
    if a.kind is Kind.FIXED:
        return [induced_summand(b.p + a.p + a.q)]
    if b.kind is Kind.FIXED:
        return [induced_summand(a.p + b.p + b.q)]
    return [induced_summand(a.p + b.p)] * 2


def box_descriptors(d1: FreeDescriptor, d2: FreeDescriptor) -> FreeDescriptor:
    return FreeDescriptor.of(
        s for a in d1.summands for b in d2.summands for s in _box_summands(a, b)
    )


def suspend_descriptor(d: FreeDescriptor, alpha: RORep) -> FreeDescriptor:
    return box_descriptors(d, FreeDescriptor((fixed(alpha),)))


def coind_homology_descriptor(s: GradedSet) -> FreeDescriptor:
    """Prediction for H_*(Map(C2, X); B) from the unreduced mod 2 basis of X."""
    return norm_graded_set(s)


UNBOUNDED = None


def _min_degree(s: Summand) -> int:
    return s.p + s.q if s.kind is Kind.FIXED else s.p


def james_homology_descriptor(underlying: GradedSet, hred_x: FreeDescriptor,
                              stage: int | None, degree_cap: int) -> FreeDescriptor:
    """Unreduced homology of the signed James stage, truncated at ``degree_cap``.

    Word length k contributes N(H~^{(x)k}) when 2k <= stage and
    N(H~^{(x)k}) box H~(X) when 2k+1 <= stage.  ``stage=None`` means the full
    construction, which needs the reduced underlying basis to sit in positive
    degrees.
    """
    if degree_cap < 0:
        raise ValueError("degree_cap must be nonnegative")
    if stage is not None and stage < 0:
        raise InvalidStage(f"stage must be nonnegative, got {stage}")
    if stage is None:
        if any(d < 1 for d in underlying.degrees()):
            raise InvalidStage("the unbounded construction needs a connected underlying space")
        # the norm of a word of length k sits in degree >= 2k
        max_k = degree_cap // 2 + 1
    else:
        max_k = stage // 2
    out: list[Summand] = []
    for k in range(max_k + 1):
        if not underlying.elements and k > 0:
            break
        n_term = norm_graded_set(tensor_power_basis(underlying, k))
        if stage is None or 2 * k <= stage:
            out.extend(n_term.summands)
        if stage is None or 2 * k + 1 <= stage:
            out.extend(box_descriptors(n_term, hred_x).summands)
    return FreeDescriptor.of(s for s in out if _min_degree(s) <= degree_cap)


class SphereTable:
    """Write-once cache of reduced sphere homology H~_n(S^{p+q sigma}; B)."""

    def __init__(self) -> None:
        self._data: dict[tuple[int, int, int], MackeyFunctor] = {}
        self._lock = threading.Lock()

    def put(self, alpha: RORep, n: int, value: MackeyFunctor) -> None:
        key = (alpha.p, alpha.q, n)
        with self._lock:
            old = self._data.get(key)
            if old is not None and old != value:
                raise ValueError(f"conflicting entry for S^{alpha} in degree {n}")
            self._data[key] = value

    def get(self, alpha: RORep, n: int) -> MackeyFunctor:
        try:
            return self._data[(alpha.p, alpha.q, n)]
        except KeyError:
            raise TableMissError(f"no entry for S^{alpha} in degree {n}") from None

    def __contains__(self, key: tuple[RORep, int]) -> bool:
        alpha, n = key
        return (alpha.p, alpha.q, n) in self._data

    def __len__(self) -> int:
        return len(self._data)


def evaluate_descriptor(d: FreeDescriptor, n: int, table: SphereTable) -> MackeyFunctor:
    parts = []
    for s in d.summands:
        if s.kind is Kind.FIXED:
            parts.append(table.get(s.shift, n))
        elif s.p == n:
            parts.append(induced(norm_F2()))
    return direct_sum_all(parts) if parts else zero_functor()
