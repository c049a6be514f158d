"""Finite simplicial sets with a simplicial involution.

Nondegenerate simplices are numbered per dimension.  A general simplex is a
pair ``(sigma, a)``: ``sigma`` is a monotone surjection [n] -> [m] stored as
the tuple of its values and ``a`` indexes a nondegenerate m-simplex, so the
simplex is the degeneracy sigma^* a.  The faces of each nondegenerate
simplex are stored in this form.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

Simplex = tuple[tuple[int, ...], int]


class ComplexError(Exception):
    pass


class NotPointed(ComplexError):
    pass


class NotSubobject(ComplexError):
    pass


class UnknownSpace(KeyError):
    pass


def identity_sigma(n: int) -> tuple[int, ...]:
    return tuple(range(n + 1))


def is_identity(sigma: Sequence[int]) -> bool:
    return sigma[-1] == len(sigma) - 1


def degenerate_face(sigma: tuple[int, ...], i: int) -> tuple[tuple[int, ...], int | None]:
    """Split d_i of a degeneracy: returns (new sigma, missed vertex or None)."""
    rest = sigma[:i] + sigma[i + 1:]
    v = sigma[i]
    if (i > 0 and sigma[i - 1] == v) or (i + 1 < len(sigma) and sigma[i + 1] == v):
        return rest, None
    return tuple(x if x < v else x - 1 for x in rest), v


def collapse(sigmas: Sequence[tuple[int, ...]], n: int) -> tuple[tuple[int, ...], list[tuple[int, ...]]]:
    """Factor the common degeneracy out of several maps out of [n].

    Returns ``(rho, reduced)`` with ``sigmas[r] = reduced[r] o rho`` and
    ``reduced`` jointly injective on consecutive steps.
    """
    rho = [0]
    for t in range(n):
        moves = any(s[t] != s[t + 1] for s in sigmas)
        rho.append(rho[-1] + (1 if moves else 0))
    first = {}
    for pos, val in enumerate(rho):
        first.setdefault(val, pos)
    picks = [first[v] for v in range(rho[-1] + 1)]
    return tuple(rho), [tuple(s[p] for p in picks) for s in sigmas]


@dataclass(eq=False)
class C2SSet:
    """A finite simplicial set with an involution and optional basepoint.

    ``faces[n][a]`` holds the n+1 faces of nondegenerate simplex ``a`` of
    dimension n.  ``bound`` is the dimension through which the simplex lists
    are complete (None: no truncation happened).
    """

    faces: list[list[tuple[Simplex, ...]]]
    action: list[list[int]]
    basepoint: int | None = None
    name: str = ""
    labels: list[list[str]] | None = None
    bound: int | None = None
    keys: list[list] | None = field(default=None, repr=False)
    _validated: bool = field(default=False, repr=False)

    def __post_init__(self) -> None:
        self.validate()

    @property
    def dim(self) -> int:
        top = len(self.faces) - 1
        while top > 0 and not self.faces[top]:
            top -= 1
        return top

    def count(self, n: int) -> int:
        return len(self.faces[n]) if 0 <= n < len(self.faces) else 0

    def counts(self) -> list[int]:
        return [len(f) for f in self.faces[: self.dim + 1]]

    def total_simplices(self) -> int:
        return sum(len(f) for f in self.faces)

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * len(f) for n, f in enumerate(self.faces))

    def complete_through(self, n: int) -> bool:
        return self.bound is None or n <= self.bound

    def label(self, n: int, a: int) -> str:
        if self.labels is not None:
            return self.labels[n][a]
        return f"{n}:{a}"

    def is_pointed(self) -> bool:
        return self.basepoint is not None

    def require_pointed(self) -> int:
        if self.basepoint is None:
            raise NotPointed(f"{self.name or 'space'} has no basepoint")
        return self.basepoint

    def is_trivial_action(self) -> bool:
        return all(g == a for acts in self.action for a, g in enumerate(acts))

    def is_fixed(self, n: int, a: int) -> bool:
        return self.action[n][a] == a

    def orbits(self, n: int) -> list[tuple[int, int | None]]:
        """Orbit list ordered by representative; free orbits as (rep, partner)."""
        out: list[tuple[int, int | None]] = []
        for a, g in enumerate(self.action[n]):
            if g == a:
                out.append((a, None))
            elif a < g:
                out.append((a, g))
        return out

    def face(self, s: Simplex, i: int) -> Simplex:
        sigma, a = s
        new, v = degenerate_face(sigma, i)
        if v is None:
            return new, a
        m = sigma[-1]
        rho, b = self.faces[m][a][v]
        return tuple(rho[t] for t in new), b

    def act(self, s: Simplex) -> Simplex:
        sigma, a = s
        return sigma, self.action[sigma[-1]][a]

    def is_basepoint(self, s: Simplex) -> bool:
        return self.basepoint is not None and s[0][-1] == 0 and s[1] == self.basepoint

    def simplices(self, n: int) -> Iterator[Simplex]:
        sig = identity_sigma(n)
        for a in range(self.count(n)):
            yield sig, a

    def validate(self) -> None:
        """Check face data, simplicial identities and the involution."""
        if self._validated:
            return
        if len(self.action) != len(self.faces):
            raise ComplexError("action and face tables have different lengths")
        for n, fs in enumerate(self.faces):
            if len(self.action[n]) != len(fs):
                raise ComplexError(f"action table has wrong size in dimension {n}")
            for a, row in enumerate(fs):
                if len(row) != (n + 1 if n > 0 else 0):
                    raise ComplexError(f"simplex {self.label(n, a)} has {len(row)} faces")
                for sigma, b in row:
                    if len(sigma) != n or sigma[0] != 0:
                        raise ComplexError(f"bad face map {sigma} on {self.label(n, a)}")
                    if any(y - x not in (0, 1) for x, y in zip(sigma, sigma[1:])):
                        raise ComplexError(f"face map {sigma} is not a surjection")
                    m = sigma[-1]
                    if m >= n or not 0 <= b < self.count(m):
                        raise ComplexError(f"face target of {self.label(n, a)} missing")
        for n, acts in enumerate(self.action):
            for a, g in enumerate(acts):
                if not 0 <= g < len(acts) or acts[g] != a:
                    raise ComplexError(f"action is not an involution in dimension {n}")
        for n in range(2, len(self.faces)):
            for x in self.simplices(n):
                for j in range(n + 1):
                    dj = self.face(x, j)
                    for i in range(j):
                        if self.face(dj, i) != self.face(self.face(x, i), j - 1):
                            raise ComplexError(
                                f"simplicial identity d{i}d{j} fails on {self.label(n, x[1])}"
                            )
        for n in range(1, len(self.faces)):
            for x in self.simplices(n):
                gx = self.act(x)
                for i in range(n + 1):
                    if self.face(gx, i) != self.act(self.face(x, i)):
                        raise ComplexError(
                            f"action does not commute with d{i} on {self.label(n, x[1])}"
                        )
        if self.basepoint is not None:
            if not 0 <= self.basepoint < self.count(0):
                raise ComplexError("basepoint is not a vertex")
            if self.action[0][self.basepoint] != self.basepoint:
                raise ComplexError("basepoint is not fixed")
        self._validated = True

    def underlying(self) -> C2SSet:
        """Same simplicial set with the trivial action."""
        return C2SSet(
            self.faces, [list(range(len(f))) for f in self.faces], self.basepoint,
            f"res({self.name})", self.labels, self.bound,
        )

    def subobject_closed(self, sub: set[tuple[int, int]]) -> bool:
        for n, a in sub:
            if (n, self.action[n][a]) not in sub:
                return False
            for sigma, b in self.faces[n][a] if n else ():
                if (sigma[-1], b) not in sub:
                    return False
        return True

    def fixed_subobject(self) -> set[tuple[int, int]]:
        return {(n, a) for n, acts in enumerate(self.action) for a, g in enumerate(acts) if g == a}

    def __repr__(self) -> str:
        return f"C2SSet({self.name!r}, counts={self.counts()})"


def from_simplicial_complex(facets: Sequence[Sequence[int]], action: dict[int, int] | None = None,
                            basepoint: int | None = None, name: str = "") -> C2SSet:
    """Ordered simplicial complex on integer vertices; action permutes vertices."""
    simplices: set[tuple[int, ...]] = set()
    for f in facets:
        f = tuple(sorted(f))
        for k in range(1, len(f) + 1):
            for i in range(1 << len(f)):
                sub = tuple(v for b, v in enumerate(f) if i >> b & 1)
                if len(sub) == k:
                    simplices.add(sub)
    top = max(len(s) for s in simplices) - 1
    by_dim = [sorted(s for s in simplices if len(s) == n + 1) for n in range(top + 1)]
    index = [{s: a for a, s in enumerate(lst)} for lst in by_dim]
    faces, acts, labels = [], [], []
    perm = action or {}
    for n, lst in enumerate(by_dim):
        faces.append([
            tuple((identity_sigma(n - 1), index[n - 1][s[:i] + s[i + 1:]]) for i in range(n + 1))
            if n else ()
            for s in lst
        ])
        acts.append([index[n][tuple(sorted(perm.get(v, v) for v in s))] for s in lst])
        labels.append(["".join(str(v) for v in s) for s in lst])
    bp = None if basepoint is None else index[0][(basepoint,)]
    return C2SSet(faces, acts, bp, name, labels)
