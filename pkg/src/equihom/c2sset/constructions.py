"""Products, quotients, smash powers, coinduction and signed James stages.

Every construction is built from tuples of components ``(sigma, a)``: a
simplex of a product is one component per factor, all with the same source
dimension, and it is nondegenerate when no step t -> t+1 is collapsed by
every component.  Components whose core is the basepoint are collapsed
(smash, norm) or deleted (James words) according to the construction.
"""
from __future__ import annotations

import contextlib
import contextvars
import itertools
from typing import Callable, Hashable, Iterator, Sequence

from .simplicial import (
    C2SSet,
    ComplexError,
    NotSubobject,
    Simplex,
    collapse,
    identity_sigma,
)

STAR = "*"
Comps = tuple[Simplex, ...]

_CELL_LIMIT: contextvars.ContextVar[int | None] = contextvars.ContextVar("cell_limit", default=None)


class CellLimitExceeded(ComplexError):
    pass


@contextlib.contextmanager
def cell_limit(limit: int | None):
    """Abort any construction whose nondegenerate simplex count exceeds ``limit``."""
    token = _CELL_LIMIT.set(limit)
    try:
        yield
    finally:
        _CELL_LIMIT.reset(token)


def _charge(keys: list[list]) -> None:
    limit = _CELL_LIMIT.get()
    if limit is not None:
        total = sum(len(lst) for lst in keys)
        if total > limit:
            raise CellLimitExceeded(f"construction exceeds {limit} nondegenerate simplices")


def _min_bound(dim_bound: int | None, spaces: Sequence[C2SSet]) -> int | None:
    bounds = [b for b in [dim_bound] + [s.bound for s in spaces] if b is not None]
    return min(bounds) if bounds else None


def _step_sigma(steps: Sequence[int], n: int) -> tuple[int, ...]:
    out, k = [], 0
    st = set(steps)
    for t in range(n + 1):
        if t in st:
            k += 1
        out.append(k)
    return tuple(out)


def _step_sets(n: int, dims: Sequence[int]) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Tuples of step sets S_r of the given sizes whose union is {1..n}."""
    pool = range(1, n + 1)
    choices = [list(itertools.combinations(pool, d)) for d in dims]
    for combo in itertools.product(*choices):
        covered = set()
        for c in combo:
            covered.update(c)
        if len(covered) == n:
            yield combo


def nondegenerate_tuples(factors: Sequence[C2SSet], n: int,
                         allowed: Callable[[int, int, int], bool] | None = None
                         ) -> Iterator[Comps]:
    """Nondegenerate n-simplices of the product of ``factors``.

    ``allowed(r, m, a)`` may veto nondegenerate simplex ``a`` of dimension
    ``m`` in factor ``r``.
    """
    k = len(factors)
    if k == 0:
        if n == 0:
            yield ()
        return
    dim_ranges = [range(min(n, f.dim) + 1) for f in factors]
    for dims in itertools.product(*dim_ranges):
        if sum(dims) < n or any(f.count(d) == 0 for f, d in zip(factors, dims)):
            continue
        cores = []
        for r, (f, d) in enumerate(zip(factors, dims)):
            cs = [a for a in range(f.count(d)) if allowed is None or allowed(r, d, a)]
            if not cs:
                break
            cores.append(cs)
        else:
            for steps in _step_sets(n, dims):
                sigmas = [_step_sigma(s, n) for s in steps]
                for pick in itertools.product(*cores):
                    yield tuple(zip(sigmas, pick))


def _normalize(comps: Comps, n: int) -> tuple[tuple[int, ...], Comps]:
    rho, reduced = collapse([c[0] for c in comps], n)
    return rho, tuple((s, c[1]) for s, c in zip(reduced, comps))


def _assemble(keys: list[list[Hashable]], face_fn, act_fn, basepoint_key, name: str,
              bound: int | None, label_fn=None) -> C2SSet:
    """Build a C2SSet from canonical keys.

    ``face_fn(key, n, i)`` returns ``STAR`` or a tuple of components with
    source dimension n-1; it is normalized and looked up among ``keys``.
    """
    index = [{k: a for a, k in enumerate(lst)} for lst in keys]
    faces: list[list[tuple[Simplex, ...]]] = []
    for n, lst in enumerate(keys):
        rows = []
        for key in lst:
            if n == 0:
                rows.append(())
                continue
            row = []
            for i in range(n + 1):
                f = face_fn(key, n, i)
                if f == STAR:
                    row.append(((0,) * n, index[0][STAR]))
                    continue
                rho, norm = _normalize(f, n - 1)
                row.append((rho, index[rho[-1]][norm]))
            rows.append(tuple(row))
        faces.append(rows)
    action = [[index[n][act_fn(key)] for key in lst] for n, lst in enumerate(keys)]
    bp = None if basepoint_key is None else index[0][basepoint_key]
    labels = None
    if label_fn is not None:
        labels = [[label_fn(k) for k in lst] for lst in keys]
    out = C2SSet(faces, action, bp, name, labels, bound)
    out.keys = keys
    return out


def _comp_label(space: C2SSet, c: Simplex) -> str:
    sigma, a = c
    base = space.label(sigma[-1], a)
    if sigma[-1] == len(sigma) - 1:
        return base
    return f"s{''.join(map(str, sigma))}{base}"


def _tuple_space(factors: Sequence[C2SSet], perm: Sequence[int], collapse_base: bool,
                 name: str, dim_bound: int | None) -> C2SSet:
    """Product of ``factors`` with action (c_r) -> (gamma c_{perm[r]}).

    With ``collapse_base`` the fat wedge (tuples with some basepoint
    component) is collapsed to a point, giving the smash product.
    """
    bound = _min_bound(dim_bound, factors)
    top = sum(f.dim for f in factors)
    if bound is not None:
        top = min(top, bound)
    if collapse_base:
        bps = [f.require_pointed() for f in factors]

        def allowed(r: int, m: int, a: int) -> bool:
            return not (m == 0 and a == bps[r])
    else:
        allowed = None
    keys: list[list[Hashable]] = []
    for n in range(top + 1):
        lst: list[Hashable] = list(nondegenerate_tuples(factors, n, allowed))
        if collapse_base and n == 0:
            lst.insert(0, STAR)
        keys.append(lst)
        _charge(keys)

    def face_fn(key, n, i):
        out = tuple(f.face(c, i) for f, c in zip(factors, key))
        if collapse_base and any(f.is_basepoint(c) for f, c in zip(factors, out)):
            return STAR
        return out

    def act_fn(key):
        if key == STAR:
            return STAR
        return tuple(factors[perm[r]].act(key[perm[r]]) for r in range(len(key)))

    if collapse_base:
        bp_key = STAR
    elif all(f.is_pointed() for f in factors):
        bp_key = tuple(((0,), f.basepoint) for f in factors)
    else:
        bp_key = None

    def label(key):
        if key == STAR:
            return STAR
        return "(" + ",".join(_comp_label(f, c) for f, c in zip(factors, key)) + ")"

    return _assemble(keys, face_fn, act_fn, bp_key, name, bound, label)


def product(x: C2SSet, y: C2SSet, dim_bound: int | None = None) -> C2SSet:
    return _tuple_space([x, y], [0, 1], False, f"({x.name} x {y.name})", dim_bound)


def smash(x: C2SSet, y: C2SSet, dim_bound: int | None = None) -> C2SSet:
    return _tuple_space([x, y], [0, 1], True, f"({x.name} ^ {y.name})", dim_bound)


def _require_plain(x: C2SSet) -> None:
    if not x.is_trivial_action():
        raise ValueError(f"{x.name} must carry the trivial action")


def coinduce(x: C2SSet, dim_bound: int | None = None) -> C2SSet:
    """Map(C2, X) = X x X with (a, b) -> (b, a)."""
    _require_plain(x)
    return _tuple_space([x, x], [1, 0], False, f"coind({x.name})", dim_bound)


def _power_perm(k: int, extra: bool) -> list[int]:
    perm = []
    for i in range(k):
        perm += [2 * i + 1, 2 * i]
    if extra:
        perm.append(2 * k)
    return perm


def mapping_power(x: C2SSet, k: int, extra: bool = False,
                  dim_bound: int | None = None) -> C2SSet:
    """Map(kC2 (+ *), X): coordinates in swapped pairs, plus one fixed coordinate."""
    factors = [x] * (2 * k + int(extra))
    return _tuple_space(factors, _power_perm(k, extra), False,
                        f"Map({k}C2{'+*' if extra else ''},{x.name})", dim_bound)


def fat_wedge(x: C2SSet, k: int, extra: bool = False,
              dim_bound: int | None = None) -> tuple[C2SSet, set[tuple[int, int]]]:
    """The space Map(T, X) and its fat wedge: tuples with a basepoint coordinate."""
    x.require_pointed()
    space = mapping_power(x, k, extra, dim_bound)
    sub = set()
    for n in range(space.dim + 1):
        for a in range(space.count(n)):
            if _touches_base(x, space, n, a):
                sub.add((n, a))
    return space, sub


def _touches_base(x: C2SSet, space: C2SSet, n: int, a: int) -> bool:
    return any(c[0][-1] == 0 and c[1] == x.basepoint for c in space.keys[n][a])


def smash_power(x: C2SSet, k: int, extra: bool = False,
                dim_bound: int | None = None) -> C2SSet:
    """Map(T, X) / fat wedge, i.e. N(X)^{smash k} (smash X when ``extra``)."""
    factors = [x] * (2 * k + int(extra))
    return _tuple_space(factors, _power_perm(k, extra), True,
                        f"N({x.name})^{k}{'^' + x.name if extra else ''}", dim_bound)


def norm_space(x: C2SSet, dim_bound: int | None = None) -> C2SSet:
    """N(X) = Map(C2, X) / fat wedge for a plain pointed X."""
    _require_plain(x)
    x.require_pointed()
    out = smash_power(x, 1, False, dim_bound)
    out.name = f"norm({x.name})"
    return out


def quotient(x: C2SSet, sub: set[tuple[int, int]], name: str | None = None) -> C2SSet:
    """Collapse the subobject ``sub`` (pairs (dim, index)) to a basepoint.

    The empty subobject adds a disjoint basepoint.
    """
    if not x.subobject_closed(sub):
        raise NotSubobject("subobject is not closed under faces and the action")
    # keys of different dimensions may coincide as integers, so tag them
    keys: list[list[Hashable]] = []
    for n in range(x.dim + 1):
        lst: list[Hashable] = [(n, a) for a in range(x.count(n)) if (n, a) not in sub]
        if n == 0:
            lst.insert(0, STAR)
        keys.append(lst)
    return _assemble_quotient(x, keys, sub, name or f"{x.name}/~")


def _assemble_quotient(x: C2SSet, keys, sub, name: str) -> C2SSet:
    index = [{k: a for a, k in enumerate(lst)} for lst in keys]
    star = index[0][STAR]
    faces = []
    for n, lst in enumerate(keys):
        rows = []
        for key in lst:
            if n == 0:
                rows.append(())
                continue
            row = []
            for i in range(n + 1):
                sigma, b = x.face((identity_sigma(n), key[1]), i)
                m = sigma[-1]
                if (m, b) in sub:
                    row.append(((0,) * n, star))
                else:
                    row.append((sigma, index[m][(m, b)]))
            rows.append(tuple(row))
        faces.append(rows)
    action = [
        [index[n][k if k == STAR else (n, x.action[n][k[1]])] for k in lst]
        for n, lst in enumerate(keys)
    ]
    labels = [[STAR if k == STAR else x.label(n, k[1]) for k in lst]
              for n, lst in enumerate(keys)]
    return C2SSet(faces, action, star, name, labels, x.bound)


def disjoint_union(x: C2SSet, y: C2SSet, name: str | None = None) -> C2SSet:
    """X + Y, unpointed."""
    top = max(x.dim, y.dim)
    faces, action, labels = [], [], []
    for n in range(top + 1):
        off = x.count(n)
        rows = list(x.faces[n]) if n < len(x.faces) else []
        for row in (y.faces[n] if n < len(y.faces) else []):
            rows.append(tuple((s, b + x.count(s[-1])) for s, b in row))
        faces.append(rows)
        acts = list(x.action[n]) if n < len(x.action) else []
        acts += [g + off for g in (y.action[n] if n < len(y.action) else [])]
        action.append(acts)
        labels.append([x.label(n, a) for a in range(x.count(n))]
                      + [y.label(n, a) + "'" for a in range(y.count(n))])
    bounds = [b for b in (x.bound, y.bound) if b is not None]
    return C2SSet(faces, action, None, name or f"({x.name} + {y.name})", labels,
                  min(bounds) if bounds else None)


def disjoint_basepoint(x: C2SSet) -> C2SSet:
    return quotient(x, set(), f"{x.name}+")


def wedge(x: C2SSet, y: C2SSet) -> C2SSet:
    bx, by = x.require_pointed(), y.require_pointed()
    u = disjoint_union(x, y)
    return quotient(u, {(0, bx), (0, x.count(0) + by)}, f"({x.name} v {y.name})")


def james_stage(x: C2SSet, n: int, dim_bound: int | None = None) -> C2SSet:
    """Signed James stage: words of length <= n with basepoint letters omitted.

    The involution reverses a word and applies the action letterwise; the
    empty word is the basepoint.
    """
    bp = x.require_pointed()
    if n < 0:
        raise ValueError("James stage must be nonnegative")
    bound = _min_bound(dim_bound, [x])
    top = n * x.dim
    if bound is not None:
        top = min(top, bound)

    def allowed(r: int, m: int, a: int) -> bool:
        return not (m == 0 and a == bp)

    keys: list[list[Hashable]] = []
    for d in range(top + 1):
        lst: list[Hashable] = [()] if d == 0 else []
        for k in range(1, n + 1):
            lst.extend(nondegenerate_tuples([x] * k, d, allowed))
        keys.append(lst)
        _charge(keys)

    def face_fn(key, d, i):
        out = (x.face(c, i) for c in key)
        return tuple(c for c in out if not x.is_basepoint(c))

    def act_fn(key):
        return tuple(x.act(c) for c in reversed(key))

    def label(key):
        return "[" + ",".join(_comp_label(x, c) for c in key) + "]"

    return _assemble(keys, face_fn, act_fn, (), f"J{n}({x.name})", bound, label)


def james_inclusion(x: C2SSet, n: int, dim_bound: int | None = None
                    ) -> tuple[C2SSet, set[tuple[int, int]]]:
    """J_n(X) together with the subobject J_{n-1}(X) (words of length < n)."""
    j = james_stage(x, n, dim_bound)
    sub = {(d, a) for d, lst in enumerate(j.keys) for a, key in enumerate(lst) if len(key) < n}
    return j, sub
