"""C2 Mackey functors as exact algebraic data.

A Mackey functor is stored by its two levels (``top`` at C2/C2, ``bot`` at
C2/e), restriction, transfer and the Weyl involution on the bottom level.
The four axioms are checked whenever one is built.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd
from typing import Iterator, Sequence

from .intalg import (
    FGAbelianGroup,
    GroupHom,
    IntMatrix,
    Subquotient,
    cokernel,
    image,
    is_isomorphism,
    kernel,
    present,
)

EXHAUSTIVE_ORDER_LIMIT = 256


class AxiomViolation(Exception):
    def __init__(self, axiom: str, witness: tuple[int, ...]):
        super().__init__(f"{axiom} fails on generator image {witness}")
        self.axiom = axiom
        self.witness = witness


def _as_hom(f, source: FGAbelianGroup, target: FGAbelianGroup) -> GroupHom:
    if isinstance(f, GroupHom):
        if f.source != source or f.target != target:
            raise ValueError(f"map {f.source} -> {f.target} does not fit {source} -> {target}")
        return f
    if not isinstance(f, IntMatrix):
        f = IntMatrix.from_rows(f, source.ngens)
    return GroupHom(source, target, f)


@dataclass(frozen=True)
class MackeyFunctor:
    top: FGAbelianGroup
    bot: FGAbelianGroup
    res: GroupHom
    tr: GroupHom
    weyl: GroupHom

    def __post_init__(self) -> None:
        top, bot = self.top, self.bot
        object.__setattr__(self, "res", _as_hom(self.res, top, bot))
        object.__setattr__(self, "tr", _as_hom(self.tr, bot, top))
        object.__setattr__(self, "weyl", _as_hom(self.weyl, bot, bot))
        ident = GroupHom.identity(bot)
        checks = [
            ("weyl o weyl = id", self.weyl @ self.weyl, ident),
            ("weyl o res = res", self.weyl @ self.res, self.res),
            ("tr o weyl = tr", self.tr @ self.weyl, self.tr),
            ("res o tr = 1 + weyl", self.res @ self.tr, ident + self.weyl),
        ]
        for name, lhs, rhs in checks:
            if lhs != rhs:
                bad = next(j for j in range(lhs.source.ngens)
                           if lhs.matrix.column(j) != rhs.matrix.column(j))
                raise AxiomViolation(name, lhs.source.generator(bad))

    def is_zero(self) -> bool:
        return self.top.is_trivial() and self.bot.is_trivial()

    def to_record(self) -> dict:
        return {
            "top": self.top.to_record(),
            "bot": self.bot.to_record(),
            "res": self.res.matrix.to_lists(),
            "tr": self.tr.matrix.to_lists(),
            "weyl": self.weyl.matrix.to_lists(),
        }

    @classmethod
    def from_record(cls, rec: dict) -> MackeyFunctor:
        top = FGAbelianGroup.from_record(rec["top"])
        bot = FGAbelianGroup.from_record(rec["bot"])

        def mat(key: str, src: FGAbelianGroup, tgt: FGAbelianGroup) -> IntMatrix:
            rows = rec[key]
            if len(rows) != tgt.ngens:
                raise ValueError(f"{key} has {len(rows)} rows, expected {tgt.ngens}")
            return IntMatrix.from_rows(rows, src.ngens)

        return cls(top, bot, mat("res", top, bot), mat("tr", bot, top), mat("weyl", bot, bot))

    def __str__(self) -> str:
        return f"[top {self.top} | bot {self.bot}]"


def make_mackey(top: FGAbelianGroup, bot: FGAbelianGroup, res, tr, weyl) -> MackeyFunctor:
    """Build a Mackey functor; raises AxiomViolation if an axiom fails."""
    return MackeyFunctor(top, bot, res, tr, weyl)


@dataclass(frozen=True)
class MackeyMap:
    source: MackeyFunctor
    target: MackeyFunctor
    f_top: GroupHom
    f_bot: GroupHom

    def __post_init__(self) -> None:
        s, t = self.source, self.target
        if self.f_bot @ s.res != t.res @ self.f_top:
            raise ValueError("map does not commute with restriction")
        if self.f_top @ s.tr != t.tr @ self.f_bot:
            raise ValueError("map does not commute with transfer")
        if self.f_bot @ s.weyl != t.weyl @ self.f_bot:
            raise ValueError("map does not commute with the Weyl action")

    def is_isomorphism(self) -> bool:
        return is_isomorphism(self.f_top) and is_isomorphism(self.f_bot)


# ---------------------------------------------------------------------------
# standard examples


def zero_functor() -> MackeyFunctor:
    z = FGAbelianGroup()
    return MackeyFunctor(z, z, GroupHom.zero(z, z), GroupHom.zero(z, z), GroupHom.zero(z, z))


def burnside() -> MackeyFunctor:
    """The Burnside functor A; top basis [C2/C2], [C2/e]."""
    return MackeyFunctor(
        FGAbelianGroup.free(2), FGAbelianGroup.free(1),
        IntMatrix.from_rows([[1, 2]]),
        IntMatrix.from_rows([[0], [1]]),
        IntMatrix.identity(1),
    )


def constant_z() -> MackeyFunctor:
    z = FGAbelianGroup.free(1)
    return MackeyFunctor(z, z, IntMatrix.from_rows([[1]]), IntMatrix.from_rows([[2]]),
                         IntMatrix.identity(1))


def norm_F2() -> MackeyFunctor:
    """The Green functor B = N F_2: Z/4 over Z/2, res reduction, tr doubling."""
    return MackeyFunctor(
        FGAbelianGroup.cyclic(4), FGAbelianGroup.cyclic(2),
        IntMatrix.from_rows([[1]]),
        IntMatrix.from_rows([[2]]),
        IntMatrix.identity(1),
    )


class BGreen:
    """Multiplication on B: the ring Z/4 on top, Z/2 on the bottom."""

    @staticmethod
    def mul_top(a: int, b: int) -> int:
        return (a * b) % 4

    @staticmethod
    def mul_bot(x: int, y: int) -> int:
        return (x * y) % 2

    @staticmethod
    def unit_top() -> int:
        return 1

    @staticmethod
    def unit_bot() -> int:
        return 1

    @classmethod
    def check(cls) -> list[str]:
        """Return the list of failed Green-functor identities (empty when valid)."""
        b = norm_F2()
        res = lambda a: b.res((a,))[0]
        tr = lambda x: b.tr((x,))[0]
        failures = []
        for a, c in itertools.product(range(4), repeat=2):
            if res(cls.mul_top(a, c)) != cls.mul_bot(res(a), res(c)):
                failures.append(f"res not multiplicative at {a},{c}")
        if res(cls.unit_top()) != cls.unit_bot():
            failures.append("res does not preserve the unit")
        for x, a in itertools.product(range(2), range(4)):
            if tr(cls.mul_bot(x, res(a))) != cls.mul_top(tr(x), a):
                failures.append(f"Frobenius fails at x={x}, a={a}")
        return failures


# ---------------------------------------------------------------------------
# assembling a functor from raw (non-canonical) presentations


def _assemble(top: Subquotient, bot: Subquotient, res_raw: IntMatrix, tr_raw: IntMatrix,
              weyl_raw: IntMatrix) -> MackeyFunctor:
    """Push raw structure maps through canonical presentations of each level."""

    def push(f: IntMatrix, src: Subquotient, tgt: Subquotient) -> IntMatrix:
        cols = [tgt.project(f.apply(src.representative(k))) for k in range(src.group.ngens)]
        return IntMatrix.from_columns(cols, tgt.group.ngens)

    return MackeyFunctor(
        top.group, bot.group,
        push(res_raw, top, bot), push(tr_raw, bot, top), push(weyl_raw, bot, bot),
    )


def _block_diag(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    rows = [list(r) + [0] * b.ncols for r in a.rows]
    rows += [[0] * a.ncols + list(r) for r in b.rows]
    return IntMatrix.from_rows(rows, a.ncols + b.ncols)


def direct_sum(m: MackeyFunctor, n: MackeyFunctor) -> MackeyFunctor:
    return _assemble(
        present(m.top.orders + n.top.orders),
        present(m.bot.orders + n.bot.orders),
        _block_diag(m.res.matrix, n.res.matrix),
        _block_diag(m.tr.matrix, n.tr.matrix),
        _block_diag(m.weyl.matrix, n.weyl.matrix),
    )


def direct_sum_all(parts: Sequence[MackeyFunctor]) -> MackeyFunctor:
    out = zero_functor()
    for p in parts:
        out = direct_sum(out, p)
    return out


def induced(m: MackeyFunctor) -> MackeyFunctor:
    """M^{C2}: top bot(M), bottom bot(M)+bot(M) with the twisted swap."""
    k = m.bot.ngens
    w = m.weyl.matrix
    ident = IntMatrix.identity(k)
    zero = IntMatrix.zeros(k, k)
    res = IntMatrix.from_rows(list(ident.rows) + list(w.rows), k)
    tr = ident.hstack(w)
    weyl = IntMatrix.from_rows(
        [list(r) for r in zero.hstack(w).rows] + [list(r) for r in w.hstack(zero).rows], 2 * k
    )
    return _assemble(present(m.bot.orders), present(m.bot.orders * 2), res, tr, weyl)


def box(m: MackeyFunctor, n: MackeyFunctor) -> MackeyFunctor:
    """Box product via the finite coend presentation.

    Bottom level bot(m) (x) bot(n) with diagonal Weyl action.  Top level is
    top(m) (x) top(n) plus the Weyl coinvariants of the bottom, modulo the
    two Frobenius relations.
    """
    mt, mb, nt, nb = m.top.orders, m.bot.orders, n.top.orders, n.bot.orders
    bot_pairs = [(i, j) for i in range(len(mb)) for j in range(len(nb))]
    top_pairs = [(i, j) for i in range(len(mt)) for j in range(len(nt))]
    bidx = {p: k for k, p in enumerate(bot_pairs)}
    tidx = {p: k for k, p in enumerate(top_pairs)}
    nb_raw, nt_raw = len(bot_pairs), len(top_pairs)
    bot_orders = [gcd(mb[i], nb[j]) for i, j in bot_pairs]
    top_orders = [gcd(mt[i], nt[j]) for i, j in top_pairs] + bot_orders

    wm, wn = m.weyl.matrix, n.weyl.matrix

    def weyl_of_pair(i: int, j: int) -> list[int]:
        v = [0] * nb_raw
        for k in range(len(mb)):
            if wm[k, i]:
                for l in range(len(nb)):
                    if wn[l, j]:
                        v[bidx[(k, l)]] += wm[k, i] * wn[l, j]
        return v

    weyl_raw = IntMatrix.from_columns([weyl_of_pair(i, j) for i, j in bot_pairs], nb_raw)

    def coinv(vec: Sequence[int]) -> list[int]:
        return [0] * nt_raw + list(vec)

    relations = []
    for p in range(nb_raw):
        rel = [0] * nb_raw
        rel[p] += 1
        w = weyl_raw.column(p)
        rel = [a - b for a, b in zip(rel, w)]
        if any(rel):
            relations.append(coinv(rel))
    rm, rn, tm, tn = m.res.matrix, n.res.matrix, m.tr.matrix, n.tr.matrix
    # tr(x) (x) b ~ [x (x) res b]
    for i in range(len(mb)):
        for j in range(len(nt)):
            rel = [0] * (nt_raw + nb_raw)
            for k in range(len(mt)):
                rel[tidx[(k, j)]] += tm[k, i]
            for l in range(len(nb)):
                rel[nt_raw + bidx[(i, l)]] -= rn[l, j]
            relations.append(rel)
    # a (x) tr(y) ~ [res a (x) y]
    for i in range(len(mt)):
        for j in range(len(nb)):
            rel = [0] * (nt_raw + nb_raw)
            for l in range(len(nt)):
                rel[tidx[(i, l)]] += tn[l, j]
            for k in range(len(mb)):
                rel[nt_raw + bidx[(k, j)]] -= rm[k, i]
            relations.append(rel)

    res_cols = []
    for i, j in top_pairs:
        v = [0] * nb_raw
        for k in range(len(mb)):
            for l in range(len(nb)):
                v[bidx[(k, l)]] += rm[k, i] * rn[l, j]
        res_cols.append(v)
    for p in range(nb_raw):
        v = [0] * nb_raw
        v[p] += 1
        res_cols.append([a + b for a, b in zip(v, weyl_raw.column(p))])
    res_raw = IntMatrix.from_columns(res_cols, nb_raw)
    tr_raw = IntMatrix.from_columns(
        [coinv([int(q == p) for q in range(nb_raw)]) for p in range(nb_raw)], nt_raw + nb_raw
    )
    return _assemble(present(top_orders, relations), present(bot_orders),
                     res_raw, tr_raw, weyl_raw)


# ---------------------------------------------------------------------------
# isomorphism search


def _candidates(group: FGAbelianGroup, order: int, bound: int) -> list[tuple[int, ...]]:
    """Elements of ``group`` of exact order ``order`` (0: infinite order).

    Free coordinates range over [-bound, bound]; the list starts with the
    sparsest, smallest elements so that near-identity maps are tried first.
    """
    ranges = [range(d) for d in group.torsion] + [range(-bound, bound + 1)] * group.rank
    out = []
    for v in itertools.product(*ranges):
        o = group.element_order(v)
        if (o is None and order == 0) or (o is not None and o == order):
            out.append(v)
    out.sort(key=lambda v: (sum(1 for x in v if x), sum(abs(x) for x in v), v))
    return out


class _Budget:
    def __init__(self, limit: int):
        self.left = limit
        self.exhausted = False

    def tick(self) -> bool:
        self.left -= 1
        if self.left < 0:
            self.exhausted = True
        return not self.exhausted


def _partial_injective(src: FGAbelianGroup, tgt: FGAbelianGroup,
                       images: list[tuple[int, ...]]) -> bool:
    k = len(images)
    orders = src.orders[:k]
    sub = FGAbelianGroup(tuple(t for t in orders if t), sum(1 for t in orders if t == 0))
    f = GroupHom.from_columns(sub, tgt, images)
    return kernel(f).is_trivial()


def _search_level(src: FGAbelianGroup, tgt: FGAbelianGroup, bound: int, budget: _Budget,
                  unary, joint) -> Iterator[GroupHom]:
    """Enumerate isomorphisms src -> tgt subject to constraints.

    ``unary(i, v)`` filters the image of generator ``i``; ``joint`` is a list of
    (generator indices, predicate on the dict of images) checked as soon as
    all its generators are assigned.
    """
    n = src.ngens
    cands = [[v for v in _candidates(tgt, src.orders[i], bound) if unary(i, v)]
             for i in range(n)]
    due: dict[int, list] = {i: [] for i in range(n)}
    for gens, pred in joint:
        if gens:
            due[max(gens)].append(pred)
    images: list[tuple[int, ...]] = []

    def rec(i: int) -> Iterator[GroupHom]:
        if i == n:
            f = GroupHom.from_columns(src, tgt, images)
            if is_isomorphism(f):
                yield f
            return
        for v in cands[i]:
            if not budget.tick():
                return
            images.append(v)
            assigned = dict(enumerate(images))
            if all(p(assigned) for p in due[i]) and _partial_injective(src, tgt, images):
                yield from rec(i + 1)
            images.pop()
            if budget.exhausted:
                return

    if n == 0:
        yield GroupHom.zero(src, tgt)
        return
    yield from rec(0)


def find_isomorphism(m: MackeyFunctor, n: MackeyFunctor, bound: int = 2,
                     budget: int = 200_000) -> tuple[MackeyMap | None, bool]:
    """Search for a Mackey isomorphism m -> n.

    Returns ``(iso, complete)``; ``complete`` is True when the search covered
    every candidate (finite groups, budget not exhausted), so that ``None``
    is a proof of non-isomorphism.
    """
    if m.top != n.top or m.bot != n.bot:
        return None, True
    if m == n:
        return MackeyMap(m, n, GroupHom.identity(m.top), GroupHom.identity(m.bot)), True
    bud = _Budget(budget)
    finite = m.top.is_finite() and m.bot.is_finite()
    wm, wn = m.weyl, n.weyl

    def weyl_pred(i: int):
        col = wm.matrix.column(i)

        def pred(img: dict) -> bool:
            lhs = [0] * n.bot.ngens
            for k, c in enumerate(col):
                if c:
                    lhs = [a + c * b for a, b in zip(lhs, img[k])]
            return n.bot.reduce(lhs) == wn(img[i])
        return pred

    bot_joint = [
        (tuple({i} | {k for k, c in enumerate(wm.matrix.column(i)) if c}), weyl_pred(i))
        for i in range(m.bot.ngens)
    ]
    for f_bot in _search_level(m.bot, n.bot, bound, bud, lambda i, v: True, bot_joint):
        res_targets = [f_bot(m.res(g)) for g in (m.top.generator(i) for i in range(m.top.ngens))]
        tr_images = [n.tr(f_bot(m.bot.generator(j))) for j in range(m.bot.ngens)]

        def unary(i: int, v) -> bool:
            return n.res(v) == res_targets[i]

        def tr_pred(j: int):
            col = m.tr.matrix.column(j)

            def pred(img: dict) -> bool:
                acc = [0] * n.top.ngens
                for k, c in enumerate(col):
                    if c:
                        acc = [a + c * b for a, b in zip(acc, img[k])]
                return n.top.reduce(acc) == tr_images[j]
            return pred

        top_joint = []
        for j in range(m.bot.ngens):
            gens = tuple(k for k, c in enumerate(m.tr.matrix.column(j)) if c)
            if gens:
                top_joint.append((gens, tr_pred(j)))
            elif any(tr_images[j]):
                top_joint = None
                break
        if top_joint is None:
            continue
        for f_top in _search_level(m.top, n.top, bound, bud, unary, top_joint):
            return MackeyMap(m, n, f_top, f_bot), True
        if bud.exhausted:
            break
    return None, finite and not bud.exhausted


def isomorphic(m: MackeyFunctor, n: MackeyFunctor) -> bool:
    iso, _ = find_isomorphism(m, n)
    return iso is not None


# ---------------------------------------------------------------------------
# invariant comparison


def _profile(f: GroupHom) -> tuple[FGAbelianGroup, FGAbelianGroup, FGAbelianGroup]:
    return (kernel(f), image(f), cokernel(f))


def map_profiles(m: MackeyFunctor) -> dict[str, tuple]:
    ident = GroupHom.identity(m.bot)
    return {
        "res": _profile(m.res),
        "tr": _profile(m.tr),
        "weyl": _profile(m.weyl),
        "1+weyl": _profile(ident + m.weyl),
        "res o tr": _profile(m.res @ m.tr),
    }


@dataclass
class InvariantReport:
    top_match: bool
    bot_match: bool
    profile_match: dict[str, bool]
    iso_status: str  # "found", "not-found" or "invariants-only"
    iso: MackeyMap | None = field(default=None, repr=False)

    @property
    def invariants_match(self) -> bool:
        return self.top_match and self.bot_match and all(self.profile_match.values())

    @property
    def isomorphic(self) -> bool:
        return self.iso_status == "found"

    @property
    def verdict(self) -> str:
        if self.iso_status == "found":
            return "isomorphic"
        if not self.invariants_match or self.iso_status == "not-found":
            return "not-isomorphic"
        return "invariants-only"

    def to_record(self) -> dict:
        return {
            "top_match": self.top_match,
            "bot_match": self.bot_match,
            "profile_match": dict(self.profile_match),
            "iso_status": self.iso_status,
            "verdict": self.verdict,
        }


def same_invariants(m: MackeyFunctor, n: MackeyFunctor, bound: int = 2,
                    budget: int = 200_000) -> InvariantReport:
    """Compare levelwise groups and structure-map profiles, then search for an iso.

    The search is exhaustive when both levels are finite of order at most
    256.  For larger or infinite levels a bounded search still runs; a hit
    is a verified isomorphism, a miss leaves the verdict "invariants-only".
    """
    top_match = m.top == n.top
    bot_match = m.bot == n.bot
    pm, pn = map_profiles(m), map_profiles(n)
    profile_match = {k: pm[k] == pn[k] for k in pm}
    report = InvariantReport(top_match, bot_match, profile_match, "not-found")
    if not report.invariants_match:
        return report
    small = all(
        g.is_finite() and g.order() <= EXHAUSTIVE_ORDER_LIMIT for g in (m.top, m.bot)
    )
    iso, complete = find_isomorphism(m, n, bound=bound, budget=budget)
    if iso is not None:
        report.iso_status, report.iso = "found", iso
    elif small and complete:
        report.iso_status = "not-found"
    else:
        report.iso_status = "invariants-only"
    return report
