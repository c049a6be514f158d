"""Bredon chains and homology of C2-simplicial sets with Mackey coefficients.

A fixed n-simplex contributes a copy of M, a free orbit {r, gr} a copy of
M^{C2}.  The bottom level is indexed by simplices (free orbit: r first, then
gr), so it is literally the normalized chain complex of the underlying
simplicial set with coefficients in bot(M).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..intalg import (
    ChainComplex,
    ComplexHomology,
    NotAComplexError,
    NotChainMapError,
    check_chain_map,
    induced_map,
)
from ..intalg.chains import Sparse
from ..mackey import MackeyFunctor
from .simplicial import C2SSet, ComplexError


def _add(col: dict[int, int], i: int, x: int) -> None:
    if x:
        v = col.get(i, 0) + x
        if v:
            col[i] = v
        else:
            col.pop(i, None)


@dataclass
class MackeyChainComplex:
    space: C2SSet
    coeff: MackeyFunctor
    reduced: bool
    max_dim: int
    orbits: dict[int, list[tuple[int, int | None]]]
    top: ChainComplex
    bot: ChainComplex
    res: dict[int, Sparse]
    tr: dict[int, Sparse]
    weyl: dict[int, Sparse]
    _cache: dict = field(default_factory=dict, repr=False)

    def check(self) -> None:
        """d o d = 0 at both levels and res, tr, weyl are chain maps."""
        try:
            self.top.check()
            self.bot.check()
        except NotAComplexError as exc:
            raise ComplexError(str(exc)) from exc
        try:
            check_chain_map(self.res, self.top, self.bot)
            check_chain_map(self.tr, self.bot, self.top)
            check_chain_map(self.weyl, self.bot, self.bot)
        except NotChainMapError as exc:
            raise ComplexError(str(exc)) from exc

    def level_homology(self, n: int) -> tuple[ComplexHomology, ComplexHomology]:
        if n not in self._cache:
            self._cache[n] = (self.top.homology(n), self.bot.homology(n))
        return self._cache[n]

    def homology(self, n: int) -> MackeyFunctor:
        complete = self.space.bound is None and self.max_dim >= self.space.dim
        if n + 1 > self.max_dim and not complete:
            raise ComplexError(f"homology in degree {n} needs chains through {n + 1}")
        if n < 0:
            raise ValueError("negative degree")
        ht, hb = self.level_homology(n)
        res = induced_map(self.res.get(n, {}), ht, hb)
        tr = induced_map(self.tr.get(n, {}), hb, ht)
        weyl = induced_map(self.weyl.get(n, {}), hb, hb)
        return MackeyFunctor(ht.group, hb.group, res, tr, weyl)


def bredon_chains(x: C2SSet, m: MackeyFunctor, max_dim: int,
                  reduced: bool = False) -> MackeyChainComplex:
    if max_dim < 0:
        raise ValueError("max_dim must be nonnegative")
    if not x.complete_through(max_dim):
        raise ComplexError(f"{x.name} is only built through dimension {x.bound}")
    if reduced:
        x.require_pointed()
    top_orders, bot_orders = m.top.orders, m.bot.orders
    nt, nb = len(top_orders), len(bot_orders)
    R, T, W = m.res.matrix, m.tr.matrix, m.weyl.matrix
    dims = range(max_dim + 1)

    orbits: dict[int, list[tuple[int, int | None]]] = {}
    top_off: dict[int, dict[int, int]] = {}   # simplex -> offset of its orbit block
    bot_off: dict[int, dict[int, int]] = {}   # simplex -> offset of its block
    orders_top: dict[int, list[int]] = {}
    orders_bot: dict[int, list[int]] = {}
    for n in dims:
        obs = x.orbits(n) if n <= x.dim else []
        if reduced and n == 0:
            obs = [o for o in obs if o[0] != x.basepoint]
        orbits[n] = obs
        to, bo = {}, {}
        ot: list[int] = []
        ob: list[int] = []
        for rep, partner in obs:
            to[rep] = len(ot)
            if partner is None:
                ot.extend(top_orders)
                bo[rep] = len(ob)
                ob.extend(bot_orders)
            else:
                to[partner] = len(ot)
                ot.extend(bot_orders)
                bo[rep] = len(ob)
                ob.extend(bot_orders)
                bo[partner] = len(ob)
                ob.extend(bot_orders)
        top_off[n], bot_off[n] = to, bo
        orders_top[n], orders_bot[n] = ot, ob

    def live_faces(n: int, a: int):
        """Nondegenerate faces (sign, target) of simplex a, skipping the basepoint."""
        for i, (sigma, b) in enumerate(x.faces[n][a]):
            if sigma[-1] != n - 1:
                continue
            if reduced and n == 1 and b == x.basepoint:
                continue
            yield (-1 if i % 2 else 1), b

    d_top: dict[int, Sparse] = {}
    d_bot: dict[int, Sparse] = {}
    res: dict[int, Sparse] = {}
    tr: dict[int, Sparse] = {}
    weyl: dict[int, Sparse] = {}
    for n in dims:
        dt: Sparse = {}
        db: Sparse = {}
        rs: Sparse = {}
        ts: Sparse = {}
        ws: Sparse = {}
        for rep, partner in orbits[n]:
            t0 = top_off[n][rep]
            if partner is None:
                b0 = bot_off[n][rep]
                for k in range(nt):
                    rs[t0 + k] = {b0 + l: R[l, k] for l in range(nb) if R[l, k]}
                for l in range(nb):
                    ts[b0 + l] = {t0 + k: T[k, l] for k in range(nt) if T[k, l]}
                    ws[b0 + l] = {b0 + j: W[j, l] for j in range(nb) if W[j, l]}
            else:
                br, bg = bot_off[n][rep], bot_off[n][partner]
                for k in range(nb):
                    col = {br + k: 1}
                    for j in range(nb):
                        _add(col, bg + j, W[j, k])
                    rs[t0 + k] = col
                    ts[br + k] = {t0 + k: 1}
                    ts[bg + k] = {t0 + j: W[j, k] for j in range(nb) if W[j, k]}
                    ws[br + k] = {bg + j: W[j, k] for j in range(nb) if W[j, k]}
                    ws[bg + k] = {br + j: W[j, k] for j in range(nb) if W[j, k]}
        if n >= 1:
            for rep, partner in orbits[n]:
                members = [rep] if partner is None else [rep, partner]
                for s in members:
                    b0 = bot_off[n][s]
                    for sign, b in live_faces(n, s):
                        c0 = bot_off[n - 1][b]
                        for l in range(nb):
                            col = db.setdefault(b0 + l, {})
                            _add(col, c0 + l, sign)
                t0 = top_off[n][rep]
                if partner is None:
                    for sign, b in live_faces(n, rep):
                        c0 = top_off[n - 1][b]
                        for k in range(nt):
                            _add(dt.setdefault(t0 + k, {}), c0 + k, sign)
                    continue
                for sign, b in live_faces(n, rep):
                    c0 = top_off[n - 1][b]
                    g = x.action[n - 1][b]
                    for k in range(nb):
                        col = dt.setdefault(t0 + k, {})
                        if g == b:
                            for j in range(nt):
                                _add(col, c0 + j, sign * T[j, k])
                        elif b < g:
                            _add(col, c0 + k, sign)
                        else:
                            for j in range(nb):
                                _add(col, c0 + j, sign * W[j, k])
        d_top[n], d_bot[n] = dt, db
        res[n], tr[n], weyl[n] = rs, ts, ws

    cc = MackeyChainComplex(
        x, m, reduced, max_dim, orbits,
        ChainComplex(orders_top, d_top), ChainComplex(orders_bot, d_bot),
        res, tr, weyl,
    )
    cc.check()
    return cc


def _needed_dim(x: C2SSet, max_degree: int) -> int:
    need = max_degree + 1
    if x.complete_through(need):
        return need
    raise ComplexError(f"homology through degree {max_degree} needs chains through {need}")


def bredon_homology(x: C2SSet, m: MackeyFunctor, n: int, reduced: bool = False) -> MackeyFunctor:
    return bredon_chains(x, m, _needed_dim(x, n), reduced).homology(n)


def bredon_homology_range(x: C2SSet, m: MackeyFunctor, max_degree: int,
                          reduced: bool = False) -> list[MackeyFunctor]:
    """Homology in degrees 0..max_degree from a single chain complex."""
    cc = bredon_chains(x, m, _needed_dim(x, max_degree), reduced)
    return [cc.homology(n) for n in range(max_degree + 1)]
