"""Catalogue of small C2-simplicial sets and sphere models."""
from __future__ import annotations

from .constructions import smash
from .simplicial import C2SSet, UnknownSpace, from_simplicial_complex

# hemi-icosahedron: the 6-vertex minimal triangulation of RP^2
RP2_FACETS = [
    (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
    (2, 3, 5), (2, 4, 5), (2, 4, 6), (3, 4, 6), (3, 5, 6),
]


def point() -> C2SSet:
    return C2SSet([[()]], [[0]], 0, "pt", [["*"]])


def s0() -> C2SSet:
    return C2SSet([[(), ()]], [[0, 1]], 0, "S0", [["*", "1"]])


def s1() -> C2SSet:
    v = ((0,), 0)
    return C2SSet([[()], [(v, v)]], [[0], [0]], 0, "S1", [["*"], ["e"]])


def s2() -> C2SSet:
    v = ((0, 0), 0)
    return C2SSet([[()], [], [(v, v, v)]], [[0], [], [0]], 0, "S2", [["*"], [], ["f"]])


def s_sigma() -> C2SSet:
    """Fixed vertices b, m and two swapped edges from b to m."""
    b, m = ((0,), 0), ((0,), 1)
    return C2SSet(
        [[(), ()], [(m, b), (m, b)]], [[0, 1], [1, 0]], 0, "Ssigma",
        [["b", "m"], ["e", "e'"]],
    )


def c2() -> C2SSet:
    return C2SSet([[(), ()]], [[1, 0]], None, "C2", [["1", "g"]])


def rp2() -> C2SSet:
    facets = [tuple(v - 1 for v in f) for f in RP2_FACETS]
    return from_simplicial_complex(facets, basepoint=0, name="RP2")


def circle_wedge2() -> C2SSet:
    v = ((0,), 0)
    return C2SSet([[()], [(v, v), (v, v)]], [[0], [0, 1]], 0, "S1vS1",
                  [["*"], ["e1", "e2"]])


def s_rho() -> C2SSet:
    out = smash(s_sigma(), s1())
    out.name = "Srho"
    return out


BUILTINS = {
    "pt": point,
    "S0": s0,
    "S1": s1,
    "S2": s2,
    "Ssigma": s_sigma,
    "Srho": s_rho,
    "C2": c2,
    "RP2": rp2,
    "circle_wedge2": circle_wedge2,
}


def builtin(name: str) -> C2SSet:
    try:
        factory = BUILTINS[name]
    except KeyError:
        raise UnknownSpace(f"unknown space {name!r}") from None
    return factory()


def suspend_trivial(x: C2SSet, dim_bound: int | None = None) -> C2SSet:
    out = smash(x, s1(), dim_bound)
    out.name = f"susp({x.name})"
    return out


def suspend_sigma(x: C2SSet, dim_bound: int | None = None) -> C2SSet:
    out = smash(x, s_sigma(), dim_bound)
    out.name = f"suspsigma({x.name})"
    return out


def sphere(p: int, q: int) -> C2SSet:
    """S^{p + q sigma} as S^p smashed with q copies of S^sigma."""
    if p < 0 or q < 0:
        raise ValueError("sphere models need nonnegative p and q")
    if p == 0:
        out = s0()
    elif p == 1:
        out = s1()
    else:
        out = s2()
        for _ in range(p - 2):
            out = smash(out, s1())
    for _ in range(q):
        out = smash(out, s_sigma())
    out.name = f"S^({p}+{q}sigma)"
    return out


